//! A web-service effect family, with monadic and applicative programs, a
//! deterministic mock transport and static request analysis.
//!
//! Monadic programs may choose their next request from an earlier response,
//! so their request count is unknown until they run. Applicative programs
//! fix every request up front; [`analyze`] reports them without running
//! anything.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::effect::{Const, ConstApp, Functor, Fun, Kind, Value};
use crate::free::{FreeA, FreeVisitor};
use crate::monad::{lift_a2m, sequence_unit, FreeMonad};
use crate::transform::{raise, NatTrans};

/// One request together with its continuation.
pub enum WebRequest<A> {
    Get { url: String, params: Vec<String>, resume: Fun<String, A> },
    Post { url: String, params: Vec<String>, body: String, next: A },
}

impl<A: Clone> Clone for WebRequest<A> {
    fn clone(&self) -> Self {
        match self {
            WebRequest::Get { url, params, resume } => {
                WebRequest::Get { url: url.clone(), params: params.clone(), resume: resume.clone() }
            }
            WebRequest::Post { url, params, body, next } => {
                WebRequest::Post { url: url.clone(), params: params.clone(), body: body.clone(), next: next.clone() }
            }
        }
    }
}

impl<A> fmt::Debug for WebRequest<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.summary(), f)
    }
}

impl<A> WebRequest<A> {
    /// The request without its continuation.
    pub fn summary(&self) -> Request {
        match self {
            WebRequest::Get { url, params, .. } => Request::Get { url: url.clone(), params: params.clone() },
            WebRequest::Post { url, params, body, .. } => {
                Request::Post { url: url.clone(), params: params.clone(), body: body.clone() }
            }
        }
    }
}

/// Brand of the [`WebRequest`] family.
#[derive(Clone, Copy, Debug, Default)]
pub struct WebRequestF;

impl Kind for WebRequestF {
    type Of<A: Value> = WebRequest<A>;
}

impl Functor for WebRequestF {
    fn map<A: Value, B: Value>(f: Fun<A, B>, fa: WebRequest<A>) -> WebRequest<B> {
        match fa {
            WebRequest::Get { url, params, resume } => WebRequest::Get { url, params, resume: resume.then(f) },
            WebRequest::Post { url, params, body, next } => WebRequest::Post { url, params, body, next: f.call(next) },
        }
    }
}

/// A request as recorded in traces and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "UPPERCASE")]
pub enum Request {
    Get { url: String, params: Vec<String> },
    Post { url: String, params: Vec<String>, body: String },
}

impl Request {
    pub fn url(&self) -> &str {
        match self {
            Request::Get { url, .. } | Request::Post { url, .. } => url,
        }
    }

    pub fn host(&self) -> &str {
        host(self.url())
    }
}

/// Everything before the first `/`, or the whole url.
pub fn host(url: &str) -> &str {
    url.split('/').next().unwrap_or(url)
}

pub type WebProgram<A> = FreeMonad<WebRequestF, A>;
pub type WebApplicative<A> = FreeA<WebRequestF, A>;

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn get_request(url: &str, params: &[&str]) -> WebRequest<String> {
    WebRequest::Get { url: url.to_string(), params: strings(params), resume: Fun::identity() }
}

fn post_request(url: &str, params: &[&str], body: &str) -> WebRequest<()> {
    WebRequest::Post { url: url.to_string(), params: strings(params), body: body.to_string(), next: () }
}

pub fn get(url: &str, params: &[&str]) -> WebProgram<String> {
    FreeMonad::lift_effect(get_request(url, params))
}

pub fn post(url: &str, params: &[&str], body: &str) -> WebProgram<()> {
    FreeMonad::lift_effect(post_request(url, params, body))
}

/// [`get`] as a single-effect applicative program.
pub fn get_a(url: &str, params: &[&str]) -> WebApplicative<String> {
    FreeA::one(get_request(url, params))
}

/// [`post`] as a single-effect applicative program.
pub fn post_a(url: &str, params: &[&str], body: &str) -> WebApplicative<()> {
    FreeA::one(post_request(url, params, body))
}

/// Fetch `src` and post the response body to `dst`.
pub fn copy(src: &str, src_params: &[&str], dst: &str, dst_params: &[&str]) -> WebProgram<()> {
    let dst = dst.to_string();
    let dst_params = strings(dst_params);
    get(src, src_params).bind(move |body| {
        let params: Vec<&str> = dst_params.iter().map(String::as_str).collect();
        post(&dst, &params, &body)
    })
}

/// Post `new_email` to every entry listed by the blog. The number of posts
/// depends on the listing, so it is unknown before running.
pub fn update_emails(new_email: &str) -> WebProgram<()> {
    let new_email = new_email.to_string();
    get("myblog.com", &["list_entries"]).bind(move |entries| {
        sequence_unit(entries.split_whitespace().map(|entry| post(entry, &["updateEmail"], &new_email)).collect::<Vec<_>>())
    })
}

/// Fetch a quota from `quota_url`, then run `u` only if its statically
/// known request count fits. A quota that is not a natural number admits
/// nothing.
pub fn with_quota<A: Value>(quota_url: &str, u: WebApplicative<A>) -> WebProgram<Option<A>> {
    let total = analyze(&u).total;
    get(quota_url, &[]).bind(move |quota| {
        let fits = quota.trim().parse::<usize>().is_ok_and(|q| total <= q);
        if fits {
            lift_a2m(u.clone()).map(Some)
        } else {
            FreeMonad::ret(None)
        }
    })
}

// ---------------------------------------------------------------------------
// Mock transport

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostRecord {
    pub url: String,
    pub params: Vec<String>,
    pub body: String,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed fixture: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no response for {url}")]
pub struct TransportError {
    pub url: String,
}

/// Canned GET responses plus a log of every POST received.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MockServer {
    pub responses: BTreeMap<String, String>,
    pub post_log: Vec<PostRecord>,
}

impl MockServer {
    pub fn new(responses: impl IntoIterator<Item = (String, String)>) -> Self {
        MockServer { responses: responses.into_iter().collect(), post_log: Vec::new() }
    }

    /// Responses from a JSON object mapping url to response body.
    pub fn from_json_str(json: &str) -> Result<Self, FixtureError> {
        let responses: BTreeMap<String, String> = serde_json::from_str(json)?;
        Ok(MockServer { responses, post_log: Vec::new() })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FixtureError> {
        MockServer::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// The post log as a JSON array of `{url, params, body}`.
    pub fn post_log_json(&self) -> String {
        serde_json::to_string_pretty(&self.post_log).expect("post records always serialise")
    }

    pub fn dump_post_log(&self, path: impl AsRef<Path>) -> Result<(), FixtureError> {
        let mut text = self.post_log_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Record the request, then serve it. Returns the continuation's input.
    fn perform<A: Value>(&mut self, request: WebRequest<A>, trace: &mut Vec<Request>) -> Result<A, TransportError> {
        trace.push(request.summary());
        match request {
            WebRequest::Get { url, resume, .. } => match self.responses.get(&url) {
                Some(body) => Ok(resume.call(body.clone())),
                None => Err(TransportError { url }),
            },
            WebRequest::Post { url, params, body, next } => {
                self.post_log.push(PostRecord { url, params, body });
                Ok(next)
            }
        }
    }
}

/// Outcome of interpreting a program against a [`MockServer`].
#[derive(Clone, Debug)]
pub struct Run<A> {
    pub result: Result<A, TransportError>,
    pub trace: Vec<Request>,
    pub server: MockServer,
}

/// Interpret a monadic program sequentially. A GET without a canned
/// response stops the run; the failed request is still in the trace.
pub fn run_free<A: Value>(m: WebProgram<A>, server: MockServer) -> Run<A> {
    let mut server = server;
    let mut trace = Vec::new();
    let result = m.run(|request| server.perform(request, &mut trace));
    Run { result, trace, server }
}

/// Interpret an applicative program directly, head effect first. Agrees
/// with `run_free(lift_a2m(u), server)`.
pub fn run_freea<A: Value>(u: WebApplicative<A>, server: MockServer) -> Run<A> {
    let mut server = server;
    let mut trace = Vec::new();
    let result = run_freea_in(u, &mut server, &mut trace);
    Run { result, trace, server }
}

fn run_freea_in<A: Value>(
    u: WebApplicative<A>,
    server: &mut MockServer,
    trace: &mut Vec<Request>,
) -> Result<A, TransportError> {
    struct Interpret<'a> {
        server: &'a mut MockServer,
        trace: &'a mut Vec<Request>,
    }

    impl<A: Value> FreeVisitor<WebRequestF, A> for Interpret<'_> {
        type Output = Result<A, TransportError>;

        fn pure(self, value: A) -> Self::Output {
            Ok(value)
        }

        fn ap<B: Value>(self, head: WebRequest<Fun<B, A>>, tail: WebApplicative<B>) -> Self::Output {
            let f = self.server.perform(head, self.trace)?;
            let b = run_freea_in(tail, self.server, self.trace)?;
            Ok(f.call(b))
        }
    }

    u.visit(Interpret { server, trace })
}

// ---------------------------------------------------------------------------
// Static analysis

/// Requests of an applicative program, gathered without running it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RequestReport {
    pub total: usize,
    pub per_host: BTreeMap<String, usize>,
    /// Hosts in order of first appearance, each with its requests in program
    /// order.
    pub batches: Vec<(String, Vec<Request>)>,
}

struct Summarise;

impl NatTrans<WebRequestF, ConstApp<Vec<Request>>> for Summarise {
    fn apply<A: Value>(&self, request: WebRequest<A>) -> Const<Vec<Request>, A> {
        Const::new(vec![request.summary()])
    }
}

/// Every request `u` would make, in program order.
pub fn requests<A: Value>(u: &WebApplicative<A>) -> Vec<Request> {
    raise(&Summarise, &ConstApp::concat(), u.clone()).into_inner()
}

pub fn analyze<A: Value>(u: &WebApplicative<A>) -> RequestReport {
    let mut report = RequestReport::default();
    for request in requests(u) {
        let host = request.host().to_string();
        report.total += 1;
        *report.per_host.entry(host.clone()).or_insert(0) += 1;
        match report.batches.iter_mut().find(|(h, _)| *h == host) {
            Some((_, batch)) => batch.push(request),
            None => report.batches.push((host, vec![request])),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::lift2;

    fn server(pairs: &[(&str, &str)]) -> MockServer {
        MockServer::new(pairs.iter().map(|(u, r)| (u.to_string(), r.to_string())))
    }

    fn get_req(url: &str, params: &[&str]) -> Request {
        Request::Get { url: url.into(), params: strings(params) }
    }

    #[test]
    fn get_returns_the_canned_response() {
        let run = run_free(get("u", &[]), server(&[("u", "hi")]));
        assert_eq!(run.result, Ok("hi".to_string()));
        assert_eq!(run.trace, vec![get_req("u", &[])]);
    }

    #[test]
    fn get_on_missing_url_fails_after_tracing() {
        let run = run_free(get("u", &[]), MockServer::default());
        assert_eq!(run.result, Err(TransportError { url: "u".into() }));
        assert_eq!(run.trace, vec![get_req("u", &[])]);
    }

    #[test]
    fn return_touches_nothing() {
        let s = server(&[("u", "x")]);
        let run = run_free(FreeMonad::<WebRequestF, i64>::ret(4), s.clone());
        assert_eq!(run.result, Ok(4));
        assert!(run.trace.is_empty());
        assert_eq!(run.server, s);
    }

    #[test]
    fn posts_are_logged_in_order() {
        let run = run_free(post("a", &["p"], "1").then(post("b", &[], "2")), MockServer::default());
        assert_eq!(run.result, Ok(()));
        assert_eq!(
            run.server.post_log,
            vec![
                PostRecord { url: "a".into(), params: strings(&["p"]), body: "1".into() },
                PostRecord { url: "b".into(), params: vec![], body: "2".into() },
            ]
        );
    }

    #[test]
    fn copy_reposts_the_body() {
        let run = run_free(copy("src", &["s"], "dst", &["d"]), server(&[("src", "data")]));
        assert_eq!(run.server.post_log, vec![PostRecord { url: "dst".into(), params: strings(&["d"]), body: "data".into() }]);
    }

    #[test]
    fn update_emails_posts_once_per_entry() {
        let run = run_free(update_emails("me@x"), server(&[("myblog.com", "a b c")]));
        let urls: Vec<&str> = run.server.post_log.iter().map(|p| p.url.as_str()).collect();
        assert_eq!(urls, vec!["a", "b", "c"]);
        assert!(run.server.post_log.iter().all(|p| p.body == "me@x" && p.params == strings(&["updateEmail"])));

        let empty = run_free(update_emails("me@x"), server(&[("myblog.com", "")]));
        assert!(empty.server.post_log.is_empty());
        assert_eq!(empty.trace.len(), 1);
    }

    #[test]
    fn applicative_interpreter_runs_in_program_order() {
        let u = lift2(|a: String, b: String| (a, b), get_a("a", &[]), get_a("b", &[]));
        let s = server(&[("a", "1"), ("b", "2")]);
        let run = run_freea(u.clone(), s.clone());
        assert_eq!(run.result, Ok(("1".to_string(), "2".to_string())));
        assert_eq!(run.trace, vec![get_req("a", &[]), get_req("b", &[])]);

        let mono = run_free(lift_a2m(u), s);
        assert_eq!(mono.result, run.result);
        assert_eq!(mono.trace, run.trace);
    }

    #[test]
    fn run_freea_of_pure() {
        let s = server(&[("a", "1")]);
        let run = run_freea(FreeA::<WebRequestF, i64>::pure(1), s.clone());
        assert_eq!(run.result, Ok(1));
        assert!(run.trace.is_empty());
        assert_eq!(run.server, s);
    }

    #[test]
    fn analyze_groups_by_host() {
        let u = crate::free::lift3(
            |a: String, b: String, c: String| format!("{a}{b}{c}"),
            get_a("a.com/x", &[]),
            get_a("b.com/y", &[]),
            get_a("a.com/z", &[]),
        );
        let report = analyze(&u);
        assert_eq!(report.total, 3);
        assert_eq!(report.per_host, BTreeMap::from([("a.com".to_string(), 2), ("b.com".to_string(), 1)]));
        assert_eq!(
            report.batches,
            vec![
                ("a.com".to_string(), vec![get_req("a.com/x", &[]), get_req("a.com/z", &[])]),
                ("b.com".to_string(), vec![get_req("b.com/y", &[])]),
            ]
        );
        assert_eq!(analyze(&FreeA::<WebRequestF, ()>::pure(())), RequestReport::default());
    }

    #[test]
    fn host_extraction() {
        assert_eq!(host("a.com/x/y"), "a.com");
        assert_eq!(host("plain"), "plain");
        assert_eq!(host("/rooted"), "");
    }

    #[test]
    fn quota_gates_the_applicative_part() {
        let u = lift2(|a: String, _: ()| a, get_a("a", &[]), post_a("b", &[], "x"));
        let s = server(&[("quota", "2"), ("a", "1")]);
        let run = run_free(with_quota("quota", u.clone()), s);
        assert_eq!(run.result, Ok(Some("1".to_string())));
        assert_eq!(run.trace.len(), 1 + analyze(&u).total);

        let tight = run_free(with_quota("quota", u), server(&[("quota", "1"), ("a", "1")]));
        assert_eq!(tight.result, Ok(None));
        assert_eq!(tight.trace.len(), 1);
    }

    #[test]
    fn fixture_parsing() {
        let s = MockServer::from_json_str(r#"{"myblog.com": "a b", "x": ""}"#).unwrap();
        assert_eq!(s.responses.len(), 2);
        assert!(matches!(MockServer::from_json_str("[1]"), Err(FixtureError::Json(_))));
    }
}
