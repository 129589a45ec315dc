#![allow(dead_code)]

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use freeap::webservice::{get, get_a, post, post_a, MockServer, Request, Run, WebApplicative, WebProgram};
use freeap::{lift2, FreeA, FreeMonad};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SERVED: [(&str, &str); 6] = [
    ("a.com/x", "alpha"),
    ("a.com/y", "be"),
    ("b.com/z", "gamma ray"),
    ("c.org", ""),
    ("b.com/w", "delta"),
    ("quota", "3"),
];

pub fn fixture() -> MockServer {
    MockServer::new(SERVED.iter().map(|(u, r)| (u.to_string(), r.to_string())))
}

fn served_url(rng: &mut impl Rng) -> &'static str {
    SERVED[..5].choose(rng).unwrap().0
}

/// A random applicative program of `size` requests, every GET served by
/// [`fixture`], together with the requests it is expected to make.
pub fn web_program(rng: &mut impl Rng, size: usize) -> (WebApplicative<Vec<String>>, Vec<Request>) {
    let mut expected = Vec::new();
    let mut effects: Vec<WebApplicative<String>> = Vec::new();
    for _ in 0..size {
        let url = served_url(rng);
        let params: Vec<String> = (0..rng.gen_range(0..3)).map(|i| format!("p{i}")).collect();
        let params_ref: Vec<&str> = params.iter().map(String::as_str).collect();
        if rng.gen_bool(0.6) {
            expected.push(Request::Get { url: url.into(), params: params.clone() });
            effects.push(get_a(url, &params_ref));
        } else {
            let body = format!("body{}", rng.gen_range(0..10));
            expected.push(Request::Post { url: url.into(), params: params.clone(), body: body.clone() });
            effects.push(post_a(url, &params_ref, &body).map(|()| "posted".to_string()));
        }
    }
    let program = effects.into_iter().rev().fold(FreeA::pure(Vec::new()), |rest, effect| {
        lift2(
            |s: String, mut tail: Vec<String>| {
                tail.insert(0, s);
                tail
            },
            effect,
            rest,
        )
    });
    (program, expected)
}

/// Per-host counts computed straight from a request list.
pub fn hosts_of(requests: &[Request]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for r in requests {
        let url = r.url();
        let host = match url.find('/') {
            Some(i) => &url[..i],
            None => url,
        };
        *counts.entry(host.to_string()).or_insert(0) += 1;
    }
    counts
}

/// A small monadic script whose later steps depend on earlier responses.
pub fn script(rng: &mut impl Rng, depth: usize) -> WebProgram<String> {
    if depth == 0 || rng.gen_bool(0.25) {
        return FreeMonad::ret(format!("w{}", rng.gen_range(0..4)));
    }
    if rng.gen_bool(0.6) {
        let even = script(rng, depth - 1);
        let odd = script(rng, depth - 1);
        get(served_url(rng), &[]).bind(move |resp| if resp.len() % 2 == 0 { even.clone() } else { odd.clone() })
    } else {
        let body = format!("b{}", rng.gen_range(0..4));
        post(served_url(rng), &["x"], &body).then(script(rng, depth - 1))
    }
}

/// A continuation `String -> program` given by a small table of scripts,
/// indexed by a hash of its input.
pub fn continuation(rng: &mut impl Rng, depth: usize) -> impl Fn(String) -> WebProgram<String> + Clone + 'static {
    let table: Vec<WebProgram<String>> = (0..3).map(|_| script(rng, depth)).collect();
    move |s: String| {
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        s.hash(&mut hasher);
        let pick = table[(hasher.finish() % 3) as usize].clone();
        pick.map(move |r| format!("{s}+{r}"))
    }
}

/// Result, trace and final server of two runs agree.
pub fn same_run<A: PartialEq>(a: &Run<A>, b: &Run<A>) -> bool {
    a.result == b.result && a.trace == b.trace && a.server == b.server
}
