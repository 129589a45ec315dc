//! A declarative command-line option parser built on [`FreeA`].
//!
//! Every option takes exactly one argument and is spelled `--name value`.
//! Because a parser is a free applicative value, its option list and its
//! global default can be computed without looking at any input.

use std::fmt;

use thiserror::Error;

use crate::effect::{Applicative, Const, ConstApp, Functor, Fun, Kind, OptionApp, Value};
use crate::free::{lift3, FreeA, FreeVisitor};
use crate::transform::{raise, NatTrans};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OptionError {
    #[error("option name is empty")]
    EmptyName,
    #[error("option name {0:?} contains whitespace")]
    Whitespace(String),
    #[error("option name {0:?} starts with a dash")]
    LeadingDash(String),
}

/// A single option: its name, its default and how to read its argument.
pub struct OptionSpec<A> {
    name: String,
    pub default: Option<A>,
    pub reader: Fun<String, Option<A>>,
}

impl<A: Clone> Clone for OptionSpec<A> {
    fn clone(&self) -> Self {
        OptionSpec { name: self.name.clone(), default: self.default.clone(), reader: self.reader.clone() }
    }
}

impl<A: fmt::Debug> fmt::Debug for OptionSpec<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OptionSpec").field("name", &self.name).field("default", &self.default).finish_non_exhaustive()
    }
}

impl<A: Value> OptionSpec<A> {
    pub fn new(
        name: impl Into<String>,
        default: Option<A>,
        reader: impl Fn(&str) -> Option<A> + 'static,
    ) -> Result<Self, OptionError> {
        let name = name.into();
        if name.is_empty() {
            return Err(OptionError::EmptyName);
        }
        if name.chars().any(char::is_whitespace) {
            return Err(OptionError::Whitespace(name));
        }
        if name.starts_with('-') {
            return Err(OptionError::LeadingDash(name));
        }
        Ok(OptionSpec { name, default, reader: Fun::new(move |s: String| reader(&s)) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn read(&self, value: &str) -> Option<A> {
        self.reader.call(value.to_string())
    }
}

/// Brand of the [`OptionSpec`] family.
#[derive(Clone, Copy, Debug, Default)]
pub struct OptionSpecF;

impl Kind for OptionSpecF {
    type Of<A: Value> = OptionSpec<A>;
}

impl Functor for OptionSpecF {
    fn map<A: Value, B: Value>(f: Fun<A, B>, fa: OptionSpec<A>) -> OptionSpec<B> {
        let g = f.clone();
        OptionSpec {
            name: fa.name,
            default: fa.default.map(|a| f.call(a)),
            reader: fa.reader.then(Fun::new(move |a: Option<A>| a.map(|a| g.call(a)))),
        }
    }
}

pub type Parser<A> = FreeA<OptionSpecF, A>;

/// Lift one option into a parser.
pub fn option<A: Value>(spec: OptionSpec<A>) -> Parser<A> {
    FreeA::one(spec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct User {
    pub username: String,
    pub fullname: String,
    pub id: i64,
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "username={} fullname={} id={}", self.username, self.fullname, self.id)
    }
}

/// Decimal integer with an optional leading minus sign; the whole string
/// must match.
pub fn read_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn read_string(s: &str) -> Option<String> {
    Some(s.to_string())
}

/// `--username` (required), `--fullname` (defaults to empty), `--id`
/// (required integer).
pub fn user_parser() -> Parser<User> {
    let username = OptionSpec::new("username", None, read_string).expect("valid name");
    let fullname = OptionSpec::new("fullname", Some(String::new()), read_string).expect("valid name");
    let id = OptionSpec::new("id", None, read_int).expect("valid name");
    lift3(
        |username, fullname, id| User { username, fullname, id },
        option(username),
        option(fullname),
        option(id),
    )
}

/// A parser collecting integer options, in declaration order, into a list.
pub fn int_list_parser(options: &[(String, Option<i64>)]) -> Result<Parser<Vec<i64>>, OptionError> {
    let mut parser: Parser<Vec<i64>> = FreeA::pure(Vec::new());
    // Built right to left so the options run in declaration order.
    for (name, default) in options.iter().rev() {
        let spec = OptionSpec::new(name.clone(), *default, read_int)?;
        parser = crate::free::lift2(
            |x: i64, mut rest: Vec<i64>| {
                rest.insert(0, x);
                rest
            },
            option(spec),
            parser,
        );
    }
    Ok(parser)
}

struct DefaultOf;

impl NatTrans<OptionSpecF, OptionApp> for DefaultOf {
    fn apply<A: Value>(&self, opt: OptionSpec<A>) -> Option<A> {
        opt.default
    }
}

struct NameOf;

impl NatTrans<OptionSpecF, ConstApp<Vec<String>>> for NameOf {
    fn apply<A: Value>(&self, opt: OptionSpec<A>) -> Const<Vec<String>, A> {
        Const::new(vec![opt.name])
    }
}

/// The value the parser produces when given no arguments, if every option
/// has a default.
pub fn parser_default<A: Value>(p: Parser<A>) -> Option<A> {
    raise(&DefaultOf, &OptionApp, p)
}

/// [`parser_default`] written by direct recursion on the structure.
pub fn parser_default_by_recursion<A: Value>(p: Parser<A>) -> Option<A> {
    struct Recurse;
    impl<A: Value> FreeVisitor<OptionSpecF, A> for Recurse {
        type Output = Option<A>;

        fn pure(self, value: A) -> Option<A> {
            Some(value)
        }

        fn ap<B: Value>(self, head: OptionSpec<Fun<B, A>>, tail: Parser<B>) -> Option<A> {
            OptionApp.ap(head.default, parser_default_by_recursion(tail))
        }
    }
    p.visit(Recurse)
}

/// Names of all options, left to right.
pub fn all_options<A: Value>(p: Parser<A>) -> Vec<String> {
    raise(&NameOf, &ConstApp::concat(), p).into_inner()
}

/// Feed `value` to the first option spelled `opt`. The matched option is
/// replaced by the value it read. `None` means no option matched or the
/// reader rejected the value; the two are not distinguished.
pub fn match_opt<A: Value>(opt: &str, value: &str, p: Parser<A>) -> Option<Parser<A>> {
    struct Match<'a> {
        opt: &'a str,
        value: &'a str,
    }

    impl<A: Value> FreeVisitor<OptionSpecF, A> for Match<'_> {
        type Output = Option<Parser<A>>;

        fn pure(self, _value: A) -> Option<Parser<A>> {
            None
        }

        fn ap<B: Value>(self, head: OptionSpec<Fun<B, A>>, tail: Parser<B>) -> Option<Parser<A>> {
            let matches = self.opt.strip_prefix("--") == Some(head.name.as_str());
            if matches {
                head.read(self.value).map(|f| tail.map_fun(f))
            } else {
                match_opt(self.opt, self.value, tail).map(|rest| FreeA::ap_node(head, rest))
            }
        }
    }

    p.visit(Match { opt, value })
}

/// Consume `--option value` pairs in any order, then fill the remaining
/// options from their defaults.
pub fn run_parser<A: Value, S: AsRef<str>>(p: Parser<A>, args: &[S]) -> Option<A> {
    let mut parser = p;
    let mut rest = args;
    loop {
        match rest {
            [] => return parser_default(parser),
            [opt, value, tail @ ..] => {
                parser = match_opt(opt.as_ref(), value.as_ref(), parser)?;
                rest = tail;
            }
            [_] => return None,
        }
    }
}

/// One `  --name` line per option.
pub fn help_text<A: Value>(p: Parser<A>) -> String {
    all_options(p).iter().map(|name| format!("  --{name}\n")).collect()
}

pub fn usage<A: Value>(program: &str, p: Parser<A>) -> String {
    format!("usage: {program} [options]\noptions:\n{}", help_text(p))
}
