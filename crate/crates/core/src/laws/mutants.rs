//! Deliberately broken operations. Each one must be rejected by at least one
//! checker; a checker that accepts all of them is vacuous.

use crate::effect::{Applicative, Fun, Res, Tag, TestCommand, TestCommandF, Value};
use crate::free::{FreeA, FreeVisitor};
use crate::left::FreeAL;
use crate::transform::NatTrans;

use super::{check_all_with, observe, Free, GenConfig, LawReport, Left, Subject};

type Cmd = TestCommandF;

/// `map` that answers the first effect with result 0 and drops it.
#[derive(Clone, Copy, Debug, Default)]
pub struct MapDropsHead;

impl Subject for MapDropsHead {
    fn map<A: Value, B: Value>(&self, f: Fun<A, B>, u: Free<A>) -> Free<B> {
        struct Visit<A, B>(Fun<A, B>);
        impl<A: Value, B: Value> FreeVisitor<Cmd, A> for Visit<A, B> {
            type Output = Free<B>;
            fn pure(self, value: A) -> Free<B> {
                FreeA::pure(self.0.call(value))
            }
            fn ap<X: Value>(self, head: TestCommand<Fun<X, A>>, tail: Free<X>) -> Free<B> {
                tail.map_fun(head.resume.call(Res(0)).then(self.0))
            }
        }
        u.visit(Visit(f))
    }
}

/// `pure` that performs a command with tag 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct PureEmitsEffect;

impl Subject for PureEmitsEffect {
    fn pure<A: Value>(&self, a: A) -> Free<A> {
        FreeA::one(TestCommand::new(Tag(0), move |_| a.clone()))
    }
}

/// `<*>` that runs the head of the function, then the argument, then the
/// rest of the function.
#[derive(Clone, Copy, Debug, Default)]
pub struct ApMisordered;

fn ap_misordered<A: Value, B: Value>(f: Free<Fun<A, B>>, x: Free<A>) -> Free<B> {
    struct Visit<A: Value>(Free<A>);
    impl<A: Value, B: Value> FreeVisitor<Cmd, Fun<A, B>> for Visit<A> {
        type Output = Free<B>;
        fn pure(self, g: Fun<A, B>) -> Free<B> {
            self.0.map_fun(g)
        }
        fn ap<X: Value>(self, head: TestCommand<Fun<X, Fun<A, B>>>, rest: Free<X>) -> Free<B> {
            let head = TestCommand {
                tag: head.tag,
                resume: head.resume.then(Fun::new(|g: Fun<X, Fun<A, B>>| {
                    Fun::new(move |(a, b): (A, X)| g.call(b).call(a))
                })),
            };
            let swapped = self.0.map(|a: A| Fun::new(move |b: X| (a.clone(), b)));
            FreeA::ap_node(head, ap_misordered(swapped, rest))
        }
    }
    f.visit(Visit(x))
}

impl Subject for ApMisordered {
    fn ap<A: Value, B: Value>(&self, f: Free<Fun<A, B>>, x: Free<A>) -> Free<B> {
        ap_misordered(f, x)
    }
}

/// `r2l` that keeps the first effect and replaces the rest by its value
/// when every result is 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct R2lDropsTail;

impl Subject for R2lDropsTail {
    fn r2l<A: Value>(&self, u: Free<A>) -> Left<A> {
        struct Visit;
        impl<A: Value> FreeVisitor<Cmd, A> for Visit {
            type Output = Left<A>;
            fn pure(self, value: A) -> Left<A> {
                FreeAL::pure(value)
            }
            fn ap<X: Value>(self, head: TestCommand<Fun<X, A>>, tail: Free<X>) -> Left<A> {
                let form = observe(tail);
                let x = form.eval(&vec![Res(0); form.tags.len()]);
                FreeAL::ap_node(FreeAL::pure(Fun::new(move |f: Fun<X, A>| f.call(x.clone()))), head)
            }
        }
        u.visit(Visit)
    }
}

/// `raise` that combines each head with its tail in the target's reverse
/// order.
#[derive(Clone, Copy, Debug, Default)]
pub struct RaiseReversed;

fn raise_reversed<T: Applicative, K: NatTrans<Cmd, T>, A: Value>(k: &K, dict: &T, u: Free<A>) -> T::Of<A> {
    struct Visit<'a, K, T>(&'a K, &'a T);
    impl<T: Applicative, K: NatTrans<Cmd, T>, A: Value> FreeVisitor<Cmd, A> for Visit<'_, K, T> {
        type Output = T::Of<A>;
        fn pure(self, value: A) -> T::Of<A> {
            self.1.pure(value)
        }
        fn ap<X: Value>(self, head: TestCommand<Fun<X, A>>, tail: Free<X>) -> T::Of<A> {
            let (k, dict) = (self.0, self.1);
            let rest = raise_reversed(k, dict, tail);
            let flipped = dict.fmap(Fun::new(|x: X| Fun::new(move |g: Fun<X, A>| g.call(x.clone()))), rest);
            dict.ap(flipped, k.apply(head))
        }
    }
    u.visit(Visit(k, dict))
}

impl Subject for RaiseReversed {
    fn raise<T: Applicative, K: NatTrans<Cmd, T>, A: Value>(&self, k: &K, dict: &T, u: Free<A>) -> T::Of<A> {
        raise_reversed(k, dict, u)
    }
}

/// Outcome of running every checker against one mutant.
#[derive(Clone, Debug)]
pub struct MutantReport {
    pub mutant: &'static str,
    pub reports: Vec<LawReport>,
}

impl MutantReport {
    /// Names of the checkers that found a counterexample.
    pub fn caught_by(&self) -> Vec<&str> {
        self.reports.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect()
    }

    pub fn caught(&self) -> bool {
        self.reports.iter().any(|r| !r.passed())
    }
}

/// Every shipped mutant, each run through every checker.
pub fn check_mutants(config: &GenConfig) -> Vec<MutantReport> {
    vec![
        MutantReport { mutant: "map drops head", reports: check_all_with(config, &MapDropsHead) },
        MutantReport { mutant: "pure emits effect", reports: check_all_with(config, &PureEmitsEffect) },
        MutantReport { mutant: "ap misordered", reports: check_all_with(config, &ApMisordered) },
        MutantReport { mutant: "r2l drops tail", reports: check_all_with(config, &R2lDropsTail) },
        MutantReport { mutant: "raise reversed", reports: check_all_with(config, &RaiseReversed) },
    ]
}
