//! The left-parenthesised free applicative and its isomorphism with
//! [`FreeA`].
//!
//! `FreeAL` mirrors idiom-bracket notation, `PureL h :*: x_1 :*: ... :*: x_n`.
//! It has no applicative instance of its own; convert with [`l2r`] to
//! interpret it.

use std::fmt;
use std::rc::Rc;

use crate::effect::{Functor, Fun, Value};
use crate::free::{unshare, FreeA, FreeVisitor};
use crate::hidden::{hide, reveal, Hidden};

pub struct FreeAL<F: Functor, A: Value>(NodeL<F, A>);

// In `ApL(init, last)` every result of `init` is a hidden `Fun<Hidden, A>`
// whose argument is the hidden result of `last`. Erasing the function type
// keeps the recursion at a fixed type.
enum NodeL<F: Functor, A: Value> {
    PureL(A),
    ApL(Rc<FreeAL<F, Hidden>>, F::Of<Hidden>),
}

impl<F: Functor, A: Value> Clone for FreeAL<F, A> {
    fn clone(&self) -> Self {
        FreeAL(match &self.0 {
            NodeL::PureL(a) => NodeL::PureL(a.clone()),
            NodeL::ApL(init, last) => NodeL::ApL(Rc::clone(init), last.clone()),
        })
    }
}

impl<F: Functor, A: Value> fmt::Debug for FreeAL<F, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeAL(length = {})", self.length())
    }
}

/// Structural inspection of one layer of a [`FreeAL`].
pub trait FreeLeftVisitor<F: Functor, A: Value> {
    type Output;

    fn pure(self, value: A) -> Self::Output;

    fn ap<B: Value>(self, init: FreeAL<F, Fun<B, A>>, last: F::Of<B>) -> Self::Output;
}

impl<F: Functor, A: Value> FreeAL<F, A> {
    pub fn pure(value: A) -> Self {
        FreeAL(NodeL::PureL(value))
    }

    /// The `:*:` constructor.
    pub fn ap_node<B: Value>(init: FreeAL<F, Fun<B, A>>, last: F::Of<B>) -> Self {
        let init = init.map(|f: Fun<B, A>| hide(Fun::new(move |h: Hidden| f.call(reveal::<B>(h)))));
        let last = F::map(Fun::new(hide::<B>), last);
        FreeAL(NodeL::ApL(Rc::new(init), last))
    }

    pub fn visit<V: FreeLeftVisitor<F, A>>(self, visitor: V) -> V::Output {
        match self.0 {
            NodeL::PureL(a) => visitor.pure(a),
            NodeL::ApL(init, last) => {
                let init = unshare(init).map(reveal::<Fun<Hidden, A>>);
                visitor.ap::<Hidden>(init, last)
            }
        }
    }

    /// Number of `:*:` nodes.
    pub fn length(&self) -> usize {
        match &self.0 {
            NodeL::PureL(_) => 0,
            NodeL::ApL(init, _) => {
                let mut n = 1;
                let mut cur: &FreeAL<F, Hidden> = init;
                while let NodeL::ApL(next, _) = &cur.0 {
                    n += 1;
                    cur = next;
                }
                n
            }
        }
    }

    pub fn map<B: Value>(self, g: impl Fn(A) -> B + 'static) -> FreeAL<F, B> {
        self.map_fun(Fun::new(g))
    }

    pub fn map_fun<B: Value>(self, g: Fun<A, B>) -> FreeAL<F, B> {
        match self.0 {
            NodeL::PureL(a) => FreeAL::pure(g.call(a)),
            NodeL::ApL(init, last) => {
                let post = move |h: Hidden| hide(reveal::<Fun<Hidden, A>>(h).then(g.clone()));
                FreeAL(NodeL::ApL(Rc::new(unshare(init).map(post)), last))
            }
        }
    }
}

/// Right to left: `r2l(h :$: x) = map(flip($), r2l(x)) :*: h`.
pub fn r2l<F: Functor, A: Value>(u: FreeA<F, A>) -> FreeAL<F, A> {
    struct ToLeft;
    impl<F: Functor, A: Value> FreeVisitor<F, A> for ToLeft {
        type Output = FreeAL<F, A>;

        fn pure(self, value: A) -> FreeAL<F, A> {
            FreeAL::pure(value)
        }

        fn ap<B: Value>(self, head: F::Of<Fun<B, A>>, tail: FreeA<F, B>) -> FreeAL<F, A> {
            let init = r2l(tail).map(|b: B| Fun::new(move |f: Fun<B, A>| f.call(b.clone())));
            FreeAL::ap_node(init, head)
        }
    }
    u.visit(ToLeft)
}

/// Left to right: `l2r(h :*: x) = map(flip($), x) :$: l2r(h)`.
pub fn l2r<F: Functor, A: Value>(u: FreeAL<F, A>) -> FreeA<F, A> {
    match u.0 {
        NodeL::PureL(a) => FreeA::pure(a),
        NodeL::ApL(init, last) => {
            let flip = |b: Hidden| Fun::new(move |f: Hidden| reveal::<Fun<Hidden, A>>(f).call(b.clone()));
            FreeA::ap_node(F::map(Fun::new(flip), last), l2r(unshare(init)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{interpret_command, run_form_observably_eq, RunForm, RunFormApp, Res, Tag, TestCommand, TestCommandF};
    use crate::free::lift3;
    use crate::transform::{raise, NatTrans};

    type Cmd = TestCommandF;

    struct Interpret;
    impl NatTrans<Cmd, RunFormApp> for Interpret {
        fn apply<A: Value>(&self, e: TestCommand<A>) -> RunForm<A> {
            interpret_command(e)
        }
    }

    fn run_left<A: Value>(u: FreeAL<Cmd, A>) -> RunForm<A> {
        raise(&Interpret, &RunFormApp, l2r(u))
    }

    fn cmd(tag: u8) -> FreeA<Cmd, Res> {
        FreeA::one(TestCommand::new(Tag(tag), |r| r))
    }

    #[test]
    fn pure_round_trips() {
        let u: FreeA<Cmd, i64> = FreeA::pure(4);
        let left = r2l(u);
        assert_eq!(left.length(), 0);
        assert_eq!(l2r(left).into_pure(), Some(4));
    }

    #[test]
    fn map_on_pure_left() {
        let u: FreeAL<Cmd, i64> = FreeAL::pure(2);
        assert_eq!(l2r(u.map(|x| x + 1)).into_pure(), Some(3));
    }

    #[test]
    fn r2l_preserves_node_count() {
        let u = lift3(|a: Res, b: Res, c: Res| (a, (b, c)), cmd(0), cmd(1), cmd(2));
        assert_eq!(r2l(u.clone()).length(), u.size());
        assert_eq!(r2l(cmd(1)).length(), 1);
    }

    #[test]
    fn round_trip_is_observationally_identity() {
        let u = lift3(|a: Res, b: Res, c: Res| (a, (b, c)), cmd(0), cmd(1), cmd(2));
        let back = l2r(r2l(u.clone()));
        assert!(run_form_observably_eq(&raise(&Interpret, &RunFormApp, back), &raise(&Interpret, &RunFormApp, u), 3));
    }

    #[test]
    fn left_constructor_runs_last_first_after_l2r() {
        // PureL(f) :*: c0 :*: c1 -- l2r runs the outermost effect first.
        let f: FreeAL<Cmd, Fun<Res, Fun<Res, (Res, Res)>>> =
            FreeAL::pure(Fun::new(|a: Res| Fun::new(move |b: Res| (a, b))));
        let step = FreeAL::ap_node(f, TestCommand::new(Tag(0), |r| r));
        let full = FreeAL::ap_node(step, TestCommand::new(Tag(1), |r| r));
        let form = run_left(full);
        assert_eq!(form.tags, vec![Tag(1), Tag(0)]);
        assert_eq!(form.eval(&[Res(2), Res(0)]), (Res(0), Res(2)));
    }

    #[test]
    fn visitor_exposes_init_and_last() {
        struct Probe;
        impl FreeLeftVisitor<Cmd, Res> for Probe {
            type Output = Option<(usize, Tag)>;
            fn pure(self, _v: Res) -> Self::Output {
                None
            }
            fn ap<B: Value>(self, init: FreeAL<Cmd, Fun<B, Res>>, last: TestCommand<B>) -> Self::Output {
                Some((init.length(), last.tag))
            }
        }
        let u = lift3(|a: Res, _b: Res, _c: Res| a, cmd(0), cmd(1), cmd(2));
        assert_eq!(r2l(u).visit(Probe), Some((2, Tag(0))));
    }
}
