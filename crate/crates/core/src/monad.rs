//! The free monad over an effect family, and the embedding of free
//! applicative programs into it.

use std::fmt;
use std::rc::Rc;

use crate::effect::{Functor, Fun, Value};
use crate::free::{unshare, FreeA, FreeVisitor};

pub enum FreeMonad<F: Functor, A: Value> {
    Return(A),
    Step(Rc<F::Of<FreeMonad<F, A>>>),
}

impl<F: Functor, A: Value> Clone for FreeMonad<F, A> {
    fn clone(&self) -> Self {
        match self {
            FreeMonad::Return(a) => FreeMonad::Return(a.clone()),
            FreeMonad::Step(e) => FreeMonad::Step(Rc::clone(e)),
        }
    }
}

impl<F: Functor, A: Value + fmt::Debug> fmt::Debug for FreeMonad<F, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeMonad::Return(a) => f.debug_tuple("Return").field(a).finish(),
            FreeMonad::Step(_) => f.write_str("Step(..)"),
        }
    }
}

impl<F: Functor, A: Value> FreeMonad<F, A> {
    pub fn ret(value: A) -> Self {
        FreeMonad::Return(value)
    }

    pub fn step(effect: F::Of<FreeMonad<F, A>>) -> Self {
        FreeMonad::Step(Rc::new(effect))
    }

    /// `Step(map(Return, e))`.
    pub fn lift_effect(effect: F::Of<A>) -> Self {
        FreeMonad::step(F::map(Fun::new(FreeMonad::Return), effect))
    }

    pub fn bind<B: Value>(self, f: impl Fn(A) -> FreeMonad<F, B> + 'static) -> FreeMonad<F, B> {
        self.bind_fun(Fun::new(f))
    }

    pub fn bind_fun<B: Value>(self, f: Fun<A, FreeMonad<F, B>>) -> FreeMonad<F, B> {
        match self {
            FreeMonad::Return(a) => f.call(a),
            FreeMonad::Step(e) => {
                let next = Fun::new(move |m: FreeMonad<F, A>| m.bind_fun(f.clone()));
                FreeMonad::step(F::map(next, unshare(e)))
            }
        }
    }

    /// Functorial map, derived as `bind(m, return ∘ f)`.
    pub fn map<B: Value>(self, f: impl Fn(A) -> B + 'static) -> FreeMonad<F, B> {
        self.map_fun(Fun::new(f))
    }

    pub fn map_fun<B: Value>(self, f: Fun<A, B>) -> FreeMonad<F, B> {
        self.bind(move |a| FreeMonad::Return(f.call(a)))
    }

    /// Sequence: run `self`, discard its result, run `next`.
    pub fn then<B: Value>(self, next: FreeMonad<F, B>) -> FreeMonad<F, B> {
        self.bind(move |_| next.clone())
    }

    /// Drive the program with `handler`, which performs one effect and
    /// returns the continuation it selects.
    pub fn run<E>(self, mut handler: impl FnMut(F::Of<FreeMonad<F, A>>) -> Result<FreeMonad<F, A>, E>) -> Result<A, E> {
        let mut current = self;
        loop {
            match current {
                FreeMonad::Return(a) => return Ok(a),
                FreeMonad::Step(e) => current = handler(unshare(e))?,
            }
        }
    }
}

/// Sequence a list of unit programs in order.
pub fn sequence_unit<F: Functor>(programs: impl IntoIterator<Item = FreeMonad<F, ()>>) -> FreeMonad<F, ()> {
    let programs: Vec<_> = programs.into_iter().collect();
    programs.into_iter().rev().fold(FreeMonad::Return(()), |rest, p| p.then(rest))
}

/// Embed an applicative program; effects keep their left-to-right order.
///
/// `lift_a2m(Pure x) = Return x`,
/// `lift_a2m(h :$: x) = Step(map(f ↦ map(f, lift_a2m(x)), h))`.
pub fn lift_a2m<F: Functor, A: Value>(u: FreeA<F, A>) -> FreeMonad<F, A> {
    struct ToMonad;
    impl<F: Functor, A: Value> FreeVisitor<F, A> for ToMonad {
        type Output = FreeMonad<F, A>;

        fn pure(self, value: A) -> FreeMonad<F, A> {
            FreeMonad::Return(value)
        }

        fn ap<B: Value>(self, head: F::Of<Fun<B, A>>, tail: FreeA<F, B>) -> FreeMonad<F, A> {
            let rest = lift_a2m(tail);
            FreeMonad::step(F::map(Fun::new(move |f: Fun<B, A>| rest.clone().map_fun(f)), head))
        }
    }
    u.visit(ToMonad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{Res, Tag, TestCommand, TestCommandF};
    use crate::free::lift2;

    type Cmd = TestCommandF;
    type Prog<A> = FreeMonad<Cmd, A>;

    /// Runs a program answering each command with the next scripted result;
    /// returns the value and the tags performed.
    fn run_scripted<A: Value>(m: Prog<A>, script: &[Res]) -> (A, Vec<Tag>) {
        let mut tags = Vec::new();
        let mut answers = script.iter().copied().cycle();
        let value = m
            .run::<()>(|cmd| {
                tags.push(cmd.tag);
                Ok(cmd.resume.call(answers.next().unwrap_or(Res(0))))
            })
            .unwrap();
        (value, tags)
    }

    fn ask(tag: u8) -> Prog<Res> {
        FreeMonad::lift_effect(TestCommand::new(Tag(tag), |r| r))
    }

    #[test]
    fn return_has_no_effects() {
        let (v, tags) = run_scripted(Prog::ret(3i64), &[]);
        assert_eq!(v, 3);
        assert!(tags.is_empty());
    }

    #[test]
    fn lift_effect_performs_one_effect() {
        let (v, tags) = run_scripted(ask(2), &[Res(1)]);
        assert_eq!(v, Res(1));
        assert_eq!(tags, vec![Tag(2)]);
    }

    #[test]
    fn monad_laws_on_small_programs() {
        let f = |r: Res| if r.0 == 0 { ask(1) } else { ask(2).map(move |s| Res((s.0 + r.0) % 3)) };
        let g = |r: Res| ask(r.0 % 3);
        let m = ask(0).bind(move |a| ask(1).map(move |b| Res((a.0 + b.0) % 3)));
        for script in [[Res(0), Res(1), Res(2), Res(0)], [Res(2), Res(2), Res(1), Res(1)]] {
            for x in 0..3u8 {
                assert_eq!(run_scripted(Prog::ret(Res(x)).bind(f), &script), run_scripted(f(Res(x)), &script));
            }
            assert_eq!(run_scripted(m.clone().bind(Prog::ret), &script), run_scripted(m.clone(), &script));
            let lhs = m.clone().bind(f).bind(g);
            let rhs = m.clone().bind(move |x| f(x).bind(g));
            assert_eq!(run_scripted(lhs, &script), run_scripted(rhs, &script));
        }
    }

    #[test]
    fn lift_a2m_pure_is_return() {
        match lift_a2m(FreeA::<Cmd, i64>::pure(7)) {
            FreeMonad::Return(7) => {}
            other => panic!("expected Return(7), got {other:?}"),
        }
    }

    #[test]
    fn lift_a2m_keeps_left_to_right_order() {
        let u = lift2(
            |a: Res, b: Res| (a, b),
            FreeA::one(TestCommand::new(Tag(2), |r| r)),
            FreeA::one(TestCommand::new(Tag(0), |r| r)),
        );
        let (v, tags) = run_scripted(lift_a2m(u), &[Res(1), Res(2)]);
        assert_eq!(tags, vec![Tag(2), Tag(0)]);
        assert_eq!(v, (Res(1), Res(2)));
    }

    #[test]
    fn lift_a2m_of_one_runs_the_effect_then_returns() {
        let (v, tags) = run_scripted(lift_a2m(FreeA::one(TestCommand::new(Tag(1), |r: Res| r.0 as i64 * 10))), &[Res(2)]);
        assert_eq!(v, 20);
        assert_eq!(tags, vec![Tag(1)]);
    }

    #[test]
    fn sequence_unit_runs_in_order() {
        let p = sequence_unit((0..3u8).map(|t| ask(t).map(|_| ())));
        let (_, tags) = run_scripted(p, &[Res(0)]);
        assert_eq!(tags, vec![Tag(0), Tag(1), Tag(2)]);
    }
}
