//! Natural transformations, applicative morphisms and the free/forgetful
//! adjunction.
//!
//! [`raise`] extends a transformation on single effects to a semantics for
//! whole [`FreeA`] programs; [`lower`] restricts an applicative morphism back
//! to single effects through [`FreeA::one`]. The two are mutually inverse.

use std::marker::PhantomData;

use crate::effect::{Applicative, Functor, Kind, Value};
use crate::free::{FreeA, FreeVisitor};

/// A transformation `F<A> → G<A>` for every `A`.
///
/// Implementations must not depend on `A`; naturality
/// (`apply(map(h, e)) ≡ map(h, apply(e))`) is only checked by tests.
pub trait NatTrans<F: Kind, G: Kind> {
    fn apply<A: Value>(&self, fa: F::Of<A>) -> G::Of<A>;
}

/// A transformation `FreeA<F, A> → T<A>` for every `A`, expected to preserve
/// `pure` and `<*>`. Not verified on construction; see the law checkers.
pub trait AppMorphism<F: Functor, T: Kind> {
    fn apply<A: Value>(&self, u: FreeA<F, A>) -> T::Of<A>;
}

impl<F: Kind, G: Kind, N: NatTrans<F, G>> NatTrans<F, G> for &N {
    fn apply<A: Value>(&self, fa: F::Of<A>) -> G::Of<A> {
        (**self).apply(fa)
    }
}

/// The identity transformation.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityNat;

impl<F: Kind> NatTrans<F, F> for IdentityNat {
    fn apply<A: Value>(&self, fa: F::Of<A>) -> F::Of<A> {
        fa
    }
}

/// `second ∘ first`, passing through the intermediate kind `G`.
pub struct Then<N1, N2, G> {
    first: N1,
    second: N2,
    _via: PhantomData<fn() -> G>,
}

impl<N1, N2, G> Then<N1, N2, G> {
    pub fn new(first: N1, second: N2) -> Self {
        Then { first, second, _via: PhantomData }
    }
}

impl<F: Kind, G: Kind, H: Kind, N1: NatTrans<F, G>, N2: NatTrans<G, H>> NatTrans<F, H> for Then<N1, N2, G> {
    fn apply<A: Value>(&self, fa: F::Of<A>) -> H::Of<A> {
        self.second.apply(self.first.apply(fa))
    }
}

/// Replace every effect through `k`, keeping the structure:
/// `lift_t(k, h :$: x) = k(h) :$: lift_t(k, x)`.
pub fn lift_t<F: Functor, G: Functor, K: NatTrans<F, G>, A: Value>(k: &K, u: FreeA<F, A>) -> FreeA<G, A> {
    struct Lift<'k, K, G>(&'k K, PhantomData<fn() -> G>);
    impl<F: Functor, G: Functor, K: NatTrans<F, G>, A: Value> FreeVisitor<F, A> for Lift<'_, K, G> {
        type Output = FreeA<G, A>;

        fn pure(self, value: A) -> FreeA<G, A> {
            FreeA::pure(value)
        }

        fn ap<B: Value>(self, head: F::Of<crate::Fun<B, A>>, tail: FreeA<F, B>) -> FreeA<G, A> {
            FreeA::ap_node(self.0.apply(head), lift_t(self.0, tail))
        }
    }
    u.visit(Lift(k, PhantomData))
}

/// `raise(k, Pure x) = pure x`; `raise(k, g :$: x) = k(g) <*> raise(k, x)`.
pub fn raise<F: Functor, T: Applicative, K: NatTrans<F, T>, A: Value>(k: &K, dict: &T, u: FreeA<F, A>) -> T::Of<A> {
    struct Raise<'a, K, T>(&'a K, &'a T);
    impl<F: Functor, T: Applicative, K: NatTrans<F, T>, A: Value> FreeVisitor<F, A> for Raise<'_, K, T> {
        type Output = T::Of<A>;

        fn pure(self, value: A) -> T::Of<A> {
            self.1.pure(value)
        }

        fn ap<B: Value>(self, head: F::Of<crate::Fun<B, A>>, tail: FreeA<F, B>) -> T::Of<A> {
            let (k, dict) = (self.0, self.1);
            dict.ap(k.apply(head), raise(k, dict, tail))
        }
    }
    u.visit(Raise(k, dict))
}

/// [`raise`] packaged as an [`AppMorphism`].
#[derive(Clone, Debug)]
pub struct Raised<K, T> {
    pub k: K,
    pub dict: T,
}

impl<K, T> Raised<K, T> {
    pub fn new(k: K, dict: T) -> Self {
        Raised { k, dict }
    }
}

impl<F: Functor, T: Applicative, K: NatTrans<F, T>> AppMorphism<F, T> for Raised<K, T> {
    fn apply<A: Value>(&self, u: FreeA<F, A>) -> T::Of<A> {
        raise(&self.k, &self.dict, u)
    }
}

/// Dictionary of [`FreeA`] itself, so that free structures can be the target
/// of an [`AppMorphism`].
pub struct FreeApp<F>(PhantomData<fn() -> F>);

impl<F> FreeApp<F> {
    pub fn new() -> Self {
        FreeApp(PhantomData)
    }
}

impl<F> Default for FreeApp<F> {
    fn default() -> Self {
        FreeApp::new()
    }
}

impl<F: Functor> Kind for FreeApp<F> {
    type Of<A: Value> = FreeA<F, A>;
}

impl<F: Functor> Applicative for FreeApp<F> {
    fn pure<A: Value>(&self, a: A) -> FreeA<F, A> {
        FreeA::pure(a)
    }

    fn ap<A: Value, B: Value>(&self, f: FreeA<F, crate::Fun<A, B>>, x: FreeA<F, A>) -> FreeA<F, B> {
        f.ap(x)
    }
}

/// [`lift_t`] packaged as an [`AppMorphism`] into `FreeA<G>`.
pub struct Lifted<K, G> {
    pub k: K,
    _target: PhantomData<fn() -> G>,
}

impl<K, G> Lifted<K, G> {
    pub fn new(k: K) -> Self {
        Lifted { k, _target: PhantomData }
    }
}

impl<F: Functor, G: Functor, K: NatTrans<F, G>> AppMorphism<F, FreeApp<G>> for Lifted<K, G> {
    fn apply<A: Value>(&self, u: FreeA<F, A>) -> FreeA<G, A> {
        lift_t(&self.k, u)
    }
}

/// `lower(t) = t ∘ one`.
pub struct Lowered<M>(pub M);

pub fn lower<M>(t: M) -> Lowered<M> {
    Lowered(t)
}

impl<F: Functor, T: Kind, M: AppMorphism<F, T>> NatTrans<F, T> for Lowered<M> {
    fn apply<A: Value>(&self, fa: F::Of<A>) -> T::Of<A> {
        self.0.apply(FreeA::one(fa))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{
        interpret_command, run_form_observably_eq, results, Const, ConstApp, Fun, Functor, RunForm, RunFormApp, Res,
        Tag, TestCommand, TestCommandF,
    };
    use crate::free::lift2;

    type Cmd = TestCommandF;

    struct Interpret;
    impl NatTrans<Cmd, RunFormApp> for Interpret {
        fn apply<A: Value>(&self, e: TestCommand<A>) -> RunForm<A> {
            interpret_command(e)
        }
    }

    struct Rename(u8);
    impl NatTrans<Cmd, Cmd> for Rename {
        fn apply<A: Value>(&self, e: TestCommand<A>) -> TestCommand<A> {
            TestCommand { tag: Tag((e.tag.0 + self.0) % 3), resume: e.resume }
        }
    }

    struct Count;
    impl NatTrans<Cmd, ConstApp<i64>> for Count {
        fn apply<A: Value>(&self, _e: TestCommand<A>) -> Const<i64, A> {
            Const::new(1)
        }
    }

    fn run<A: Value>(u: FreeA<Cmd, A>) -> RunForm<A> {
        raise(&Interpret, &RunFormApp, u)
    }

    fn cmd(tag: u8) -> FreeA<Cmd, Res> {
        FreeA::one(TestCommand::new(Tag(tag), |r| r))
    }

    fn sample() -> FreeA<Cmd, (Res, Res)> {
        lift2(|a: Res, b: Res| (a, b), cmd(0), cmd(2))
    }

    #[test]
    fn lift_t_identity_is_identity() {
        let u = sample();
        assert!(run_form_observably_eq(&run(lift_t(&IdentityNat, u.clone())), &run(u), 3));
    }

    #[test]
    fn lift_t_composes() {
        let u = sample();
        let both = lift_t(&Then::<_, _, Cmd>::new(Rename(1), Rename(2)), u.clone());
        let stepwise = lift_t(&Rename(2), lift_t(&Rename(1), u));
        assert!(run_form_observably_eq(&run(both), &run(stepwise), 3));
    }

    #[test]
    fn lift_t_renames_one() {
        let renamed = lift_t(&Rename(1), cmd(0));
        let form = run(renamed);
        assert_eq!(form.tags, vec![Tag(1)]);
        assert!(run_form_observably_eq(&form, &run(cmd(1)), 3));
    }

    #[test]
    fn raise_pure_is_target_pure() {
        let form = raise(&Interpret, &RunFormApp, FreeA::<Cmd, i64>::pure(9));
        assert!(form.tags.is_empty());
        assert_eq!(form.eval(&[]), 9);
        assert_eq!(raise(&Count, &ConstApp::sum(), FreeA::<Cmd, i64>::pure(9)).accumulated, 0);
    }

    #[test]
    fn lower_of_raise_is_pointwise_the_original() {
        let lowered = lower(Raised::new(Interpret, RunFormApp));
        for tag in 0..3u8 {
            let e = TestCommand::new(Tag(tag), move |r: Res| Res((r.0 + tag) % 3));
            let lhs: RunForm<Res> = NatTrans::<Cmd, RunFormApp>::apply(&lowered, e.clone());
            assert!(run_form_observably_eq(&lhs, &interpret_command(e), 3));
        }
    }

    #[test]
    fn raise_of_lower_is_the_original_morphism() {
        let t = Raised::new(Interpret, RunFormApp);
        let back = raise(&lower(Raised::new(Interpret, RunFormApp)), &RunFormApp, sample());
        assert!(run_form_observably_eq(&back, &t.apply(sample()), 3));
    }

    #[test]
    fn interpret_command_is_natural() {
        for tag in 0..3u8 {
            let e = TestCommand::new(Tag(tag), |r: Res| r);
            for shift in results(3) {
                let h = Fun::new(move |r: Res| Res((r.0 + shift.0) % 3));
                let lhs = interpret_command(TestCommandF::map(h.clone(), e.clone()));
                let rhs = RunFormApp.fmap(h, interpret_command(e.clone()));
                assert!(run_form_observably_eq(&lhs, &rhs, 3));
            }
        }
    }

    #[test]
    fn lift_t_is_an_app_morphism_into_free() {
        let t = Lifted::<_, Cmd>::new(Rename(1));
        let h = cmd(0).map(|r: Res| Fun::new(move |s: Res| (r, s)));
        let x = cmd(1);
        let lhs = t.apply(h.clone().ap(x.clone()));
        let rhs = t.apply(h).ap(t.apply(x));
        assert!(run_form_observably_eq(&run(lhs), &run(rhs), 3));
        assert!(t.apply(FreeA::<Cmd, i64>::pure(1)).is_pure());
    }
}
