//! Executable versions of the free applicative laws.
//!
//! Each checker draws structures over [`TestCommand`] from a seeded
//! generator, interprets both sides of every law into [`RunForm`] (or another
//! reference target) and compares them exhaustively over the finite result
//! domain. A checker stops at its first counterexample.
//!
//! Checkers are generic over a [`Subject`]: the operations under test.
//! [`Reference`] is this crate's implementation; [`mutants`] holds
//! deliberately broken variants that the checkers must reject.

use std::fmt;

use crate::effect::{
    interpret_command, render_run_form, result_vectors, run_form_observably_eq, Applicative, Const, ConstApp, Fun,
    Functor, Identity, IdentityApp, Observable, Res, RunForm, RunFormApp, Tag, TestCommand, TestCommandF, Value,
};
use crate::free::FreeA;
use crate::left::{l2r, r2l, FreeAL};
use crate::transform::{lift_t, lower, raise, AppMorphism, IdentityNat, NatTrans, Raised, Then};

pub mod gen;
pub mod mutants;

pub use gen::{Free, Gen, GenConfig, GenValue, Left, Renaming};

type Cmd = TestCommandF;

/// `TestCommand → RunForm`, the reference interpretation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Interpret;

impl NatTrans<Cmd, RunFormApp> for Interpret {
    fn apply<A: Value>(&self, e: TestCommand<A>) -> RunForm<A> {
        interpret_command(e)
    }
}

/// Normal form of a structure, by the reference `raise`.
pub fn observe<A: Value>(u: Free<A>) -> RunForm<A> {
    raise(&Interpret, &RunFormApp, u)
}

/// Normal form of a left structure, by the reference `l2r`.
pub fn observe_left<A: Value>(u: Left<A>) -> RunForm<A> {
    observe(l2r(u))
}

// ---------------------------------------------------------------------------
// Operations under test

/// The operations the checkers exercise. Every method defaults to the
/// reference implementation; a mutant overrides one.
pub trait Subject {
    fn pure<A: Value>(&self, a: A) -> Free<A> {
        FreeA::pure(a)
    }

    fn map<A: Value, B: Value>(&self, f: Fun<A, B>, u: Free<A>) -> Free<B> {
        u.map_fun(f)
    }

    fn ap<A: Value, B: Value>(&self, f: Free<Fun<A, B>>, x: Free<A>) -> Free<B> {
        f.ap(x)
    }

    fn one<A: Value>(&self, e: TestCommand<A>) -> Free<A> {
        FreeA::one(e)
    }

    fn map_left<A: Value, B: Value>(&self, f: Fun<A, B>, u: Left<A>) -> Left<B> {
        u.map_fun(f)
    }

    fn r2l<A: Value>(&self, u: Free<A>) -> Left<A> {
        r2l(u)
    }

    fn l2r<A: Value>(&self, u: Left<A>) -> Free<A> {
        l2r(u)
    }

    fn raise<T: Applicative, K: NatTrans<Cmd, T>, A: Value>(&self, k: &K, dict: &T, u: Free<A>) -> T::Of<A> {
        raise(k, dict, u)
    }

    fn lift_t<K: NatTrans<Cmd, Cmd>, A: Value>(&self, k: &K, u: Free<A>) -> Free<A> {
        lift_t(k, u)
    }
}

/// This crate's implementation of every operation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reference;

impl Subject for Reference {}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Zero-based index of the failing case.
    pub case: usize,
    pub law: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub name: String,
    /// Cases run, including the failing one.
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: ok ({} cases)", self.name, self.cases),
            Some(cx) => write!(
                f,
                "{}: counterexample at case {} ({})\n  lhs: {}\n  rhs: {}",
                self.name, cx.case, cx.law, cx.lhs, cx.rhs
            ),
        }
    }
}

struct Failure {
    law: String,
    lhs: String,
    rhs: String,
}

type Outcome = Result<(), Failure>;

struct Tally {
    name: &'static str,
    cases: usize,
}

impl Tally {
    fn record(&mut self, outcome: Outcome) -> Result<(), LawReport> {
        self.cases += 1;
        outcome.map_err(|failure| LawReport {
            name: self.name.to_string(),
            cases: self.cases,
            counterexample: Some(Counterexample {
                case: self.cases - 1,
                law: failure.law,
                lhs: failure.lhs,
                rhs: failure.rhs,
            }),
        })
    }
}

fn drive(name: &'static str, body: impl FnOnce(&mut Tally) -> Result<(), LawReport>) -> LawReport {
    let mut tally = Tally { name, cases: 0 };
    match body(&mut tally) {
        Ok(()) => LawReport { name: name.to_string(), cases: tally.cases, counterexample: None },
        Err(report) => report,
    }
}

fn same_form<A: Observable>(law: &str, lhs: &RunForm<A>, rhs: &RunForm<A>, domain: usize) -> Outcome {
    if run_form_observably_eq(lhs, rhs, domain) {
        Ok(())
    } else {
        Err(Failure { law: law.to_string(), lhs: render_run_form(lhs, domain), rhs: render_run_form(rhs, domain) })
    }
}

fn same_free<A: Value + Observable>(law: &str, lhs: Free<A>, rhs: Free<A>, domain: usize) -> Outcome {
    same_form(law, &observe(lhs), &observe(rhs), domain)
}

fn same_left<A: Value + Observable>(law: &str, lhs: Left<A>, rhs: Left<A>, domain: usize) -> Outcome {
    same_form(law, &observe_left(lhs), &observe_left(rhs), domain)
}

fn same_value<V: PartialEq + fmt::Debug>(law: &str, lhs: V, rhs: V) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure { law: law.to_string(), lhs: format!("{lhs:?}"), rhs: format!("{rhs:?}") })
    }
}

// ---------------------------------------------------------------------------
// Reference targets

/// An applicative whose values can be compared and printed.
pub trait Target: Applicative + Clone {
    fn name(&self) -> &'static str;

    fn same<A: Value + Observable>(&self, a: &Self::Of<A>, b: &Self::Of<A>, domain: usize) -> bool;

    fn render<A: Value + Observable>(&self, a: &Self::Of<A>, domain: usize) -> String;
}

impl Target for IdentityApp {
    fn name(&self) -> &'static str {
        "Identity"
    }

    fn same<A: Value + Observable>(&self, a: &Identity<A>, b: &Identity<A>, domain: usize) -> bool {
        a.observe(domain) == b.observe(domain)
    }

    fn render<A: Value + Observable>(&self, a: &Identity<A>, domain: usize) -> String {
        format!("{:?}", a.observe(domain))
    }
}

impl Target for RunFormApp {
    fn name(&self) -> &'static str {
        "RunForm"
    }

    fn same<A: Value + Observable>(&self, a: &RunForm<A>, b: &RunForm<A>, domain: usize) -> bool {
        run_form_observably_eq(a, b, domain)
    }

    fn render<A: Value + Observable>(&self, a: &RunForm<A>, domain: usize) -> String {
        render_run_form(a, domain)
    }
}

impl Target for ConstApp<i64> {
    fn name(&self) -> &'static str {
        "Const(sum)"
    }

    fn same<A: Value + Observable>(&self, a: &Const<i64, A>, b: &Const<i64, A>, _domain: usize) -> bool {
        a.accumulated == b.accumulated
    }

    fn render<A: Value + Observable>(&self, a: &Const<i64, A>, _domain: usize) -> String {
        a.accumulated.to_string()
    }
}

impl Target for ConstApp<Vec<Tag>> {
    fn name(&self) -> &'static str {
        "Const(list)"
    }

    fn same<A: Value + Observable>(&self, a: &Const<Vec<Tag>, A>, b: &Const<Vec<Tag>, A>, _domain: usize) -> bool {
        a.accumulated == b.accumulated
    }

    fn render<A: Value + Observable>(&self, a: &Const<Vec<Tag>, A>, _domain: usize) -> String {
        format!("{:?}", a.accumulated)
    }
}

fn same_in<T: Target, A: Value + Observable>(law: &str, target: &T, lhs: &T::Of<A>, rhs: &T::Of<A>, domain: usize) -> Outcome {
    if target.same(lhs, rhs, domain) {
        Ok(())
    } else {
        Err(Failure {
            law: format!("{law} [{}]", target.name()),
            lhs: target.render(lhs, domain),
            rhs: target.render(rhs, domain),
        })
    }
}

/// Runs a command at the result named by its tag, modulo the domain.
#[derive(Clone, Copy, Debug)]
pub struct ResumeAtTag {
    pub domain: usize,
}

impl NatTrans<Cmd, IdentityApp> for ResumeAtTag {
    fn apply<A: Value>(&self, e: TestCommand<A>) -> Identity<A> {
        Identity(e.resume.call(Res((e.tag.0 as usize % self.domain) as u8)))
    }
}

/// Weighs each command by its tag plus one.
#[derive(Clone, Copy, Debug, Default)]
pub struct TagWeight;

impl NatTrans<Cmd, ConstApp<i64>> for TagWeight {
    fn apply<A: Value>(&self, e: TestCommand<A>) -> Const<i64, A> {
        Const::new(e.tag.0 as i64 + 1)
    }
}

/// Records each command's tag.
#[derive(Clone, Copy, Debug, Default)]
pub struct TagList;

impl NatTrans<Cmd, ConstApp<Vec<Tag>>> for TagList {
    fn apply<A: Value>(&self, e: TestCommand<A>) -> Const<Vec<Tag>, A> {
        Const::new(vec![e.tag])
    }
}

/// Counts commands.
#[derive(Clone, Copy, Debug, Default)]
pub struct CountOne;

impl NatTrans<Cmd, ConstApp<i64>> for CountOne {
    fn apply<A: Value>(&self, _e: TestCommand<A>) -> Const<i64, A> {
        Const::new(1)
    }
}

/// The subject's `raise` as an applicative morphism.
struct SubjectRaise<'a, S, K, T> {
    subject: &'a S,
    k: &'a K,
    dict: &'a T,
}

impl<S: Subject, T: Applicative, K: NatTrans<Cmd, T>> AppMorphism<Cmd, T> for SubjectRaise<'_, S, K, T> {
    fn apply<A: Value>(&self, u: Free<A>) -> T::Of<A> {
        self.subject.raise(self.k, self.dict, u)
    }
}

fn compose(g: Fun<Res, Res>, f: Fun<Res, Res>) -> Fun<Res, Res> {
    f.then(g)
}

// ---------------------------------------------------------------------------
// Checkers

/// `map id = id` and `map (g ∘ f) = map g ∘ map f`, for both
/// parenthesisations.
pub fn check_functor_laws(config: &GenConfig) -> LawReport {
    check_functor_laws_with(config, &Reference)
}

pub fn check_functor_laws_with<S: Subject>(config: &GenConfig, s: &S) -> LawReport {
    drive("functor laws", |tally| {
        let mut gen = Gen::new(config);
        let d = gen.domain();
        for _ in 0..config.cases {
            let n = gen.size();
            let u = gen.free::<Res>(n);
            let v = gen.left::<Res>(n);
            let f: Fun<Res, Res> = gen.table();
            let g: Fun<Res, Res> = gen.table();
            let outcome = (|| {
                same_free("identity", s.map(Fun::identity(), u.clone()), u.clone(), d)?;
                same_free(
                    "composition",
                    s.map(compose(g.clone(), f.clone()), u.clone()),
                    s.map(g.clone(), s.map(f.clone(), u.clone())),
                    d,
                )?;
                same_left("left identity", s.map_left(Fun::identity(), v.clone()), v.clone(), d)?;
                same_left(
                    "left composition",
                    s.map_left(compose(g.clone(), f.clone()), v.clone()),
                    s.map_left(g.clone(), s.map_left(f.clone(), v.clone())),
                    d,
                )
            })();
            tally.record(outcome)?;
        }
        Ok(())
    })
}

/// Identity, composition, homomorphism and interchange, plus
/// `map u (v <*> x) = map (u ∘) v <*> x`.
pub fn check_applicative_laws(config: &GenConfig) -> LawReport {
    check_applicative_laws_with(config, &Reference)
}

pub fn check_applicative_laws_with<S: Subject>(config: &GenConfig, s: &S) -> LawReport {
    drive("applicative laws", |tally| {
        let mut gen = Gen::new(config);
        let d = gen.domain();
        for _ in 0..config.cases {
            let [nu, nv, nx] = gen.sizes::<3>();
            let u = gen.free::<Fun<Res, Res>>(nu);
            let v = gen.free::<Fun<Res, Res>>(nv);
            let x = gen.free::<Res>(nx);
            let f: Fun<Res, Res> = gen.table();
            let y: Res = gen.res();
            let outcome = (|| {
                same_free("identity", s.ap(s.pure(Fun::identity()), x.clone()), x.clone(), d)?;

                let dot = Fun::new(|g: Fun<Res, Res>| Fun::new(move |f: Fun<Res, Res>| compose(g.clone(), f)));
                let lhs = s.ap(s.ap(s.ap(s.pure(dot), u.clone()), v.clone()), x.clone());
                let rhs = s.ap(u.clone(), s.ap(v.clone(), x.clone()));
                same_free("composition", lhs, rhs, d)?;

                let lhs = s.ap(s.pure(f.clone()), s.pure(y));
                same_free("homomorphism", lhs, s.pure(f.call(y)), d)?;

                let lhs = s.ap(u.clone(), s.pure(y));
                let rhs = s.ap(s.pure(Fun::new(move |g: Fun<Res, Res>| g.call(y))), u.clone());
                same_free("interchange", lhs, rhs, d)?;

                let lhs = s.map(f.clone(), s.ap(v.clone(), x.clone()));
                let post = f.clone();
                let rhs = s.ap(s.map(Fun::new(move |g: Fun<Res, Res>| compose(post.clone(), g)), v.clone()), x.clone());
                same_free("map over ap", lhs, rhs, d)
            })();
            tally.record(outcome)?;
        }
        Ok(())
    })
}

/// Naturality of both constructors, of `l2r` and of `r2l`.
pub fn check_naturality(config: &GenConfig) -> LawReport {
    check_naturality_with(config, &Reference)
}

pub fn check_naturality_with<S: Subject>(config: &GenConfig, s: &S) -> LawReport {
    drive("naturality", |tally| {
        let mut gen = Gen::new(config);
        let d = gen.domain();
        for _ in 0..config.cases {
            let [n_right, n_left] = gen.sizes::<2>();
            let n_right = n_right.min(config.max_size.saturating_sub(1));
            let n_left = n_left.min(config.max_size.saturating_sub(1));
            let h: Fun<Res, Res> = gen.table();
            let head: TestCommand<Fun<Res, Res>> = gen.command();
            let u = gen.free::<Res>(n_right);
            let init = gen.left::<Fun<Res, Res>>(n_left);
            let last: TestCommand<Res> = gen.command();
            let w = gen.left::<Res>(n_left);
            let outcome = (|| {
                if config.max_size > 0 {
                    let pre = h.clone();
                    let lhs = FreeA::ap_node(
                        TestCommandF::map(Fun::new(move |g: Fun<Res, Res>| pre.then(g)), head.clone()),
                        u.clone(),
                    );
                    let rhs = FreeA::ap_node(head.clone(), s.map(h.clone(), u.clone()));
                    same_free("right constructor", lhs, rhs, d)?;

                    let pre = h.clone();
                    let lhs = FreeAL::ap_node(
                        s.map_left(Fun::new(move |g: Fun<Res, Res>| pre.then(g)), init.clone()),
                        last.clone(),
                    );
                    let rhs = FreeAL::ap_node(init.clone(), TestCommandF::map(h.clone(), last.clone()));
                    same_left("left constructor", lhs, rhs, d)?;
                }
                same_free("l2r", s.l2r(s.map_left(h.clone(), w.clone())), s.map(h.clone(), s.l2r(w.clone())), d)?;
                same_left("r2l", s.r2l(s.map(h.clone(), u.clone())), s.map_left(h.clone(), s.r2l(u.clone())), d)
            })();
            tally.record(outcome)?;
        }
        Ok(())
    })
}

/// `l2r ∘ r2l = id` and `r2l ∘ l2r = id`.
pub fn check_iso(config: &GenConfig) -> LawReport {
    check_iso_with(config, &Reference)
}

pub fn check_iso_with<S: Subject>(config: &GenConfig, s: &S) -> LawReport {
    drive("isomorphism", |tally| {
        let mut gen = Gen::new(config);
        let d = gen.domain();
        for _ in 0..config.cases {
            let n = gen.size();
            let u = gen.free::<Fun<Res, Res>>(n);
            let v = gen.left::<Fun<Res, Res>>(n);
            let outcome = (|| {
                same_free("l2r after r2l", s.l2r(s.r2l(u.clone())), u.clone(), d)?;
                same_left("r2l after l2r", s.r2l(s.l2r(v.clone())), v.clone(), d)?;
                same_value("r2l keeps length", s.r2l(u.clone()).length(), u.size())
            })();
            tally.record(outcome)?;
        }
        Ok(())
    })
}

/// `raise` and `lower` are mutually inverse in every reference target,
/// `raise(k)` is an applicative morphism, `lift_t` is functorial and a
/// morphism, and `one g <*> x = g :$: x`.
pub fn check_adjunction(config: &GenConfig) -> LawReport {
    check_adjunction_with(config, &Reference)
}

pub fn check_adjunction_with<S: Subject>(config: &GenConfig, s: &S) -> LawReport {
    drive("adjunction", |tally| {
        let d = config.result_domain_size;
        let identity = ResumeAtTag { domain: d };

        // lower(raise k) = k, on every command with a tabulated resume.
        for tag in 0..config.tag_alphabet_size {
            for table in result_vectors(d, d) {
                let e = TestCommand::new(Tag(tag as u8), move |r: Res| table[r.0 as usize]);
                let outcome = (|| {
                    lower_raise(s, &identity, &IdentityApp, e.clone(), d)?;
                    lower_raise(s, &TagWeight, &ConstApp::sum(), e.clone(), d)?;
                    lower_raise(s, &TagList, &ConstApp::concat(), e.clone(), d)?;
                    lower_raise(s, &Interpret, &RunFormApp, e.clone(), d)
                })();
                tally.record(outcome)?;
            }
        }

        let mut gen = Gen::new(config);
        for _ in 0..config.cases {
            let [nu, nh, nx] = gen.sizes::<3>();
            let u = gen.free::<Res>(nu);
            let h = gen.free::<Fun<Res, Res>>(nh);
            let x = gen.free::<Res>(nx);
            let y = gen.res();
            let e: TestCommand<Res> = gen.command();
            let g: TestCommand<Fun<Res, Res>> = gen.command();
            let first = gen.renaming();
            let second = gen.renaming();
            let case = Case { u, h, x, y, e };
            let outcome = (|| {
                morphism(s, &identity, &IdentityApp, &case, d)?;
                morphism(s, &TagWeight, &ConstApp::sum(), &case, d)?;
                morphism(s, &TagList, &ConstApp::concat(), &case, d)?;
                morphism(s, &Interpret, &RunFormApp, &case, d)?;

                let Case { u, h, x, y, .. } = &case;
                same_free("lift_t(id) = id", s.lift_t(&IdentityNat, u.clone()), u.clone(), d)?;
                let both = Then::<_, _, Cmd>::new(first.clone(), second.clone());
                same_free(
                    "lift_t(t . u) = lift_t(t) . lift_t(u)",
                    s.lift_t(&both, u.clone()),
                    s.lift_t(&second, s.lift_t(&first, u.clone())),
                    d,
                )?;
                same_free(
                    "lift_t preserves ap",
                    s.lift_t(&first, s.ap(h.clone(), x.clone())),
                    s.ap(s.lift_t(&first, h.clone()), s.lift_t(&first, x.clone())),
                    d,
                )?;
                same_free("lift_t preserves pure", s.lift_t(&first, s.pure(*y)), s.pure(*y), d)?;
                same_free("one g <*> x = g :$: x", s.ap(s.one(g.clone()), x.clone()), FreeA::ap_node(g.clone(), x.clone()), d)
            })();
            tally.record(outcome)?;
        }
        Ok(())
    })
}

struct Case {
    u: Free<Res>,
    h: Free<Fun<Res, Res>>,
    x: Free<Res>,
    y: Res,
    e: TestCommand<Res>,
}

fn lower_raise<S: Subject, T: Target, K: NatTrans<Cmd, T>>(s: &S, k: &K, dict: &T, e: TestCommand<Res>, d: usize) -> Outcome {
    let lowered = lower(SubjectRaise { subject: s, k, dict });
    let lhs: T::Of<Res> = NatTrans::<Cmd, T>::apply(&lowered, e.clone());
    same_in("lower(raise k) = k", dict, &lhs, &k.apply(e), d)
}

fn morphism<S: Subject, T: Target, K: NatTrans<Cmd, T>>(s: &S, k: &K, dict: &T, case: &Case, d: usize) -> Outcome {
    let Case { u, h, x, y, e } = case;
    let reference = Raised::new(k, dict.clone());
    let back = s.raise(&lower(Raised::new(k, dict.clone())), dict, u.clone());
    same_in("raise(lower t) = t", dict, &back, &reference.apply(u.clone()), d)?;

    same_in("raise(k) preserves pure", dict, &s.raise(k, dict, s.pure(*y)), &dict.pure(*y), d)?;
    let lhs = s.raise(k, dict, s.ap(h.clone(), x.clone()));
    let rhs = dict.ap(s.raise(k, dict, h.clone()), s.raise(k, dict, x.clone()));
    same_in("raise(k) preserves ap", dict, &lhs, &rhs, d)?;

    same_in("raise(k)(one e) = k(e)", dict, &s.raise(k, dict, s.one(e.clone())), &k.apply(e.clone()), d)
}

/// `size(map f u) = size u`, `size(u <*> v) = size u + size v`, and
/// `count` agrees with counting through `raise`.
pub fn check_size_laws(config: &GenConfig) -> LawReport {
    check_size_laws_with(config, &Reference)
}

pub fn check_size_laws_with<S: Subject>(config: &GenConfig, s: &S) -> LawReport {
    drive("size laws", |tally| {
        let mut gen = Gen::new(config);
        for _ in 0..config.cases {
            let [nu, nv] = gen.sizes::<2>();
            let u = gen.free::<Fun<Res, Res>>(nu);
            let v = gen.free::<Res>(nv);
            let f: Fun<Res, Res> = gen.table();
            let outcome = (|| {
                same_value("size of map", s.map(f.clone(), v.clone()).size(), v.size())?;
                same_value("size of ap", s.ap(u.clone(), v.clone()).size(), u.size() + v.size())?;
                let counted = s.raise(&CountOne, &ConstApp::sum(), v.clone()).accumulated;
                same_value("count", v.count() as i64, counted)
            })();
            tally.record(outcome)?;
        }
        Ok(())
    })
}

/// Every checker, run against `s`.
pub fn check_all_with<S: Subject>(config: &GenConfig, s: &S) -> Vec<LawReport> {
    vec![
        check_functor_laws_with(config, s),
        check_applicative_laws_with(config, s),
        check_naturality_with(config, s),
        check_iso_with(config, s),
        check_adjunction_with(config, s),
        check_size_laws_with(config, s),
    ]
}

pub fn check_all(config: &GenConfig) -> Vec<LawReport> {
    check_all_with(config, &Reference)
}
