//! Effect families, applicative dictionaries and the reference targets.
//!
//! Rust has no higher-kinded types, so a type constructor is represented by a
//! *brand*: a type implementing [`Kind`] whose generic associated type `Of<A>`
//! is the constructor applied to `A`. Effect families implement [`Functor`]
//! on their brand. Applicative targets implement [`Applicative`] on a
//! dictionary value, so a target may carry data (the monoid of [`ConstApp`]).
//!
//! The finite [`TestCommand`] family together with [`RunForm`] forms the
//! observational-equality oracle used throughout the test-suite: a free
//! structure over `TestCommand` is interpreted into its normal form, and two
//! normal forms are compared by enumerating every possible vector of results.

use std::fmt;
use std::marker::PhantomData;
use std::rc::Rc;

/// Anything that can be stored inside an effect or a free structure.
pub trait Value: Clone + 'static {}
impl<T: Clone + 'static> Value for T {}

/// A shareable function value.
pub struct Fun<A, B>(Rc<dyn Fn(A) -> B>);

impl<A, B> Clone for Fun<A, B> {
    fn clone(&self) -> Self {
        Fun(Rc::clone(&self.0))
    }
}

impl<A, B> fmt::Debug for Fun<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<fun>")
    }
}

impl<A: 'static, B: 'static> Fun<A, B> {
    pub fn new(f: impl Fn(A) -> B + 'static) -> Self {
        Fun(Rc::new(f))
    }

    #[inline]
    pub fn call(&self, a: A) -> B {
        (self.0)(a)
    }

    /// `other ∘ self`.
    pub fn then<C: 'static>(&self, other: Fun<B, C>) -> Fun<A, C> {
        let first = self.clone();
        Fun::new(move |a| other.call(first.call(a)))
    }

    pub fn constant(b: B) -> Self
    where
        B: Clone,
    {
        Fun::new(move |_| b.clone())
    }
}

impl<A: 'static> Fun<A, A> {
    pub fn identity() -> Self {
        Fun::new(|a| a)
    }
}

/// A type constructor, named by a brand type.
pub trait Kind: 'static {
    type Of<A: Value>: Clone + 'static;
}

/// An effect family with a lawful `map`.
///
/// Laws (checked observationally, never at construction):
/// `map(id, e) ≡ e` and `map(g ∘ f, e) ≡ map(g, map(f, e))`.
pub trait Functor: Kind {
    fn map<A: Value, B: Value>(f: Fun<A, B>, fa: Self::Of<A>) -> Self::Of<B>;
}

/// Applicative dictionary. `self` is the dictionary value.
pub trait Applicative: Kind {
    fn pure<A: Value>(&self, a: A) -> Self::Of<A>;

    fn ap<A: Value, B: Value>(&self, f: Self::Of<Fun<A, B>>, x: Self::Of<A>) -> Self::Of<B>;

    fn fmap<A: Value, B: Value>(&self, f: Fun<A, B>, x: Self::Of<A>) -> Self::Of<B> {
        self.ap(self.pure(f), x)
    }
}

// ---------------------------------------------------------------------------
// Identity

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity<A>(pub A);

/// Brand and dictionary of the identity applicative.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityApp;

impl Kind for IdentityApp {
    type Of<A: Value> = Identity<A>;
}

impl Functor for IdentityApp {
    fn map<A: Value, B: Value>(f: Fun<A, B>, fa: Identity<A>) -> Identity<B> {
        Identity(f.call(fa.0))
    }
}

impl Applicative for IdentityApp {
    fn pure<A: Value>(&self, a: A) -> Identity<A> {
        Identity(a)
    }

    fn ap<A: Value, B: Value>(&self, f: Identity<Fun<A, B>>, x: Identity<A>) -> Identity<B> {
        Identity(f.0.call(x.0))
    }
}

// ---------------------------------------------------------------------------
// Const

/// The constant applicative over a monoid `M`; the `A` parameter is phantom.
pub struct Const<M, A> {
    pub accumulated: M,
    _marker: PhantomData<fn() -> A>,
}

impl<M, A> Const<M, A> {
    pub fn new(accumulated: M) -> Self {
        Const { accumulated, _marker: PhantomData }
    }

    pub fn into_inner(self) -> M {
        self.accumulated
    }
}

impl<M: Clone, A> Clone for Const<M, A> {
    fn clone(&self) -> Self {
        Const::new(self.accumulated.clone())
    }
}

impl<M: fmt::Debug, A> fmt::Debug for Const<M, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Const").field(&self.accumulated).finish()
    }
}

impl<M: PartialEq, A> PartialEq for Const<M, A> {
    fn eq(&self, other: &Self) -> bool {
        self.accumulated == other.accumulated
    }
}

/// Dictionary of the constant applicative: a caller-supplied monoid.
pub struct ConstApp<M> {
    unit: M,
    combine: Rc<dyn Fn(&M, &M) -> M>,
}

impl<M: Clone> Clone for ConstApp<M> {
    fn clone(&self) -> Self {
        ConstApp { unit: self.unit.clone(), combine: Rc::clone(&self.combine) }
    }
}

impl<M: Value> ConstApp<M> {
    pub fn new(unit: M, combine: impl Fn(&M, &M) -> M + 'static) -> Self {
        ConstApp { unit, combine: Rc::new(combine) }
    }

    pub fn unit(&self) -> M {
        self.unit.clone()
    }

    pub fn combine(&self, a: &M, b: &M) -> M {
        (self.combine)(a, b)
    }
}

impl ConstApp<i64> {
    /// The `(0, +)` monoid.
    pub fn sum() -> Self {
        ConstApp::new(0, |a, b| a + b)
    }
}

impl<T: Value> ConstApp<Vec<T>> {
    /// The `([], ++)` monoid.
    pub fn concat() -> Self {
        ConstApp::new(Vec::new(), |a: &Vec<T>, b: &Vec<T>| {
            let mut out = a.clone();
            out.extend(b.iter().cloned());
            out
        })
    }
}

impl<M: Value> Kind for ConstApp<M> {
    type Of<A: Value> = Const<M, A>;
}

impl<M: Value> Applicative for ConstApp<M> {
    fn pure<A: Value>(&self, _a: A) -> Const<M, A> {
        Const::new(self.unit())
    }

    fn ap<A: Value, B: Value>(&self, f: Const<M, Fun<A, B>>, x: Const<M, A>) -> Const<M, B> {
        Const::new(self.combine(&f.accumulated, &x.accumulated))
    }
}

// ---------------------------------------------------------------------------
// Option

/// Brand and dictionary of the optional-value applicative:
/// `ap` is present iff both sides are present.
#[derive(Clone, Copy, Debug, Default)]
pub struct OptionApp;

impl Kind for OptionApp {
    type Of<A: Value> = Option<A>;
}

impl Functor for OptionApp {
    fn map<A: Value, B: Value>(f: Fun<A, B>, fa: Option<A>) -> Option<B> {
        fa.map(|a| f.call(a))
    }
}

impl Applicative for OptionApp {
    fn pure<A: Value>(&self, a: A) -> Option<A> {
        Some(a)
    }

    fn ap<A: Value, B: Value>(&self, f: Option<Fun<A, B>>, x: Option<A>) -> Option<B> {
        Some(f?.call(x?))
    }
}

// ---------------------------------------------------------------------------
// Finite test commands

/// Element of the finite tag alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag(pub u8);

/// Element of the finite result domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Res(pub u8);

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

impl fmt::Display for Res {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// All results of a domain of the given size.
pub fn results(domain: usize) -> impl Iterator<Item = Res> + Clone {
    (0..domain).map(|r| Res(r as u8))
}

/// A command with a finite tag whose continuation reads one result.
pub struct TestCommand<A> {
    pub tag: Tag,
    pub resume: Fun<Res, A>,
}

impl<A> Clone for TestCommand<A> {
    fn clone(&self) -> Self {
        TestCommand { tag: self.tag, resume: self.resume.clone() }
    }
}

impl<A> fmt::Debug for TestCommand<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestCommand({})", self.tag)
    }
}

impl<A: 'static> TestCommand<A> {
    pub fn new(tag: Tag, resume: impl Fn(Res) -> A + 'static) -> Self {
        TestCommand { tag, resume: Fun::new(resume) }
    }
}

/// Brand of the [`TestCommand`] family.
#[derive(Clone, Copy, Debug, Default)]
pub struct TestCommandF;

impl Kind for TestCommandF {
    type Of<A: Value> = TestCommand<A>;
}

impl Functor for TestCommandF {
    fn map<A: Value, B: Value>(f: Fun<A, B>, fa: TestCommand<A>) -> TestCommand<B> {
        TestCommand { tag: fa.tag, resume: fa.resume.then(f) }
    }
}

// ---------------------------------------------------------------------------
// RunForm

/// Normal form of a computation over [`TestCommand`]: the tags it performs,
/// in order, and a pure evaluator over the vector of their results.
pub struct RunForm<A> {
    pub tags: Vec<Tag>,
    eval: Rc<dyn Fn(&[Res]) -> A>,
}

impl<A> Clone for RunForm<A> {
    fn clone(&self) -> Self {
        RunForm { tags: self.tags.clone(), eval: Rc::clone(&self.eval) }
    }
}

impl<A> fmt::Debug for RunForm<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RunForm").field("tags", &self.tags).finish_non_exhaustive()
    }
}

impl<A> RunForm<A> {
    pub fn new(tags: Vec<Tag>, eval: impl Fn(&[Res]) -> A + 'static) -> Self {
        RunForm { tags, eval: Rc::new(eval) }
    }

    /// Panics if `results.len()` differs from the number of tags.
    pub fn eval(&self, results: &[Res]) -> A {
        assert_eq!(results.len(), self.tags.len(), "result vector length mismatch");
        (self.eval)(results)
    }
}

/// Brand and dictionary of the [`RunForm`] applicative.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunFormApp;

impl Kind for RunFormApp {
    type Of<A: Value> = RunForm<A>;
}

impl Applicative for RunFormApp {
    fn pure<A: Value>(&self, a: A) -> RunForm<A> {
        RunForm::new(Vec::new(), move |_| a.clone())
    }

    fn ap<A: Value, B: Value>(&self, f: RunForm<Fun<A, B>>, x: RunForm<A>) -> RunForm<B> {
        let split = f.tags.len();
        let mut tags = f.tags;
        tags.extend_from_slice(&x.tags);
        let (fe, xe) = (f.eval, x.eval);
        RunForm::new(tags, move |rs: &[Res]| fe(&rs[..split]).call(xe(&rs[split..])))
    }
}

/// `([cmd.tag], rs ↦ cmd.resume(rs[0]))`.
pub fn interpret_command<A: Value>(cmd: TestCommand<A>) -> RunForm<A> {
    let resume = cmd.resume;
    RunForm::new(vec![cmd.tag], move |rs: &[Res]| resume.call(rs[0]))
}

/// Every vector in `Res^len` for a domain of size `domain`, in lexicographic
/// order.
pub fn result_vectors(domain: usize, len: usize) -> impl Iterator<Item = Vec<Res>> {
    let total = domain.checked_pow(len as u32).expect("enumeration too large");
    (0..total).map(move |mut index| {
        let mut v = vec![Res(0); len];
        for slot in v.iter_mut().rev() {
            *slot = Res((index % domain) as u8);
            index /= domain;
        }
        v
    })
}

/// Observational equality of two normal forms: equal tag sequences and
/// equal values on every result vector.
pub fn run_form_eq<A>(
    a: &RunForm<A>,
    b: &RunForm<A>,
    domain: usize,
    value_eq: impl Fn(&A, &A) -> bool,
) -> bool {
    a.tags == b.tags
        && result_vectors(domain, a.tags.len()).all(|rs| value_eq(&a.eval(&rs), &b.eval(&rs)))
}

/// Values with a decidable, finite observation. Functions out of [`Res`]
/// are observed as their full table.
pub trait Observable {
    type Obs: Eq + fmt::Debug;
    fn observe(&self, domain: usize) -> Self::Obs;
}

macro_rules! observe_by_value {
    ($($t:ty),*) => {$(
        impl Observable for $t {
            type Obs = $t;
            fn observe(&self, _domain: usize) -> $t {
                self.clone()
            }
        }
    )*};
}

observe_by_value!(Res, Tag, (), bool, i64, usize, String);

impl<A: Observable, B: Observable> Observable for (A, B) {
    type Obs = (A::Obs, B::Obs);
    fn observe(&self, domain: usize) -> Self::Obs {
        (self.0.observe(domain), self.1.observe(domain))
    }
}

impl<A: Observable> Observable for Vec<A> {
    type Obs = Vec<A::Obs>;
    fn observe(&self, domain: usize) -> Self::Obs {
        self.iter().map(|a| a.observe(domain)).collect()
    }
}

impl<A: Observable> Observable for Option<A> {
    type Obs = Option<A::Obs>;
    fn observe(&self, domain: usize) -> Self::Obs {
        self.as_ref().map(|a| a.observe(domain))
    }
}

impl<A: Observable> Observable for Identity<A> {
    type Obs = A::Obs;
    fn observe(&self, domain: usize) -> Self::Obs {
        self.0.observe(domain)
    }
}

impl<B: Observable + 'static> Observable for Fun<Res, B> {
    type Obs = Vec<B::Obs>;
    fn observe(&self, domain: usize) -> Self::Obs {
        results(domain).map(|r| self.call(r).observe(domain)).collect()
    }
}

/// [`run_form_eq`] with the equality induced by [`Observable`].
pub fn run_form_observably_eq<A: Observable>(a: &RunForm<A>, b: &RunForm<A>, domain: usize) -> bool {
    run_form_eq(a, b, domain, |x, y| x.observe(domain) == y.observe(domain))
}

/// Full observation of a normal form: its tags and the observed value for
/// every result vector.
pub fn render_run_form<A: Observable>(form: &RunForm<A>, domain: usize) -> String {
    let tags: Vec<String> = form.tags.iter().map(ToString::to_string).collect();
    let table: Vec<String> = result_vectors(domain, form.tags.len())
        .map(|rs| {
            let key: Vec<String> = rs.iter().map(ToString::to_string).collect();
            format!("[{}]={:?}", key.join(","), form.eval(&rs).observe(domain))
        })
        .collect();
    format!("tags=[{}] eval={{{}}}", tags.join(","), table.join(" "))
}
