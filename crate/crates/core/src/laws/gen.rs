//! Seeded generators for structures over [`TestCommand`].
//!
//! Every function a law quantifies over is an explicit lookup table on the
//! finite result domain, so equality of functions is decidable.

use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::effect::{Fun, Observable, Res, Tag, TestCommand, TestCommandF, Value};
use crate::free::FreeA;
use crate::left::FreeAL;
use crate::transform::NatTrans;

pub type Free<A> = FreeA<TestCommandF, A>;
pub type Left<A> = FreeAL<TestCommandF, A>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// Largest total number of effects in one case.
    pub max_size: usize,
    pub tag_alphabet_size: usize,
    pub result_domain_size: usize,
    pub cases: usize,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_size: 5, tag_alphabet_size: 3, result_domain_size: 3, cases: 200, seed: 0 }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig { seed, ..GenConfig::default() }
    }

    /// Panics unless both alphabets hold between 1 and 256 symbols.
    fn assert_valid(&self) {
        assert!((1..=256).contains(&self.tag_alphabet_size), "tag_alphabet_size must be in 1..=256");
        assert!((1..=256).contains(&self.result_domain_size), "result_domain_size must be in 1..=256");
    }
}

/// Values that can be drawn at random.
pub trait GenValue: Value + Observable {
    fn generate(gen: &mut Gen) -> Self;
}

impl GenValue for Res {
    fn generate(gen: &mut Gen) -> Self {
        gen.res()
    }
}

impl<V: GenValue> GenValue for Fun<Res, V> {
    fn generate(gen: &mut Gen) -> Self {
        gen.table()
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
    max_size: usize,
    tags: usize,
    domain: usize,
}

impl Gen {
    pub fn new(config: &GenConfig) -> Self {
        config.assert_valid();
        Gen {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            max_size: config.max_size,
            tags: config.tag_alphabet_size,
            domain: config.result_domain_size,
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn tag_alphabet_size(&self) -> usize {
        self.tags
    }

    /// Uniform over `0..=max_size`.
    pub fn size(&mut self) -> usize {
        self.rng.gen_range(0..=self.max_size)
    }

    /// A total size from [`Gen::size`], spread at random over `N` parts.
    pub fn sizes<const N: usize>(&mut self) -> [usize; N] {
        let mut parts = [0; N];
        for _ in 0..self.size() {
            parts[self.rng.gen_range(0..N)] += 1;
        }
        parts
    }

    pub fn tag(&mut self) -> Tag {
        Tag(self.rng.gen_range(0..self.tags) as u8)
    }

    pub fn res(&mut self) -> Res {
        Res(self.rng.gen_range(0..self.domain) as u8)
    }

    pub fn value<V: GenValue>(&mut self) -> V {
        V::generate(self)
    }

    /// A random function on the result domain, as a table.
    pub fn table<V: GenValue>(&mut self) -> Fun<Res, V> {
        let table: Vec<V> = (0..self.domain).map(|_| self.value()).collect();
        Fun::new(move |r: Res| table[r.0 as usize].clone())
    }

    pub fn command<V: GenValue>(&mut self) -> TestCommand<V> {
        let tag = self.tag();
        TestCommand { tag, resume: self.table() }
    }

    /// A random function of the whole result vector of `len` effects.
    fn outcome<V: GenValue>(&mut self, len: usize) -> Fun<Vec<Res>, V> {
        let rows = self.domain.checked_pow(len as u32).expect("result table too large");
        let table: Vec<V> = (0..rows).map(|_| self.value()).collect();
        let domain = self.domain;
        Fun::new(move |rs: Vec<Res>| table[rs.iter().fold(0, |i, r| i * domain + r.0 as usize)].clone())
    }

    /// A structure with `size` effects and a random value table. Built from
    /// the raw constructors only.
    pub fn free<V: GenValue>(&mut self, size: usize) -> Free<V> {
        let tags: Vec<Tag> = (0..size).map(|_| self.tag()).collect();
        let outcome = self.outcome(size);
        build(&tags, outcome)
    }

    /// A left-parenthesised structure with `size` effects and a random value
    /// table. Built from the raw constructors only.
    pub fn left<V: GenValue>(&mut self, size: usize) -> Left<V> {
        let tags: Vec<Tag> = (0..size).map(|_| self.tag()).collect();
        let outcome = self.outcome(size);
        build_left(&tags).map_fun(outcome)
    }

    pub fn renaming(&mut self) -> Renaming {
        Renaming(Rc::new((0..self.tags).map(|_| self.tag()).collect()))
    }
}

// Each head passes its result on by prefixing it to the results of the tail.
fn build<V: Value>(tags: &[Tag], outcome: Fun<Vec<Res>, V>) -> Free<V> {
    match tags.split_first() {
        None => FreeA::pure(outcome.call(Vec::new())),
        Some((&tag, rest)) => {
            let head = TestCommand::new(tag, move |r: Res| {
                let outcome = outcome.clone();
                Fun::new(move |tail: Vec<Res>| {
                    let mut all = Vec::with_capacity(tail.len() + 1);
                    all.push(r);
                    all.extend(tail);
                    outcome.call(all)
                })
            });
            FreeA::ap_node(head, build(rest, Fun::identity()))
        }
    }
}

// Results in structure order: `last` contributes the final entry.
fn build_left(tags: &[Tag]) -> Left<Vec<Res>> {
    match tags.split_last() {
        None => FreeAL::pure(Vec::new()),
        Some((&tag, init)) => {
            let init = build_left(init).map(|prefix: Vec<Res>| {
                Fun::new(move |r: Res| {
                    let mut all = prefix.clone();
                    all.push(r);
                    all
                })
            });
            FreeAL::ap_node(init, TestCommand::new(tag, |r| r))
        }
    }
}

/// A transformation of [`TestCommand`] that renames tags through a table.
#[derive(Clone, Debug)]
pub struct Renaming(Rc<Vec<Tag>>);

impl Renaming {
    pub fn new(table: Vec<Tag>) -> Self {
        Renaming(Rc::new(table))
    }
}

impl NatTrans<TestCommandF, TestCommandF> for Renaming {
    fn apply<A: Value>(&self, e: TestCommand<A>) -> TestCommand<A> {
        TestCommand { tag: self.0[e.tag.0 as usize], resume: e.resume }
    }
}
