//! The right-parenthesised free applicative functor.
//!
//! A [`FreeA`] is either a pure value or an effect producing a function that
//! is applied to the result of the rest of the structure:
//!
//! ```text
//! h_n :$: ( ... :$: (h_1 :$: Pure x))
//! ```
//!
//! Effects run head first. The intermediate type of every `:$:` node is
//! hidden; code outside this module only reaches the head and tail of a node
//! together, through [`FreeVisitor`], at one common type.
//!
//! All recursive operations recurse once per `:$:` node, so the stack depth
//! is proportional to [`FreeA::size`]. Structures up to 10^4 nodes are
//! supported on a default thread stack.

use std::fmt;
use std::rc::Rc;

use crate::effect::{Functor, Fun, Value};
use crate::hidden::{hide, reveal, Hidden};

pub struct FreeA<F: Functor, A: Value>(Node<F, A>);

enum Node<F: Functor, A: Value> {
    Pure(A),
    Ap(F::Of<Fun<Hidden, A>>, Rc<FreeA<F, Hidden>>),
}

impl<F: Functor, A: Value> Clone for FreeA<F, A> {
    fn clone(&self) -> Self {
        FreeA(match &self.0 {
            Node::Pure(a) => Node::Pure(a.clone()),
            Node::Ap(h, t) => Node::Ap(h.clone(), Rc::clone(t)),
        })
    }
}

impl<F: Functor, A: Value> fmt::Debug for FreeA<F, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeA(size = {})", self.size())
    }
}

/// Structural inspection of one layer of a [`FreeA`].
///
/// `ap` is generic in the hidden type: the visitor receives the head effect
/// and the tail together and cannot learn what `B` is.
pub trait FreeVisitor<F: Functor, A: Value> {
    type Output;

    fn pure(self, value: A) -> Self::Output;

    fn ap<B: Value>(self, head: F::Of<Fun<B, A>>, tail: FreeA<F, B>) -> Self::Output;
}

impl<F: Functor, A: Value> FreeA<F, A> {
    pub fn pure(value: A) -> Self {
        FreeA(Node::Pure(value))
    }

    /// The `:$:` constructor.
    pub fn ap_node<B: Value>(head: F::Of<Fun<B, A>>, tail: FreeA<F, B>) -> Self {
        let head = F::map(Fun::new(|f: Fun<B, A>| Fun::new(move |h: Hidden| f.call(reveal::<B>(h)))), head);
        let tail = tail.map(hide::<B>);
        FreeA(Node::Ap(head, Rc::new(tail)))
    }

    /// Lift a single effect: `map(const, e) :$: Pure(())`.
    pub fn one(effect: F::Of<A>) -> Self {
        let head = F::map(Fun::new(|a: A| Fun::new(move |_: ()| a.clone())), effect);
        FreeA::ap_node(head, FreeA::pure(()))
    }

    pub fn visit<V: FreeVisitor<F, A>>(self, visitor: V) -> V::Output {
        match self.0 {
            Node::Pure(a) => visitor.pure(a),
            Node::Ap(h, t) => visitor.ap::<Hidden>(h, unshare(t)),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.0, Node::Pure(_))
    }

    /// Number of `:$:` nodes.
    pub fn size(&self) -> usize {
        match &self.0 {
            Node::Pure(_) => 0,
            Node::Ap(_, tail) => {
                let mut n = 1;
                let mut cur: &FreeA<F, Hidden> = tail;
                while let Node::Ap(_, next) = &cur.0 {
                    n += 1;
                    cur = next;
                }
                n
            }
        }
    }

    /// Number of effects; the same measure as [`FreeA::size`].
    pub fn count(&self) -> usize {
        self.size()
    }

    pub fn map<B: Value>(self, g: impl Fn(A) -> B + 'static) -> FreeA<F, B> {
        self.map_fun(Fun::new(g))
    }

    pub fn map_fun<B: Value>(self, g: Fun<A, B>) -> FreeA<F, B> {
        match self.0 {
            Node::Pure(a) => FreeA::pure(g.call(a)),
            Node::Ap(h, t) => {
                let h = F::map(Fun::new(move |f: Fun<Hidden, A>| f.then(g.clone())), h);
                FreeA(Node::Ap(h, t))
            }
        }
    }

    /// The pure value, if there are no effects.
    pub fn into_pure(self) -> Option<A> {
        match self.0 {
            Node::Pure(a) => Some(a),
            Node::Ap(..) => None,
        }
    }
}

impl<F: Functor, A: Value, B: Value> FreeA<F, Fun<A, B>> {
    /// `<*>`. Effects of `self` run before those of `arg`.
    pub fn ap(self, arg: FreeA<F, A>) -> FreeA<F, B> {
        match self.0 {
            Node::Pure(g) => arg.map_fun(g),
            Node::Ap(h, x) => {
                let h = F::map(Fun::new(uncurry::<Hidden, A, B>), h);
                let paired = unshare(x).map(|b: Hidden| Fun::new(move |a: A| (b.clone(), a)));
                FreeA::ap_node(h, paired.ap(arg))
            }
        }
    }
}

fn uncurry<X: Value, Y: Value, Z: Value>(f: Fun<X, Fun<Y, Z>>) -> Fun<(X, Y), Z> {
    Fun::new(move |(x, y): (X, Y)| f.call(x).call(y))
}

pub(crate) fn unshare<T: Clone>(rc: Rc<T>) -> T {
    Rc::try_unwrap(rc).unwrap_or_else(|rc| (*rc).clone())
}

/// `lift2(h, x, y) = map(h, x) <*> y`.
pub fn lift2<F: Functor, A: Value, B: Value, C: Value>(
    h: impl Fn(A, B) -> C + 'static,
    x: FreeA<F, A>,
    y: FreeA<F, B>,
) -> FreeA<F, C> {
    let h = Rc::new(h);
    x.map(move |a: A| {
        let h = Rc::clone(&h);
        Fun::new(move |b: B| h(a.clone(), b))
    })
    .ap(y)
}

/// `lift3(h, x, y, z) = lift2(apply, lift2(h, x, y), z)`.
pub fn lift3<F: Functor, A: Value, B: Value, C: Value, D: Value>(
    h: impl Fn(A, B, C) -> D + 'static,
    x: FreeA<F, A>,
    y: FreeA<F, B>,
    z: FreeA<F, C>,
) -> FreeA<F, D> {
    let h = Rc::new(h);
    let partial = lift2(
        move |a: A, b: B| {
            let h = Rc::clone(&h);
            Fun::new(move |c: C| h(a.clone(), b.clone(), c))
        },
        x,
        y,
    );
    lift2(|f: Fun<C, D>, c: C| f.call(c), partial, z)
}
