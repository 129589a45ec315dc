//! Free applicative functors over arbitrary effect families, with
//! statically analysable DSLs built on top of them.
//!
//! * [`effect`]: effect families, applicative dictionaries, reference targets
//!   and the finite [`RunForm`](effect::RunForm) oracle.
//! * [`free`]: the right-parenthesised free applicative [`FreeA`].
//! * [`left`]: the left-parenthesised form and the isomorphism with `FreeA`.
//! * [`transform`]: natural transformations, `lift_t`, `raise` and `lower`.
//! * [`monad`]: the free monad and the embedding of `FreeA` into it.
//! * [`optparse`]: a command-line option parser DSL.
//! * [`webservice`]: a web-service DSL with a deterministic mock transport.
//! * [`laws`]: reusable law checkers with seeded generators.

pub mod effect;
pub mod free;
mod hidden;
pub mod laws;
pub mod left;
pub mod monad;
pub mod optparse;
pub mod transform;
pub mod webservice;

pub use effect::{Applicative, Fun, Functor, Kind, Value};
pub use free::{lift2, lift3, FreeA, FreeVisitor};
pub use left::{l2r, r2l, FreeAL, FreeLeftVisitor};
pub use monad::{lift_a2m, FreeMonad};
pub use transform::{lift_t, lower, raise, AppMorphism, NatTrans};
