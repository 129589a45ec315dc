use std::any::Any;
use std::rc::Rc;

use crate::effect::Value;

/// Erased stand-in for an existentially quantified type.
///
/// Each `Hidden` is produced by [`hide`] at exactly one type and consumed by
/// [`reveal`] at that same type, by a closure created alongside it. No public
/// API can observe one.
#[derive(Clone)]
pub(crate) struct Hidden(Rc<dyn Any>);

pub(crate) fn hide<B: Value>(b: B) -> Hidden {
    Hidden(Rc::new(b))
}

pub(crate) fn reveal<B: Value>(h: Hidden) -> B {
    match h.0.downcast_ref::<B>() {
        Some(b) => b.clone(),
        None => unreachable!("hidden value revealed at the wrong type"),
    }
}
