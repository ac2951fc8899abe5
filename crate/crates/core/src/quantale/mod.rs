//! Quantales: lattices with an associative, join-preserving multiplication.
//!
//! Two backends implement the traits here: [`TableQuantale`] (a finite lattice
//! with an explicit multiplication table) and [`ZInfQuantale`] (the extended
//! integers with saturating addition). [`GirardQuantale`] adds a dualizing
//! element, and [`LinearQuantale`] is a quantale with a second, par-like
//! multiplication on the opposite order.

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use serde_json::Value;
use thiserror::Error;

use crate::lattice::LatticeError;

mod girard;
mod ld;
mod shift;
mod table;
mod zinf;

pub use girard::{find_dualizers, is_cyclic_dualizing, GirardQuantale};
pub use ld::{TableLd, ZInfLd};
pub use shift::{shift_completion, MonoidTable};
pub use table::TableQuantale;
pub use zinf::{Flavor, ZInf, ZInfQuantale, FINITE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("`{0}` is not a cyclic dualizing element")]
    NotDualizing(String),
    #[error("monoid is not commutative: {0}")]
    NotCommutative(String),
    #[error("monoid is not associative: {0}")]
    NotAssociative(String),
    #[error("monoid has no unit")]
    NoUnit,
    #[error("monoid is not cancellative: {0}")]
    NotCancellative(String),
    #[error("shift `{0}` is not invertible")]
    ShiftNotInvertible(String),
    #[error("integer {0} is outside the supported range")]
    OutOfRange(i64),
}

/// Default integer window used when sampling the extended integers.
pub const DEFAULT_WINDOW: i64 = 10;

/// The complete-lattice substrate of a quantale, together with the element
/// codec and sampling hooks the law harness needs.
pub trait Carrier: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;

    fn join_all<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    fn meet_all<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Whether [`Carrier::domain`] enumerates the whole carrier.
    fn is_finite(&self) -> bool;

    /// Every element for finite carriers; the integers in `[-window, window]`
    /// plus both infinities otherwise. Declaration order.
    fn domain(&self, window: i64) -> Vec<Self::Elem>;

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, window: i64) -> Self::Elem;

    /// Candidates strictly below `a` used to shrink counterexamples.
    fn shrink_elem(&self, a: Self::Elem) -> Vec<Self::Elem>;

    fn render(&self, a: Self::Elem) -> String;
    fn encode(&self, a: Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem, QuantaleError>;
}

/// A quantale: `tensor` is associative with two-sided unit and preserves
/// joins in each argument. Implementations are not required to be lawful;
/// the law checks report violations.
pub trait Quantale: Carrier {
    fn tensor(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn unit(&self) -> Self::Elem;

    /// `a ⊸ b`: the join of every `c` with `a ⊗ c ≤ b`.
    fn residual_right(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        assert!(self.is_finite(), "scan residual needs a finite carrier");
        self.join_all(
            self.domain(0)
                .into_iter()
                .filter(|&c| self.leq(self.tensor(a, c), b)),
        )
    }

    /// `b ⟜ a`: the join of every `c` with `c ⊗ a ≤ b`.
    fn residual_left(&self, b: Self::Elem, a: Self::Elem) -> Self::Elem {
        assert!(self.is_finite(), "scan residual needs a finite carrier");
        self.join_all(
            self.domain(0)
                .into_iter()
                .filter(|&c| self.leq(self.tensor(c, a), b)),
        )
    }
}

/// A quantale with a second multiplication `par` whose unit is `par_unit`,
/// intended to be a quantale on the opposite order and linked to `tensor` by
/// the two linear distributions.
pub trait LinearQuantale: Quantale {
    fn par(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn par_unit(&self) -> Self::Elem;
}

impl<T: Carrier + ?Sized> Carrier for &T {
    type Elem = T::Elem;
    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool {
        (**self).leq(a, b)
    }
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        (**self).join(a, b)
    }
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        (**self).meet(a, b)
    }
    fn bottom(&self) -> Self::Elem {
        (**self).bottom()
    }
    fn top(&self) -> Self::Elem {
        (**self).top()
    }
    fn is_finite(&self) -> bool {
        (**self).is_finite()
    }
    fn domain(&self, window: i64) -> Vec<Self::Elem> {
        (**self).domain(window)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, window: i64) -> Self::Elem {
        (**self).random_elem(rng, window)
    }
    fn shrink_elem(&self, a: Self::Elem) -> Vec<Self::Elem> {
        (**self).shrink_elem(a)
    }
    fn render(&self, a: Self::Elem) -> String {
        (**self).render(a)
    }
    fn encode(&self, a: Self::Elem) -> Value {
        (**self).encode(a)
    }
    fn decode(&self, v: &Value) -> Result<Self::Elem, QuantaleError> {
        (**self).decode(v)
    }
}

impl<T: Quantale + ?Sized> Quantale for &T {
    fn tensor(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        (**self).tensor(a, b)
    }
    fn unit(&self) -> Self::Elem {
        (**self).unit()
    }
    fn residual_right(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        (**self).residual_right(a, b)
    }
    fn residual_left(&self, b: Self::Elem, a: Self::Elem) -> Self::Elem {
        (**self).residual_left(b, a)
    }
}

impl<T: LinearQuantale + ?Sized> LinearQuantale for &T {
    fn par(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        (**self).par(a, b)
    }
    fn par_unit(&self) -> Self::Elem {
        (**self).par_unit()
    }
}

#[cfg(test)]
mod tests;
