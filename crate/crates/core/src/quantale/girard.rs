use rand::Rng;
use serde_json::Value;

use super::{Carrier, LinearQuantale, Quantale, QuantaleError, DEFAULT_WINDOW};

/// True iff `d ⟜ a = a ⊸ d` and `(a ⊸ d) ⊸ d = a` for every `a` in the
/// sampled domain (all elements for finite carriers).
pub fn is_cyclic_dualizing<Q: Quantale>(q: &Q, d: Q::Elem, window: i64) -> bool {
    q.domain(window).into_iter().all(|a| {
        let neg = q.residual_right(a, d);
        q.residual_left(d, a) == neg && q.residual_right(neg, d) == a
    })
}

/// Every element of the sampled domain that is a cyclic dualizing element.
pub fn find_dualizers<Q: Quantale>(q: &Q, window: i64) -> Vec<Q::Elem> {
    q.domain(window)
        .into_iter()
        .filter(|&d| is_cyclic_dualizing(q, d, window))
        .collect()
}

/// A quantale with a chosen cyclic dualizing element `⊥`.
///
/// Negation is `a^⊥ = a ⊸ ⊥` and the derived par is `a ⊕ b = (b^⊥ ⊗ a^⊥)^⊥`,
/// which makes every Girard quantale a [`LinearQuantale`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirardQuantale<Q: Quantale> {
    base: Q,
    dualizer: Q::Elem,
}

impl<Q: Quantale> GirardQuantale<Q> {
    pub fn new(base: Q, dualizer: Q::Elem) -> Result<Self, QuantaleError> {
        if !is_cyclic_dualizing(&base, dualizer, DEFAULT_WINDOW) {
            return Err(QuantaleError::NotDualizing(base.render(dualizer)));
        }
        Ok(GirardQuantale { base, dualizer })
    }

    pub fn base(&self) -> &Q {
        &self.base
    }

    pub fn dualizer(&self) -> Q::Elem {
        self.dualizer
    }

    pub fn neg(&self, a: Q::Elem) -> Q::Elem {
        self.base.residual_right(a, self.dualizer)
    }

    pub fn girard_par(&self, a: Q::Elem, b: Q::Elem) -> Q::Elem {
        self.neg(self.base.tensor(self.neg(b), self.neg(a)))
    }
}

impl<Q: Quantale> Carrier for GirardQuantale<Q> {
    type Elem = Q::Elem;
    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool {
        self.base.leq(a, b)
    }
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.base.join(a, b)
    }
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.base.meet(a, b)
    }
    fn bottom(&self) -> Self::Elem {
        self.base.bottom()
    }
    fn top(&self) -> Self::Elem {
        self.base.top()
    }
    fn is_finite(&self) -> bool {
        self.base.is_finite()
    }
    fn domain(&self, window: i64) -> Vec<Self::Elem> {
        self.base.domain(window)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, window: i64) -> Self::Elem {
        self.base.random_elem(rng, window)
    }
    fn shrink_elem(&self, a: Self::Elem) -> Vec<Self::Elem> {
        self.base.shrink_elem(a)
    }
    fn render(&self, a: Self::Elem) -> String {
        self.base.render(a)
    }
    fn encode(&self, a: Self::Elem) -> Value {
        self.base.encode(a)
    }
    fn decode(&self, v: &Value) -> Result<Self::Elem, QuantaleError> {
        self.base.decode(v)
    }
}

impl<Q: Quantale> Quantale for GirardQuantale<Q> {
    fn tensor(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.base.tensor(a, b)
    }
    fn unit(&self) -> Self::Elem {
        self.base.unit()
    }
    fn residual_right(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.base.residual_right(a, b)
    }
    fn residual_left(&self, b: Self::Elem, a: Self::Elem) -> Self::Elem {
        self.base.residual_left(b, a)
    }
}

impl<Q: Quantale> LinearQuantale for GirardQuantale<Q> {
    fn par(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.girard_par(a, b)
    }
    fn par_unit(&self) -> Self::Elem {
        self.dualizer
    }
}
