use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::engine::{run_suite, LinearQuantaloid, Quantaloid, Residuated, Sampler};
use super::laws::{linear_laws, tensor_laws};
use super::report::LawReport;
use crate::quantale::{LinearQuantale, Quantale};

/// A quantale seen as a one-object quantaloid whose hom is the sampled
/// domain (every element for finite carriers).
pub struct QuantaleView<'q, Q: Quantale> {
    q: &'q Q,
    domain: Vec<Q::Elem>,
}

impl<'q, Q: Quantale> QuantaleView<'q, Q> {
    pub fn new(q: &'q Q, window: i64) -> Self {
        QuantaleView {
            q,
            domain: q.domain(window),
        }
    }

    pub fn quantale(&self) -> &Q {
        self.q
    }
}

impl<Q: Quantale> Quantaloid for QuantaleView<'_, Q> {
    type Object = ();
    type Arrow = Q::Elem;

    fn objects(&self) -> Vec<()> {
        vec![()]
    }
    fn hom_size(&self, _: &(), _: &(), cap: usize) -> Option<usize> {
        Some(self.domain.len()).filter(|&n| n <= cap)
    }
    fn hom_nth(&self, _: &(), _: &(), i: usize) -> Q::Elem {
        self.domain[i]
    }
    fn random_arrow(&self, _: &(), _: &(), rng: &mut ChaCha8Rng, window: i64) -> Q::Elem {
        self.q.random_elem(rng, window)
    }
    fn leq(&self, f: &Q::Elem, g: &Q::Elem) -> bool {
        self.q.leq(*f, *g)
    }
    fn join(&self, f: &Q::Elem, g: &Q::Elem) -> Q::Elem {
        self.q.join(*f, *g)
    }
    fn meet(&self, f: &Q::Elem, g: &Q::Elem) -> Q::Elem {
        self.q.meet(*f, *g)
    }
    fn bottom(&self, _: &(), _: &()) -> Q::Elem {
        self.q.bottom()
    }
    fn top(&self, _: &(), _: &()) -> Q::Elem {
        self.q.top()
    }
    fn tensor(&self, f: &Q::Elem, g: &Q::Elem) -> Q::Elem {
        self.q.tensor(*f, *g)
    }
    fn unit(&self, _: &()) -> Q::Elem {
        self.q.unit()
    }
    fn encode_object(&self, _: &()) -> Value {
        Value::String("*".into())
    }
    fn encode_arrow(&self, f: &Q::Elem) -> Value {
        self.q.encode(*f)
    }
    fn shrink_arrow(&self, f: &Q::Elem) -> Vec<Q::Elem> {
        self.q.shrink_elem(*f)
    }
}

impl<Q: LinearQuantale> LinearQuantaloid for QuantaleView<'_, Q> {
    fn par(&self, f: &Q::Elem, g: &Q::Elem) -> Q::Elem {
        self.q.par(*f, *g)
    }
    fn par_unit(&self, _: &()) -> Q::Elem {
        self.q.par_unit()
    }
}

impl<Q: Quantale> Residuated for QuantaleView<'_, Q> {
    fn residual_right(&self, f: &Q::Elem, h: &Q::Elem) -> Q::Elem {
        self.q.residual_right(*f, *h)
    }
    fn residual_left(&self, h: &Q::Elem, f: &Q::Elem) -> Q::Elem {
        self.q.residual_left(*h, *f)
    }
}

/// Associativity, units and join preservation (binary and empty) of `⊗`.
pub fn check_quantale_laws<Q: Quantale>(q: &Q, sampler: &Sampler) -> LawReport {
    let view = QuantaleView::new(q, sampler.window);
    run_suite("quantale", &view, &tensor_laws(), sampler)
}

/// Both quantale structures (the par one against meets) and both linear
/// distributions.
pub fn check_ld_laws<Q: LinearQuantale>(q: &Q, sampler: &Sampler) -> LawReport {
    let view = QuantaleView::new(q, sampler.window);
    run_suite("ld-quantale", &view, &linear_laws(), sampler)
}
