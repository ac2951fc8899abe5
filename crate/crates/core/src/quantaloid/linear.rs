use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::monad::{hom_list, keep_nonempty};
use super::{FiniteQuantaloid, Morphism, QuantaloidError};
use crate::verify::{LinearQuantaloid, Quantaloid, Residuated};

/// An endo-object with a tensor monad `t` and a par comonad `p`, tied by four
/// mixed inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMonad<O = usize, A = Morphism> {
    pub object: O,
    pub t: A,
    pub p: A,
}

impl<O: Clone, A> LinearMonad<O, A> {
    /// `(a, ⊤_a, ⊥_a)`.
    pub fn trivial<B: LinearQuantaloid<Object = O, Arrow = A>>(q: &B, a: &O) -> Self {
        LinearMonad {
            object: a.clone(),
            t: q.unit(a),
            p: q.par_unit(a),
        }
    }
}

/// `t: a → b` and `p: b → a` between linear monads on `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearBimodule<O = usize, A = Morphism> {
    pub source: LinearMonad<O, A>,
    pub target: LinearMonad<O, A>,
    pub t: A,
    pub p: A,
}

type Lm<B> = LinearMonad<<B as Quantaloid>::Object, <B as Quantaloid>::Arrow>;
type Lb<B> = LinearBimodule<<B as Quantaloid>::Object, <B as Quantaloid>::Arrow>;

fn require_par(q: &FiniteQuantaloid) -> Result<(), QuantaloidError> {
    if q.has_par() {
        Ok(())
    } else {
        Err(QuantaloidError::NoParLayer)
    }
}

/// Each linear monad inequality with its registry label.
pub fn linear_monad_conditions<B: LinearQuantaloid>(q: &B, m: &Lm<B>) -> Vec<(&'static str, bool)> {
    let (t, p, a) = (&m.t, &m.p, &m.object);
    vec![
        ("lmonad-tensor-unit", q.leq(&q.unit(a), t)),
        ("lmonad-tensor-mult", q.leq(&q.tensor(t, t), t)),
        ("lmonad-par-counit", q.leq(p, &q.par_unit(a))),
        ("lmonad-par-comult", q.leq(p, &q.par(p, p))),
        ("lmonad-mixed-1", q.leq(t, &q.par(p, t))),
        ("lmonad-mixed-2", q.leq(t, &q.par(t, p))),
        ("lmonad-mixed-3", q.leq(&q.tensor(t, p), p)),
        ("lmonad-mixed-4", q.leq(&q.tensor(p, t), p)),
    ]
}

/// Checks the par layer, endo-typing and every linear monad inequality.
pub fn check_linear_monad(q: &FiniteQuantaloid, m: &LinearMonad) -> Result<bool, QuantaloidError> {
    require_par(q)?;
    let a = m.object;
    if (m.t.src, m.t.tgt, m.p.src, m.p.tgt) != (a, a, a, a) {
        return Err(QuantaloidError::HomMismatch("linear monad components must be endo-1-cells".into()));
    }
    Ok(linear_monad_conditions(q, m).iter().all(|c| c.1))
}

/// Every linear monad on an enumerable endo-hom, grouped by object, trivial
/// monad first on each object.
pub fn all_linear_monads<B: LinearQuantaloid>(q: &B) -> Vec<Lm<B>> {
    let mut out = Vec::new();
    for a in q.objects() {
        let trivial = LinearMonad::trivial(q, &a);
        let hom = hom_list(q, &a, &a);
        let mut here: Vec<Lm<B>> = Vec::new();
        for t in &hom {
            for p in &hom {
                let m = LinearMonad {
                    object: a.clone(),
                    t: t.clone(),
                    p: p.clone(),
                };
                if linear_monad_conditions(q, &m).iter().all(|c| c.1) {
                    here.push(m);
                }
            }
        }
        if let Some(i) = here.iter().position(|m| m.t == trivial.t && m.p == trivial.p) {
            let t = here.remove(i);
            here.insert(0, t);
        }
        out.extend(here);
    }
    out
}

pub fn linear_monad_bimodule_conditions<B: LinearQuantaloid>(q: &B, f: &Lb<B>) -> Vec<(&'static str, bool)> {
    let (m, n) = (&f.source, &f.target);
    vec![
        ("lmbim-tensor-1", q.leq(&q.tensor(&f.t, &n.t), &f.t)),
        ("lmbim-tensor-2", q.leq(&q.tensor(&m.t, &f.t), &f.t)),
        ("lmbim-tensor-3", q.leq(&f.t, &q.par(&m.p, &f.t))),
        ("lmbim-tensor-4", q.leq(&f.t, &q.par(&f.t, &n.p))),
        ("lmbim-par-1", q.leq(&f.p, &q.par(&n.p, &f.p))),
        ("lmbim-par-2", q.leq(&f.p, &q.par(&f.p, &m.p))),
        ("lmbim-par-3", q.leq(&q.tensor(&n.t, &f.p), &f.p)),
        ("lmbim-par-4", q.leq(&q.tensor(&f.p, &m.t), &f.p)),
    ]
}

pub fn check_linear_monad_bimodule(q: &FiniteQuantaloid, f: &LinearBimodule) -> Result<bool, QuantaloidError> {
    require_par(q)?;
    let (a, b) = (f.source.object, f.target.object);
    if (f.t.src, f.t.tgt, f.p.src, f.p.tgt) != (a, b, b, a) {
        return Err(QuantaloidError::HomMismatch("bimodule components do not match their monads".into()));
    }
    Ok(linear_monad_bimodule_conditions(q, f).iter().all(|c| c.1))
}

fn composable<O: PartialEq, A: PartialEq>(
    f: &LinearBimodule<O, A>,
    g: &LinearBimodule<O, A>,
) -> Result<(), QuantaloidError> {
    if f.target == g.source {
        Ok(())
    } else {
        Err(QuantaloidError::HomMismatch("bimodules are not composable".into()))
    }
}

/// `(f_⊗ ⊗ g_⊗, g_⊕ ⊕ f_⊕)`; the par part runs backwards, so `g` comes first.
pub fn linear_monq_compose_tensor<B>(q: &B, f: &Lb<B>, g: &Lb<B>) -> Result<Lb<B>, QuantaloidError>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    composable(f, g)?;
    Ok(LinearBimodule {
        source: f.source.clone(),
        target: g.target.clone(),
        t: q.tensor(&f.t, &g.t),
        p: q.par(&g.p, &f.p),
    })
}

/// `(f_⊗ ⊕ g_⊗, g_⊕ ⊗ f_⊕)`.
pub fn linear_monq_compose_par<B>(q: &B, f: &Lb<B>, g: &Lb<B>) -> Result<Lb<B>, QuantaloidError>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    composable(f, g)?;
    Ok(LinearBimodule {
        source: f.source.clone(),
        target: g.target.clone(),
        t: q.par(&f.t, &g.t),
        p: q.tensor(&g.p, &f.p),
    })
}

/// The tensor identity `(m_⊗, m_⊕)` and the par identity `(m_⊕, m_⊗)`.
pub fn linear_monq_identities<O: Clone, A: Clone>(
    m: &LinearMonad<O, A>,
) -> (LinearBimodule<O, A>, LinearBimodule<O, A>) {
    let top = LinearBimodule {
        source: m.clone(),
        target: m.clone(),
        t: m.t.clone(),
        p: m.p.clone(),
    };
    let bot = LinearBimodule {
        source: m.clone(),
        target: m.clone(),
        t: m.p.clone(),
        p: m.t.clone(),
    };
    (top, bot)
}

/// `(f, f ⊸ ⊤_a)` between the trivial linear monads on `a` and `b`, for
/// `f: a → b`.
pub fn transfer_bimodule<B>(q: &B, a: &B::Object, b: &B::Object, f: &B::Arrow) -> Lb<B>
where
    B: LinearQuantaloid + Residuated,
{
    LinearBimodule {
        source: LinearMonad::trivial(q, a),
        target: LinearMonad::trivial(q, b),
        t: f.clone(),
        p: q.residual_right(f, &q.unit(a)),
    }
}

/// Linear Mon Q restricted to a list of linear monads. Arrows are compared in
/// the mixed order: tensor parts covariantly, par parts contravariantly.
pub struct LinearMonQView<'q, B: LinearQuantaloid> {
    q: &'q B,
    monads: Vec<Lm<B>>,
    homs: Vec<Vec<(B::Arrow, B::Arrow)>>,
}

impl<'q, B> LinearMonQView<'q, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    /// Takes monads in the given order, skipping any that would leave an
    /// empty hom, until `max_objects` are kept.
    pub fn new(q: &'q B, candidates: &[Lm<B>], max_objects: usize) -> Self {
        let (monads, homs) = keep_nonempty(candidates, max_objects, |s, t| bimodule_pairs(q, s, t));
        LinearMonQView { q, monads, homs }
    }

    pub fn quantaloid(&self) -> &B {
        self.q
    }

    pub fn monads(&self) -> &[Lm<B>] {
        &self.monads
    }

    fn hom(&self, s: &Lm<B>, t: &Lm<B>) -> &[(B::Arrow, B::Arrow)] {
        let k = self.monads.len();
        let pos = |m: &Lm<B>| self.monads.iter().position(|x| x == m).expect("monad in view");
        &self.homs[pos(s) * k + pos(t)]
    }

    fn wrap(&self, s: &Lm<B>, t: &Lm<B>, (ft, fp): (B::Arrow, B::Arrow)) -> Lb<B> {
        LinearBimodule {
            source: s.clone(),
            target: t.clone(),
            t: ft,
            p: fp,
        }
    }

    pub fn encode_monad(&self, m: &Lm<B>) -> Value {
        json!({
            "object": self.q.encode_object(&m.object),
            "tensor": self.q.encode_arrow(&m.t),
            "par": self.q.encode_arrow(&m.p),
        })
    }
}

fn bimodule_pairs<B: LinearQuantaloid>(q: &B, s: &Lm<B>, t: &Lm<B>) -> Vec<(B::Arrow, B::Arrow)> {
    let forward = hom_list(q, &s.object, &t.object);
    let backward = hom_list(q, &t.object, &s.object);
    let mut out = Vec::new();
    for ft in &forward {
        for fp in &backward {
            let f = LinearBimodule {
                source: s.clone(),
                target: t.clone(),
                t: ft.clone(),
                p: fp.clone(),
            };
            if linear_monad_bimodule_conditions(q, &f).iter().all(|c| c.1) {
                out.push((f.t, f.p));
            }
        }
    }
    out
}

impl<B> Quantaloid for LinearMonQView<'_, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    type Object = Lm<B>;
    type Arrow = Lb<B>;

    fn objects(&self) -> Vec<Lm<B>> {
        self.monads.clone()
    }
    fn hom_size(&self, a: &Lm<B>, b: &Lm<B>, cap: usize) -> Option<usize> {
        Some(self.hom(a, b).len()).filter(|&n| n <= cap)
    }
    fn hom_nth(&self, a: &Lm<B>, b: &Lm<B>, i: usize) -> Lb<B> {
        self.wrap(a, b, self.hom(a, b)[i].clone())
    }
    fn random_arrow(&self, a: &Lm<B>, b: &Lm<B>, rng: &mut ChaCha8Rng, _window: i64) -> Lb<B> {
        let hom = self.hom(a, b);
        self.wrap(a, b, hom[rng.gen_range(0..hom.len())].clone())
    }
    fn leq(&self, f: &Lb<B>, g: &Lb<B>) -> bool {
        self.q.leq(&f.t, &g.t) && self.q.leq(&g.p, &f.p)
    }
    fn join(&self, f: &Lb<B>, g: &Lb<B>) -> Lb<B> {
        self.wrap(&f.source, &f.target, (self.q.join(&f.t, &g.t), self.q.meet(&f.p, &g.p)))
    }
    fn meet(&self, f: &Lb<B>, g: &Lb<B>) -> Lb<B> {
        self.wrap(&f.source, &f.target, (self.q.meet(&f.t, &g.t), self.q.join(&f.p, &g.p)))
    }
    fn bottom(&self, a: &Lm<B>, b: &Lm<B>) -> Lb<B> {
        let (x, y) = (&a.object, &b.object);
        self.wrap(a, b, (self.q.bottom(x, y), self.q.top(y, x)))
    }
    fn top(&self, a: &Lm<B>, b: &Lm<B>) -> Lb<B> {
        let (x, y) = (&a.object, &b.object);
        self.wrap(a, b, (self.q.top(x, y), self.q.bottom(y, x)))
    }
    fn tensor(&self, f: &Lb<B>, g: &Lb<B>) -> Lb<B> {
        linear_monq_compose_tensor(self.q, f, g).expect("composable")
    }
    fn unit(&self, a: &Lm<B>) -> Lb<B> {
        linear_monq_identities(a).0
    }
    fn encode_object(&self, a: &Lm<B>) -> Value {
        self.encode_monad(a)
    }
    fn encode_arrow(&self, f: &Lb<B>) -> Value {
        json!({
            "source": self.encode_monad(&f.source),
            "target": self.encode_monad(&f.target),
            "tensor": self.q.encode_arrow(&f.t),
            "par": self.q.encode_arrow(&f.p),
        })
    }
    /// Lowers the tensor part through the base shrinker, or replaces the
    /// pair by any strictly smaller pair of the hom in the mixed order.
    fn shrink_arrow(&self, f: &Lb<B>) -> Vec<Lb<B>> {
        let hom = self.hom(&f.source, &f.target);
        let lowered = self
            .q
            .shrink_arrow(&f.t)
            .into_iter()
            .map(|t| (t, f.p.clone()))
            .filter(|pair| hom.contains(pair));
        let smaller = hom.iter().cloned().filter(|(t, p)| {
            self.q.leq(t, &f.t) && self.q.leq(&f.p, p) && (*t != f.t || *p != f.p)
        });
        let mut out: Vec<(B::Arrow, B::Arrow)> = Vec::new();
        for pair in lowered.chain(smaller) {
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
        out.into_iter().map(|pair| self.wrap(&f.source, &f.target, pair)).collect()
    }
}

impl<B> LinearQuantaloid for LinearMonQView<'_, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    fn par(&self, f: &Lb<B>, g: &Lb<B>) -> Lb<B> {
        linear_monq_compose_par(self.q, f, g).expect("composable")
    }
    fn par_unit(&self, a: &Lm<B>) -> Lb<B> {
        linear_monq_identities(a).1
    }
}
