use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Family, FiniteQuantaloid, Morphism, QuantaloidError};
use crate::verify::{Quantaloid, Residuated, DEFAULT_SLOT_CAP};

/// An endo-1-cell `m: a → a` with `⊤_a ≤ m` and `m ⊗ m ≤ m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monad<O = usize, A = Morphism> {
    pub object: O,
    pub m: A,
}

impl<O: Clone, A> Monad<O, A> {
    /// `(a, ⊤_a)`.
    pub fn trivial<B: Quantaloid<Object = O, Arrow = A>>(q: &B, a: &O) -> Self {
        Monad {
            object: a.clone(),
            m: q.unit(a),
        }
    }
}

/// A 1-cell `f: a → b` between monads `(a, m)` and `(b, n)` with
/// `m ⊗ f ≤ f` and `f ⊗ n ≤ f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonadBimodule<O = usize, A = Morphism> {
    pub source: Monad<O, A>,
    pub target: Monad<O, A>,
    pub f: A,
}

/// Every element of `hom(a, b)` when it has at most `DEFAULT_SLOT_CAP`
/// elements (the sampled domain for infinite carriers); otherwise none.
pub(crate) fn hom_list<B: Quantaloid>(q: &B, a: &B::Object, b: &B::Object) -> Vec<B::Arrow> {
    let n = q.hom_size(a, b, DEFAULT_SLOT_CAP).unwrap_or(0);
    (0..n).map(|i| q.hom_nth(a, b, i)).collect()
}

/// Each monad inequality with its registry label.
pub fn monad_conditions<B: Quantaloid>(q: &B, mo: &Monad<B::Object, B::Arrow>) -> Vec<(&'static str, bool)> {
    let m = &mo.m;
    vec![
        ("monad-unit", q.leq(&q.unit(&mo.object), m)),
        ("monad-mult", q.leq(&q.tensor(m, m), m)),
    ]
}

/// Checks that `m` is an endo-1-cell and a monad.
pub fn check_monad(q: &FiniteQuantaloid, m: Morphism) -> Result<bool, QuantaloidError> {
    if m.src != m.tgt {
        return Err(QuantaloidError::HomMismatch("a monad must be an endo-1-cell".into()));
    }
    Ok(monad_conditions(q, &Monad { object: m.src, m }).iter().all(|c| c.1))
}

/// Every monad on an enumerable endo-hom, grouped by object, trivial
/// monad first on each object.
pub fn all_monads<B: Quantaloid>(q: &B) -> Vec<Monad<B::Object, B::Arrow>> {
    let mut out = Vec::new();
    for a in q.objects() {
        let unit = q.unit(&a);
        let mut here: Vec<Monad<B::Object, B::Arrow>> = hom_list(q, &a, &a)
            .into_iter()
            .map(|m| Monad { object: a.clone(), m })
            .filter(|mo| monad_conditions(q, mo).iter().all(|c| c.1))
            .collect();
        if let Some(i) = here.iter().position(|mo| mo.m == unit) {
            let t = here.remove(i);
            here.insert(0, t);
        }
        out.extend(here);
    }
    out
}

pub fn monad_bimodule_conditions<B: Quantaloid>(
    q: &B,
    b: &MonadBimodule<B::Object, B::Arrow>,
) -> Vec<(&'static str, bool)> {
    vec![
        ("mbim-left", q.leq(&q.tensor(&b.source.m, &b.f), &b.f)),
        ("mbim-right", q.leq(&q.tensor(&b.f, &b.target.m), &b.f)),
    ]
}

/// Checks typing against the monads and the two action inequalities.
pub fn check_monad_bimodule(q: &FiniteQuantaloid, b: &MonadBimodule) -> Result<bool, QuantaloidError> {
    if b.f.src != b.source.object || b.f.tgt != b.target.object {
        return Err(QuantaloidError::HomMismatch("bimodule does not match its monads".into()));
    }
    Ok(monad_bimodule_conditions(q, b).iter().all(|c| c.1))
}

/// `f ⊗ g`, defined when `f` ends where `g` starts.
pub fn monq_compose<B>(
    q: &B,
    f: &MonadBimodule<B::Object, B::Arrow>,
    g: &MonadBimodule<B::Object, B::Arrow>,
) -> Result<MonadBimodule<B::Object, B::Arrow>, QuantaloidError>
where
    B: Quantaloid,
    B::Object: PartialEq,
{
    if f.target != g.source {
        return Err(QuantaloidError::HomMismatch("bimodules are not composable".into()));
    }
    Ok(MonadBimodule {
        source: f.source.clone(),
        target: g.target.clone(),
        f: q.tensor(&f.f, &g.f),
    })
}

/// The identity on `(a, m)` is `m` itself.
pub fn monq_identity<O: Clone, A: Clone>(monad: &Monad<O, A>) -> MonadBimodule<O, A> {
    MonadBimodule {
        source: monad.clone(),
        target: monad.clone(),
        f: monad.m.clone(),
    }
}

/// `δ_(a,m) = m ⊸ d_a` for every listed monad.
pub fn monq_girard_family<B: Residuated, F: Family<B::Object, B::Arrow> + ?Sized>(
    q: &B,
    family: &F,
    monads: &[Monad<B::Object, B::Arrow>],
) -> Vec<MonadBimodule<B::Object, B::Arrow>> {
    monads
        .iter()
        .map(|mo| MonadBimodule {
            source: mo.clone(),
            target: mo.clone(),
            f: q.residual_right(&mo.m, &family.at(&mo.object)),
        })
        .collect()
}

/// Mon Q restricted to a list of monads, with every bimodule between them
/// drawn from the enumerable part of each hom.
pub struct MonQView<'q, B: Quantaloid> {
    q: &'q B,
    monads: Vec<Monad<B::Object, B::Arrow>>,
    homs: Vec<Vec<B::Arrow>>,
}

impl<'q, B> MonQView<'q, B>
where
    B: Quantaloid,
    B::Object: PartialEq,
{
    /// Keeps monads in order, skipping any that would leave an empty hom,
    /// until `max_objects` are kept.
    pub fn new(q: &'q B, candidates: &[Monad<B::Object, B::Arrow>], max_objects: usize) -> Self {
        let homs_between = |s: &Monad<B::Object, B::Arrow>, t: &Monad<B::Object, B::Arrow>| -> Vec<B::Arrow> {
            hom_list(q, &s.object, &t.object)
                .into_iter()
                .filter(|f| {
                    let b = MonadBimodule {
                        source: s.clone(),
                        target: t.clone(),
                        f: f.clone(),
                    };
                    monad_bimodule_conditions(q, &b).iter().all(|c| c.1)
                })
                .collect()
        };
        let (monads, homs) = keep_nonempty(candidates, max_objects, homs_between);
        MonQView { q, monads, homs }
    }

    pub fn quantaloid(&self) -> &B {
        self.q
    }

    pub fn monads(&self) -> &[Monad<B::Object, B::Arrow>] {
        &self.monads
    }

    /// Every bimodule `s → t` in the view.
    pub fn bimodules(
        &self,
        s: &Monad<B::Object, B::Arrow>,
        t: &Monad<B::Object, B::Arrow>,
    ) -> Vec<MonadBimodule<B::Object, B::Arrow>> {
        self.hom(s, t).iter().map(|f| self.wrap(s, t, f.clone())).collect()
    }

    fn hom(&self, s: &Monad<B::Object, B::Arrow>, t: &Monad<B::Object, B::Arrow>) -> &[B::Arrow] {
        let k = self.monads.len();
        let pos = |m: &Monad<B::Object, B::Arrow>| self.monads.iter().position(|x| x == m).expect("monad in view");
        &self.homs[pos(s) * k + pos(t)]
    }

    fn wrap(
        &self,
        s: &Monad<B::Object, B::Arrow>,
        t: &Monad<B::Object, B::Arrow>,
        f: B::Arrow,
    ) -> MonadBimodule<B::Object, B::Arrow> {
        MonadBimodule {
            source: s.clone(),
            target: t.clone(),
            f,
        }
    }

    pub fn encode_monad(&self, m: &Monad<B::Object, B::Arrow>) -> Value {
        json!({"object": self.q.encode_object(&m.object), "m": self.q.encode_arrow(&m.m)})
    }
}

/// Greedy object selection shared by the monad views: a candidate is kept
/// when every hom between it and the kept objects is nonempty.
pub(crate) fn keep_nonempty<T: Clone, H>(
    candidates: &[T],
    max_objects: usize,
    homs_between: impl Fn(&T, &T) -> Vec<H>,
) -> (Vec<T>, Vec<Vec<H>>) {
    let mut kept: Vec<T> = Vec::new();
    let mut table: Vec<((usize, usize), Vec<H>)> = Vec::new();
    for cand in candidates {
        if kept.len() >= max_objects {
            break;
        }
        let j = kept.len();
        let mut fresh = Vec::new();
        let mut ok = true;
        for i in 0..=j {
            let other = if i == j { cand } else { &kept[i] };
            let pairs: &[(usize, usize)] = if i == j { &[(j, j)] } else { &[(i, j), (j, i)] };
            for &(s, t) in pairs {
                let (a, b) = if s == i { (other, cand) } else { (cand, other) };
                let hom = homs_between(a, b);
                if hom.is_empty() {
                    ok = false;
                    break;
                }
                fresh.push(((s, t), hom));
            }
            if !ok {
                break;
            }
        }
        if ok {
            kept.push(cand.clone());
            table.extend(fresh);
        }
    }
    let k = kept.len();
    let mut homs: Vec<Vec<H>> = (0..k * k).map(|_| Vec::new()).collect();
    for ((s, t), hom) in table {
        homs[s * k + t] = hom;
    }
    (kept, homs)
}

impl<B> Quantaloid for MonQView<'_, B>
where
    B: Quantaloid,
    B::Object: PartialEq,
{
    type Object = Monad<B::Object, B::Arrow>;
    type Arrow = MonadBimodule<B::Object, B::Arrow>;

    fn objects(&self) -> Vec<Self::Object> {
        self.monads.clone()
    }
    fn hom_size(&self, a: &Self::Object, b: &Self::Object, cap: usize) -> Option<usize> {
        Some(self.hom(a, b).len()).filter(|&n| n <= cap)
    }
    fn hom_nth(&self, a: &Self::Object, b: &Self::Object, i: usize) -> Self::Arrow {
        self.wrap(a, b, self.hom(a, b)[i].clone())
    }
    fn random_arrow(&self, a: &Self::Object, b: &Self::Object, rng: &mut ChaCha8Rng, _window: i64) -> Self::Arrow {
        let hom = self.hom(a, b);
        self.wrap(a, b, hom[rng.gen_range(0..hom.len())].clone())
    }
    fn leq(&self, f: &Self::Arrow, g: &Self::Arrow) -> bool {
        self.q.leq(&f.f, &g.f)
    }
    fn join(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        self.wrap(&f.source, &f.target, self.q.join(&f.f, &g.f))
    }
    fn meet(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        self.wrap(&f.source, &f.target, self.q.meet(&f.f, &g.f))
    }
    fn bottom(&self, a: &Self::Object, b: &Self::Object) -> Self::Arrow {
        self.wrap(a, b, self.q.bottom(&a.object, &b.object))
    }
    fn top(&self, a: &Self::Object, b: &Self::Object) -> Self::Arrow {
        self.wrap(a, b, self.q.top(&a.object, &b.object))
    }
    fn tensor(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        monq_compose(self.q, f, g).expect("composable")
    }
    fn unit(&self, a: &Self::Object) -> Self::Arrow {
        monq_identity(a)
    }
    fn encode_object(&self, a: &Self::Object) -> Value {
        self.encode_monad(a)
    }
    fn encode_arrow(&self, f: &Self::Arrow) -> Value {
        json!({
            "source": self.encode_monad(&f.source),
            "target": self.encode_monad(&f.target),
            "value": self.q.encode_arrow(&f.f),
        })
    }
    fn shrink_arrow(&self, f: &Self::Arrow) -> Vec<Self::Arrow> {
        let hom = self.hom(&f.source, &f.target);
        self.q
            .shrink_arrow(&f.f)
            .into_iter()
            .filter(|g| hom.contains(g))
            .map(|g| self.wrap(&f.source, &f.target, g))
            .collect()
    }
}

/// Residuals in Mon Q are computed in the base: `f ⊸ h` is already an
/// `(n, p)`-bimodule whenever `f` and `h` are bimodules.
impl<B> Residuated for MonQView<'_, B>
where
    B: Residuated,
    B::Object: PartialEq,
{
    fn residual_right(&self, f: &Self::Arrow, h: &Self::Arrow) -> Self::Arrow {
        self.wrap(&f.target, &h.target, self.q.residual_right(&f.f, &h.f))
    }
    fn residual_left(&self, h: &Self::Arrow, f: &Self::Arrow) -> Self::Arrow {
        self.wrap(&h.source, &f.source, self.q.residual_left(&h.f, &f.f))
    }
}
