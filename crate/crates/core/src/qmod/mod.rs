//! Q-categories and Q-bimodules over a finite quantaloid, their linear
//! variants, the two compositions of Q-Mod, the dualizing bimodules and
//! linear adjoints.

use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::qrel::{FiniteSet, QRelError};
use crate::quantaloid::{is_girard_family, Family, FiniteQuantaloid, Morphism, QuantaloidError};
use crate::verify::{Entry, LawReport, LinearQuantaloid, Quantaloid, Residuated};

mod view;

pub use view::{
    all_bimodules, all_linear_bimodules, all_linear_qcategories, all_qcategories, check_girard_qmod, check_girard_qmod_with,
    verify_linear_qmod_laws, LinearQModView, QModView, DEFAULT_ENUM_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QModError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary mismatch: {0}")]
    Mismatch(String),
    #[error("missing par data: {0}")]
    NoParData(String),
    #[error("the family is not cyclic and dualizing on the base")]
    NotGirard,
    #[error("enumeration of {0} candidates exceeds the cap of {1}")]
    TooLarge(u128, usize),
    #[error(transparent)]
    Quantaloid(#[from] QuantaloidError),
    #[error(transparent)]
    Set(#[from] QRelError),
}

type Cat<B> = QCategory<<B as Quantaloid>::Object, <B as Quantaloid>::Arrow>;
type Bim<B> = QBimodule<<B as Quantaloid>::Object, <B as Quantaloid>::Arrow>;

/// A finite set `X` with `ρ: X → objects` and `M(x, x'): ρx → ρx'`,
/// optionally with a par enrichment of the same typing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QCategory<O = usize, A = Morphism> {
    carrier: Arc<FiniteSet>,
    rho: Vec<O>,
    tensor: Vec<A>,
    par: Option<Vec<A>>,
}

fn check_typed(q: &FiniteQuantaloid, f: Morphism, src: usize, tgt: usize, what: &str) -> Result<(), QModError> {
    if f.src != src || f.tgt != tgt || f.idx >= q.hom(src, tgt).len() {
        return Err(QModError::Shape(format!("{what} does not live in hom({}, {})", q.objects()[src], q.objects()[tgt])));
    }
    Ok(())
}

fn join_all<B: Quantaloid>(q: &B, a: &B::Object, b: &B::Object, items: impl Iterator<Item = B::Arrow>) -> B::Arrow {
    items.fold(q.bottom(a, b), |acc, f| q.join(&acc, &f))
}

fn meet_all<B: Quantaloid>(q: &B, a: &B::Object, b: &B::Object, items: impl Iterator<Item = B::Arrow>) -> B::Arrow {
    items.fold(q.top(a, b), |acc, f| q.meet(&acc, &f))
}

fn object_label<B: Quantaloid>(q: &B, a: &B::Object) -> String {
    match q.encode_object(a) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

impl QCategory {
    /// Checks typing only; the enrichment laws are checked by
    /// [`validate_qcategory`].
    pub fn new(
        q: &FiniteQuantaloid,
        carrier: Arc<FiniteSet>,
        rho: Vec<usize>,
        tensor: Vec<Morphism>,
        par: Option<Vec<Morphism>>,
    ) -> Result<Self, QModError> {
        if rho.iter().any(|&a| a >= q.len()) {
            return Err(QModError::Shape("ρ must send every member to an object".into()));
        }
        let m = QCategory::from_parts(carrier, rho, tensor, par)?;
        let n = m.len();
        for (what, entries) in std::iter::once(("tensor enrichment", &m.tensor)).chain(m.par.iter().map(|p| ("par enrichment", p))) {
            for x in 0..n {
                for y in 0..n {
                    check_typed(q, entries[x * n + y], m.rho[x], m.rho[y], what)?;
                }
            }
        }
        Ok(m)
    }
}

impl<O: Clone, A: Clone> QCategory<O, A> {
    /// Checks sizes only. Entries are trusted to live in the right homs.
    pub fn from_parts(carrier: Arc<FiniteSet>, rho: Vec<O>, tensor: Vec<A>, par: Option<Vec<A>>) -> Result<Self, QModError> {
        let n = carrier.len();
        if rho.len() != n {
            return Err(QModError::Shape("ρ must send every member to an object".into()));
        }
        for (what, entries) in std::iter::once(("tensor enrichment", &tensor)).chain(par.iter().map(|p| ("par enrichment", p))) {
            if entries.len() != n * n {
                return Err(QModError::Shape(format!("{what} needs {} entries", n * n)));
            }
        }
        Ok(QCategory {
            carrier,
            rho,
            tensor,
            par,
        })
    }

    /// `⊤` on the diagonal and bottom elsewhere.
    pub fn discrete<B: Quantaloid<Object = O, Arrow = A>>(q: &B, carrier: Arc<FiniteSet>, rho: Vec<O>) -> Result<Self, QModError> {
        let n = carrier.len();
        if rho.len() != n {
            return Err(QModError::Shape("ρ must send every member to an object".into()));
        }
        let tensor = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                if x == y {
                    q.unit(&rho[x])
                } else {
                    q.bottom(&rho[x], &rho[y])
                }
            })
            .collect();
        Self::from_parts(carrier, rho, tensor, None)
    }

    /// The one-member category on object `a` with `M(x, x) = m`.
    pub fn singleton<B: Quantaloid<Object = O, Arrow = A>>(q: &B, a: &O, m: A, par: Option<A>) -> Result<Self, QModError> {
        let label = object_label(q, a);
        let carrier = Arc::new(FiniteSet::new(&format!("M_{label}"), &[format!("x_{label}")])?);
        Self::from_parts(carrier, vec![a.clone()], vec![m], par.map(|p| vec![p]))
    }

    /// The same tensor enrichment with par part `M_⊕(x, x') = M_⊗(x', x)^⊥`.
    pub fn with_girard_par<B, F>(&self, q: &B, family: &F) -> Self
    where
        B: Residuated<Object = O, Arrow = A>,
        F: Family<O, A> + ?Sized,
    {
        let n = self.len();
        let par = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                perp(q, &family.at(&self.rho[y]), &self.get(y, x))
            })
            .collect();
        QCategory {
            par: Some(par),
            ..self.clone()
        }
    }

    /// Drops the par enrichment.
    pub fn plain(&self) -> Self {
        QCategory {
            par: None,
            ..self.clone()
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteSet> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn rho(&self, x: usize) -> O {
        self.rho[x].clone()
    }

    pub fn rhos(&self) -> &[O] {
        &self.rho
    }

    /// `M_⊗(x, x')`.
    pub fn get(&self, x: usize, y: usize) -> A {
        self.tensor[x * self.len() + y].clone()
    }

    /// `M_⊕(x, x')`, if present.
    pub fn get_par(&self, x: usize, y: usize) -> Option<A> {
        self.par.as_ref().map(|p| p[x * self.len() + y].clone())
    }

    pub fn is_linear(&self) -> bool {
        self.par.is_some()
    }

    pub fn tensor_entries(&self) -> &[A] {
        &self.tensor
    }

    pub fn par_entries(&self) -> Option<&[A]> {
        self.par.as_deref()
    }

    fn par_at(&self, x: usize, y: usize) -> A {
        self.get_par(x, y).expect("linear category")
    }

    pub fn encode<B: Quantaloid<Object = O, Arrow = A>>(&self, q: &B) -> Value {
        let n = self.len();
        let grid = |entries: &[A]| -> Value {
            (0..n)
                .map(|x| (0..n).map(|y| arrow_label(q, &entries[x * n + y])).collect::<Vec<_>>())
                .collect()
        };
        let mut out = json!({
            "carrier": {"name": self.carrier.name(), "members": self.carrier.members()},
            "rho": self.rho.iter().map(|a| q.encode_object(a)).collect::<Vec<_>>(),
            "tensor": grid(&self.tensor),
        });
        if let Some(p) = &self.par {
            out["par"] = grid(p);
        }
        out
    }
}

/// The element of an encoded arrow: its `value` field when the base tags
/// arrows with their hom, otherwise the whole encoding.
fn arrow_label<B: Quantaloid>(q: &B, f: &B::Arrow) -> Value {
    match q.encode_arrow(f) {
        Value::Object(mut m) if m.contains_key("value") => m.remove("value").expect("checked"),
        other => other,
    }
}

/// `Θ_⊗(x, y): ρx → ρy` indexed `(x, y)` and, for linear bimodules,
/// `Θ_⊕(y, x): ρy → ρx` indexed `(y, x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QBimodule<O = usize, A = Morphism> {
    source: Arc<QCategory<O, A>>,
    target: Arc<QCategory<O, A>>,
    tensor: Vec<A>,
    par: Option<Vec<A>>,
}

impl QBimodule {
    /// Checks typing only; the action laws are checked by
    /// [`validate_qbimodule`].
    pub fn new(
        q: &FiniteQuantaloid,
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        tensor: Vec<Morphism>,
        par: Option<Vec<Morphism>>,
    ) -> Result<Self, QModError> {
        let b = QBimodule::from_parts(source, target, tensor, par)?;
        let (nx, ny) = (b.source.len(), b.target.len());
        for x in 0..nx {
            for y in 0..ny {
                check_typed(q, b.get(x, y), b.source.rho(x), b.target.rho(y), "tensor part")?;
            }
        }
        if b.par.is_some() {
            for y in 0..ny {
                for x in 0..nx {
                    check_typed(q, b.par_at(y, x), b.target.rho(y), b.source.rho(x), "par part")?;
                }
            }
        }
        Ok(b)
    }
}

impl<O: Clone, A: Clone> QBimodule<O, A> {
    /// Checks sizes and that par data meets linear categories.
    pub fn from_parts(
        source: Arc<QCategory<O, A>>,
        target: Arc<QCategory<O, A>>,
        tensor: Vec<A>,
        par: Option<Vec<A>>,
    ) -> Result<Self, QModError> {
        let (nx, ny) = (source.len(), target.len());
        if tensor.len() != nx * ny {
            return Err(QModError::Shape(format!("tensor part needs {} entries", nx * ny)));
        }
        if let Some(p) = &par {
            if !source.is_linear() || !target.is_linear() {
                return Err(QModError::NoParData("a linear bimodule needs linear categories".into()));
            }
            if p.len() != nx * ny {
                return Err(QModError::Shape(format!("par part needs {} entries", nx * ny)));
            }
        }
        Ok(QBimodule::raw(source, target, tensor, par))
    }

    pub(crate) fn raw(
        source: Arc<QCategory<O, A>>,
        target: Arc<QCategory<O, A>>,
        tensor: Vec<A>,
        par: Option<Vec<A>>,
    ) -> Self {
        QBimodule {
            source,
            target,
            tensor,
            par,
        }
    }

    /// The same tensor part with par part `Θ_⊕(y, x) = Θ_⊗(x, y)^⊥`.
    pub fn with_girard_par<B, F>(&self, q: &B, family: &F) -> Result<Self, QModError>
    where
        B: Residuated<Object = O, Arrow = A>,
        F: Family<O, A> + ?Sized,
    {
        if !self.source.is_linear() || !self.target.is_linear() {
            return Err(QModError::NoParData("a linear bimodule needs linear categories".into()));
        }
        let (nx, ny) = (self.source.len(), self.target.len());
        let par = (0..ny * nx)
            .map(|i| {
                let x = i % nx;
                perp(q, &family.at(&self.source.rho[x]), &self.get(x, i / nx))
            })
            .collect();
        Ok(QBimodule {
            par: Some(par),
            ..self.clone()
        })
    }

    pub fn source(&self) -> &Arc<QCategory<O, A>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory<O, A>> {
        &self.target
    }

    /// `Θ_⊗(x, y)`.
    pub fn get(&self, x: usize, y: usize) -> A {
        self.tensor[x * self.target.len() + y].clone()
    }

    /// `Θ_⊕(y, x)`, if present.
    pub fn get_par(&self, y: usize, x: usize) -> Option<A> {
        self.par.as_ref().map(|p| p[y * self.source.len() + x].clone())
    }

    pub fn is_linear(&self) -> bool {
        self.par.is_some()
    }

    pub fn tensor_entries(&self) -> &[A] {
        &self.tensor
    }

    pub fn par_entries(&self) -> Option<&[A]> {
        self.par.as_deref()
    }

    fn par_at(&self, y: usize, x: usize) -> A {
        self.get_par(y, x).expect("linear bimodule")
    }

    pub fn encode<B: Quantaloid<Object = O, Arrow = A>>(&self, q: &B) -> Value {
        let (nx, ny) = (self.source.len(), self.target.len());
        let tensor: Vec<Vec<Value>> =
            (0..nx).map(|x| (0..ny).map(|y| arrow_label(q, &self.get(x, y))).collect()).collect();
        let mut out = json!({
            "source": self.source.carrier().name(),
            "target": self.target.carrier().name(),
            "tensor": tensor,
        });
        if self.par.is_some() {
            let par: Vec<Vec<Value>> =
                (0..ny).map(|y| (0..nx).map(|x| arrow_label(q, &self.par_at(y, x))).collect()).collect();
            out["par"] = json!(par);
        }
        out
    }
}

/// `f^⊥ = f ⊸ d_a` for `f: a → b`, with `d` the family entry at `a`.
pub fn perp<B: Residuated>(q: &B, d_source: &B::Arrow, f: &B::Arrow) -> B::Arrow {
    q.residual_right(f, d_source)
}

/// A universally quantified condition over member indices.
struct Condition<'a> {
    label: &'static str,
    vars: Vec<(&'static str, &'a FiniteSet)>,
    holds: Box<dyn Fn(&[usize]) -> bool + 'a>,
}

impl<'a> Condition<'a> {
    fn new(label: &'static str, vars: Vec<(&'static str, &'a FiniteSet)>, holds: impl Fn(&[usize]) -> bool + 'a) -> Self {
        Condition {
            label,
            vars,
            holds: Box::new(holds),
        }
    }

    /// The lexicographically first failing tuple.
    fn first_failure(&self) -> Option<Vec<usize>> {
        let sizes: Vec<usize> = self.vars.iter().map(|v| v.1.len()).collect();
        if sizes.contains(&0) {
            return None;
        }
        let mut idx = vec![0; sizes.len()];
        loop {
            if !(self.holds)(&idx) {
                return Some(idx);
            }
            let mut k = sizes.len();
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < sizes[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn entry(&self) -> Entry {
        match self.first_failure() {
            None => Entry::pass(self.label, "exhaustive"),
            Some(idx) => {
                let mut w = Map::new();
                for ((name, set), i) in self.vars.iter().zip(idx) {
                    w.insert((*name).to_string(), Value::from(set.members()[i].clone()));
                }
                Entry::fail(self.label, "exhaustive", w)
            }
        }
    }
}

fn category_conditions<'a, B: LinearQuantaloid>(q: &'a B, m: &'a Cat<B>) -> Vec<Condition<'a>> {
    let x = m.carrier();
    let v3 = || vec![("x", &**x), ("x'", &**x), ("x''", &**x)];
    let t = move |a: usize, b: usize| m.get(a, b);
    let leq = move |f: B::Arrow, g: B::Arrow| q.leq(&f, &g);
    let ten = move |f: B::Arrow, g: B::Arrow| q.tensor(&f, &g);
    if !m.is_linear() {
        return vec![
            Condition::new("qcat-unit", vec![("x", &**x)], move |i| leq(q.unit(&m.rho[i[0]]), t(i[0], i[0]))),
            Condition::new("qcat-comp", v3(), move |i| leq(ten(t(i[0], i[1]), t(i[1], i[2])), t(i[0], i[2]))),
        ];
    }
    let p = move |a: usize, b: usize| m.par_at(a, b);
    let par = move |f: B::Arrow, g: B::Arrow| q.par(&f, &g);
    vec![
        Condition::new("lqcat-tensor-unit", vec![("x", &**x)], move |i| leq(q.unit(&m.rho[i[0]]), t(i[0], i[0]))),
        Condition::new("lqcat-tensor-comp", v3(), move |i| leq(ten(t(i[0], i[1]), t(i[1], i[2])), t(i[0], i[2]))),
        Condition::new("lqcat-par-counit", vec![("x", &**x)], move |i| leq(p(i[0], i[0]), q.par_unit(&m.rho[i[0]]))),
        Condition::new("lqcat-par-cocomp", v3(), move |i| leq(p(i[0], i[2]), par(p(i[0], i[1]), p(i[1], i[2])))),
        Condition::new("lqcat-mixed-1", v3(), move |i| leq(t(i[0], i[2]), par(p(i[0], i[1]), t(i[1], i[2])))),
        Condition::new("lqcat-mixed-2", v3(), move |i| leq(t(i[0], i[2]), par(t(i[0], i[1]), p(i[1], i[2])))),
        Condition::new("lqcat-mixed-3", v3(), move |i| leq(ten(t(i[0], i[1]), p(i[1], i[2])), p(i[0], i[2]))),
        Condition::new("lqcat-mixed-4", v3(), move |i| leq(ten(p(i[0], i[1]), t(i[1], i[2])), p(i[0], i[2]))),
    ]
}

fn bimodule_conditions<'a, B: LinearQuantaloid>(q: &'a B, b: &'a Bim<B>) -> Vec<Condition<'a>> {
    let (m, n) = (&*b.source, &*b.target);
    let (xs, ys) = (&**m.carrier(), &**n.carrier());
    let th = move |x: usize, y: usize| b.get(x, y);
    let leq = move |f: B::Arrow, g: B::Arrow| q.leq(&f, &g);
    let ten = move |f: B::Arrow, g: B::Arrow| q.tensor(&f, &g);
    if !b.is_linear() {
        return vec![
            Condition::new("qbim-right", vec![("x", xs), ("y", ys), ("y'", ys)], move |i| {
                leq(ten(th(i[0], i[1]), n.get(i[1], i[2])), th(i[0], i[2]))
            }),
            Condition::new("qbim-left", vec![("x", xs), ("x'", xs), ("y", ys)], move |i| {
                leq(ten(m.get(i[0], i[1]), th(i[1], i[2])), th(i[0], i[2]))
            }),
        ];
    }
    let par = move |f: B::Arrow, g: B::Arrow| q.par(&f, &g);
    let tp = move |y: usize, x: usize| b.par_at(y, x);
    let (mt, mp) = (move |a, c| m.get(a, c), move |a, c| m.par_at(a, c));
    let (nt, np) = (move |a, c| n.get(a, c), move |a, c| n.par_at(a, c));
    vec![
        Condition::new("lqbim-tensor-1", vec![("x", xs), ("y", ys), ("y'", ys)], move |i| {
            leq(ten(th(i[0], i[1]), nt(i[1], i[2])), th(i[0], i[2]))
        }),
        Condition::new("lqbim-tensor-2", vec![("x", xs), ("x'", xs), ("y", ys)], move |i| {
            leq(ten(mt(i[0], i[1]), th(i[1], i[2])), th(i[0], i[2]))
        }),
        Condition::new("lqbim-tensor-3", vec![("x", xs), ("x'", xs), ("y", ys)], move |i| {
            leq(th(i[0], i[2]), par(mp(i[0], i[1]), th(i[1], i[2])))
        }),
        Condition::new("lqbim-tensor-4", vec![("x", xs), ("y", ys), ("y'", ys)], move |i| {
            leq(th(i[0], i[1]), par(th(i[0], i[2]), np(i[2], i[1])))
        }),
        Condition::new("lqbim-par-1", vec![("y", ys), ("y'", ys), ("x", xs)], move |i| {
            leq(tp(i[0], i[2]), par(np(i[0], i[1]), tp(i[1], i[2])))
        }),
        Condition::new("lqbim-par-2", vec![("y", ys), ("x", xs), ("x'", xs)], move |i| {
            leq(tp(i[0], i[1]), par(tp(i[0], i[2]), mp(i[2], i[1])))
        }),
        Condition::new("lqbim-par-3", vec![("y", ys), ("y'", ys), ("x", xs)], move |i| {
            leq(ten(nt(i[0], i[1]), tp(i[1], i[2])), tp(i[0], i[2]))
        }),
        Condition::new("lqbim-par-4", vec![("y", ys), ("x'", xs), ("x", xs)], move |i| {
            leq(ten(tp(i[0], i[1]), mt(i[1], i[2])), tp(i[0], i[2]))
        }),
    ]
}

/// Every enrichment inequality over all member tuples; the linear ones
/// exactly when par data is present.
pub fn validate_qcategory<B: LinearQuantaloid>(q: &B, m: &Cat<B>) -> Result<LawReport, QModError> {
    if m.is_linear() && !q.has_par() {
        return Err(QuantaloidError::NoParLayer.into());
    }
    let suite = if m.is_linear() { "linear-qcategory" } else { "qcategory" };
    Ok(LawReport {
        suite: suite.into(),
        entries: category_conditions(q, m).iter().map(Condition::entry).collect(),
    })
}

pub fn is_valid_qcategory<B: LinearQuantaloid>(q: &B, m: &Cat<B>) -> bool {
    (!m.is_linear() || q.has_par()) && category_conditions(q, m).iter().all(|c| c.first_failure().is_none())
}

pub fn validate_qbimodule<B: LinearQuantaloid>(q: &B, b: &Bim<B>) -> Result<LawReport, QModError> {
    if b.is_linear() && !q.has_par() {
        return Err(QuantaloidError::NoParLayer.into());
    }
    let suite = if b.is_linear() { "linear-qbimodule" } else { "qbimodule" };
    Ok(LawReport {
        suite: suite.into(),
        entries: bimodule_conditions(q, b).iter().map(Condition::entry).collect(),
    })
}

pub fn is_valid_qbimodule<B: LinearQuantaloid>(q: &B, b: &Bim<B>) -> bool {
    (!b.is_linear() || q.has_par()) && bimodule_conditions(q, b).iter().all(|c| c.first_failure().is_none())
}

fn composable<O: PartialEq + Clone, A: PartialEq + Clone>(f: &QBimodule<O, A>, g: &QBimodule<O, A>) -> Result<(), QModError> {
    if f.target != g.source {
        return Err(QModError::Mismatch(format!(
            "`{}` does not match `{}`",
            f.target.carrier().name(),
            g.source.carrier().name()
        )));
    }
    if f.is_linear() != g.is_linear() {
        return Err(QModError::Mismatch("cannot compose a linear bimodule with a plain one".into()));
    }
    Ok(())
}

/// `(Θ⊗Π)_⊗(x, z) = ⋁_y Θ_⊗(x, y) ⊗ Π_⊗(y, z)` and, for linear bimodules,
/// `(Θ⊗Π)_⊕(z, x) = ⋀_y Π_⊕(z, y) ⊕ Θ_⊕(y, x)`.
pub fn qmod_compose_tensor<B>(q: &B, f: &Bim<B>, g: &Bim<B>) -> Result<Bim<B>, QModError>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    composable(f, g)?;
    if f.is_linear() && !q.has_par() {
        return Err(QuantaloidError::NoParLayer.into());
    }
    let (m, n, p) = (&f.source, &f.target, &g.target);
    let tensor = grid(m, p, |x, z| {
        join_all(q, &m.rho[x], &p.rho[z], (0..n.len()).map(|y| q.tensor(&f.get(x, y), &g.get(y, z))))
    });
    let par = f.is_linear().then(|| {
        grid(p, m, |z, x| {
            meet_all(q, &p.rho[z], &m.rho[x], (0..n.len()).map(|y| q.par(&g.par_at(z, y), &f.par_at(y, x))))
        })
    });
    Ok(QBimodule::raw(m.clone(), p.clone(), tensor, par))
}

/// `(Θ⊕Π)_⊗(x, z) = ⋀_y Θ_⊗(x, y) ⊕ Π_⊗(y, z)` and
/// `(Θ⊕Π)_⊕(z, x) = ⋁_y Π_⊕(z, y) ⊗ Θ_⊕(y, x)`.
pub fn qmod_compose_par<B>(q: &B, f: &Bim<B>, g: &Bim<B>) -> Result<Bim<B>, QModError>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    composable(f, g)?;
    if !f.is_linear() {
        return Err(QModError::NoParData("par composition needs linear bimodules".into()));
    }
    if !q.has_par() {
        return Err(QuantaloidError::NoParLayer.into());
    }
    let (m, n, p) = (&f.source, &f.target, &g.target);
    let tensor = grid(m, p, |x, z| {
        meet_all(q, &m.rho[x], &p.rho[z], (0..n.len()).map(|y| q.par(&f.get(x, y), &g.get(y, z))))
    });
    let par = grid(p, m, |z, x| {
        join_all(q, &p.rho[z], &m.rho[x], (0..n.len()).map(|y| q.tensor(&g.par_at(z, y), &f.par_at(y, x))))
    });
    Ok(QBimodule::raw(m.clone(), p.clone(), tensor, Some(par)))
}

pub(crate) fn grid<O, A, T>(rows: &QCategory<O, A>, cols: &QCategory<O, A>, f: impl Fn(usize, usize) -> T) -> Vec<T> {
    let (r, c) = (rows.carrier.len(), cols.carrier.len());
    (0..r * c).map(|i| f(i / c, i % c)).collect()
}

/// The tensor identity `ι_M = (M_⊗, M_⊕)`.
pub fn iota<O: Clone, A: Clone>(m: &Arc<QCategory<O, A>>) -> QBimodule<O, A> {
    QBimodule::raw(m.clone(), m.clone(), m.tensor.clone(), m.par.clone())
}

/// The par identity `δ_M = (M_⊕, M_⊗)` of a linear category.
pub fn delta_linear<O: Clone, A: Clone>(m: &Arc<QCategory<O, A>>) -> Result<QBimodule<O, A>, QModError> {
    let par = m.par.clone().ok_or_else(|| QModError::NoParData("δ needs a linear category".into()))?;
    // Both parts are stored row-major by their own index order, so the
    // tables carry over unchanged.
    Ok(QBimodule::raw(m.clone(), m.clone(), par, Some(m.tensor.clone())))
}

/// `δ_M(x, x') = M(x', x) ⊸ d_{ρx'}`, a plain bimodule `M → M`. Rejects
/// families that are not Girard on the base.
pub fn qmod_delta(q: &FiniteQuantaloid, m: &Arc<QCategory>, family: &[Morphism]) -> Result<QBimodule, QModError> {
    if family.len() != q.len() || !is_girard_family(q, family) {
        return Err(QModError::NotGirard);
    }
    Ok(delta_with(q, m, family))
}

/// `δ_M` for any family, without checking that it is Girard.
pub fn delta_with<B, F>(q: &B, m: &Arc<Cat<B>>, family: &F) -> Bim<B>
where
    B: Residuated,
    F: Family<B::Object, B::Arrow> + ?Sized,
{
    let tensor = grid(m, m, |x, y| q.residual_right(&m.get(y, x), &family.at(&m.rho[y])));
    QBimodule::raw(m.clone(), m.clone(), tensor, None)
}

/// `Θ^⊥_⊗(y, x) = Θ_⊗(x, y)^⊥` and `Θ^⊥_⊕(x, y) = Θ_⊗(x, y)`, a linear
/// bimodule `N → M`. Rejects families that are not Girard on the base.
pub fn qmod_linear_adjoint(q: &FiniteQuantaloid, b: &QBimodule, family: &[Morphism]) -> Result<QBimodule, QModError> {
    if family.len() != q.len() || !is_girard_family(q, family) {
        return Err(QModError::NotGirard);
    }
    linear_adjoint_with(q, b, family)
}

/// The linear adjoint for any family, without checking that it is Girard.
pub fn linear_adjoint_with<B, F>(q: &B, b: &Bim<B>, family: &F) -> Result<Bim<B>, QModError>
where
    B: Residuated,
    F: Family<B::Object, B::Arrow> + ?Sized,
{
    if !b.source.is_linear() || !b.target.is_linear() {
        return Err(QModError::NoParData("the adjoint lives between linear categories".into()));
    }
    let (m, n) = (&b.source, &b.target);
    let tensor = grid(n, m, |y, x| perp(q, &family.at(&m.rho[x]), &b.get(x, y)));
    let par = grid(m, n, |x, y| b.get(x, y));
    Ok(QBimodule::raw(n.clone(), m.clone(), tensor, Some(par)))
}

/// Mixed order: tensor parts covariantly, par parts contravariantly.
pub fn bimodule_leq<B: Quantaloid>(q: &B, f: &Bim<B>, g: &Bim<B>) -> bool {
    let tensor = f.tensor.iter().zip(&g.tensor).all(|(a, b)| q.leq(a, b));
    let par = match (&f.par, &g.par) {
        (Some(fp), Some(gp)) => fp.iter().zip(gp).all(|(a, b)| q.leq(b, a)),
        _ => true,
    };
    tensor && par
}

/// `ι_M ≤ Θ ⊕ Ψ` and `Ψ ⊗ Θ ≤ δ_N` for `Θ: M → N`, `Ψ: N → M`.
pub fn check_qmod_linear_adjoint<B>(q: &B, theta: &Bim<B>, psi: &Bim<B>) -> Result<bool, QModError>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    let unit = iota(&theta.source);
    let counit = delta_linear(&theta.target)?;
    let eta = bimodule_leq(q, &unit, &qmod_compose_par(q, theta, psi)?);
    let eps = bimodule_leq(q, &qmod_compose_tensor(q, psi, theta)?, &counit);
    Ok(eta && eps)
}

fn fperp(q: &FiniteQuantaloid, family: &[Morphism], f: Morphism) -> Morphism {
    q.residual_right(f, family[f.src])
}

fn girard_par(q: &FiniteQuantaloid, family: &[Morphism], f: Morphism, g: Morphism) -> Morphism {
    fperp(q, family, q.tensor(fperp(q, family, g), fperp(q, family, f)))
}

fn tensor_opt(q: &FiniteQuantaloid, f: Morphism, g: Morphism) -> Option<Morphism> {
    (f.tgt == g.src).then(|| q.tensor(f, g))
}

/// A literal inequality `lhs ≤ rhs`, checked only on tuples where both
/// sides are defined and land in the same hom. Other tuples are skipped and
/// counted in the entry's mode.
struct TypedCheck<'a> {
    label: &'static str,
    vars: Vec<(&'static str, &'a FiniteSet)>,
    sides: Box<dyn Fn(&[usize]) -> Option<(Morphism, Morphism)> + 'a>,
}

impl<'a> TypedCheck<'a> {
    fn new(
        label: &'static str,
        vars: Vec<(&'static str, &'a FiniteSet)>,
        sides: impl Fn(&[usize]) -> Option<(Morphism, Morphism)> + 'a,
    ) -> Self {
        TypedCheck {
            label,
            vars,
            sides: Box::new(sides),
        }
    }

    fn entry(&self, q: &FiniteQuantaloid) -> Entry {
        let sizes: Vec<usize> = self.vars.iter().map(|v| v.1.len()).collect();
        let total: usize = sizes.iter().product();
        let mut skipped = 0usize;
        let mut failure = None;
        for t in 0..total {
            let mut rest = t;
            let mut idx = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                idx[k] = rest % sizes[k];
                rest /= sizes[k];
            }
            match (self.sides)(&idx) {
                Some((l, r)) if (l.src, l.tgt) == (r.src, r.tgt) => {
                    if failure.is_none() && !q.leq(l, r) {
                        failure = Some(idx);
                    }
                }
                _ => skipped += 1,
            }
        }
        let mode = format!("exhaustive(skipped-ill-typed={skipped})");
        match failure {
            None => Entry::pass(self.label, mode),
            Some(idx) => {
                let mut w = Map::new();
                for ((name, set), i) in self.vars.iter().zip(idx) {
                    w.insert((*name).to_string(), Value::from(set.members()[i].clone()));
                }
                Entry::fail(self.label, mode, w)
            }
        }
    }
}

/// The inequalities stated for the second enrichment `M(x', x)^⊥` of a
/// Q-category over a Girard base, each checked exactly as written, with
/// `⊕` the de Morgan dual of `⊗`.
pub fn second_enrichment_category(
    q: &FiniteQuantaloid,
    family: &[Morphism],
    m: &QCategory,
) -> Result<LawReport, QModError> {
    if family.len() != q.len() || !is_girard_family(q, family) {
        return Err(QModError::NotGirard);
    }
    let xs = &**m.carrier();
    let mm = |a: usize, b: usize| m.get(a, b);
    let bot = |f: Morphism| fperp(q, family, f);
    let par = |f: Morphism, g: Morphism| (f.tgt == g.src).then(|| girard_par(q, family, f, g));
    let v3 = || vec![("x", xs), ("x'", xs), ("x''", xs)];
    let checks = vec![
        TypedCheck::new("qmod-dual-cat-1", vec![("x", xs)], |i| {
            Some((bot(mm(i[0], i[0])), family[m.rho(i[0])]))
        }),
        TypedCheck::new("qmod-dual-cat-2", v3(), |i| {
            Some((bot(mm(i[0], i[2])), par(bot(mm(i[1], i[2])), bot(mm(i[0], i[1])))?))
        }),
        TypedCheck::new("qmod-dual-bim-1", v3(), |i| {
            Some((tensor_opt(q, bot(mm(i[1], i[0])), mm(i[1], i[2]))?, bot(mm(i[2], i[0]))))
        }),
        TypedCheck::new("qmod-dual-bim-2", v3(), |i| {
            Some((mm(i[2], i[0]), par(bot(mm(i[1], i[2])), mm(i[1], i[0]))?))
        }),
        TypedCheck::new("qmod-dual-bim-3", v3(), |i| {
            Some((tensor_opt(q, mm(i[2], i[0]), bot(mm(i[1], i[0])))?, bot(mm(i[1], i[2]))))
        }),
        TypedCheck::new("qmod-dual-bim-4", v3(), |i| {
            Some((mm(i[2], i[0]), par(mm(i[2], i[1]), bot(mm(i[0], i[1])))?))
        }),
    ];
    Ok(LawReport {
        suite: "qmod-second-enrichment".into(),
        entries: checks.iter().map(|c| c.entry(q)).collect(),
    })
}

/// The inequalities stated for the second assignment `Θ(x, y)^⊥` of a
/// bimodule `Θ: M → N` over a Girard base, each checked as written.
pub fn second_enrichment_bimodule(
    q: &FiniteQuantaloid,
    family: &[Morphism],
    b: &QBimodule,
) -> Result<LawReport, QModError> {
    if family.len() != q.len() || !is_girard_family(q, family) {
        return Err(QModError::NotGirard);
    }
    let (m, n) = (&*b.source, &*b.target);
    let (xs, ys) = (&**m.carrier(), &**n.carrier());
    let th = |x: usize, y: usize| b.get(x, y);
    let bot = |f: Morphism| fperp(q, family, f);
    let par = |f: Morphism, g: Morphism| (f.tgt == g.src).then(|| girard_par(q, family, f, g));
    let vars = || vec![("x", xs), ("x'", xs), ("y", ys), ("y'", ys)];
    let checks = vec![
        TypedCheck::new("qmod-dual-theta-1", vars(), |i| {
            Some((bot(th(i[0], i[3])), par(bot(n.get(i[2], i[3])), bot(th(i[0], i[2])))?))
        }),
        TypedCheck::new("qmod-dual-theta-2", vars(), |i| {
            Some((bot(th(i[0], i[2])), par(bot(th(i[1], i[2])), bot(m.get(i[0], i[1])))?))
        }),
        TypedCheck::new("qmod-dual-theta-bim-1", vars(), |i| {
            Some((tensor_opt(q, bot(th(i[0], i[2])), m.get(i[0], i[1]))?, bot(th(i[0], i[3]))))
        }),
        TypedCheck::new("qmod-dual-theta-bim-2", vars(), |i| {
            Some((th(i[0], i[3]), par(bot(m.get(i[0], i[1])), th(i[0], i[2]))?))
        }),
        TypedCheck::new("qmod-dual-theta-bim-3", vars(), |i| {
            Some((tensor_opt(q, n.get(i[2], i[3]), bot(th(i[0], i[3])))?, bot(th(i[0], i[2]))))
        }),
        TypedCheck::new("qmod-dual-theta-bim-4", vars(), |i| {
            Some((th(i[0], i[2]), par(th(i[0], i[3]), bot(n.get(i[2], i[3])))?))
        }),
    ];
    Ok(LawReport {
        suite: "qmod-second-enrichment".into(),
        entries: checks.iter().map(|c| c.entry(q)).collect(),
    })
}
