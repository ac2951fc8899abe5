//! Finite quantaloids given by hom lattices and composition tables, with an
//! optional par layer, plus the monad constructions Mon Q and linear Mon Q.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{FiniteLattice, LatticeError};
use crate::quantale::{LinearQuantale, Quantale, TableLd, TableQuantale};
use crate::verify::{
    girard_family_laws, linear_laws, run_suite, tensor_laws, LawReport, LinearQuantaloid, Quantaloid, Residuated,
    Sampler,
};

mod linear;
mod monad;

pub use linear::{
    all_linear_monads, check_linear_monad, check_linear_monad_bimodule, linear_monad_conditions,
    linear_monad_bimodule_conditions, linear_monq_compose_par, linear_monq_compose_tensor, linear_monq_identities,
    transfer_bimodule, LinearBimodule, LinearMonQView, LinearMonad,
};
pub(crate) use monad::hom_list;
pub use monad::{
    all_monads, check_monad, check_monad_bimodule, monad_bimodule_conditions, monad_conditions, monq_compose,
    monq_girard_family, monq_identity, MonQView, Monad, MonadBimodule,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaloidError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown element `{0}` in hom({1}, {2})")]
    UnknownElement(String, String, String),
    #[error("hom mismatch: {0}")]
    HomMismatch(String),
    #[error("quantaloid has no par layer")]
    NoParLayer,
    #[error("family shape mismatch: {0}")]
    FamilyShape(String),
    #[error("search space of {0} candidates exceeds the cap of {1}")]
    SearchTooLarge(u128, usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Picks the dualizing endo-1-cell `d_a` for each object `a`.
pub trait Family<O, A> {
    fn at(&self, a: &O) -> A;
}

impl<O, A, F: Fn(&O) -> A> Family<O, A> for F {
    fn at(&self, a: &O) -> A {
        self(a)
    }
}

impl Family<usize, Morphism> for [Morphism] {
    fn at(&self, a: &usize) -> Morphism {
        self[*a]
    }
}

impl<const N: usize> Family<usize, Morphism> for [Morphism; N] {
    fn at(&self, a: &usize) -> Morphism {
        self[*a]
    }
}

impl Family<usize, Morphism> for Vec<Morphism> {
    fn at(&self, a: &usize) -> Morphism {
        self[*a]
    }
}

/// A 1-cell `src → tgt`, addressed by its index in the hom lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub idx: usize,
}

impl Morphism {
    pub fn new(src: usize, tgt: usize, idx: usize) -> Self {
        Morphism { src, tgt, idx }
    }
}

/// The second composition and its identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParLayer {
    pub tables: Vec<Vec<usize>>,
    pub units: Vec<usize>,
}

/// A quantaloid with finitely many objects and finite hom lattices.
/// Composition is diagrammatic: `f: a → b`, `g: b → c` give `f ⊗ g: a → c`.
/// Tables are indexed `(a, b, c)` and are row-major in `hom(a,b) × hom(b,c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuantaloid {
    objects: Vec<String>,
    homs: Vec<Arc<FiniteLattice>>,
    tensor: Vec<Vec<usize>>,
    units: Vec<usize>,
    par: Option<ParLayer>,
    family: Option<Vec<usize>>,
}

impl FiniteQuantaloid {
    /// Checks shapes only; the quantaloid laws are checked by
    /// [`check_quantaloid_laws`].
    pub fn new(
        objects: Vec<String>,
        homs: Vec<Arc<FiniteLattice>>,
        tensor: Vec<Vec<usize>>,
        units: Vec<usize>,
        par: Option<ParLayer>,
    ) -> Result<Self, QuantaloidError> {
        let n = objects.len();
        if n == 0 {
            return Err(QuantaloidError::Shape("no objects".into()));
        }
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].contains(o) {
                return Err(QuantaloidError::Shape(format!("duplicate object `{o}`")));
            }
        }
        if homs.len() != n * n {
            return Err(QuantaloidError::Shape(format!("{} homs for {n} objects", homs.len())));
        }
        let q = FiniteQuantaloid {
            objects,
            homs,
            tensor,
            units,
            par,
            family: None,
        };
        q.check_tables(&q.tensor, &q.units, "tensor")?;
        if let Some(p) = &q.par {
            q.check_tables(&p.tables, &p.units, "par")?;
        }
        Ok(q)
    }

    fn check_tables(&self, tables: &[Vec<usize>], units: &[usize], what: &str) -> Result<(), QuantaloidError> {
        let n = self.objects.len();
        if tables.len() != n * n * n || units.len() != n {
            return Err(QuantaloidError::Shape(format!("{what}: wrong number of tables or units")));
        }
        for a in 0..n {
            if units[a] >= self.hom(a, a).len() {
                return Err(QuantaloidError::Shape(format!("{what}: unit of `{}` out of range", self.objects[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    let t = &tables[(a * n + b) * n + c];
                    let want = self.hom(a, b).len() * self.hom(b, c).len();
                    let bound = self.hom(a, c).len();
                    if t.len() != want || t.iter().any(|&v| v >= bound) {
                        return Err(QuantaloidError::Shape(format!(
                            "{what} table ({}, {}, {}) has the wrong shape",
                            self.objects[a], self.objects[b], self.objects[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Tables computed from `op(a, b, c, f, g)` on hom indices.
    pub fn from_fn(
        objects: Vec<String>,
        homs: Vec<Arc<FiniteLattice>>,
        units: Vec<usize>,
        op: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self, QuantaloidError> {
        let n = objects.len();
        let tensor = tables_from_fn(n, &homs, &op);
        Self::new(objects, homs, tensor, units, None)
    }

    /// Adds a par layer computed from `op(a, b, c, f, g)`.
    pub fn with_par_fn(
        mut self,
        units: Vec<usize>,
        op: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self, QuantaloidError> {
        let tables = tables_from_fn(self.objects.len(), &self.homs, &op);
        self.check_tables(&tables, &units, "par")?;
        self.par = Some(ParLayer { tables, units });
        Ok(self)
    }

    /// Attaches a dualizing family (one endo-1-cell per object).
    pub fn with_family(mut self, family: Vec<usize>) -> Result<Self, QuantaloidError> {
        self.check_family(&family)?;
        self.family = Some(family);
        Ok(self)
    }

    /// The one-object quantaloid of a quantale.
    pub fn from_quantale(q: &TableQuantale) -> Self {
        FiniteQuantaloid {
            objects: vec!["*".into()],
            homs: vec![q.lattice().clone()],
            tensor: vec![q.table().to_vec()],
            units: vec![q.unit()],
            par: None,
            family: None,
        }
    }

    /// The one-object linear quantaloid of an LD pair.
    pub fn from_ld(ld: &TableLd) -> Self {
        let mut out = Self::from_quantale(ld.tensor_part());
        out.par = Some(ParLayer {
            tables: vec![ld.par_table().to_vec()],
            units: vec![ld.par_unit()],
        });
        out
    }

    /// The quantale of a one-object quantaloid.
    pub fn to_quantale(&self) -> Option<TableQuantale> {
        (self.objects.len() == 1)
            .then(|| TableQuantale::new(self.homs[0].clone(), self.tensor[0].clone(), self.units[0]).ok())
            .flatten()
    }

    /// The LD pair of a one-object linear quantaloid.
    pub fn to_ld(&self) -> Option<TableLd> {
        let p = self.par.as_ref()?;
        TableLd::new(self.to_quantale()?, p.tables[0].clone(), p.units[0]).ok()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_index(&self, name: &str) -> Result<usize, QuantaloidError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| QuantaloidError::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, a: usize, b: usize) -> &Arc<FiniteLattice> {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn tensor_table(&self, a: usize, b: usize, c: usize) -> &[usize] {
        let n = self.objects.len();
        &self.tensor[(a * n + b) * n + c]
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn par_layer(&self) -> Option<&ParLayer> {
        self.par.as_ref()
    }

    pub fn has_par(&self) -> bool {
        self.par.is_some()
    }

    pub fn family(&self) -> Option<Vec<Morphism>> {
        self.family
            .as_ref()
            .map(|f| f.iter().enumerate().map(|(a, &i)| Morphism::new(a, a, i)).collect())
    }

    /// The morphism `a → b` named `name`.
    pub fn elem(&self, a: usize, b: usize, name: &str) -> Result<Morphism, QuantaloidError> {
        self.hom(a, b)
            .index_of(name)
            .map(|i| Morphism::new(a, b, i))
            .map_err(|_| QuantaloidError::UnknownElement(name.into(), self.objects[a].clone(), self.objects[b].clone()))
    }

    pub fn name(&self, f: Morphism) -> &str {
        self.hom(f.src, f.tgt).name(f.idx)
    }

    /// Every morphism `a → b` in declaration order.
    pub fn hom_elems(&self, a: usize, b: usize) -> impl Iterator<Item = Morphism> + '_ {
        (0..self.hom(a, b).len()).map(move |i| Morphism::new(a, b, i))
    }

    pub fn leq(&self, f: Morphism, g: Morphism) -> bool {
        debug_assert_eq!((f.src, f.tgt), (g.src, g.tgt));
        self.hom(f.src, f.tgt).leq(f.idx, g.idx)
    }

    pub fn join(&self, f: Morphism, g: Morphism) -> Morphism {
        Morphism::new(f.src, f.tgt, self.hom(f.src, f.tgt).join(f.idx, g.idx))
    }

    pub fn meet(&self, f: Morphism, g: Morphism) -> Morphism {
        Morphism::new(f.src, f.tgt, self.hom(f.src, f.tgt).meet(f.idx, g.idx))
    }

    pub fn bottom(&self, a: usize, b: usize) -> Morphism {
        Morphism::new(a, b, self.hom(a, b).bottom())
    }

    pub fn top(&self, a: usize, b: usize) -> Morphism {
        Morphism::new(a, b, self.hom(a, b).top())
    }

    pub fn join_all(&self, a: usize, b: usize, items: impl IntoIterator<Item = Morphism>) -> Morphism {
        items.into_iter().fold(self.bottom(a, b), |acc, f| self.join(acc, f))
    }

    pub fn meet_all(&self, a: usize, b: usize, items: impl IntoIterator<Item = Morphism>) -> Morphism {
        items.into_iter().fold(self.top(a, b), |acc, f| self.meet(acc, f))
    }

    fn lookup(&self, tables: &[Vec<usize>], f: Morphism, g: Morphism) -> Morphism {
        assert_eq!(f.tgt, g.src, "composing non-composable morphisms");
        let n = self.objects.len();
        let (a, b, c) = (f.src, f.tgt, g.tgt);
        let width = self.hom(b, c).len();
        Morphism::new(a, c, tables[(a * n + b) * n + c][f.idx * width + g.idx])
    }

    /// `f ⊗ g` for `f: a → b`, `g: b → c`. Panics if not composable.
    pub fn tensor(&self, f: Morphism, g: Morphism) -> Morphism {
        self.lookup(&self.tensor, f, g)
    }

    pub fn unit(&self, a: usize) -> Morphism {
        Morphism::new(a, a, self.units[a])
    }

    /// `f ⊕ g`. Panics without a par layer.
    pub fn par(&self, f: Morphism, g: Morphism) -> Morphism {
        self.lookup(&self.par.as_ref().expect("par layer").tables, f, g)
    }

    pub fn par_unit(&self, a: usize) -> Morphism {
        Morphism::new(a, a, self.par.as_ref().expect("par layer").units[a])
    }

    /// Checked composition.
    pub fn compose(&self, f: Morphism, g: Morphism) -> Result<Morphism, QuantaloidError> {
        if f.tgt != g.src {
            return Err(QuantaloidError::HomMismatch(format!(
                "target `{}` is not source `{}`",
                self.objects[f.tgt], self.objects[g.src]
            )));
        }
        Ok(self.tensor(f, g))
    }

    /// For `f: a → b`, `h: a → c`: the largest `g: b → c` with `f ⊗ g ≤ h`.
    pub fn residual_right(&self, f: Morphism, h: Morphism) -> Morphism {
        assert_eq!(f.src, h.src, "residual needs a common source");
        let (b, c) = (f.tgt, h.tgt);
        let ok = self.hom_elems(b, c).filter(|&g| self.leq(self.tensor(f, g), h));
        self.join_all(b, c, ok.collect::<Vec<_>>())
    }

    /// For `h: a → c`, `f: b → c`: the largest `g: a → b` with `g ⊗ f ≤ h`.
    pub fn residual_left(&self, h: Morphism, f: Morphism) -> Morphism {
        assert_eq!(f.tgt, h.tgt, "residual needs a common target");
        let (a, b) = (h.src, f.src);
        let ok = self.hom_elems(a, b).filter(|&g| self.leq(self.tensor(g, f), h));
        self.join_all(a, b, ok.collect::<Vec<_>>())
    }

    fn check_family(&self, family: &[usize]) -> Result<(), QuantaloidError> {
        if family.len() != self.objects.len() {
            return Err(QuantaloidError::FamilyShape(format!(
                "{} entries for {} objects",
                family.len(),
                self.objects.len()
            )));
        }
        for (a, &d) in family.iter().enumerate() {
            if d >= self.hom(a, a).len() {
                return Err(QuantaloidError::FamilyShape(format!("entry for `{}` out of range", self.objects[a])));
            }
        }
        Ok(())
    }

    pub fn encode_morphism(&self, f: Morphism) -> Value {
        json!({"source": self.objects[f.src], "target": self.objects[f.tgt], "value": self.name(f)})
    }
}

fn tables_from_fn(
    n: usize,
    homs: &[Arc<FiniteLattice>],
    op: &impl Fn(usize, usize, usize, usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (p, q) = (homs[a * n + b].len(), homs[b * n + c].len());
                out.push((0..p * q).map(|i| op(a, b, c, i / q, i % q)).collect());
            }
        }
    }
    out
}

impl Quantaloid for FiniteQuantaloid {
    type Object = usize;
    type Arrow = Morphism;

    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }
    fn hom_size(&self, a: &usize, b: &usize, cap: usize) -> Option<usize> {
        Some(self.hom(*a, *b).len()).filter(|&n| n <= cap)
    }
    fn hom_nth(&self, a: &usize, b: &usize, i: usize) -> Morphism {
        Morphism::new(*a, *b, i)
    }
    fn random_arrow(&self, a: &usize, b: &usize, rng: &mut ChaCha8Rng, _window: i64) -> Morphism {
        Morphism::new(*a, *b, rng.gen_range(0..self.hom(*a, *b).len()))
    }
    fn leq(&self, f: &Morphism, g: &Morphism) -> bool {
        FiniteQuantaloid::leq(self, *f, *g)
    }
    fn join(&self, f: &Morphism, g: &Morphism) -> Morphism {
        FiniteQuantaloid::join(self, *f, *g)
    }
    fn meet(&self, f: &Morphism, g: &Morphism) -> Morphism {
        FiniteQuantaloid::meet(self, *f, *g)
    }
    fn bottom(&self, a: &usize, b: &usize) -> Morphism {
        FiniteQuantaloid::bottom(self, *a, *b)
    }
    fn top(&self, a: &usize, b: &usize) -> Morphism {
        FiniteQuantaloid::top(self, *a, *b)
    }
    fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        FiniteQuantaloid::tensor(self, *f, *g)
    }
    fn unit(&self, a: &usize) -> Morphism {
        FiniteQuantaloid::unit(self, *a)
    }
    fn encode_object(&self, a: &usize) -> Value {
        Value::String(self.objects[*a].clone())
    }
    fn encode_arrow(&self, f: &Morphism) -> Value {
        self.encode_morphism(*f)
    }
    fn shrink_arrow(&self, f: &Morphism) -> Vec<Morphism> {
        let hom = self.hom(f.src, f.tgt);
        let mut out = Vec::new();
        if f.idx != hom.bottom() {
            out.push(hom.bottom());
        }
        out.extend(hom.lower_covers(f.idx).iter().filter(|&&c| c != hom.bottom()));
        out.into_iter().map(|i| Morphism::new(f.src, f.tgt, i)).collect()
    }
}

impl LinearQuantaloid for FiniteQuantaloid {
    fn par(&self, f: &Morphism, g: &Morphism) -> Morphism {
        FiniteQuantaloid::par(self, *f, *g)
    }
    fn par_unit(&self, a: &usize) -> Morphism {
        FiniteQuantaloid::par_unit(self, *a)
    }
    fn has_par(&self) -> bool {
        FiniteQuantaloid::has_par(self)
    }
}

impl Residuated for FiniteQuantaloid {
    fn residual_right(&self, f: &Morphism, h: &Morphism) -> Morphism {
        FiniteQuantaloid::residual_right(self, *f, *h)
    }
    fn residual_left(&self, h: &Morphism, f: &Morphism) -> Morphism {
        FiniteQuantaloid::residual_left(self, *h, *f)
    }
}

/// Exhaustive quantaloid laws; with a par layer, also the par laws and both
/// linear distributions.
pub fn check_quantaloid_laws(q: &FiniteQuantaloid, sampler: &Sampler) -> LawReport {
    if q.has_par() {
        run_suite("linear-quantaloid", q, &linear_laws(), sampler)
    } else {
        run_suite("quantaloid", q, &tensor_laws(), sampler)
    }
}

/// `f ⊸ d_a = d_b ⟜ f` and `f^⊥⊥ = f` for every `f: a → b`.
pub fn check_girard_family(
    q: &FiniteQuantaloid,
    family: &[Morphism],
    sampler: &Sampler,
) -> Result<LawReport, QuantaloidError> {
    let idx: Vec<usize> = family.iter().map(|f| f.idx).collect();
    q.check_family(&idx)?;
    if family.iter().enumerate().any(|(a, f)| f.src != a || f.tgt != a) {
        return Err(QuantaloidError::FamilyShape("entries must be endo-1-cells in object order".into()));
    }
    let fam: Arc<[Morphism]> = family.into();
    let laws = girard_family_laws(move |_: &FiniteQuantaloid, a: &usize| fam[*a]);
    Ok(run_suite("girard-family", q, &laws, sampler))
}

/// Whether a family is cyclic and dualizing, by exhaustive scan.
pub fn is_girard_family(q: &FiniteQuantaloid, family: &[Morphism]) -> bool {
    family.iter().enumerate().all(|(a, &d)| d.src == a && d.tgt == a)
        && (0..q.len()).all(|a| {
            (0..q.len()).all(|b| {
                q.hom_elems(a, b).all(|f| {
                    let neg = q.residual_right(f, family[a]);
                    neg == q.residual_left(family[b], f) && q.residual_right(neg, family[b]) == f
                })
            })
        })
}

/// Every cyclic dualizing family, in lexicographic order of entries.
pub fn find_girard_families(q: &FiniteQuantaloid, cap: usize) -> Result<Vec<Vec<Morphism>>, QuantaloidError> {
    let sizes: Vec<usize> = (0..q.len()).map(|a| q.hom(a, a).len()).collect();
    let total: u128 = sizes.iter().map(|&s| s as u128).product();
    if total > cap as u128 {
        return Err(QuantaloidError::SearchTooLarge(total, cap));
    }
    let mut out = Vec::new();
    for i in 0..total as usize {
        let mut rest = i;
        let mut fam = vec![Morphism::new(0, 0, 0); sizes.len()];
        for a in (0..sizes.len()).rev() {
            fam[a] = Morphism::new(a, a, rest % sizes[a]);
            rest /= sizes[a];
        }
        if is_girard_family(q, &fam) {
            out.push(fam);
        }
    }
    Ok(out)
}

/// Converts a one-object linear quantaloid back to an LD structure and
/// checks the element-level laws; used by the round-trip tests.
pub fn one_object_ld_laws(q: &FiniteQuantaloid, sampler: &Sampler) -> Option<LawReport> {
    q.to_ld().map(|ld| crate::verify::check_ld_laws(&ld, sampler))
}

#[cfg(test)]
mod tests;
