//! Quantale-valued relations between finite sets: the bicategory Q-Rel with
//! its tensor and par compositions, residuals and linear adjoints.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::quantale::{GirardQuantale, LinearQuantale, Quantale, QuantaleError};

mod view;

pub use view::{check_girard_qrel, verify_qrel_laws, QRelView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QRelError {
    #[error("set mismatch: `{0}` does not match `{1}`")]
    SetMismatch(String, String),
    #[error("duplicate member `{0}`")]
    DuplicateMember(String),
    #[error("unknown member `{0}`")]
    UnknownMember(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
}

/// A named finite set with distinct members in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    name: String,
    members: Vec<String>,
}

impl FiniteSet {
    pub fn new<S: AsRef<str>>(name: &str, members: &[S]) -> Result<Self, QRelError> {
        let members: Vec<String> = members.iter().map(|m| m.as_ref().to_string()).collect();
        for (i, m) in members.iter().enumerate() {
            if members[..i].contains(m) {
                return Err(QRelError::DuplicateMember(m.clone()));
            }
        }
        Ok(FiniteSet {
            name: name.to_string(),
            members,
        })
    }

    /// `{x0, ..., x(n-1)}`.
    pub fn indexed(name: &str, n: usize) -> Self {
        FiniteSet {
            name: name.to_string(),
            members: (0..n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, member: &str) -> Result<usize, QRelError> {
        self.members
            .iter()
            .position(|m| m == member)
            .ok_or_else(|| QRelError::UnknownMember(member.to_string()))
    }

    /// The same set with member `k` deleted.
    pub fn without(&self, k: usize) -> Self {
        let mut members = self.members.clone();
        members.remove(k);
        FiniteSet {
            name: self.name.clone(),
            members,
        }
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.members.join(","))
    }
}

fn same_set(a: &Arc<FiniteSet>, b: &Arc<FiniteSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn expect_same(a: &Arc<FiniteSet>, b: &Arc<FiniteSet>) -> Result<(), QRelError> {
    if same_set(a, b) {
        Ok(())
    } else {
        Err(QRelError::SetMismatch(a.to_string(), b.to_string()))
    }
}

/// A `|source| × |target|` matrix of carrier elements, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRelation<E> {
    source: Arc<FiniteSet>,
    target: Arc<FiniteSet>,
    values: Vec<E>,
}

impl<E: Copy> QRelation<E> {
    pub fn new(source: Arc<FiniteSet>, target: Arc<FiniteSet>, values: Vec<E>) -> Result<Self, QRelError> {
        if values.len() != source.len() * target.len() {
            return Err(QRelError::Dimension(format!(
                "{} values for a {}x{} relation",
                values.len(),
                source.len(),
                target.len()
            )));
        }
        Ok(QRelation {
            source,
            target,
            values,
        })
    }

    pub fn from_rows(source: Arc<FiniteSet>, target: Arc<FiniteSet>, rows: &[Vec<E>]) -> Result<Self, QRelError> {
        if rows.len() != source.len() || rows.iter().any(|r| r.len() != target.len()) {
            return Err(QRelError::Dimension(format!(
                "rows do not form a {}x{} matrix",
                source.len(),
                target.len()
            )));
        }
        Self::new(source, target, rows.concat())
    }

    pub fn from_fn(source: Arc<FiniteSet>, target: Arc<FiniteSet>, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let values = (0..source.len())
            .flat_map(|x| (0..target.len()).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        QRelation {
            source,
            target,
            values,
        }
    }

    pub fn source(&self) -> &Arc<FiniteSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSet> {
        &self.target
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> E {
        self.values[x * self.target.len() + y]
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        if self.target.is_empty() {
            return vec![Vec::new(); self.source.len()];
        }
        self.values.chunks(self.target.len()).map(<[E]>::to_vec).collect()
    }

    pub fn map(&self, f: impl Fn(E) -> E) -> Self {
        QRelation {
            source: self.source.clone(),
            target: self.target.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// The relation `target ↛ source` with `t(y, x) = f(r(x, y))`.
    pub fn transpose_with(&self, f: impl Fn(E) -> E) -> Self {
        let src = self.source.clone();
        QRelation::from_fn(self.target.clone(), src, |y, x| f(self.get(x, y)))
    }
}

fn same_shape<E: Copy>(f: &QRelation<E>, g: &QRelation<E>) -> Result<(), QRelError> {
    expect_same(&f.source, &g.source)?;
    expect_same(&f.target, &g.target)
}

fn zip_with<E: Copy>(f: &QRelation<E>, g: &QRelation<E>, op: impl Fn(E, E) -> E) -> Result<QRelation<E>, QRelError> {
    same_shape(f, g)?;
    Ok(QRelation {
        source: f.source.clone(),
        target: f.target.clone(),
        values: f.values.iter().zip(&g.values).map(|(&a, &b)| op(a, b)).collect(),
    })
}

/// `(f ⊗ g)(x, z) = ⋁_y f(x, y) ⊗ g(y, z)`.
pub fn compose_tensor<Q: Quantale>(
    q: &Q,
    f: &QRelation<Q::Elem>,
    g: &QRelation<Q::Elem>,
) -> Result<QRelation<Q::Elem>, QRelError> {
    expect_same(&f.target, &g.source)?;
    let inner = f.target.len();
    Ok(QRelation::from_fn(f.source.clone(), g.target.clone(), |x, z| {
        q.join_all((0..inner).map(|y| q.tensor(f.get(x, y), g.get(y, z))))
    }))
}

/// `(f ⊕ g)(x, z) = ⋀_y f(x, y) ⊕ g(y, z)`.
pub fn compose_par<Q: LinearQuantale>(
    q: &Q,
    f: &QRelation<Q::Elem>,
    g: &QRelation<Q::Elem>,
) -> Result<QRelation<Q::Elem>, QRelError> {
    expect_same(&f.target, &g.source)?;
    let inner = f.target.len();
    Ok(QRelation::from_fn(f.source.clone(), g.target.clone(), |x, z| {
        q.meet_all((0..inner).map(|y| q.par(f.get(x, y), g.get(y, z))))
    }))
}

/// `d` on the diagonal and `off` elsewhere.
pub fn diagonal<E: Copy>(set: &Arc<FiniteSet>, d: E, off: E) -> QRelation<E> {
    QRelation::from_fn(set.clone(), set.clone(), |x, y| if x == y { d } else { off })
}

/// The tensor identity: unit on the diagonal, bottom elsewhere.
pub fn id_top<Q: Quantale>(q: &Q, set: &Arc<FiniteSet>) -> QRelation<Q::Elem> {
    diagonal(set, q.unit(), q.bottom())
}

/// The par identity: par unit on the diagonal, top elsewhere.
pub fn id_bot<Q: LinearQuantale>(q: &Q, set: &Arc<FiniteSet>) -> QRelation<Q::Elem> {
    diagonal(set, q.par_unit(), q.top())
}

/// `d` on the diagonal and top elsewhere.
pub fn dual_family_dx<Q: Quantale>(q: &Q, set: &Arc<FiniteSet>, d: Q::Elem) -> QRelation<Q::Elem> {
    diagonal(set, d, q.top())
}

pub fn rel_leq<Q: Quantale>(q: &Q, f: &QRelation<Q::Elem>, g: &QRelation<Q::Elem>) -> Result<bool, QRelError> {
    same_shape(f, g)?;
    Ok(f.values.iter().zip(&g.values).all(|(&a, &b)| q.leq(a, b)))
}

pub fn rel_join<Q: Quantale>(q: &Q, f: &QRelation<Q::Elem>, g: &QRelation<Q::Elem>) -> Result<QRelation<Q::Elem>, QRelError> {
    zip_with(f, g, |a, b| q.join(a, b))
}

pub fn rel_meet<Q: Quantale>(q: &Q, f: &QRelation<Q::Elem>, g: &QRelation<Q::Elem>) -> Result<QRelation<Q::Elem>, QRelError> {
    zip_with(f, g, |a, b| q.meet(a, b))
}

/// For `f: X ↛ Y` and `h: X ↛ Z`, the largest `s: Y ↛ Z` with `f ⊗ s ≤ h`:
/// `s(y, z) = ⋀_x f(x, y) ⊸ h(x, z)`.
pub fn right_extension<Q: Quantale>(
    q: &Q,
    f: &QRelation<Q::Elem>,
    h: &QRelation<Q::Elem>,
) -> Result<QRelation<Q::Elem>, QRelError> {
    expect_same(&f.source, &h.source)?;
    let outer = f.source.len();
    Ok(QRelation::from_fn(f.target.clone(), h.target.clone(), |y, z| {
        q.meet_all((0..outer).map(|x| q.residual_right(f.get(x, y), h.get(x, z))))
    }))
}

/// For `h: Z ↛ Y` and `f: X ↛ Y`, the largest `s: Z ↛ X` with `s ⊗ f ≤ h`:
/// `s(z, x) = ⋀_y h(z, y) ⟜ f(x, y)`.
pub fn right_lifting<Q: Quantale>(
    q: &Q,
    h: &QRelation<Q::Elem>,
    f: &QRelation<Q::Elem>,
) -> Result<QRelation<Q::Elem>, QRelError> {
    expect_same(&h.target, &f.target)?;
    let inner = f.target.len();
    Ok(QRelation::from_fn(h.source.clone(), f.source.clone(), |z, x| {
        q.meet_all((0..inner).map(|y| q.residual_left(h.get(z, y), f.get(x, y))))
    }))
}

/// `r^⊥(y, x) = r(x, y) ⊸ d` for an arbitrary candidate `d`.
pub fn rel_dual_with<Q: Quantale>(q: &Q, r: &QRelation<Q::Elem>, d: Q::Elem) -> QRelation<Q::Elem> {
    r.transpose_with(|v| q.residual_right(v, d))
}

/// The linear adjoint of `r` over a Girard quantale.
pub fn rel_dual<Q: Quantale>(g: &GirardQuantale<Q>, r: &QRelation<Q::Elem>) -> QRelation<Q::Elem> {
    rel_dual_with(g.base(), r, g.dualizer())
}

/// `⊤_X ≤ A ⊕ B` and `B ⊗ A ≤ ⊥_Y` for `A: X ↛ Y`, `B: Y ↛ X`.
pub fn check_linear_adjoint<Q: LinearQuantale>(
    q: &Q,
    a: &QRelation<Q::Elem>,
    b: &QRelation<Q::Elem>,
) -> Result<bool, QRelError> {
    Ok(linear_adjoint_conditions(q, a, b)?.iter().all(|c| c.1))
}

/// The two adjunction inequalities by label: `lin-adj-unit` is
/// `1⊗ ≤ a ⊕ b` and `lin-adj-counit` is `b ⊗ a ≤ 1⊕`.
pub fn linear_adjoint_conditions<Q: LinearQuantale>(
    q: &Q,
    a: &QRelation<Q::Elem>,
    b: &QRelation<Q::Elem>,
) -> Result<Vec<(&'static str, bool)>, QRelError> {
    let unit = rel_leq(q, &id_top(q, &a.source), &compose_par(q, a, b)?)?;
    let counit = rel_leq(q, &compose_tensor(q, b, a)?, &id_bot(q, &a.target))?;
    Ok(vec![("lin-adj-unit", unit), ("lin-adj-counit", counit)])
}

/// Every relation `X ↛ Y` over a finite carrier, in lexicographic order.
pub fn all_relations<Q: Quantale>(q: &Q, source: &Arc<FiniteSet>, target: &Arc<FiniteSet>) -> Vec<QRelation<Q::Elem>> {
    let dom = q.domain(0);
    let k = source.len() * target.len();
    let total = dom.len().pow(k as u32);
    (0..total)
        .map(|i| relation_nth(&dom, source, target, i))
        .collect()
}

pub(crate) fn relation_nth<E: Copy>(dom: &[E], source: &Arc<FiniteSet>, target: &Arc<FiniteSet>, mut i: usize) -> QRelation<E> {
    let k = source.len() * target.len();
    let mut values = vec![dom[0]; k];
    for slot in values.iter_mut().rev() {
        *slot = dom[i % dom.len()];
        i /= dom.len();
    }
    QRelation {
        source: source.clone(),
        target: target.clone(),
        values,
    }
}

#[cfg(test)]
mod tests;
