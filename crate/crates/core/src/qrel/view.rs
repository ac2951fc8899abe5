use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::*;
use crate::verify::{
    girard_family_laws, linear_laws, run_suite, LawReport, LinearQuantaloid, Quantaloid, Residuated, Sampler,
};

/// Q-Rel restricted to a fixed list of finite sets.
pub struct QRelView<'q, Q: Quantale> {
    q: &'q Q,
    sets: Vec<Arc<FiniteSet>>,
    domain: Vec<Q::Elem>,
}

impl<'q, Q: Quantale> QRelView<'q, Q> {
    /// Sets `{x0}`, `{x0, x1}`, ... up to `max_set` members.
    pub fn new(q: &'q Q, max_set: usize, window: i64) -> Self {
        let sets = (1..=max_set)
            .map(|n| Arc::new(FiniteSet::indexed(&format!("X{n}"), n)))
            .collect();
        Self::with_sets(q, sets, window)
    }

    pub fn with_sets(q: &'q Q, sets: Vec<Arc<FiniteSet>>, window: i64) -> Self {
        QRelView {
            q,
            sets,
            domain: q.domain(window),
        }
    }

    pub fn quantale(&self) -> &Q {
        self.q
    }

    pub fn sets(&self) -> &[Arc<FiniteSet>] {
        &self.sets
    }

    /// The 1x1 relation on `set` (a singleton) holding `a`.
    pub fn singleton(&self, set: &Arc<FiniteSet>, a: Q::Elem) -> QRelation<Q::Elem> {
        QRelation::from_fn(set.clone(), set.clone(), |_, _| a)
    }
}

fn drop_member<E: Copy>(r: &QRelation<E>, old: &Arc<FiniteSet>, new: &Arc<FiniteSet>, k: usize) -> QRelation<E> {
    let hit_src = Arc::ptr_eq(r.source(), old);
    let hit_tgt = Arc::ptr_eq(r.target(), old);
    let src = if hit_src { new.clone() } else { r.source().clone() };
    let tgt = if hit_tgt { new.clone() } else { r.target().clone() };
    QRelation::from_fn(src, tgt, |x, y| {
        let x = if hit_src && x >= k { x + 1 } else { x };
        let y = if hit_tgt && y >= k { y + 1 } else { y };
        r.get(x, y)
    })
}

impl<Q: Quantale> Quantaloid for QRelView<'_, Q> {
    type Object = Arc<FiniteSet>;
    type Arrow = QRelation<Q::Elem>;

    fn objects(&self) -> Vec<Arc<FiniteSet>> {
        self.sets.clone()
    }

    fn hom_size(&self, a: &Arc<FiniteSet>, b: &Arc<FiniteSet>, cap: usize) -> Option<usize> {
        if !self.q.is_finite() {
            return None;
        }
        self.domain
            .len()
            .checked_pow((a.len() * b.len()) as u32)
            .filter(|&n| n <= cap)
    }

    fn hom_nth(&self, a: &Arc<FiniteSet>, b: &Arc<FiniteSet>, i: usize) -> Self::Arrow {
        relation_nth(&self.domain, a, b, i)
    }

    fn random_arrow(&self, a: &Arc<FiniteSet>, b: &Arc<FiniteSet>, rng: &mut ChaCha8Rng, window: i64) -> Self::Arrow {
        QRelation::from_fn(a.clone(), b.clone(), |_, _| self.q.random_elem(rng, window))
    }

    fn leq(&self, f: &Self::Arrow, g: &Self::Arrow) -> bool {
        rel_leq(self.q, f, g).expect("same hom")
    }
    fn join(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        rel_join(self.q, f, g).expect("same hom")
    }
    fn meet(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        rel_meet(self.q, f, g).expect("same hom")
    }
    fn bottom(&self, a: &Arc<FiniteSet>, b: &Arc<FiniteSet>) -> Self::Arrow {
        QRelation::from_fn(a.clone(), b.clone(), |_, _| self.q.bottom())
    }
    fn top(&self, a: &Arc<FiniteSet>, b: &Arc<FiniteSet>) -> Self::Arrow {
        QRelation::from_fn(a.clone(), b.clone(), |_, _| self.q.top())
    }
    fn tensor(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        compose_tensor(self.q, f, g).expect("composable")
    }
    fn unit(&self, a: &Arc<FiniteSet>) -> Self::Arrow {
        id_top(self.q, a)
    }

    fn encode_object(&self, a: &Arc<FiniteSet>) -> Value {
        json!({"name": a.name(), "members": a.members()})
    }

    fn encode_arrow(&self, f: &Self::Arrow) -> Value {
        let rows: Vec<Value> = f
            .rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(|e| self.q.encode(e)).collect()))
            .collect();
        Value::Array(rows)
    }

    /// Deletes one member of one set (in every arrow touching that set),
    /// then moves single entries down.
    fn shrink(&self, objects: &[Arc<FiniteSet>], arrows: &[Self::Arrow]) -> Vec<(Vec<Arc<FiniteSet>>, Vec<Self::Arrow>)> {
        let mut out = Vec::new();
        for (i, set) in objects.iter().enumerate() {
            if objects[..i].iter().any(|o| Arc::ptr_eq(o, set)) || set.len() <= 1 {
                continue;
            }
            for k in 0..set.len() {
                let smaller = Arc::new(set.without(k));
                let objs = objects
                    .iter()
                    .map(|o| if Arc::ptr_eq(o, set) { smaller.clone() } else { o.clone() })
                    .collect();
                let arrs = arrows.iter().map(|r| drop_member(r, set, &smaller, k)).collect();
                out.push((objs, arrs));
            }
        }
        for (i, r) in arrows.iter().enumerate() {
            for (slot, &v) in r.values().iter().enumerate() {
                for c in self.q.shrink_elem(v) {
                    let mut values = r.values().to_vec();
                    values[slot] = c;
                    let mut next = arrows.to_vec();
                    next[i] = QRelation::new(r.source().clone(), r.target().clone(), values).expect("same shape");
                    out.push((objects.to_vec(), next));
                }
            }
        }
        out
    }
}

impl<Q: LinearQuantale> LinearQuantaloid for QRelView<'_, Q> {
    fn par(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        compose_par(self.q, f, g).expect("composable")
    }
    fn par_unit(&self, a: &Arc<FiniteSet>) -> Self::Arrow {
        id_bot(self.q, a)
    }
}

impl<Q: Quantale> Residuated for QRelView<'_, Q> {
    fn residual_right(&self, f: &Self::Arrow, h: &Self::Arrow) -> Self::Arrow {
        right_extension(self.q, f, h).expect("common source")
    }
    fn residual_left(&self, h: &Self::Arrow, f: &Self::Arrow) -> Self::Arrow {
        right_lifting(self.q, h, f).expect("common target")
    }
}

/// The linear-quantaloid suite (both compositions, their lattice laws and
/// both distributions) on relations between sets of size `1..=max_set`.
pub fn verify_qrel_laws<Q: LinearQuantale>(q: &Q, max_set: usize, sampler: &Sampler) -> LawReport {
    let view = QRelView::new(q, max_set, sampler.window);
    run_suite("qrel", &view, &linear_laws(), sampler)
}

/// Cyclicity and involutivity of the family `d_X` (`d` on the diagonal, top
/// elsewhere) against every sampled relation.
pub fn check_girard_qrel<Q>(q: &Q, d: Q::Elem, max_set: usize, sampler: &Sampler) -> LawReport
where
    Q: Quantale,
    Q::Elem: 'static,
{
    let view = QRelView::new(q, max_set, sampler.window);
    let laws = girard_family_laws(move |v: &QRelView<'_, Q>, x: &Arc<FiniteSet>| dual_family_dx(v.quantale(), x, d));
    run_suite("girard-qrel", &view, &laws, sampler)
}
