use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::*;
use crate::quantaloid::hom_list;
use crate::verify::{girard_family_laws, linear_laws, run_suite, LawReport, Sampler};

/// Largest candidate space any enumeration here walks.
pub const DEFAULT_ENUM_CAP: usize = 1 << 17;

/// Calls `visit` on every choice of one element per slot, in lexicographic
/// order; each slot lists the elements of one hom.
fn for_each_choice<A: Clone>(slots: &[Vec<A>], cap: usize, mut visit: impl FnMut(&[A])) -> Result<(), QModError> {
    let total: u128 = slots.iter().map(|s| s.len() as u128).product();
    if total > cap as u128 {
        return Err(QModError::TooLarge(total, cap));
    }
    if total == 0 {
        return Ok(());
    }
    let mut idx = vec![0usize; slots.len()];
    let mut pick: Vec<A> = slots.iter().map(|s| s[0].clone()).collect();
    for _ in 0..total {
        visit(&pick);
        for k in (0..pick.len()).rev() {
            idx[k] += 1;
            if idx[k] < slots[k].len() {
                pick[k] = slots[k][idx[k]].clone();
                break;
            }
            idx[k] = 0;
            pick[k] = slots[k][0].clone();
        }
    }
    Ok(())
}

fn rho_choices<O: Clone>(objects: &[O], n: usize) -> Vec<Vec<O>> {
    let k = objects.len();
    (0..k.pow(n as u32))
        .map(|mut i| {
            let mut rho = Vec::with_capacity(n);
            for _ in 0..n {
                rho.push(objects[i % k].clone());
                i /= k;
            }
            rho.reverse();
            rho
        })
        .collect()
}

fn homs<B: Quantaloid>(q: &B, from: &[B::Object], to: &[B::Object]) -> Vec<Vec<B::Arrow>> {
    from.iter().flat_map(|a| to.iter().map(move |b| hom_list(q, a, b))).collect()
}

fn enumerate_categories<B: LinearQuantaloid>(
    q: &B,
    carrier: &Arc<FiniteSet>,
    linear: bool,
    cap: usize,
) -> Result<Vec<Cat<B>>, QModError> {
    let n = carrier.len();
    let mut out = Vec::new();
    for rho in rho_choices(&q.objects(), n) {
        let mut slots = homs(q, &rho, &rho);
        if linear {
            slots.extend(homs(q, &rho, &rho));
        }
        for_each_choice(&slots, cap, |pick| {
            let (t, p) = pick.split_at(n * n);
            let par = linear.then(|| p.to_vec());
            let m = QCategory::from_parts(carrier.clone(), rho.clone(), t.to_vec(), par).expect("sized by construction");
            if is_valid_qcategory(q, &m) {
                out.push(m);
            }
        })?;
    }
    Ok(out)
}

/// Every Q-category on `carrier`, over every assignment `ρ`, with entries
/// drawn from the enumerable part of each hom.
pub fn all_qcategories<B: LinearQuantaloid>(q: &B, carrier: &Arc<FiniteSet>, cap: usize) -> Result<Vec<Cat<B>>, QModError> {
    enumerate_categories(q, carrier, false, cap)
}

/// Every linear Q-category on `carrier`.
pub fn all_linear_qcategories<B: LinearQuantaloid>(
    q: &B,
    carrier: &Arc<FiniteSet>,
    cap: usize,
) -> Result<Vec<Cat<B>>, QModError> {
    if !q.has_par() {
        return Err(QuantaloidError::NoParLayer.into());
    }
    enumerate_categories(q, carrier, true, cap)
}

fn enumerate_bimodules<B: LinearQuantaloid>(
    q: &B,
    m: &Arc<Cat<B>>,
    n: &Arc<Cat<B>>,
    linear: bool,
    cap: usize,
) -> Result<Vec<Bim<B>>, QModError> {
    let mut slots = homs(q, m.rhos(), n.rhos());
    let k = slots.len();
    if linear {
        slots.extend(homs(q, n.rhos(), m.rhos()));
    }
    let mut out = Vec::new();
    for_each_choice(&slots, cap, |pick| {
        let (t, p) = pick.split_at(k);
        let b = QBimodule::raw(m.clone(), n.clone(), t.to_vec(), linear.then(|| p.to_vec()));
        if is_valid_qbimodule(q, &b) {
            out.push(b);
        }
    })?;
    Ok(out)
}

/// Every plain bimodule `M → N`.
pub fn all_bimodules<B: LinearQuantaloid>(
    q: &B,
    m: &Arc<Cat<B>>,
    n: &Arc<Cat<B>>,
    cap: usize,
) -> Result<Vec<Bim<B>>, QModError> {
    enumerate_bimodules(q, &Arc::new(m.plain()), &Arc::new(n.plain()), false, cap)
}

/// Every linear bimodule `M → N` between linear categories.
pub fn all_linear_bimodules<B: LinearQuantaloid>(
    q: &B,
    m: &Arc<Cat<B>>,
    n: &Arc<Cat<B>>,
    cap: usize,
) -> Result<Vec<Bim<B>>, QModError> {
    if !m.is_linear() || !n.is_linear() {
        return Err(QModError::NoParData("linear bimodules need linear categories".into()));
    }
    if !q.has_par() {
        return Err(QuantaloidError::NoParLayer.into());
    }
    enumerate_bimodules(q, m, n, true, cap)
}

/// Keeps categories in order, skipping any whose homs to or from the kept
/// ones (or itself) would be empty or too large to enumerate.
fn materialize<B: LinearQuantaloid>(
    q: &B,
    candidates: Vec<Arc<Cat<B>>>,
    max_objects: usize,
    cap: usize,
    linear: bool,
) -> (Vec<Arc<Cat<B>>>, Vec<Vec<Bim<B>>>) {
    let mut cats: Vec<Arc<Cat<B>>> = Vec::new();
    let mut table: Vec<((usize, usize), Vec<Bim<B>>)> = Vec::new();
    for cand in candidates {
        if cats.len() >= max_objects {
            break;
        }
        let j = cats.len();
        let mut fresh = Vec::new();
        let mut ok = true;
        for i in 0..=j {
            let other = if i == j { &cand } else { &cats[i] };
            let pairs = if i == j { vec![(j, j)] } else { vec![(i, j), (j, i)] };
            for (s, t) in pairs {
                let (a, b) = if s == i { (other, &cand) } else { (&cand, other) };
                match enumerate_bimodules(q, a, b, linear, cap) {
                    Ok(hom) if !hom.is_empty() => fresh.push(((s, t), hom)),
                    _ => ok = false,
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            cats.push(cand);
            table.extend(fresh);
        }
    }
    let k = cats.len();
    let mut homs: Vec<Vec<Bim<B>>> = (0..k * k).map(|_| Vec::new()).collect();
    for ((s, t), hom) in table {
        homs[s * k + t] = hom;
    }
    (cats, homs)
}

fn hom_of<'a, O: PartialEq, A: PartialEq>(
    cats: &[Arc<QCategory<O, A>>],
    homs: &'a [Vec<QBimodule<O, A>>],
    m: &Arc<QCategory<O, A>>,
    n: &Arc<QCategory<O, A>>,
) -> &'a [QBimodule<O, A>] {
    let pos = |c: &Arc<QCategory<O, A>>| {
        cats.iter()
            .position(|d| Arc::ptr_eq(d, c) || d == c)
            .expect("category belongs to the view")
    };
    &homs[pos(m) * cats.len() + pos(n)]
}

fn map_entries<O: Clone, A: Clone>(
    f: &QBimodule<O, A>,
    g: &QBimodule<O, A>,
    tensor: impl Fn(&A, &A) -> A,
    par: impl Fn(&A, &A) -> A,
) -> QBimodule<O, A> {
    let t = f.tensor_entries().iter().zip(g.tensor_entries()).map(|(a, b)| tensor(a, b)).collect();
    let p = match (f.par_entries(), g.par_entries()) {
        (Some(fp), Some(gp)) => Some(fp.iter().zip(gp).map(|(a, b)| par(a, b)).collect()),
        _ => None,
    };
    QBimodule::raw(f.source().clone(), f.target().clone(), t, p)
}

fn constant<B: Quantaloid>(q: &B, m: &Arc<Cat<B>>, n: &Arc<Cat<B>>, low: bool, linear: bool) -> Bim<B> {
    let pick = |a: &B::Object, b: &B::Object, low: bool| if low { q.bottom(a, b) } else { q.top(a, b) };
    let t = m.rhos().iter().flat_map(|a| n.rhos().iter().map(move |b| pick(a, b, low))).collect();
    let p = linear.then(|| n.rhos().iter().flat_map(|b| m.rhos().iter().map(move |a| pick(b, a, !low))).collect());
    QBimodule::raw(m.clone(), n.clone(), t, p)
}

/// Bimodules of the same hom that lie strictly below `f` in the mixed
/// order and differ from it in exactly one entry.
fn shrink_bimodule<B: Quantaloid>(q: &B, hom: &[Bim<B>], f: &Bim<B>) -> Vec<Bim<B>> {
    let entries = |b: &Bim<B>| -> Vec<B::Arrow> {
        let mut v = b.tensor_entries().to_vec();
        v.extend(b.par_entries().into_iter().flatten().cloned());
        v
    };
    let fe = entries(f);
    hom.iter()
        .filter(|g| {
            let ge = entries(g);
            ge.iter().zip(&fe).filter(|(a, b)| a != b).count() == 1 && bimodule_leq(q, g, f)
        })
        .cloned()
        .collect()
}

/// Q-Mod restricted to a list of Q-categories, with every bimodule between
/// them; par data on the inputs is dropped.
pub struct QModView<'q, B: Quantaloid> {
    q: &'q B,
    cats: Vec<Arc<Cat<B>>>,
    homs: Vec<Vec<Bim<B>>>,
}

impl<'q, B> QModView<'q, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    pub fn new(q: &'q B, candidates: &[Cat<B>], max_objects: usize, cap: usize) -> Self {
        let plain = candidates.iter().map(|m| Arc::new(m.plain())).collect();
        let (cats, homs) = materialize(q, plain, max_objects, cap, false);
        QModView { q, cats, homs }
    }

    pub fn quantaloid(&self) -> &B {
        self.q
    }

    pub fn categories(&self) -> &[Arc<Cat<B>>] {
        &self.cats
    }

    pub fn bimodules(&self, m: &Arc<Cat<B>>, n: &Arc<Cat<B>>) -> &[Bim<B>] {
        hom_of(&self.cats, &self.homs, m, n)
    }
}

impl<B> Quantaloid for QModView<'_, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    type Object = Arc<Cat<B>>;
    type Arrow = Bim<B>;

    fn objects(&self) -> Vec<Arc<Cat<B>>> {
        self.cats.clone()
    }
    fn hom_size(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>, cap: usize) -> Option<usize> {
        Some(self.bimodules(a, b).len()).filter(|&n| n <= cap)
    }
    fn hom_nth(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>, i: usize) -> Bim<B> {
        self.bimodules(a, b)[i].clone()
    }
    fn random_arrow(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>, rng: &mut ChaCha8Rng, _window: i64) -> Bim<B> {
        let hom = self.bimodules(a, b);
        hom[rng.gen_range(0..hom.len())].clone()
    }
    fn leq(&self, f: &Bim<B>, g: &Bim<B>) -> bool {
        bimodule_leq(self.q, f, g)
    }
    fn join(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        map_entries(f, g, |a, b| self.q.join(a, b), |a, b| self.q.meet(a, b))
    }
    fn meet(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        map_entries(f, g, |a, b| self.q.meet(a, b), |a, b| self.q.join(a, b))
    }
    fn bottom(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>) -> Bim<B> {
        constant(self.q, a, b, true, false)
    }
    fn top(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>) -> Bim<B> {
        constant(self.q, a, b, false, false)
    }
    fn tensor(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        qmod_compose_tensor(self.q, f, g).expect("composable")
    }
    fn unit(&self, a: &Arc<Cat<B>>) -> Bim<B> {
        iota(a)
    }
    fn encode_object(&self, a: &Arc<Cat<B>>) -> Value {
        a.encode(self.q)
    }
    fn encode_arrow(&self, f: &Bim<B>) -> Value {
        f.encode(self.q)
    }
    fn shrink_arrow(&self, f: &Bim<B>) -> Vec<Bim<B>> {
        shrink_bimodule(self.q, self.bimodules(f.source(), f.target()), f)
    }
}

/// `(Θ ⊸ Φ)(y, z) = ⋀_x Θ(x, y) ⊸ Φ(x, z)` and
/// `(Φ ⟜ Θ)(z, x) = ⋀_y Φ(z, y) ⟜ Θ(x, y)`.
impl<B> Residuated for QModView<'_, B>
where
    B: LinearQuantaloid + Residuated,
    B::Object: PartialEq,
{
    fn residual_right(&self, f: &Bim<B>, h: &Bim<B>) -> Bim<B> {
        let q = self.q;
        let (m, n, p) = (f.source(), f.target(), h.target());
        let t = grid(n, p, |y, z| {
            meet_all(q, &n.rho(y), &p.rho(z), (0..m.len()).map(|x| q.residual_right(&f.get(x, y), &h.get(x, z))))
        });
        QBimodule::raw(n.clone(), p.clone(), t, None)
    }
    fn residual_left(&self, h: &Bim<B>, f: &Bim<B>) -> Bim<B> {
        let q = self.q;
        let (p, n, m) = (h.source(), h.target(), f.source());
        let t = grid(p, m, |z, x| {
            meet_all(q, &p.rho(z), &m.rho(x), (0..n.len()).map(|y| q.residual_left(&h.get(z, y), &f.get(x, y))))
        });
        QBimodule::raw(p.clone(), m.clone(), t, None)
    }
}

/// Linear Q-Mod restricted to a list of linear Q-categories, compared in
/// the mixed order.
pub struct LinearQModView<'q, B: Quantaloid> {
    q: &'q B,
    cats: Vec<Arc<Cat<B>>>,
    homs: Vec<Vec<Bim<B>>>,
}

impl<'q, B> LinearQModView<'q, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    pub fn new(q: &'q B, candidates: &[Cat<B>], max_objects: usize, cap: usize) -> Result<Self, QModError> {
        if !q.has_par() {
            return Err(QuantaloidError::NoParLayer.into());
        }
        if candidates.iter().any(|m| !m.is_linear()) {
            return Err(QModError::NoParData("linear Q-Mod needs linear categories".into()));
        }
        let linear = candidates.iter().cloned().map(Arc::new).collect();
        let (cats, homs) = materialize(q, linear, max_objects, cap, true);
        Ok(LinearQModView { q, cats, homs })
    }

    pub fn quantaloid(&self) -> &B {
        self.q
    }

    pub fn categories(&self) -> &[Arc<Cat<B>>] {
        &self.cats
    }

    pub fn bimodules(&self, m: &Arc<Cat<B>>, n: &Arc<Cat<B>>) -> &[Bim<B>] {
        hom_of(&self.cats, &self.homs, m, n)
    }
}

impl<B> Quantaloid for LinearQModView<'_, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    type Object = Arc<Cat<B>>;
    type Arrow = Bim<B>;

    fn objects(&self) -> Vec<Arc<Cat<B>>> {
        self.cats.clone()
    }
    fn hom_size(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>, cap: usize) -> Option<usize> {
        Some(self.bimodules(a, b).len()).filter(|&n| n <= cap)
    }
    fn hom_nth(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>, i: usize) -> Bim<B> {
        self.bimodules(a, b)[i].clone()
    }
    fn random_arrow(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>, rng: &mut ChaCha8Rng, _window: i64) -> Bim<B> {
        let hom = self.bimodules(a, b);
        hom[rng.gen_range(0..hom.len())].clone()
    }
    fn leq(&self, f: &Bim<B>, g: &Bim<B>) -> bool {
        bimodule_leq(self.q, f, g)
    }
    fn join(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        map_entries(f, g, |a, b| self.q.join(a, b), |a, b| self.q.meet(a, b))
    }
    fn meet(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        map_entries(f, g, |a, b| self.q.meet(a, b), |a, b| self.q.join(a, b))
    }
    fn bottom(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>) -> Bim<B> {
        constant(self.q, a, b, true, true)
    }
    fn top(&self, a: &Arc<Cat<B>>, b: &Arc<Cat<B>>) -> Bim<B> {
        constant(self.q, a, b, false, true)
    }
    fn tensor(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        qmod_compose_tensor(self.q, f, g).expect("composable")
    }
    fn unit(&self, a: &Arc<Cat<B>>) -> Bim<B> {
        iota(a)
    }
    fn encode_object(&self, a: &Arc<Cat<B>>) -> Value {
        a.encode(self.q)
    }
    fn encode_arrow(&self, f: &Bim<B>) -> Value {
        f.encode(self.q)
    }
    fn shrink_arrow(&self, f: &Bim<B>) -> Vec<Bim<B>> {
        shrink_bimodule(self.q, self.bimodules(f.source(), f.target()), f)
    }
}

impl<B> LinearQuantaloid for LinearQModView<'_, B>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    fn par(&self, f: &Bim<B>, g: &Bim<B>) -> Bim<B> {
        qmod_compose_par(self.q, f, g).expect("composable")
    }
    fn par_unit(&self, a: &Arc<Cat<B>>) -> Bim<B> {
        delta_linear(a).expect("linear category")
    }
}

/// Cyclicity and involutivity of `δ_M(x, x') = M(x', x) ⊸ d_{ρx'}` in Q-Mod
/// restricted to `categories`. A family that is not Girard on the base is
/// not rejected: the report shows where it fails.
pub fn check_girard_qmod(
    q: &FiniteQuantaloid,
    family: &[Morphism],
    categories: &[QCategory],
    max_objects: usize,
    sampler: &Sampler,
) -> Result<LawReport, QModError> {
    if family.len() != q.len() || family.iter().enumerate().any(|(a, d)| d.src != a || d.tgt != a) {
        return Err(QuantaloidError::FamilyShape("one endo-1-cell per object, in object order".into()).into());
    }
    let fam = family.to_vec();
    Ok(check_girard_qmod_with(q, move |a: &usize| fam[*a], categories, max_objects, sampler))
}

/// [`check_girard_qmod`] over any residuated base, with the family given as
/// a function of the object.
pub fn check_girard_qmod_with<B, F>(
    q: &B,
    family: F,
    categories: &[Cat<B>],
    max_objects: usize,
    sampler: &Sampler,
) -> LawReport
where
    B: LinearQuantaloid + Residuated,
    B::Object: PartialEq,
    F: Fn(&B::Object) -> B::Arrow + Clone + Send + Sync + 'static,
{
    let view = QModView::new(q, categories, max_objects, DEFAULT_ENUM_CAP);
    let laws = girard_family_laws(move |v: &QModView<'_, B>, m: &Arc<Cat<B>>| delta_with(v.quantaloid(), m, &family));
    run_suite("girard-qmod", &view, &laws, sampler)
}

/// The linear-quantaloid suite on linear Q-Mod restricted to `categories`.
pub fn verify_linear_qmod_laws<B>(
    q: &B,
    categories: &[Cat<B>],
    max_objects: usize,
    sampler: &Sampler,
) -> Result<LawReport, QModError>
where
    B: LinearQuantaloid,
    B::Object: PartialEq,
{
    let view = LinearQModView::new(q, categories, max_objects, DEFAULT_ENUM_CAP)?;
    Ok(run_suite("linear-qmod", &view, &linear_laws(), sampler))
}
