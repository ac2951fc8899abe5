use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::catalog::{catalog_entry, CatalogEntry, Structure};
use super::engine::{find_counterexample, run_suite, shrink_counterexample, Law, Quantaloid, Sampler};
use super::laws::{girard_family_laws, linear_laws};
use super::report::{Entry, LawReport};
use super::single::QuantaleView;
use crate::qmod::{
    all_qcategories, check_qmod_linear_adjoint, delta_with, is_valid_qbimodule, is_valid_qcategory, linear_adjoint_with,
    LinearQModView, QBimodule, QCategory, QModView, DEFAULT_ENUM_CAP,
};
use crate::qrel::{check_linear_adjoint, dual_family_dx, rel_dual_with, FiniteSet, QRelView, QRelation};
use crate::quantale::{LinearQuantale, Quantale};
use crate::quantaloid::{
    all_linear_monads, all_monads, linear_monad_bimodule_conditions, linear_monad_conditions, monad_bimodule_conditions,
    monad_conditions, transfer_bimodule, LinearMonQView, LinearMonad, MonQView, Monad, MonadBimodule,
};
use crate::verify::{LinearQuantaloid, Residuated};

/// Every driver id accepted by [`run_theorem`].
pub const THEOREMS: &[&str] = &[
    "ldq",
    "girard-qrel",
    "girard-qmod",
    "girard-monq",
    "linear-qmod",
    "linear-monq",
    "closed-qrel",
    "closed-qmod",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("`{0}` is not an element of the entry")]
    BadDualizer(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremConfig {
    pub sampler: Sampler,
    /// Largest set size in Q-Rel.
    pub max_set: usize,
    /// Most objects kept in a Mon Q or Q-Mod fragment.
    pub max_objects: usize,
    /// Restricts the Girard drivers to one dualizer candidate.
    pub dualizer: Option<String>,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        TheoremConfig {
            sampler: Sampler::exhaustive(),
            max_set: 2,
            max_objects: 4,
            dualizer: None,
        }
    }
}

fn squash(id: &str) -> String {
    id.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Matches ids ignoring case and separators, so `GirardQRel` is `girard-qrel`.
pub fn canonical_theorem_id(id: &str) -> Option<&'static str> {
    let key = squash(id);
    THEOREMS.iter().copied().find(|t| squash(t) == key)
}

/// Runs driver `id` on the named catalog entry.
pub fn run_theorem(id: &str, entry: &str, config: &TheoremConfig) -> Result<LawReport, TheoremError> {
    let id = canonical_theorem_id(id).ok_or_else(|| TheoremError::UnknownTheorem(id.to_string()))?;
    let entry = catalog_entry(entry).ok_or_else(|| TheoremError::UnknownEntry(entry.to_string()))?;
    run_theorem_on(id, entry, config)
}

/// Runs driver `id` on a catalog entry already looked up.
pub fn run_theorem_on(id: &str, entry: &CatalogEntry, config: &TheoremConfig) -> Result<LawReport, TheoremError> {
    let id = canonical_theorem_id(id).ok_or_else(|| TheoremError::UnknownTheorem(id.to_string()))?;
    let suite = format!("{id}:{}", entry.name);
    match &entry.structure {
        Structure::Table(t) => drive(id, suite, t, config),
        Structure::ZInf(z) => drive(id, suite, z, config),
    }
}

fn drive<Q>(id: &str, suite: String, q: &Q, config: &TheoremConfig) -> Result<LawReport, TheoremError>
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let mut report = LawReport::new(suite);
    match id {
        "ldq" => ldq(&mut report, q, config),
        "linear-monq" => linear_monq(&mut report, q, config),
        "linear-qmod" => linear_qmod(&mut report, q, config),
        "girard-qrel" | "girard-qmod" | "girard-monq" => {
            let mut verdicts = Vec::new();
            for d in dualizer_candidates(q, config)? {
                let prefix = format!("d={}/", q.render(d));
                let v = match id {
                    "girard-qrel" => girard_qrel(&mut report, &prefix, q, d, config),
                    "girard-qmod" => girard_qmod(&mut report, &prefix, q, d, config),
                    _ => girard_monq(&mut report, &prefix, q, d, config),
                };
                verdicts.push(v);
            }
            push_overall(&mut report, &verdicts, true);
        }
        "closed-qrel" | "closed-qmod" => {
            let mut verdicts = Vec::new();
            let exists = partner_search(q, config);
            let exists_ok = exists.passed();
            report.push(exists);
            for d in dualizer_candidates(q, config)? {
                let prefix = format!("d={}/", q.render(d));
                let (lhs_ok, rhs_ok) = if id == "closed-qrel" {
                    closed_qrel(&mut report, &prefix, q, d, config)
                } else {
                    closed_qmod(&mut report, &prefix, q, d, config)
                };
                let rhs_ok = rhs_ok && exists_ok;
                report.push(implication(&format!("{prefix}implies-forward"), lhs_ok, rhs_ok));
                verdicts.push((lhs_ok, rhs_ok));
            }
            push_overall(&mut report, &verdicts, false);
        }
        _ => return Err(TheoremError::UnknownTheorem(id.to_string())),
    }
    Ok(report)
}

/// The configured dualizer, or every element of a finite entry, or the
/// tensor unit of an infinite one.
fn dualizer_candidates<Q: Quantale>(q: &Q, config: &TheoremConfig) -> Result<Vec<Q::Elem>, TheoremError> {
    match &config.dualizer {
        Some(s) => {
            let as_string = q.decode(&Value::String(s.clone()));
            let as_number = s.trim().parse::<i64>().ok().map(|n| q.decode(&json!(n)));
            match (as_string, as_number) {
                (Ok(d), _) | (_, Some(Ok(d))) => Ok(vec![d]),
                _ => Err(TheoremError::BadDualizer(s.clone())),
            }
        }
        None if q.is_finite() => Ok(q.domain(0)),
        None => Ok(vec![q.unit()]),
    }
}

fn implication(law: &str, premise: bool, conclusion: bool) -> Entry {
    let mut w = Map::new();
    w.insert("premise".into(), Value::Bool(premise));
    w.insert("conclusion".into(), Value::Bool(conclusion));
    Entry::verdict(law, !premise || conclusion, "implication", w)
}

/// Pushes both directions of `lhs ⇔ rhs` under `prefix`.
fn push_biconditional(report: &mut LawReport, prefix: &str, lhs_ok: bool, rhs_ok: bool) {
    report.push(implication(&format!("{prefix}implies-forward"), lhs_ok, rhs_ok));
    report.push(implication(&format!("{prefix}implies-backward"), rhs_ok, lhs_ok));
}

/// Aggregates per-dualizer verdicts: each direction holds iff it holds for
/// every candidate.
fn push_overall(report: &mut LawReport, verdicts: &[(bool, bool)], backward: bool) {
    let fwd = verdicts.iter().all(|&(l, r)| !l || r);
    let mut w = Map::new();
    w.insert("candidates".into(), json!(verdicts.len()));
    report.push(Entry::verdict("implies-forward", fwd, "all candidates", w.clone()));
    if backward {
        let bwd = verdicts.iter().all(|&(l, r)| !r || l);
        report.push(Entry::verdict("implies-backward", bwd, "all candidates", w));
    }
}

/// Files the two sides and the transfers, then both implications.
/// The right side fails if any of its laws or any transfer fails.
fn assemble(report: &mut LawReport, prefix: &str, lhs: LawReport, rhs: LawReport, transfers: Vec<Entry>) -> (bool, bool) {
    let lhs_ok = lhs.passed();
    let rhs_ok = rhs.passed() && transfers.iter().all(Entry::passed);
    report.absorb(&format!("{prefix}lhs"), lhs);
    report.absorb(&format!("{prefix}rhs"), rhs);
    for mut t in transfers {
        t.law = format!("{prefix}{}", t.law);
        report.push(t);
    }
    push_biconditional(report, prefix, lhs_ok, rhs_ok);
    (lhs_ok, rhs_ok)
}

/// Re-finds the shrunk counterexample of every failing left law, embeds it
/// into the right structure and evaluates the same-named law there. A
/// transfer entry fails when the embedding is valid and the right law fails
/// on it.
#[allow(clippy::too_many_arguments)]
fn transfers<V1, V2>(
    lhs: &V1,
    lhs_laws: &[Law<V1>],
    lhs_report: &LawReport,
    rhs: &V2,
    rhs_laws: &[Law<V2>],
    sampler: &Sampler,
    embed_object: impl Fn(&V1::Object) -> V2::Object,
    embed_arrow: impl Fn(&V2::Object, &V2::Object, &V1::Arrow) -> (V2::Arrow, bool),
) -> Vec<Entry>
where
    V1: Quantaloid,
    V2: Quantaloid,
{
    let mut out = Vec::new();
    for failed in lhs_report.failures() {
        let Some(law) = lhs_laws.iter().find(|l| l.name == failed.law) else {
            continue;
        };
        let Some(target) = rhs_laws.iter().find(|l| l.name == failed.law) else {
            continue;
        };
        let (Some(cx), _) = find_counterexample(lhs, law, sampler) else {
            continue;
        };
        let cx = shrink_counterexample(lhs, law, cx);
        let objects: Vec<V2::Object> = cx.objects.iter().map(&embed_object).collect();
        let mut valid = true;
        let arrows: Vec<V2::Arrow> = law
            .arrows
            .iter()
            .zip(&cx.arrows)
            .map(|(&(_, s, t), f)| {
                let (g, ok) = embed_arrow(&objects[s], &objects[t], f);
                valid &= ok;
                g
            })
            .collect();
        let holds = target.evaluate(rhs, &objects, &arrows);
        let mut w = Map::new();
        w.insert("source".into(), Value::Object(law.witness(lhs, &cx.objects, &cx.arrows)));
        w.insert("embedded".into(), Value::Object(target.witness(rhs, &objects, &arrows)));
        w.insert("embedding_valid".into(), Value::Bool(valid));
        let reproduced = valid && !holds;
        let mode = if reproduced {
            "transfer"
        } else if valid {
            "transfer (not reproduced)"
        } else {
            "transfer (embedding invalid)"
        };
        out.push(Entry::verdict(format!("transfer/{}", law.name), !reproduced, mode, w));
    }
    out
}

fn point_relation<E: Copy>(a: &Arc<FiniteSet>, b: &Arc<FiniteSet>, e: E) -> (QRelation<E>, bool) {
    (QRelation::from_fn(a.clone(), b.clone(), |_, _| e), true)
}

fn ldq<Q>(report: &mut LawReport, q: &Q, config: &TheoremConfig)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let ll = linear_laws();
    let lhs = run_suite("ld-quantale", &lv, &ll, s);
    let rv = QRelView::new(q, config.max_set.max(1), s.window);
    let rl = linear_laws();
    let rhs = run_suite("qrel", &rv, &rl, s);
    let x = rv.sets()[0].clone();
    let tr = transfers(&lv, &ll, &lhs, &rv, &rl, s, |_| x.clone(), |a, b, e| point_relation(a, b, *e));
    assemble(report, "", lhs, rhs, tr);
}

fn linear_monq<Q>(report: &mut LawReport, q: &Q, config: &TheoremConfig)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let ll = linear_laws();
    let lhs = run_suite("ld-quantale", &lv, &ll, s);
    let rv = LinearMonQView::new(&lv, &all_linear_monads(&lv), config.max_objects);
    let rl = linear_laws();
    let rhs = run_suite("linear-monq", &rv, &rl, s);
    let trivial = LinearMonad::trivial(&lv, &());
    let trivial_ok = linear_monad_conditions(&lv, &trivial).iter().all(|c| c.1);
    let tr = transfers(
        &lv,
        &ll,
        &lhs,
        &rv,
        &rl,
        s,
        |_| trivial,
        |_, _, f| {
            let b = transfer_bimodule(&lv, &(), &(), f);
            let ok = trivial_ok && linear_monad_bimodule_conditions(&lv, &b).iter().all(|c| c.1);
            (b, ok)
        },
    );
    assemble(report, "", lhs, rhs, tr);
}

/// Bimodule composites cost a join over members per entry, so exhaustive
/// enumeration stops at smaller tuple spaces and samples beyond them.
pub const BIMODULE_TUPLE_CAP: usize = 1 << 12;

fn bimodule_sampler(s: &Sampler) -> Sampler {
    s.with_tuple_cap(s.tuple_cap.min(BIMODULE_TUPLE_CAP))
}

type ViewCat<Q> = QCategory<(), <Q as crate::quantale::Carrier>::Elem>;

/// The one-member category with `M = ⊤` (and `M_⊕ = ⊥` when linear).
fn unit_singleton<Q: LinearQuantale>(lv: &QuantaleView<'_, Q>, linear: bool) -> ViewCat<Q> {
    let q = lv.quantale();
    QCategory::singleton(lv, &(), q.unit(), linear.then(|| q.par_unit())).expect("one member")
}

/// The two-member discrete category; when linear, its par part is `⊥` on
/// the diagonal and top elsewhere.
fn discrete_pair<Q: LinearQuantale>(lv: &QuantaleView<'_, Q>, linear: bool) -> ViewCat<Q> {
    let q = lv.quantale();
    let carrier = Arc::new(FiniteSet::indexed("D2", 2));
    let m = QCategory::discrete(lv, carrier.clone(), vec![(), ()]).expect("sized");
    let par = linear.then(|| (0..4).map(|i| if i % 3 == 0 { q.par_unit() } else { q.top() }).collect());
    QCategory::from_parts(carrier, vec![(), ()], m.tensor_entries().to_vec(), par).expect("sized")
}

fn push_unique<T: PartialEq>(out: &mut Vec<T>, items: impl IntoIterator<Item = T>) {
    for m in items {
        if !out.contains(&m) {
            out.push(m);
        }
    }
}

fn linear_qmod<Q>(report: &mut LawReport, q: &Q, config: &TheoremConfig)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let ll = linear_laws();
    let lhs = run_suite("ld-quantale", &lv, &ll, s);
    let trivial = unit_singleton(&lv, true);
    let mut cats = vec![trivial.clone()];
    push_unique(&mut cats, [discrete_pair(&lv, true)].into_iter().filter(|m| is_valid_qcategory(&lv, m)));
    let one = Arc::new(FiniteSet::indexed("S1", 1));
    if let Ok(singles) = crate::qmod::all_linear_qcategories(&lv, &one, DEFAULT_ENUM_CAP) {
        push_unique(&mut cats, singles);
    }
    let cats: Vec<_> = cats.into_iter().filter(|m| is_valid_qcategory(&lv, m)).collect();
    let rv = LinearQModView::new(&lv, &cats, config.max_objects, DEFAULT_ENUM_CAP).expect("linear categories with par");
    let rl = linear_laws();
    let rhs = run_suite("linear-qmod", &rv, &rl, &bimodule_sampler(s));
    let trivial_ok = is_valid_qcategory(&lv, &trivial);
    let object = Arc::new(trivial);
    let tr = transfers(
        &lv,
        &ll,
        &lhs,
        &rv,
        &rl,
        s,
        |_| object.clone(),
        |a, b, f| {
            let p = lv.residual_right(f, &lv.quantale().unit());
            let bim = QBimodule::from_parts(a.clone(), b.clone(), vec![*f], Some(vec![p])).expect("sized");
            let ok = trivial_ok && is_valid_qbimodule(&lv, &bim);
            (bim, ok)
        },
    );
    assemble(report, "", lhs, rhs, tr);
}

fn girard_lhs<'q, Q>(lv: &QuantaleView<'q, Q>, d: Q::Elem, s: &Sampler) -> (Vec<Law<QuantaleView<'q, Q>>>, LawReport)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let laws = girard_family_laws(move |_: &QuantaleView<'_, Q>, _: &()| d);
    let report = run_suite("girard", lv, &laws, s);
    (laws, report)
}

fn girard_qrel<Q>(report: &mut LawReport, prefix: &str, q: &Q, d: Q::Elem, config: &TheoremConfig) -> (bool, bool)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let (ll, lhs) = girard_lhs(&lv, d, s);
    let rv = QRelView::new(q, config.max_set.max(1), s.window);
    let rl = girard_family_laws(move |v: &QRelView<'_, Q>, x: &Arc<FiniteSet>| dual_family_dx(v.quantale(), x, d));
    let rhs = run_suite("girard-qrel", &rv, &rl, s);
    let x = rv.sets()[0].clone();
    let tr = transfers(&lv, &ll, &lhs, &rv, &rl, s, |_| x.clone(), |a, b, e| point_relation(a, b, *e));
    assemble(report, prefix, lhs, rhs, tr)
}

/// Plain categories for the Girard Q-Mod check: the unit singleton, every
/// two-member category (only the discrete one when there are too many),
/// then every one-member category.
fn girard_categories<Q>(lv: &QuantaleView<'_, Q>) -> Vec<ViewCat<Q>>
where
    Q: LinearQuantale,
{
    let mut cats = vec![unit_singleton(lv, false)];
    let two = Arc::new(FiniteSet::indexed("P2", 2));
    match all_qcategories(lv, &two, DEFAULT_ENUM_CAP) {
        Ok(pairs) => push_unique(&mut cats, pairs),
        Err(_) => push_unique(&mut cats, [discrete_pair(lv, false)]),
    }
    let one = Arc::new(FiniteSet::indexed("S1", 1));
    if let Ok(singles) = all_qcategories(lv, &one, DEFAULT_ENUM_CAP) {
        push_unique(&mut cats, singles);
    }
    cats.into_iter().filter(|m| is_valid_qcategory(lv, m)).collect()
}

fn girard_qmod<Q>(report: &mut LawReport, prefix: &str, q: &Q, d: Q::Elem, config: &TheoremConfig) -> (bool, bool)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let (ll, lhs) = girard_lhs(&lv, d, s);
    let cats = girard_categories(&lv);
    let rv = QModView::new(&lv, &cats, config.max_objects, DEFAULT_ENUM_CAP);
    let family = move |_: &()| d;
    let rl = girard_family_laws(move |v: &QModView<'_, QuantaleView<'_, Q>>, m: &Arc<ViewCat<Q>>| {
        delta_with(v.quantaloid(), m, &family)
    });
    let rhs = run_suite("girard-qmod", &rv, &rl, s);
    let trivial = unit_singleton(&lv, false);
    let trivial_ok = is_valid_qcategory(&lv, &trivial);
    let object = Arc::new(trivial);
    let tr = transfers(
        &lv,
        &ll,
        &lhs,
        &rv,
        &rl,
        s,
        |_| object.clone(),
        |a, b, f| {
            let bim = QBimodule::from_parts(a.clone(), b.clone(), vec![*f], None).expect("sized");
            let ok = trivial_ok && is_valid_qbimodule(&lv, &bim);
            (bim, ok)
        },
    );
    assemble(report, prefix, lhs, rhs, tr)
}

fn girard_monq<Q>(report: &mut LawReport, prefix: &str, q: &Q, d: Q::Elem, config: &TheoremConfig) -> (bool, bool)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let (ll, lhs) = girard_lhs(&lv, d, s);
    let rv = MonQView::new(&lv, &all_monads(&lv), config.max_objects);
    type Mo<E> = Monad<(), E>;
    let rl = girard_family_laws(move |v: &MonQView<'_, QuantaleView<'_, Q>>, mo: &Mo<Q::Elem>| MonadBimodule {
        source: *mo,
        target: *mo,
        f: v.quantaloid().residual_right(&mo.m, &d),
    });
    let rhs = run_suite("girard-monq", &rv, &rl, s);
    let trivial = Monad::trivial(&lv, &());
    let trivial_ok = monad_conditions(&lv, &trivial).iter().all(|c| c.1);
    let tr = transfers(
        &lv,
        &ll,
        &lhs,
        &rv,
        &rl,
        s,
        |_| trivial,
        |a, b, f| {
            let bim = MonadBimodule {
                source: *a,
                target: *b,
                f: *f,
            };
            let ok = trivial_ok && monad_bimodule_conditions(&lv, &bim).iter().all(|c| c.1);
            (bim, ok)
        },
    );
    assemble(report, prefix, lhs, rhs, tr)
}

/// Cyclicity and involutivity of `d`, plus agreement of the par with the
/// de Morgan dual of the tensor: the premise of the closedness drivers.
fn closed_lhs<Q>(lv: &QuantaleView<'_, Q>, d: Q::Elem, s: &Sampler) -> LawReport
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let mut laws = girard_family_laws(move |_: &QuantaleView<'_, Q>, _: &()| d);
    laws.push(Law::new(
        "girard-par",
        &["A"],
        &[("f", 0, 0), ("g", 0, 0)],
        move |v: &QuantaleView<'_, Q>, _, a| {
            let neg = |x: &Q::Elem| v.residual_right(x, &d);
            v.par(&a[0], &a[1]) == neg(&v.tensor(&neg(&a[1]), &neg(&a[0])))
        },
    ));
    run_suite("girard-ld", lv, &laws, s)
}

/// Whether every 1x1 relation has some 1x1 linear adjoint, by exhaustive
/// search over the sampled domain.
fn partner_search<Q>(q: &Q, config: &TheoremConfig) -> Entry
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let domain = q.domain(s.window);
    let x = Arc::new(FiniteSet::indexed("X1", 1));
    let law = Law::new("adjoint-exists-1x1", &["A"], &[("r", 0, 0)], move |v: &QuantaleView<'_, Q>, _, a| {
        let q = v.quantale();
        let r = point_relation(&x, &x, a[0]).0;
        domain
            .iter()
            .any(|&b| check_linear_adjoint(q, &r, &point_relation(&x, &x, b).0).expect("same shape"))
    });
    let mut out = run_suite("partner-search", &lv, &[law], s);
    let mut e = out.entries.remove(0);
    e.law = format!("rhs/{}", e.law);
    e
}

fn closed_qrel<Q>(report: &mut LawReport, prefix: &str, q: &Q, d: Q::Elem, config: &TheoremConfig) -> (bool, bool)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let lhs = closed_lhs(&lv, d, s);
    let rv = QRelView::new(q, config.max_set.max(1), s.window);
    let law = Law::new("dual-adjoint", &["X", "Y"], &[("r", 0, 1)], move |v: &QRelView<'_, Q>, _, a| {
        let q = v.quantale();
        check_linear_adjoint(q, &a[0], &rel_dual_with(q, &a[0], d)).expect("dual has the transposed shape")
    });
    let rhs = run_suite("closed-qrel", &rv, &[law], s);
    let (lhs_ok, rhs_ok) = (lhs.passed(), rhs.passed());
    report.absorb(&format!("{prefix}lhs"), lhs);
    report.absorb(&format!("{prefix}rhs"), rhs);
    (lhs_ok, rhs_ok)
}

fn closed_qmod<Q>(report: &mut LawReport, prefix: &str, q: &Q, d: Q::Elem, config: &TheoremConfig) -> (bool, bool)
where
    Q: LinearQuantale,
    Q::Elem: 'static,
{
    let s = &config.sampler;
    let lv = QuantaleView::new(q, s.window);
    let lhs = closed_lhs(&lv, d, s);
    let family = move |_: &()| d;
    let mut cats = vec![unit_singleton(&lv, false), discrete_pair(&lv, false)];
    let one = Arc::new(FiniteSet::indexed("S1", 1));
    if let Ok(singles) = all_qcategories(&lv, &one, DEFAULT_ENUM_CAP) {
        push_unique(&mut cats, singles);
    }
    let cats: Vec<_> = cats
        .into_iter()
        .map(|m| m.with_girard_par(&lv, &family))
        .filter(|m| is_valid_qcategory(&lv, m))
        .collect();
    let rv = LinearQModView::new(&lv, &cats, config.max_objects, DEFAULT_ENUM_CAP).expect("linear categories with par");
    // A 1-cell of Girard Q-Mod carries the par part `Θ_⊗^⊥`; the adjoint is
    // checked on that pairing.
    let law = Law::new(
        "dual-adjoint",
        &["M", "N"],
        &[("theta", 0, 1)],
        move |v: &LinearQModView<'_, QuantaleView<'_, Q>>, _, a| {
            let base = v.quantaloid();
            let Ok(theta) = a[0].with_girard_par(base, &family) else {
                return false;
            };
            is_valid_qbimodule(base, &theta)
                && linear_adjoint_with(base, &theta, &family)
                    .and_then(|psi| check_qmod_linear_adjoint(base, &theta, &psi))
                    .unwrap_or(false)
        },
    );
    let rhs = run_suite("closed-qmod", &rv, &[law], s);
    let (lhs_ok, rhs_ok) = (lhs.passed(), rhs.passed());
    report.absorb(&format!("{prefix}lhs"), lhs);
    report.absorb(&format!("{prefix}rhs"), rhs);
    (lhs_ok, rhs_ok)
}
