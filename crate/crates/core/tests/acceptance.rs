//! The nine acceptance criteria, run in order under one test so their time
//! budgets are measured without contention. Each prints one result line.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linbicat::qrel::{
    all_relations, check_girard_qrel, check_linear_adjoint, compose_par, compose_tensor, rel_dual_with, verify_qrel_laws,
    FiniteSet, QRelation,
};
use linbicat::quantale::{
    find_dualizers, is_cyclic_dualizing, Carrier, GirardQuantale, LinearQuantale, Quantale, ZInf, ZInfQuantale,
};
use linbicat::verify::{
    catalog, catalog_entry, check_ld_laws, oracle_bool_rel_compose, oracle_maxplus, oracle_minplus, run_theorem,
    run_theorem_on, BoolMode, CatalogEntry, LawReport, Sampler, Structure, TheoremConfig,
};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Writes past the test harness capture so the lines always show.
fn say(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn criterion(n: usize, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| match budget {
        Some(b) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
        _ => Ok(()),
    });
    let budget = budget.map_or(String::new(), |b| format!(" / {b:?}"));
    match &outcome {
        Ok(()) => say(&format!("criterion {n}: pass  {name} ({elapsed:.2?}{budget})")),
        Err(e) => say(&format!("criterion {n}: FAIL  {name} ({elapsed:.2?}{budget}): {e}")),
    }
    outcome.is_ok()
}

fn set(name: &str, n: usize) -> Arc<FiniteSet> {
    Arc::new(FiniteSet::indexed(name, n))
}

fn lawful(entry: &CatalogEntry) -> bool {
    !entry.is_broken()
}

fn laws_under<'a>(r: &'a LawReport, prefix: &'a str) -> impl Iterator<Item = &'a linbicat::verify::Entry> + 'a {
    r.entries.iter().filter(move |e| e.law.starts_with(prefix))
}

fn implications_hold(r: &LawReport) -> Check {
    let top: Vec<_> = r.entries.iter().filter(|e| e.law.starts_with("implies-")).collect();
    ensure(!top.is_empty(), || format!("{}: no implication entries", r.suite))?;
    match top.iter().find(|e| !e.passed()) {
        Some(e) => Err(format!("{}: {} fails", r.suite, e.law)),
        None => Ok(()),
    }
}

fn all_pass_under(r: &LawReport, prefix: &str) -> Check {
    let mut seen = false;
    for e in laws_under(r, prefix) {
        seen = true;
        ensure(e.passed(), || format!("{}: {} fails", r.suite, e.law))?;
    }
    ensure(seen, || format!("{}: nothing under {prefix}", r.suite))
}

// 1

fn to_bool(q: &impl Carrier<Elem = usize>, r: &QRelation<usize>) -> Vec<Vec<bool>> {
    r.rows().into_iter().map(|row| row.into_iter().map(|v| v == q.top()).collect()).collect()
}

fn boolean_reduction() -> Check {
    let Structure::Table(q) = &catalog_entry("boolean").expect("boolean").structure else {
        return Err("boolean is not a table".into());
    };
    let mut pairs = 0usize;
    for (nx, ny, nz) in (0..=3).flat_map(|a| (0..=3).flat_map(move |b| (0..=3).map(move |c| (a, b, c)))) {
        let (x, y, z) = (set("X", nx), set("Y", ny), set("Z", nz));
        let lefts = all_relations(q, &x, &y);
        let rights = all_relations(q, &y, &z);
        for f in &lefts {
            let fb = to_bool(q, f);
            for g in &rights {
                let gb = to_bool(q, g);
                let tensor = to_bool(q, &compose_tensor(q, f, g).map_err(|e| e.to_string())?);
                let par = to_bool(q, &compose_par(q, f, g).map_err(|e| e.to_string())?);
                let exists = oracle_bool_rel_compose(&fb, &gb, BoolMode::Exists, nz).map_err(|e| e.to_string())?;
                let forall = oracle_bool_rel_compose(&fb, &gb, BoolMode::Forall, nz).map_err(|e| e.to_string())?;
                ensure(tensor == exists, || format!("tensor {fb:?} ; {gb:?}"))?;
                ensure(par == forall, || format!("par {fb:?} ; {gb:?}"))?;
                pairs += 1;
            }
        }
    }
    // Sum over |X|, |Y|, |Z| in 0..=3 of 2^(|Y| (|X| + |Z|)).
    ensure(pairs == 349_691, || format!("checked {pairs} pairs"))
}

// 2

fn random_zinf(rng: &mut ChaCha8Rng) -> ZInf {
    match rng.gen_range(0..6) {
        0 => ZInf::NegInf,
        1 => ZInf::PosInf,
        _ => ZInf::Fin(rng.gen_range(-10..=10)),
    }
}

fn zinf_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = set("S", 3);
    let entries: Vec<&CatalogEntry> =
        catalog().iter().filter(|e| !e.is_finite() && lawful(e)).collect();
    ensure(entries.len() == 2, || format!("expected tropical and arctic, got {}", entries.len()))?;
    let mut mixed = 0;
    for i in 0..500 {
        let f = QRelation::from_fn(s.clone(), s.clone(), |_, _| random_zinf(&mut rng));
        let g = QRelation::from_fn(s.clone(), s.clone(), |_, _| random_zinf(&mut rng));
        let has = |r: &QRelation<ZInf>, v| r.values().contains(&v);
        if (has(&f, ZInf::NegInf) || has(&g, ZInf::NegInf)) && (has(&f, ZInf::PosInf) || has(&g, ZInf::PosInf)) {
            mixed += 1;
        }
        for entry in &entries {
            let Structure::ZInf(q) = &entry.structure else { unreachable!() };
            let tensor = compose_tensor(q, &f, &g).map_err(|e| e.to_string())?.rows();
            let par = compose_par(q, &f, &g).map_err(|e| e.to_string())?.rows();
            let (max_plus, min_plus) = (
                oracle_maxplus(&f.rows(), &g.rows(), 3).map_err(|e| e.to_string())?,
                oracle_minplus(&f.rows(), &g.rows(), 3).map_err(|e| e.to_string())?,
            );
            // Tropical joins by max and arctic by min; par is the other one.
            let (want_tensor, want_par) = match q.tensor_part().flavor() {
                linbicat::quantale::Flavor::Tropical => (&max_plus, &min_plus),
                linbicat::quantale::Flavor::Arctic => (&min_plus, &max_plus),
            };
            ensure(&tensor == want_tensor, || format!("{} tensor, instance {i}", entry.name))?;
            ensure(&par == want_par, || format!("{} par, instance {i}", entry.name))?;
        }
    }
    ensure(mixed > 100, || format!("only {mixed} instances mix infinities"))
}

// 3

fn adjunction<Q: Quantale>(q: &Q, name: &str) -> Check {
    let dom = q.domain(0);
    for &a in &dom {
        for &b in &dom {
            let (r, l) = (q.residual_right(a, b), q.residual_left(b, a));
            for &c in &dom {
                ensure(q.leq(q.tensor(a, c), b) == q.leq(c, r), || format!("{name}: right {a:?} {b:?} {c:?}"))?;
                ensure(q.leq(q.tensor(c, a), b) == q.leq(c, l), || format!("{name}: left {a:?} {b:?} {c:?}"))?;
            }
        }
    }
    Ok(())
}

/// Join of every `c` in the search window with `a ⊗ c ≤ b`.
fn scan_residual(q: &ZInfQuantale, a: ZInf, b: ZInf, search: i64) -> ZInf {
    q.join_all(q.domain(search).into_iter().filter(|&c| q.leq(q.tensor(a, c), b)))
}

fn residual_adjunction() -> Check {
    let mut finite = 0;
    for entry in catalog() {
        match &entry.structure {
            Structure::Table(q) if q.domain(0).len() <= 6 => {
                adjunction(q, &entry.name)?;
                finite += 1;
            }
            Structure::Table(_) => {}
            Structure::ZInf(z) => {
                let q = z.tensor_part();
                // Arguments in [-W, W]; the true residual lies within [-2W - |s|, 2W + |s|].
                let search = 2 * 10 + q.shift().abs();
                for a in q.domain(10) {
                    for b in q.domain(10) {
                        let brute = scan_residual(q, a, b, search);
                        ensure(q.residual_right(a, b) == brute, || format!("{}: {a} ⊸ {b}", entry.name))?;
                        ensure(q.residual_left(b, a) == brute, || format!("{}: {b} ⟜ {a}", entry.name))?;
                    }
                }
            }
        }
    }
    ensure(finite >= 10, || format!("only {finite} finite entries"))
}

// 4

fn girard_facts() -> Check {
    let rendered = |name: &str| -> Result<Vec<String>, String> {
        match &catalog_entry(name).ok_or(name.to_string())?.structure {
            Structure::Table(t) => Ok(find_dualizers(t.tensor_part(), 10).into_iter().map(|d| t.render(d)).collect()),
            Structure::ZInf(_) => Err(format!("{name} is not finite")),
        }
    };
    ensure(rendered("boolean")? == ["0"], || format!("boolean: {:?}", rendered("boolean")))?;
    ensure(rendered("three-chain-frame")?.is_empty(), || "three-chain frame has a dualizer".into())?;

    let z = ZInfQuantale::tropical();
    ensure(is_cyclic_dualizing(&z, ZInf::Fin(0), 10), || "0 is not dualizing in Z∞".into())?;
    let found = find_dualizers(&z, 10);
    ensure(found.contains(&ZInf::Fin(0)), || "find_dualizers misses 0 in Z∞".into())?;
    ensure(!found.contains(&ZInf::NegInf) && !found.contains(&ZInf::PosInf), || "an infinity dualizes".into())?;

    let g = GirardQuantale::new(z, ZInf::Fin(0)).map_err(|e| e.to_string())?;
    ensure(g.girard_par(ZInf::NegInf, ZInf::PosInf) == ZInf::PosInf, || "−∞ ⊕ +∞".into())?;
    ensure(g.girard_par(ZInf::PosInf, ZInf::NegInf) == ZInf::PosInf, || "+∞ ⊕ −∞".into())?;
    ensure(g.girard_par(ZInf::Fin(2), ZInf::Fin(3)) == ZInf::Fin(5), || "2 ⊕ 3".into())?;
    ensure(g.girard_par(ZInf::Fin(2), ZInf::NegInf) == ZInf::NegInf, || "2 ⊕ −∞".into())?;
    let Structure::ZInf(entry) = &catalog_entry("zinf-tropical").ok_or("zinf-tropical")?.structure else {
        return Err("zinf-tropical is finite".into());
    };
    for a in z.domain(10) {
        for b in z.domain(10) {
            ensure(g.girard_par(a, b) == entry.par(a, b), || format!("catalog par differs at {a}, {b}"))?;
        }
    }
    Ok(())
}

// 5

fn theorem_ldq() -> Check {
    for entry in catalog() {
        let r = run_theorem_on("ldq", entry, &TheoremConfig::default()).map_err(|e| e.to_string())?;
        implications_hold(&r)?;
        let lhs = laws_under(&r, "lhs/").all(|e| e.passed());
        let rhs = laws_under(&r, "rhs/").all(|e| e.passed());
        ensure(lhs == entry.classification.ld, || format!("{}: lhs disagrees with classification", entry.name))?;
        ensure(lhs == rhs, || format!("{}: LD in Q is {lhs}, suite in Q-Rel is {rhs}", entry.name))?;
        if entry.is_broken() {
            ensure(laws_under(&r, "transfer/").count() > 0, || format!("{}: no transferred witness", entry.name))?;
        }
    }
    Ok(())
}

// 6

fn girard_qrel() -> Check {
    let Structure::Table(b) = &catalog_entry("boolean").ok_or("boolean")?.structure else {
        return Err("boolean is not a table".into());
    };
    let zero = b.tensor_part().elem("0").map_err(|e| e.to_string())?;
    let r = check_girard_qrel(b, zero, 2, &Sampler::exhaustive());
    ensure(r.entries.len() >= 2, || "boolean: no laws checked".into())?;
    ensure(r.passed(), || format!("boolean: {:?}", r.failures().map(|e| &e.law).collect::<Vec<_>>()))?;
    ensure(r.entries.iter().all(|e| e.mode == "exhaustive"), || "boolean check was not exhaustive".into())?;

    let z = ZInfQuantale::tropical();
    let r = check_girard_qrel(&z, ZInf::Fin(0), 2, &Sampler::random(6, 200));
    ensure(r.entries.len() >= 2, || "Z∞: no laws checked".into())?;
    ensure(r.entries.iter().all(|e| e.mode.contains("200")), || format!("Z∞ modes: {:?}", r.entries))?;
    ensure(r.passed(), || format!("Z∞: {:?}", r.failures().map(|e| &e.law).collect::<Vec<_>>()))?;

    // Involution directly on 200 seeded relations of every shape up to 2×2.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..200 {
        let (x, y) = (set("X", 1 + i % 2), set("Y", 1 + (i / 2) % 2));
        let rel = QRelation::from_fn(x, y, |_, _| random_zinf(&mut rng));
        let back = rel_dual_with(&z, &rel_dual_with(&z, &rel, ZInf::Fin(0)), ZInf::Fin(0));
        ensure(back == rel, || format!("r^⊥⊥ ≠ r for {:?}", rel.rows()))?;
    }
    Ok(())
}

// 7

fn adjoint_with_dual<Q: LinearQuantale>(q: &Q, name: &str, dom_window: i64, max_set: usize) -> Check {
    let d = q.par_unit();
    let dom = q.domain(dom_window);
    for nx in 1..=max_set {
        for ny in 1..=max_set {
            let (x, y) = (set("X", nx), set("Y", ny));
            let k = nx * ny;
            for i in 0..dom.len().pow(k as u32) {
                let mut j = i;
                let values: Vec<Q::Elem> = (0..k)
                    .map(|_| {
                        let v = dom[j % dom.len()];
                        j /= dom.len();
                        v
                    })
                    .collect();
                let r = QRelation::new(x.clone(), y.clone(), values).map_err(|e| e.to_string())?;
                let ok = check_linear_adjoint(q, &r, &rel_dual_with(q, &r, d)).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{name}: {:?} has no adjoint in its dual", r.rows()))?;
            }
        }
    }
    Ok(())
}

fn closedness_split() -> Check {
    let mut girard = 0;
    for entry in catalog().iter().filter(|e| lawful(e) && e.classification.girard) {
        match &entry.structure {
            Structure::Table(q) => {
                ensure(entry.classification.dualizers.contains(&q.render(q.par_unit())), || {
                    format!("{}: par unit is not a dualizer", entry.name)
                })?;
                adjoint_with_dual(q, &entry.name, 0, 2)?;
            }
            Structure::ZInf(q) => adjoint_with_dual(q, &entry.name, 2, 2)?,
        }
        girard += 1;
    }
    ensure(girard >= 6, || format!("only {girard} Girard entries"))?;

    let Structure::Table(q) = &catalog_entry("three-chain-frame").ok_or("three-chain-frame")?.structure else {
        return Err("three-chain frame is not a table".into());
    };
    let one = set("X", 1);
    let rels = all_relations(q, &one, &one);
    let lonely = rels.iter().find(|a| {
        rels.iter().all(|b| !check_linear_adjoint(q, a, b).expect("same shape"))
    });
    ensure(lonely.is_some(), || "every 1×1 relation has a linear adjoint".into())
}

// 8

fn qmod_and_monq() -> Check {
    for entry in catalog().iter().filter(|e| lawful(e) && e.classification.girard) {
        let config = TheoremConfig {
            dualizer: (!entry.is_finite()).then(|| "0".to_string()),
            ..TheoremConfig::default()
        };
        let candidates: Vec<&str> = if entry.is_finite() {
            entry.classification.dualizers.iter().map(String::as_str).collect()
        } else {
            vec!["0"]
        };
        for id in ["girard-qmod", "girard-monq"] {
            let r = run_theorem_on(id, entry, &config).map_err(|e| e.to_string())?;
            implications_hold(&r)?;
            for d in &candidates {
                all_pass_under(&r, &format!("d={d}/rhs/"))?;
            }
        }
    }
    for entry in catalog() {
        for id in ["linear-qmod", "linear-monq"] {
            let r = run_theorem_on(id, entry, &TheoremConfig::default()).map_err(|e| e.to_string())?;
            implications_hold(&r)?;
            if entry.classification.ld {
                all_pass_under(&r, "rhs/")?;
            }
            if entry.is_broken() {
                let transfers: Vec<_> = laws_under(&r, "transfer/").collect();
                ensure(!transfers.is_empty(), || format!("{id} {}: no transferred witness", entry.name))?;
                for t in transfers {
                    let law = &t.law["transfer/".len()..];
                    let witness = t.witness.as_ref().ok_or_else(|| format!("{}: no witness", t.law))?;
                    ensure(witness.get("embedding_valid") == Some(&serde_json::Value::Bool(true)), || {
                        format!("{id} {}: {} embeds outside the structure", entry.name, t.law)
                    })?;
                    ensure(!r.law_passed(&format!("rhs/{law}")), || {
                        format!("{id} {}: rhs/{law} passes despite the transfer", entry.name)
                    })?;
                }
            }
        }
    }
    Ok(())
}

// 9

fn determinism() -> Check {
    let reports = || -> Result<Vec<String>, String> {
        let mut out = Vec::new();
        for seed in [0, 9, 12345] {
            let sampler = Sampler::random(seed, 64);
            let Structure::ZInf(z) = &catalog_entry("zinf-tropical").ok_or("zinf")?.structure else {
                return Err("zinf-tropical is finite".into());
            };
            out.push(check_ld_laws(z, &sampler).to_json_string());
            out.push(verify_qrel_laws(z, 2, &sampler).to_json_string());
            let config = TheoremConfig { sampler: sampler.clone(), ..TheoremConfig::default() };
            for id in ["ldq", "girard-qrel"] {
                out.push(run_theorem(id, "zinf-tropical-broken", &config).map_err(|e| e.to_string())?.to_json_string());
            }
        }
        Ok(out)
    };
    let (a, b) = (reports()?, reports()?);
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        ensure(x.as_bytes() == y.as_bytes(), || format!("report {i} differs between runs"))?;
    }
    ensure(a[0] != a[4], || "different seeds gave the same sample".into())
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "Boolean compositions match the ∃/∀ oracle", Some(secs(10)), boolean_reduction),
        criterion(2, "Z∞ compositions match max-plus/min-plus", Some(secs(5)), zinf_oracle),
        criterion(3, "residual adjunction and Z∞ closed form", Some(secs(5)), residual_adjunction),
        criterion(4, "dualizers and the Z∞ Girard par", None, girard_facts),
        criterion(5, "LD in Q iff the linear suite holds in Q-Rel", Some(secs(60)), theorem_ldq),
        criterion(6, "cyclic involutive d_X in Q-Rel", None, girard_qrel),
        criterion(7, "closedness split", None, closedness_split),
        criterion(8, "Q-Mod and Mon Q suites", Some(secs(120)), qmod_and_monq),
        criterion(9, "byte-identical seeded reports", None, determinism),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    say(&format!("acceptance: {passed}/{} criteria pass", results.len()));
    assert_eq!(passed, results.len());
}
