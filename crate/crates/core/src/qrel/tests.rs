use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::lattice::shapes;
use crate::quantale::{Carrier, TableLd, TableQuantale, ZInf, ZInfQuantale};
use crate::verify::{oracle_bool_rel_compose, oracle_maxplus, oracle_minplus, BoolMode, Quantaloid, Sampler};

fn set(n: usize) -> Arc<FiniteSet> {
    Arc::new(FiniteSet::indexed(&format!("X{n}"), n))
}

fn boolean_ld() -> TableLd {
    GirardQuantale::new(TableQuantale::boolean(), 0).unwrap().to_ld()
}

fn tropical_ld() -> crate::quantale::ZInfLd {
    GirardQuantale::new(ZInfQuantale::tropical(), ZInf::Fin(0)).unwrap().to_ld()
}

fn three_chain_frame() -> TableLd {
    let meet = TableQuantale::meet_frame(Arc::new(shapes::chain(&["0", "m", "1"])));
    let top = meet.top();
    let lat = meet.lattice().clone();
    TableLd::from_fn(meet, top, |a, b| lat.meet(a, b))
}

fn zrel(rows: &[&[ZInf]]) -> QRelation<ZInf> {
    let rows: Vec<Vec<ZInf>> = rows.iter().map(|r| r.to_vec()).collect();
    QRelation::from_rows(set(rows.len()), set(rows[0].len()), &rows).unwrap()
}

fn as_bool(r: &QRelation<usize>) -> Vec<Vec<bool>> {
    r.rows().into_iter().map(|row| row.into_iter().map(|v| v == 1).collect()).collect()
}

#[test]
fn boolean_compositions_match_logic() {
    let q = boolean_ld();
    for a in 1..=2 {
        for b in 0..=2 {
            for c in 1..=2 {
                let (x, y, z) = (set(a), set(b), set(c));
                for f in all_relations(&q, &x, &y) {
                    for g in all_relations(&q, &y, &z) {
                        let t = compose_tensor(&q, &f, &g).unwrap();
                        let p = compose_par(&q, &f, &g).unwrap();
                        let (bf, bg) = (as_bool(&f), as_bool(&g));
                        assert_eq!(as_bool(&t), oracle_bool_rel_compose(&bf, &bg, BoolMode::Exists, c).unwrap());
                        assert_eq!(as_bool(&p), oracle_bool_rel_compose(&bf, &bg, BoolMode::Forall, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn tropical_compositions() {
    let q = tropical_ld();
    let f = zrel(&[&[ZInf::Fin(1), ZInf::Fin(2)]]);
    let g = QRelation::from_rows(set(2), set(1), &[vec![ZInf::Fin(3)], vec![ZInf::Fin(4)]]).unwrap();
    assert_eq!(compose_tensor(&q, &f, &g).unwrap().values(), &[ZInf::Fin(6)]);
    assert_eq!(compose_par(&q, &f, &g).unwrap().values(), &[ZInf::Fin(4)]);
    assert!(compose_tensor(&q, &f, &f).is_err());
}

#[test]
fn identities() {
    let q = tropical_ld();
    let two = set(2);
    assert_eq!(id_top(&q, &two).values(), &[ZInf::Fin(0), ZInf::NegInf, ZInf::NegInf, ZInf::Fin(0)]);
    assert_eq!(id_bot(&q, &two).values(), &[ZInf::Fin(0), ZInf::PosInf, ZInf::PosInf, ZInf::Fin(0)]);
    let b = boolean_ld();
    assert_eq!(id_top(&b, &set(1)).values(), &[1]);
    let f = zrel(&[&[ZInf::Fin(1), ZInf::NegInf]]);
    assert_eq!(compose_tensor(&q, &f, &id_top(&q, &two)).unwrap(), f);
    assert_eq!(compose_par(&q, &f, &id_bot(&q, &two)).unwrap(), f);
}

#[test]
fn pointwise_order() {
    let q = tropical_ld();
    let (one, two) = (zrel(&[&[ZInf::Fin(1)]]), zrel(&[&[ZInf::Fin(2)]]));
    assert!(rel_leq(&q, &one, &two).unwrap());
    assert!(!rel_leq(&q, &two, &one).unwrap());
    assert!(rel_leq(&q, &one, &one).unwrap());
}

#[test]
fn extensions_and_liftings() {
    let q = TableQuantale::boolean();
    let one = set(1);
    let f = QRelation::new(one.clone(), one.clone(), vec![1]).unwrap();
    let h = QRelation::new(one.clone(), one.clone(), vec![0]).unwrap();
    assert_eq!(right_extension(&q, &f, &h).unwrap().values(), &[0]);
    for a in 1..=2 {
        for b in 1..=2 {
            for c in 1..=2 {
                let (x, y, z) = (set(a), set(b), set(c));
                for h in all_relations(&q, &x, &z) {
                    assert_eq!(right_extension(&q, &id_top(&q, &x), &h).unwrap(), h);
                    for f in all_relations(&q, &x, &y) {
                        let ext = right_extension(&q, &f, &h).unwrap();
                        for s in all_relations(&q, &y, &z) {
                            let lhs = rel_leq(&q, &compose_tensor(&q, &f, &s).unwrap(), &h).unwrap();
                            assert_eq!(lhs, rel_leq(&q, &s, &ext).unwrap());
                        }
                    }
                }
                // Liftings: h: Z ↛ Y, f: X ↛ Y, s: Z ↛ X.
                for h in all_relations(&q, &z, &y) {
                    for f in all_relations(&q, &x, &y) {
                        let lift = right_lifting(&q, &h, &f).unwrap();
                        for s in all_relations(&q, &z, &x) {
                            let lhs = rel_leq(&q, &compose_tensor(&q, &s, &f).unwrap(), &h).unwrap();
                            assert_eq!(lhs, rel_leq(&q, &s, &lift).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn dual_family_values() {
    let b = boolean_ld();
    assert_eq!(dual_family_dx(&b, &set(2), 0).values(), &[0, 1, 1, 0]);
    assert_eq!(dual_family_dx(&b, &set(2), b.par_unit()), id_bot(&b, &set(2)));
    let t = ZInfQuantale::tropical();
    assert_eq!(dual_family_dx(&t, &set(1), ZInf::Fin(0)).values(), &[ZInf::Fin(0)]);
}

#[test]
fn rel_dual_boolean_and_tropical() {
    let g = GirardQuantale::new(TableQuantale::boolean(), 0).unwrap();
    for a in 1..=2 {
        for b in 1..=2 {
            for r in all_relations(g.base(), &set(a), &set(b)) {
                let d = rel_dual(&g, &r);
                assert_eq!(d, r.transpose_with(|v| 1 - v));
                assert_eq!(rel_dual(&g, &d), r);
            }
        }
    }
    let t = GirardQuantale::new(ZInfQuantale::tropical(), ZInf::Fin(0)).unwrap();
    let r = zrel(&[&[ZInf::Fin(3), ZInf::NegInf]]);
    assert_eq!(rel_dual(&t, &r).rows(), vec![vec![ZInf::Fin(-3)], vec![ZInf::PosInf]]);
}

#[test]
fn rel_dual_exchanges_compositions() {
    let diamond = TableQuantale::meet_frame(Arc::new(shapes::diamond()));
    let g = GirardQuantale::new(diamond, 0).unwrap();
    let ld = g.to_ld();
    let (x, y) = (set(1), set(2));
    for f in all_relations(g.base(), &x, &y) {
        for h in all_relations(g.base(), &y, &x) {
            let lhs = rel_dual(&g, &compose_tensor(&ld, &f, &h).unwrap());
            let rhs = compose_par(&ld, &rel_dual(&g, &h), &rel_dual(&g, &f)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn linear_adjoints() {
    let g = GirardQuantale::new(TableQuantale::boolean(), 0).unwrap();
    let ld = g.to_ld();
    for a in 1..=2 {
        for b in 1..=2 {
            for r in all_relations(&ld, &set(a), &set(b)) {
                assert!(check_linear_adjoint(&ld, &r, &rel_dual(&g, &r)).unwrap());
            }
        }
        assert!(check_linear_adjoint(&ld, &id_top(&ld, &set(a)), &id_bot(&ld, &set(a))).unwrap());
    }
    let chain = three_chain_frame();
    let one = set(1);
    let m = chain.tensor_part().elem("m").unwrap();
    let a = QRelation::new(one.clone(), one.clone(), vec![m]).unwrap();
    assert!(all_relations(&chain, &one, &one)
        .iter()
        .all(|b| !check_linear_adjoint(&chain, &a, b).unwrap()));
}

#[test]
fn adjoint_characterization() {
    let ld = boolean_ld();
    for a in 1..=2 {
        for b in 1..=2 {
            let (x, y) = (set(a), set(b));
            for big_a in all_relations(&ld, &x, &y) {
                for big_b in all_relations(&ld, &y, &x) {
                    let adj = check_linear_adjoint(&ld, &big_a, &big_b).unwrap();
                    let w = set(1);
                    let galois = all_relations(&ld, &w, &x).iter().all(|c| {
                        all_relations(&ld, &w, &y).iter().all(|d| {
                            let l = rel_leq(&ld, &compose_tensor(&ld, c, &big_a).unwrap(), d).unwrap();
                            let r = rel_leq(&ld, c, &compose_par(&ld, d, &big_b).unwrap()).unwrap();
                            l == r
                        })
                    });
                    if adj {
                        assert!(galois, "{big_a:?} {big_b:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn qrel_suite_passes_on_tropical() {
    let report = verify_qrel_laws(&tropical_ld(), 2, &Sampler::random(7, 200));
    assert!(report.passed(), "{report}");
    let trivial = GirardQuantale::new(TableQuantale::trivial(), 0).unwrap().to_ld();
    assert!(verify_qrel_laws(&trivial, 1, &Sampler::exhaustive()).passed());
}

#[test]
fn qrel_suite_catches_broken_par() {
    let xor = boolean_ld().with_par_entry(1, 1, 0);
    let report = verify_qrel_laws(&xor, 2, &Sampler::exhaustive());
    assert!(!report.passed());
    let e = report.entry("par-top-left").unwrap();
    assert!(!e.passed());
    assert!(e.witness.is_some());
}

#[test]
fn girard_qrel() {
    let b = TableQuantale::boolean();
    assert!(check_girard_qrel(&b, 0, 3, &Sampler::exhaustive()).passed());
    let t = ZInfQuantale::tropical();
    let report = check_girard_qrel(&t, ZInf::Fin(0), 2, &Sampler::random(7, 200).with_window(5));
    assert!(report.passed(), "{report}");
    let chain = three_chain_frame();
    let m = chain.tensor_part().elem("m").unwrap();
    let report = check_girard_qrel(chain.tensor_part(), m, 2, &Sampler::exhaustive());
    let e = report.entry("girard-dualizing").unwrap();
    assert!(!e.passed());
    let f = &e.witness.as_ref().unwrap()["f"];
    assert_eq!(f, &serde_json::json!([["0"]]));
}

#[test]
fn shrinking_deletes_members() {
    let q = TableQuantale::boolean();
    let view = QRelView::new(&q, 2, 0);
    let two = view.sets()[1].clone();
    let r = QRelation::new(two.clone(), two.clone(), vec![1, 0, 0, 1]).unwrap();
    let cands = view.shrink(&[two.clone()], &[r]);
    let (objs, arrs) = &cands[0];
    assert_eq!(objs[0].len(), 1);
    assert_eq!(arrs[0].values(), &[1]);
}

fn arb_zinf() -> impl Strategy<Value = ZInf> {
    prop_oneof![
        1 => Just(ZInf::NegInf),
        1 => Just(ZInf::PosInf),
        6 => (-20i64..20).prop_map(ZInf::Fin),
    ]
}

fn arb_matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<ZInf>>> {
    proptest::collection::vec(proptest::collection::vec(arb_zinf(), m), n)
}

proptest! {
    #[test]
    fn tropical_matches_oracles(f in arb_matrix(3, 3), g in arb_matrix(3, 3)) {
        let q = tropical_ld();
        let rf = QRelation::from_rows(set(3), set(3), &f).unwrap();
        let rg = QRelation::from_rows(set(3), set(3), &g).unwrap();
        prop_assert_eq!(compose_tensor(&q, &rf, &rg).unwrap().rows(), oracle_maxplus(&f, &g, 3).unwrap());
        prop_assert_eq!(compose_par(&q, &rf, &rg).unwrap().rows(), oracle_minplus(&f, &g, 3).unwrap());
    }

    #[test]
    fn tensor_preserves_joins(f in arb_matrix(2, 2), g in arb_matrix(2, 2), h in arb_matrix(2, 2)) {
        let q = tropical_ld();
        let [rf, rg, rh] = [f, g, h].map(|m| QRelation::from_rows(set(2), set(2), &m).unwrap());
        let lhs = compose_tensor(&q, &rf, &rel_join(&q, &rg, &rh).unwrap()).unwrap();
        let rhs = rel_join(&q, &compose_tensor(&q, &rf, &rg).unwrap(), &compose_tensor(&q, &rf, &rh).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = compose_par(&q, &rf, &rel_meet(&q, &rg, &rh).unwrap()).unwrap();
        let rhs = rel_meet(&q, &compose_par(&q, &rf, &rg).unwrap(), &compose_par(&q, &rf, &rh).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
