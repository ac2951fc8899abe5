use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::lattice::shapes;

/// Windowed brute-force `a ⊸ b`: join of every sampled `c` with `a ⊗ c ≤ b`.
fn scan_residual<Q: Quantale>(q: &Q, a: Q::Elem, b: Q::Elem, window: i64) -> Q::Elem {
    q.join_all(q.domain(window).into_iter().filter(|&c| q.leq(q.tensor(a, c), b)))
}

fn scan_residual_left<Q: Quantale>(q: &Q, b: Q::Elem, a: Q::Elem, window: i64) -> Q::Elem {
    q.join_all(q.domain(window).into_iter().filter(|&c| q.leq(q.tensor(c, a), b)))
}

fn three_chain() -> TableQuantale {
    TableQuantale::meet_frame(Arc::new(shapes::chain(&["0", "m", "1"])))
}

fn assert_adjunction<Q: Quantale>(q: &Q) {
    let dom = q.domain(0);
    for &a in &dom {
        for &b in &dom {
            let r = q.residual_right(a, b);
            let l = q.residual_left(b, a);
            for &c in &dom {
                assert_eq!(q.leq(q.tensor(a, c), b), q.leq(c, r), "{a:?} {b:?} {c:?}");
                assert_eq!(q.leq(q.tensor(c, a), b), q.leq(c, l), "{a:?} {b:?} {c:?}");
            }
        }
    }
}

#[test]
fn boolean_residuals() {
    let q = TableQuantale::boolean();
    let (zero, one) = (q.elem("0").unwrap(), q.elem("1").unwrap());
    assert_eq!(q.residual_right(one, zero), zero);
    assert_eq!(q.residual_right(zero, zero), one);
    assert_eq!(q.residual_left(zero, one), zero);
    for a in [zero, one] {
        assert_eq!(q.residual_right(a, one), one);
    }
}

#[test]
fn zinf_examples() {
    let t = ZInfQuantale::tropical();
    assert_eq!(t.tensor(ZInf::Fin(2), ZInf::Fin(3)), ZInf::Fin(5));
    assert_eq!(t.tensor(ZInf::NegInf, ZInf::PosInf), ZInf::NegInf);
    assert_eq!(t.tensor(ZInf::PosInf, ZInf::NegInf), ZInf::NegInf);
    assert_eq!(t.residual_right(ZInf::Fin(3), ZInf::Fin(5)), ZInf::Fin(2));
    assert_eq!(t.residual_left(ZInf::Fin(5), ZInf::Fin(3)), ZInf::Fin(2));
    assert_eq!(scan_residual(&t, ZInf::Fin(3), ZInf::Fin(5), 20), ZInf::Fin(2));
    assert_eq!(scan_residual_left(&t, ZInf::Fin(5), ZInf::Fin(3), 20), ZInf::Fin(2));
    let a = ZInfQuantale::arctic();
    assert_eq!(a.tensor(ZInf::NegInf, ZInf::PosInf), ZInf::PosInf);
    assert_eq!(a.join(ZInf::Fin(1), ZInf::Fin(4)), ZInf::Fin(1));
}

#[test]
fn zinf_closed_form_residual_matches_scan() {
    for q in [
        ZInfQuantale::tropical(),
        ZInfQuantale::arctic(),
        ZInfQuantale::tropical().with_shift(3),
        ZInfQuantale::arctic().with_shift(-2),
    ] {
        for a in q.domain(10) {
            for b in q.domain(10) {
                assert_eq!(q.residual_right(a, b), scan_residual(&q, a, b, 40), "{q:?} {a} {b}");
                assert_eq!(q.residual_left(b, a), scan_residual_left(&q, b, a, 40), "{q:?} {a} {b}");
            }
        }
    }
}

#[test]
fn finite_adjunction() {
    assert_adjunction(&TableQuantale::boolean());
    assert_adjunction(&three_chain());
    assert_adjunction(&TableQuantale::meet_frame(Arc::new(shapes::diamond())));
    assert_adjunction(&shift_completion(&MonoidTable::cyclic(2), "g").unwrap());
    assert_adjunction(&shift_completion(&MonoidTable::cyclic(3), "g").unwrap());
}

#[test]
fn dualizer_search() {
    let b = TableQuantale::boolean();
    assert_eq!(find_dualizers(&b, 0), vec![b.elem("0").unwrap()]);
    assert!(find_dualizers(&three_chain(), 0).is_empty());
    let t = ZInfQuantale::tropical();
    assert!(is_cyclic_dualizing(&t, ZInf::Fin(0), 10));
    assert!(!is_cyclic_dualizing(&t, ZInf::PosInf, 10));
    assert!(!is_cyclic_dualizing(&t, ZInf::NegInf, 10));
    let finite: Vec<_> = (-10..=10).map(ZInf::Fin).collect();
    assert_eq!(find_dualizers(&t, 10), finite);
}

#[test]
fn three_chain_middle_fails_double_negation() {
    let q = three_chain();
    let (zero, m) = (q.elem("0").unwrap(), q.elem("m").unwrap());
    let neg = |a| q.residual_right(a, m);
    assert_eq!(neg(neg(zero)), m);
}

#[test]
fn girard_boolean_par_is_or() {
    let g = GirardQuantale::new(TableQuantale::boolean(), 0).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(g.girard_par(a, b), a | b);
        }
    }
    assert_eq!(g.neg(g.unit()), g.dualizer());
    assert!(GirardQuantale::new(TableQuantale::boolean(), 1).is_err());
}

#[test]
fn girard_zinf_conventions() {
    let g = GirardQuantale::new(ZInfQuantale::tropical(), ZInf::Fin(0)).unwrap();
    assert_eq!(g.girard_par(ZInf::NegInf, ZInf::PosInf), ZInf::PosInf);
    assert_eq!(g.girard_par(ZInf::PosInf, ZInf::NegInf), ZInf::PosInf);
    assert_eq!(g.neg(ZInf::Fin(4)), ZInf::Fin(-4));
    assert_eq!(g.neg(g.unit()), ZInf::Fin(0));
    let ld = g.to_ld();
    for a in g.domain(6) {
        for b in g.domain(6) {
            assert_eq!(ld.par(a, b), g.girard_par(a, b), "{a} {b}");
        }
    }
    let shifted = GirardQuantale::new(ZInfQuantale::tropical(), ZInf::Fin(3)).unwrap();
    assert_eq!(shifted.neg(ZInf::Fin(1)), ZInf::Fin(2));
}

#[test]
fn girard_negation_is_antitone_involution() {
    let g = GirardQuantale::new(TableQuantale::meet_frame(Arc::new(shapes::diamond())), 0).unwrap();
    for a in g.domain(0) {
        assert_eq!(g.neg(g.neg(a)), a);
        for b in g.domain(0) {
            if g.leq(a, b) {
                assert!(g.leq(g.neg(b), g.neg(a)));
            }
            assert_eq!(g.girard_par(a, b), g.neg(g.tensor(g.neg(b), g.neg(a))));
            assert_eq!(g.girard_par(g.dualizer(), b), b);
        }
    }
}

#[test]
fn boolean_to_ld_and_opposite() {
    let ld = GirardQuantale::new(TableQuantale::boolean(), 0).unwrap().to_ld();
    assert_eq!(ld.par_table(), &[0, 1, 1, 1]);
    assert_eq!(ld.par_unit(), 0);
    let op = ld.opposite();
    assert!(op.leq(1, 0));
    assert_eq!(op.top(), 0);
    assert_eq!(op.unit(), 0);
    assert_eq!(op.par_unit(), 1);
    assert_eq!(op.tensor(0, 1), 1);
    assert_eq!(op.opposite(), ld);
}

#[test]
fn zinf_opposite_is_arctic() {
    let ld = GirardQuantale::new(ZInfQuantale::tropical(), ZInf::Fin(0)).unwrap().to_ld();
    let op = ld.opposite();
    assert_eq!(op.tensor_part().flavor(), Flavor::Arctic);
    assert_eq!(*op.tensor_part(), ZInfQuantale::arctic());
    assert_eq!(op.tensor(ZInf::NegInf, ZInf::PosInf), ZInf::PosInf);
    assert_eq!(op.par(ZInf::NegInf, ZInf::PosInf), ZInf::NegInf);
    assert_eq!(op.opposite(), ld);
}

#[test]
fn one_point_ld() {
    let q = TableQuantale::trivial();
    let g = GirardQuantale::new(q, 0).unwrap();
    let ld = g.to_ld();
    assert_eq!(ld.par_table(), ld.tensor_part().table());
}

#[test]
fn shift_completion_z2() {
    let ld = shift_completion(&MonoidTable::cyclic(2), "g").unwrap();
    let el = |s: &str| ld.tensor_part().elem(s).unwrap();
    let (e, g) = (el("e"), el("g"));
    assert_eq!(ld.tensor_part().len(), 4);
    assert_eq!(ld.par(e, e), g);
    assert_eq!(ld.par(g, g), g);
    assert_eq!(ld.par(e, g), e);
    assert_eq!(ld.tensor(g, g), e);
    assert_eq!(ld.unit(), e);
    assert_eq!(ld.par_unit(), g);
    assert_eq!(ld.tensor(el("1"), el("0")), el("0"));
    assert_eq!(ld.par(el("0"), el("1")), el("1"));
}

#[test]
fn shift_completion_trivial_monoid() {
    let ld = shift_completion(&MonoidTable::cyclic(1), "e").unwrap();
    let e = ld.tensor_part().elem("e").unwrap();
    assert_eq!(ld.tensor_part().len(), 3);
    assert_eq!(ld.par(e, e), ld.tensor(e, e));
    assert_eq!(ld.unit(), ld.par_unit());
}

#[test]
fn shift_completion_rejects_bad_monoids() {
    let not_comm = MonoidTable::new(&["e", "a", "b"], &[
        vec!["e", "a", "b"],
        vec!["a", "a", "a"],
        vec!["b", "b", "b"],
    ])
    .unwrap();
    assert!(matches!(shift_completion(&not_comm, "e"), Err(QuantaleError::NotCommutative(_))));
    let not_canc = MonoidTable::new(&["e", "z"], &[vec!["e", "z"], vec!["z", "z"]]).unwrap();
    assert!(matches!(shift_completion(&not_canc, "e"), Err(QuantaleError::NotCancellative(_))));
    assert!(matches!(
        shift_completion(&MonoidTable::cyclic(2), "x"),
        Err(QuantaleError::UnknownElement(_))
    ));
}

fn arb_zinf() -> impl Strategy<Value = ZInf> {
    prop_oneof![
        1 => Just(ZInf::NegInf),
        1 => Just(ZInf::PosInf),
        6 => (-1000i64..1000).prop_map(ZInf::Fin),
    ]
}

proptest! {
    #[test]
    fn zinf_residual_adjunction(a in arb_zinf(), b in arb_zinf(), c in arb_zinf(), shift in -5i64..5) {
        for q in [ZInfQuantale::tropical().with_shift(shift), ZInfQuantale::arctic().with_shift(shift)] {
            prop_assert_eq!(q.leq(q.tensor(a, c), b), q.leq(c, q.residual_right(a, b)));
        }
    }

    #[test]
    fn zinf_tensor_associative_and_unital(a in arb_zinf(), b in arb_zinf(), c in arb_zinf()) {
        for q in [ZInfQuantale::tropical(), ZInfQuantale::arctic()] {
            prop_assert_eq!(q.tensor(q.tensor(a, b), c), q.tensor(a, q.tensor(b, c)));
            prop_assert_eq!(q.tensor(q.unit(), a), a);
        }
    }

    #[test]
    fn zinf_tensor_preserves_binary_joins(a in arb_zinf(), b in arb_zinf(), c in arb_zinf()) {
        for q in [ZInfQuantale::tropical(), ZInfQuantale::arctic()] {
            prop_assert_eq!(q.tensor(a, q.join(b, c)), q.join(q.tensor(a, b), q.tensor(a, c)));
            prop_assert_eq!(q.tensor(a, q.bottom()), q.bottom());
        }
    }
}
