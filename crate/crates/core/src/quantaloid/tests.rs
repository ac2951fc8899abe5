use std::sync::Arc;

use super::*;
use crate::lattice::shapes;
use crate::quantale::{find_dualizers, shift_completion, GirardQuantale, MonoidTable, TableLd, TableQuantale};
use crate::verify::{check_quantale_laws, Sampler};

fn boolean() -> FiniteQuantaloid {
    FiniteQuantaloid::from_quantale(&TableQuantale::boolean())
}

fn boolean_linear() -> FiniteQuantaloid {
    let g = GirardQuantale::new(TableQuantale::boolean(), 0).unwrap();
    FiniteQuantaloid::from_ld(&g.to_ld())
}

fn three_chain() -> TableQuantale {
    TableQuantale::meet_frame(Arc::new(shapes::chain(&["0", "m", "1"])))
}

/// `⊗ = ∧` with unit 1 and `⊕ = ∨` with unit 0.
fn three_chain_ld() -> FiniteQuantaloid {
    let q = three_chain();
    let l = q.lattice().clone();
    FiniteQuantaloid::from_ld(&TableLd::from_fn(q, 0, move |a, b| l.join(a, b)))
}

fn two_object_boolean() -> FiniteQuantaloid {
    let l = Arc::new(shapes::chain(&["0", "1"]));
    FiniteQuantaloid::from_fn(
        vec!["a".into(), "b".into()],
        vec![l.clone(); 4],
        vec![1, 1],
        |_, _, _, f, g| f.min(g),
    )
    .unwrap()
}

#[test]
fn one_object_round_trip() {
    for q in [TableQuantale::boolean(), three_chain(), TableQuantale::trivial()] {
        assert_eq!(FiniteQuantaloid::from_quantale(&q).to_quantale().unwrap(), q);
    }
    let ld = shift_completion(&MonoidTable::cyclic(2), "g").unwrap();
    assert_eq!(FiniteQuantaloid::from_ld(&ld).to_ld().unwrap(), ld);
}

#[test]
fn one_object_laws_match_quantale_laws() {
    let s = Sampler::exhaustive();
    let broken = TableQuantale::boolean().with_entry(1, 1, 0);
    for q in [TableQuantale::boolean(), three_chain(), broken] {
        let direct = check_quantale_laws(&q, &s).passed();
        assert_eq!(check_quantaloid_laws(&FiniteQuantaloid::from_quantale(&q), &s).passed(), direct);
    }
}

#[test]
fn two_object_boolean_meet_passes() {
    let r = check_quantaloid_laws(&two_object_boolean(), &Sampler::exhaustive());
    assert!(r.passed(), "{r}");
}

#[test]
fn broken_unit_fails_with_witness() {
    let mut q = two_object_boolean();
    // ⊤_a ⊗ 0 = 1 on hom(a, b).
    let n = q.len();
    q.tensor[(0 * n + 0) * n + 1][1 * 2] = 1;
    let r = check_quantaloid_laws(&q, &Sampler::exhaustive());
    let e = r.entry("tensor-unit-left").unwrap();
    assert!(!e.passed());
    assert!(e.witness.is_some());
}

#[test]
fn ld_layer_round_trip_laws() {
    let s = Sampler::exhaustive();
    assert!(check_quantaloid_laws(&boolean_linear(), &s).passed());
    assert!(check_quantaloid_laws(&three_chain_ld(), &s).passed());
    let broken = FiniteQuantaloid::from_ld(&boolean_linear().to_ld().unwrap().with_par_entry(1, 1, 0));
    assert!(!check_quantaloid_laws(&broken, &s).passed());
}

#[test]
fn girard_families_by_search() {
    let fams = find_girard_families(&boolean(), 64).unwrap();
    assert_eq!(fams, vec![vec![Morphism::new(0, 0, 0)]]);
    assert!(find_girard_families(&FiniteQuantaloid::from_quantale(&three_chain()), 64)
        .unwrap()
        .is_empty());
    // The search agrees with the element-level dualizer scan.
    let shift = shift_completion(&MonoidTable::cyclic(2), "g").unwrap();
    let q = FiniteQuantaloid::from_ld(&shift);
    let found: Vec<usize> = find_girard_families(&q, 64).unwrap().into_iter().map(|f| f[0].idx).collect();
    assert_eq!(found, find_dualizers(shift.tensor_part(), 0));
    let trivial = FiniteQuantaloid::from_quantale(&TableQuantale::trivial());
    assert_eq!(find_girard_families(&trivial, 64).unwrap().len(), 1);
}

#[test]
fn girard_family_report() {
    let s = Sampler::exhaustive();
    assert!(check_girard_family(&boolean(), &[Morphism::new(0, 0, 0)], &s).unwrap().passed());
    let tc = FiniteQuantaloid::from_quantale(&three_chain());
    for d in 0..3 {
        assert!(!check_girard_family(&tc, &[Morphism::new(0, 0, d)], &s).unwrap().passed());
    }
    assert!(check_girard_family(&boolean(), &[Morphism::new(0, 0, 0), Morphism::new(0, 0, 0)], &s).is_err());
}

#[test]
fn search_cap_is_enforced() {
    assert!(matches!(
        find_girard_families(&two_object_boolean(), 3),
        Err(QuantaloidError::SearchTooLarge(4, 3))
    ));
}

#[test]
fn boolean_monads() {
    let q = boolean();
    assert!(!check_monad(&q, Morphism::new(0, 0, 0)).unwrap());
    assert!(check_monad(&q, Morphism::new(0, 0, 1)).unwrap());
    assert_eq!(all_monads(&q), vec![Monad::trivial(&q, &0)]);
    let m = Monad::trivial(&q, &0);
    let id = monq_identity(&m);
    assert!(check_monad_bimodule(&q, &id).unwrap());
    assert_eq!(monq_compose(&q, &id, &id).unwrap(), id);
}

#[test]
fn monads_are_their_own_bimodules() {
    let q = two_object_boolean();
    for m in all_monads(&q) {
        assert!(check_monad_bimodule(&q, &monq_identity(&m)).unwrap());
    }
    let ld = three_chain_ld();
    for m in all_monads(&ld) {
        assert!(check_monad_bimodule(&ld, &monq_identity(&m)).unwrap());
    }
}

#[test]
fn trivial_monad_delta_is_family() {
    let shift = shift_completion(&MonoidTable::cyclic(2), "g").unwrap();
    let q = FiniteQuantaloid::from_ld(&shift);
    for fam in find_girard_families(&q, 64).unwrap() {
        let trivial = Monad::trivial(&q, &0);
        let delta = monq_girard_family(&q, &fam, &[trivial]);
        assert_eq!(delta[0].f, fam[0]);
    }
    let b = boolean();
    let delta = monq_girard_family(&b, &[Morphism::new(0, 0, 0)], &all_monads(&b));
    assert_eq!(delta[0].f, Morphism::new(0, 0, 0));
}

#[test]
fn monq_girard_family_passes_on_girard_bases() {
    let s = Sampler::exhaustive();
    let shift = shift_completion(&MonoidTable::cyclic(2), "g").unwrap();
    let bases = [boolean(), FiniteQuantaloid::from_ld(&shift)];
    for q in &bases {
        for fam in find_girard_families(q, 64).unwrap() {
            let monads = all_monads(q);
            let view = MonQView::new(q, &monads, 8);
            let delta = monq_girard_family(q, &fam, &monads);
            let laws = crate::verify::girard_family_laws(move |_: &MonQView<'_, FiniteQuantaloid>, m: &Monad| {
                *delta.iter().find(|d| d.source == *m).expect("every monad has a dual")
            });
            let r = crate::verify::run_suite("monq-girard", &view, &laws, &s);
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn monq_is_a_quantaloid() {
    let q = three_chain_ld();
    let view = MonQView::new(&q, &all_monads(&q), 8);
    let r = crate::verify::run_suite("monq", &view, &crate::verify::tensor_laws(), &Sampler::exhaustive());
    assert!(r.passed(), "{r}");
}

#[test]
fn trivial_linear_monads_are_valid() {
    for q in [boolean_linear(), three_chain_ld()] {
        let m = LinearMonad::trivial(&q, &0);
        assert!(check_linear_monad(&q, &m).unwrap());
        assert_eq!(all_linear_monads(&q)[0], m);
    }
    assert!(matches!(
        check_linear_monad(&boolean(), &Monad::trivial(&boolean(), &0).into_linear_placeholder()),
        Err(QuantaloidError::NoParLayer)
    ));
}

trait Placeholder {
    fn into_linear_placeholder(self) -> LinearMonad;
}

impl Placeholder for Monad {
    fn into_linear_placeholder(self) -> LinearMonad {
        LinearMonad {
            object: self.object,
            t: self.m,
            p: self.m,
        }
    }
}

#[test]
fn transferred_one_cells_are_linear_bimodules() {
    for q in [boolean_linear(), three_chain_ld()] {
        for f in q.hom_elems(0, 0) {
            let b = transfer_bimodule(&q, &0, &0, &f);
            assert!(check_linear_monad_bimodule(&q, &b).unwrap(), "{}", q.name(f));
        }
    }
}

#[test]
fn identities_compose_to_identities() {
    let q = three_chain_ld();
    for m in all_linear_monads(&q) {
        let (top, bot) = linear_monq_identities(&m);
        assert_eq!(linear_monq_compose_tensor(&q, &top, &top).unwrap(), top);
        assert_eq!(linear_monq_compose_par(&q, &bot, &bot).unwrap(), bot);
    }
}

#[test]
fn linear_monq_suite_passes_on_ld_bases() {
    let s = Sampler::exhaustive();
    for q in [boolean_linear(), three_chain_ld()] {
        let view = LinearMonQView::new(&q, &all_linear_monads(&q), 4);
        let r = crate::verify::run_suite("linear-monq", &view, &crate::verify::linear_laws(), &s);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn linear_monq_suite_fails_on_broken_base() {
    let broken = FiniteQuantaloid::from_ld(&boolean_linear().to_ld().unwrap().with_par_entry(1, 1, 0));
    let view = LinearMonQView::new(&broken, &[LinearMonad::trivial(&broken, &0)], 1);
    let r = crate::verify::run_suite("linear-monq", &view, &crate::verify::linear_laws(), &Sampler::exhaustive());
    assert!(!r.passed());
}
