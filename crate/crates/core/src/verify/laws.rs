//! The generic law suites, written once against the quantaloid view traits.

use super::engine::{Law, LinearQuantaloid, Quantaloid, Residuated};

const ABCD: &[&str] = &["A", "B", "C", "D"];
const ABC: &[&str] = &["A", "B", "C"];
const AB: &[&str] = &["A", "B"];

/// Associativity, units, and preservation of binary and empty joins (plus
/// monotonicity) for the tensor composition.
pub fn tensor_laws<V: Quantaloid>() -> Vec<Law<V>> {
    vec![
        Law::new(
            "tensor-assoc",
            ABCD,
            &[("f", 0, 1), ("g", 1, 2), ("h", 2, 3)],
            |v: &V, _, a| v.tensor(&v.tensor(&a[0], &a[1]), &a[2]) == v.tensor(&a[0], &v.tensor(&a[1], &a[2])),
        ),
        Law::new("tensor-unit-left", AB, &[("f", 0, 1)], |v: &V, o, a| {
            v.tensor(&v.unit(&o[0]), &a[0]) == a[0]
        }),
        Law::new("tensor-unit-right", AB, &[("f", 0, 1)], |v: &V, o, a| {
            v.tensor(&a[0], &v.unit(&o[1])) == a[0]
        }),
        Law::new(
            "tensor-join-left",
            ABC,
            &[("f", 0, 1), ("g", 0, 1), ("h", 1, 2)],
            |v: &V, _, a| {
                v.tensor(&v.join(&a[0], &a[1]), &a[2])
                    == v.join(&v.tensor(&a[0], &a[2]), &v.tensor(&a[1], &a[2]))
            },
        ),
        Law::new(
            "tensor-join-right",
            ABC,
            &[("f", 0, 1), ("g", 1, 2), ("h", 1, 2)],
            |v: &V, _, a| {
                v.tensor(&a[0], &v.join(&a[1], &a[2]))
                    == v.join(&v.tensor(&a[0], &a[1]), &v.tensor(&a[0], &a[2]))
            },
        ),
        Law::new("tensor-bottom-left", ABC, &[("f", 1, 2)], |v: &V, o, a| {
            v.tensor(&v.bottom(&o[0], &o[1]), &a[0]) == v.bottom(&o[0], &o[2])
        }),
        Law::new("tensor-bottom-right", ABC, &[("f", 0, 1)], |v: &V, o, a| {
            v.tensor(&a[0], &v.bottom(&o[1], &o[2])) == v.bottom(&o[0], &o[2])
        }),
        Law::new(
            "tensor-monotone-left",
            ABC,
            &[("f", 0, 1), ("g", 0, 1), ("h", 1, 2)],
            |v: &V, _, a| v.leq(&v.tensor(&a[0], &a[2]), &v.tensor(&v.join(&a[0], &a[1]), &a[2])),
        ),
        Law::new(
            "tensor-monotone-right",
            ABC,
            &[("f", 0, 1), ("g", 1, 2), ("h", 1, 2)],
            |v: &V, _, a| v.leq(&v.tensor(&a[0], &a[1]), &v.tensor(&a[0], &v.join(&a[1], &a[2]))),
        ),
    ]
}

/// The tensor laws for the par composition read in the opposite order:
/// associativity, units, preservation of binary and empty meets.
pub fn par_laws<V: LinearQuantaloid>() -> Vec<Law<V>> {
    vec![
        Law::new(
            "par-assoc",
            ABCD,
            &[("f", 0, 1), ("g", 1, 2), ("h", 2, 3)],
            |v: &V, _, a| v.par(&v.par(&a[0], &a[1]), &a[2]) == v.par(&a[0], &v.par(&a[1], &a[2])),
        ),
        Law::new("par-unit-left", AB, &[("f", 0, 1)], |v: &V, o, a| {
            v.par(&v.par_unit(&o[0]), &a[0]) == a[0]
        }),
        Law::new("par-unit-right", AB, &[("f", 0, 1)], |v: &V, o, a| {
            v.par(&a[0], &v.par_unit(&o[1])) == a[0]
        }),
        Law::new(
            "par-meet-left",
            ABC,
            &[("f", 0, 1), ("g", 0, 1), ("h", 1, 2)],
            |v: &V, _, a| {
                v.par(&v.meet(&a[0], &a[1]), &a[2]) == v.meet(&v.par(&a[0], &a[2]), &v.par(&a[1], &a[2]))
            },
        ),
        Law::new(
            "par-meet-right",
            ABC,
            &[("f", 0, 1), ("g", 1, 2), ("h", 1, 2)],
            |v: &V, _, a| {
                v.par(&a[0], &v.meet(&a[1], &a[2])) == v.meet(&v.par(&a[0], &a[1]), &v.par(&a[0], &a[2]))
            },
        ),
        Law::new("par-top-left", ABC, &[("f", 1, 2)], |v: &V, o, a| {
            v.par(&v.top(&o[0], &o[1]), &a[0]) == v.top(&o[0], &o[2])
        }),
        Law::new("par-top-right", ABC, &[("f", 0, 1)], |v: &V, o, a| {
            v.par(&a[0], &v.top(&o[1], &o[2])) == v.top(&o[0], &o[2])
        }),
        Law::new(
            "par-monotone-left",
            ABC,
            &[("f", 0, 1), ("g", 0, 1), ("h", 1, 2)],
            |v: &V, _, a| v.leq(&v.par(&a[0], &a[2]), &v.par(&v.join(&a[0], &a[1]), &a[2])),
        ),
        Law::new(
            "par-monotone-right",
            ABC,
            &[("f", 0, 1), ("g", 1, 2), ("h", 1, 2)],
            |v: &V, _, a| v.leq(&v.par(&a[0], &a[1]), &v.par(&a[0], &v.join(&a[1], &a[2]))),
        ),
    ]
}

/// `f ⊗ (g ⊕ h) ≤ (f ⊗ g) ⊕ h` and `(f ⊕ g) ⊗ h ≤ f ⊕ (g ⊗ h)`.
pub fn distribution_laws<V: LinearQuantaloid>() -> Vec<Law<V>> {
    vec![
        Law::new(
            "dist-left",
            ABCD,
            &[("f", 0, 1), ("g", 1, 2), ("h", 2, 3)],
            |v: &V, _, a| {
                v.leq(
                    &v.tensor(&a[0], &v.par(&a[1], &a[2])),
                    &v.par(&v.tensor(&a[0], &a[1]), &a[2]),
                )
            },
        ),
        Law::new(
            "dist-right",
            ABCD,
            &[("f", 0, 1), ("g", 1, 2), ("h", 2, 3)],
            |v: &V, _, a| {
                v.leq(
                    &v.tensor(&v.par(&a[0], &a[1]), &a[2]),
                    &v.par(&a[0], &v.tensor(&a[1], &a[2])),
                )
            },
        ),
    ]
}

/// The full linear-quantaloid suite: tensor laws, par laws, distributions.
pub fn linear_laws<V: LinearQuantaloid>() -> Vec<Law<V>> {
    let mut out = tensor_laws();
    out.extend(par_laws());
    out.extend(distribution_laws());
    out
}

/// For every `f: A → B`: `f ⊸ d_A = d_B ⟜ f` and `(f ⊸ d_A) ⊸ d_B = f`,
/// where `family` picks `d_A` for each object.
pub fn girard_family_laws<V, F>(family: F) -> Vec<Law<V>>
where
    V: Residuated,
    F: Fn(&V, &V::Object) -> V::Arrow + Clone + Send + Sync + 'static,
{
    let d = family.clone();
    let cyclic = Law::new("girard-cyclic", AB, &[("f", 0, 1)], move |v: &V, o, a| {
        v.residual_right(&a[0], &d(v, &o[0])) == v.residual_left(&d(v, &o[1]), &a[0])
    });
    let d = family;
    let dualizing = Law::new("girard-dualizing", AB, &[("f", 0, 1)], move |v: &V, o, a| {
        let neg = v.residual_right(&a[0], &d(v, &o[0]));
        v.residual_right(&neg, &d(v, &o[1])) == a[0]
    });
    vec![cyclic, dualizing]
}
