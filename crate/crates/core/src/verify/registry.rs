//! Every law and enrichment inequality the checks can emit, keyed by the
//! label that appears in reports. Composition is written diagrammatically.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LawSpec {
    pub label: &'static str,
    /// The structure the law belongs to.
    pub structure: &'static str,
    pub statement: &'static str,
}

const fn law(label: &'static str, structure: &'static str, statement: &'static str) -> LawSpec {
    LawSpec {
        label,
        structure,
        statement,
    }
}

const QUANTALOID: &str = "quantaloid";
const LINEAR: &str = "linear quantaloid";
const GIRARD: &str = "Girard family";
const QCAT: &str = "Q-category";
const QBIM: &str = "Q-bimodule";
const LQCAT: &str = "linear Q-category";
const LQBIM: &str = "linear Q-bimodule";
const MONAD: &str = "monad";
const MBIM: &str = "monad bimodule";
const LMONAD: &str = "linear monad";
const LMBIM: &str = "linear monad bimodule";
const LIN_ADJ: &str = "linear adjoint";
const DUAL_CAT: &str = "second enrichment of a Q-category";
const DUAL_BIM: &str = "second enrichment of a Q-bimodule";
const CLOSED: &str = "closed linear bicategory";

static REGISTRY: &[LawSpec] = &[
    law("tensor-assoc", QUANTALOID, "(f ⊗ g) ⊗ h = f ⊗ (g ⊗ h)"),
    law("tensor-unit-left", QUANTALOID, "1_A ⊗ f = f"),
    law("tensor-unit-right", QUANTALOID, "f ⊗ 1_B = f"),
    law("tensor-join-left", QUANTALOID, "(f ∨ g) ⊗ h = (f ⊗ h) ∨ (g ⊗ h)"),
    law("tensor-join-right", QUANTALOID, "f ⊗ (g ∨ h) = (f ⊗ g) ∨ (f ⊗ h)"),
    law("tensor-bottom-left", QUANTALOID, "⊥ ⊗ f = ⊥"),
    law("tensor-bottom-right", QUANTALOID, "f ⊗ ⊥ = ⊥"),
    law("tensor-monotone-left", QUANTALOID, "f ⊗ h ≤ (f ∨ g) ⊗ h"),
    law("tensor-monotone-right", QUANTALOID, "f ⊗ g ≤ f ⊗ (g ∨ h)"),
    law("par-assoc", LINEAR, "(f ⊕ g) ⊕ h = f ⊕ (g ⊕ h)"),
    law("par-unit-left", LINEAR, "⊥_A ⊕ f = f, with ⊥_A the par unit"),
    law("par-unit-right", LINEAR, "f ⊕ ⊥_B = f, with ⊥_B the par unit"),
    law("par-meet-left", LINEAR, "(f ∧ g) ⊕ h = (f ⊕ h) ∧ (g ⊕ h)"),
    law("par-meet-right", LINEAR, "f ⊕ (g ∧ h) = (f ⊕ g) ∧ (f ⊕ h)"),
    law("par-top-left", LINEAR, "⊤ ⊕ f = ⊤"),
    law("par-top-right", LINEAR, "f ⊕ ⊤ = ⊤"),
    law("par-monotone-left", LINEAR, "f ⊕ h ≤ (f ∨ g) ⊕ h"),
    law("par-monotone-right", LINEAR, "f ⊕ g ≤ f ⊕ (g ∨ h)"),
    law("dist-left", LINEAR, "f ⊗ (g ⊕ h) ≤ (f ⊗ g) ⊕ h"),
    law("dist-right", LINEAR, "(f ⊕ g) ⊗ h ≤ f ⊕ (g ⊗ h)"),
    law("girard-cyclic", GIRARD, "f ⊸ d_A = d_B ⟜ f for f: A → B"),
    law("girard-dualizing", GIRARD, "(f ⊸ d_A) ⊸ d_B = f for f: A → B"),
    law("girard-par", GIRARD, "f ⊕ g = (g^⊥ ⊗ f^⊥)^⊥ with f^⊥ = f ⊸ d"),
    law("qcat-unit", QCAT, "1_{ρx} ≤ M(x, x)"),
    law("qcat-comp", QCAT, "M(x, x') ⊗ M(x', x'') ≤ M(x, x'')"),
    law("qbim-left", QBIM, "M(x, x') ⊗ Θ(x', y) ≤ Θ(x, y)"),
    law("qbim-right", QBIM, "Θ(x, y) ⊗ N(y, y') ≤ Θ(x, y')"),
    law("lqcat-tensor-unit", LQCAT, "1_{ρx} ≤ M⊗(x, x)"),
    law("lqcat-tensor-comp", LQCAT, "M⊗(x, x') ⊗ M⊗(x', x'') ≤ M⊗(x, x'')"),
    law("lqcat-par-counit", LQCAT, "M⊕(x, x) ≤ ⊥_{ρx}, the par unit"),
    law("lqcat-par-cocomp", LQCAT, "M⊕(x, x'') ≤ M⊕(x, x') ⊕ M⊕(x', x'')"),
    law("lqcat-mixed-1", LQCAT, "M⊗(x, x'') ≤ M⊕(x, x') ⊕ M⊗(x', x'')"),
    law("lqcat-mixed-2", LQCAT, "M⊗(x, x'') ≤ M⊗(x, x') ⊕ M⊕(x', x'')"),
    law("lqcat-mixed-3", LQCAT, "M⊗(x, x') ⊗ M⊕(x', x'') ≤ M⊕(x, x'')"),
    law("lqcat-mixed-4", LQCAT, "M⊕(x, x') ⊗ M⊗(x', x'') ≤ M⊕(x, x'')"),
    law("lqbim-tensor-1", LQBIM, "Θ⊗(x, y) ⊗ N⊗(y, y') ≤ Θ⊗(x, y')"),
    law("lqbim-tensor-2", LQBIM, "M⊗(x, x') ⊗ Θ⊗(x', y) ≤ Θ⊗(x, y)"),
    law("lqbim-tensor-3", LQBIM, "Θ⊗(x, y) ≤ M⊕(x, x') ⊕ Θ⊗(x', y)"),
    law("lqbim-tensor-4", LQBIM, "Θ⊗(x, y) ≤ Θ⊗(x, y') ⊕ N⊕(y', y)"),
    law("lqbim-par-1", LQBIM, "Θ⊕(y, x) ≤ N⊕(y, y') ⊕ Θ⊕(y', x)"),
    law("lqbim-par-2", LQBIM, "Θ⊕(y, x) ≤ Θ⊕(y, x') ⊕ M⊕(x', x)"),
    law("lqbim-par-3", LQBIM, "N⊗(y, y') ⊗ Θ⊕(y', x) ≤ Θ⊕(y, x)"),
    law("lqbim-par-4", LQBIM, "Θ⊕(y, x') ⊗ M⊗(x', x) ≤ Θ⊕(y, x)"),
    law("monad-unit", MONAD, "1_A ≤ m"),
    law("monad-mult", MONAD, "m ⊗ m ≤ m"),
    law("mbim-left", MBIM, "m ⊗ f ≤ f"),
    law("mbim-right", MBIM, "f ⊗ n ≤ f"),
    law("lmonad-tensor-unit", LMONAD, "1_A ≤ t"),
    law("lmonad-tensor-mult", LMONAD, "t ⊗ t ≤ t"),
    law("lmonad-par-counit", LMONAD, "p ≤ ⊥_A, the par unit"),
    law("lmonad-par-comult", LMONAD, "p ≤ p ⊕ p"),
    law("lmonad-mixed-1", LMONAD, "t ≤ p ⊕ t"),
    law("lmonad-mixed-2", LMONAD, "t ≤ t ⊕ p"),
    law("lmonad-mixed-3", LMONAD, "t ⊗ p ≤ p"),
    law("lmonad-mixed-4", LMONAD, "p ⊗ t ≤ p"),
    law("lmbim-tensor-1", LMBIM, "f_t ⊗ n_t ≤ f_t"),
    law("lmbim-tensor-2", LMBIM, "m_t ⊗ f_t ≤ f_t"),
    law("lmbim-tensor-3", LMBIM, "f_t ≤ m_p ⊕ f_t"),
    law("lmbim-tensor-4", LMBIM, "f_t ≤ f_t ⊕ n_p"),
    law("lmbim-par-1", LMBIM, "f_p ≤ n_p ⊕ f_p"),
    law("lmbim-par-2", LMBIM, "f_p ≤ f_p ⊕ m_p"),
    law("lmbim-par-3", LMBIM, "n_t ⊗ f_p ≤ f_p"),
    law("lmbim-par-4", LMBIM, "f_p ⊗ m_t ≤ f_p"),
    law("lin-adj-unit", LIN_ADJ, "1⊗ ≤ a ⊕ b"),
    law("lin-adj-counit", LIN_ADJ, "b ⊗ a ≤ 1⊕"),
    law("qmod-dual-cat-1", DUAL_CAT, "M(x, x)^⊥ ≤ d_{ρx}"),
    law("qmod-dual-cat-2", DUAL_CAT, "M(x, x'')^⊥ ≤ M(x', x'')^⊥ ⊕ M(x, x')^⊥"),
    law("qmod-dual-bim-1", DUAL_CAT, "M(x', x)^⊥ ⊗ M(x', x'') ≤ M(x'', x)^⊥"),
    law("qmod-dual-bim-2", DUAL_CAT, "M(x'', x) ≤ M(x', x'')^⊥ ⊕ M(x', x)"),
    law("qmod-dual-bim-3", DUAL_CAT, "M(x'', x) ⊗ M(x', x)^⊥ ≤ M(x', x'')^⊥"),
    law("qmod-dual-bim-4", DUAL_CAT, "M(x'', x) ≤ M(x'', x') ⊕ M(x, x')^⊥"),
    law("qmod-dual-theta-1", DUAL_BIM, "Θ(x, y')^⊥ ≤ N(y, y')^⊥ ⊕ Θ(x, y)^⊥"),
    law("qmod-dual-theta-2", DUAL_BIM, "Θ(x, y)^⊥ ≤ Θ(x', y)^⊥ ⊕ M(x, x')^⊥"),
    law("qmod-dual-theta-bim-1", DUAL_BIM, "Θ(x, y)^⊥ ⊗ M(x, x') ≤ Θ(x, y')^⊥"),
    law("qmod-dual-theta-bim-2", DUAL_BIM, "Θ(x, y') ≤ M(x, x')^⊥ ⊕ Θ(x, y)"),
    law("qmod-dual-theta-bim-3", DUAL_BIM, "N(y, y') ⊗ Θ(x, y')^⊥ ≤ Θ(x, y)^⊥"),
    law("qmod-dual-theta-bim-4", DUAL_BIM, "Θ(x, y) ≤ Θ(x, y') ⊕ N(y, y')^⊥"),
    law("dual-adjoint", CLOSED, "every 1-cell r has r^⊥ as a linear adjoint"),
    law("adjoint-exists-1x1", CLOSED, "every one-object 1-cell has some linear adjoint"),
];

/// The full registry in a fixed order.
pub fn law_registry() -> &'static [LawSpec] {
    REGISTRY
}

pub fn law_spec(label: &str) -> Option<&'static LawSpec> {
    REGISTRY.iter().find(|l| l.label == label)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;
    use std::sync::Arc;

    use super::*;
    use crate::qmod::{
        delta_linear, iota, second_enrichment_bimodule, second_enrichment_category, validate_qbimodule,
        validate_qcategory, QCategory,
    };
    use crate::qrel::{linear_adjoint_conditions, FiniteSet, QRelation};
    use crate::quantale::{GirardQuantale, Quantale, TableQuantale};
    use crate::quantaloid::{
        check_girard_family, check_quantaloid_laws, linear_monad_bimodule_conditions, linear_monad_conditions,
        monad_bimodule_conditions, monad_conditions, transfer_bimodule, FiniteQuantaloid, LinearMonad, Monad,
        MonadBimodule, Morphism,
    };
    use crate::verify::{run_theorem, LawReport, Sampler, TheoremConfig, THEOREMS};

    fn labels(r: &LawReport) -> impl Iterator<Item = String> + '_ {
        r.entries.iter().map(|e| e.law.clone())
    }

    /// Every label the checks and drivers actually emit.
    fn emitted() -> BTreeSet<String> {
        let s = Sampler::exhaustive();
        let ld = GirardQuantale::new(TableQuantale::boolean(), 0).unwrap().to_ld();
        let q = FiniteQuantaloid::from_ld(&ld);
        let plain = FiniteQuantaloid::from_quantale(&TableQuantale::boolean());
        let family = vec![Morphism::new(0, 0, 0)];
        let mut out = BTreeSet::new();

        out.extend(labels(&check_quantaloid_laws(&q, &s)));
        out.extend(labels(&check_quantaloid_laws(&plain, &s)));
        out.extend(labels(&check_girard_family(&q, &family, &s).unwrap()));

        let unit = q.unit(0);
        let plain_cat = Arc::new(QCategory::singleton(&q, &0, unit, None).unwrap());
        let linear_cat = Arc::new(QCategory::singleton(&q, &0, unit, Some(q.par_unit(0))).unwrap());
        out.extend(labels(&validate_qcategory(&q, &plain_cat).unwrap()));
        out.extend(labels(&validate_qcategory(&q, &linear_cat).unwrap()));
        out.extend(labels(&validate_qbimodule(&q, &iota(&plain_cat)).unwrap()));
        out.extend(labels(&validate_qbimodule(&q, &delta_linear(&linear_cat).unwrap()).unwrap()));
        out.extend(labels(&second_enrichment_category(&q, &family, &plain_cat).unwrap()));
        out.extend(labels(&second_enrichment_bimodule(&q, &family, &iota(&plain_cat)).unwrap()));

        let m = Monad::trivial(&q, &0);
        let mb = MonadBimodule {
            source: m.clone(),
            target: m.clone(),
            f: unit,
        };
        out.extend(monad_conditions(&q, &m).into_iter().map(|c| c.0.to_string()));
        out.extend(monad_bimodule_conditions(&q, &mb).into_iter().map(|c| c.0.to_string()));
        let lm = LinearMonad::trivial(&q, &0);
        out.extend(linear_monad_conditions(&q, &lm).into_iter().map(|c| c.0.to_string()));
        let lb = transfer_bimodule(&q, &0, &0, &unit);
        out.extend(linear_monad_bimodule_conditions(&q, &lb).into_iter().map(|c| c.0.to_string()));

        let x = Arc::new(FiniteSet::indexed("X", 1));
        let r = QRelation::from_fn(x.clone(), x, |_, _| ld.unit());
        out.extend(linear_adjoint_conditions(&ld, &r, &r).unwrap().into_iter().map(|c| c.0.to_string()));

        let config = TheoremConfig::default();
        for id in THEOREMS {
            let report = run_theorem(id, "boolean", &config).unwrap();
            for e in &report.entries {
                let parts: Vec<&str> = e.law.split('/').collect();
                if let Some(i) = parts.iter().position(|p| *p == "lhs" || *p == "rhs") {
                    out.insert(parts[i + 1..].join("/"));
                }
            }
        }
        out
    }

    #[test]
    fn labels_are_unique() {
        let mut seen = BTreeSet::new();
        for l in law_registry() {
            assert!(seen.insert(l.label), "duplicate label {}", l.label);
        }
    }

    #[test]
    fn registry_matches_emitted_labels() {
        let registered: BTreeSet<String> = law_registry().iter().map(|l| l.label.to_string()).collect();
        let emitted = emitted();
        let missing: Vec<_> = emitted.difference(&registered).collect();
        let unused: Vec<_> = registered.difference(&emitted).collect();
        assert!(missing.is_empty(), "emitted but unregistered: {missing:?}");
        assert!(unused.is_empty(), "registered but never emitted: {unused:?}");
    }

    #[test]
    fn lookup_by_label() {
        assert_eq!(law_spec("dist-left").unwrap().structure, LINEAR);
        assert!(law_spec("no-such-law").is_none());
    }
}
