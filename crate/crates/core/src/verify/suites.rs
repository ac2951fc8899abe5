//! Whole-structure suites for Q-Mod and Mon Q over any finite-enough base,
//! as run from the command line.

use std::sync::Arc;

use super::engine::{run_suite, LinearQuantaloid, Quantaloid, Residuated, Sampler};
use super::laws::{girard_family_laws, linear_laws};
use super::report::LawReport;
use crate::qmod::{
    all_linear_qcategories, all_qcategories, check_girard_qmod_with, verify_linear_qmod_laws, QModError,
    DEFAULT_ENUM_CAP,
};
use crate::qrel::FiniteSet;
use crate::quantaloid::{all_linear_monads, all_monads, LinearMonQView, MonQView, Monad, MonadBimodule};

/// The linear Q-Mod law suite over every linear category on a one-member
/// carrier and, given a dualizing family, the Girard checks of `δ` over
/// every plain category on a one-member carrier.
pub fn verify_qmod<B, F>(q: &B, family: Option<F>, max_objects: usize, sampler: &Sampler) -> Result<LawReport, QModError>
where
    B: LinearQuantaloid + Residuated,
    B::Object: PartialEq,
    F: Fn(&B::Object) -> B::Arrow + Clone + Send + Sync + 'static,
{
    let carrier = Arc::new(FiniteSet::indexed("S", 1));
    let mut report = LawReport::new("qmod");
    let linear = all_linear_qcategories(q, &carrier, DEFAULT_ENUM_CAP)?;
    report.absorb("linear-qmod", verify_linear_qmod_laws(q, &linear, max_objects, sampler)?);
    if let Some(family) = family {
        let plain = all_qcategories(q, &carrier, DEFAULT_ENUM_CAP)?;
        report.absorb("girard-qmod", check_girard_qmod_with(q, family, &plain, max_objects, sampler));
    }
    Ok(report)
}

/// The linear-quantaloid suite on linear Mon Q over every linear monad and,
/// given a dualizing family, the Girard checks of `m ⊸ d` on Mon Q.
pub fn verify_monq<B, F>(q: &B, family: Option<F>, max_objects: usize, sampler: &Sampler) -> LawReport
where
    B: LinearQuantaloid + Residuated,
    B::Object: PartialEq,
    F: Fn(&B::Object) -> B::Arrow + Clone + Send + Sync + 'static,
{
    let mut report = LawReport::new("monq");
    let lv = LinearMonQView::new(q, &all_linear_monads(q), max_objects);
    report.absorb("linear-monq", run_suite("linear-monq", &lv, &linear_laws(), sampler));
    if let Some(family) = family {
        let view = MonQView::new(q, &all_monads(q), max_objects);
        type Mo<B> = Monad<<B as Quantaloid>::Object, <B as Quantaloid>::Arrow>;
        let laws = girard_family_laws(move |v: &MonQView<'_, B>, mo: &Mo<B>| MonadBimodule {
            source: mo.clone(),
            target: mo.clone(),
            f: v.quantaloid().residual_right(&mo.m, &family(&mo.object)),
        });
        report.absorb("girard-monq", run_suite("girard-monq", &view, &laws, sampler));
    }
    report
}
