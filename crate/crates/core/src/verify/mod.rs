//! The law engine: samplers, generic law suites, oracles, the structure
//! catalog and the theorem drivers.

mod catalog;
mod engine;
mod laws;
mod oracle;
mod registry;
mod report;
mod single;
mod suites;
mod theorem;

pub use engine::{
    check_law, find_counterexample, run_suite, sample_rng, shrink_counterexample, Counterexample,
    Law, LinearQuantaloid, Predicate, Quantaloid, Residuated, SampleMode, Sampler,
    DEFAULT_SLOT_CAP, GENERATOR,
};
pub use laws::{distribution_laws, girard_family_laws, linear_laws, par_laws, tensor_laws};
pub use oracle::{oracle_bool_rel_compose, oracle_maxplus, oracle_minplus, BoolMode, ShapeMismatch};
pub use registry::{law_registry, law_spec, LawSpec};
pub use report::{Entry, LawReport, Status};
pub use suites::{verify_monq, verify_qmod};
pub use single::{check_ld_laws, check_quantale_laws, QuantaleView};
pub use catalog::{
    canonical_entry_name, catalog, catalog_entry, classify, derive_catalog, CatalogEntry, Classification, Structure,
};
pub use theorem::{canonical_theorem_id, run_theorem, run_theorem_on, TheoremConfig, TheoremError, THEOREMS};
