//! Locally posetal linear bicategories at desk scale: finite and
//! extended-integer quantales, quantale-valued relations, quantaloids,
//! enriched categories and bimodules, and a law-verification harness.

pub mod lattice;
pub mod quantale;
pub mod verify;
pub mod qrel;
pub mod quantaloid;
pub mod qmod;
pub mod json;
