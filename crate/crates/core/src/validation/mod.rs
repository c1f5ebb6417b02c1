//! Independent reference implementations used to cross-check the
//! decision procedures, and generators for the extremal families.

pub mod families;
pub mod oracle;
pub mod relation;

pub use families::{make_family, Family, FamilySpec};
pub use oracle::{brute_force_minimal_witness, brute_force_verdict, OracleVerdict};
pub use relation::{properly_related, relation_holds};
