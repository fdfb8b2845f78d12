//! Brute force checks in small finite groups.

pub mod brauer;
pub mod cosets;
pub mod cyclo;
pub mod field;
pub mod ring;
pub mod weil;

pub use brauer::{oracle_verify_reduction, BrauerModel, ClassDiff, ClassFunction, OracleReport, DEFAULT_BUDGET};
pub use cosets::{enumerate_coset_space, expected_counts, CosetReport};
pub use weil::{weil_oracle_check, weil_oracle_verify, WeilReport};
