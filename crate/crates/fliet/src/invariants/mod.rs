//! Algebraic invariants: the length/translation tensor and periodicity.

pub mod periodic;
pub mod saf;

pub use periodic::{is_periodic, PeriodicityVerdict};
pub use saf::{in_commutator_subgroup, saf, SafInvariant};
