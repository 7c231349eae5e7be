//! Exact arithmetic over the rational span of the session basis.

pub mod basis;
pub mod rational;
pub mod real;

pub use basis::{check_same_basis, Basis, BasisRef, Generator, SessionLimits};
pub use rational::{format_rat, parse_rat, Rat};
pub use real::{try_sort_by, Real};
