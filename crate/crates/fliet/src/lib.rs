//! Exact group algebra of interval exchange transformations with flips.
//!
//! The crate represents finite piecewise isometries of `[0,1)` up to
//! equality off a finite set, with all breakpoints and translation amounts
//! in the rational span of a declared generator basis. On top of the group
//! operations it provides the classical invariants (the length-tensor
//! invariant, periodicity) and a family of certified factorization
//! pipelines: restricted rotations, commutators, strongly reversible
//! elements, involutions and corner-support normal forms. Every pipeline
//! emits a [`cert::Certificate`] whose factors carry replayable witnesses,
//! and [`verify`] checks certificates using only the group primitives.

pub mod cert;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod exact;
pub mod fiet;
pub mod invariants;
pub mod json;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Basis, BasisRef, Generator, Rat, Real, SessionLimits};
pub use fiet::{Fiet, Piece};
