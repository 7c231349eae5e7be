//! The group of interval exchange transformations with flips, modulo
//! finite sets.

pub mod combinatorics;
pub mod generators;
pub mod map;
pub mod piece;

pub use combinatorics::{
    a_points, combinatorics, from_description, metric_d, translations, CombinatorialDescription,
};
pub use generators::{restricted_rotation, rotation, s_theta, symmetry, transport};
pub use map::Fiet;
pub use piece::Piece;
