//! One maximal isometry piece of a map.

use crate::exact::Real;

/// On the open interval `(left, right)` the map sends `x` to `x + offset`
/// when `flip` is false and to `offset - x` when `flip` is true. Behavior at
/// the finitely many endpoints is deliberately undefined: maps are elements
/// of the quotient modulo finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub left: Real,
    pub right: Real,
    pub flip: bool,
    pub offset: Real,
}

impl Piece {
    pub fn translation(left: Real, right: Real, offset: Real) -> Piece {
        Piece {
            left,
            right,
            flip: false,
            offset,
        }
    }

    pub fn length(&self) -> Real {
        &self.right - &self.left
    }

    /// Image interval (left endpoint first).
    pub fn image(&self) -> (Real, Real) {
        if self.flip {
            (&self.offset - &self.right, &self.offset - &self.left)
        } else {
            (&self.left + &self.offset, &self.right + &self.offset)
        }
    }

    pub fn map_point(&self, x: &Real) -> Real {
        if self.flip {
            &self.offset - x
        } else {
            x + &self.offset
        }
    }

    /// The same isometry as a piece of the inverse map, on the image interval.
    pub fn inverted(&self) -> Piece {
        let (il, ir) = self.image();
        let offset = if self.flip {
            self.offset.clone()
        } else {
            -&self.offset
        };
        Piece {
            left: il,
            right: ir,
            flip: self.flip,
            offset,
        }
    }

    /// Same isometry formula (ignoring the interval).
    pub fn same_map(&self, other: &Piece) -> bool {
        self.flip == other.flip && self.offset == other.offset
    }

    pub fn is_identity_map(&self) -> bool {
        !self.flip && self.offset.is_zero()
    }
}
