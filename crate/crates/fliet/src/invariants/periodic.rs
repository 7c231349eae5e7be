//! Finite-order detection.
//!
//! Rational maps permute the cells of a uniform grid, so their exact order
//! is the order of a finite permutation (with a factor 2 for orbits whose
//! flips compose to a reversal). Everything else falls back to exact power
//! iteration up to a caller-chosen cap.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::Result;
use crate::exact::rational::lcm_biguint;
use crate::fiet::Fiet;

/// Largest grid the rational fast path will materialize.
const GRID_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodicityVerdict {
    /// The map has this exact (minimal) order.
    Periodic(BigUint),
    /// No power up to the cap is the identity.
    NotPeriodicWithin(u64),
}

impl PeriodicityVerdict {
    pub fn is_periodic(&self) -> bool {
        matches!(self, PeriodicityVerdict::Periodic(_))
    }

    pub fn order(&self) -> Option<&BigUint> {
        match self {
            PeriodicityVerdict::Periodic(n) => Some(n),
            PeriodicityVerdict::NotPeriodicWithin(_) => None,
        }
    }
}

/// Decides periodicity: exactly (never inconclusive) for rational maps with
/// a materializable grid, otherwise by exact powers up to `cap`.
pub fn is_periodic(f: &Fiet, cap: u64) -> Result<PeriodicityVerdict> {
    if f.is_identity() {
        return Ok(PeriodicityVerdict::Periodic(BigUint::one()));
    }
    if f.is_rational() {
        if let Some(q) = common_denominator(f) {
            if q <= GRID_LIMIT {
                return Ok(PeriodicityVerdict::Periodic(grid_order(f, q)));
            }
        }
    }
    let mut power = f.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return Ok(PeriodicityVerdict::Periodic(BigUint::from(k)));
        }
        if k < cap {
            power = power.compose(f)?;
        }
    }
    Ok(PeriodicityVerdict::NotPeriodicWithin(cap))
}

/// Common denominator of all breakpoints and offsets of a rational map.
fn common_denominator(f: &Fiet) -> Option<u64> {
    let mut q = BigInt::one();
    for p in f.pieces() {
        for v in [&p.left, &p.offset] {
            q = q.lcm(v.coords()[0].denom());
        }
    }
    q.to_u64()
}

/// Exact order via the induced permutation of the 1/q grid. Cells map to
/// cells because every breakpoint and offset is a multiple of 1/q; a flipped
/// piece reverses a cell, so an orbit whose flips do not cancel needs one
/// more round trip.
fn grid_order(f: &Fiet, q: u64) -> BigUint {
    let q_us = q as usize;
    let mut target = vec![0usize; q_us];
    let mut flips = vec![false; q_us];
    let qi = BigInt::from(q);
    for p in f.pieces() {
        let lo = cell_index(&p.left.coords()[0], &qi);
        let hi = cell_index(&p.right.coords()[0], &qi);
        let off = scaled_int(&p.offset.coords()[0], &qi);
        for cell in lo..hi {
            if p.flip {
                // [c/q,(c+1)/q) maps to [off/q - (c+1)/q, off/q - c/q).
                target[cell] = (off.clone() - (cell as i64) - 1i64)
                    .to_usize()
                    .expect("image cell in range");
                flips[cell] = true;
            } else {
                target[cell] = (off.clone() + (cell as i64))
                    .to_usize()
                    .expect("image cell in range");
            }
        }
    }
    let mut order = BigUint::one();
    let mut seen = vec![false; q_us];
    for start in 0..q_us {
        if seen[start] {
            continue;
        }
        let mut cell = start;
        let mut len = 0u64;
        let mut parity = false;
        loop {
            seen[cell] = true;
            parity ^= flips[cell];
            cell = target[cell];
            len += 1;
            if cell == start {
                break;
            }
        }
        let cycle_order = if parity { 2 * len } else { len };
        order = lcm_biguint(&order, &BigUint::from(cycle_order));
    }
    order
}

fn cell_index(x: &crate::exact::Rat, q: &BigInt) -> usize {
    let scaled = scaled_int(x, q);
    debug_assert!(!scaled.is_negative());
    scaled.to_usize().expect("cell index in range")
}

fn scaled_int(x: &crate::exact::Rat, q: &BigInt) -> BigInt {
    let v = x * crate::exact::Rat::from_integer(q.clone());
    debug_assert!(v.denom().is_one(), "value not on the 1/q grid");
    v.to_integer()
}
