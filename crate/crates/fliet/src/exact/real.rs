//! Exact elements of the rational span of the session basis.
//!
//! A value is a coordinate vector over (1, g1, ..., gp). Addition, negation
//! and rational scaling are coordinate-wise and never leave the span; there
//! is no product of two values (the span is a module, not a ring). Equality
//! is syntactic coordinate equality, which is sound under the declared
//! independence, and ordering is decided by exact conjugate bounding for
//! square roots or by interval refinement otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::basis::{check_same_basis, BasisRef, Generator};
use crate::exact::rational::{format_rat, rat_floor, Rat};

#[derive(Clone)]
pub struct Real {
    basis: BasisRef,
    coords: Vec<Rat>,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({self})")
    }
}

impl fmt::Display for Real {
    /// Textual form "c0 + c1*g1 + ..." with zero terms elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", format_rat(&a))?;
            } else {
                write!(f, "{}*g{}", format_rat(&a), i)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_as(&other.basis) && self.coords == other.coords
    }
}
impl Eq for Real {}

impl PartialOrd for Real {
    /// `None` when the precision budget is exhausted; use [`Real::try_cmp`]
    /// to observe the error.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Real {
    pub fn new(basis: BasisRef, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != basis.dim() {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                basis.dim(),
                coords.len()
            )));
        }
        Ok(Real { basis, coords })
    }

    pub fn zero(basis: &BasisRef) -> Self {
        Real::from_rational(basis, Rat::zero())
    }

    pub fn one(basis: &BasisRef) -> Self {
        Real::from_rational(basis, Rat::from_integer(1.into()))
    }

    pub fn from_rational(basis: &BasisRef, r: Rat) -> Self {
        let mut coords = vec![Rat::zero(); basis.dim()];
        coords[0] = r;
        Real {
            basis: basis.clone(),
            coords,
        }
    }

    pub fn from_int(basis: &BasisRef, n: i64) -> Self {
        Real::from_rational(basis, Rat::from_integer(n.into()))
    }

    /// The generator `gi` (1-based among declared generators).
    pub fn generator(basis: &BasisRef, i: usize) -> Result<Self> {
        if i == 0 || i >= basis.dim() {
            return Err(Error::Parse(format!("no generator g{i}")));
        }
        let mut coords = vec![Rat::zero(); basis.dim()];
        coords[i] = Rat::from_integer(1.into());
        Ok(Real {
            basis: basis.clone(),
            coords,
        })
    }

    pub fn basis(&self) -> &BasisRef {
        &self.basis
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// True when all irrational coordinates vanish.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rat::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.coords[0])
    }

    fn assert_same_basis(&self, other: &Real) {
        assert!(
            self.basis.same_as(&other.basis),
            "basis mismatch: values belong to different sessions"
        );
    }

    pub fn scale(&self, q: &Rat) -> Real {
        Real {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn halve(&self) -> Real {
        self.scale(&Rat::new(1.into(), 2.into()))
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Result<Ordering> {
        let irrational: Vec<usize> = (1..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect();
        if irrational.is_empty() {
            return Ok(self.coords[0].cmp(&Rat::zero()));
        }
        if irrational.len() == 1 {
            if let Generator::Sqrt(r) = &self.basis.generators()[irrational[0] - 1] {
                return Ok(sqrt_term_sign(&self.coords[0], &self.coords[irrational[0]], r));
            }
        }
        self.sign_by_refinement()
    }

    fn sign_by_refinement(&self) -> Result<Ordering> {
        let limits = self.basis.limits();
        let max_bits = if self.basis.has_opaque() {
            limits.precision_max
        } else {
            limits.sqrt_precision_max
        };
        let mut bits = limits.precision_start.max(8);
        loop {
            let (low, high) = self.bounds(bits)?;
            if low.is_positive() {
                return Ok(Ordering::Greater);
            }
            if high.is_negative() {
                return Ok(Ordering::Less);
            }
            if bits >= max_bits {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    /// Rational enclosure of the value with generator enclosures of width
    /// `2^-bits`.
    pub fn bounds(&self, bits: u32) -> Result<(Rat, Rat)> {
        let mut low = self.coords[0].clone();
        let mut high = self.coords[0].clone();
        for (i, c) in self.coords.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let (gl, gh) = self.basis.generator_bounds(i - 1, bits)?;
            if c.is_positive() {
                low += c * gl;
                high += c * gh;
            } else {
                low += c * gh;
                high += c * gl;
            }
        }
        Ok((low, high))
    }

    pub fn try_cmp(&self, other: &Real) -> Result<Ordering> {
        self.assert_same_basis(other);
        // Identical irrational parts reduce the comparison to the rational
        // coordinates; this covers both the equality and the rational case.
        if self.coords[1..] == other.coords[1..] {
            return Ok(self.coords[0].cmp(&other.coords[0]));
        }
        (self - other).sign()
    }

    pub fn lt(&self, other: &Real) -> Result<bool> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &Real) -> Result<bool> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn abs_val(&self) -> Result<Real> {
        Ok(match self.sign()? {
            Ordering::Less => -self,
            _ => self.clone(),
        })
    }

    pub fn min_val(&self, other: &Real) -> Result<Real> {
        Ok(if self.le(other)? {
            self.clone()
        } else {
            other.clone()
        })
    }

    /// Greatest integer k with `k*den <= num`. Requires `den > 0`.
    pub fn floor_ratio(num: &Real, den: &Real) -> Result<BigInt> {
        num.assert_same_basis(den);
        if den.sign()? != Ordering::Greater {
            return Err(Error::NonPositiveDenominator);
        }
        if let (Some(n), Some(d)) = (num.as_rational(), den.as_rational()) {
            return Ok(rat_floor(&(n / d)));
        }
        // Interval estimate, then exact verification by sign tests. The
        // estimate can be off by one near exact multiples.
        let limits = num.basis.limits();
        let mut bits = limits.precision_start.max(16);
        let mut k = loop {
            let (nl, nh) = num.bounds(bits)?;
            let (dl, dh) = den.bounds(bits)?;
            if dl.is_positive() {
                let k_low = rat_floor(&(&nl / &dh));
                let k_high = rat_floor(&(&nh / &dl));
                if &k_high - &k_low <= BigInt::from(1) {
                    break k_low;
                }
            }
            if bits >= limits.sqrt_precision_max {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(limits.sqrt_precision_max);
        };
        // Walk to the exact floor: k*den <= num < (k+1)*den.
        loop {
            let lower_ok =
                (num - &den.scale(&Rat::from_integer(k.clone()))).sign()? != Ordering::Less;
            if !lower_ok {
                k -= 1;
                continue;
            }
            let upper_ok = (num - &den.scale(&Rat::from_integer(&k + 1))).sign()?
                == Ordering::Less;
            if !upper_ok {
                k += 1;
                continue;
            }
            return Ok(k);
        }
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        self.assert_same_basis(rhs);
        Real {
            basis: self.basis.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self.assert_same_basis(rhs);
        Real {
            basis: self.basis.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        &self + &rhs
    }
}
impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        &self - &rhs
    }
}
impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// Exact sign of `a + b*sqrt(r)` with `b != 0` and `r` a positive rational
/// that is not a perfect square: conjugate bounding reduces the question to
/// comparing the rational squares.
fn sqrt_term_sign(a: &Rat, b: &Rat, r: &Rat) -> Ordering {
    if a.is_zero() {
        return b.cmp(&Rat::zero());
    }
    let sa = a.cmp(&Rat::zero());
    let sb = b.cmp(&Rat::zero());
    if sa == sb {
        return sa;
    }
    // Signs differ: |a| vs |b|sqrt(r) decided by a^2 vs b^2 r.
    match (a * a).cmp(&(&(b * b) * r)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => unreachable!(
            "sqrt generator turned out rational; independence declaration violated"
        ),
    }
}

/// Sorts with a fallible comparator: merge sort on indices, then one pass
/// of swaps to apply the permutation (no element clones).
pub fn try_sort_by<T, F>(items: &mut Vec<T>, mut cmp: F) -> Result<()>
where
    F: FnMut(&T, &T) -> Result<Ordering>,
{
    fn merge_sort<T, F: FnMut(&T, &T) -> Result<Ordering>>(
        idx: &mut [usize],
        items: &[T],
        cmp: &mut F,
    ) -> Result<()> {
        let n = idx.len();
        if n <= 1 {
            return Ok(());
        }
        let mid = n / 2;
        merge_sort(&mut idx[..mid], items, cmp)?;
        merge_sort(&mut idx[mid..], items, cmp)?;
        let (mut i, mut j) = (0, mid);
        let mut merged = Vec::with_capacity(n);
        while i < mid && j < n {
            if cmp(&items[idx[i]], &items[idx[j]])? != Ordering::Greater {
                merged.push(idx[i]);
                i += 1;
            } else {
                merged.push(idx[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&idx[i..mid]);
        merged.extend_from_slice(&idx[j..n]);
        idx.copy_from_slice(&merged);
        Ok(())
    }
    let n = items.len();
    let mut order: Vec<usize> = (0..n).collect();
    merge_sort(&mut order, items, &mut cmp)?;
    // Apply the permutation in place by walking its cycles.
    let mut placed = vec![false; n];
    for start in 0..n {
        if placed[start] || order[start] == start {
            continue;
        }
        let mut at = start;
        loop {
            placed[at] = true;
            let from = order[at];
            if placed[from] || from == at {
                break;
            }
            items.swap(at, from);
            at = from;
        }
    }
    Ok(())
}

/// Checked constructor used by parsers: coordinates against a given basis.
pub fn real_from_coords(basis: &BasisRef, coords: Vec<Rat>) -> Result<Real> {
    check_same_basis(basis, basis)?;
    Real::new(basis.clone(), coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::basis::{Basis, SessionLimits};
    use crate::exact::rational::{rat, rat_int};

    fn sqrt2_basis() -> BasisRef {
        Basis::with_sqrt(rat_int(2))
    }

    fn val(basis: &BasisRef, c0: Rat, c1: Rat) -> Real {
        Real::new(basis.clone(), vec![c0, c1]).unwrap()
    }

    #[test]
    fn cancellation_and_identity() {
        let b = sqrt2_basis();
        // (1/2 + (1/2)sqrt2) + (1/2 - (1/2)sqrt2) = 1
        let x = val(&b, rat(1, 2), rat(1, 2));
        let y = val(&b, rat(1, 2), rat(-1, 2));
        assert_eq!(&x + &y, Real::one(&b));
        // x + 0 = x
        assert_eq!(&x + &Real::zero(&b), x);
        // (1 - sqrt2) + (sqrt2 - 1) = 0 exactly
        let u = val(&b, rat_int(1), rat_int(-1));
        let v = val(&b, rat_int(-1), rat_int(1));
        assert!((&u + &v).is_zero());
    }

    #[test]
    fn compare_against_sqrt2() {
        let b = sqrt2_basis();
        // 3/2 > sqrt2 because (3/2)^2 = 9/4 > 2
        let three_halves = Real::from_rational(&b, rat(3, 2));
        let sqrt2 = Real::generator(&b, 1).unwrap();
        assert_eq!(three_halves.try_cmp(&sqrt2).unwrap(), Ordering::Greater);
        // x vs x
        assert_eq!(sqrt2.try_cmp(&sqrt2).unwrap(), Ordering::Equal);
        // sqrt2 - 1 > 0 because 1 < sqrt2 < 2
        let m = val(&b, rat_int(-1), rat_int(1));
        assert_eq!(m.sign().unwrap(), Ordering::Greater);
    }

    #[test]
    fn floor_ratio_examples() {
        let b = sqrt2_basis();
        // 1 / (sqrt2 - 1) = sqrt2 + 1 in (2, 3)
        let one = Real::one(&b);
        let den = val(&b, rat_int(-1), rat_int(1));
        assert_eq!(Real::floor_ratio(&one, &den).unwrap(), BigInt::from(2));
        // exact rational division
        let n = Real::from_rational(&b, rat(3, 4));
        let d = Real::from_rational(&b, rat(1, 4));
        assert_eq!(Real::floor_ratio(&n, &d).unwrap(), BigInt::from(3));
        // 0 / x = 0 for x > 0
        assert_eq!(
            Real::floor_ratio(&Real::zero(&b), &den).unwrap(),
            BigInt::from(0)
        );
        // exact multiple: 3*(sqrt2-1) / (sqrt2-1) = 3
        let three = den.scale(&rat_int(3));
        assert_eq!(Real::floor_ratio(&three, &den).unwrap(), BigInt::from(3));
        assert!(matches!(
            Real::floor_ratio(&one, &Real::zero(&b)),
            Err(Error::NonPositiveDenominator)
        ));
    }

    #[test]
    fn multi_generator_refinement() {
        let b = Basis::new(
            vec![Generator::Sqrt(rat_int(2)), Generator::Sqrt(rat_int(3))],
            SessionLimits::default(),
        )
        .unwrap();
        // sqrt3 - sqrt2 > 0 needs the interval path (two irrational coords).
        let x = Real::new(b.clone(), vec![rat_int(0), rat_int(-1), rat_int(1)]).unwrap();
        assert_eq!(x.sign().unwrap(), Ordering::Greater);
        assert_eq!((-&x).sign().unwrap(), Ordering::Less);
    }

    #[test]
    fn opaque_precision_exhaustion_surfaces() {
        // A short oracle cannot settle a sign this tight.
        let g = Generator::Opaque {
            low: rat(141, 1000),
            high: rat(142, 1000),
            digits: "0.1415".into(),
        };
        let b = Basis::new(vec![g], SessionLimits::default()).unwrap();
        let x = Real::new(b.clone(), vec![rat(-1415, 10000), rat_int(1)]).unwrap();
        assert!(matches!(
            x.sign(),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn display_form() {
        let b = sqrt2_basis();
        assert_eq!(val(&b, rat(1, 2), rat(-1, 3)).to_string(), "1/2 - 1/3*g1");
        assert_eq!(Real::zero(&b).to_string(), "0");
    }
}
