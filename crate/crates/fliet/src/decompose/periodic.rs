//! Periodic normal form and the constructions built on it: square roots,
//! reversing involutions, and the one-commutator witness for periodic maps.
//!
//! A periodic flip-free map is conjugate to a product of finite-order
//! restricted rotations with disjoint supports. The conjugator reorders the
//! orbit of the breakpoint partition so that each cycle becomes a block of
//! consecutive slots; on a block the map is rotation by one slot. Maps that
//! already are disjoint rotation blocks skip the orbit walk entirely.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{lcm_biguint, Rat};
use crate::exact::{try_sort_by, BasisRef, Real};
use crate::fiet::{Fiet, Piece};

/// A rotation block: rotation by `angle` on `[start, end)`, of finite order
/// `order` (the denominator of the reduced ratio angle/length).
#[derive(Debug, Clone)]
pub struct RotationBlock {
    pub start: Real,
    pub end: Real,
    pub angle: Real,
    pub order: BigUint,
}

/// Conjugating normal form: `conjugator ∘ p ∘ conjugator⁻¹` equals the
/// product of the (disjoint, consecutive) blocks.
#[derive(Debug, Clone)]
pub struct PeriodicNormalForm {
    pub conjugator: Fiet,
    pub blocks: Vec<RotationBlock>,
}

impl PeriodicNormalForm {
    pub fn order(&self) -> BigUint {
        self.blocks
            .iter()
            .fold(BigUint::one(), |acc, b| lcm_biguint(&acc, &b.order))
    }

    /// The product of the blocks as one map.
    pub fn blocks_map(&self, basis: &BasisRef) -> Result<Fiet> {
        blocks_rotation_map(basis, &self.blocks, false)
    }
}

/// `b/a` of two span elements when that ratio is rational.
pub(crate) fn rational_ratio(b: &Real, a: &Real) -> Option<Rat> {
    let (i, ai) = a.coords().iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let rho = &b.coords()[i] / ai;
    (&a.scale(&rho) == b).then_some(rho)
}

fn block_order(angle: &Real, length: &Real) -> Result<BigUint> {
    let ratio = rational_ratio(angle, length).ok_or(Error::NotPeriodic)?;
    if !ratio.is_positive() || ratio >= Rat::one() {
        return Err(Error::NotPeriodic);
    }
    Ok(ratio.denom().magnitude().clone())
}

/// Recognizes a product of disjoint two-piece rotation blocks (possibly
/// none). Returns the raw block intervals and angles.
fn as_disjoint_rotation_blocks(f: &Fiet) -> Result<Option<Vec<(Real, Real, Real)>>> {
    let pieces = f.pieces();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < pieces.len() {
        if pieces[i].is_identity_map() {
            i += 1;
            continue;
        }
        if pieces[i].flip || i + 1 >= pieces.len() || pieces[i + 1].flip {
            return Ok(None);
        }
        let (p1, p2) = (&pieces[i], &pieces[i + 1]);
        let alpha = p1.offset.clone();
        let length = &p2.right - &p1.left;
        let shape_ok = p1.right == p2.left
            && alpha.sign()? == std::cmp::Ordering::Greater
            && &p1.right + &alpha == p2.right
            && &p2.offset + &length == alpha;
        if !shape_ok {
            return Ok(None);
        }
        blocks.push((p1.left.clone(), p2.right.clone(), alpha));
        i += 2;
    }
    Ok(Some(blocks))
}

/// Normal form of a periodic flip-free map. Fails with [`Error::NotPeriodic`]
/// when the map is not periodic (the orbit walk would not close).
pub fn periodic_normal_form(p: &Fiet) -> Result<PeriodicNormalForm> {
    if !p.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    let basis = p.basis();
    if let Some(raw) = as_disjoint_rotation_blocks(p)? {
        let blocks = raw
            .into_iter()
            .map(|(start, end, angle)| {
                let order = block_order(&angle, &(&end - &start))?;
                Ok(RotationBlock {
                    start,
                    end,
                    angle,
                    order,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(PeriodicNormalForm {
            conjugator: Fiet::identity(basis),
            blocks,
        });
    }

    // Orbit closure of the breakpoints: a finite set exactly when p is
    // periodic. Orbits of a bijection are disjoint cycles, so the walk from
    // each start either closes or immediately lands in a known cycle.
    let walk_limit = basis.piece_cap().saturating_mul(4);
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let mut points: Vec<Real> = Vec::new();
    for start in p.breakpoints() {
        let mut x = start;
        while seen.insert(x.coords().to_vec()) {
            points.push(x.clone());
            x = p.apply(&x)?;
            if points.len() > walk_limit {
                return Err(Error::NotPeriodic);
            }
        }
    }
    try_sort_by(&mut points, |a, b| a.try_cmp(b))?;
    let n = points.len();
    let index_of = |x: &Real| -> Result<usize> {
        let mut lo = 0usize;
        let mut hi = n;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if points[mid].le(x)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if &points[lo] == x {
            Ok(lo)
        } else {
            Err(Error::NotPeriodic)
        }
    };
    let interval_len = |k: usize| -> Real {
        if k + 1 < n {
            &points[k + 1] - &points[k]
        } else {
            &Real::one(basis) - &points[k]
        }
    };
    let mut next = vec![0usize; n];
    for k in 0..n {
        next[k] = index_of(&p.apply(&points[k])?)?;
    }

    // Group into cycles; lay each cycle out as consecutive slots.
    let mut visited = vec![false; n];
    let mut h_pieces: Vec<Piece> = Vec::new();
    let mut blocks: Vec<RotationBlock> = Vec::new();
    let mut acc = Real::zero(basis);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        loop {
            visited[k] = true;
            cycle.push(k);
            k = next[k];
            if k == start {
                break;
            }
        }
        let len = interval_len(start);
        let mut slot = acc.clone();
        for &idx in &cycle {
            debug_assert!(interval_len(idx) == len, "cycle intervals must be equal");
            h_pieces.push(Piece::translation(
                points[idx].clone(),
                &points[idx] + &len,
                &slot - &points[idx],
            ));
            slot = &slot + &len;
        }
        if cycle.len() >= 2 {
            blocks.push(RotationBlock {
                start: acc.clone(),
                end: slot.clone(),
                angle: len,
                order: BigUint::from(cycle.len()),
            });
        }
        acc = slot;
    }
    let conjugator = Fiet::canonicalize(basis, h_pieces)?;
    Ok(PeriodicNormalForm { conjugator, blocks })
}

/// The product of the block rotations (halved angles when `halve`), built
/// directly from the block data.
fn blocks_rotation_map(basis: &BasisRef, blocks: &[RotationBlock], halve: bool) -> Result<Fiet> {
    let mut raw = Vec::new();
    let mut cursor = Real::zero(basis);
    for b in blocks {
        if cursor != b.start {
            raw.push(Piece::translation(
                cursor.clone(),
                b.start.clone(),
                Real::zero(basis),
            ));
        }
        let angle = if halve { b.angle.halve() } else { b.angle.clone() };
        let length = &b.end - &b.start;
        let cut = &b.end - &angle;
        raw.push(Piece::translation(b.start.clone(), cut.clone(), angle.clone()));
        raw.push(Piece::translation(cut, b.end.clone(), &angle - &length));
        cursor = b.end.clone();
    }
    let one = Real::one(basis);
    if cursor != one {
        raw.push(Piece::translation(cursor, one, Real::zero(basis)));
    }
    Fiet::canonicalize(basis, raw)
}

/// The flip-free involution reversing every block rotation: on a block with
/// reduced ratio a/b it sends slot t to slot -t (mod b) by translation.
fn blocks_reversal_map(basis: &BasisRef, blocks: &[RotationBlock], halve: bool) -> Result<Fiet> {
    let mut raw = Vec::new();
    let mut cursor = Real::zero(basis);
    for b in blocks {
        if cursor != b.start {
            raw.push(Piece::translation(
                cursor.clone(),
                b.start.clone(),
                Real::zero(basis),
            ));
        }
        let angle = if halve { b.angle.halve() } else { b.angle.clone() };
        let length = &b.end - &b.start;
        let ratio = rational_ratio(&angle, &length).ok_or(Error::NotPeriodic)?;
        let slots = ratio.denom().clone();
        let slot = length.scale(&Rat::new(1.into(), slots.clone()));
        let mut t = num_bigint::BigInt::zero();
        let mut left = b.start.clone();
        while t < slots {
            let target = if t.is_zero() {
                num_bigint::BigInt::zero()
            } else {
                &slots - &t
            };
            let shift = Rat::from_integer(&target - &t);
            raw.push(Piece::translation(
                left.clone(),
                &left + &slot,
                slot.scale(&shift),
            ));
            left = &left + &slot;
            t += 1;
        }
        cursor = b.end.clone();
    }
    let one = Real::one(basis);
    if cursor != one {
        raw.push(Piece::translation(cursor, one, Real::zero(basis)));
    }
    Fiet::canonicalize(basis, raw)
}

fn conjugate_back(nf: &PeriodicNormalForm, inner: &Fiet) -> Result<Fiet> {
    // h p h⁻¹ = blocks, so p = h⁻¹ blocks h; transported constructions
    // conjugate the same way.
    inner.conjugate_by(&nf.conjugator.inverse()?)
}

/// A periodic square root: `q ∘ q = p`, by halving every block angle.
pub fn sqrt_of_periodic(p: &Fiet) -> Result<Fiet> {
    let nf = periodic_normal_form(p)?;
    let half = blocks_rotation_map(p.basis(), &nf.blocks, true)?;
    conjugate_back(&nf, &half)
}

/// The flip-free involution `h` with `h ∘ q ∘ h⁻¹ = q⁻¹`.
pub fn reverse_periodic(q: &Fiet) -> Result<Fiet> {
    let nf = periodic_normal_form(q)?;
    let w = blocks_reversal_map(q.basis(), &nf.blocks, false)?;
    conjugate_back(&nf, &w)
}

/// One-commutator witness for a periodic map: with `q` a periodic square
/// root and `h` its reversing involution, `[q, h] = q² = p`.
pub fn periodic_as_commutator(p: &Fiet) -> Result<(Fiet, Fiet)> {
    let nf = periodic_normal_form(p)?;
    let q = conjugate_back(&nf, &blocks_rotation_map(p.basis(), &nf.blocks, true)?)?;
    let h = conjugate_back(&nf, &blocks_reversal_map(p.basis(), &nf.blocks, true)?)?;
    Ok((q, h))
}

/// Strong-reversal witness for a periodic map: `(h, h ∘ p)` with `h` the
/// reversing involution.
pub fn periodic_sr_witness(p: &Fiet) -> Result<(Fiet, Fiet)> {
    let nf = periodic_normal_form(p)?;
    let h = conjugate_back(&nf, &blocks_reversal_map(p.basis(), &nf.blocks, false)?)?;
    let i2 = h.compose(p)?;
    Ok((h, i2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::{from_description, restricted_rotation, rotation, symmetry};

    fn q(basis: &BasisRef, n: i64, d: i64) -> Real {
        Real::from_rational(basis, rat(n, d))
    }

    #[test]
    fn rotation_is_already_normal() {
        let basis = Basis::rational();
        let f = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let nf = periodic_normal_form(&f).unwrap();
        assert!(nf.conjugator.is_identity());
        assert_eq!(nf.blocks.len(), 1);
        assert_eq!(nf.order(), BigUint::from(3u32));
        assert_eq!(nf.blocks_map(&basis).unwrap(), f);
    }

    #[test]
    fn disjoint_rotations_pass_through() {
        let basis = Basis::rational();
        let r1 = restricted_rotation(&q(&basis, 1, 8), &q(&basis, 0, 1), &q(&basis, 1, 4)).unwrap();
        let r2 = restricted_rotation(&q(&basis, 1, 9), &q(&basis, 2, 3), &q(&basis, 1, 1)).unwrap();
        let p = r1.compose(&r2).unwrap();
        let nf = periodic_normal_form(&p).unwrap();
        assert!(nf.conjugator.is_identity());
        assert_eq!(nf.blocks.len(), 2);
        // orders 2 and 3 with disjoint supports
        assert_eq!(nf.order(), BigUint::from(6u32));
    }

    #[test]
    fn normal_form_replays_on_a_grid_map() {
        // A rational 3-piece map on the 1/12 grid; the normal form must
        // replay h p h⁻¹ = blocks exactly.
        let basis = Basis::rational();
        let lengths = vec![q(&basis, 5, 12), q(&basis, 1, 3), q(&basis, 1, 4)];
        let p = from_description(&basis, &lengths, &[1, 0, 2], &[false; 3]).unwrap();
        let nf = periodic_normal_form(&p).unwrap();
        let lhs = p.conjugate_by(&nf.conjugator).unwrap();
        assert_eq!(lhs, nf.blocks_map(&basis).unwrap());
    }

    #[test]
    fn sqrt_squares_back() {
        let basis = Basis::rational();
        let p = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let s = sqrt_of_periodic(&p).unwrap();
        assert_eq!(s, rotation(&basis, &q(&basis, 1, 6)).unwrap());
        assert_eq!(s.compose(&s).unwrap(), p);
        assert!(sqrt_of_periodic(&Fiet::identity(&basis))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn reversal_conjugates_to_the_inverse() {
        let basis = Basis::rational();
        let p = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let h = reverse_periodic(&p).unwrap();
        assert!(h.is_involution().unwrap());
        assert!(h.is_flip_free());
        assert_eq!(p.conjugate_by(&h).unwrap(), p.inverse().unwrap());
        // h swaps [1/3,2/3) and [2/3,1), fixing [0,1/3).
        assert_eq!(h.apply(&q(&basis, 1, 3)).unwrap(), q(&basis, 2, 3));
        assert_eq!(h.apply(&q(&basis, 0, 1)).unwrap(), q(&basis, 0, 1));
    }

    #[test]
    fn reversal_of_an_involution_can_be_trivial() {
        let basis = Basis::rational();
        let i = symmetry(&Real::zero(&basis), &Real::one(&basis)).unwrap();
        // Flip maps are outside the flip-free normal form.
        assert!(matches!(periodic_normal_form(&i), Err(Error::FlipPresent)));
        // The flip-free involution R_{1/2} reverses to itself trivially.
        let r = rotation(&basis, &q(&basis, 1, 2)).unwrap();
        let h = reverse_periodic(&r).unwrap();
        assert_eq!(r.conjugate_by(&h).unwrap(), r.inverse().unwrap());
    }

    #[test]
    fn commutator_witness_replays() {
        let basis = Basis::rational();
        let p = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let (a, h) = periodic_as_commutator(&p).unwrap();
        assert_eq!(a, rotation(&basis, &q(&basis, 1, 6)).unwrap());
        assert_eq!(Fiet::commutator(&a, &h).unwrap(), p);
        // Identity gets the trivial witness.
        let (a0, h0) = periodic_as_commutator(&Fiet::identity(&basis)).unwrap();
        assert!(a0.is_identity() && h0.is_identity());
    }

    #[test]
    fn sr_witness_is_a_pair_of_involutions() {
        let basis = Basis::rational();
        let p = rotation(&basis, &q(&basis, 2, 5)).unwrap();
        let (i1, i2) = periodic_sr_witness(&p).unwrap();
        assert!(i1.is_involution().unwrap());
        assert!(i2.is_involution().unwrap());
        assert_eq!(i1.compose(&i2).unwrap(), p);
    }

    #[test]
    fn non_periodic_maps_are_rejected() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        assert!(matches!(periodic_normal_form(&f), Err(Error::NotPeriodic)));
    }
}
