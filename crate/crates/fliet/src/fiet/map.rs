//! Canonical piecewise isometries of [0,1) and the group operations.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{try_sort_by, BasisRef, Real};
use crate::fiet::piece::Piece;

/// An interval exchange transformation with flips in canonical form: the
/// pieces are sorted, tile [0,1), carry no mergeable breakpoint, and their
/// images tile [0,1) as well. Two maps that agree off a finite set have the
/// same canonical form, so structural equality is equality in the quotient
/// group.
#[derive(Debug, Clone)]
pub struct Fiet {
    basis: BasisRef,
    pieces: Vec<Piece>,
}

impl PartialEq for Fiet {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_as(&other.basis) && self.pieces == other.pieces
    }
}
impl Eq for Fiet {}

impl Fiet {
    pub fn identity(basis: &BasisRef) -> Fiet {
        Fiet {
            basis: basis.clone(),
            pieces: vec![Piece::translation(
                Real::zero(basis),
                Real::one(basis),
                Real::zero(basis),
            )],
        }
    }

    /// Builds the canonical form from raw pieces: sort, validate the domain
    /// tiling, merge continuations, validate the image tiling.
    pub fn canonicalize(basis: &BasisRef, raw: Vec<Piece>) -> Result<Fiet> {
        Fiet::canonicalize_impl(basis, raw, true)
    }

    /// Canonical form for pieces produced by the group operations
    /// themselves. Composition and inversion of bijections are bijections,
    /// so the image-tiling check is skipped.
    fn canonicalize_trusted(basis: &BasisRef, raw: Vec<Piece>) -> Result<Fiet> {
        Fiet::canonicalize_impl(basis, raw, false)
    }

    fn canonicalize_impl(basis: &BasisRef, raw: Vec<Piece>, check_images: bool) -> Result<Fiet> {
        let mut pieces = Vec::with_capacity(raw.len());
        for p in raw {
            for v in [&p.left, &p.right, &p.offset] {
                if !v.basis().same_as(basis) {
                    return Err(Error::BasisMismatch);
                }
            }
            match p.left.try_cmp(&p.right)? {
                Ordering::Less => pieces.push(p),
                Ordering::Equal => {} // degenerate piece: measure zero, drop
                Ordering::Greater => {
                    return Err(Error::ParameterOutOfRange(format!(
                        "piece with left {} > right {}",
                        p.left, p.right
                    )))
                }
            }
        }
        if pieces.is_empty() {
            return Err(Error::CoverageGap("0".into()));
        }
        if pieces.len() > basis.piece_cap() {
            return Err(Error::PieceCapExceeded {
                count: pieces.len(),
                cap: basis.piece_cap(),
            });
        }
        let sorted = {
            let mut ok = true;
            for w in pieces.windows(2) {
                if w[0].left.try_cmp(&w[1].left)? == Ordering::Greater {
                    ok = false;
                    break;
                }
            }
            ok
        };
        if !sorted {
            try_sort_by(&mut pieces, |a, b| a.left.try_cmp(&b.left))?;
        }

        // Domain tiling: consecutive, starting at 0, ending at 1.
        let zero = Real::zero(basis);
        let one = Real::one(basis);
        if pieces[0].left != zero {
            return Err(Error::CoverageGap("0".into()));
        }
        for w in pieces.windows(2) {
            match w[0].right.try_cmp(&w[1].left)? {
                Ordering::Equal => {}
                Ordering::Less => return Err(Error::CoverageGap(w[0].right.to_string())),
                Ordering::Greater => {
                    return Err(Error::OverlappingPieces(w[1].left.to_string()))
                }
            }
        }
        if pieces.last().unwrap().right != one {
            match pieces.last().unwrap().right.try_cmp(&one)? {
                Ordering::Less => {
                    return Err(Error::CoverageGap(pieces.last().unwrap().right.to_string()))
                }
                _ => {
                    return Err(Error::ParameterOutOfRange(
                        "piece extends beyond 1".into(),
                    ))
                }
            }
        }

        // Merge pieces that continue the same isometry across a breakpoint.
        let mut merged: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(prev) if prev.same_map(&p) => prev.right = p.right,
                _ => merged.push(p),
            }
        }

        // Image tiling (bijectivity up to finitely many points).
        if check_images {
            let mut images: Vec<(Real, Real)> = merged.iter().map(Piece::image).collect();
            try_sort_by(&mut images, |a, b| a.0.try_cmp(&b.0))?;
            let mut cursor = zero;
            for (il, ir) in &images {
                if il != &cursor {
                    return Err(Error::ImagesNotTiling);
                }
                if il.try_cmp(ir)? != Ordering::Less {
                    return Err(Error::ImagesNotTiling);
                }
                cursor = ir.clone();
            }
            if cursor != one {
                return Err(Error::ImagesNotTiling);
            }
        }

        Ok(Fiet {
            basis: basis.clone(),
            pieces: merged,
        })
    }

    pub fn basis(&self) -> &BasisRef {
        &self.basis
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Number of pieces; equals the breakpoint count with the convention
    /// that the left endpoint 0 is always a discontinuity.
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Breakpoints: the left endpoints of the pieces (0 included).
    pub fn breakpoints(&self) -> Vec<Real> {
        self.pieces.iter().map(|p| p.left.clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_identity_map()
    }

    pub fn is_flip_free(&self) -> bool {
        self.pieces.iter().all(|p| !p.flip)
    }

    /// All breakpoints and offsets rational.
    pub fn is_rational(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| p.left.is_rational() && p.offset.is_rational())
    }

    /// Index of the piece whose half-open interval [left, right) contains x.
    fn piece_index_at(&self, x: &Real) -> Result<usize> {
        let mut lo = 0usize;
        let mut hi = self.pieces.len();
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.pieces[mid].left.le(x)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Evaluates at a point using the piece to its right (the classical
    /// right-continuity convention for flip-free maps).
    pub fn apply(&self, x: &Real) -> Result<Real> {
        Ok(self.pieces[self.piece_index_at(x)?].map_point(x))
    }

    /// The piece whose half-open interval [left, right) contains x.
    pub fn piece_at(&self, x: &Real) -> Result<&Piece> {
        Ok(&self.pieces[self.piece_index_at(x)?])
    }

    /// Composition `self ∘ g` (apply `g` first).
    pub fn compose(&self, g: &Fiet) -> Result<Fiet> {
        if !self.basis.same_as(&g.basis) {
            return Err(Error::BasisMismatch);
        }
        let mut raw: Vec<Piece> = Vec::with_capacity(self.pieces.len() + g.pieces.len());
        for q in &g.pieces {
            let (ql, qr) = q.image();
            // Sub-pieces of q cut by the breakpoints of self inside (ql, qr).
            let mut idx = self.piece_index_at(&ql)?;
            let mut cuts: Vec<Piece> = Vec::new();
            loop {
                let f = &self.pieces[idx];
                let lo = if f.left.le(&ql)? { ql.clone() } else { f.left.clone() };
                let hi = if qr.le(&f.right)? { qr.clone() } else { f.right.clone() };
                // Pull [lo, hi) back through q.
                let (xl, xr) = if q.flip {
                    (&q.offset - &hi, &q.offset - &lo)
                } else {
                    (&lo - &q.offset, &hi - &q.offset)
                };
                let flip = f.flip != q.flip;
                let offset = if f.flip {
                    &f.offset - &q.offset
                } else {
                    &f.offset + &q.offset
                };
                cuts.push(Piece {
                    left: xl,
                    right: xr,
                    flip,
                    offset,
                });
                if qr.le(&f.right)? || idx + 1 == self.pieces.len() {
                    break;
                }
                idx += 1;
            }
            // Keep the output in domain order: a flipped q reverses the cuts.
            if q.flip {
                cuts.reverse();
            }
            raw.extend(cuts);
        }
        Fiet::canonicalize_trusted(&self.basis, raw)
    }

    pub fn inverse(&self) -> Result<Fiet> {
        let raw = self.pieces.iter().map(Piece::inverted).collect();
        Fiet::canonicalize_trusted(&self.basis, raw)
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Fiet) -> Result<Fiet> {
        h.compose(self)?.compose(&h.inverse()?)
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Fiet, b: &Fiet) -> Result<Fiet> {
        a.compose(b)?.compose(&a.inverse()?)?.compose(&b.inverse()?)
    }

    pub fn is_involution(&self) -> Result<bool> {
        Ok(self.compose(self)?.is_identity())
    }

    /// Binary exponentiation; `n = 0` gives the identity.
    pub fn power(&self, n: &BigUint) -> Result<Fiet> {
        let mut result = Fiet::identity(&self.basis);
        let mut base = self.clone();
        let mut n = n.clone();
        let two = BigUint::from(2u32);
        while !n.is_zero() {
            if &n % &two == BigUint::from(1u32) {
                result = result.compose(&base)?;
            }
            n /= &two;
            if !n.is_zero() {
                base = base.compose(&base)?;
            }
        }
        Ok(result)
    }

    /// Maximal intervals on which the map is the identity (interior; the
    /// finitely many isolated fixed points are ignored).
    pub fn fixed_intervals(&self) -> Vec<(Real, Real)> {
        self.pieces
            .iter()
            .filter(|p| p.is_identity_map())
            .map(|p| (p.left.clone(), p.right.clone()))
            .collect()
    }

    /// Lebesgue measure of the fixed point set.
    pub fn fix_measure(&self) -> Real {
        let mut total = Real::zero(&self.basis);
        for (l, r) in self.fixed_intervals() {
            total = &total + &(&r - &l);
        }
        total
    }

    pub fn support_measure(&self) -> Real {
        &Real::one(&self.basis) - &self.fix_measure()
    }

    /// True when the support is contained in [l, r).
    pub fn supported_in(&self, l: &Real, r: &Real) -> Result<bool> {
        for p in &self.pieces {
            if p.is_identity_map() {
                continue;
            }
            if !(l.le(&p.left)? && p.right.le(r)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Recognizes a restricted rotation: returns the angle and support
    /// interval of `R_{α,J}` when the map is one (α > 0).
    pub fn as_restricted_rotation(&self) -> Result<Option<(Real, (Real, Real))>> {
        let moving: Vec<&Piece> = self
            .pieces
            .iter()
            .filter(|p| !p.is_identity_map())
            .collect();
        if moving.len() != 2 || moving.iter().any(|p| p.flip) {
            return Ok(None);
        }
        let (p1, p2) = (moving[0], moving[1]);
        if p1.right != p2.left {
            return Ok(None);
        }
        let j = (p1.left.clone(), p2.right.clone());
        let length = &j.1 - &j.0;
        // First block shifts forward by α, second wraps back by α - |J|.
        let alpha = p1.offset.clone();
        if alpha.sign()? != Ordering::Greater {
            return Ok(None);
        }
        if &p2.offset - &(&alpha - &length) != Real::zero(&self.basis) {
            return Ok(None);
        }
        // The wrap must land exactly at the left end of J.
        if &p1.right + &alpha != j.1 {
            return Ok(None);
        }
        Ok(Some((alpha, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;

    fn b() -> BasisRef {
        Basis::rational()
    }

    fn r(basis: &BasisRef, n: i64, d: i64) -> Real {
        Real::from_rational(basis, rat(n, d))
    }

    fn tr(basis: &BasisRef, l: (i64, i64), rr: (i64, i64), o: (i64, i64)) -> Piece {
        Piece::translation(r(basis, l.0, l.1), r(basis, rr.0, rr.1), r(basis, o.0, o.1))
    }

    #[test]
    fn canonicalize_merges_and_is_idempotent() {
        let basis = b();
        // Two pieces both translating by 1/4 on (0,1/4),(1/4,1/2) plus the
        // wrap piece merge into a 2-piece rotation.
        let raw = vec![
            tr(&basis, (0, 1), (1, 4), (1, 2)),
            tr(&basis, (1, 4), (1, 2), (1, 2)),
            tr(&basis, (1, 2), (1, 1), (-1, 2)),
        ];
        let f = Fiet::canonicalize(&basis, raw).unwrap();
        assert_eq!(f.piece_count(), 2);
        let again = Fiet::canonicalize(&basis, f.pieces().to_vec()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn canonicalize_rejects_bad_tilings() {
        let basis = b();
        let gap = vec![
            tr(&basis, (0, 1), (1, 4), (0, 1)),
            tr(&basis, (1, 2), (1, 1), (0, 1)),
        ];
        assert!(matches!(
            Fiet::canonicalize(&basis, gap),
            Err(Error::CoverageGap(_))
        ));
        let overlap = vec![
            tr(&basis, (0, 1), (1, 2), (0, 1)),
            tr(&basis, (1, 4), (1, 1), (0, 1)),
        ];
        assert!(matches!(
            Fiet::canonicalize(&basis, overlap),
            Err(Error::OverlappingPieces(_))
        ));
        // Domain tiles but both pieces map onto (0,1/2): not a bijection.
        let not_bij = vec![
            tr(&basis, (0, 1), (1, 2), (0, 1)),
            tr(&basis, (1, 2), (1, 1), (-1, 2)),
        ];
        assert!(matches!(
            Fiet::canonicalize(&basis, not_bij),
            Err(Error::ImagesNotTiling)
        ));
    }

    #[test]
    fn single_identity_piece_is_identity() {
        let basis = b();
        let f = Fiet::canonicalize(
            &basis,
            vec![tr(&basis, (0, 1), (1, 1), (0, 1))],
        )
        .unwrap();
        assert!(f.is_identity());
        assert_eq!(f, Fiet::identity(&basis));
    }
}
