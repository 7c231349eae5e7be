//! Combinatorial description (lengths, permutation, flips) and the length
//! metric on maps with shared combinatorics.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{try_sort_by, BasisRef, Real};
use crate::fiet::piece::Piece;
use crate::fiet::Fiet;

/// `(λ(g), π(g), U(g))`: piece lengths, the permutation sending piece i to
/// image slot π(i) (0-based), and the flip vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialDescription {
    pub lengths: Vec<Real>,
    pub permutation: Vec<usize>,
    pub flips: Vec<bool>,
}

impl CombinatorialDescription {
    pub fn m(&self) -> usize {
        self.lengths.len()
    }

    pub fn inverse_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.permutation.len()];
        for (i, &j) in self.permutation.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }
}

/// Reads off the combinatorial description of a canonical map.
pub fn combinatorics(f: &Fiet) -> Result<CombinatorialDescription> {
    let lengths: Vec<Real> = f.pieces().iter().map(Piece::length).collect();
    let flips: Vec<bool> = f.pieces().iter().map(|p| p.flip).collect();
    let mut images: Vec<(Real, usize)> = f
        .pieces()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.image().0, i))
        .collect();
    try_sort_by(&mut images, |a, b| a.0.try_cmp(&b.0))?;
    let mut permutation = vec![0; images.len()];
    for (slot, (_, piece)) in images.into_iter().enumerate() {
        permutation[piece] = slot;
    }
    Ok(CombinatorialDescription {
        lengths,
        permutation,
        flips,
    })
}

/// Discontinuity points `a_i = Σ_{k<i} λ_k` of a canonical map.
pub fn a_points(f: &Fiet) -> Vec<Real> {
    f.breakpoints()
}

/// Translation amounts `δ_i` of a flip-free map.
pub fn translations(f: &Fiet) -> Result<Vec<Real>> {
    if !f.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    Ok(f.pieces().iter().map(|p| p.offset.clone()).collect())
}

/// Builds the map with the given piece data: piece i has length
/// `lengths[i]`, is sent to image slot `permutation[i]`, reversed when
/// `flips[i]`. Zero lengths are dropped first.
pub fn from_description(
    basis: &BasisRef,
    lengths: &[Real],
    permutation: &[usize],
    flips: &[bool],
) -> Result<Fiet> {
    if lengths.len() != permutation.len() || lengths.len() != flips.len() {
        return Err(Error::ParameterOutOfRange(
            "combinatorial data lengths disagree".into(),
        ));
    }
    let keep: Vec<usize> = (0..lengths.len())
        .filter(|&i| !lengths[i].is_zero())
        .collect();
    for &i in &keep {
        if lengths[i].sign()? == Ordering::Less {
            return Err(Error::ParameterOutOfRange(format!(
                "negative length {}",
                lengths[i]
            )));
        }
    }
    // Ranks of the surviving slots, in slot order.
    let mut slots: Vec<usize> = keep.iter().map(|&i| permutation[i]).collect();
    slots.sort_unstable();
    if slots.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::ParameterOutOfRange(
            "permutation is not a bijection".into(),
        ));
    }
    let slot_rank = |s: usize| slots.binary_search(&s).expect("slot present");

    // Slot start positions by cumulating lengths in image order.
    let mut slot_lengths = vec![Real::zero(basis); keep.len()];
    for &i in &keep {
        slot_lengths[slot_rank(permutation[i])] = lengths[i].clone();
    }
    let mut slot_starts = Vec::with_capacity(keep.len());
    let mut acc = Real::zero(basis);
    for len in &slot_lengths {
        slot_starts.push(acc.clone());
        acc = &acc + len;
    }

    let mut raw = Vec::with_capacity(keep.len());
    let mut left = Real::zero(basis);
    for &i in &keep {
        let right = &left + &lengths[i];
        let start = &slot_starts[slot_rank(permutation[i])];
        let (flip, offset) = if flips[i] {
            (true, start + &right)
        } else {
            (false, start - &left)
        };
        raw.push(Piece {
            left: left.clone(),
            right: right.clone(),
            flip,
            offset,
        });
        left = right;
    }
    Fiet::canonicalize(basis, raw)
}

/// The metric `d(f,g) = Σ |λ_i(f) - λ_i(g)|` on flip-free maps sharing the
/// same piece count and permutation.
pub fn metric_d(f: &Fiet, g: &Fiet) -> Result<Real> {
    if !f.is_flip_free() || !g.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    let cf = combinatorics(f)?;
    let cg = combinatorics(g)?;
    if cf.m() != cg.m() || cf.permutation != cg.permutation {
        return Err(Error::DomainMismatch);
    }
    let mut total = Real::zero(f.basis());
    for (a, b) in cf.lengths.iter().zip(&cg.lengths) {
        total = &total + &(a - b).abs_val()?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::generators::rotation;

    fn q(basis: &BasisRef, n: i64, d: i64) -> Real {
        Real::from_rational(basis, rat(n, d))
    }

    #[test]
    fn rotation_combinatorics() {
        let basis = Basis::rational();
        let f = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let c = combinatorics(&f).unwrap();
        // λ = (1-a, a) = (2/3, 1/3), π a transposition, δ = (a, a-1).
        assert_eq!(c.lengths, vec![q(&basis, 2, 3), q(&basis, 1, 3)]);
        assert_eq!(c.permutation, vec![1, 0]);
        assert_eq!(
            translations(&f).unwrap(),
            vec![q(&basis, 1, 3), q(&basis, -2, 3)]
        );
        // a_i(R_{1/3}) = (0, 2/3)
        assert_eq!(a_points(&f), vec![q(&basis, 0, 1), q(&basis, 2, 3)]);
    }

    #[test]
    fn identity_combinatorics() {
        let basis = Basis::rational();
        let id = Fiet::identity(&basis);
        let c = combinatorics(&id).unwrap();
        assert_eq!(c.m(), 1);
        assert_eq!(c.lengths, vec![Real::one(&basis)]);
        assert_eq!(translations(&id).unwrap(), vec![Real::zero(&basis)]);
    }

    #[test]
    fn description_round_trip_matches_star_formula() {
        let basis = Basis::rational();
        let lengths = vec![q(&basis, 1, 2), q(&basis, 1, 4), q(&basis, 1, 4)];
        let perm = vec![1, 0, 2];
        let flips = vec![false, false, false];
        let f = from_description(&basis, &lengths, &perm, &flips).unwrap();
        let c = combinatorics(&f).unwrap();
        assert_eq!(c.lengths, lengths);
        assert_eq!(c.permutation, perm);
        // δ_i = -Σ_{k<i} λ_k + Σ_{k<π(i)} λ_{π⁻¹(k)} (all indices 0-based).
        let inv = c.inverse_permutation();
        let deltas = translations(&f).unwrap();
        for i in 0..3 {
            let mut expect = Real::zero(&basis);
            for k in 0..i {
                expect = &expect - &lengths[k];
            }
            for k in 0..perm[i] {
                expect = &expect + &lengths[inv[k]];
            }
            assert_eq!(deltas[i], expect);
        }
    }

    #[test]
    fn metric_on_rotations() {
        let basis = Basis::rational();
        let f = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let g = rotation(&basis, &q(&basis, 1, 2)).unwrap();
        // |2/3 - 1/2| + |1/3 - 1/2| = 1/3
        assert_eq!(metric_d(&f, &g).unwrap(), q(&basis, 1, 3));
        assert!(metric_d(&f, &f).unwrap().is_zero());
        let id = Fiet::identity(&basis);
        assert!(matches!(metric_d(&f, &id), Err(Error::DomainMismatch)));
    }
}
