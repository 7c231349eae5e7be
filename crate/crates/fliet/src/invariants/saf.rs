//! The length/translation tensor invariant of flip-free maps.
//!
//! For a flip-free map with piece lengths λ_i and translations δ_i the
//! invariant is Σ λ_i ⊗ δ_i in ℝ ⊗_ℚ ℝ. Relative to the declared basis it is
//! the rational matrix M[j][k] = Σ_i λ_i^(j) δ_i^(k), where superscripts are
//! basis coordinates. It is additive under composition and vanishes exactly
//! on the commutator subgroup of the flip-free group.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{format_rat, Rat};
use crate::fiet::Fiet;

/// Rational (p+1)×(p+1) matrix representing the tensor in basis coordinates.
/// Stored as the full matrix; antisymmetry is an empirical observation
/// checked in tests, not an assumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafInvariant {
    dim: usize,
    entries: Vec<Rat>,
}

impl SafInvariant {
    pub fn zero(dim: usize) -> SafInvariant {
        SafInvariant {
            dim,
            entries: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> &Rat {
        &self.entries[j * self.dim + k]
    }

    fn add_outer(&mut self, lambda: &[Rat], delta: &[Rat]) {
        for j in 0..self.dim {
            if lambda[j].is_zero() {
                continue;
            }
            for k in 0..self.dim {
                if delta[k].is_zero() {
                    continue;
                }
                let cell = &mut self.entries[j * self.dim + k];
                *cell = &*cell + &(&lambda[j] * &delta[k]);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &SafInvariant) -> SafInvariant {
        assert_eq!(self.dim, other.dim, "tensor dimensions differ");
        SafInvariant {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|k| format_rat(self.get(j, k))).collect())
            .collect()
    }
}

/// The invariant of a flip-free map.
pub fn saf(f: &Fiet) -> Result<SafInvariant> {
    if !f.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    let dim = f.basis().dim();
    let mut m = SafInvariant::zero(dim);
    for p in f.pieces() {
        let lambda = p.length();
        m.add_outer(lambda.coords(), p.offset.coords());
    }
    Ok(m)
}

/// Kernel membership: under the declared independence this decides whether a
/// flip-free map lies in the commutator subgroup.
pub fn in_commutator_subgroup(f: &Fiet) -> Result<bool> {
    Ok(saf(f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::{Basis, Real};
    use crate::fiet::rotation;

    #[test]
    fn rational_rotation_has_zero_invariant() {
        let basis = Basis::rational();
        let f = rotation(&basis, &Real::from_rational(&basis, rat(1, 2))).unwrap();
        assert!(saf(&f).unwrap().is_zero());
        assert!(in_commutator_subgroup(&f).unwrap());
    }

    #[test]
    fn sqrt2_rotation_matches_tensor_expansion() {
        // Frozen oracle (independent expansion of Σ λ_i ⊗ δ_i): for the
        // rotation by α = (1/2)√2 over the basis (1, √2),
        //   λ = (1-α, α) = ((1,-1/2), (0,1/2)),
        //   δ = (α, α-1) = ((0,1/2), (-1,1/2)),
        // so M = λ1⊗δ1 + λ2⊗δ2 = [[0, 1/2], [-1/2, 0]].
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        let m = saf(&f).unwrap();
        assert_eq!(m.get(0, 0), &rat(0, 1));
        assert_eq!(m.get(0, 1), &rat(1, 2));
        assert_eq!(m.get(1, 0), &rat(-1, 2));
        assert_eq!(m.get(1, 1), &rat(0, 1));
        assert!(!in_commutator_subgroup(&f).unwrap());
    }

    #[test]
    fn additive_on_composition() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let a = rotation(&basis, &alpha).unwrap();
        let b = rotation(&basis, &Real::from_rational(&basis, rat(1, 3))).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(saf(&ab).unwrap(), saf(&a).unwrap().add(&saf(&b).unwrap()));
    }

    #[test]
    fn commutators_are_in_the_kernel() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let a = rotation(&basis, &alpha).unwrap();
        let b = rotation(&basis, &Real::from_rational(&basis, rat(2, 5))).unwrap();
        let c = Fiet::commutator(&a, &b).unwrap();
        assert!(in_commutator_subgroup(&c).unwrap());
    }

    #[test]
    fn rejects_flips() {
        let basis = Basis::rational();
        let zero = Real::zero(&basis);
        let one = Real::one(&basis);
        let i = crate::fiet::symmetry(&zero, &one).unwrap();
        assert!(matches!(saf(&i), Err(Error::FlipPresent)));
    }
}
