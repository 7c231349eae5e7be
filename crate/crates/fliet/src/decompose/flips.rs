//! Splitting off the flips, and symmetries as commutators.

use crate::error::Result;
use crate::exact::{Rat, Real};
use crate::fiet::{restricted_rotation, symmetry, Fiet, Piece};

/// Writes `f = g ∘ ι` with `g` flip-free and `ι` the product of the
/// symmetries of the flipped pieces of `f`. The flipped pieces are disjoint,
/// so `ι` is an involution; for a flip-free input it is the identity.
pub fn factor_flips(f: &Fiet) -> Result<(Fiet, Fiet)> {
    let basis = f.basis();
    let raw: Vec<Piece> = f
        .pieces()
        .iter()
        .map(|p| {
            if p.flip {
                Piece {
                    left: p.left.clone(),
                    right: p.right.clone(),
                    flip: true,
                    offset: &p.left + &p.right,
                }
            } else {
                Piece::translation(p.left.clone(), p.right.clone(), Real::zero(basis))
            }
        })
        .collect();
    let iota = Fiet::canonicalize(basis, raw)?;
    // On each flipped piece ι equals f's own reversal direction, so the
    // composition cancels every flip.
    let g = f.compose(&iota)?;
    debug_assert!(g.is_flip_free());
    Ok((g, iota))
}

/// Commutator witness for the symmetry of `J = [l, r)`: the middle-half
/// symmetry `f1` together with the half-turn `R` of J satisfy
/// `[f1, R] = I_J`, and both are supported in J.
pub fn symmetry_as_commutator(l: &Real, r: &Real) -> Result<(Fiet, Fiet, Fiet)> {
    let quarter = (r - l).scale(&Rat::new(1.into(), 4.into()));
    let f1 = symmetry(&(l + &quarter), &(r - &quarter))?;
    let half_turn = restricted_rotation(&(r - l).halve(), l, r)?;
    let value = symmetry(l, r)?;
    Ok((value, f1, half_turn))
}

/// Commutator witness for a product of symmetries with disjoint supports
/// (the flip involution): block witnesses combine coordinate-wise because
/// everything commutes across disjoint supports.
pub fn flip_involution_commutator_witness(f: &Fiet, iota: &Fiet) -> Result<(Fiet, Fiet)> {
    let basis = f.basis();
    let mut a = Fiet::identity(basis);
    let mut h = Fiet::identity(basis);
    for p in f.pieces() {
        if !p.flip {
            continue;
        }
        let (_, f1, half_turn) = symmetry_as_commutator(&p.left, &p.right)?;
        a = a.compose(&f1)?;
        h = h.compose(&half_turn)?;
    }
    debug_assert_eq!(&Fiet::commutator(&a, &h)?, iota);
    Ok((a, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::rotation;

    #[test]
    fn flip_free_input_passes_through() {
        let basis = Basis::rational();
        let f = rotation(&basis, &Real::from_rational(&basis, rat(1, 3))).unwrap();
        let (g, iota) = factor_flips(&f).unwrap();
        assert_eq!(g, f);
        assert!(iota.is_identity());
    }

    #[test]
    fn full_symmetry_splits_as_identity_times_itself() {
        let basis = Basis::rational();
        let i = symmetry(&Real::zero(&basis), &Real::one(&basis)).unwrap();
        let (g, iota) = factor_flips(&i).unwrap();
        assert!(g.is_identity());
        assert_eq!(iota, i);
    }

    #[test]
    fn two_piece_flip_example() {
        // f = { 1-x on (0,1/2) ; x-1/2 on (1/2,1) } factors as R_{1/2} ∘ I_{[0,1/2]}.
        let basis = Basis::rational();
        let half = Real::from_rational(&basis, rat(1, 2));
        let one = Real::one(&basis);
        let raw = vec![
            Piece {
                left: Real::zero(&basis),
                right: half.clone(),
                flip: true,
                offset: one.clone(),
            },
            Piece::translation(half.clone(), one.clone(), -&half),
        ];
        let f = Fiet::canonicalize(&basis, raw).unwrap();
        let (g, iota) = factor_flips(&f).unwrap();
        assert_eq!(g, rotation(&basis, &half).unwrap());
        assert_eq!(iota, symmetry(&Real::zero(&basis), &half).unwrap());
        assert_eq!(g.compose(&iota).unwrap(), f);
    }

    #[test]
    fn symmetry_commutator_replays() {
        // [f1, R_{1/2}] = I_{(0,1)} with f1 the symmetry of [1/4, 3/4].
        let basis = Basis::rational();
        let (value, f1, h) =
            symmetry_as_commutator(&Real::zero(&basis), &Real::one(&basis)).unwrap();
        assert_eq!(
            f1,
            symmetry(
                &Real::from_rational(&basis, rat(1, 4)),
                &Real::from_rational(&basis, rat(3, 4))
            )
            .unwrap()
        );
        assert_eq!(Fiet::commutator(&f1, &h).unwrap(), value);
    }

    #[test]
    fn symmetry_commutator_replays_on_irrational_interval() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let l = Real::generator(&basis, 1).unwrap().scale(&rat(1, 4)); // √2/4
        let r = Real::generator(&basis, 1).unwrap().halve(); // √2/2
        let (value, f1, h) = symmetry_as_commutator(&l, &r).unwrap();
        assert_eq!(Fiet::commutator(&f1, &h).unwrap(), value);
        assert!(f1.supported_in(&l, &r).unwrap());
        assert!(h.supported_in(&l, &r).unwrap());
    }
}
