//! Conjugating the fixed set to an initial segment.

use crate::error::Result;
use crate::exact::Real;
use crate::fiet::{from_description, Fiet};

/// Builds a flip-free `h` with `Fix(h ∘ g ∘ h⁻¹) = [0, |Fix(g)|)` and
/// returns `(h, h ∘ g ∘ h⁻¹)`. The conjugator interleaves the components:
/// fixed components keep their order at the front, the moving components
/// follow. Its breakpoints are endpoints of components of Fix(g), so the
/// conjugate has at most 3m breakpoints.
pub fn normalize_fixed_set(g: &Fiet) -> Result<(Fiet, Fiet)> {
    let basis = g.basis();
    // Alternating component lengths F_0 (fixed, maybe empty), F_1 (moving),
    // F_2 (fixed, maybe empty), ..., walking the canonical pieces.
    let mut lengths: Vec<Real> = vec![Real::zero(basis)];
    let mut fixed_parity = true; // lengths[0] is a fixed component
    for p in g.pieces() {
        let len = p.length();
        if p.is_identity_map() == fixed_parity {
            let last = lengths.last_mut().expect("nonempty");
            *last = &*last + &len;
        } else {
            lengths.push(len);
            fixed_parity = !fixed_parity;
        }
    }
    if !fixed_parity {
        lengths.push(Real::zero(basis)); // trailing empty fixed component
    }
    // lengths = [F_0, F_1, ..., F_{2p}], odd indices moving.
    let p = lengths.len() / 2;
    if p == 0 {
        // g is the identity.
        return Ok((Fiet::identity(basis), g.clone()));
    }
    let mut perm = vec![0usize; 2 * p + 1];
    for k in 1..=p {
        perm[2 * k] = k;
        perm[2 * k - 1] = p + k;
    }
    let flips = vec![false; lengths.len()];
    let h = from_description(basis, &lengths, &perm, &flips)?;
    let conj = g.conjugate_by(&h)?;
    Ok((h, conj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::{restricted_rotation, rotation};

    fn q(basis: &crate::exact::BasisRef, n: i64, d: i64) -> Real {
        Real::from_rational(basis, rat(n, d))
    }

    #[test]
    fn moves_an_interior_support_to_the_right() {
        // Restricted rotation on [1/4, 1/2): Fix = [0,1/4) ∪ [1/2,1) of
        // measure 3/4, so the conjugate must fix exactly [0, 3/4).
        let basis = Basis::rational();
        let g =
            restricted_rotation(&q(&basis, 1, 8), &q(&basis, 1, 4), &q(&basis, 1, 2)).unwrap();
        let (h, conj) = normalize_fixed_set(&g).unwrap();
        assert_eq!(conj, g.conjugate_by(&h).unwrap());
        let fix = conj.fixed_intervals();
        assert_eq!(fix.len(), 1);
        assert_eq!(fix[0].0, Real::zero(&basis));
        assert_eq!(fix[0].1, q(&basis, 3, 4));
        assert!(conj.piece_count() <= 3 * g.piece_count());
    }

    #[test]
    fn prefix_fixed_set_needs_no_conjugation() {
        let basis = Basis::rational();
        let g = restricted_rotation(&q(&basis, 1, 8), &q(&basis, 1, 2), &Real::one(&basis))
            .unwrap();
        // Fix(g) = [0,1/2) already a prefix.
        let (h, conj) = normalize_fixed_set(&g).unwrap();
        assert!(h.is_identity());
        assert_eq!(conj, g);
    }

    #[test]
    fn full_support_map_is_untouched() {
        let basis = Basis::rational();
        let g = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let (h, conj) = normalize_fixed_set(&g).unwrap();
        assert!(h.is_identity());
        assert_eq!(conj, g);
        assert!(conj.fixed_intervals().is_empty());
    }

    #[test]
    fn identity_stays_identity() {
        let basis = Basis::rational();
        let (h, conj) = normalize_fixed_set(&Fiet::identity(&basis)).unwrap();
        assert!(h.is_identity());
        assert!(conj.is_identity());
    }
}
