//! The standard generators: rotations, restricted rotations, symmetries,
//! and the homothecy transport between subintervals.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{BasisRef, Rat, Real};
use crate::fiet::piece::Piece;
use crate::fiet::Fiet;

fn check_interval(l: &Real, r: &Real) -> Result<()> {
    let basis = l.basis();
    let zero = Real::zero(basis);
    let one = Real::one(basis);
    if !(zero.le(l)? && l.lt(r)? && r.le(&one)?) {
        return Err(Error::ParameterOutOfRange(format!(
            "interval [{l}, {r}) not inside [0, 1)"
        )));
    }
    Ok(())
}

/// Rotation of the whole interval: `x ↦ x + a (mod 1)` with `0 <= a < 1`.
pub fn rotation(basis: &BasisRef, a: &Real) -> Result<Fiet> {
    restricted_rotation(a, &Real::zero(basis), &Real::one(basis))
}

/// Restricted rotation `R_{α,J}` on `J = [l, r)`: rotation by `α` inside J,
/// identity elsewhere. Requires `0 <= α < |J|`.
pub fn restricted_rotation(alpha: &Real, l: &Real, r: &Real) -> Result<Fiet> {
    check_interval(l, r)?;
    let basis = l.basis();
    let length = r - l;
    let zero = Real::zero(basis);
    if alpha.sign()? == Ordering::Less || !alpha.lt(&length)? {
        return Err(Error::ParameterOutOfRange(format!(
            "rotation angle {alpha} outside [0, |J|)"
        )));
    }
    let mut raw = Vec::new();
    if !l.is_zero() {
        raw.push(Piece::translation(zero.clone(), l.clone(), zero.clone()));
    }
    if alpha.is_zero() {
        raw.push(Piece::translation(l.clone(), r.clone(), zero.clone()));
    } else {
        let cut = r - alpha;
        raw.push(Piece::translation(l.clone(), cut.clone(), alpha.clone()));
        raw.push(Piece::translation(cut, r.clone(), alpha - &length));
    }
    if r != &Real::one(basis) {
        raw.push(Piece::translation(r.clone(), Real::one(basis), zero));
    }
    Fiet::canonicalize(basis, raw)
}

/// The symmetry `I_J`: `x ↦ l + r - x` on `J = [l, r)`, identity elsewhere.
/// An involution.
pub fn symmetry(l: &Real, r: &Real) -> Result<Fiet> {
    check_interval(l, r)?;
    let basis = l.basis();
    let zero = Real::zero(basis);
    let mut raw = Vec::new();
    if !l.is_zero() {
        raw.push(Piece::translation(zero.clone(), l.clone(), zero.clone()));
    }
    raw.push(Piece {
        left: l.clone(),
        right: r.clone(),
        flip: true,
        offset: l + r,
    });
    if r != &Real::one(basis) {
        raw.push(Piece::translation(r.clone(), Real::one(basis), zero));
    }
    Fiet::canonicalize(basis, raw)
}

/// `S_{θ,J} = I_{[l,θ]} ∘ I_{(θ,r)}` for `θ ∈ [l, r)`; an involution. For
/// `θ = l` this is just the symmetry of J.
pub fn s_theta(theta: &Real, l: &Real, r: &Real) -> Result<Fiet> {
    check_interval(l, r)?;
    if !(l.le(theta)? && theta.lt(r)?) {
        return Err(Error::ParameterOutOfRange(format!(
            "theta {theta} outside [{l}, {r})"
        )));
    }
    if theta == l {
        return symmetry(l, r);
    }
    let basis = l.basis();
    let zero = Real::zero(basis);
    let mut raw = Vec::new();
    if !l.is_zero() {
        raw.push(Piece::translation(zero.clone(), l.clone(), zero.clone()));
    }
    raw.push(Piece {
        left: l.clone(),
        right: theta.clone(),
        flip: true,
        offset: l + theta,
    });
    raw.push(Piece {
        left: theta.clone(),
        right: r.clone(),
        flip: true,
        offset: theta + r,
    });
    if r != &Real::one(basis) {
        raw.push(Piece::translation(r.clone(), Real::one(basis), zero));
    }
    Fiet::canonicalize(basis, raw)
}

/// Conjugates a map supported in `J` by the direct affine map `J → K`,
/// extending by the identity. The scale `|K|/|J|` must be rational so the
/// result stays in the session span.
pub fn transport(f: &Fiet, j: (&Real, &Real), k: (&Real, &Real)) -> Result<Fiet> {
    check_interval(j.0, j.1)?;
    check_interval(k.0, k.1)?;
    if !f.supported_in(j.0, j.1)? {
        return Err(Error::ParameterOutOfRange(
            "map is not supported in the source interval".into(),
        ));
    }
    let jl = &(j.1 - j.0);
    let kl = &(k.1 - k.0);
    let rho = rational_ratio(kl, jl).ok_or(Error::IrrationalScale)?;

    let basis = f.basis();
    let zero = Real::zero(basis);
    let one = Real::one(basis);
    let phi = |x: &Real| k.0 + &(x - j.0).scale(&rho);

    let mut raw = Vec::new();
    if !k.0.is_zero() {
        raw.push(Piece::translation(zero.clone(), k.0.clone(), zero.clone()));
    }
    for p in f.pieces() {
        // Clip to J; the parts outside are identity by the support check.
        let l = if p.left.le(j.0)? { j.0.clone() } else { p.left.clone() };
        let r = if j.1.le(&p.right)? { j.1.clone() } else { p.right.clone() };
        if l.try_cmp(&r)? != Ordering::Less {
            continue;
        }
        let offset = if p.flip {
            // phi ∘ (x ↦ c - x) ∘ phi⁻¹ is y ↦ c' - y with
            // c' = 2 k0 - 2 rho j0 + rho c.
            let two = Rat::new(2.into(), 1.into());
            &(&k.0.scale(&two) - &j.0.scale(&(&rho * &two))) + &p.offset.scale(&rho)
        } else {
            p.offset.scale(&rho)
        };
        raw.push(Piece {
            left: phi(&l),
            right: phi(&r),
            flip: p.flip,
            offset,
        });
    }
    if k.1 != &one {
        raw.push(Piece::translation(k.1.clone(), one.clone(), zero));
    }
    Fiet::canonicalize(basis, raw)
}

/// `b/a` when the ratio of the two span elements is rational.
fn rational_ratio(b: &Real, a: &Real) -> Option<Rat> {
    let (i, ai) = a
        .coords()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())?;
    let rho = &b.coords()[i] / ai;
    let scaled = a.scale(&rho);
    (&scaled == b).then_some(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;

    fn q(basis: &BasisRef, n: i64, d: i64) -> Real {
        Real::from_rational(basis, rat(n, d))
    }

    #[test]
    fn rotations_compose_additively() {
        let basis = Basis::rational();
        let third = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let two_thirds = rotation(&basis, &q(&basis, 2, 3)).unwrap();
        assert_eq!(third.compose(&third).unwrap(), two_thirds);
        // f ∘ f⁻¹ = id, and R_a⁻¹ = R_{1-a}.
        assert_eq!(
            third.inverse().unwrap(),
            rotation(&basis, &q(&basis, 2, 3)).unwrap()
        );
        assert!(third.compose(&third.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn symmetries_are_involutions() {
        let basis = Basis::rational();
        let i = symmetry(&q(&basis, 1, 4), &q(&basis, 3, 4)).unwrap();
        assert!(i.is_involution().unwrap());
        assert_eq!(i.inverse().unwrap(), i);
    }

    #[test]
    fn s_theta_product_is_a_rotation() {
        let basis = Basis::rational();
        let zero = Real::zero(&basis);
        let one = Real::one(&basis);
        // S_{1/2} ∘ S_{1/4} = R_{1/4}
        let s_half = s_theta(&q(&basis, 1, 2), &zero, &one).unwrap();
        let s_quarter = s_theta(&q(&basis, 1, 4), &zero, &one).unwrap();
        assert_eq!(
            s_half.compose(&s_quarter).unwrap(),
            rotation(&basis, &q(&basis, 1, 4)).unwrap()
        );
    }

    #[test]
    fn rotation_conjugates_s_theta() {
        let basis = Basis::rational();
        let zero = Real::zero(&basis);
        let one = Real::one(&basis);
        // R_α S_θ R_α⁻¹ = S_{θ+2α}: α = 1/3, θ = 1/4 → θ + 2α = 11/12.
        let r = rotation(&basis, &q(&basis, 1, 3)).unwrap();
        let s = s_theta(&q(&basis, 1, 4), &zero, &one).unwrap();
        assert_eq!(
            s.conjugate_by(&r).unwrap(),
            s_theta(&q(&basis, 11, 12), &zero, &one).unwrap()
        );
    }

    #[test]
    fn transport_halves_a_rotation() {
        let basis = Basis::rational();
        let zero = Real::zero(&basis);
        let one = Real::one(&basis);
        let half = q(&basis, 1, 2);
        let r = rotation(&basis, &q(&basis, 1, 4)).unwrap();
        let moved = transport(&r, (&zero, &one), (&half, &one)).unwrap();
        assert_eq!(
            moved,
            restricted_rotation(&q(&basis, 1, 8), &half, &one).unwrap()
        );
        // transport(f, J, J) = f
        assert_eq!(transport(&r, (&zero, &one), (&zero, &one)).unwrap(), r);
    }

    #[test]
    fn transport_rejects_irrational_scale() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let zero = Real::zero(&basis);
        let one = Real::one(&basis);
        let sqrt2_half = Real::generator(&basis, 1).unwrap().halve();
        let r = rotation(&basis, &q(&basis, 1, 4)).unwrap();
        assert!(matches!(
            transport(&r, (&zero, &one), (&zero, &sqrt2_half)),
            Err(Error::IrrationalScale)
        ));
    }
}
