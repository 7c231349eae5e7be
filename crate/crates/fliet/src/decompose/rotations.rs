//! Peeling a flip-free map into restricted rotations, and turning a
//! restricted rotation into a commutator.

use std::cmp::Ordering;

use crate::cert::{Certificate, CertificateKind, Factor, Witness};
use crate::decompose::{DecompositionStrategy, DecomposeOptions};
use crate::error::{Error, Result};
use crate::exact::Real;
use crate::fiet::{restricted_rotation, s_theta, symmetry, Fiet};

/// One restricted-rotation factor with its parameters.
#[derive(Debug, Clone)]
pub struct RotationFactor {
    pub value: Fiet,
    pub angle: Real,
    pub left: Real,
    pub right: Real,
}

impl RotationFactor {
    pub fn into_factor(self) -> Factor {
        Factor {
            value: self.value,
            witness: Witness::RestrictedRotation {
                angle: self.angle,
                left: self.left,
                right: self.right,
            },
        }
    }
}

/// Writes a flip-free map as a product of at most m-1 restricted rotations
/// by repeatedly rotating the image of the leftmost unfixed piece into
/// place. The rotations are returned in composition order (left to right).
pub fn to_restricted_rotations(g: &Fiet) -> Result<Vec<RotationFactor>> {
    if !g.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    let mut current = g.clone();
    let mut peels: Vec<(Real, Real, Real)> = Vec::new(); // (angle, left, right) of R_i
    loop {
        let Some(p) = current.pieces().iter().find(|p| !p.is_identity_map()) else {
            break;
        };
        let (a, b) = (p.left.clone(), p.right.clone());
        let (img_l, img_r) = p.image();
        debug_assert_eq!(img_l.try_cmp(&a)?, Ordering::Greater);
        // R brings [img_l, img_r) to the front of [a, img_r).
        let angle = &b - &a;
        let r = restricted_rotation(&angle, &a, &img_r)?;
        current = r.compose(&current)?;
        peels.push((angle, a, img_r));
        if peels.len() > g.piece_count() {
            // The peeling provably stops after m-1 rounds; anything longer
            // means the invariant broke.
            return Err(Error::ParameterOutOfRange(
                "rotation peeling failed to terminate".into(),
            ));
        }
    }
    // R_k ∘ ... ∘ R_1 ∘ g = id, so g = R_1⁻¹ ∘ ... ∘ R_k⁻¹.
    peels
        .into_iter()
        .map(|(angle, l, r)| {
            let span = &r - &l;
            let inv_angle = &span - &angle;
            let value = restricted_rotation(&inv_angle, &l, &r)?;
            Ok(RotationFactor {
                value,
                angle: inv_angle,
                left: l,
                right: r,
            })
        })
        .collect()
}

/// Commutator witness for `R_{α,J}`: with `a = S_{θ,J}` at `θ` the left
/// endpoint and `h` the rotation by `-α/2` of J, `[a, h] = R_{α,J}`. Both
/// witness maps are supported in J.
pub fn restricted_rotation_as_commutator(
    angle: &Real,
    l: &Real,
    r: &Real,
) -> Result<(Fiet, Fiet, Fiet)> {
    let value = restricted_rotation(angle, l, r)?;
    let span = r - l;
    let a = s_theta(l, l, r)?;
    let h = restricted_rotation(&(&span - &angle.halve()), l, r)?;
    Ok((value, a, h))
}

/// Strong-reversal witness for `R_{α,J}`: `R = I_J ∘ (I_J ∘ R)`, both
/// factors involutions.
pub fn restricted_rotation_sr_witness(angle: &Real, l: &Real, r: &Real) -> Result<(Fiet, Fiet)> {
    let value = restricted_rotation(angle, l, r)?;
    let i_j = symmetry(l, r)?;
    let i2 = i_j.compose(&value)?;
    Ok((i_j, i2))
}

/// The `rotations` strategy: peel and certify.
pub struct RotationsStrategy;

impl DecompositionStrategy for RotationsStrategy {
    fn name(&self) -> &'static str {
        "rotations"
    }

    fn describe(&self) -> &'static str {
        "product of at most m-1 restricted rotations (flip-free maps)"
    }

    fn decompose(&self, target: &Fiet, _opts: &DecomposeOptions) -> Result<Certificate> {
        let factors = to_restricted_rotations(target)?
            .into_iter()
            .map(RotationFactor::into_factor)
            .collect();
        Ok(Certificate {
            kind: CertificateKind::Rotations,
            target: target.clone(),
            factors,
        })
    }
}
