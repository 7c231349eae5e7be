//! Shrinking the support of a flip-free map by periodic corrections.
//!
//! Composing with a rational approximant `p` of the inverse leaves a map
//! with tiny per-piece displacements; winding each displacement up with a
//! finite-order restricted rotation concentrates the support in measure
//! at most 1/n while the breakpoint count stays under 5m. Every bound is
//! verified exactly after the construction, halving epsilon and retrying on
//! any failure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rational::{dyadic_exponent_below, Rat};
use crate::exact::Real;
use crate::fiet::{from_description, Fiet, Piece};

/// Output of [`shrink_support`]: `g = p ∘ f ∘ p_prime` with `p`, `p_prime`
/// periodic, `|supp(g)| <= 1/n` and `#BP(g) <= 5 #BP(f)`.
#[derive(Debug, Clone)]
pub struct ShrinkResult {
    pub p: Fiet,
    pub p_prime: Fiet,
    pub g: Fiet,
    pub epsilon: Rat,
}

const MAX_RETRIES: u32 = 40;

pub fn shrink_support(f: &Fiet, n: u64) -> Result<ShrinkResult> {
    if !f.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be positive".into()));
    }
    let basis = f.basis();
    if f.is_identity() {
        return Ok(ShrinkResult {
            p: Fiet::identity(basis),
            p_prime: Fiet::identity(basis),
            g: Fiet::identity(basis),
            epsilon: Rat::one(),
        });
    }

    // Starting epsilon: a dyadic rational below min(1/(2n), min piece
    // length / 4); post-hoc verification shrinks it further if needed.
    let mut min_len = f.pieces()[0].length();
    for p in f.pieces() {
        min_len = min_len.min_val(&p.length())?;
    }
    let mut k = 1u32;
    loop {
        let eps = Rat::new(BigInt::one(), BigInt::one() << k);
        let eps_real = Real::from_rational(basis, eps.clone());
        let ok_n = eps <= Rat::new(BigInt::one(), BigInt::from(2 * n));
        if ok_n && eps_real.scale(&Rat::from_integer(4.into())).le(&min_len)? {
            break;
        }
        k += 1;
    }

    for retry in 0..MAX_RETRIES {
        let eps = Rat::new(BigInt::one(), BigInt::one() << (k + retry));
        if let Some(out) = shrink_with_epsilon(f, n, &eps)? {
            return Ok(out);
        }
    }
    Err(Error::RetryExhausted(MAX_RETRIES))
}

/// One attempt with a fixed epsilon; `None` requests a retry with a smaller
/// epsilon.
fn shrink_with_epsilon(f: &Fiet, n: u64, eps: &Rat) -> Result<Option<ShrinkResult>> {
    let basis = f.basis();
    let m = f.piece_count();
    let m_rat = Rat::from_integer(BigInt::from(m as u64));

    // Rational approximant of f⁻¹ on the dyadic grid 1/Q with
    // 1/Q < eps / (4 m²): round every breakpoint of f⁻¹ down to the grid.
    let f_inv = f.inverse()?;
    let q_bits = dyadic_exponent_below(&(eps / (&m_rat * &m_rat * Rat::from_integer(4.into()))), 1);
    let grid = Rat::new(BigInt::one(), BigInt::one() << q_bits);
    let grid_real = Real::from_rational(basis, grid.clone());
    let mut approx_bps: Vec<Rat> = Vec::with_capacity(m);
    for b in f_inv.breakpoints() {
        let steps = Real::floor_ratio(&b, &grid_real)?;
        approx_bps.push(&grid * Rat::from_integer(steps));
    }
    approx_bps.push(Rat::one());
    // The grid roundings must stay strictly increasing.
    if approx_bps.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(None);
    }
    let lengths: Vec<Real> = approx_bps
        .windows(2)
        .map(|w| Real::from_rational(basis, &w[1] - &w[0]))
        .collect();
    let inv_comb = crate::fiet::combinatorics(&f_inv)?;
    let p = from_description(basis, &lengths, &inv_comb.permutation, &inv_comb.flips)?;

    // p ∘ f: at most 2m pieces, each displaced by at most eps/m, and each
    // original piece [a_i, a_{i+1}) keeps its displacement on at least
    // [a_i, a_{i+1} - eps/2m).
    let f_eps = p.compose(f)?;
    if f_eps.piece_count() > 2 * m {
        return Ok(None);
    }
    let eps_over_m = Real::from_rational(basis, eps / &m_rat);
    let eps_over_2m = eps_over_m.halve();

    // One finite-order restricted rotation per original piece, matching the
    // displacement of p ∘ f there.
    let mut rotation_pieces: Vec<Piece> = Vec::new();
    let mut cursor = Real::zero(basis);
    let bps = f.breakpoints();
    for (i, a_i) in bps.iter().enumerate() {
        let a_next = if i + 1 < m {
            bps[i + 1].clone()
        } else {
            Real::one(basis)
        };
        // p ∘ f must be a single translation on [a_i, a_next - eps/2m).
        let piece = f_eps.piece_at(a_i)?.clone();
        let cont_end = &a_next - &eps_over_2m;
        if piece.flip || !cont_end.le(&piece.right)? {
            return Ok(None);
        }
        let displacement = piece.offset;
        if displacement.is_zero() {
            continue;
        }
        let mag = displacement.abs_val()?;
        if !mag.le(&eps_over_m)? {
            return Ok(None);
        }
        // Greatest r with a_i + r|∂| <= min(a_next - (eps/2m - |∂|), a_next).
        let bound_a = &(&a_next - &eps_over_2m) + &mag;
        let bound = bound_a.min_val(&a_next)?;
        let r = Real::floor_ratio(&(&bound - a_i), &mag)?;
        if r < BigInt::one() {
            return Ok(None);
        }
        let support_len = mag.scale(&Rat::from_integer(r.clone()));
        let end = a_i + &support_len;
        let angle = if displacement.sign()? == Ordering::Greater {
            displacement.clone()
        } else {
            &support_len + &displacement
        };
        // Emit the rotation block's pieces directly (supports are disjoint).
        if cursor != *a_i {
            rotation_pieces.push(Piece::translation(
                cursor.clone(),
                a_i.clone(),
                Real::zero(basis),
            ));
        }
        let cut = &end - &angle;
        rotation_pieces.push(Piece::translation(a_i.clone(), cut.clone(), angle.clone()));
        rotation_pieces.push(Piece::translation(cut, end.clone(), &angle - &support_len));
        cursor = end;
    }
    let one = Real::one(basis);
    if cursor != one {
        rotation_pieces.push(Piece::translation(cursor, one.clone(), Real::zero(basis)));
    }
    let prod = Fiet::canonicalize(basis, rotation_pieces)?;
    let p_prime = prod.inverse()?;
    let g = f_eps.compose(&p_prime)?;

    // Exact post-hoc verification of both stated bounds.
    let supp = g.support_measure();
    let bound_supp = Real::from_rational(basis, Rat::new(BigInt::one(), BigInt::from(n)));
    if !supp.le(&bound_supp)? {
        return Ok(None);
    }
    if g.piece_count() > 5 * m {
        return Ok(None);
    }
    Ok(Some(ShrinkResult {
        p,
        p_prime,
        g,
        epsilon: eps.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::rotation;
    use crate::invariants::is_periodic;

    #[test]
    fn identity_shrinks_trivially() {
        let basis = Basis::rational();
        let out = shrink_support(&Fiet::identity(&basis), 7).unwrap();
        assert!(out.p.is_identity() && out.p_prime.is_identity() && out.g.is_identity());
    }

    #[test]
    fn sqrt2_rotation_with_n_4() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        let out = shrink_support(&f, 4).unwrap();
        // Replay g = p ∘ f ∘ p'.
        assert_eq!(
            out.g,
            out.p.compose(&f).unwrap().compose(&out.p_prime).unwrap()
        );
        // Bounds: |supp| <= 1/4, #BP <= 5m = 10.
        assert!(out
            .g
            .support_measure()
            .le(&Real::from_rational(&basis, rat(1, 4)))
            .unwrap());
        assert!(out.g.piece_count() <= 10);
        // p is rational hence periodic; p' is a product of finite-order
        // rotations.
        assert!(is_periodic(&out.p, 4).unwrap().is_periodic());
        assert!(out.p.is_rational());
        let nf = crate::decompose::periodic::periodic_normal_form(&out.p_prime).unwrap();
        assert!(nf.conjugator.is_identity());
    }
}
