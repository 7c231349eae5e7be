//! Growing the fixed set with involutions, and the corner-support form.
//!
//! One round: cut the moving part into cells of a small mesh δ, pick a
//! maximal family of cells whose swap involutions have disjoint supports
//! (each pick blocks at most four other cells), and compose the swaps. The
//! fixed measure grows by at least a (1-ε)/5 fraction of what was moving.
//! Iterating the round and normalizing the fixed set pushes the whole map
//! into the corner [1 - 1/n, 1) up to involutions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cert::{corner_involution_count, Certificate, CertificateKind, Factor, Witness};
use crate::decompose::fixnorm::normalize_fixed_set;
use crate::decompose::{DecompositionStrategy, DecomposeOptions};
use crate::error::{Error, Result};
use crate::exact::{Rat, Real};
use crate::fiet::{Fiet, Piece};

/// An involution `i` with `|Fix(i ∘ f)| >= |Fix(f)| + (1 - |Fix(f)|)(1-ε)/5`
/// for a flip-free `f` on [0, 1).
pub fn fix_increasing_involution(f: &Fiet, eps: &Rat) -> Result<Fiet> {
    if !eps.is_positive() || eps >= &Rat::one() {
        return Err(Error::EpsilonOutOfRange);
    }
    if !f.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    let basis = f.basis();
    let fix = f.fix_measure();
    if fix == Real::one(basis) {
        return Ok(Fiet::identity(basis));
    }
    if fix.is_zero() {
        return cell_swap_involution(f, &Real::zero(basis), eps);
    }
    // Move the fixed set to the front, solve the fixed-point-free part on
    // the remaining suffix, and pull the involution back.
    let (h, f1) = normalize_fixed_set(f)?;
    let j = cell_swap_involution(&f1, &fix, eps)?;
    j.conjugate_by(&h.inverse()?)
}

/// Case with `Fix(f) = [0, left)`: greedy disjoint cell swaps on `[left, 1)`.
fn cell_swap_involution(f: &Fiet, left: &Real, eps: &Rat) -> Result<Fiet> {
    let basis = f.basis();
    let one = Real::one(basis);
    let f_inv = f.inverse()?;

    // Segments of [left, 1) on which both f and f⁻¹ are translations, so
    // every cell has one image interval and one preimage interval.
    let mut cuts: Vec<Real> = vec![left.clone()];
    for b in f.breakpoints().into_iter().chain(f_inv.breakpoints()) {
        if left.lt(&b)? {
            cuts.push(b);
        }
    }
    crate::exact::try_sort_by(&mut cuts, |a, b| a.try_cmp(b))?;
    cuts.dedup();
    cuts.push(one.clone());

    struct Segment {
        left: Real,
        right: Real,
        fwd: Real, // displacement of f
        bwd: Real, // displacement of f⁻¹
    }
    let mut segments = Vec::new();
    let mut min_disp: Option<Real> = None;
    for w in cuts.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let fwd = &f.apply(&w[0])? - &w[0];
        let bwd = &f_inv.apply(&w[0])? - &w[0];
        let mag = fwd.abs_val()?;
        debug_assert!(!mag.is_zero(), "moving part must have no fixed interval");
        min_disp = Some(match min_disp {
            None => mag,
            Some(cur) => cur.min_val(&mag)?,
        });
        segments.push(Segment {
            left: w[0].clone(),
            right: w[1].clone(),
            fwd,
            bwd,
        });
    }
    let min_disp = min_disp.ok_or(Error::EpsilonOutOfRange)?;

    // Mesh: a dyadic δ below min(|J'| ε / #segments, min displacement).
    let span = &one - left;
    let seg_count = Rat::new(BigInt::from(segments.len() as u64), BigInt::one());
    let bound = span
        .scale(&(eps / &seg_count))
        .min_val(&min_disp)?;
    let mut k = 1u32;
    let delta = loop {
        let d = Rat::new(BigInt::one(), BigInt::one() << k);
        if Real::from_rational(basis, d.clone()).lt(&bound)? {
            break d;
        }
        k += 1;
    };
    let delta_real = Real::from_rational(basis, delta);

    struct Cell {
        left: Real,
        fwd: Real,
        bwd: Real,
    }
    let mut cells: Vec<Cell> = Vec::new();
    for seg in &segments {
        let full = Real::floor_ratio(&(&seg.right - &seg.left), &delta_real)?;
        let mut j = BigInt::zero();
        let mut cell_left = seg.left.clone();
        while j < full {
            cells.push(Cell {
                left: cell_left.clone(),
                fwd: seg.fwd.clone(),
                bwd: seg.bwd.clone(),
            });
            cell_left = &cell_left + &delta_real;
            j += 1;
        }
    }

    // Cells meeting a length-δ interval [x, x+δ): left > x - δ and left < x + δ.
    let first_gt = |cells: &[Cell], x: &Real| -> Result<usize> {
        let mut lo = 0usize;
        let mut hi = cells.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if cells[mid].left.le(x)? {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    };
    let mut available = vec![true; cells.len()];
    let block = |available: &mut Vec<bool>, x: &Real| -> Result<()> {
        let lo_bound = x - &delta_real;
        let hi_bound = x + &delta_real;
        let mut idx = first_gt(&cells, &lo_bound)?;
        while idx < cells.len() && cells[idx].left.lt(&hi_bound)? {
            available[idx] = false;
            idx += 1;
        }
        Ok(())
    };

    let mut swaps: Vec<Piece> = Vec::new();
    for idx in 0..cells.len() {
        if !available[idx] {
            continue;
        }
        let cell_left = cells[idx].left.clone();
        let image_left = &cell_left + &cells[idx].fwd;
        let preimage_left = &cell_left + &cells[idx].bwd;
        available[idx] = false;
        block(&mut available, &image_left)?;
        block(&mut available, &preimage_left)?;
        swaps.push(Piece::translation(
            cell_left.clone(),
            &cell_left + &delta_real,
            cells[idx].fwd.clone(),
        ));
        swaps.push(Piece::translation(
            image_left.clone(),
            &image_left + &delta_real,
            -&cells[idx].fwd,
        ));
    }

    // Assemble the involution: the swap pieces are pairwise disjoint.
    crate::exact::try_sort_by(&mut swaps, |a, b| a.left.try_cmp(&b.left))?;
    let mut raw = Vec::with_capacity(2 * swaps.len() + 1);
    let mut cursor = Real::zero(basis);
    for p in swaps {
        if cursor != p.left {
            raw.push(Piece::translation(cursor, p.left.clone(), Real::zero(basis)));
        }
        cursor = p.right.clone();
        raw.push(p);
    }
    if cursor != one {
        raw.push(Piece::translation(cursor, one, Real::zero(basis)));
    }
    let involution = Fiet::canonicalize(basis, raw)?;
    debug_assert!(involution.is_involution()?);
    Ok(involution)
}

/// The corner-support form: `f = i_1 ∘ ... ∘ i_{s_n} ∘ (h ∘ g_n ∘ h⁻¹)` with
/// exactly `s_n = corner_involution_count(n)` involutions (identity padding
/// when the fixed measure saturates early) and `supp(g_n) ⊆ [1-1/n, 1)`.
#[derive(Debug, Clone)]
pub struct CornerResult {
    pub involutions: Vec<Fiet>,
    pub conjugator: Fiet,
    pub core: Fiet,
    pub epsilon: Rat,
}

pub fn corner_support_decomposition(f: &Fiet, n: u64) -> Result<CornerResult> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be positive".into()));
    }
    if !f.is_flip_free() {
        return Err(Error::FlipPresent);
    }
    let basis = f.basis();
    let s_n = corner_involution_count(n);

    // ε must keep the contraction strong enough: ((4+ε)/5)^{s_n} n <= 1,
    // checked in exact rational arithmetic.
    let mut k = 2u32;
    let eps = loop {
        let e = Rat::new(BigInt::one(), BigInt::one() << k);
        let rate = (Rat::from_integer(4.into()) + &e) / Rat::from_integer(5.into());
        let mut powed = Rat::one();
        for _ in 0..s_n {
            powed *= &rate;
        }
        if powed * Rat::from_integer(BigInt::from(n)) <= Rat::one() {
            break e;
        }
        k += 1;
        if k > 64 {
            return Err(Error::RetryExhausted(64));
        }
    };

    let corner_bound = Real::from_rational(
        basis,
        Rat::one() - Rat::new(BigInt::one(), BigInt::from(n)),
    );
    let mut involutions = Vec::with_capacity(s_n as usize);
    let mut current = f.clone();
    for _ in 0..s_n {
        let i = if corner_bound.le(&current.fix_measure())? {
            Fiet::identity(basis)
        } else {
            fix_increasing_involution(&current, &eps)?
        };
        current = i.compose(&current)?;
        involutions.push(i);
    }
    if !corner_bound.le(&current.fix_measure())? {
        return Err(Error::RetryExhausted(s_n as u32));
    }
    let (h_norm, core) = normalize_fixed_set(&current)?;
    debug_assert!(core.supported_in(&corner_bound, &Real::one(basis))?);
    Ok(CornerResult {
        involutions,
        conjugator: h_norm.inverse()?,
        core,
        epsilon: eps,
    })
}

/// The `corner` strategy: `s_n` involutions plus one conjugated corner tail.
pub struct CornerSupportStrategy;

impl DecompositionStrategy for CornerSupportStrategy {
    fn name(&self) -> &'static str {
        "corner"
    }

    fn describe(&self) -> &'static str {
        "fix-increasing involutions followed by a corner-supported tail"
    }

    fn decompose(&self, target: &Fiet, opts: &DecomposeOptions) -> Result<Certificate> {
        let n = opts.corner_n;
        let result = corner_support_decomposition(target, n)?;
        let mut factors: Vec<Factor> = result
            .involutions
            .into_iter()
            .map(|value| Factor {
                value,
                witness: Witness::Involution,
            })
            .collect();
        let tail_value = result
            .core
            .conjugate_by(&result.conjugator)?;
        factors.push(Factor {
            value: tail_value,
            witness: Witness::CornerTail {
                conjugator: result.conjugator,
                core: result.core,
            },
        });
        Ok(Certificate {
            kind: CertificateKind::CornerSupport { n },
            target: target.clone(),
            factors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::rotation;

    fn q(basis: &crate::exact::BasisRef, n: i64, d: i64) -> Real {
        Real::from_rational(basis, rat(n, d))
    }

    #[test]
    fn half_rotation_with_quarter_mesh() {
        // f = R_{1/2}: any selected cell fixes at least measure 1/5 after
        // one round (bound (1-ε)/5 with |Fix f| = 0).
        let basis = Basis::rational();
        let f = rotation(&basis, &q(&basis, 1, 2)).unwrap();
        let eps = rat(1, 10);
        let i = fix_increasing_involution(&f, &eps).unwrap();
        assert!(i.is_involution().unwrap());
        let fixed = i.compose(&f).unwrap().fix_measure();
        let bound = Real::from_rational(&basis, (Rat::one() - &eps) / rat(5, 1));
        assert!(bound.le(&fixed).unwrap());
    }

    #[test]
    fn identity_needs_nothing() {
        let basis = Basis::rational();
        let id = Fiet::identity(&basis);
        assert!(fix_increasing_involution(&id, &rat(1, 10))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn epsilon_bounds_are_enforced() {
        let basis = Basis::rational();
        let f = rotation(&basis, &q(&basis, 1, 2)).unwrap();
        assert!(matches!(
            fix_increasing_involution(&f, &rat(0, 1)),
            Err(Error::EpsilonOutOfRange)
        ));
        assert!(matches!(
            fix_increasing_involution(&f, &rat(3, 2)),
            Err(Error::EpsilonOutOfRange)
        ));
    }

    #[test]
    fn corner_form_for_n_two_uses_four_involutions() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        let out = corner_support_decomposition(&f, 2).unwrap();
        assert_eq!(out.involutions.len(), 4);
        // Replay f = i1 i2 i3 i4 (h core h⁻¹), supp(core) ⊆ [1/2, 1).
        let mut acc = Fiet::identity(&basis);
        for i in &out.involutions {
            assert!(i.is_involution().unwrap());
            acc = acc.compose(i).unwrap();
        }
        let tail = out.core.conjugate_by(&out.conjugator).unwrap();
        assert_eq!(acc.compose(&tail).unwrap(), f);
        assert!(out
            .core
            .supported_in(&q(&basis, 1, 2), &Real::one(&basis))
            .unwrap());
    }
}
