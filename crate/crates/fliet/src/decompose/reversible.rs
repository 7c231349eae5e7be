//! The strongly-reversible pipeline (at most 6 factors) and its expansion
//! into at most 12 involutions.

use num_bigint::BigInt;
use num_traits::One;

use crate::cert::{Certificate, CertificateKind, Factor, Witness};
use crate::decompose::flips::factor_flips;
use crate::decompose::periodic::periodic_sr_witness;
use crate::decompose::rotations::{restricted_rotation_sr_witness, to_restricted_rotations};
use crate::decompose::shrink::shrink_support;
use crate::decompose::vaserstein::{dyadic_depth, vaserstein_step};
use crate::decompose::{fixnorm::normalize_fixed_set, DecompositionStrategy, DecomposeOptions};
use crate::error::Result;
use crate::exact::{Rat, Real};
use crate::fiet::Fiet;
use crate::invariants::is_periodic;

pub struct StronglyReversibleStrategy;

impl DecompositionStrategy for StronglyReversibleStrategy {
    fn name(&self) -> &'static str {
        "strong-reversible"
    }

    fn describe(&self) -> &'static str {
        "product of at most 6 strongly reversible elements"
    }

    fn decompose(&self, target: &Fiet, opts: &DecomposeOptions) -> Result<Certificate> {
        let factors = sr_factors(target, opts)?;
        Ok(Certificate {
            kind: CertificateKind::StronglyReversible,
            target: target.clone(),
            factors,
        })
    }
}

fn sr_factor(value: Fiet, i1: Fiet, i2: Fiet) -> Factor {
    Factor {
        value,
        witness: Witness::StrongReversal { i1, i2 },
    }
}

fn sr_factors(target: &Fiet, opts: &DecomposeOptions) -> Result<Vec<Factor>> {
    if target.is_identity() {
        return Ok(Vec::new());
    }
    // An involution (flips or not) is itself strongly reversible.
    if target.is_involution()? {
        let id = Fiet::identity(target.basis());
        return Ok(vec![sr_factor(target.clone(), target.clone(), id)]);
    }
    let (g, iota) = factor_flips(target)?;
    let mut factors = flip_free_sr_factors(&g, opts)?;
    if !iota.is_identity() {
        let id = Fiet::identity(target.basis());
        factors.push(sr_factor(iota.clone(), iota, id));
    }
    Ok(factors)
}

fn flip_free_sr_factors(g: &Fiet, opts: &DecomposeOptions) -> Result<Vec<Factor>> {
    if g.is_identity() {
        return Ok(Vec::new());
    }
    if let Some((angle, (l, r))) = g.as_restricted_rotation()? {
        let (i1, i2) = restricted_rotation_sr_witness(&angle, &l, &r)?;
        return Ok(vec![sr_factor(g.clone(), i1, i2)]);
    }
    if is_periodic(g, opts.periodic_probe_cap)?.is_periodic() {
        let (i1, i2) = periodic_sr_witness(g)?;
        return Ok(vec![sr_factor(g.clone(), i1, i2)]);
    }

    let basis = g.basis();
    let m = g.piece_count();
    let t = dyadic_depth(15 * m - 1).max(1);
    let n = 1u64 << t;
    let shrunk = shrink_support(g, n)?;
    let (h_norm, corner) = normalize_fixed_set(&shrunk.g)?;

    let mut factors: Vec<Factor> = to_restricted_rotations(&corner)?
        .into_iter()
        .map(|r| {
            let (i1, i2) = restricted_rotation_sr_witness(&r.angle, &r.left, &r.right)?;
            Ok(sr_factor(r.value, i1, i2))
        })
        .collect::<Result<_>>()?;

    for s in (1..=t).rev() {
        if factors.len() <= 3 {
            break;
        }
        let l = Real::from_rational(
            basis,
            Rat::one() - Rat::new(BigInt::from(1), BigInt::from(1u64 << (s - 1))),
        );
        let r = Real::one(basis);
        factors = vaserstein_step(CertificateKind::StronglyReversible, &l, &r, factors)?;
    }

    let h_inv = h_norm.inverse()?;
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len() + 2);
    let p_inv = shrunk.p.inverse()?;
    if !p_inv.is_identity() {
        let (i1, i2) = periodic_sr_witness(&p_inv)?;
        out.push(sr_factor(p_inv, i1, i2));
    }
    for f in factors {
        let value = f.value.conjugate_by(&h_inv)?;
        let Witness::StrongReversal { i1, i2 } = f.witness else {
            unreachable!("strong-reversal pipeline only builds strong-reversal witnesses");
        };
        out.push(sr_factor(
            value,
            i1.conjugate_by(&h_inv)?,
            i2.conjugate_by(&h_inv)?,
        ));
    }
    let pp_inv = shrunk.p_prime.inverse()?;
    if !pp_inv.is_identity() {
        let (i1, i2) = periodic_sr_witness(&pp_inv)?;
        out.push(sr_factor(pp_inv, i1, i2));
    }
    Ok(out)
}

/// The involutions strategy: expand every strongly reversible factor into
/// its two involution halves.
pub struct InvolutionsStrategy;

impl DecompositionStrategy for InvolutionsStrategy {
    fn name(&self) -> &'static str {
        "involutions"
    }

    fn describe(&self) -> &'static str {
        "product of at most 12 involutions"
    }

    fn decompose(&self, target: &Fiet, opts: &DecomposeOptions) -> Result<Certificate> {
        let mut factors = Vec::new();
        for f in sr_factors(target, opts)? {
            let Witness::StrongReversal { i1, i2 } = f.witness else {
                unreachable!("strong-reversal pipeline only builds strong-reversal witnesses");
            };
            for inv in [i1, i2] {
                if !inv.is_identity() {
                    factors.push(Factor {
                        value: inv,
                        witness: Witness::Involution,
                    });
                }
            }
        }
        Ok(Certificate {
            kind: CertificateKind::Involutions,
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
    use crate::fiet::{restricted_rotation, rotation, symmetry};

    fn replay_sr(cert: &Certificate) {
        assert_eq!(cert.product().unwrap(), cert.target);
        for f in &cert.factors {
            let Witness::StrongReversal { i1, i2 } = &f.witness else {
                panic!("wrong witness kind");
            };
            assert!(i1.is_involution().unwrap());
            assert!(i2.is_involution().unwrap());
            assert_eq!(&i1.compose(i2).unwrap(), &f.value);
        }
    }

    #[test]
    fn restricted_rotation_is_one_factor() {
        let basis = Basis::rational();
        let f = restricted_rotation(
            &Real::from_rational(&basis, rat(1, 5)),
            &Real::from_rational(&basis, rat(1, 4)),
            &Real::from_rational(&basis, rat(3, 4)),
        )
        .unwrap();
        let cert = StronglyReversibleStrategy
            .decompose(&f, &DecomposeOptions::default())
            .unwrap();
        assert_eq!(cert.nonidentity_count(), 1);
        replay_sr(&cert);
    }

    #[test]
    fn involution_is_one_factor() {
        let basis = Basis::rational();
        let f = symmetry(
            &Real::from_rational(&basis, rat(1, 3)),
            &Real::from_rational(&basis, rat(2, 3)),
        )
        .unwrap();
        let cert = StronglyReversibleStrategy
            .decompose(&f, &DecomposeOptions::default())
            .unwrap();
        assert_eq!(cert.nonidentity_count(), 1);
        replay_sr(&cert);
    }

    #[test]
    fn irrational_rotation_stays_within_six_and_twelve() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        let sr = StronglyReversibleStrategy
            .decompose(&f, &DecomposeOptions::default())
            .unwrap();
        assert!(sr.nonidentity_count() <= 6);
        replay_sr(&sr);
        let inv = InvolutionsStrategy
            .decompose(&f, &DecomposeOptions::default())
            .unwrap();
        assert!(inv.nonidentity_count() <= 12);
        assert_eq!(inv.product().unwrap(), f);
        for fac in &inv.factors {
            assert!(fac.value.is_involution().unwrap());
        }
    }
}
