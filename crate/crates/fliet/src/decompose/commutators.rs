//! The commutator-length pipeline: at most 6 witnessed commutators for any
//! map, at most 5 for flip-free maps.

use num_bigint::BigInt;
use num_traits::One;

use crate::cert::{Certificate, CertificateKind, Factor, Witness};
use crate::decompose::flips::{factor_flips, flip_involution_commutator_witness};
use crate::decompose::periodic::periodic_as_commutator;
use crate::decompose::rotations::{restricted_rotation_as_commutator, to_restricted_rotations};
use crate::decompose::shrink::shrink_support;
use crate::decompose::vaserstein::{dyadic_depth, vaserstein_step};
use crate::decompose::{fixnorm::normalize_fixed_set, DecompositionStrategy, DecomposeOptions};
use crate::error::Result;
use crate::exact::{Rat, Real};
use crate::fiet::Fiet;
use crate::invariants::is_periodic;

pub struct CommutatorsStrategy;

impl DecompositionStrategy for CommutatorsStrategy {
    fn name(&self) -> &'static str {
        "commutators"
    }

    fn describe(&self) -> &'static str {
        "product of at most 6 commutators (5 for flip-free maps)"
    }

    fn decompose(&self, target: &Fiet, opts: &DecomposeOptions) -> Result<Certificate> {
        let factors = commutator_factors(target, opts)?;
        Ok(Certificate {
            kind: CertificateKind::Commutators,
            target: target.clone(),
            factors,
        })
    }
}

fn commutator_factor(value: Fiet, a: Fiet, h: Fiet) -> Factor {
    Factor {
        value,
        witness: Witness::Commutator { a, h },
    }
}

pub(crate) fn commutator_factors(target: &Fiet, opts: &DecomposeOptions) -> Result<Vec<Factor>> {
    if target.is_identity() {
        return Ok(Vec::new());
    }
    let (g, iota) = factor_flips(target)?;
    let mut factors = flip_free_commutator_factors(&g, opts)?;
    if !iota.is_identity() {
        let (a, h) = flip_involution_commutator_witness(target, &iota)?;
        factors.push(commutator_factor(iota, a, h));
    }
    Ok(factors)
}

fn flip_free_commutator_factors(g: &Fiet, opts: &DecomposeOptions) -> Result<Vec<Factor>> {
    if g.is_identity() {
        return Ok(Vec::new());
    }
    // Periodic maps (rational ones in particular) are single commutators.
    if is_periodic(g, opts.periodic_probe_cap)?.is_periodic() {
        let (a, h) = periodic_as_commutator(g)?;
        return Ok(vec![commutator_factor(g.clone(), a, h)]);
    }

    // General pipeline: shrink the support into the dyadic corner, peel the
    // corner map into restricted rotations (each one a commutator), then
    // compress through the nested halves.
    let basis = g.basis();
    let m = g.piece_count();
    let t = dyadic_depth(15 * m - 1).max(1);
    let n = 1u64 << t;
    let shrunk = shrink_support(g, n)?;
    let (h_norm, corner) = normalize_fixed_set(&shrunk.g)?;

    let mut factors: Vec<Factor> = to_restricted_rotations(&corner)?
        .into_iter()
        .map(|r| {
            let (value, a, h) = restricted_rotation_as_commutator(&r.angle, &r.left, &r.right)?;
            debug_assert_eq!(value, r.value);
            Ok(commutator_factor(value, a, h))
        })
        .collect::<Result<_>>()?;

    // Stage s holds factors supported in [1 - 1/2^s, 1); one step moves
    // them into the enclosing interval [1 - 1/2^{s-1}, 1). Once at most 3
    // factors remain they are already valid anywhere.
    for s in (1..=t).rev() {
        if factors.len() <= 3 {
            break;
        }
        let l = Real::from_rational(
            basis,
            Rat::one() - Rat::new(BigInt::from(1), BigInt::from(1u64 << (s - 1))),
        );
        let r = Real::one(basis);
        factors = vaserstein_step(CertificateKind::Commutators, &l, &r, factors)?;
    }

    // Undo the fixed-set normalization: conjugation preserves commutators.
    let h_inv = h_norm.inverse()?;
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len() + 2);
    let p_inv = shrunk.p.inverse()?;
    if !p_inv.is_identity() {
        let (a, h) = periodic_as_commutator(&p_inv)?;
        out.push(commutator_factor(p_inv, a, h));
    }
    for f in factors {
        let value = f.value.conjugate_by(&h_inv)?;
        let Witness::Commutator { a, h } = f.witness else {
            unreachable!("commutator pipeline only builds commutator witnesses");
        };
        out.push(commutator_factor(
            value,
            a.conjugate_by(&h_inv)?,
            h.conjugate_by(&h_inv)?,
        ));
    }
    let pp_inv = shrunk.p_prime.inverse()?;
    if !pp_inv.is_identity() {
        let (a, h) = periodic_as_commutator(&pp_inv)?;
        out.push(commutator_factor(pp_inv, a, h));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Basis;
    use crate::fiet::rotation;

    fn replay(cert: &Certificate) {
        assert_eq!(cert.product().unwrap(), cert.target);
        for f in &cert.factors {
            let Witness::Commutator { a, h } = &f.witness else {
                panic!("wrong witness kind");
            };
            assert_eq!(&Fiet::commutator(a, h).unwrap(), &f.value);
        }
    }

    #[test]
    fn identity_has_an_empty_certificate() {
        let basis = Basis::rational();
        let cert = CommutatorsStrategy
            .decompose(&Fiet::identity(&basis), &DecomposeOptions::default())
            .unwrap();
        assert!(cert.factors.is_empty());
        replay(&cert);
    }

    #[test]
    fn periodic_map_is_one_commutator() {
        let basis = Basis::rational();
        let f = rotation(&basis, &Real::from_rational(&basis, rat(5, 7))).unwrap();
        let cert = CommutatorsStrategy
            .decompose(&f, &DecomposeOptions::default())
            .unwrap();
        assert_eq!(cert.nonidentity_count(), 1);
        replay(&cert);
    }

    #[test]
    fn irrational_rotation_stays_within_five() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        let cert = CommutatorsStrategy
            .decompose(&f, &DecomposeOptions::default())
            .unwrap();
        assert!(cert.nonidentity_count() <= 5);
        replay(&cert);
    }
}
