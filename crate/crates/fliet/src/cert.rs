//! Certificates: stored factorizations with replayable per-factor witnesses.
//!
//! A certificate claims that the ordered composition of its factors (left to
//! right) equals the target, that every factor is of the kind's shape, and
//! that the factor count respects the kind's bound. The witnesses carry
//! exactly the data needed to replay those claims by composition.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::exact::Real;
use crate::fiet::Fiet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Product of restricted rotations; at most m-1 of them for an m-piece
    /// flip-free target.
    Rotations,
    /// At most 6 commutators (5 when the target is flip-free).
    Commutators,
    /// At most 6 products of two involutions.
    StronglyReversible,
    /// At most 12 involutions.
    Involutions,
    /// Exactly `corner_involution_count(n)` involutions followed by one
    /// conjugated tail supported in [1 - 1/n, 1).
    CornerSupport { n: u64 },
}

impl CertificateKind {
    pub fn label(&self) -> &'static str {
        match self {
            CertificateKind::Rotations => "rotations",
            CertificateKind::Commutators => "commutators",
            CertificateKind::StronglyReversible => "strong-reversible",
            CertificateKind::Involutions => "involutions",
            CertificateKind::CornerSupport { .. } => "corner",
        }
    }
}

/// How many fix-increasing involutions the corner-support pipeline uses:
/// the greatest s with (5/4)^s <= n, plus one. Computed with exact integer
/// arithmetic (5^s <= n * 4^s).
pub fn corner_involution_count(n: u64) -> u64 {
    let n = BigUint::from(n);
    let mut s = 0u64;
    let mut p5 = BigUint::one();
    let mut p4 = BigUint::one();
    loop {
        let next5 = &p5 * 5u32;
        let next4 = &p4 * 4u32;
        if next5 <= &n * &next4 {
            s += 1;
            p5 = next5;
            p4 = next4;
        } else {
            return s + 1;
        }
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// value = a h a⁻¹ h⁻¹.
    Commutator { a: Fiet, h: Fiet },
    /// value ∘ value = id.
    Involution,
    /// value = i1 ∘ i2 with i1² = i2² = id.
    StrongReversal { i1: Fiet, i2: Fiet },
    /// value = R_{angle, [left, right)}.
    RestrictedRotation { angle: Real, left: Real, right: Real },
    /// value^order = id.
    Periodic { order: BigUint },
    /// value = conjugator ∘ core ∘ conjugator⁻¹ with core supported in the
    /// corner [1 - 1/n, 1) given by the certificate kind.
    CornerTail { conjugator: Fiet, core: Fiet },
}

impl Witness {
    pub fn label(&self) -> &'static str {
        match self {
            Witness::Commutator { .. } => "commutator",
            Witness::Involution => "involution",
            Witness::StrongReversal { .. } => "strong-reversal",
            Witness::RestrictedRotation { .. } => "restricted-rotation",
            Witness::Periodic { .. } => "periodic",
            Witness::CornerTail { .. } => "corner-tail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Factor {
    pub value: Fiet,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub target: Fiet,
    pub factors: Vec<Factor>,
}

impl Certificate {
    /// Left-to-right composition of the factor values (identity when empty).
    pub fn product(&self) -> Result<Fiet> {
        let mut acc = Fiet::identity(self.target.basis());
        for f in &self.factors {
            acc = acc.compose(&f.value)?;
        }
        Ok(acc)
    }

    /// Factors that are not identity padding.
    pub fn nonidentity_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| !f.value.is_identity())
            .count()
    }
}
