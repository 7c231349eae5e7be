//! Independent certificate checker.
//!
//! Replays every claim of a certificate using only the group primitives:
//! the factor product, each witness identity, the kind's factor-count
//! bound, and the kernel condition for commutator certificates of
//! flip-free targets. Nothing from the producing pipelines is trusted or
//! shared beyond the certificate data itself.

use num_bigint::BigInt;
use num_traits::One;

use crate::cert::{corner_involution_count, Certificate, CertificateKind, Witness};
use crate::error::Result;
use crate::exact::{Rat, Real};
use crate::fiet::{restricted_rotation, Fiet};
use crate::invariants::saf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    ProductMismatch,
    WitnessMismatch,
    NotInvolution,
    CountExceeded,
    SupportViolation,
    SafNonzero,
}

impl FailureReason {
    pub fn label(&self) -> &'static str {
        match self {
            FailureReason::ProductMismatch => "product-mismatch",
            FailureReason::WitnessMismatch => "witness-mismatch",
            FailureReason::NotInvolution => "not-involution",
            FailureReason::CountExceeded => "count-exceeded",
            FailureReason::SupportViolation => "support-violation",
            FailureReason::SafNonzero => "saf-nonzero",
        }
    }
}

/// A failed check; `factor` is the offending factor index when the check is
/// per-factor, and `None` for whole-certificate checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub factor: Option<usize>,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, Default)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn expected_witness(kind: CertificateKind, index: usize, count: usize) -> &'static str {
    match kind {
        CertificateKind::Rotations => "restricted-rotation",
        CertificateKind::Commutators => "commutator",
        CertificateKind::StronglyReversible => "strong-reversal",
        CertificateKind::Involutions => "involution",
        CertificateKind::CornerSupport { .. } => {
            if index + 1 == count {
                "corner-tail"
            } else {
                "involution"
            }
        }
    }
}

/// Replays a certificate. Arithmetic failures (precision exhaustion) are
/// errors; everything the certificate merely gets wrong is reported as
/// failure data.
pub fn verify(cert: &Certificate) -> Result<Verdict> {
    let mut verdict = Verdict::default();
    let mut fail = |factor: Option<usize>, reason: FailureReason| {
        verdict.failures.push(Failure { factor, reason });
    };

    match cert.product() {
        Ok(product) if product == cert.target => {}
        _ => fail(None, FailureReason::ProductMismatch),
    }

    let count = cert.factors.len();
    for (idx, factor) in cert.factors.iter().enumerate() {
        if factor.witness.label() != expected_witness(cert.kind, idx, count) {
            fail(Some(idx), FailureReason::WitnessMismatch);
            continue;
        }
        match &factor.witness {
            Witness::Commutator { a, h } => {
                if Fiet::commutator(a, h)? != factor.value {
                    fail(Some(idx), FailureReason::WitnessMismatch);
                }
            }
            Witness::Involution => {
                if !factor.value.is_involution()? {
                    fail(Some(idx), FailureReason::NotInvolution);
                }
            }
            Witness::StrongReversal { i1, i2 } => {
                if !i1.is_involution()? || !i2.is_involution()? {
                    fail(Some(idx), FailureReason::NotInvolution);
                } else if i1.compose(i2)? != factor.value {
                    fail(Some(idx), FailureReason::WitnessMismatch);
                }
            }
            Witness::RestrictedRotation { angle, left, right } => {
                match restricted_rotation(angle, left, right) {
                    Ok(r) if r == factor.value => {}
                    _ => fail(Some(idx), FailureReason::WitnessMismatch),
                }
            }
            Witness::Periodic { order } => {
                if order < &num_bigint::BigUint::one()
                    || !factor.value.power(order)?.is_identity()
                {
                    fail(Some(idx), FailureReason::WitnessMismatch);
                }
            }
            Witness::CornerTail { conjugator, core } => {
                if core.conjugate_by(conjugator)? != factor.value {
                    fail(Some(idx), FailureReason::WitnessMismatch);
                }
                if let CertificateKind::CornerSupport { n } = cert.kind {
                    let basis = cert.target.basis();
                    let corner_left = Real::from_rational(
                        basis,
                        Rat::one() - Rat::new(BigInt::one(), BigInt::from(n)),
                    );
                    if !core.supported_in(&corner_left, &Real::one(basis))? {
                        fail(Some(idx), FailureReason::SupportViolation);
                    }
                }
            }
        }
    }

    let nonidentity = cert.nonidentity_count();
    let count_ok = match cert.kind {
        CertificateKind::Rotations => nonidentity + 1 <= cert.target.piece_count().max(1),
        CertificateKind::Commutators => {
            nonidentity <= if cert.target.is_flip_free() { 5 } else { 6 }
        }
        CertificateKind::StronglyReversible => nonidentity <= 6,
        CertificateKind::Involutions => nonidentity <= 12,
        CertificateKind::CornerSupport { n } => {
            // Exactly s_n involutions (identity padding allowed) + the tail.
            count as u64 == corner_involution_count(n) + 1
        }
    };
    if !count_ok {
        fail(None, FailureReason::CountExceeded);
    }

    if cert.kind == CertificateKind::Commutators && cert.target.is_flip_free() {
        if !saf(&cert.target)?.is_zero() {
            fail(None, FailureReason::SafNonzero);
        }
    }

    Ok(verdict)
}
