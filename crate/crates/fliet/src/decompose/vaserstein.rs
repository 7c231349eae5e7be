//! The compression step: factors supported in the right half of an interval
//! are paired with their conjugates by the half-turn, cutting the factor
//! count to ceil(c/2) + 1 while staying witnessed.

use crate::cert::{CertificateKind, Factor, Witness};
use crate::error::{Error, Result};
use crate::exact::Real;
use crate::fiet::{restricted_rotation, Fiet};

/// Count after one step.
pub fn step_count(c: usize) -> usize {
    c.div_ceil(2) + 1
}

/// Number of steps taking `c0` down to its fixed point 3 (0 when already
/// at most 3).
pub fn dyadic_depth(c0: usize) -> u32 {
    let mut c = c0;
    let mut t = 0;
    while c > 3 {
        c = step_count(c);
        t += 1;
    }
    t
}

fn same_kind_identity(kind: CertificateKind, basis: &crate::exact::BasisRef) -> Factor {
    let id = Fiet::identity(basis);
    let witness = match kind {
        CertificateKind::Commutators => Witness::Commutator {
            a: id.clone(),
            h: id.clone(),
        },
        CertificateKind::StronglyReversible => Witness::StrongReversal {
            i1: id.clone(),
            i2: id.clone(),
        },
        _ => unreachable!("compression only runs on commutator or strong-reversal factors"),
    };
    Factor { value: id, witness }
}

fn supported_factor_maps(f: &Factor) -> Vec<&Fiet> {
    let mut maps = vec![&f.value];
    match &f.witness {
        Witness::Commutator { a, h } => {
            maps.push(a);
            maps.push(h);
        }
        Witness::StrongReversal { i1, i2 } => {
            maps.push(i1);
            maps.push(i2);
        }
        _ => {}
    }
    maps
}

/// One compression round inside `J = [l, r)`: all inputs (values and
/// witness maps) must be supported in the right half of J; the outputs are
/// supported in J and carry witnesses of the same kind.
pub fn vaserstein_step(
    kind: CertificateKind,
    l: &Real,
    r: &Real,
    factors: Vec<Factor>,
) -> Result<Vec<Factor>> {
    if factors.is_empty() {
        return Ok(factors);
    }
    let basis = l.basis().clone();
    let mid = (l + r).halve();
    for f in &factors {
        for map in supported_factor_maps(f) {
            if !map.supported_in(&mid, r)? {
                return Err(Error::SupportNotInRightHalf);
            }
        }
    }
    // The half-turn of J: an involution exchanging the two halves.
    let half_turn = restricted_rotation(&(r - l).halve(), l, r)?;
    let conj = |f: &Fiet| f.conjugate_by(&half_turn);

    let mut fs = factors;
    if fs.len() % 2 == 1 {
        fs.push(same_kind_identity(kind, &basis));
    }
    let p = fs.len() / 2;
    let (front, back) = fs.split_at(p);

    let mut out: Vec<Factor> = Vec::with_capacity(p + 1);
    for (fi, fpi) in front.iter().zip(back.iter()) {
        let mate = conj(&fpi.value)?;
        let value = fi.value.compose(&mate)?;
        let witness = match (&fi.witness, &fpi.witness) {
            (Witness::Commutator { a, h }, Witness::Commutator { a: a2, h: h2 }) => {
                // Disjoint supports: [a,h][a',h'] = [a a', h h'].
                Witness::Commutator {
                    a: a.compose(&conj(a2)?)?,
                    h: h.compose(&conj(h2)?)?,
                }
            }
            (Witness::StrongReversal { i2: w1, .. }, Witness::StrongReversal { i2: w2, .. }) => {
                // f1 reversed by w1, f2' by w2'; the commuting product is
                // reversed by w2' w1.
                let w = conj(w2)?.compose(w1)?;
                Witness::StrongReversal {
                    i1: value.compose(&w)?,
                    i2: w,
                }
            }
            _ => {
                return Err(Error::ParameterOutOfRange(
                    "mixed witness kinds in compression".into(),
                ))
            }
        };
        out.push(Factor { value, witness });
    }

    // Tail: W = product of the back half.
    let mut w = Fiet::identity(&basis);
    for f in back {
        w = w.compose(&f.value)?;
    }
    let w_conj_inv = conj(&w.inverse()?)?;
    let tail = match kind {
        CertificateKind::Commutators => {
            // C = (W')⁻¹ W = [R W⁻¹ R, R] since R is an involution.
            let value = w_conj_inv.compose(&w)?;
            Factor {
                value,
                witness: Witness::Commutator {
                    a: w_conj_inv,
                    h: half_turn.clone(),
                },
            }
        }
        CertificateKind::StronglyReversible => {
            // C = W (W')⁻¹ = W R W⁻¹ R⁻¹, strongly reversible by R.
            let value = w.compose(&w_conj_inv)?;
            Factor {
                witness: Witness::StrongReversal {
                    i1: value.compose(&half_turn)?,
                    i2: half_turn.clone(),
                },
                value,
            }
        }
        _ => unreachable!("checked above"),
    };
    out.push(tail);
    out.retain(|f| !f.value.is_identity());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_arithmetic_reaches_the_fixed_point() {
        // ceil(c/2)+1 from any start >= 2 falls to 3 (or stays at 2).
        assert_eq!(step_count(4), 3);
        assert_eq!(step_count(3), 3);
        assert_eq!(step_count(2), 2);
        for c0 in 2..2000usize {
            let mut c = c0;
            for _ in 0..dyadic_depth(c0) {
                c = step_count(c);
            }
            assert!(c <= 3, "start {c0} stuck at {c}");
        }
        // 15m-1 for m=8 needs 7 rounds.
        assert_eq!(dyadic_depth(119), 7);
        assert_eq!(dyadic_depth(29), 5);
    }
}
