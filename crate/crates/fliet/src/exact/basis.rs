//! Session basis: the declared independent generators of the coefficient span.
//!
//! Every exact value in a session is a rational combination of `1` and the
//! declared generators. Independence over the rationals is a trusted
//! declaration; the only enforced sanity check is that a square-root
//! generator is not secretly rational.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::rational::Rat;

/// One declared irrational generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// The positive square root of a positive rational.
    Sqrt(Rat),
    /// An opaque computable real: a declared enclosure plus a decimal
    /// expansion that refines it. The expansion is the refinement oracle;
    /// running out of digits exhausts the precision budget.
    Opaque {
        low: Rat,
        high: Rat,
        digits: String,
    },
}

/// Tuning knobs shared by every value of a session.
#[derive(Debug, Clone)]
pub struct SessionLimits {
    /// Starting refinement precision (bits) for sign determination.
    pub precision_start: u32,
    /// Budget for values involving opaque generators.
    pub precision_max: u32,
    /// Budget for values involving only square-root generators. These
    /// refinements are cheap and can only fail under a dishonest
    /// independence declaration, so the ceiling is much higher.
    pub sqrt_precision_max: u32,
    /// Hard cap on canonical piece counts.
    pub piece_cap: usize,
}

impl Default for SessionLimits {
    fn default() -> Self {
        SessionLimits {
            precision_start: 256,
            precision_max: 4096,
            sqrt_precision_max: 1 << 16,
            piece_cap: 1 << 16,
        }
    }
}

#[derive(Debug, Clone)]
struct CachedInterval {
    bits: u32,
    low: Rat,
    high: Rat,
}

/// The declared generators together with their interval refinement cache.
///
/// Values are shared through [`BasisRef`]; the cache is internally
/// synchronized so concurrent comparisons observe consistent (only ever
/// narrower) enclosures.
#[derive(Debug)]
pub struct Basis {
    gens: Vec<Generator>,
    limits: SessionLimits,
    cache: Mutex<Vec<CachedInterval>>,
}

pub type BasisRef = Arc<Basis>;

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn parse_decimal_digits(digits: &str) -> Result<(BigInt, Vec<u8>)> {
    let bad = || Error::InvalidGenerator(format!("bad decimal oracle {digits:?}"));
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let int: BigInt = int_part.parse().map_err(|_| bad())?;
    let frac: Vec<u8> = frac_part
        .bytes()
        .map(|b| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(bad())
            }
        })
        .collect::<Result<_>>()?;
    Ok((int, frac))
}

/// Enclosure implied by the first `k` fractional digits.
fn digit_interval(int: &BigInt, frac: &[u8], k: usize) -> (Rat, Rat) {
    let k = k.min(frac.len());
    let mut num = int.clone();
    for &d in &frac[..k] {
        num = num * 10 + d;
    }
    let den = BigInt::from(10).pow(k as u32);
    let low = Rat::new(num.clone(), den.clone());
    let high = Rat::new(num + 1, den);
    (low, high)
}

impl Basis {
    /// Rational-only session (no irrational generators).
    pub fn rational() -> BasisRef {
        Basis::new(Vec::new(), SessionLimits::default()).expect("empty basis is valid")
    }

    /// Session over the span of 1 and sqrt(r).
    pub fn with_sqrt(r: Rat) -> BasisRef {
        Basis::new(vec![Generator::Sqrt(r)], SessionLimits::default())
            .expect("irrational sqrt generator is valid")
    }

    pub fn new(gens: Vec<Generator>, limits: SessionLimits) -> Result<BasisRef> {
        for g in &gens {
            match g {
                Generator::Sqrt(r) => {
                    if !r.is_positive() {
                        return Err(Error::InvalidGenerator(format!(
                            "sqrt of non-positive rational {r}"
                        )));
                    }
                    if is_perfect_square(r.numer()) && is_perfect_square(r.denom()) {
                        return Err(Error::RationalSquareRoot(r.to_string()));
                    }
                }
                Generator::Opaque { low, high, digits } => {
                    if low >= high {
                        return Err(Error::InvalidGenerator(format!(
                            "empty enclosure [{low}, {high}]"
                        )));
                    }
                    let (int, frac) = parse_decimal_digits(digits)?;
                    let (dl, dh) = digit_interval(&int, &frac, frac.len());
                    if &dh <= low || &dl >= high {
                        return Err(Error::InvalidGenerator(
                            "oracle digits disagree with the declared enclosure".into(),
                        ));
                    }
                }
            }
        }
        let cache = gens
            .iter()
            .map(|g| {
                let (low, high) = match g {
                    Generator::Sqrt(r) => coarse_sqrt_bounds(r),
                    Generator::Opaque { low, high, .. } => (low.clone(), high.clone()),
                };
                CachedInterval { bits: 0, low, high }
            })
            .collect();
        Ok(Arc::new(Basis {
            gens,
            limits,
            cache: Mutex::new(cache),
        }))
    }

    /// Number of coordinates: the generators plus the implicit constant 1.
    pub fn dim(&self) -> usize {
        self.gens.len() + 1
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn limits(&self) -> &SessionLimits {
        &self.limits
    }

    pub fn piece_cap(&self) -> usize {
        self.limits.piece_cap
    }

    /// True when any declared generator is opaque (budgeted refinement).
    pub fn has_opaque(&self) -> bool {
        self.gens
            .iter()
            .any(|g| matches!(g, Generator::Opaque { .. }))
    }

    /// Two basis handles describe the same session span.
    pub fn same_as(&self, other: &Basis) -> bool {
        std::ptr::eq(self, other) || self.gens == other.gens
    }

    /// Enclosure of generator `idx` (0-based among generators, excluding the
    /// implicit 1) with width at most `2^-bits`. Enclosures only ever shrink,
    /// so comparisons already answered can never flip. Fails when the
    /// generator's oracle cannot reach the requested precision.
    pub fn generator_bounds(&self, idx: usize, bits: u32) -> Result<(Rat, Rat)> {
        let mut cache = self.cache.lock().expect("basis cache poisoned");
        let entry = &mut cache[idx];
        if entry.bits >= bits {
            return Ok((entry.low.clone(), entry.high.clone()));
        }
        let (low, high) = match &self.gens[idx] {
            Generator::Sqrt(r) => sqrt_bounds(r, bits),
            Generator::Opaque { digits, .. } => {
                let (int, frac) = parse_decimal_digits(digits).expect("validated at construction");
                // 10^-k <= 2^-bits  <=>  k >= bits * log10(2); 0.302 covers it.
                let k = (bits as usize) * 302 / 1000 + 1;
                if k > frac.len() {
                    return Err(Error::PrecisionExhausted { bits });
                }
                digit_interval(&int, &frac, k)
            }
        };
        // Intersect with the previous enclosure so refinement is nested even
        // if the two bounds come from different computations.
        if low > entry.low {
            entry.low = low;
        }
        if high < entry.high {
            entry.high = high;
        }
        entry.bits = bits;
        Ok((entry.low.clone(), entry.high.clone()))
    }
}

fn coarse_sqrt_bounds(r: &Rat) -> (Rat, Rat) {
    sqrt_bounds(r, 1)
}

/// Enclosure of sqrt(r) with width 2^-bits: floor-sqrt at denominator 2^bits.
fn sqrt_bounds(r: &Rat, bits: u32) -> (Rat, Rat) {
    let scale = BigInt::one() << bits;
    let scaled = (r * Rat::from_integer(&scale * &scale)).floor().to_integer();
    let root = scaled.sqrt();
    let low = Rat::new(root.clone(), scale.clone());
    let high = Rat::new(root + 1, scale);
    (low, high)
}

/// Require that the two handles describe one session.
pub fn check_same_basis(a: &Basis, b: &Basis) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::BasisMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    #[test]
    fn rejects_rational_square_roots() {
        assert!(matches!(
            Basis::new(vec![Generator::Sqrt(rat(9, 4))], SessionLimits::default()),
            Err(Error::RationalSquareRoot(_))
        ));
        assert!(Basis::with_sqrt(rat_int(2)).dim() == 2);
    }

    #[test]
    fn sqrt_bounds_narrow_and_enclose() {
        let basis = Basis::with_sqrt(rat_int(2));
        let (l1, h1) = basis.generator_bounds(0, 8).unwrap();
        let (l2, h2) = basis.generator_bounds(0, 32).unwrap();
        assert!(l1 <= l2 && h2 <= h1, "refinement must be nested");
        assert!(&l2 * &l2 < rat_int(2) && rat_int(2) < &h2 * &h2);
        assert!(&h2 - &l2 <= rat(1, 1 << 30));
    }

    #[test]
    fn opaque_oracle_runs_out_of_digits() {
        let basis = Basis::new(
            vec![Generator::Opaque {
                low: rat(1, 10),
                high: rat(2, 10),
                digits: "0.1415".into(),
            }],
            SessionLimits::default(),
        )
        .unwrap();
        assert!(basis.generator_bounds(0, 8).is_ok());
        assert!(matches!(
            basis.generator_bounds(0, 64),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn opaque_must_match_enclosure() {
        assert!(Basis::new(
            vec![Generator::Opaque {
                low: rat(1, 2),
                high: rat(3, 4),
                digits: "0.9".into(),
            }],
            SessionLimits::default(),
        )
        .is_err());
    }
}
