//! Helpers for arbitrary-precision rationals.
//!
//! `BigRational` already keeps values reduced with a positive denominator,
//! which is exactly the canonical form required for coordinate equality.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p" with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical "p/q" form ("p" when the denominator is one).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest power of two `2^k` (k >= min_k) with `1/2^k < bound`.
/// Returns the exponent k. Requires bound > 0.
pub fn dyadic_exponent_below(bound: &Rat, min_k: u32) -> u32 {
    debug_assert!(bound.is_positive());
    let mut k = min_k;
    let two = rat_int(2);
    let mut value = Rat::one() / two.pow(k as i32);
    while &value >= bound {
        k += 1;
        value /= &two;
    }
    k
}

/// `1/2^k` for the smallest k >= min_k with `1/2^k < bound`.
pub fn dyadic_below(bound: &Rat, min_k: u32) -> Rat {
    Rat::one() / rat_int(2).pow(dyadic_exponent_below(bound, min_k) as i32)
}

/// Floor of a rational as a big integer.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// lcm of two positive big integers.
pub fn lcm_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    use num_integer::Integer;
    a / a.gcd(b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-2/5", "7", "0", "-1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn dyadic_below_is_strict() {
        let b = rat(1, 80);
        let d = dyadic_below(&b, 0);
        assert!(d < b);
        assert_eq!(d, rat(1, 128));
        assert_eq!(dyadic_below(&rat(1, 128), 0), rat(1, 256));
    }
}
