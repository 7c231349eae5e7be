//! Seeded random map generation for test corpora and the `gen-random`
//! command. All sampling is driven by a caller-provided ChaCha stream, so a
//! fixed seed reproduces the corpus byte for byte.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::rational::Rat;
use crate::exact::{try_sort_by, Basis, BasisRef, Real, SessionLimits};
use crate::fiet::{from_description, Fiet};

/// Where the breakpoints live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakpointData {
    /// Multiples of 1/denominator.
    Grid { denominator: u32 },
    /// `a/denom + b√2/(4 denom)` with small integer a, b.
    Sqrt2 { denom: u32 },
}

#[derive(Debug, Clone, Copy)]
pub struct RandomFietSpec {
    pub m: usize,
    pub data: BreakpointData,
    pub flips: bool,
}

/// The session matching a breakpoint family.
pub fn session_for(data: BreakpointData, limits: SessionLimits) -> Result<BasisRef> {
    match data {
        BreakpointData::Grid { .. } => Basis::new(Vec::new(), limits),
        BreakpointData::Sqrt2 { .. } => Basis::new(
            vec![crate::exact::Generator::Sqrt(Rat::from_integer(2.into()))],
            limits,
        ),
    }
}

fn sample_breakpoints(
    basis: &BasisRef,
    spec: &RandomFietSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Real>> {
    let want = spec.m - 1;
    match spec.data {
        BreakpointData::Grid { denominator } => {
            let denominator = denominator as usize;
            if want > denominator.saturating_sub(1) {
                return Err(Error::ParameterOutOfRange(format!(
                    "cannot place {want} distinct breakpoints on a 1/{denominator} grid"
                )));
            }
            let mut ticks: Vec<usize> = (1..denominator).collect();
            ticks.shuffle(rng);
            let mut chosen: Vec<usize> = ticks.into_iter().take(want).collect();
            chosen.sort_unstable();
            Ok(chosen
                .into_iter()
                .map(|k| {
                    Real::from_rational(
                        basis,
                        Rat::new(BigInt::from(k as u64), BigInt::from(denominator as u64)),
                    )
                })
                .collect())
        }
        BreakpointData::Sqrt2 { denom } => {
            let zero = Real::zero(basis);
            let one = Real::one(basis);
            let mut points: Vec<Real> = Vec::new();
            let mut attempts = 0;
            while points.len() < want {
                attempts += 1;
                if attempts > 10_000 {
                    return Err(Error::ParameterOutOfRange(
                        "breakpoint sampling failed to converge".into(),
                    ));
                }
                let a = rng.gen_range(0..=denom as i64);
                let b = rng.gen_range(-(denom as i64)..=denom as i64);
                let x = Real::new(
                    basis.clone(),
                    vec![
                        Rat::new(a.into(), BigInt::from(denom)),
                        Rat::new(b.into(), BigInt::from(4 * denom as i64)),
                    ],
                )
                .expect("two coordinates over the sqrt2 basis");
                if !(zero.lt(&x)? && x.lt(&one)?) {
                    continue;
                }
                if points.contains(&x) {
                    continue;
                }
                points.push(x);
            }
            try_sort_by(&mut points, |a, b| a.try_cmp(b))?;
            Ok(points)
        }
    }
}

/// A random canonical map with exactly `spec.m` pieces (resampling until the
/// canonical form does not merge), with at least one flipped piece when
/// `spec.flips` is set.
pub fn random_fiet(basis: &BasisRef, spec: &RandomFietSpec, rng: &mut ChaCha8Rng) -> Result<Fiet> {
    if spec.m == 0 {
        return Err(Error::ParameterOutOfRange("m must be positive".into()));
    }
    if spec.m == 1 {
        return Ok(Fiet::identity(basis));
    }
    for _ in 0..10_000 {
        let bps = sample_breakpoints(basis, spec, rng)?;
        let mut lengths = Vec::with_capacity(spec.m);
        let mut prev = Real::zero(basis);
        for b in &bps {
            lengths.push(b - &prev);
            prev = b.clone();
        }
        lengths.push(&Real::one(basis) - &prev);
        let mut perm: Vec<usize> = (0..spec.m).collect();
        perm.shuffle(rng);
        let flips: Vec<bool> = if spec.flips {
            loop {
                let f: Vec<bool> = (0..spec.m).map(|_| rng.gen_bool(0.5)).collect();
                if f.iter().any(|&x| x) {
                    break f;
                }
            }
        } else {
            vec![false; spec.m]
        };
        let f = from_description(basis, &lengths, &perm, &flips)?;
        if f.piece_count() == spec.m {
            return Ok(f);
        }
    }
    Err(Error::ParameterOutOfRange(
        "random generation kept merging pieces".into(),
    ))
}
