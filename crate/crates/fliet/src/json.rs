//! JSON schemas for bases, maps, certificates and verdicts.
//!
//! Rationals travel as "p/q" strings; a value's coordinates are relative to
//! the session basis, which every file embeds. Output is canonical: maps
//! are emitted in canonical form, so parse(emit(x)) = x.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cert::{Certificate, CertificateKind, Factor, Witness};
use crate::error::{Error, Result};
use crate::exact::{format_rat, parse_rat, Basis, BasisRef, Generator, Real, SessionLimits};
use crate::fiet::{Fiet, Piece};
use crate::verify::Verdict;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GeneratorJson {
    Sqrt {
        sqrt: String,
    },
    Opaque {
        interval: [String; 2],
        oracle: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct BasisJson {
    pub generators: Vec<GeneratorJson>,
}

pub type Coords = Vec<String>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceJson {
    pub left: Coords,
    pub right: Coords,
    pub sign: i8,
    pub offset: Coords,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FietJson {
    pub basis: BasisJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
    pub pieces: Vec<PieceJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealJson {
    pub coords: Coords,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessJson {
    Commutator {
        a: Vec<PieceJson>,
        h: Vec<PieceJson>,
    },
    Involution,
    StrongReversal {
        i1: Vec<PieceJson>,
        i2: Vec<PieceJson>,
    },
    RestrictedRotation {
        angle: Coords,
        left: Coords,
        right: Coords,
    },
    Periodic {
        order: String,
    },
    CornerTail {
        conjugator: Vec<PieceJson>,
        core: Vec<PieceJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorJson {
    pub value: Vec<PieceJson>,
    pub witness: WitnessJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub basis: BasisJson,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
    pub target: Vec<PieceJson>,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub ok: bool,
    pub failures: Vec<FailureJson>,
}

pub fn basis_to_json(basis: &Basis) -> BasisJson {
    BasisJson {
        generators: basis
            .generators()
            .iter()
            .map(|g| match g {
                Generator::Sqrt(r) => GeneratorJson::Sqrt {
                    sqrt: format_rat(r),
                },
                Generator::Opaque { low, high, digits } => GeneratorJson::Opaque {
                    interval: [format_rat(low), format_rat(high)],
                    oracle: digits.clone(),
                },
            })
            .collect(),
    }
}

pub fn basis_from_json(decl: &BasisJson, limits: SessionLimits) -> Result<BasisRef> {
    let gens = decl
        .generators
        .iter()
        .map(|g| {
            Ok(match g {
                GeneratorJson::Sqrt { sqrt } => Generator::Sqrt(parse_rat(sqrt)?),
                GeneratorJson::Opaque { interval, oracle } => Generator::Opaque {
                    low: parse_rat(&interval[0])?,
                    high: parse_rat(&interval[1])?,
                    digits: oracle.clone(),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Basis::new(gens, limits)
}

fn coords_of(v: &Real) -> Coords {
    v.coords().iter().map(format_rat).collect()
}

fn real_from_coords(basis: &BasisRef, coords: &Coords) -> Result<Real> {
    let parsed = coords.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
    Real::new(basis.clone(), parsed)
}

fn pieces_to_json(f: &Fiet) -> Vec<PieceJson> {
    f.pieces()
        .iter()
        .map(|p| PieceJson {
            left: coords_of(&p.left),
            right: coords_of(&p.right),
            sign: if p.flip { -1 } else { 1 },
            offset: coords_of(&p.offset),
        })
        .collect()
}

fn pieces_from_json(basis: &BasisRef, pieces: &[PieceJson]) -> Result<Fiet> {
    let raw = pieces
        .iter()
        .map(|p| {
            if p.sign != 1 && p.sign != -1 {
                return Err(Error::Parse(format!("sign must be 1 or -1, got {}", p.sign)));
            }
            Ok(Piece {
                left: real_from_coords(basis, &p.left)?,
                right: real_from_coords(basis, &p.right)?,
                flip: p.sign == -1,
                offset: real_from_coords(basis, &p.offset)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Fiet::canonicalize(basis, raw)
}

pub fn fiet_to_json(f: &Fiet) -> FietJson {
    FietJson {
        basis: basis_to_json(f.basis()),
        meta: None,
        pieces: pieces_to_json(f),
    }
}

/// Parses a map against an existing session basis; the file's declaration
/// must match the session's.
pub fn fiet_from_json_with_basis(json: &FietJson, basis: &BasisRef) -> Result<Fiet> {
    if json.basis != basis_to_json(basis) {
        return Err(Error::BasisMismatch);
    }
    pieces_from_json(basis, &json.pieces)
}

/// Parses a map, building the session basis from the file's declaration.
pub fn fiet_from_json(json: &FietJson, limits: SessionLimits) -> Result<(BasisRef, Fiet)> {
    let basis = basis_from_json(&json.basis, limits)?;
    let f = pieces_from_json(&basis, &json.pieces)?;
    Ok((basis, f))
}

fn kind_to_strings(kind: CertificateKind) -> (String, Option<u64>) {
    match kind {
        CertificateKind::CornerSupport { n } => ("corner".into(), Some(n)),
        k => (k.label().into(), None),
    }
}

fn kind_from_strings(kind: &str, n: Option<u64>) -> Result<CertificateKind> {
    Ok(match (kind, n) {
        ("rotations", None) => CertificateKind::Rotations,
        ("commutators", None) => CertificateKind::Commutators,
        ("strong-reversible", None) => CertificateKind::StronglyReversible,
        ("involutions", None) => CertificateKind::Involutions,
        ("corner", Some(n)) => CertificateKind::CornerSupport { n },
        _ => {
            return Err(Error::Parse(format!(
                "unknown certificate kind {kind:?} (n = {n:?})"
            )))
        }
    })
}

pub fn certificate_to_json(cert: &Certificate) -> CertificateJson {
    let (kind, n) = kind_to_strings(cert.kind);
    CertificateJson {
        basis: basis_to_json(cert.target.basis()),
        kind,
        n,
        meta: None,
        target: pieces_to_json(&cert.target),
        factors: cert
            .factors
            .iter()
            .map(|f| FactorJson {
                value: pieces_to_json(&f.value),
                witness: match &f.witness {
                    Witness::Commutator { a, h } => WitnessJson::Commutator {
                        a: pieces_to_json(a),
                        h: pieces_to_json(h),
                    },
                    Witness::Involution => WitnessJson::Involution,
                    Witness::StrongReversal { i1, i2 } => WitnessJson::StrongReversal {
                        i1: pieces_to_json(i1),
                        i2: pieces_to_json(i2),
                    },
                    Witness::RestrictedRotation { angle, left, right } => {
                        WitnessJson::RestrictedRotation {
                            angle: coords_of(angle),
                            left: coords_of(left),
                            right: coords_of(right),
                        }
                    }
                    Witness::Periodic { order } => WitnessJson::Periodic {
                        order: order.to_string(),
                    },
                    Witness::CornerTail { conjugator, core } => WitnessJson::CornerTail {
                        conjugator: pieces_to_json(conjugator),
                        core: pieces_to_json(core),
                    },
                },
            })
            .collect(),
    }
}

pub fn certificate_from_json(
    json: &CertificateJson,
    limits: SessionLimits,
) -> Result<(BasisRef, Certificate)> {
    let basis = basis_from_json(&json.basis, limits)?;
    let kind = kind_from_strings(&json.kind, json.n)?;
    let target = pieces_from_json(&basis, &json.target)?;
    let factors = json
        .factors
        .iter()
        .map(|f| {
            let value = pieces_from_json(&basis, &f.value)?;
            let witness = match &f.witness {
                WitnessJson::Commutator { a, h } => Witness::Commutator {
                    a: pieces_from_json(&basis, a)?,
                    h: pieces_from_json(&basis, h)?,
                },
                WitnessJson::Involution => Witness::Involution,
                WitnessJson::StrongReversal { i1, i2 } => Witness::StrongReversal {
                    i1: pieces_from_json(&basis, i1)?,
                    i2: pieces_from_json(&basis, i2)?,
                },
                WitnessJson::RestrictedRotation { angle, left, right } => {
                    Witness::RestrictedRotation {
                        angle: real_from_coords(&basis, angle)?,
                        left: real_from_coords(&basis, left)?,
                        right: real_from_coords(&basis, right)?,
                    }
                }
                WitnessJson::Periodic { order } => Witness::Periodic {
                    order: order
                        .parse::<BigUint>()
                        .map_err(|_| Error::Parse(format!("bad order {order:?}")))?,
                },
                WitnessJson::CornerTail { conjugator, core } => Witness::CornerTail {
                    conjugator: pieces_from_json(&basis, conjugator)?,
                    core: pieces_from_json(&basis, core)?,
                },
            };
            Ok(Factor { value, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        basis,
        Certificate {
            kind,
            target,
            factors,
        },
    ))
}

pub fn verdict_to_json(v: &Verdict) -> VerdictJson {
    VerdictJson {
        ok: v.ok(),
        failures: v
            .failures
            .iter()
            .map(|f| FailureJson {
                factor: f.factor,
                reason: f.reason.label().into(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::fiet::rotation;

    #[test]
    fn fiet_round_trips() {
        let basis = Basis::with_sqrt(rat(2, 1));
        let alpha = Real::generator(&basis, 1).unwrap().halve();
        let f = rotation(&basis, &alpha).unwrap();
        let json = fiet_to_json(&f);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: FietJson = serde_json::from_str(&text).unwrap();
        let (basis2, f2) = fiet_from_json(&parsed, SessionLimits::default()).unwrap();
        assert!(basis2.same_as(&basis));
        assert_eq!(pieces_to_json(&f2).len(), f.piece_count());
        assert_eq!(fiet_to_json(&f2).pieces.len(), json.pieces.len());
        let back = fiet_from_json_with_basis(&parsed, &basis).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn basis_mismatch_is_detected() {
        let sqrt2 = Basis::with_sqrt(rat(2, 1));
        let sqrt3 = Basis::with_sqrt(rat(3, 1));
        let f = Fiet::identity(&sqrt2);
        let json = fiet_to_json(&f);
        assert!(matches!(
            fiet_from_json_with_basis(&json, &sqrt3),
            Err(Error::BasisMismatch)
        ));
    }
}
