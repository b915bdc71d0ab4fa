//! Galois-group facts certified from irreducibility witnesses and
//! discriminants, and the cyclotomicity verdict they imply.

mod report;

pub use report::{
    obstruct, DiscCertificate, DiscRoute, Irreducibility, IrreducibilityStatus, ObstructOptions,
    ObstructionError, ObstructionInput, ObstructionReport, Source,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numthy::Squarefree;
use crate::polyring::IntPoly;

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &root * &root == *n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaloisGroup {
    Trivial,
    Z2,
    Z3,
    S3,
    /// Full symmetric group on `n >= 4` letters.
    Symmetric(usize),
    Unknown,
}

impl GaloisGroup {
    pub fn order(self) -> Option<BigUint> {
        match self {
            GaloisGroup::Trivial => Some(BigUint::one()),
            GaloisGroup::Z2 => Some(BigUint::from(2u32)),
            GaloisGroup::Z3 => Some(BigUint::from(3u32)),
            GaloisGroup::S3 => Some(BigUint::from(6u32)),
            GaloisGroup::Symmetric(n) => Some((1..=n).fold(BigUint::one(), |acc, i| acc * i)),
            GaloisGroup::Unknown => None,
        }
    }

    pub fn is_abelian(self) -> Option<bool> {
        match self {
            GaloisGroup::Trivial | GaloisGroup::Z2 | GaloisGroup::Z3 => Some(true),
            GaloisGroup::S3 | GaloisGroup::Symmetric(_) => Some(false),
            GaloisGroup::Unknown => None,
        }
    }
}

impl fmt::Display for GaloisGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisGroup::Trivial => f.write_str("trivial"),
            GaloisGroup::Z2 => f.write_str("Z2"),
            GaloisGroup::Z3 => f.write_str("Z3"),
            GaloisGroup::S3 => f.write_str("S3"),
            GaloisGroup::Symmetric(n) => write!(f, "S{n}"),
            GaloisGroup::Unknown => f.write_str("unknown"),
        }
    }
}

impl FromStr for GaloisGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(GaloisGroup::Trivial),
            "Z2" => Ok(GaloisGroup::Z2),
            "Z3" => Ok(GaloisGroup::Z3),
            "S3" => Ok(GaloisGroup::S3),
            "unknown" => Ok(GaloisGroup::Unknown),
            other => other
                .strip_prefix('S')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 4)
                .map(GaloisGroup::Symmetric)
                .ok_or_else(|| format!("unrecognised group {other:?}")),
        }
    }
}

impl Serialize for GaloisGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaloisGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaloisMethod {
    /// Linear minimal polynomial, rational eigenvalue.
    #[serde(rename = "degree-1")]
    Degree1,
    #[serde(rename = "degree-2")]
    Degree2,
    DiscriminantSquare,
    SquareFreeDiscriminant,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisConclusion {
    pub group: GaloisGroup,
    /// `None` when unknown.
    pub abelian: Option<bool>,
    pub method: GaloisMethod,
}

impl GaloisConclusion {
    pub const UNKNOWN: GaloisConclusion = GaloisConclusion {
        group: GaloisGroup::Unknown,
        abelian: None,
        method: GaloisMethod::None,
    };

    fn known(group: GaloisGroup, method: GaloisMethod) -> Self {
        GaloisConclusion {
            group,
            abelian: group.is_abelian(),
            method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("a Galois group claim for degree {0} needs certified irreducibility")]
    IrreducibilityRequired(usize),
    #[error("polynomial must be monic of degree at least 1")]
    BadPolynomial,
}

/// Decision tree: linear, quadratic, cubic by discriminant, then the
/// square-free discriminant criterion for the full symmetric group.
pub fn classify_galois(
    r: &IntPoly,
    irreducible: bool,
    disc: &BigInt,
    squarefree: Squarefree,
) -> Result<GaloisConclusion, GaloisError> {
    let deg = match r.degree() {
        Some(d) if d >= 1 && r.is_monic() => d,
        _ => return Err(GaloisError::BadPolynomial),
    };
    if deg == 1 {
        return Ok(GaloisConclusion::known(
            GaloisGroup::Trivial,
            GaloisMethod::Degree1,
        ));
    }
    if !irreducible {
        return Err(GaloisError::IrreducibilityRequired(deg));
    }
    let conclusion = match deg {
        2 => GaloisConclusion::known(GaloisGroup::Z2, GaloisMethod::Degree2),
        3 if is_perfect_square(disc) => {
            GaloisConclusion::known(GaloisGroup::Z3, GaloisMethod::DiscriminantSquare)
        }
        3 => GaloisConclusion::known(GaloisGroup::S3, GaloisMethod::DiscriminantSquare),
        _ if squarefree == Squarefree::Yes => GaloisConclusion::known(
            GaloisGroup::Symmetric(deg),
            GaloisMethod::SquareFreeDiscriminant,
        ),
        _ => GaloisConclusion::UNKNOWN,
    };
    if let Some(order) = conclusion.group.order() {
        // a transitive group on deg letters has order divisible by deg
        assert!(
            (order % deg).is_zero(),
            "group order not divisible by degree {deg}"
        );
    }
    Ok(conclusion)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cyclotomic {
    Yes,
    No,
    Unknown,
}

pub fn cyclotomic_verdict(g: &GaloisConclusion) -> Cyclotomic {
    match g.abelian {
        Some(true) => Cyclotomic::Yes,
        Some(false) => Cyclotomic::No,
        None => Cyclotomic::Unknown,
    }
}

/// `Possible` only means the obstruction did not fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    RuledOut,
    Possible,
    Inconclusive,
}

impl From<Cyclotomic> for Verdict {
    fn from(c: Cyclotomic) -> Self {
        match c {
            Cyclotomic::No => Verdict::RuledOut,
            Cyclotomic::Yes => Verdict::Possible,
            Cyclotomic::Unknown => Verdict::Inconclusive,
        }
    }
}
