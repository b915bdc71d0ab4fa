//! Exact dense univariate polynomials over the integers.
//!
//! Everything downstream (characteristic polynomials, resultants,
//! discriminants) lives in `Z[x]`. Coefficients are arbitrary-precision
//! `BigInt`s and no operation in this module touches floating point.

mod matrix;
mod poly;

pub use matrix::{det_fraction_free, discriminant, resultant, sylvester_matrix, SquareMatrixZ};
pub use poly::IntPoly;

use thiserror::Error;

/// Arbitrary-precision signed integer used for every exact value.
pub type BigIntVal = num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exact division failed: {dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be monic, leading coefficient is {0}")]
    NotMonic(String),
    #[error("polynomial has a repeated root (Res(p, p') = 0)")]
    RepeatedRoot,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("invalid decimal integer {0:?}")]
    BadInteger(String),
}

/// Serde adapter writing integers as decimal strings, so JSON never loses precision.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(D::Error::custom)
    }

    /// Strict decimal parse: optional leading '-', then digits only.
    pub fn parse(text: &str) -> Result<BigInt, super::PolyError> {
        let digits = text.strip_prefix('-').unwrap_or(text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(super::PolyError::BadInteger(text.to_string()));
        }
        text.parse::<BigInt>()
            .map_err(|_| super::PolyError::BadInteger(text.to_string()))
    }

    /// Floats as their shortest round-tripping decimal string.
    pub mod float {
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&value.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
            let text = String::deserialize(d)?;
            text.parse::<f64>().map_err(D::Error::custom)
        }
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_str_radix(10))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| super::parse(t).map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::decimal;

    #[test]
    fn decimal_parse_is_strict() {
        assert_eq!(decimal::parse("-169").unwrap(), (-169).into());
        assert_eq!(decimal::parse("0").unwrap(), 0.into());
        assert!(decimal::parse("+5").is_err());
        assert!(decimal::parse("").is_err());
        assert!(decimal::parse("1e3").is_err());
        assert!(decimal::parse("-").is_err());
    }

    #[test]
    fn negative_zero_is_canonical() {
        let z = decimal::parse("-0").unwrap();
        assert_eq!(z.to_str_radix(10), "0");
    }
}
