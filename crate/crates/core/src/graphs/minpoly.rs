use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::polyring::{IntPoly, PolyError};

/// Split off the integer roots of a squarefree polynomial that lie in `0..=bound`.
///
/// Returns the roots found (ascending) and the remaining cofactor.
pub fn strip_integer_roots(f: &IntPoly, bound: &BigInt) -> (Vec<BigInt>, IntPoly) {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    let mut t = BigInt::zero();
    while &t <= bound && rest.degree().unwrap_or(0) > 0 {
        let c0 = rest.coeff(0);
        let candidate = if t.is_zero() {
            c0.is_zero()
        } else {
            c0.is_multiple_of(&t) && rest.eval(&t).is_zero()
        };
        if candidate {
            rest = rest
                .div_exact(&IntPoly::linear_root(&t))
                .expect("root gives an exact linear factor");
            roots.push(t.clone());
        }
        t += 1;
    }
    (roots, rest)
}

/// The polynomial that should be the minimal polynomial of the PF eigenvalue,
/// before any irreducibility certificate is attempted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPolyCandidate {
    pub charpoly: IntPoly,
    pub squarefree_part: IntPoly,
    #[serde(with = "crate::polyring::decimal::vec")]
    pub integer_roots: Vec<BigInt>,
    pub candidate: IntPoly,
}

impl MinimalPolyCandidate {
    /// `bound` must dominate every eigenvalue; `d` is the numerical PF eigenvalue.
    pub fn extract(charpoly: IntPoly, bound: &BigInt, d: f64) -> Result<Self, GraphError> {
        let squarefree_part = charpoly.squarefree_part()?;
        let (integer_roots, rest) = strip_integer_roots(&squarefree_part, bound);
        let near = integer_roots.iter().find(|c| {
            let c = c.to_f64().unwrap_or(f64::INFINITY);
            (d - c).abs() <= 1e-6 * c.max(1.0)
        });
        let candidate = match near {
            Some(c) => IntPoly::linear_root(c),
            None if rest.degree().unwrap_or(0) == 0 => {
                return Err(PolyError::ConstantPolynomial.into());
            }
            None => rest,
        };
        Ok(MinimalPolyCandidate {
            charpoly,
            squarefree_part,
            integer_roots,
            candidate,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_small_integer_roots() {
        // (x^2 - 4x + 1)(x - 3)(x - 2)(x - 1)
        let f = &(&(&IntPoly::from_i64s(&[1, -4, 1]) * &IntPoly::from_i64s(&[-3, 1]))
            * &IntPoly::from_i64s(&[-2, 1]))
            * &IntPoly::from_i64s(&[-1, 1]);
        let (roots, rest) = strip_integer_roots(&f, &BigInt::from(4));
        assert_eq!(roots, vec![1.into(), 2.into(), 3.into()]);
        assert_eq!(rest, IntPoly::from_i64s(&[1, -4, 1]));
    }

    #[test]
    fn integer_pf_eigenvalue_is_its_own_minimal_polynomial() {
        // x (x - 3), PF eigenvalue 3
        let f = IntPoly::from_i64s(&[0, -3, 1]);
        let m = MinimalPolyCandidate::extract(f, &BigInt::from(3), 3.0).unwrap();
        assert_eq!(m.candidate, IntPoly::from_i64s(&[-3, 1]));
        assert_eq!(m.integer_roots, vec![0.into(), 3.into()]);
    }
}
