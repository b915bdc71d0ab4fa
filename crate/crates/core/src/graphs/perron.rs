use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GramMatrix, GraphError};
use crate::polyring::IntPoly;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PFEstimate {
    /// Dominant eigenvalue of the Gram matrix, the squared graph eigenvalue.
    #[serde(with = "crate::polyring::decimal::float")]
    pub d: f64,
    #[serde(with = "crate::polyring::decimal::float")]
    pub beta: f64,
    #[serde(with = "crate::polyring::decimal::float")]
    pub residual: f64,
    pub iterations: u64,
}

/// Power iteration from the all-ones vector with the generic residual `||Mv - dv||_inf`.
pub fn pf_estimate(m: &GramMatrix, tol: f64, max_iters: u64) -> Result<PFEstimate, GraphError> {
    pf_estimate_with(m, tol, max_iters, None)
}

/// Power iteration; with `poly` given, `d` is refined to the nearest root
/// of `poly` representable in `f64` and the residual becomes
/// `|poly(d)| / ||poly||_1`, evaluated exactly.
pub fn pf_estimate_with(
    m: &GramMatrix,
    tol: f64,
    max_iters: u64,
    poly: Option<&IntPoly>,
) -> Result<PFEstimate, GraphError> {
    let rows = m.to_f64_rows();
    let n = rows.len();
    let apply = |v: &[f64]| -> Vec<f64> {
        rows.iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    };
    let mut v = vec![1.0; n];
    for it in 1..=max_iters {
        let w = apply(&v);
        let vw: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let vv: f64 = v.iter().map(|a| a * a).sum();
        let d = vw / vv;
        let scale = w.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if d.is_nan() || d <= 0.0 || scale == 0.0 {
            return Err(GraphError::NotConverged(it));
        }
        let vector_residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - d * a).abs())
            .fold(0.0f64, f64::max)
            / v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        v = w.into_iter().map(|x| x / scale).collect();
        if vector_residual < tol {
            let (d, residual) = match poly {
                Some(p) => {
                    let d = polish_root(p, d);
                    (d, relative_residual(p, d))
                }
                None => (d, vector_residual),
            };
            if residual >= tol {
                return Err(GraphError::NotConverged(it));
            }
            return Ok(PFEstimate {
                d,
                beta: d.sqrt(),
                residual,
                iterations: it,
            });
        }
    }
    Err(GraphError::NotConverged(max_iters))
}

/// Exact `x = num / 2^shift` decomposition of a finite float.
fn dyadic(x: f64) -> (BigInt, u32) {
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let mut num = BigInt::from(mantissa);
    if negative {
        num = -num;
    }
    if e >= 0 {
        (num << e as usize, 0)
    } else {
        (num, (-e) as u32)
    }
}

/// `poly(x) * 2^(shift * deg)` as an exact integer.
fn scaled_value(poly: &IntPoly, x: f64) -> (BigInt, u64) {
    let (num, shift) = dyadic(x);
    let den = BigInt::from(1) << shift as usize;
    let deg = poly.degree().unwrap_or(0) as u64;
    (poly.eval_homogeneous(&num, &den), u64::from(shift) * deg)
}

/// `|poly(x)| / ||poly||_1` computed from the exact rational value.
pub fn relative_residual(poly: &IntPoly, x: f64) -> f64 {
    let (value, shift) = scaled_value(poly, x);
    let norm = poly.norm_l1();
    if value.is_zero() || norm.is_zero() {
        return 0.0;
    }
    let den: BigUint = norm.magnitude() << shift as usize;
    ratio_to_f64(value.magnitude(), &den)
}

/// `poly(x)` rounded to `f64` from its exact rational value.
pub(crate) fn eval_exact_f64(poly: &IntPoly, x: f64) -> f64 {
    let (value, shift) = scaled_value(poly, x);
    if value.is_zero() {
        return 0.0;
    }
    let den = BigUint::from(1u32) << shift as usize;
    let mag = ratio_to_f64(value.magnitude(), &den);
    if value.is_negative() {
        -mag
    } else {
        mag
    }
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    let s = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if s >= 0 {
        (num << s as usize) / den
    } else {
        num / (den << (-s) as usize)
    };
    let mantissa = q.to_f64().unwrap_or(f64::INFINITY);
    let s = s.clamp(-2000, 2000) as i32;
    // split the power to avoid intermediate overflow
    mantissa * 2f64.powi(-s / 2) * 2f64.powi(-(s - s / 2))
}

fn exact_sign(poly: &IntPoly, x: f64) -> i8 {
    let (value, _) = scaled_value(poly, x);
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

/// Refine an approximate simple root of `poly` by bisection on adjacent
/// floats with exact sign evaluation. Returns `x0` unchanged if no sign
/// change is found nearby.
pub fn polish_root(poly: &IntPoly, x0: f64) -> f64 {
    let s0 = exact_sign(poly, x0);
    if s0 == 0 {
        return x0;
    }
    let mut delta = x0.abs().max(1.0) * f64::EPSILON;
    let mut bracket = None;
    for _ in 0..60 {
        let (lo, hi) = (x0 - delta, x0 + delta);
        let (sl, sh) = (exact_sign(poly, lo), exact_sign(poly, hi));
        if sl == 0 {
            return lo;
        }
        if sh == 0 {
            return hi;
        }
        if sl != s0 {
            bracket = Some((lo, x0, sl));
            break;
        }
        if sh != s0 {
            bracket = Some((x0, hi, s0));
            break;
        }
        delta *= 4.0;
    }
    let Some((mut a, mut b, sa)) = bracket else {
        return x0;
    };
    loop {
        let mid = a + (b - a) / 2.0;
        if mid <= a || mid >= b {
            break;
        }
        let sm = exact_sign(poly, mid);
        if sm == 0 {
            return mid;
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    if relative_residual(poly, a) <= relative_residual(poly, b) {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::SquareMatrixZ;

    #[test]
    fn one_by_one() {
        let m = GramMatrix::from_matrix(SquareMatrixZ::from_i64_rows(&[vec![4]]).unwrap()).unwrap();
        let est = pf_estimate(&m, DEFAULT_TOL, DEFAULT_MAX_ITERS).unwrap();
        assert_eq!(est.d, 4.0);
        assert_eq!(est.beta, 2.0);
    }

    #[test]
    fn polished_quadratic_root() {
        // x^2 - 2 has root sqrt(2)
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        let r = polish_root(&p, 1.41);
        assert_eq!(r, std::f64::consts::SQRT_2);
        assert!(relative_residual(&p, r) < 1e-15);
    }

    #[test]
    fn dyadic_is_exact() {
        assert_eq!(dyadic(0.75), (BigInt::from(3u64 << 51), 53));
        assert_eq!(dyadic(-2.0), (BigInt::from(-(1i64 << 52)), 51));
        assert_eq!(
            ratio_to_f64(&BigUint::from(1u32), &BigUint::from(3u32)),
            1.0 / 3.0
        );
    }

    #[test]
    fn reports_non_convergence() {
        let m = GramMatrix::from_matrix(
            SquareMatrixZ::from_i64_rows(&[vec![2, 1], vec![1, 2]]).unwrap(),
        )
        .unwrap();
        // all-ones is already the eigenvector here, so force failure with a zero budget
        assert_eq!(
            pf_estimate(&m, DEFAULT_TOL, 0),
            Err(GraphError::NotConverged(0))
        );
        assert_eq!(pf_estimate(&m, DEFAULT_TOL, 5).unwrap().d, 3.0);
    }
}
