use super::haagerup::derive_q;
use super::perron::eval_exact_f64;
use super::{GraphError, HaagerupIndex};

/// The conjugate pair `a(x), b(x) = (2 - x +- sqrt(x^2 - 4x)) / 2`.
pub fn closed_form_roots(x: f64) -> Result<(f64, f64), GraphError> {
    let disc = x * x - 4.0 * x;
    if disc.is_nan() || disc <= 0.0 || !x.is_finite() {
        return Err(GraphError::DomainError(x));
    }
    let s = disc.sqrt();
    Ok(((2.0 - x + s) / 2.0, (2.0 - x - s) / 2.0))
}

fn q0(x: f64) -> f64 {
    x * x - 5.0 * x + 3.0
}

fn q1(x: f64) -> f64 {
    (((x - 8.0) * x + 17.0) * x - 5.0) * (x - 1.0)
}

/// Largest relative deviation of `A a^{2k} + B b^{2k}` from the exact `q_k`
/// over the given samples.
pub fn closedform_check(k: HaagerupIndex, samples: &[f64]) -> Result<f64, GraphError> {
    let q = derive_q(k)?;
    let mut worst = 0.0f64;
    for &x in samples {
        let (a, b) = closed_form_roots(x)?;
        let (a2, b2) = (a * a, b * b);
        let gap = a2 - b2;
        if gap == 0.0 {
            return Err(GraphError::DomainError(x));
        }
        let big_a = (q1(x) - q0(x) * b2) / gap;
        let big_b = (q0(x) * a2 - q1(x)) / gap;
        let n = k.0 as i32;
        let closed = big_a * a2.powi(n) + big_b * b2.powi(n);
        let exact = eval_exact_f64(&q, x);
        let dev = if exact == 0.0 {
            closed.abs()
        } else {
            ((closed - exact) / exact).abs()
        };
        worst = worst.max(dev);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates_multiply_to_one() {
        for x in [4.5, 5.0, 6.0, 10.0, -0.5, -3.0, 1e3] {
            let (a, b) = closed_form_roots(x).unwrap();
            assert!((a * b - 1.0).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn domain_is_enforced() {
        for x in [0.0, 2.0, 4.0, 3.9, f64::NAN] {
            assert!(matches!(
                closed_form_roots(x),
                Err(GraphError::DomainError(_))
            ));
        }
    }

    #[test]
    fn reproduces_exact_values() {
        assert!(closedform_check(HaagerupIndex(0), &[5.0, 7.5, -1.0]).unwrap() < 1e-9);
        assert!(closedform_check(HaagerupIndex(5), &[5.0, 6.0, 10.0]).unwrap() < 1e-6);
    }
}
