use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::GramMatrix;
use crate::polyring::{det_fraction_free, IntPoly, SquareMatrixZ};

/// `det(xI - M)` by exact interpolation at `x = 0..=n`.
///
/// The values are converted to Newton form with forward differences; the
/// `j`-th difference must be divisible by `j!` and the result must be monic
/// of degree `n`, otherwise the routine panics (a kernel bug, not bad input).
pub fn charpoly_exact(m: &GramMatrix) -> IntPoly {
    charpoly_of(m.matrix())
}

pub(crate) fn charpoly_of(m: &SquareMatrixZ) -> IntPoly {
    let n = m.dim();
    let mut diffs: Vec<BigInt> = (0..=n)
        .map(|t| det_fraction_free(&m.shifted_negation(&BigInt::from(t))))
        .collect();
    // after pass j, diffs[j] holds the j-th forward difference at 0
    for j in 1..=n {
        for i in (j..=n).rev() {
            let d = &diffs[i] - &diffs[i - 1];
            diffs[i] = d;
        }
    }
    let mut result = IntPoly::zero();
    let mut falling = IntPoly::one();
    let mut factorial = BigInt::one();
    for (j, delta) in diffs.iter().enumerate() {
        if j > 0 {
            factorial *= j;
            falling = &falling * &IntPoly::linear_root(&BigInt::from(j - 1));
        }
        let (c, rem) = delta.div_rem(&factorial);
        assert!(
            rem.is_zero(),
            "interpolated coefficient {delta}/{factorial} is not integral"
        );
        result = &result + &falling.scale(&c);
    }
    assert_eq!(
        result.degree().unwrap_or(0),
        n,
        "characteristic polynomial has wrong degree"
    );
    assert!(
        n == 0 || result.is_monic(),
        "characteristic polynomial is not monic"
    );
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_gives_power_of_x() {
        assert_eq!(
            charpoly_of(&SquareMatrixZ::zeros(2)),
            IntPoly::from_i64s(&[0, 0, 1])
        );
    }

    #[test]
    fn two_by_two() {
        let m = SquareMatrixZ::from_i64_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        // x^2 - 5x - 2
        assert_eq!(charpoly_of(&m), IntPoly::from_i64s(&[-2, -5, 1]));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(charpoly_of(&SquareMatrixZ::zeros(0)), IntPoly::one());
    }
}
