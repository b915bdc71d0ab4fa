use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntPoly, PolyError};

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrixZ {
    n: usize,
    entries: Vec<BigInt>,
}

impl SquareMatrixZ {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, PolyError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(PolyError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            entries.extend(row);
        }
        Ok(SquareMatrixZ { n, entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, PolyError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        SquareMatrixZ {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[_]>::to_vec)
            .collect()
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading_minor(&self, k: usize) -> SquareMatrixZ {
        assert!(k <= self.n, "minor size {k} exceeds dimension {}", self.n);
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// `t*I - self`
    pub fn shifted_negation(&self, t: &BigInt) -> SquareMatrixZ {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = -self.get(i, j) + if i == j { t.clone() } else { BigInt::zero() };
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n): n shifted rows of
/// `p`'s coefficients followed by m shifted rows of `q`'s, leading
/// coefficients first. Dimension `m + n`.
pub fn sylvester_matrix(p: &IntPoly, q: &IntPoly) -> Result<SquareMatrixZ, PolyError> {
    let dp = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let dq = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    let size = dp + dq;
    let mut m = SquareMatrixZ::zeros(size);
    let p_high: Vec<&BigInt> = p.coeffs().iter().rev().collect();
    let q_high: Vec<&BigInt> = q.coeffs().iter().rev().collect();
    for row in 0..dq {
        for (j, c) in p_high.iter().enumerate() {
            m.set(row, row + j, (*c).clone());
        }
    }
    for row in 0..dp {
        for (j, c) in q_high.iter().enumerate() {
            m.set(dq + row, row + j, (*c).clone());
        }
    }
    Ok(m)
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// After step `k` every entry of the trailing block is a `(k+1) x (k+1)`
/// minor of the input, so the division by the previous pivot is exact.
pub fn det_fraction_free(m: &SquareMatrixZ) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let num = &row[j] * pivot - &lead * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `Res(p, q) = det sylvester_matrix(p, q)`.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt, PolyError> {
    Ok(det_fraction_free(&sylvester_matrix(p, q)?))
}

/// Signed discriminant of a monic polynomial of degree n:
/// `D = (-1)^(n(n-1)/2) Res(p, p')`.
pub fn discriminant(p: &IntPoly) -> Result<BigInt, PolyError> {
    let n = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    if !p.is_monic() {
        return Err(PolyError::NotMonic(p.leading().unwrap().to_string()));
    }
    let res = resultant(p, &p.derivative())?;
    if res.is_zero() {
        return Err(PolyError::RepeatedRoot);
    }
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    })
}
