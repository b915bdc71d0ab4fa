use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::bipartite::{gram, BipartiteGraphSpec, GramMatrix};
use super::charpoly::charpoly_of;
use crate::polyring::{IntPoly, PolyError};

/// Series parameter `k` of the Haagerup candidate graph with `10 + 4k` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HaagerupIndex(pub u32);

impl HaagerupIndex {
    pub fn k(self) -> u32 {
        self.0
    }

    /// The alternative labelling `n = 4k + 3` under which the series is often quoted.
    pub fn n_paper(self) -> u64 {
        4 * u64::from(self.0) + 3
    }

    pub fn vertex_count(self) -> usize {
        10 + 4 * self.0 as usize
    }

    pub fn rows(self) -> usize {
        6 + 2 * self.0 as usize
    }

    pub fn cols(self) -> usize {
        4 + 2 * self.0 as usize
    }

    /// Whether `(x - 1)` divides `q_k`.
    pub fn has_unit_root(self) -> bool {
        self.0 % 3 == 1
    }

    /// Degree of `r_k`.
    pub fn r_degree(self) -> usize {
        2 + 2 * self.0 as usize - usize::from(self.has_unit_root())
    }
}

impl fmt::Display for HaagerupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.0)
    }
}

/// Adjacency matrix `A_k` of the series graph, even vertices as rows.
pub fn build_a(k: HaagerupIndex) -> BipartiteGraphSpec {
    let (rows, cols) = (k.rows(), k.cols());
    let mut a = vec![vec![0i64; cols]; rows];
    // rows and columns are 1-based in the comments below
    a[0][0] = 1; // r1 = e1
    a[1][0] = 1; // r2 = e1 + e3
    a[1][2] = 1;
    a[2][1] = 1; // r3 = e2
    a[3][1] = 1; // r4 = e2 + e3
    a[3][2] = 1;
    for j in 5..=(5 + 2 * k.0 as usize) {
        a[j - 1][j - 3] = 1; // r_j = e_{j-2} + e_{j-1}
        a[j - 1][j - 2] = 1;
    }
    a[rows - 1][cols - 1] = 1;
    BipartiteGraphSpec::new(a).expect("series graph is connected")
}

/// `p_k` from the two-step recurrence `p_k = (x^2 - 4x + 2) p_{k-1} - p_{k-2}`.
pub fn p_recurrence(k: HaagerupIndex) -> IntPoly {
    recurrence_sequence(k.0 as usize).pop().expect("non-empty")
}

fn recurrence_sequence(k: usize) -> Vec<IntPoly> {
    let x_minus_2 = IntPoly::from_i64s(&[-2, 1]);
    let sq = &x_minus_2 * &x_minus_2;
    let p0 = &IntPoly::from_i64s(&[3, -5, 1]) * &sq;
    let mut seq = vec![p0];
    if k >= 1 {
        let p1 = &(&IntPoly::from_i64s(&[-5, 17, -8, 1]) * &sq) * &IntPoly::from_i64s(&[-1, 1]);
        seq.push(p1);
    }
    let step = IntPoly::from_i64s(&[2, -4, 1]);
    while seq.len() <= k {
        let n = seq.len();
        let next = &(&step * &seq[n - 1]) - &seq[n - 2];
        seq.push(next);
    }
    seq
}

/// `det(M - xI)` for the leading `(3+2k)`-square block `M` of `N_k`.
///
/// The sign convention is that of `det(M - xI)`, so for this odd dimension
/// the leading coefficient is `-1`; it then satisfies
/// `p_k = (2 - x) * halfstep(k) - p_{k-1}` exactly.
pub fn halfstep_charpoly(k: HaagerupIndex) -> IntPoly {
    assert!(k.0 >= 1, "half step is defined for k >= 1");
    let n = 3 + 2 * k.0 as usize;
    let block: GramMatrix = gram(&build_a(k)).leading_minor(n);
    let monic = charpoly_of(block.matrix());
    -monic
}

const X_MINUS_2_SQ: [i64; 3] = [4, -4, 1];

/// `q_k = p_k / (x - 2)^2`.
pub fn derive_q(k: HaagerupIndex) -> Result<IntPoly, PolyError> {
    p_recurrence(k).div_exact(&IntPoly::from_i64s(&X_MINUS_2_SQ))
}

/// `r_k`: `q_k` with the factor `(x - 1)` removed when `k = 1 mod 3`.
pub fn derive_r(k: HaagerupIndex) -> Result<IntPoly, PolyError> {
    let q = derive_q(k)?;
    if k.has_unit_root() {
        q.div_exact(&IntPoly::linear_root(&BigInt::from(1)))
    } else {
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::charpoly_exact;

    fn k(v: u32) -> HaagerupIndex {
        HaagerupIndex(v)
    }

    #[test]
    fn shapes_and_degrees() {
        let a0 = build_a(k(0));
        assert_eq!((a0.rows, a0.cols), (6, 4));
        assert_eq!(a0.column_degrees(), vec![2, 2, 3, 2]);
        let a1 = build_a(k(1));
        assert_eq!((a1.rows, a1.cols), (8, 6));
        assert_eq!(a1.edge_count(), 13);
        for kk in 0..6 {
            let a = build_a(k(kk));
            assert!(a
                .adjacency
                .iter()
                .all(|r| matches!(r.iter().sum::<i64>(), 1 | 2)));
            assert_eq!(a.rows + a.cols, k(kk).vertex_count());
        }
        assert_eq!(k(3).n_paper(), 15);
    }

    #[test]
    fn gram_of_base_graph() {
        let n0 = gram(&build_a(k(0)));
        let expected = [[2, 0, 1, 0], [0, 2, 1, 0], [1, 1, 3, 1], [0, 0, 1, 2]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(n0.matrix().get(i, j), &BigInt::from(v));
            }
        }
        for kk in 0..=10 {
            let n = gram(&build_a(k(kk)));
            assert!(n.is_symmetric());
            let block = [[2, 0, 1], [0, 2, 1], [1, 1, 3]];
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(n.matrix().get(i, j), &BigInt::from(v));
                }
            }
        }
    }

    #[test]
    fn recurrence_matches_direct_charpoly() {
        assert_eq!(
            p_recurrence(k(0)),
            IntPoly::from_i64s(&[12, -32, 27, -9, 1])
        );
        for kk in 0..=5 {
            assert_eq!(
                p_recurrence(k(kk)),
                charpoly_exact(&gram(&build_a(k(kk)))),
                "k={kk}"
            );
        }
    }

    #[test]
    fn halfstep_identity() {
        assert_eq!(halfstep_charpoly(k(1)).degree(), Some(5));
        assert_eq!(halfstep_charpoly(k(2)).degree(), Some(7));
        let two_minus_x = IntPoly::from_i64s(&[2, -1]);
        for kk in 1..=4 {
            let lhs = p_recurrence(k(kk));
            let rhs = &(&two_minus_x * &halfstep_charpoly(k(kk))) - &p_recurrence(k(kk - 1));
            assert_eq!(lhs, rhs, "k={kk}");
        }
    }

    #[test]
    fn published_r_polynomials() {
        assert_eq!(derive_q(k(0)).unwrap(), IntPoly::from_i64s(&[3, -5, 1]));
        assert_eq!(
            derive_r(k(1)).unwrap(),
            IntPoly::from_i64s(&[-5, 17, -8, 1])
        );
        assert_eq!(
            derive_r(k(2)).unwrap(),
            IntPoly::from_i64s(&[7, -59, 142, -140, 63, -13, 1])
        );
        assert_eq!(
            derive_r(k(3)).unwrap(),
            IntPoly::from_i64s(&[9, -124, 502, -898, 827, -418, 117, -17, 1])
        );
        assert_eq!(derive_r(k(4)).unwrap().degree(), Some(9));
        assert_eq!(derive_r(k(5)).unwrap().degree(), Some(12));
    }

    #[test]
    fn unit_root_law_and_sign_cycle() {
        use num_traits::Zero;
        let one = BigInt::from(1);
        // q_k(1) for k = 0, 1, 2 mod 3
        let cycle = [-1, 0, 1];
        for kk in 0..=20u32 {
            let at_one = derive_q(k(kk)).unwrap().eval(&one);
            assert_eq!(at_one.is_zero(), k(kk).has_unit_root(), "k={kk}");
            assert_eq!(at_one, BigInt::from(cycle[(kk % 3) as usize]), "k={kk}");
            assert_eq!(derive_r(k(kk)).unwrap().degree(), Some(k(kk).r_degree()));
        }
    }
}
