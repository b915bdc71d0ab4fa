use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::polyring::SquareMatrixZ;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLabels {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
}

/// Bipartite multigraph given by its even-by-odd adjacency matrix.
///
/// Entry `(i, j)` counts the edges between even vertex `i` and odd vertex `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraphSpec {
    pub rows: usize,
    pub cols: usize,
    pub adjacency: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<VertexLabels>,
}

impl BipartiteGraphSpec {
    /// Validated construction.
    pub fn new(adjacency: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        let rows = adjacency.len();
        let cols = adjacency.first().map_or(0, Vec::len);
        let spec = BipartiteGraphSpec {
            rows,
            cols,
            adjacency,
            labels: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let spec: BipartiteGraphSpec =
            serde_json::from_str(text).map_err(|e| GraphError::Malformed {
                location: format!("line {} column {}", e.line(), e.column()),
                reason: e.to_string(),
            })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec serializes")
    }

    /// Shape, sign and connectivity checks.
    pub fn validate(&self) -> Result<(), GraphError> {
        let malformed = |location: String, reason: &str| GraphError::Malformed {
            location,
            reason: reason.to_string(),
        };
        if self.rows == 0 || self.cols == 0 {
            return Err(malformed(
                "rows/cols".into(),
                "graph needs at least one vertex of each parity",
            ));
        }
        if self.adjacency.len() != self.rows {
            return Err(malformed(
                "adjacency".into(),
                &format!(
                    "expected {} rows, found {}",
                    self.rows,
                    self.adjacency.len()
                ),
            ));
        }
        for (i, row) in self.adjacency.iter().enumerate() {
            if row.len() != self.cols {
                return Err(malformed(
                    format!("adjacency[{i}]"),
                    &format!("expected {} entries, found {}", self.cols, row.len()),
                ));
            }
            if let Some(j) = row.iter().position(|&v| v < 0) {
                return Err(malformed(
                    format!("adjacency[{i}][{j}]"),
                    "edge counts must be non-negative",
                ));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.rows.len() != self.rows || labels.cols.len() != self.cols {
                return Err(malformed(
                    "labels".into(),
                    "label counts must match rows and cols",
                ));
            }
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }

    /// Breadth-first search over rows `0..rows` and columns `rows..rows+cols`.
    pub fn is_connected(&self) -> bool {
        let total = self.rows + self.cols;
        if total == 0 {
            return false;
        }
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            let neighbours: Vec<usize> = if v < self.rows {
                (0..self.cols)
                    .filter(|&j| self.adjacency[v][j] > 0)
                    .map(|j| self.rows + j)
                    .collect()
            } else {
                let j = v - self.rows;
                (0..self.rows)
                    .filter(|&i| self.adjacency[i][j] > 0)
                    .collect()
            };
            for u in neighbours {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn edge_count(&self) -> i64 {
        self.adjacency.iter().flatten().sum()
    }

    pub fn column_degrees(&self) -> Vec<i64> {
        (0..self.cols)
            .map(|j| self.adjacency.iter().map(|r| r[j]).sum())
            .collect()
    }
}

/// `A^T A` for an adjacency matrix `A`: odd-to-odd two-step walk counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    matrix: SquareMatrixZ,
}

impl GramMatrix {
    /// Wrap a symmetric non-negative matrix; `None` otherwise.
    pub fn from_matrix(matrix: SquareMatrixZ) -> Option<Self> {
        use num_traits::Signed;
        let g = GramMatrix { matrix };
        let n = g.dim();
        let nonneg = (0..n).all(|i| (0..n).all(|j| !g.matrix.get(i, j).is_negative()));
        (nonneg && g.is_symmetric()).then_some(g)
    }

    pub fn matrix(&self) -> &SquareMatrixZ {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        self.matrix
            .rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.to_f64().expect("entry fits f64"))
                    .collect()
            })
            .collect()
    }

    /// Largest row sum, an upper bound on every eigenvalue of a non-negative matrix.
    pub fn max_row_sum(&self) -> BigInt {
        self.matrix
            .rows()
            .into_iter()
            .map(|r| r.into_iter().sum::<BigInt>())
            .max()
            .unwrap_or_default()
    }

    pub fn leading_minor(&self, k: usize) -> GramMatrix {
        GramMatrix {
            matrix: self.matrix.leading_minor(k),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.matrix.get(i, j) == self.matrix.get(j, i)))
    }
}

pub fn gram(g: &BipartiteGraphSpec) -> GramMatrix {
    let mut m = SquareMatrixZ::zeros(g.cols);
    for i in 0..g.cols {
        for j in 0..g.cols {
            let v: i64 = g.adjacency.iter().map(|row| row[i] * row[j]).sum();
            m.set(i, j, BigInt::from(v));
        }
    }
    GramMatrix { matrix: m }
}
