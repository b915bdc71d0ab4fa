//! Graph constructions: the Haagerup series, generic bipartite graphs,
//! exact characteristic polynomials of Gram matrices, and numerical
//! Perron–Frobenius data.

mod bipartite;
mod charpoly;
mod closed_form;
mod haagerup;
mod minpoly;
mod perron;

pub use bipartite::{gram, BipartiteGraphSpec, GramMatrix, VertexLabels};
pub use charpoly::charpoly_exact;
pub use closed_form::{closed_form_roots, closedform_check};
pub use haagerup::{build_a, derive_q, derive_r, halfstep_charpoly, p_recurrence, HaagerupIndex};
pub use minpoly::{strip_integer_roots, MinimalPolyCandidate};
pub use perron::{
    pf_estimate, pf_estimate_with, polish_root, relative_residual, PFEstimate, DEFAULT_MAX_ITERS,
    DEFAULT_TOL,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("malformed graph at {location}: {reason}")]
    Malformed { location: String, reason: String },
    #[error("graph is not connected")]
    Disconnected,
    #[error("power iteration did not converge within {0} iterations")]
    NotConverged(u64),
    #[error("sample point {0} is outside the closed-form domain")]
    DomainError(f64),
    #[error(transparent)]
    Poly(#[from] crate::polyring::PolyError),
}
