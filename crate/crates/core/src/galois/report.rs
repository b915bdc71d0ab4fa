use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{classify_galois, cyclotomic_verdict, Cyclotomic, GaloisConclusion, Verdict};
use crate::graphs::{
    build_a, charpoly_exact, derive_r, gram, p_recurrence, pf_estimate, pf_estimate_with,
    BipartiteGraphSpec, GraphError, HaagerupIndex, MinimalPolyCandidate, PFEstimate,
    DEFAULT_MAX_ITERS, DEFAULT_TOL,
};
use crate::numthy::{
    certificate_from_claims, factor_integer, is_squarefree, smallest_irreducibility_witness,
    verify_factor_table, FactorBudget, FactorizationCertificate, NumthyError, PrimeFactor,
    Squarefree, TableCheck, DEFAULT_WITNESS_BOUND,
};
use crate::polyring::{decimal, discriminant, IntPoly, PolyError};

/// What a report is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    SeriesK(u32),
    File(String),
}

/// Pipeline input: a member of the series or an arbitrary graph with an id.
#[derive(Debug, Clone)]
pub enum ObstructionInput {
    Series(HaagerupIndex),
    Graph {
        id: String,
        spec: BipartiteGraphSpec,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IrreducibilityStatus {
    Certified,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub status: IrreducibilityStatus,
    pub witness_prime: Option<u64>,
    pub search_bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscRoute {
    Factored,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscCertificate {
    pub route: DiscRoute,
    /// Outcome of checking the supplied table, when one was supplied.
    pub table_check: Option<TableCheck>,
    #[serde(with = "decimal")]
    pub cofactor: BigInt,
    pub complete: bool,
    pub squarefree: Squarefree,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub source: Source,
    pub n_paper: Option<u64>,
    pub charpoly: IntPoly,
    pub squarefree_part: IntPoly,
    #[serde(with = "decimal::vec")]
    pub integer_roots: Vec<BigInt>,
    pub r_coeffs: IntPoly,
    pub degree: usize,
    pub irreducibility: Irreducibility,
    #[serde(with = "decimal")]
    pub disc: BigInt,
    /// Prime factorization of `|disc|` as far as it is known.
    pub disc_factors: Vec<PrimeFactor>,
    pub disc_cert: DiscCertificate,
    pub galois: GaloisConclusion,
    pub cyclotomic: Cyclotomic,
    pub verdict: Verdict,
    pub pf: Option<PFEstimate>,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone)]
pub struct ObstructOptions {
    pub witness_bound: u64,
    pub budget: FactorBudget,
    pub tol: f64,
    pub max_iters: u64,
    /// Claimed factorization of `|disc|`; used only if it verifies.
    pub table_claims: Option<Vec<(BigInt, u32)>>,
}

impl Default for ObstructOptions {
    fn default() -> Self {
        ObstructOptions {
            witness_bound: DEFAULT_WITNESS_BOUND,
            budget: FactorBudget::default(),
            tol: DEFAULT_TOL,
            max_iters: DEFAULT_MAX_ITERS,
            table_claims: None,
        }
    }
}

/// Failures that indicate a bug rather than an inconclusive input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Numthy(#[from] NumthyError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub fn obstruct(
    input: &ObstructionInput,
    options: &ObstructOptions,
) -> Result<ObstructionReport, ObstructionError> {
    let mut notes = Vec::new();
    let (source, n_paper, g, charpoly) = match input {
        ObstructionInput::Series(k) => {
            let g = gram(&build_a(*k));
            (Source::SeriesK(k.0), Some(k.n_paper()), g, p_recurrence(*k))
        }
        ObstructionInput::Graph { id, spec } => {
            let g = gram(spec);
            let p = charpoly_exact(&g);
            (Source::File(id.clone()), None, g, p)
        }
    };

    let rough = match pf_estimate(&g, options.tol, options.max_iters) {
        Ok(est) => est.d,
        Err(e) => {
            notes.push(format!("power iteration: {e}"));
            f64::NAN
        }
    };
    let extracted = MinimalPolyCandidate::extract(charpoly, &g.max_row_sum(), rough)?;
    if let ObstructionInput::Series(k) = input {
        let r = derive_r(*k)?;
        if r != extracted.candidate {
            return Err(ObstructionError::Internal(format!(
                "generic extraction {} disagrees with r_{} = {}",
                extracted.candidate, k.0, r
            )));
        }
    }
    let r = extracted.candidate.clone();
    let degree = r.degree().unwrap_or(0);

    let pf = match pf_estimate_with(&g, options.tol, options.max_iters, Some(&r)) {
        Ok(est) => Some(est),
        Err(e) => {
            if rough.is_finite() {
                notes.push(format!("polished estimate: {e}"));
            }
            None
        }
    };

    let irreducibility = match smallest_irreducibility_witness(&r, options.witness_bound) {
        Ok(p) => Irreducibility {
            status: IrreducibilityStatus::Certified,
            witness_prime: Some(p),
            search_bound: options.witness_bound,
        },
        Err(NumthyError::NotFound(bound)) => {
            notes.push(format!(
                "no prime up to {bound} certifies irreducibility; minimal polynomial not established"
            ));
            Irreducibility {
                status: IrreducibilityStatus::Unresolved,
                witness_prime: None,
                search_bound: bound,
            }
        }
        Err(e) => return Err(e.into()),
    };
    let certified = irreducibility.status == IrreducibilityStatus::Certified;

    let disc = discriminant(&r)?;
    let abs_disc = BigInt::from(disc.magnitude().clone());
    let (certificate, disc_cert_route, table_check) =
        disc_certificate(&abs_disc, options, &mut notes)?;
    let squarefree = is_squarefree(&certificate);
    if squarefree == Squarefree::Unknown {
        notes.push(format!(
            "discriminant cofactor {} left unfactored within the budget",
            certificate.cofactor
        ));
    }

    let galois =
        classify_galois(&r, certified, &disc, squarefree).unwrap_or(GaloisConclusion::UNKNOWN);
    let cyclotomic = cyclotomic_verdict(&galois);
    let verdict = Verdict::from(cyclotomic);

    Ok(ObstructionReport {
        source,
        n_paper,
        charpoly: extracted.charpoly,
        squarefree_part: extracted.squarefree_part,
        integer_roots: extracted.integer_roots,
        r_coeffs: r,
        degree,
        irreducibility,
        disc,
        disc_factors: certificate.factors.clone(),
        disc_cert: DiscCertificate {
            route: disc_cert_route,
            table_check,
            cofactor: certificate.cofactor.clone(),
            complete: certificate.complete,
            squarefree,
        },
        galois,
        cyclotomic,
        verdict,
        pf,
        notes,
    })
}

fn disc_certificate(
    abs_disc: &BigInt,
    options: &ObstructOptions,
    notes: &mut Vec<String>,
) -> Result<(FactorizationCertificate, DiscRoute, Option<TableCheck>), ObstructionError> {
    if let Some(claims) = &options.table_claims {
        let check = verify_factor_table(abs_disc, claims);
        if let Some(cert) = certificate_from_claims(abs_disc, claims) {
            return Ok((cert, DiscRoute::Table, Some(check)));
        }
        notes.push(format!(
            "table claims rejected ({check:?}); factoring instead"
        ));
        let cert = factor_integer(abs_disc, &options.budget)?;
        return Ok((cert, DiscRoute::Factored, Some(check)));
    }
    Ok((
        factor_integer(abs_disc, &options.budget)?,
        DiscRoute::Factored,
        None,
    ))
}
