//! Integer primality and factorization under explicit effort budgets,
//! and factorization of polynomials over prime fields.
//!
//! These are the certificates behind every square-freeness and
//! irreducibility claim made downstream.

mod ecm;
mod factor;
mod modpoly;
mod primality;
mod rho;

pub use factor::{
    certificate_from_claims, digit_count, factor_integer, is_squarefree, verify_factor_table,
    Certainty, FactorBudget, FactorizationCertificate, PrimeFactor, Squarefree, TableCheck,
};
pub use modpoly::{
    factor_product, is_irreducible, modpoly_factor, modpoly_factor_seeded,
    smallest_irreducibility_witness, ModPoly,
};
pub use primality::{
    is_prime, is_prime_u64, is_prime_with, primes_up_to, Primality, MILLER_RABIN_ROUNDS,
};

use thiserror::Error;

/// Seed for every randomized routine unless the caller passes one.
pub const DEFAULT_SEED: u64 = 0x5EED_0FC0_FFEE;

/// Default upper bound for the irreducibility witness search.
pub const DEFAULT_WITNESS_BOUND: u64 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumthyError {
    #[error("expected a positive integer, got {0}")]
    NonPositive(String),
    #[error("no irreducibility witness among primes up to {0}")]
    NotFound(u64),
    #[error("polynomial must be monic: {0}")]
    NotMonic(String),
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
}
