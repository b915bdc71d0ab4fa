use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::primality::{is_prime_biguint, primes_up_to, Primality};
use super::{ecm, rho, NumthyError, DEFAULT_SEED};
use crate::polyring::decimal;

/// Effort limits for [`factor_integer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division by every prime up to this bound.
    pub trial_bound: u64,
    /// Pollard rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
    /// Elliptic curves tried per cofactor that survives rho.
    pub ecm_curves: u32,
    pub ecm_b1: u64,
    pub mr_rounds: u32,
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 26,
            ecm_curves: 300,
            ecm_b1: 50_000,
            mr_rounds: super::primality::MILLER_RABIN_ROUNDS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certainty {
    Proven,
    Probable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactor {
    #[serde(with = "decimal")]
    pub p: BigInt,
    pub e: u32,
    pub certainty: Certainty,
}

/// Prime factors found so far plus whatever could not be split.
///
/// `n = prod(p^e) * cofactor` always holds; `complete` iff `cofactor == 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    #[serde(with = "decimal")]
    pub n: BigInt,
    pub factors: Vec<PrimeFactor>,
    #[serde(with = "decimal")]
    pub cofactor: BigInt,
    pub complete: bool,
}

impl FactorizationCertificate {
    /// `prod(p^e) * cofactor`
    pub fn product(&self) -> BigInt {
        self.factors.iter().fold(self.cofactor.clone(), |acc, f| {
            acc * num_traits::pow(f.p.clone(), f.e as usize)
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.product() == self.n && self.complete == self.cofactor.is_one()
    }

    fn from_parts(n: BigInt, found: FoundPrimes, cofactor: BigUint) -> Self {
        let factors = found
            .into_iter()
            .map(|(p, (e, certainty))| PrimeFactor {
                p: BigInt::from(p),
                e,
                certainty,
            })
            .collect();
        let complete = cofactor.is_one();
        FactorizationCertificate {
            n,
            factors,
            cofactor: BigInt::from(cofactor),
            complete,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Squarefree {
    Yes,
    No,
    Unknown,
}

/// Factor `n >= 1` by trial division, Pollard rho (Brent) and then ECM
/// within `budget`. Composites that resist both are left in the cofactor.
pub fn factor_integer(
    n: &BigInt,
    budget: &FactorBudget,
) -> Result<FactorizationCertificate, NumthyError> {
    if n.sign() != Sign::Plus {
        return Err(NumthyError::NonPositive(n.to_string()));
    }
    let mut found: FoundPrimes = BTreeMap::new();

    let mut rest = n.magnitude().clone();
    for p in primes_up_to(budget.trial_bound) {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            add(&mut found, bp, e, Certainty::Proven);
        }
    }

    let bound = BigUint::from(budget.trial_bound);
    let no_small_factor_limit = &bound * &bound;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut cofactor = BigUint::one();
    let mut pending: Vec<(BigUint, u32)> = Vec::new();
    if !rest.is_one() {
        pending.push((rest, 1));
    }
    while let Some((m, mult)) = pending.pop() {
        // every prime factor of m exceeds the trial bound
        if m < no_small_factor_limit {
            add(&mut found, m, mult, Certainty::Proven);
            continue;
        }
        match is_prime_biguint(&m, budget.mr_rounds, budget.seed) {
            Primality::Proven => {
                add(&mut found, m, mult, Certainty::Proven);
                continue;
            }
            Primality::Probable => {
                add(&mut found, m, mult, Certainty::Probable);
                continue;
            }
            Primality::Composite => {}
        }
        let root = m.sqrt();
        if &root * &root == m {
            pending.push((root, mult * 2));
            continue;
        }
        // strip primes already known before spending rho effort
        let mut m = m;
        let known: Vec<(BigUint, Certainty)> =
            found.iter().map(|(p, (_, c))| (p.clone(), *c)).collect();
        for (p, c) in known {
            while (&m % &p).is_zero() {
                m /= &p;
                add(&mut found, p.clone(), mult, c);
            }
        }
        if m.is_one() {
            continue;
        }
        if m.is_even() {
            pending.push((BigUint::from(2u32), mult));
            pending.push((m >> 1u32, mult));
            continue;
        }
        if is_prime_biguint(&m, budget.mr_rounds, budget.seed).is_prime() {
            pending.push((m, mult));
            continue;
        }
        let split = rho::find_factor(&m, budget.rho_iterations, &mut rng)
            .or_else(|| ecm::find_factor(&m, budget.ecm_curves, budget.ecm_b1, &mut rng));
        match split {
            Some(d) => {
                let other = &m / &d;
                pending.push((d, mult));
                pending.push((other, mult));
            }
            None => cofactor *= num_traits::pow(m, mult as usize),
        }
    }
    Ok(FactorizationCertificate::from_parts(
        n.clone(),
        found,
        cofactor,
    ))
}

type FoundPrimes = BTreeMap<BigUint, (u32, Certainty)>;

fn add(found: &mut FoundPrimes, p: BigUint, e: u32, c: Certainty) {
    let entry = found.entry(p).or_insert((0, c));
    entry.0 += e;
    if c == Certainty::Probable {
        entry.1 = Certainty::Probable;
    }
}

/// `No` as soon as a square is visible, `Yes` only for a complete
/// certificate with all exponents 1, otherwise `Unknown`.
pub fn is_squarefree(cert: &FactorizationCertificate) -> Squarefree {
    if cert.factors.iter().any(|f| f.e >= 2) {
        return Squarefree::No;
    }
    if cert.complete {
        Squarefree::Yes
    } else {
        Squarefree::Unknown
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableCheck {
    Verified,
    Mismatch,
    PrimalityUnverified,
}

/// Check a claimed factorization without factoring: the claims must
/// multiply to `n` and every claimed prime must pass [`is_prime_biguint`].
pub fn verify_factor_table(n: &BigInt, claimed: &[(BigInt, u32)]) -> TableCheck {
    let product = claimed.iter().fold(BigInt::one(), |acc, (p, e)| {
        acc * num_traits::pow(p.clone(), *e as usize)
    });
    if &product != n {
        return TableCheck::Mismatch;
    }
    let all_prime = claimed.iter().all(|(p, _)| {
        p.sign() == Sign::Plus
            && is_prime_biguint(
                p.magnitude(),
                super::primality::MILLER_RABIN_ROUNDS,
                DEFAULT_SEED,
            )
            .is_prime()
    });
    if all_prime {
        TableCheck::Verified
    } else {
        TableCheck::PrimalityUnverified
    }
}

/// Certificate built from verified claims; `None` unless the claims verify.
pub fn certificate_from_claims(
    n: &BigInt,
    claimed: &[(BigInt, u32)],
) -> Option<FactorizationCertificate> {
    if verify_factor_table(n, claimed) != TableCheck::Verified {
        return None;
    }
    let mut found: FoundPrimes = BTreeMap::new();
    for (p, e) in claimed {
        let certainty = match is_prime_biguint(
            p.magnitude(),
            super::primality::MILLER_RABIN_ROUNDS,
            DEFAULT_SEED,
        ) {
            Primality::Proven => Certainty::Proven,
            _ => Certainty::Probable,
        };
        let entry = found.entry(p.magnitude().clone()).or_insert((0, certainty));
        entry.0 += e;
    }
    Some(FactorizationCertificate::from_parts(
        n.clone(),
        found,
        BigUint::one(),
    ))
}

/// Decimal digit count of `|n|`.
pub fn digit_count(n: &BigInt) -> usize {
    if n.is_zero() {
        1
    } else {
        n.magnitude().to_str_radix(10).len()
    }
}
