use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::DEFAULT_SEED;

/// Outcome of a primality test. `Composite` is always a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primality {
    Proven,
    Probable,
    Composite,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

/// Random bases used above 2^64.
pub const MILLER_RABIN_ROUNDS: u32 = 40;

// Deterministic for every n < 3.3 * 10^24, in particular all of u64.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn is_prime(n: &BigInt) -> Primality {
    is_prime_with(n, MILLER_RABIN_ROUNDS, DEFAULT_SEED)
}

pub fn is_prime_with(n: &BigInt, rounds: u32, seed: u64) -> Primality {
    match n.sign() {
        Sign::Minus | Sign::NoSign => Primality::Composite,
        Sign::Plus => is_prime_biguint(n.magnitude(), rounds, seed),
    }
}

pub(crate) fn is_prime_biguint(n: &BigUint, rounds: u32, seed: u64) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Proven
        } else {
            Primality::Composite
        };
    }
    for &sp in &SMALL_PRIMES {
        if (n % sp).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let twos = n_minus_1.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_1 >> twos;
    let strong_probable = |a: &BigUint| -> bool {
        let mut x = a.modpow(&odd, n);
        if x == one || x == n_minus_1 {
            return true;
        }
        for _ in 1..twos {
            x = &x * &x % n;
            if x == n_minus_1 {
                return true;
            }
            if x == one {
                return false;
            }
        }
        false
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        if !strong_probable(&a) {
            return Primality::Composite;
        }
    }
    Primality::Probable
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let twos = (n - 1).trailing_zeros();
    let odd = (n - 1) >> twos;
    'bases: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod_u64(a % n, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(is_prime(&1471.into()), Primality::Proven);
        assert_eq!(is_prime(&1.into()), Primality::Composite);
        assert_eq!(is_prime(&0.into()), Primality::Composite);
        assert_eq!(is_prime(&(-7).into()), Primality::Composite);
        assert_eq!(is_prime(&2.into()), Primality::Proven);
        assert_eq!(is_prime(&7606541.into()), Primality::Composite);
    }

    #[test]
    fn agrees_with_sieve() {
        let sieve = primes_up_to(20_000);
        let tested: Vec<u64> = (0..=20_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, tested);
    }

    #[test]
    fn strong_pseudoprimes_are_caught() {
        // strong pseudoprimes for shorter base prefixes
        for n in [
            3215031751u64,
            2152302898747,
            3474749660383,
            341550071728321,
            3825123056546413051,
        ] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(is_prime_u64(18446744073709551557)); // largest prime below 2^64
    }

    #[test]
    fn large_values() {
        assert_eq!(
            is_prime(&big("769765583537031753607466863873613")),
            Primality::Probable
        );
        // 2^89 - 1 is a Mersenne prime, 2^67 - 1 is not
        assert_eq!(is_prime(&((BigInt::one() << 89) - 1)), Primality::Probable);
        assert_eq!(is_prime(&((BigInt::one() << 67) - 1)), Primality::Composite);
        // product of two 40-bit numbers
        let n = BigInt::from(1099511627791u64) * BigInt::from(1099511627817u64);
        assert_eq!(is_prime(&n), Primality::Composite);
    }
}
