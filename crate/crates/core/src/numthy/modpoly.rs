//! Polynomials over the prime field `F_p` for word-sized `p`, and their
//! complete factorization into monic irreducibles.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::primality::{is_prime_u64, mul_mod_u64, pow_mod_u64, primes_up_to};
use super::{NumthyError, DEFAULT_SEED};
use crate::polyring::IntPoly;

/// Dense polynomial over `F_p`, coefficients in `[0, p)`, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Reduces every coefficient mod `p`. Panics unless `p` is prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(is_prime_u64(p), "modulus {p} is not prime");
        let mut out = ModPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    /// Image of an integer polynomial in `F_p[x]`.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let modulus = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&modulus).to_u64().expect("residue fits in u64"))
            .collect();
        Self::new(p, coeffs)
    }

    fn raw(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = ModPoly { p, coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::raw(p, vec![1 % p])
    }

    /// The polynomial `x`.
    pub fn x(p: u64) -> Self {
        Self::raw(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        pow_mod_u64(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::raw(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| mul_mod_u64(c, k, self.p))
                .collect(),
        )
    }

    pub fn add(&self, other: &ModPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::raw(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ModPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::raw(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &ModPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::raw(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = self.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + dd];
            if top == 0 {
                continue;
            }
            let q = mul_mod_u64(top, inv, p);
            quot[shift] = q;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                let sub = mul_mod_u64(q, c, p);
                rem[shift + j] = (rem[shift + j] + p - sub) % p;
            }
        }
        rem.truncate(dd);
        (Self::raw(p, quot), Self::raw(p, rem))
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    fn div(&self, divisor: &ModPoly) -> ModPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        Self::raw(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod_u64(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &ModPoly) -> ModPoly {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    fn pow_p_mod(&self, modulus: &ModPoly) -> ModPoly {
        self.pow_mod(&BigUint::from(self.p), modulus)
    }

    /// `x^(p^k) mod self`
    pub fn frobenius_x(&self, k: usize) -> ModPoly {
        let mut h = Self::x(self.p).rem(self);
        for _ in 0..k {
            h = h.pow_p_mod(self);
        }
        h
    }

    /// For `f = g(x^p)`, return `g`; over `F_p` every coefficient is its own `p`-th root.
    fn pth_root(&self) -> ModPoly {
        let p = self.p as usize;
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % p == 0));
        Self::raw(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly[p={}](", self.p)?;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, e)` with
/// `f = prod g^e` and each `g` square-free.
fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div(&c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div(&y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div(&y);
        w = y;
    }
    if c.deg() > 0 {
        for (g, e) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, e * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ModPoly::x(f.p);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_p_mod(&rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn random_below(f: &ModPoly, rng: &mut ChaCha8Rng) -> ModPoly {
    let coeffs = (0..f.deg()).map(|_| rng.gen_range(0..f.p)).collect();
    ModPoly::raw(f.p, coeffs)
}

/// Candidate splitter for `f`, a product of irreducibles of degree `d`.
fn split_candidate(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> ModPoly {
    let a = random_below(f, rng);
    if f.p == 2 {
        // trace map a + a^2 + ... + a^(2^(d-1)) lands in F_2 on each factor
        let mut term = a.clone();
        let mut trace = a;
        for _ in 1..d {
            term = term.mul(&term).rem(f);
            trace = trace.add(&term);
        }
        trace
    } else {
        let exp = (num_traits::pow(BigUint::from(f.p), d) - 1u32) >> 1u32;
        a.pow_mod(&exp, f).sub(&ModPoly::one(f.p))
    }
}

/// Equal-degree splitting (Cantor–Zassenhaus).
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    if f.deg() == d {
        out.push(f.clone());
        return;
    }
    loop {
        let g = f.gcd(&split_candidate(f, d, rng));
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.div(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, sorted by degree then coefficients. The leading
/// coefficient of `f` is the missing unit.
pub fn modpoly_factor(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    modpoly_factor_seeded(f, DEFAULT_SEED)
}

pub fn modpoly_factor_seeded(f: &ModPoly, seed: u64) -> Vec<(ModPoly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, e) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            let mut irreducibles = Vec::new();
            equal_degree(&block, d, &mut rng, &mut irreducibles);
            out.extend(irreducibles.into_iter().map(|g| (g, e)));
        }
    }
    out.sort_by(|(a, ea), (b, eb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs.cmp(&b.coeffs))
            .then(ea.cmp(eb))
    });
    out
}

/// Rabin's test: `f` of degree n is irreducible iff `x^(p^n) = x mod f`
/// and `gcd(x^(p^(n/q)) - x, f) = 1` for each prime `q | n`.
pub fn is_irreducible(f: &ModPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = ModPoly::x(f.p);
    let mut prime_divisors: Vec<usize> = primes_up_to(n as u64)
        .into_iter()
        .map(|q| q as usize)
        .filter(|q| n % q == 0)
        .collect();
    prime_divisors.reverse();
    // x^(p^k) for increasing k, computed once
    let mut powers = vec![x.rem(&f)];
    for _ in 0..n {
        let next = powers.last().unwrap().pow_p_mod(&f);
        powers.push(next);
    }
    if powers[n] != x.rem(&f) {
        return false;
    }
    prime_divisors
        .into_iter()
        .all(|q| f.gcd(&powers[n / q].sub(&x)).is_one())
}

/// Smallest prime `p <= bound` with `f mod p` irreducible. Any such `p`
/// proves the monic integer polynomial `f` irreducible over the rationals.
pub fn smallest_irreducibility_witness(f: &IntPoly, bound: u64) -> Result<u64, NumthyError> {
    match f.degree() {
        None | Some(0) => return Err(NumthyError::ConstantPolynomial),
        Some(_) if !f.is_monic() => return Err(NumthyError::NotMonic(f.to_string())),
        Some(_) => {}
    }
    primes_up_to(bound)
        .into_iter()
        .find(|&p| is_irreducible(&ModPoly::from_int_poly(f, p)))
        .ok_or(NumthyError::NotFound(bound))
}

/// `prod g^e`, monic.
pub fn factor_product(p: u64, factors: &[(ModPoly, usize)]) -> ModPoly {
    factors.iter().fold(ModPoly::one(p), |acc, (g, e)| {
        (0..*e).fold(acc, |acc, _| acc.mul(g))
    })
}
