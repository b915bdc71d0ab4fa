//! Strategies, independent oracles and property checks shared by the
//! property suite and the acceptance target.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use cyclotomic_obstruction::numthy::{
    factor_product, is_irreducible, modpoly_factor_seeded, ModPoly,
};
use cyclotomic_obstruction::polyring::{det_fraction_free, resultant, IntPoly, SquareMatrixZ};

pub fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

pub fn nonconstant(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg)
        .prop_flat_map(move |d| {
            (
                prop::collection::vec(-bound..=bound, d),
                (1..=bound).prop_union(-bound..=-1),
            )
        })
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64s(&c)
        })
}

pub fn monic(min_deg: usize, max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (min_deg..=max_deg)
        .prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d))
        .prop_map(|mut c| {
            c.push(1);
            IntPoly::from_i64s(&c)
        })
}

pub fn matrix(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-bound..=bound, n), n))
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Sylvester matrix laid out independently of the library, highest
/// coefficients first.
pub fn oracle_resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (t, c) in p.coeffs().iter().rev().enumerate() {
            rows[i][i + t] = c.clone();
        }
    }
    for i in 0..m {
        for (t, c) in q.coeffs().iter().rev().enumerate() {
            rows[n + i][i + t] = c.clone();
        }
    }
    cofactor_det(&rows)
}

/// Number of distinct irreducible factors of a squarefree `f`: the
/// nullity of `Q - I` where row `i` of `Q` is `x^(p i) mod f`.
pub fn berlekamp_nullity(f: &ModPoly) -> usize {
    let p = f.modulus();
    let d = f.degree().unwrap();
    let xp = ModPoly::x(p).pow_mod(&p.into(), f);
    let mut rows = Vec::with_capacity(d);
    let mut cur = ModPoly::one(p);
    for i in 0..d {
        let mut row = vec![0u64; d];
        for (j, &c) in cur.coeffs().iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    let rank = rank_mod_p(rows, p);
    d - rank
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..n).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * s % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + (p - f) * pv) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mod_poly(p: u64, max_deg: usize) -> impl Strategy<Value = ModPoly> {
    (1..=max_deg)
        .prop_flat_map(move |d| prop::collection::vec(0..p, d))
        .prop_map(move |mut c| {
            c.push(1);
            ModPoly::new(p, c)
        })
}

pub const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

pub type Check = Result<(), TestCaseError>;

pub fn ring_inputs() -> impl Strategy<Value = (IntPoly, IntPoly, IntPoly)> {
    (poly(8, 1000), poly(8, 1000), poly(8, 1000))
}

pub fn check_ring_axioms((a, b, c): (IntPoly, IntPoly, IntPoly)) -> Check {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a + &IntPoly::zero(), a.clone());
    prop_assert_eq!(&a * &IntPoly::one(), a.clone());
    prop_assert!((&a - &a.clone()).is_zero());
    prop_assert_eq!(&a + &(-a.clone()), IntPoly::zero());
    prop_assert_eq!(&a - &b, -(&b - &a));
    let x = BigInt::from(7);
    prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    Ok(())
}

pub fn resultant_inputs() -> impl Strategy<Value = (IntPoly, IntPoly, IntPoly)> {
    (nonconstant(4, 20), nonconstant(4, 20), nonconstant(4, 20))
}

/// Oracle agreement, symmetry and multiplicativity in the first slot.
pub fn check_resultant((p, q, s): (IntPoly, IntPoly, IntPoly)) -> Check {
    let r = resultant(&p, &q).unwrap();
    prop_assert_eq!(&r, &oracle_resultant(&p, &q));
    let swapped = resultant(&q, &p).unwrap();
    let sign = if p.degree().unwrap() * q.degree().unwrap() % 2 == 0 {
        1
    } else {
        -1
    };
    prop_assert_eq!(swapped, &r * sign);
    let lhs = resultant(&(&p * &q), &s).unwrap();
    let rhs = resultant(&p, &s).unwrap() * resultant(&q, &s).unwrap();
    prop_assert_eq!(&lhs, &rhs);
    prop_assert_eq!(lhs, oracle_resultant(&(&p * &q), &s));
    Ok(())
}

pub fn det_inputs() -> impl Strategy<Value = Vec<Vec<i64>>> {
    matrix(7, 20)
}

pub fn check_det(rows: Vec<Vec<i64>>) -> Check {
    let m = SquareMatrixZ::from_i64_rows(&rows).unwrap();
    prop_assert_eq!(det_fraction_free(&m), cofactor_det(&m.rows()));
    Ok(())
}

pub fn modp_inputs() -> impl Strategy<Value = (ModPoly, u64)> {
    (
        (0..PRIMES.len()).prop_flat_map(|i| mod_poly(PRIMES[i], 12)),
        any::<u64>(),
    )
}

/// Product reconstruction plus an independent irreducibility check of
/// every factor.
pub fn check_modp_factorization((f, seed): (ModPoly, u64)) -> Check {
    let p = f.modulus();
    let factors = modpoly_factor_seeded(&f, seed);
    prop_assert_eq!(factor_product(p, &factors), f.clone());
    let total: usize = factors.iter().map(|(g, e)| g.degree().unwrap() * e).sum();
    prop_assert_eq!(total, f.degree().unwrap());
    for (i, (g, e)) in factors.iter().enumerate() {
        prop_assert!(*e >= 1);
        prop_assert_eq!(g.leading(), 1);
        prop_assert!(
            g.gcd(&g.derivative()).is_one(),
            "factor {:?} not squarefree",
            g
        );
        prop_assert_eq!(berlekamp_nullity(g), 1, "factor {:?} reducible", g);
        for (h, _) in &factors[i + 1..] {
            prop_assert_ne!(g, h);
        }
    }
    prop_assert_eq!(is_irreducible(&f), factors.len() == 1 && factors[0].1 == 1);
    Ok(())
}
