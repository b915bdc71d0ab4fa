//! Pollard rho with Brent cycle detection.
//!
//! Arithmetic runs in Montgomery form over a fixed number of 64-bit limbs
//! chosen from the size of `n`; the iteration `y -> y^2 R^-1 + c` is what
//! results from squaring in Montgomery form, and it is just as good a
//! pseudo-random map modulo each prime factor as `y^2 + c`.
//! Products of `|x - y|` are accumulated and fed to gcd in batches.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const BATCH: u64 = 128;

/// Largest modulus handled by the limb kernel; above this the generic
/// big-integer loop is used.
const MAX_LIMBS: usize = 8;

/// Try to find a nontrivial factor of odd composite `n` within `budget`
/// iterations of the rho map, restarting with fresh parameters on failure.
pub(crate) fn find_factor(n: &BigUint, budget: u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    debug_assert!(n.is_odd());
    let limbs = n.to_u64_digits().len();
    match limbs {
        1 => rho_driver::<1>(n, budget, rng),
        2 => rho_driver::<2>(n, budget, rng),
        3 => rho_driver::<3>(n, budget, rng),
        4 => rho_driver::<4>(n, budget, rng),
        5 => rho_driver::<5>(n, budget, rng),
        6 => rho_driver::<6>(n, budget, rng),
        7 => rho_driver::<7>(n, budget, rng),
        8 => rho_driver::<MAX_LIMBS>(n, budget, rng),
        _ => rho_generic(n, budget, rng),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) struct Limbs<const L: usize>([u64; L]);

pub(crate) struct Montgomery<const L: usize> {
    n: [u64; L],
    // -n^{-1} mod 2^64
    n_inv: u64,
}

impl<const L: usize> Montgomery<L> {
    pub(crate) fn new(n: &BigUint) -> Self {
        let digits = n.to_u64_digits();
        let mut limbs = [0u64; L];
        limbs[..digits.len()].copy_from_slice(&digits);
        // Newton iteration for the inverse of an odd number mod 2^64
        let n0 = limbs[0];
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n0.wrapping_mul(inv)));
        }
        Montgomery {
            n: limbs,
            n_inv: inv.wrapping_neg(),
        }
    }

    pub(crate) fn limbs_of(&self, v: &BigUint) -> Limbs<L> {
        let digits = v.to_u64_digits();
        let mut out = [0u64; L];
        out[..digits.len()].copy_from_slice(&digits);
        Limbs(out)
    }

    pub(crate) fn to_biguint(v: &Limbs<L>) -> BigUint {
        let mut bytes = Vec::with_capacity(L * 8);
        for limb in v.0 {
            bytes.extend_from_slice(&limb.to_le_bytes());
        }
        BigUint::from_bytes_le(&bytes)
    }

    fn geq_n(&self, t: &[u64; L], carry: u64) -> bool {
        if carry != 0 {
            return true;
        }
        for i in (0..L).rev() {
            if t[i] != self.n[i] {
                return t[i] > self.n[i];
            }
        }
        true
    }

    fn sub_n(&self, t: &mut [u64; L]) {
        let mut borrow = 0u64;
        for i in 0..L {
            let (d1, b1) = t[i].overflowing_sub(self.n[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
    }

    /// CIOS Montgomery product `a * b * R^-1 mod n`.
    pub(crate) fn mul(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        let mut t = [0u64; L];
        let mut t_hi = 0u64;
        for i in 0..L {
            let mut carry: u128 = 0;
            for j in 0..L {
                let s = t[j] as u128 + a.0[j] as u128 * b.0[i] as u128 + carry;
                t[j] = s as u64;
                carry = s >> 64;
            }
            let s = t_hi as u128 + carry;
            let top = s as u64;
            let top_carry = (s >> 64) as u64;

            let m = t[0].wrapping_mul(self.n_inv);
            let s = t[0] as u128 + m as u128 * self.n[0] as u128;
            let mut carry = s >> 64;
            for j in 1..L {
                let s = t[j] as u128 + m as u128 * self.n[j] as u128 + carry;
                t[j - 1] = s as u64;
                carry = s >> 64;
            }
            let s = top as u128 + carry;
            t[L - 1] = s as u64;
            t_hi = top_carry + (s >> 64) as u64;
        }
        if self.geq_n(&t, t_hi) {
            self.sub_n(&mut t);
        }
        Limbs(t)
    }

    pub(crate) fn add(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        let mut t = [0u64; L];
        let mut carry = 0u64;
        for i in 0..L {
            let (s1, c1) = a.0[i].overflowing_add(b.0[i]);
            let (s2, c2) = s1.overflowing_add(carry);
            t[i] = s2;
            carry = (c1 | c2) as u64;
        }
        if self.geq_n(&t, carry) {
            self.sub_n(&mut t);
        }
        Limbs(t)
    }

    /// `a - b mod n` for reduced inputs.
    pub(crate) fn sub(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        let mut t = [0u64; L];
        let mut borrow = 0u64;
        for i in 0..L {
            let (d1, b1) = a.0[i].overflowing_sub(b.0[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
        if borrow != 0 {
            let mut carry = 0u64;
            for i in 0..L {
                let (s1, c1) = t[i].overflowing_add(self.n[i]);
                let (s2, c2) = s1.overflowing_add(carry);
                t[i] = s2;
                carry = (c1 | c2) as u64;
            }
        }
        Limbs(t)
    }

    /// `|a - b|` as a residue; only its gcd with `n` matters.
    fn abs_diff(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        let (hi, lo) = if Self::less(a, b) { (b, a) } else { (a, b) };
        let mut t = [0u64; L];
        let mut borrow = 0u64;
        for i in 0..L {
            let (d1, b1) = hi.0[i].overflowing_sub(lo.0[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
        Limbs(t)
    }

    fn less(a: &Limbs<L>, b: &Limbs<L>) -> bool {
        for i in (0..L).rev() {
            if a.0[i] != b.0[i] {
                return a.0[i] < b.0[i];
            }
        }
        false
    }
}

fn rho_driver<const L: usize>(n: &BigUint, budget: u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    let mont = Montgomery::<L>::new(n);
    let mut spent = 0u64;
    while spent < budget {
        let c = mont.limbs_of(&(BigUint::from(rng.gen_range(1..u64::MAX)) % n));
        let start = mont.limbs_of(&(BigUint::from(rng.gen::<u64>()) % n));
        let (found, used) = brent_limbs(&mont, n, start, c, budget - spent);
        spent += used;
        if found.is_some() {
            return found;
        }
    }
    None
}

fn brent_limbs<const L: usize>(
    mont: &Montgomery<L>,
    n: &BigUint,
    start: Limbs<L>,
    c: Limbs<L>,
    budget: u64,
) -> (Option<BigUint>, u64) {
    let step = |y: &Limbs<L>| mont.add(&mont.mul(y, y), &c);
    let one_mont = mont.limbs_of(&((BigUint::one() << (64 * L)) % n));
    let mut y = start;
    let mut x = y;
    let mut saved = y;
    let mut q = one_mont;
    let mut g = BigUint::one();
    let mut r = 1u64;
    let mut used = 0u64;
    while g.is_one() {
        x = y;
        for _ in 0..r {
            y = step(&y);
        }
        used += r;
        let mut k = 0;
        while k < r && g.is_one() {
            saved = y;
            let batch = BATCH.min(r - k);
            for _ in 0..batch {
                y = step(&y);
                q = mont.mul(&q, &mont.abs_diff(&x, &y));
            }
            used += batch;
            g = Montgomery::<L>::to_biguint(&q).gcd(n);
            k += batch;
        }
        r *= 2;
        if g.is_one() && used >= budget {
            return (None, used);
        }
    }
    if &g == n {
        // the batch overshot; replay it one step at a time
        loop {
            saved = step(&saved);
            used += 1;
            g = Montgomery::<L>::to_biguint(&mont.abs_diff(&x, &saved)).gcd(n);
            if !g.is_one() || used >= budget.saturating_add(BATCH) {
                break;
            }
        }
    }
    if g.is_one() || &g == n {
        (None, used)
    } else {
        (Some(g), used)
    }
}

fn rho_generic(n: &BigUint, budget: u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    let mut spent = 0u64;
    while spent < budget {
        let c = BigUint::from(rng.gen_range(1..u64::MAX)) % n;
        let step = |y: &BigUint| (y * y + &c) % n;
        let mut y = BigUint::from(rng.gen::<u64>()) % n;
        let mut x;
        let mut saved = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        while g.is_one() && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            spent += r;
            let mut k = 0;
            while k < r && g.is_one() {
                saved = y.clone();
                let batch = BATCH.min(r - k);
                for _ in 0..batch {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                spent += batch;
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
            if &g == n {
                loop {
                    saved = step(&saved);
                    let diff = if x > saved { &x - &saved } else { &saved - &x };
                    g = diff.gcd(n);
                    if !g.is_one() {
                        break;
                    }
                }
            }
        }
        if !g.is_one() && &g != n && !g.is_zero() {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn montgomery_product_matches_bigint() {
        let n: BigUint = "602237386867482390429552519214023674351054569169"
            .parse()
            .unwrap();
        let mont = Montgomery::<3>::new(&n);
        let r: BigUint = BigUint::one() << 192u32;
        let r_inv = r.modinv(&n).unwrap();
        let a: BigUint = "123456789012345678901234567890123456789".parse().unwrap();
        let b: BigUint = "987654321098765432109876543210".parse().unwrap();
        let got = Montgomery::<3>::to_biguint(&mont.mul(&mont.limbs_of(&a), &mont.limbs_of(&b)));
        assert_eq!(got, &a * &b * &r_inv % &n);
        let sum = Montgomery::<3>::to_biguint(&mont.add(
            &mont.limbs_of(&(&n - 1u32)),
            &mont.limbs_of(&BigUint::from(5u32)),
        ));
        assert_eq!(sum, BigUint::from(4u32));
    }

    #[test]
    fn splits_semiprimes_of_several_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, q) in [
            ("1471", "5171"),
            ("192667", "47117433796403"),
            ("1625255809", "1226665686533457543318366623"),
            ("21802562773909", "468985859471443"),
        ] {
            let p: BigUint = p.parse().unwrap();
            let q: BigUint = q.parse().unwrap();
            let n = &p * &q;
            let f = find_factor(&n, 1 << 24, &mut rng).expect("factor found");
            assert!(f == p || f == q, "{f} does not split {n}");
        }
    }

    #[test]
    fn generic_path_splits_large_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let big_prime: BigUint = (BigUint::one() << 607u32) - 1u32; // Mersenne prime
        let n = &big_prime * BigUint::from(1000003u32);
        assert!(n.to_u64_digits().len() > MAX_LIMBS);
        assert_eq!(
            find_factor(&n, 1 << 16, &mut rng),
            Some(BigUint::from(1000003u32))
        );
    }

    #[test]
    fn respects_budget_on_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p: BigUint = "769765583537031753607466863873613".parse().unwrap();
        assert_eq!(find_factor(&p, 1 << 12, &mut rng), None);
    }
}
