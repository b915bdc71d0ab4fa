//! Lenstra's elliptic curve method on Montgomery curves.
//!
//! Curves use Suyama's parametrization, stage 1 multiplies by every prime
//! power up to `b1` with the x-only ladder, and stage 2 is the standard
//! baby-step giant-step continuation up to `100 * b1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::primality::primes_up_to;
use super::rho::{Limbs, Montgomery};

const STAGE2_MULTIPLIER: u64 = 100;
const WHEEL: u64 = 2310;

trait ModArith {
    type E: Clone;
    /// Residue representing the plain value `v < n`.
    fn lift(&self, v: &BigUint) -> Self::E;
    /// Any value with the same gcd against `n` as the residue.
    fn gcd_value(&self, a: &Self::E) -> BigUint;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct Plain<'a> {
    n: &'a BigUint,
}

impl ModArith for Plain<'_> {
    type E = BigUint;
    fn lift(&self, v: &BigUint) -> BigUint {
        v % self.n
    }
    fn gcd_value(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b % self.n
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if &s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }
}

struct Mont<const L: usize> {
    m: Montgomery<L>,
    r2: Limbs<L>,
}

impl<const L: usize> Mont<L> {
    fn new(n: &BigUint) -> Self {
        let m = Montgomery::<L>::new(n);
        let r2 = m.limbs_of(&((BigUint::one() << (128 * L)) % n));
        Mont { m, r2 }
    }
}

impl<const L: usize> ModArith for Mont<L> {
    type E = Limbs<L>;
    fn lift(&self, v: &BigUint) -> Limbs<L> {
        self.m.mul(&self.m.limbs_of(v), &self.r2)
    }
    fn gcd_value(&self, a: &Limbs<L>) -> BigUint {
        Montgomery::<L>::to_biguint(a)
    }
    fn mul(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        self.m.mul(a, b)
    }
    fn add(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        self.m.add(a, b)
    }
    fn sub(&self, a: &Limbs<L>, b: &Limbs<L>) -> Limbs<L> {
        self.m.sub(a, b)
    }
}

/// Search for a nontrivial factor of odd composite `n` (not a perfect
/// power of a prime) with up to `curves` curves at stage-1 bound `b1`.
pub(crate) fn find_factor(
    n: &BigUint,
    curves: u32,
    b1: u64,
    rng: &mut ChaCha8Rng,
) -> Option<BigUint> {
    if curves == 0 || b1 < 2 {
        return None;
    }
    let b2 = b1.saturating_mul(STAGE2_MULTIPLIER);
    let primes = primes_up_to(b2 + WHEEL);
    let ctx = Stage {
        n,
        b1,
        b2,
        primes: &primes,
    };
    match n.to_u64_digits().len() {
        1 => ctx.run(&Mont::<1>::new(n), curves, rng),
        2 => ctx.run(&Mont::<2>::new(n), curves, rng),
        3 => ctx.run(&Mont::<3>::new(n), curves, rng),
        4 => ctx.run(&Mont::<4>::new(n), curves, rng),
        5 => ctx.run(&Mont::<5>::new(n), curves, rng),
        6 => ctx.run(&Mont::<6>::new(n), curves, rng),
        7 => ctx.run(&Mont::<7>::new(n), curves, rng),
        8 => ctx.run(&Mont::<8>::new(n), curves, rng),
        _ => ctx.run(&Plain { n }, curves, rng),
    }
}

struct Stage<'a> {
    n: &'a BigUint,
    b1: u64,
    b2: u64,
    primes: &'a [u64],
}

#[derive(Clone)]
struct Point<E> {
    x: E,
    z: E,
}

enum CurveResult {
    Factor(BigUint),
    Nothing,
}

impl Stage<'_> {
    fn run<R: ModArith>(&self, ring: &R, curves: u32, rng: &mut ChaCha8Rng) -> Option<BigUint> {
        for _ in 0..curves {
            let sigma = rng.gen_range(6u64..(1u64 << 40));
            match self.curve(ring, sigma) {
                CurveResult::Factor(f) => return Some(f),
                CurveResult::Nothing => {}
            }
        }
        None
    }

    fn proper(&self, g: BigUint) -> CurveResult {
        if !g.is_one() && &g != self.n && !g.is_zero() {
            CurveResult::Factor(g)
        } else {
            CurveResult::Nothing
        }
    }

    fn curve<R: ModArith>(&self, ring: &R, sigma: u64) -> CurveResult {
        let n = self.n;
        // Suyama: u = sigma^2 - 5, v = 4 sigma, start (u^3 : v^3),
        // (A + 2) / 4 = (v - u)^3 (3u + v) / (16 u^3 v)
        let s = BigUint::from(sigma);
        let u = (&s * &s + n - 5u32) % n;
        let v = (&s * 4u32) % n;
        let u3 = u.modpow(&BigUint::from(3u32), n);
        let v3 = v.modpow(&BigUint::from(3u32), n);
        let vmu = (&v + n - &u) % n;
        let num = vmu.modpow(&BigUint::from(3u32), n) * ((&u * 3u32 + &v) % n) % n;
        let den = (&u3 * &v % n) * 16u32 % n;
        let a24 = match den.modinv(n) {
            Some(inv) => num * inv % n,
            None => return self.proper(den.gcd(n)),
        };
        let a24 = ring.lift(&a24);
        let mut q = Point {
            x: ring.lift(&u3),
            z: ring.lift(&v3),
        };

        for &p in self.primes.iter().take_while(|&&p| p <= self.b1) {
            let mut pe = p;
            while pe <= self.b1 / p {
                pe *= p;
            }
            q = ladder(ring, &a24, &q, pe);
        }
        let g = ring.gcd_value(&q.z).gcd(n);
        if !g.is_one() {
            return self.proper(g);
        }
        self.stage2(ring, &a24, &q)
    }

    fn stage2<R: ModArith>(&self, ring: &R, a24: &R::E, q: &Point<R::E>) -> CurveResult {
        let half = WHEEL / 2;
        // odd multiples j*Q for j < WHEEL/2; only those coprime to the wheel are used
        let q2 = xdbl(ring, a24, q);
        let mut baby: Vec<(u64, Point<R::E>)> = vec![(1, q.clone())];
        let mut prev = q.clone();
        let mut cur = xadd(ring, &q2, q, q);
        let mut j = 3;
        while j < half {
            if j.gcd(&WHEEL) == 1 {
                baby.push((j, cur.clone()));
            }
            let next = xadd(ring, &cur, &q2, &prev);
            prev = cur;
            cur = next;
            j += 2;
        }
        let is_prime = {
            let mut flags = vec![false; (self.b2 + WHEEL + 1) as usize];
            for &p in self.primes {
                flags[p as usize] = true;
            }
            flags
        };
        let step = ladder(ring, a24, q, WHEEL);
        let m0 = (self.b1 / WHEEL).max(2);
        let mut g_prev = ladder(ring, a24, q, (m0 - 1) * WHEEL);
        let mut g_cur = ladder(ring, a24, q, m0 * WHEEL);
        let mut acc = ring.lift(&BigUint::one());
        let mut m = m0;
        while m * WHEEL <= self.b2 + half {
            let centre = m * WHEEL;
            for (j, pt) in &baby {
                let hit = |t: u64| t > self.b1 && t <= self.b2 && is_prime[t as usize];
                if hit(centre + j) || hit(centre - j) {
                    let diff = ring.sub(&ring.mul(&g_cur.x, &pt.z), &ring.mul(&pt.x, &g_cur.z));
                    acc = ring.mul(&acc, &diff);
                }
            }
            let next = xadd(ring, &g_cur, &step, &g_prev);
            g_prev = g_cur;
            g_cur = next;
            m += 1;
        }
        self.proper(ring.gcd_value(&acc).gcd(self.n))
    }
}

fn xdbl<R: ModArith>(ring: &R, a24: &R::E, p: &Point<R::E>) -> Point<R::E> {
    let s = ring.add(&p.x, &p.z);
    let d = ring.sub(&p.x, &p.z);
    let s2 = ring.mul(&s, &s);
    let d2 = ring.mul(&d, &d);
    let t = ring.sub(&s2, &d2);
    Point {
        x: ring.mul(&s2, &d2),
        z: ring.mul(&t, &ring.add(&d2, &ring.mul(a24, &t))),
    }
}

/// `p + q` given `diff = p - q`.
fn xadd<R: ModArith>(
    ring: &R,
    p: &Point<R::E>,
    q: &Point<R::E>,
    diff: &Point<R::E>,
) -> Point<R::E> {
    let u = ring.mul(&ring.sub(&p.x, &p.z), &ring.add(&q.x, &q.z));
    let v = ring.mul(&ring.add(&p.x, &p.z), &ring.sub(&q.x, &q.z));
    let sum = ring.add(&u, &v);
    let dif = ring.sub(&u, &v);
    Point {
        x: ring.mul(&diff.z, &ring.mul(&sum, &sum)),
        z: ring.mul(&diff.x, &ring.mul(&dif, &dif)),
    }
}

fn ladder<R: ModArith>(ring: &R, a24: &R::E, p: &Point<R::E>, k: u64) -> Point<R::E> {
    if k == 1 {
        return p.clone();
    }
    let mut r0 = p.clone();
    let mut r1 = xdbl(ring, a24, p);
    for bit in (0..(63 - k.leading_zeros())).rev() {
        if (k >> bit) & 1 == 1 {
            r0 = xadd(ring, &r1, &r0, p);
            r1 = xdbl(ring, a24, &r1);
        } else {
            r1 = xadd(ring, &r1, &r0, p);
            r0 = xdbl(ring, a24, &r0);
        }
    }
    r0
}
