//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use proptest::test_runner::{Config, TestRunner};

use cyclotomic_obstruction::cli::{sweep_rows, verify_paper, PaperTableFixture};
use cyclotomic_obstruction::galois::{
    classify_galois, is_perfect_square, GaloisGroup, ObstructOptions,
};
use cyclotomic_obstruction::graphs::{
    build_a, charpoly_exact, derive_q, derive_r, gram, halfstep_charpoly, p_recurrence,
    pf_estimate_with, relative_residual, HaagerupIndex, DEFAULT_MAX_ITERS, DEFAULT_TOL,
};
use cyclotomic_obstruction::numthy::{
    is_prime, smallest_irreducibility_witness, Primality, Squarefree, DEFAULT_WITNESS_BOUND,
};
use cyclotomic_obstruction::polyring::{discriminant, IntPoly};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k(i: u32) -> HaagerupIndex {
    HaagerupIndex(i)
}

fn series_gram_charpoly(i: u32) -> IntPoly {
    charpoly_exact(&gram(&build_a(k(i))))
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn base_polynomials() -> Outcome {
    let x_minus_2_sq = poly(&[4, -4, 1]);
    let n0 = &poly(&[3, -5, 1]) * &x_minus_2_sq;
    let n1 = &(&poly(&[-5, 17, -8, 1]) * &x_minus_2_sq) * &poly(&[-1, 1]);
    let c0 = series_gram_charpoly(0);
    let c1 = series_gram_charpoly(1);
    ensure(c0 == n0, || format!("charpoly(N_0) = {c0}, expected {n0}"))?;
    ensure(c1 == n1, || format!("charpoly(N_1) = {c1}, expected {n1}"))?;
    Ok(format!("N_0 -> {c0}; N_1 -> {c1}"))
}

fn recurrence_consistency() -> Outcome {
    for i in 0..=8 {
        let rec = p_recurrence(k(i));
        let det = series_gram_charpoly(i);
        ensure(rec == det, || {
            format!("k={i}: recurrence {rec} vs determinant {det}")
        })?;
    }
    let two_minus_x = poly(&[2, -1]);
    for i in 1..=6 {
        let lhs = series_gram_charpoly(i);
        let rhs = &(&two_minus_x * &halfstep_charpoly(k(i))) - &series_gram_charpoly(i - 1);
        ensure(lhs == rhs, || format!("half-step identity fails at k={i}"))?;
    }
    Ok("p_recurrence = det for k=0..8; half-step identity for k=1..6".into())
}

fn published_polynomials() -> Outcome {
    let r2 = poly(&[7, -59, 142, -140, 63, -13, 1]);
    let r3 = poly(&[9, -124, 502, -898, 827, -418, 117, -17, 1]);
    let d2 = derive_r(k(2)).map_err(|e| e.to_string())?;
    let d3 = derive_r(k(3)).map_err(|e| e.to_string())?;
    ensure(d2 == r2, || format!("r_2 = {d2}"))?;
    ensure(d3 == r3, || format!("r_3 = {d3}"))?;
    Ok(format!("r_2 = {d2}; r_3 = {d3}"))
}

fn cubic_discriminant() -> Outcome {
    let r1 = derive_r(k(1)).map_err(|e| e.to_string())?;
    let disc = discriminant(&r1).map_err(|e| e.to_string())?;
    ensure(disc == BigInt::from(169), || format!("disc(r_1) = {disc}"))?;
    ensure(is_perfect_square(&BigInt::from(169)), || {
        "169 not a square".into()
    })?;
    let g = classify_galois(&r1, true, &disc, Squarefree::No).map_err(|e| e.to_string())?;
    ensure(g.group == GaloisGroup::Z3, || {
        format!("Gal(r_1) = {}", g.group)
    })?;
    Ok(format!("disc(r_1) = {disc} = 13^2, Gal(r_1) = {}", g.group))
}

fn witness_primes() -> Outcome {
    let expected = [(7, 3), (8, 2), (9, 5), (10, 3), (11, 3), (12, 2), (13, 11)];
    let mut found = Vec::new();
    for (i, want) in expected {
        let r = derive_r(k(i)).map_err(|e| e.to_string())?;
        let got = smallest_irreducibility_witness(&r, DEFAULT_WITNESS_BOUND)
            .map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("r_{i}: witness {got}, expected {want}")
        })?;
        found.push(format!("({i},{got})"));
    }
    Ok(found.join(" "))
}

fn table_reproduction() -> Outcome {
    let fixture = PaperTableFixture::embedded()?;
    let u64_max = BigInt::from(u64::MAX);
    for (j, claims) in &fixture.entries {
        for (p, e) in claims {
            ensure(*e == 1, || format!("fd[{j}]: exponent {e} on {p}"))?;
            let status = is_prime(p);
            ensure(status.is_prime(), || format!("fd[{j}]: {p} is composite"))?;
            ensure(*p > u64_max || status == Primality::Proven, || {
                format!("fd[{j}]: {p} fits in 64 bits but is not proven prime")
            })?;
        }
    }
    let v = verify_paper(&fixture)?;
    let failed: Vec<u32> = v.tables.iter().filter(|t| !t.pass).map(|t| t.j).collect();
    ensure(failed.is_empty(), || {
        format!("fd entries failing: {failed:?}")
    })?;
    ensure(v.pass, || "witness list mismatch".into())?;
    let largest = v.tables.iter().map(|t| t.disc_digits).max().unwrap_or(0);
    Ok(format!(
        "fd[3..20] reproduced, largest |disc| has {largest} digits"
    ))
}

fn verdict_sweep() -> Outcome {
    let rows = sweep_rows(13, |_| ObstructOptions::default());
    for row in &rows {
        let want = if row.k <= 1 { "possible" } else { "ruled_out" };
        ensure(row.verdict.as_deref() == Some(want), || {
            format!(
                "k={}: verdict {:?} error {:?}, expected {want}",
                row.k, row.verdict, row.error
            )
        })?;
        ensure(row.disc_route.as_deref() == Some("factored"), || {
            format!("k={}: route", row.k)
        })?;
    }
    let fixture = PaperTableFixture::embedded()?;
    let trusted = sweep_rows(19, |i| ObstructOptions {
        table_claims: fixture.claims_for_k(i).map(<[_]>::to_vec),
        ..ObstructOptions::default()
    });
    for row in trusted.iter().filter(|r| r.k >= 14) {
        ensure(row.verdict.as_deref() == Some("ruled_out"), || {
            format!(
                "k={}: trusted verdict {:?} error {:?}",
                row.k, row.verdict, row.error
            )
        })?;
        ensure(row.witness_prime.is_some(), || {
            format!("k={}: no witness", row.k)
        })?;
        ensure(row.disc_route.as_deref() == Some("table"), || {
            format!("k={}: table not used", row.k)
        })?;
    }
    Ok(
        "possible k=0,1; ruled_out k=2..13 (factored); ruled_out k=14..19 (table, witnessed)"
            .into(),
    )
}

fn divisibility_law() -> Outcome {
    let one = BigInt::one();
    let x_minus_1 = poly(&[-1, 1]);
    for i in 0..=20u32 {
        let q = derive_q(k(i)).map_err(|e| e.to_string())?;
        let divisible = q.div_exact(&x_minus_1).is_ok();
        ensure(divisible == (i % 3 == 1), || {
            format!("k={i}: (x-1) | q_k is {divisible}")
        })?;
        let at_one = q.eval(&one);
        let want = [-1, 0, 1][(i % 3) as usize];
        ensure(at_one == BigInt::from(want), || {
            format!("k={i}: q_k(1) = {at_one}, expected {want}")
        })?;
    }
    Ok("(x-1) | q_k iff k = 1 mod 3 for k=0..20; q_k(1) cycles -1, 0, +1".into())
}

fn perron_frobenius() -> Outcome {
    let bound = 3.0 + 3f64.sqrt();
    let mut prev = f64::NEG_INFINITY;
    let mut worst: f64 = 0.0;
    let mut d0 = f64::NAN;
    for i in 0..=13 {
        let r = derive_r(k(i)).map_err(|e| e.to_string())?;
        let est = pf_estimate_with(
            &gram(&build_a(k(i))),
            DEFAULT_TOL,
            DEFAULT_MAX_ITERS,
            Some(&r),
        )
        .map_err(|e| format!("k={i}: {e}"))?;
        let residual = relative_residual(&r, est.d);
        ensure(est.d > prev, || {
            format!("k={i}: d = {} not above {prev}", est.d)
        })?;
        ensure(est.d < bound, || {
            format!("k={i}: d = {} exceeds 3+sqrt(3)", est.d)
        })?;
        ensure(residual < 1e-9, || format!("k={i}: residual {residual:e}"))?;
        if i == 0 {
            d0 = est.d;
        }
        worst = worst.max(residual);
        prev = est.d;
    }
    let exact0 = (5.0 + 13f64.sqrt()) / 2.0;
    ensure((d0 - exact0).abs() < 1e-9, || {
        format!("d_0 = {d0}, expected {exact0}")
    })?;
    Ok(format!(
        "d_0 = {d0}, d_13 = {prev}, max residual {worst:.1e}"
    ))
}

fn property_suites() -> Outcome {
    let cases = 1000;
    let runner = || {
        TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        })
    };
    runner()
        .run(&common::ring_inputs(), common::check_ring_axioms)
        .map_err(|e| format!("ring axioms: {e}"))?;
    runner()
        .run(&common::resultant_inputs(), common::check_resultant)
        .map_err(|e| format!("resultant: {e}"))?;
    runner()
        .run(&common::modp_inputs(), common::check_modp_factorization)
        .map_err(|e| format!("mod-p factorization: {e}"))?;
    runner()
        .run(&common::det_inputs(), common::check_det)
        .map_err(|e| format!("determinant: {e}"))?;
    Ok(format!(
        "{cases} cases each: ring axioms, resultant, mod-p factorization, Bareiss"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "base polynomials",
            limit: Some(Duration::from_secs(1)),
            run: base_polynomials,
        },
        Criterion {
            id: 2,
            name: "recurrence consistency",
            limit: Some(Duration::from_secs(30)),
            run: recurrence_consistency,
        },
        Criterion {
            id: 3,
            name: "published polynomials",
            limit: None,
            run: published_polynomials,
        },
        Criterion {
            id: 4,
            name: "cubic discriminant",
            limit: None,
            run: cubic_discriminant,
        },
        Criterion {
            id: 5,
            name: "witness primes",
            limit: Some(Duration::from_secs(120)),
            run: witness_primes,
        },
        Criterion {
            id: 6,
            name: "table reproduction",
            limit: Some(Duration::from_secs(600)),
            run: table_reproduction,
        },
        Criterion {
            id: 7,
            name: "verdict sweep",
            limit: None,
            run: verdict_sweep,
        },
        Criterion {
            id: 8,
            name: "divisibility law",
            limit: None,
            run: divisibility_law,
        },
        Criterion {
            id: 9,
            name: "Perron-Frobenius",
            limit: None,
            run: perron_frobenius,
        },
        Criterion {
            id: 10,
            name: "property suites",
            limit: None,
            run: property_suites,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {}: {} ({elapsed:.2?}) {detail}",
                c.id, c.name
            ),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {} ({elapsed:.2?}) {why}", c.id, c.name);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
