use std::fmt::Write;

use super::{label, PaperVerification, SweepRow};
use crate::galois::{IrreducibilityStatus, ObstructionReport, Source};
use crate::numthy::digit_count;

pub(super) fn report_text(r: &ObstructionReport) -> String {
    let mut s = String::new();
    match &r.source {
        Source::SeriesK(k) => {
            let n = r.n_paper.map(|n| format!(", n = {n}")).unwrap_or_default();
            let _ = writeln!(s, "Haagerup series graph k = {k}{n}");
        }
        Source::File(f) => {
            let _ = writeln!(s, "graph {f}");
            let _ = writeln!(s, "  charpoly         {}", r.charpoly);
            let _ = writeln!(s, "  squarefree part  {}", r.squarefree_part);
        }
    }
    if !r.integer_roots.is_empty() {
        let roots: Vec<String> = r.integer_roots.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  integer roots    {}", roots.join(", "));
    }
    let _ = writeln!(s, "  r                {}", r.r_coeffs);
    let _ = writeln!(s, "  degree           {}", r.degree);
    match r.irreducibility.status {
        IrreducibilityStatus::Certified => {
            let p = r.irreducibility.witness_prime.unwrap_or_default();
            let _ = writeln!(s, "  irreducible      certified, irreducible mod {p}");
        }
        IrreducibilityStatus::Unresolved => {
            let _ = writeln!(
                s,
                "  irreducible      unresolved (no witness up to {}); minimal polynomial extraction inconclusive",
                r.irreducibility.search_bound
            );
        }
    }
    let _ = writeln!(
        s,
        "  discriminant     {} ({} digits)",
        r.disc,
        digit_count(&r.disc)
    );
    let mut parts: Vec<String> = r
        .disc_factors
        .iter()
        .map(|f| {
            if f.e == 1 {
                f.p.to_string()
            } else {
                format!("{}^{}", f.p, f.e)
            }
        })
        .collect();
    if !r.disc_cert.complete {
        parts.push(format!("[unfactored {}]", r.disc_cert.cofactor));
    }
    let shown = if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    };
    let _ = writeln!(
        s,
        "  |disc| factors   {shown} (via {})",
        label(&r.disc_cert.route)
    );
    let _ = writeln!(s, "  square-free      {}", label(&r.disc_cert.squarefree));
    let _ = writeln!(
        s,
        "  Galois group     {} ({})",
        r.galois.group,
        label(&r.galois.method)
    );
    let _ = writeln!(s, "  cyclotomic       {}", label(&r.cyclotomic));
    match &r.pf {
        Some(pf) => {
            let _ = writeln!(
                s,
                "  PF eigenvalue    d = {} (beta = {}), residual {:.1e}, {} iterations",
                pf.d, pf.beta, pf.residual, pf.iterations
            );
        }
        None => {
            let _ = writeln!(s, "  PF eigenvalue    not converged");
        }
    }
    let _ = writeln!(s, "  verdict          {}", label(&r.verdict));
    for note in &r.notes {
        let _ = writeln!(s, "  note: {note}");
    }
    s
}

pub(super) fn sweep_text(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3} {:>4} {:>4} {:>7} {:>6} {:>10} {:>8} {:>8}  verdict",
        "k", "n", "deg", "witness", "digits", "squarefree", "route", "group"
    );
    let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    for r in rows {
        if let Some(e) = &r.error {
            let _ = writeln!(s, "{:>3} {:>4}  error: {e}", r.k, r.n_paper);
            continue;
        }
        let _ = writeln!(
            s,
            "{:>3} {:>4} {:>4} {:>7} {:>6} {:>10} {:>8} {:>8}  {}",
            r.k,
            r.n_paper,
            r.degree.map_or("-".into(), |d| d.to_string()),
            r.witness_prime.map_or("-".into(), |p| p.to_string()),
            r.disc_digits.map_or("-".into(), |d| d.to_string()),
            opt(&r.squarefree),
            opt(&r.disc_route),
            opt(&r.group),
            opt(&r.verdict),
        );
    }
    s
}

pub(super) fn verification_text(v: &PaperVerification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "fixture {} sha256 {}", v.fixture, v.checksum);
    for t in &v.tables {
        let status = if t.pass { "pass" } else { "FAIL" };
        let _ = writeln!(
            s,
            "fd[{:>2}]  |disc(r_{:<2})|  {:>3} digits  {} primes  {:<20} {status}",
            t.j,
            t.k,
            t.disc_digits,
            t.claimed_primes,
            label(&t.check)
        );
        if !t.pass {
            let _ = writeln!(s, "    computed        {}", t.computed);
            let _ = writeln!(s, "    claimed product {}", t.claimed_product);
        }
    }
    for w in &v.witnesses {
        let status = if w.pass { "pass" } else { "FAIL" };
        let found = w.found.map_or("none".into(), |p| p.to_string());
        let _ = writeln!(
            s,
            "witness r_{:<2} expected {:>3} found {:>4}  {status}",
            w.k, w.expected, found
        );
    }
    let _ = writeln!(
        s,
        "{}",
        if v.pass {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    );
    s
}
