//! Command-line front end: `analyze`, `sweep`, `graph` and `verify-paper`.
//!
//! Exit codes: 0 completed, 1 verification mismatch or internal error,
//! 2 usage or input error.

mod fixture;
mod render;

pub use fixture::{PaperTableFixture, FD_TABLE_ENV};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::galois::{obstruct, ObstructOptions, ObstructionInput, ObstructionReport};
use crate::graphs::{derive_r, BipartiteGraphSpec, HaagerupIndex, DEFAULT_MAX_ITERS};
use crate::numthy::{
    digit_count, smallest_irreducibility_witness, verify_factor_table, FactorBudget, TableCheck,
    DEFAULT_SEED, DEFAULT_WITNESS_BOUND,
};
use crate::polyring::discriminant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Smallest irreducibility witnesses published for `r_7 .. r_13`.
pub const PUBLISHED_WITNESSES: [(u32, u64); 7] =
    [(7, 3), (8, 2), (9, 5), (10, 3), (11, 3), (12, 2), (13, 11)];

#[derive(Debug, Parser)]
#[command(
    name = "cyclotomic-obstruction",
    version,
    about = "Cyclotomic-integer obstruction for candidate subfactor principal graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one member of the Haagerup series.
    Analyze {
        /// Series index; the graph has 10 + 4k vertices.
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        flags: Flags,
    },
    /// Analyze k = 0..=k-max and print one summary row per k.
    Sweep {
        #[arg(long = "k-max")]
        k_max: u32,
        #[command(flatten)]
        flags: Flags,
    },
    /// Analyze a bipartite graph read from a JSON file.
    Graph {
        /// JSON file with `rows`, `cols`, `adjacency` and optional `labels`.
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Recompute the published discriminant tables and witness list.
    VerifyPaper {
        /// Emit machine-readable JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Args)]
struct Flags {
    /// Emit machine-readable JSON.
    #[arg(long)]
    json: bool,
    /// Accept the embedded discriminant table after checking it.
    #[arg(long = "trust-table")]
    trust_table: bool,
    /// Largest prime tried as an irreducibility witness.
    #[arg(long = "witness-bound", default_value_t = DEFAULT_WITNESS_BOUND)]
    witness_bound: u64,
    /// Pollard rho iterations per composite.
    #[arg(long = "rho-budget", default_value_t = FactorBudget::default().rho_iterations)]
    rho_budget: u64,
    /// Elliptic curves per composite that survives rho.
    #[arg(long = "ecm-curves", default_value_t = FactorBudget::default().ecm_curves)]
    ecm_curves: u32,
    /// Seed for the randomized factorization routines.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Power-iteration tolerance.
    #[arg(long, default_value_t = crate::graphs::DEFAULT_TOL)]
    tol: f64,
}

impl Flags {
    fn options(&self) -> ObstructOptions {
        ObstructOptions {
            witness_bound: self.witness_bound,
            budget: FactorBudget {
                rho_iterations: self.rho_budget,
                ecm_curves: self.ecm_curves,
                seed: self.seed,
                ..FactorBudget::default()
            },
            tol: self.tol,
            max_iters: DEFAULT_MAX_ITERS,
            table_claims: None,
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { k, flags } => cmd_analyze(k, &flags, out),
        Command::Sweep { k_max, flags } => cmd_sweep(k_max, &flags, out),
        Command::Graph { file, flags } => cmd_graph(&file, &flags, out),
        Command::VerifyPaper { json } => cmd_verify_paper(json, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: message.to_string(),
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::internal(format!("write failed: {e}"))
}

fn table_if(flags: &Flags) -> Result<Option<PaperTableFixture>, Failure> {
    if flags.trust_table {
        PaperTableFixture::load().map(Some).map_err(Failure::usage)
    } else {
        Ok(None)
    }
}

fn series_report(
    k: u32,
    flags: &Flags,
    table: Option<&PaperTableFixture>,
) -> Result<ObstructionReport, String> {
    let mut options = flags.options();
    options.table_claims = table.and_then(|t| t.claims_for_k(k)).map(<[_]>::to_vec);
    obstruct(&ObstructionInput::Series(HaagerupIndex(k)), &options).map_err(|e| e.to_string())
}

fn cmd_analyze(k: u32, flags: &Flags, out: &mut dyn Write) -> Result<i32, Failure> {
    let table = table_if(flags)?;
    let report = series_report(k, flags, table.as_ref()).map_err(Failure::internal)?;
    if flags.json {
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    } else {
        write!(out, "{}", render::report_text(&report)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

/// One line of `sweep` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub k: u32,
    pub n_paper: u64,
    pub degree: Option<usize>,
    pub witness_prime: Option<u64>,
    pub disc_digits: Option<usize>,
    pub squarefree: Option<String>,
    pub disc_route: Option<String>,
    pub group: Option<String>,
    pub verdict: Option<String>,
    pub error: Option<String>,
}

fn sweep_row(k: u32, report: Result<ObstructionReport, String>) -> SweepRow {
    match report {
        Ok(r) => SweepRow {
            k,
            n_paper: HaagerupIndex(k).n_paper(),
            degree: Some(r.degree),
            witness_prime: r.irreducibility.witness_prime,
            disc_digits: Some(digit_count(&r.disc)),
            squarefree: Some(label(&r.disc_cert.squarefree)),
            disc_route: Some(label(&r.disc_cert.route)),
            group: Some(r.galois.group.to_string()),
            verdict: Some(label(&r.verdict)),
            error: None,
        },
        Err(e) => SweepRow {
            k,
            n_paper: HaagerupIndex(k).n_paper(),
            degree: None,
            witness_prime: None,
            disc_digits: None,
            squarefree: None,
            disc_route: None,
            group: None,
            verdict: None,
            error: Some(e),
        },
    }
}

/// The serde name of a unit-like enum value.
fn label<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Run the pipeline for every `k` in `0..=k_max`, one thread per `k`,
/// returning rows in `k` order.
pub fn sweep_rows(
    k_max: u32,
    options_for: impl Fn(u32) -> ObstructOptions + Sync,
) -> Vec<SweepRow> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=k_max)
            .map(|k| {
                let options = options_for(k);
                scope.spawn(move || {
                    obstruct(&ObstructionInput::Series(HaagerupIndex(k)), &options)
                        .map_err(|e| e.to_string())
                })
            })
            .collect();
        handles
            .into_iter()
            .enumerate()
            .map(|(k, h)| {
                let report = h
                    .join()
                    .unwrap_or_else(|_| Err("worker panicked".to_string()));
                sweep_row(k as u32, report)
            })
            .collect()
    })
}

fn cmd_sweep(k_max: u32, flags: &Flags, out: &mut dyn Write) -> Result<i32, Failure> {
    let table = table_if(flags)?;
    let rows = sweep_rows(k_max, |k| {
        let mut options = flags.options();
        options.table_claims = table
            .as_ref()
            .and_then(|t| t.claims_for_k(k))
            .map(<[_]>::to_vec);
        options
    });
    if flags.json {
        let text = serde_json::to_string_pretty(&rows).expect("rows serialize");
        writeln!(out, "{text}").map_err(io)?;
    } else {
        write!(out, "{}", render::sweep_text(&rows)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_graph(file: &std::path::Path, flags: &Flags, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
    let spec = BipartiteGraphSpec::from_json(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let id = file
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.display().to_string());
    let report = obstruct(&ObstructionInput::Graph { id, spec }, &flags.options())
        .map_err(Failure::internal)?;
    if flags.json {
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    } else {
        write!(out, "{}", render::report_text(&report)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

/// Outcome of rechecking one table entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub j: u32,
    pub k: u32,
    pub pass: bool,
    pub check: TableCheck,
    pub disc_digits: usize,
    pub claimed_primes: usize,
    #[serde(with = "crate::polyring::decimal")]
    pub computed: BigInt,
    #[serde(with = "crate::polyring::decimal")]
    pub claimed_product: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRow {
    pub k: u32,
    pub expected: u64,
    pub found: Option<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperVerification {
    pub fixture: String,
    pub checksum: String,
    pub tables: Vec<TableRow>,
    pub witnesses: Vec<WitnessRow>,
    pub pass: bool,
}

pub fn verify_paper(table: &PaperTableFixture) -> Result<PaperVerification, String> {
    let mut tables = Vec::new();
    for (&j, claims) in &table.entries {
        let k = j - 1;
        let r = derive_r(HaagerupIndex(k)).map_err(|e| e.to_string())?;
        let disc = discriminant(&r).map_err(|e| e.to_string())?;
        let computed = BigInt::from(disc.magnitude().clone());
        let check = verify_factor_table(&computed, claims);
        let claimed_product = claims.iter().fold(BigInt::from(1), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        });
        tables.push(TableRow {
            j,
            k,
            pass: check == TableCheck::Verified && claims.iter().all(|(_, e)| *e == 1),
            check,
            disc_digits: digit_count(&computed),
            claimed_primes: claims.len(),
            computed,
            claimed_product,
        });
    }
    let mut witnesses = Vec::new();
    for &(k, expected) in &PUBLISHED_WITNESSES {
        let r = derive_r(HaagerupIndex(k)).map_err(|e| e.to_string())?;
        let found = smallest_irreducibility_witness(&r, DEFAULT_WITNESS_BOUND).ok();
        witnesses.push(WitnessRow {
            k,
            expected,
            found,
            pass: found == Some(expected),
        });
    }
    let pass = tables.iter().all(|t| t.pass) && witnesses.iter().all(|w| w.pass);
    Ok(PaperVerification {
        fixture: table.origin.clone(),
        checksum: table.checksum.clone(),
        tables,
        witnesses,
        pass,
    })
}

fn cmd_verify_paper(json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let table = PaperTableFixture::load().map_err(Failure::usage)?;
    let v = verify_paper(&table).map_err(Failure::internal)?;
    if json {
        let text = serde_json::to_string_pretty(&v).expect("verification serializes");
        writeln!(out, "{text}").map_err(io)?;
    } else {
        write!(out, "{}", render::verification_text(&v)).map_err(io)?;
    }
    Ok(if v.pass { EXIT_OK } else { EXIT_MISMATCH })
}
