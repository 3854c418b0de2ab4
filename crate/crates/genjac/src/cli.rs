//! The `genjac` command line.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad arguments, unreadable or
//! malformed files), 2 when a computation fails or a check does not hold.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use genjac_core::extgroup::GroupBackend;
use genjac_core::genjac::GenJacParams;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::bench::{run_benchmark, BenchConfig};
use crate::experiments::{check_axioms, check_cocycle_over_extension, run_attack, run_pairing};
use crate::formats::{self, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "genjac",
    version,
    about = "Generalized Jacobians of elliptic curves: parameters, checks, attacks and cost benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate parameters for y^2 = x^3 + x over F_p with K = F_p[u]/(u^2 + 1)
    GenParams {
        /// Prime p = 3 (mod 4)
        #[arg(long)]
        p: u64,
        #[arg(long, env = "GENJAC_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the cocycle relations and the group axioms
    Verify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, env = "GENJAC_SEED", default_value_t = 0)]
        seed: u64,
        /// Number of admissible triples for each check
        #[arg(long, default_value_t = 1000)]
        triples: usize,
    },
    /// Solve a planted DLP in a cyclic subgroup of Jac(E,m) via the extension structure
    Attack {
        #[arg(long)]
        params: PathBuf,
        /// Order of the cyclic subgroup; must divide |Jac(E,m)|
        #[arg(long)]
        order: u64,
        #[arg(long, env = "GENJAC_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Read <P, M - N>_m off m * (P, 1) and compare with a Miller loop
    Pairing {
        #[arg(long)]
        params: PathBuf,
        /// Point of E(k), as `x;y`
        #[arg(long)]
        point: String,
    },
    /// Compare costs of Jac(E,m), E x G_m, E and G_m
    Bench {
        /// Parameter file; defaults to the p = 11 toy family generated from the seed
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, env = "GENJAC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        scalar_bits: u32,
        /// Also write the report as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Print `-` instead of wall-clock times, making output depend only on the seed
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<genjac_core::Error> for Failure {
    fn from(e: genjac_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &Path) -> Result<GenJacParams, Failure> {
    Ok(formats::read_params(path)?)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::GenParams { p, seed, output } => {
            let params = GenJacParams::generate(p, &mut ChaCha20Rng::seed_from_u64(seed))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            match output {
                Some(path) => formats::save_params(&path, &params)?,
                None => out.write_all(formats::write_params(&params).as_bytes())?,
            }
        }
        Command::Verify { params, seed, triples } => {
            let gp = load(&params)?;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let cocycle = check_cocycle_over_extension(&gp, triples, &mut rng)?;
            let axioms = check_axioms(&gp, triples, &mut rng)?;
            writeln!(
                out,
                "cocycle   {} admissible triples over E(K), {} failures, {} inadmissible skipped",
                cocycle.admissible, cocycle.failures, cocycle.inadmissible
            )?;
            writeln!(
                out,
                "axioms    {} triples over Jac(E,m), {} failures (assoc {}, comm {}, identity {}, inverse {})",
                axioms.triples,
                axioms.failures(),
                axioms.associativity,
                axioms.commutativity,
                axioms.identity,
                axioms.inverse
            )?;
            if cocycle.failures + axioms.failures() > 0 {
                return Err(Failure::Compute("verification failed".into()));
            }
            writeln!(out, "OK")?;
        }
        Command::Attack { params, order, seed } => {
            let gp = load(&params)?;
            if order == 0 || gp.jac_order()?.order() % order != 0 {
                return Err(Failure::Usage(format!("order {order} does not divide |Jac(E,m)| = {}", gp.jac_order()?)));
            }
            let jac = gp.group();
            let outcome = run_attack(&gp, order, &mut ChaCha20Rng::seed_from_u64(seed))
                .map_err(|e| Failure::Compute(e.to_string()))?;
            writeln!(out, "order      {}", outcome.order)?;
            writeln!(out, "generator  {}", jac.render(&outcome.generator))?;
            writeln!(out, "target     {}", jac.render(&outcome.target))?;
            writeln!(out, "exponent   {}", outcome.solution.x)?;
            let steps: Vec<String> = outcome.solution.transcript.iter().map(ToString::to_string).collect();
            writeln!(out, "transcript {}", steps.join(" "))?;
        }
        Command::Pairing { params, point } => {
            let gp = load(&params)?;
            let p = formats::parse_point(gp.base_curve(), &point)?;
            if p.is_infinity() {
                return Err(Failure::Usage("P must be an affine point".into()));
            }
            let outcome = run_pairing(&gp, &p)?;
            writeln!(out, "m          {}", outcome.m)?;
            writeln!(out, "genjac     {}", outcome.via_genjac)?;
            writeln!(out, "miller     {}", outcome.miller)?;
            writeln!(out, "reduced    {}", outcome.reduced)?;
            if !outcome.agree() {
                writeln!(out, "DIFFER")?;
                return Err(Failure::Compute("pairing values differ".into()));
            }
            writeln!(out, "EQUAL")?;
        }
        Command::Bench { params, seed, trials, scalar_bits, csv, no_timings } => {
            let gp = match &params {
                Some(path) => load(path)?,
                None => GenJacParams::generate(11, &mut ChaCha20Rng::seed_from_u64(seed))?,
            };
            let config = BenchConfig {
                trials,
                scalar_bits,
                seed,
                params_file: params.as_ref().map(|p| p.display().to_string()),
            };
            let report = run_benchmark(&gp, &config).map_err(|e| match e {
                crate::bench::BenchError::TooFewTrials(_) | crate::bench::BenchError::ScalarBits(_) => {
                    Failure::Usage(e.to_string())
                }
                e => Failure::Compute(e.to_string()),
            })?;
            out.write_all(report.render_table(!no_timings).as_bytes())?;
            if let Some(path) = csv {
                let file =
                    std::fs::File::create(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                report.write_csv(file, !no_timings).map_err(|e| Failure::Usage(e.to_string()))?;
            }
        }
    }
    Ok(())
}

/// Parse `argv` (including the program name) and run; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
