//! Batch driver over the verification suites. Exit codes: 0 when every
//! check passed, 1 when at least one check failed, 2 on usage or parse
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use discrimat::bezout::{self, Convention};
use discrimat::numerics::parse_complex;
use discrimat::poly::DEFAULT_TERM_BUDGET;
use discrimat::suites::{self, NumericParams};
use discrimat::Error;

#[derive(Parser)]
#[command(name = "discrimat", version, about = "discriminant-matrix verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine output only: suppress the human summary on stderr.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized sub-check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Term-count guard for the big symbolic determinants.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET)]
    term_budget: usize,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum ConventionArg {
    #[default]
    XMinusY,
    YMinusX,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::XMinusY => Convention::XMinusY,
            ConventionArg::YMinusX => Convention::YMinusX,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Emit {
    #[default]
    Report,
    Matrix,
    Det,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bezout-matrix identities for one degree.
    Bezout {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::XMinusY)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
    },
    /// Certify a discriminant matrix from files (polynomial text + matrix JSON).
    Saito {
        f_file: PathBuf,
        matrix_file: PathBuf,
        /// Skip the Monte Carlo squarefreeness sub-check.
        #[arg(long)]
        skip_squarefree: bool,
    },
    /// Pfaffian/dual-variety battery, exact or floating point.
    A4 {
        #[arg(long, conflicts_with = "numeric")]
        symbolic: bool,
        #[arg(long)]
        numeric: bool,
        /// Modulus in the upper half-plane, e.g. "1.1i" or "0.3+1.2i".
        #[arg(long, default_value = "1.1i")]
        tau: String,
        /// Tangent hyperplanes sampled per context.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// q-series terms for the invariants.
        #[arg(long, default_value_t = 64)]
        terms: usize,
        /// On-divisor residual tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Finite-difference step for the derivative comparison.
        #[arg(long, default_value_t = 1e-4)]
        fd_step: f64,
        /// Cache directory for det A (defaults to the system temp dir).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Every suite in registry order.
    All {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn write_output(out: &Option<PathBuf>, json_text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, json_text),
        None => {
            println!("{json_text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Bezout { n, convention, emit } => match emit {
            Emit::Det => {
                let b = bezout::bezout_matrix(n, convention.into())?;
                let det = b.determinant_budget(cli.term_budget)?;
                write_output(&cli.out, &det.to_string())?;
                Ok(ExitCode::SUCCESS)
            }
            Emit::Matrix => {
                let b = bezout::bezout_matrix(n, convention.into())?;
                let bp = bezout::modified_bezout_matrix(n, convention.into())?;
                let json = serde_json::json!({
                    "B": b.to_file(),
                    "Bprime": bp.to_file(),
                });
                write_output(&cli.out, &serde_json::to_string_pretty(&json)?)?;
                Ok(ExitCode::SUCCESS)
            }
            Emit::Report => {
                let rep = suites::suite_bezout(n, convention.into(), cli.seed)?;
                if !cli.json {
                    eprint!("{}", rep.summary());
                }
                write_output(&cli.out, &rep.to_json())?;
                Ok(if rep.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                })
            }
        },
        Cmd::Saito {
            f_file,
            matrix_file,
            skip_squarefree,
        } => {
            let f_text = std::fs::read_to_string(&f_file)?;
            let matrix_json = std::fs::read_to_string(&matrix_file)?;
            let rep = suites::suite_saito(&f_text, &matrix_json, !skip_squarefree, cli.seed)?;
            if !cli.json {
                eprintln!(
                    "saito: overall = {:?}, scalar = {:?}, failures = {:?}",
                    rep.overall, rep.scalar, rep.divisibility_failures
                );
            }
            write_output(&cli.out, &rep.to_json())?;
            Ok(if rep.overall == discrimat::saito::Overall::Failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::A4 {
            symbolic,
            numeric,
            tau,
            samples,
            terms,
            tol,
            fd_step,
            cache_dir,
        } => {
            let reports = if numeric {
                let params = NumericParams {
                    tau: parse_complex(&tau)?,
                    samples,
                    terms,
                    tol,
                    fd_step,
                    seed: cli.seed,
                    cache_dir,
                };
                if params.tau.im <= 0.0 {
                    return Err(Error::Domain(format!(
                        "tau = {} is not in the upper half-plane",
                        params.tau
                    )));
                }
                suites::suite_a4_numeric(&params)?
            } else {
                // --symbolic is the default mode
                let _ = symbolic;
                suites::suite_a4_symbolic(cache_dir.as_deref(), cli.term_budget)?
            };
            if !cli.json {
                eprint!("{}", suites::reports_summary(&reports));
            }
            write_output(&cli.out, &suites::reports_to_json(&reports))?;
            Ok(if suites::all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::All { cache_dir } => {
            let reports = suites::run_all(cli.seed, cache_dir.as_deref(), cli.term_budget)?;
            if !cli.json {
                eprint!("{}", suites::reports_summary(&reports));
            }
            write_output(&cli.out, &suites::reports_to_json(&reports))?;
            Ok(if suites::all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
