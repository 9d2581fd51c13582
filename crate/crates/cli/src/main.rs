//! `mirrorkit` — command-line front end for the verification toolkit.
//!
//! Subcommands: `verify <suite>` runs a check suite and reports pass/fail,
//! `dims` tabulates A/B dimension comparisons over twist grids, `psi`
//! prints thimble decompositions, `branch` and `jet-jacobian` expose the
//! covering-geometry calculators, and `report` runs everything.

mod config;
mod report;
mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{resolve, FileConfig, FlagOverrides, IntRange, OutputFormat, RunConfig};
use mirrorkit_core::disc_numerics::{branch_degree, jet_jacobian_at_zero, BranchData};
use mirrorkit_core::fs_combinatorics::{dim_grid, psi_decompose, DimReport};
use report::VerificationReport;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "mirrorkit",
    version,
    about = "Exact and numerical checks for a mirror pair of a degenerate hypersurface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonFlags {
    /// dimension or dimension range, e.g. 2 or 1..3
    #[arg(long)]
    n: Option<IntRange>,
    /// source twist or twist range, e.g. -4..4
    #[arg(long, allow_hyphen_values = true)]
    i: Option<IntRange>,
    /// target twist / winding or range
    #[arg(long, allow_hyphen_values = true)]
    j: Option<IntRange>,
    /// randomized-trial count
    #[arg(long)]
    trials: Option<usize>,
    /// master seed; every randomized check derives from it
    #[arg(long)]
    seed: Option<u64>,
    /// gradient-norm tolerance of the critical-point solver
    #[arg(long)]
    newton_tol: Option<f64>,
    /// clustering radius on critical values
    #[arg(long)]
    cluster_radius: Option<f64>,
    /// finite-difference acceptance tolerance
    #[arg(long)]
    fd_tol: Option<f64>,
    /// text, json, or csv (csv only where a table is emitted)
    #[arg(long)]
    format: Option<OutputFormat>,
    /// write output to a file instead of stdout
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// omit the timestamp from reports, for byte-identical reruns
    #[arg(long)]
    no_timestamp: bool,
    /// JSON config file; flags given here still win
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Output-side flags for the calculators that take their own parameters.
#[derive(Args, Default)]
struct OutFlags {
    /// text or json
    #[arg(long)]
    format: Option<OutputFormat>,
    /// write output to a file instead of stdout
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// JSON config file; flags given here still win
    #[arg(long)]
    config: Option<PathBuf>,
}

impl OutFlags {
    fn widen(&self) -> CommonFlags {
        CommonFlags {
            format: self.format,
            output: self.output.clone(),
            config: self.config.clone(),
            ..CommonFlags::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Superpotential,
    Hms,
    Discs,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report one record per check
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// A/B dimension comparison over twist pairs
    Dims {
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Decompose base thimbles into cover thimbles
    Psi {
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Branch degree of an anticanonical-multiple projection
    Branch {
        /// ambient dimension
        #[arg(long)]
        n: usize,
        /// very-ampleness multiple of the anticanonical class
        #[arg(long)]
        m: u64,
        /// degree of the covering variety
        #[arg(long)]
        degx: u64,
        #[command(flatten)]
        flags: OutFlags,
    },
    /// Finite-difference Jacobian of the jet map at the origin
    JetJacobian {
        /// degree of the disc endomorphisms
        #[arg(long)]
        d: usize,
        /// finite-difference acceptance tolerance
        #[arg(long)]
        fd_tol: Option<f64>,
        #[command(flatten)]
        flags: OutFlags,
    },
    /// Run every suite and emit the full report
    Report {
        #[command(flatten)]
        flags: CommonFlags,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify { suite, flags } => with_config(&flags, |cfg| {
            let checks = match suite {
                SuiteName::Superpotential => suites::superpotential_suite(cfg),
                SuiteName::Hms => suites::hms_suite(cfg),
                SuiteName::Discs => suites::discs_suite(cfg),
                SuiteName::All => suites::full_suite(cfg),
            };
            emit_report(cfg, VerificationReport::new(cfg, checks))
        }),
        Command::Report { flags } => with_config(&flags, |cfg| {
            let checks = suites::full_suite(cfg);
            emit_report(cfg, VerificationReport::new(cfg, checks))
        }),
        Command::Dims { flags } => with_config(&flags, |cfg| {
            let mut rows: Vec<DimReport> = Vec::new();
            for n in cfg.n.iter() {
                rows.extend(dim_grid(
                    n as usize,
                    (cfg.i.start, cfg.i.end),
                    (cfg.j.start, cfg.j.end),
                ));
            }
            let all_match = rows.iter().all(|r| r.is_match);
            let body = match cfg.format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
                    s.push('\n');
                    s
                }
                OutputFormat::Csv => {
                    let mut s = String::from("n,i,j,a_side,b_side,match\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            r.n, r.i, r.j, r.a_side, r.b_side, r.is_match
                        ));
                    }
                    s
                }
                OutputFormat::Text => {
                    if rows.len() == 1 {
                        let r = &rows[0];
                        format!("a_side {}, b_side {}\n", r.a_side, r.b_side)
                    } else {
                        let mut s = String::new();
                        for r in &rows {
                            s.push_str(&format!(
                                "n={} i={} j={}: a_side {}, b_side {}, match {}\n",
                                r.n, r.i, r.j, r.a_side, r.b_side, r.is_match
                            ));
                        }
                        s
                    }
                }
            };
            write_out(cfg, &body)?;
            Ok(if all_match {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }),
        Command::Psi { flags } => with_config(&flags, |cfg| {
            let single = cfg.n.len() == 1 && cfg.j.len() == 1;
            let mut body = String::new();
            let mut json_rows = Vec::new();
            for n in cfg.n.iter() {
                for j in cfg.j.iter() {
                    let parts = psi_decompose(n as usize, j);
                    let cells: Vec<String> =
                        parts.iter().map(|t| format!("({},{})", t.k, t.i)).collect();
                    let degrees: Vec<String> = parts
                        .iter()
                        .map(|t| t.mirror_degree(n as usize).to_string())
                        .collect();
                    let line = format!("{} degrees {{{}}}", cells.join(" "), degrees.join(","));
                    if single {
                        body.push_str(&line);
                        body.push('\n');
                    } else {
                        body.push_str(&format!("n={n} j={j}: {line}\n"));
                    }
                    json_rows.push(serde_json::json!({
                        "n": n, "j": j, "thimbles": parts,
                    }));
                }
            }
            let out = match cfg.format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&json_rows).expect("rows serialize");
                    s.push('\n');
                    s
                }
                OutputFormat::Text => body,
                OutputFormat::Csv => return Err("psi has no csv form".to_string()),
            };
            write_out(cfg, &out)?;
            Ok(EXIT_OK)
        }),
        Command::Branch { n, m, degx, flags } => with_config(&flags.widen(), |cfg| {
            let data = BranchData { n, m, deg_x: degx };
            let b = branch_degree(&data).map_err(|e| e.to_string())?;
            let out = match cfg.format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&b).expect("report serializes");
                    s.push('\n');
                    s
                }
                _ => format!(
                    "deg B = {}\ninteger: {}, divisible by n+1 = {}: {}\n",
                    b.value,
                    b.is_integer,
                    n + 1,
                    b.divisible_by_n_plus_1
                ),
            };
            write_out(cfg, &out)?;
            Ok(EXIT_OK)
        }),
        Command::JetJacobian { d, fd_tol, flags } => {
            let mut common = flags.widen();
            common.fd_tol = fd_tol;
            with_config(&common, |cfg| {
                let r = jet_jacobian_at_zero(d, cfg.fd_tol).map_err(|e| e.to_string())?;
                let out = match cfg.format {
                    OutputFormat::Json => {
                        let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
                        s.push('\n');
                        s
                    }
                    _ => format!(
                        "d = {}\nobserved slots: {:?}\nsigned permutation: {}\n\
                     anti-holomorphic max: {:.3e}\n|det| = {:.6}\nregular: {}\n",
                        r.d,
                        r.observed_slots,
                        r.signed_permutation,
                        r.antiholomorphic_max,
                        r.det_magnitude,
                        r.regular
                    ),
                };
                write_out(cfg, &out)?;
                Ok(if r.regular {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                })
            })
        }
    }
}

/// Load the config file if given, fold in the flags, run the body; usage
/// problems exit 2.
fn with_config(flags: &CommonFlags, body: impl FnOnce(&RunConfig) -> Result<i32, String>) -> i32 {
    let file_config = match &flags.config {
        None => None,
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|s| serde_json::from_str::<FileConfig>(&s).map_err(|e| e.to_string()))
        {
            Ok(fc) => Some(fc),
            Err(e) => {
                eprintln!("mirrorkit: cannot read config {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
    };
    let overrides = FlagOverrides {
        n: flags.n,
        i: flags.i,
        j: flags.j,
        trials: flags.trials,
        seed: flags.seed,
        newton_tol: flags.newton_tol,
        cluster_radius: flags.cluster_radius,
        fd_tol: flags.fd_tol,
        format: flags.format,
        output: flags.output.clone(),
        no_timestamp: flags.no_timestamp,
    };
    match resolve(file_config.as_ref(), &overrides) {
        Err(e) => {
            eprintln!("mirrorkit: {e}");
            EXIT_USAGE
        }
        Ok(cfg) => match body(&cfg) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("mirrorkit: {e}");
                EXIT_USAGE
            }
        },
    }
}

fn emit_report(cfg: &RunConfig, report: VerificationReport) -> Result<i32, String> {
    let body = match cfg.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
        OutputFormat::Csv => return Err("verification reports have no csv form".to_string()),
    };
    write_out(cfg, &body)?;
    Ok(if report.any_failed() {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn write_out(cfg: &RunConfig, body: &str) -> Result<(), String> {
    match &cfg.output {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}
