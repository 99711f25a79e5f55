//! Command-line driver: configure (p, n, m, N, theta), run verification
//! suites, and move symbol/kernel artifacts through the quantization, star
//! product, and reconstruction maps.
//!
//! Exit codes: 0 success, 1 failing checks, 2 invalid configuration/input.

use clap::{Args, Parser, Subcommand};
use fuchs::artifact::{self, Provenance};
use fuchs::config::RunConfig;
use fuchs::quantize::{quantize_direct, reconcile};
use fuchs::report::Report;
use fuchs::star::star_via_operators;
use fuchs::suites::{run_suites, Suite};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fuchs",
    version,
    about = "exact p-adic pseudo-differential calculus on principal unit groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Odd prime p of the base field.
    #[arg(long, default_value_t = 3)]
    prime: u64,
    /// Level n of the principal unit group U_n.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// u-scale m: vectors and symbols are constant on U_m-cosets.
    #[arg(long = "u-scale", alias = "m", default_value_t = 3)]
    u_scale: u32,
    /// t-cutoff N: symbols are supported in the N-truncated Gamma grid.
    #[arg(long = "t-cutoff", alias = "big-n", default_value_t = 2)]
    t_cutoff: u32,
    /// Little-endian digits of the unit theta (first digit nonzero).
    #[arg(long = "theta-digits", value_delimiter = ',', default_value = "1")]
    theta_digits: Vec<u32>,
    /// Seed for all randomized checks; fixed seed means identical reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplier on every default tolerance.
    #[arg(long = "tol", default_value_t = 1.0)]
    tol_factor: f64,
    /// Fail instead of auto-refining resolutions.
    #[arg(long)]
    strict: bool,
    /// Include wall-clock timings in reports (breaks byte-reproducibility).
    #[arg(long)]
    timings: bool,
}

impl ConfigArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            prime: self.prime,
            level: self.n,
            u_scale: self.u_scale,
            t_cutoff: self.t_cutoff,
            theta_digits: self.theta_digits.clone(),
            seed: self.seed,
            tol_factor: self.tol_factor,
            strict: self.strict,
            timings: self.timings,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a machine-readable report.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Suites: padic, harmonic, repn, quantize, star, calculus, cv, all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Report format.
        #[arg(long, default_value = "json")]
        format: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantize a symbol file into an operator kernel file.
    Quantize {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Star product of two symbol files.
    Star {
        input_a: PathBuf,
        input_b: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Reconstruct the symbol of an operator kernel from coherent matrix
    /// coefficients.
    Reconstruct {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Negative decay probe for the coefficient-decay diagnostic.
        #[arg(long = "s-probe", default_value_t = -3.0, allow_hyphen_values = true)]
        s_probe: f64,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("FUCHS_NUM_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> fuchs::Result<ExitCode> {
    match cli.command {
        Command::Verify {
            config,
            suite,
            format,
            out,
        } => {
            let cfg = config.to_config();
            cfg.validate()?;
            let mut suites = Vec::new();
            for name in &suite {
                suites.extend(Suite::parse(name)?);
            }
            suites.dedup_by_key(|s| s.name());
            let checks = run_suites(&suites, &cfg)?;
            let report = Report::new(
                cfg,
                suites.iter().map(|s| s.name().to_string()).collect(),
                checks,
            );
            let body = match format.as_str() {
                "json" => report.to_json(),
                "csv" => report.to_csv(),
                other => {
                    return Err(fuchs::Error::InvalidParams(format!(
                        "unknown format '{other}'"
                    )))
                }
            };
            emit(&body, out.as_deref())?;
            if report.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                for c in report.failures() {
                    eprintln!(
                        "FAIL {}: lhs={:.12e} rhs={:.12e} tol={:.1e}",
                        c.check, c.lhs, c.rhs, c.tol
                    );
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Quantize { input, out, config } => {
            let cfg = config.to_config();
            let sym = artifact::read_symbol(&read(&input)?)?;
            let kernel = quantize_direct(&sym)?;
            let trace = vec![format!(
                "quantize: (m, N) = ({}, {}) -> kernel scale M = {}",
                sym.u_scale(),
                sym.t_cutoff(),
                kernel.kernel_scale()
            )];
            let prov = Provenance {
                command: "quantize".into(),
                config: cfg.scale_summary(),
                resolution_trace: trace,
            };
            emit(&artifact::write_kernel(&kernel, Some(prov)), Some(&out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Star {
            input_a,
            input_b,
            out,
            config,
        } => {
            let cfg = config.to_config();
            let a = artifact::read_symbol(&read(&input_a)?)?;
            let b = artifact::read_symbol(&read(&input_b)?)?;
            let mut trace = Vec::new();
            if a.u_scale() != b.u_scale() || a.t_cutoff() != b.t_cutoff() {
                if cfg.strict {
                    return Err(fuchs::Error::Resolution(format!(
                        "strict mode: inputs at ({}, {}) and ({}, {}) need reconciliation",
                        a.u_scale(),
                        a.t_cutoff(),
                        b.u_scale(),
                        b.t_cutoff()
                    )));
                }
                let (ra, _) = reconcile(&a, &b)?;
                trace.push(format!(
                    "reconcile: inputs refined to (m, N) = ({}, {})",
                    ra.u_scale(),
                    ra.t_cutoff()
                ));
            }
            let prod = star_via_operators(&a, &b)?;
            trace.push(format!(
                "star: output resolution (m, N) = ({}, {})",
                prod.u_scale(),
                prod.t_cutoff()
            ));
            let prov = Provenance {
                command: "star".into(),
                config: cfg.scale_summary(),
                resolution_trace: trace,
            };
            emit(&artifact::write_symbol(&prod, Some(prov)), Some(&out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct {
            input,
            out,
            s_probe,
            config,
        } => {
            let cfg = config.to_config();
            let (params, theta) = cfg.validate()?;
            let kernel = artifact::read_kernel(&read(&input)?)?;
            if kernel.params() != params {
                return Err(fuchs::Error::GridMismatch(
                    "kernel (prime, n) does not match the configuration".into(),
                ));
            }
            let (sym, diag) = fuchs::calculus::reconstruct_symbol(&kernel, &theta, s_probe)?;
            if diag.decay_warning {
                eprintln!(
                    "warning: coefficient decay check failed (leakage {:.3e}); result may be unreliable",
                    diag.leakage
                );
            }
            let prov = Provenance {
                command: "reconstruct".into(),
                config: cfg.scale_summary(),
                resolution_trace: vec![format!(
                    "reconstruct: kernel scale M = {} -> symbol resolution ({}, {}); decay constant {:.6e}",
                    kernel.kernel_scale(),
                    sym.u_scale(),
                    sym.t_cutoff(),
                    diag.decay_constant
                )],
            };
            emit(&artifact::write_symbol(&sym, Some(prov)), Some(&out))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read(path: &std::path::Path) -> fuchs::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| fuchs::Error::InvalidParams(format!("cannot read {}: {e}", path.display())))
}

fn emit(body: &str, out: Option<&std::path::Path>) -> fuchs::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| {
            fuchs::Error::InvalidParams(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}
