use std::process::ExitCode;

use angdecomp::fourier::{
    derivative_identity_delta, derivative_identity_onebyr, fourier_transform,
};
use angdecomp::render::{render_identity, render_transform, DecomposeReport, Format};
use angdecomp::verify::{self, Suite, VerifyConfig};
use angdecomp::Error;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

/// Exact angular-momentum decomposition of unit-vector tensor products.
#[derive(Parser)]
#[command(name = "angdecomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split the rank-L monomial into its angular-momentum components.
    Decompose {
        #[arg(long)]
        rank: u32,
        /// Only this component; must satisfy ell <= rank with rank - ell even.
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Fourier transform of p^n times the rank-L unit-vector monomial.
    Transform {
        #[arg(long, allow_negative_numbers = true)]
        power: i64,
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Traceless derivatives of 1/r or of the delta function.
    Identity {
        #[arg(long, value_enum)]
        kind: IdentityArg,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Latex,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Latex => Format::Latex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Onebyr,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Coefficients,
    Identities,
    Oracle,
    Laplacian,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Coefficients => Suite::Coefficients,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Laplacian => Suite::Laplacian,
            SuiteArg::All => Suite::All,
        }
    }
}

fn usage_error(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("angdecomp: {err}");
    ExitCode::from(EXIT_USAGE)
}

fn run(command: Command) -> ExitCode {
    match command {
        Command::Decompose { rank, ell, format } => match DecomposeReport::new(rank, ell) {
            Ok(report) => {
                print!("{}", report.render(format.into()));
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(e),
        },
        Command::Transform {
            power,
            rank,
            format,
        } => match fourier_transform(power, rank) {
            Ok(result) => {
                print!("{}", render_transform(&result, format.into()));
                ExitCode::SUCCESS
            }
            Err(e @ (Error::Divergent { .. } | Error::NotIntegrable { .. })) => {
                eprintln!("angdecomp: {e}");
                ExitCode::from(EXIT_DOMAIN)
            }
            Err(e) => usage_error(e),
        },
        Command::Identity { kind, k, format } => {
            let identity = match kind {
                IdentityArg::Onebyr => derivative_identity_onebyr(k),
                IdentityArg::Delta => derivative_identity_delta(k),
            };
            match identity {
                Ok(identity) => {
                    print!("{}", render_identity(&identity, format.into()));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Verify {
            suite,
            max_rank,
            seed,
            tol,
            format,
        } => {
            let config = VerifyConfig {
                max_rank,
                seed,
                tol,
            };
            let report = match verify::run(suite.into(), config) {
                Ok(report) => report,
                Err(e) => return usage_error(e),
            };
            match format {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Json => println!("{}", report.to_json()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                for check in report.failures() {
                    eprintln!(
                        "angdecomp: check failed: {} (error {:e} > bound {:e})",
                        check.name, check.observed_error, check.bound
                    );
                }
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse().command)
}
