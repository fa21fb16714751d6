//! Batch command-line front end.
//!
//! Every subcommand reads one scenario file; the subcommand must agree with
//! the scenario's `analysis` field. Exit codes: 0 success, 2 inconclusive
//! certificate, 3 inadmissible wave, 4 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mhd_wavekit::scenario::{load_scenario, run_scenario, AGrid, Overrides};
use mhd_wavekit::Tolerance;

#[derive(Parser)]
#[command(
    name = "mhd-wavekit",
    version,
    about = "Wave curves and non-contraction certificates for planar isentropic MHD"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (self-describing JSON)
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory (overrides the scenario's output.dir)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Absolute tolerance override
    #[arg(long)]
    tol_abs: Option<f64>,
    /// Relative tolerance override
    #[arg(long)]
    tol_rel: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, eigenvectors and genuine-nonlinearity derivatives
    Fields {
        #[command(flatten)]
        common: CommonArgs,
        /// Also run the eigen-residual suite on the state
        #[arg(long)]
        check: bool,
    },
    /// Solve the requested family-3/4 shock
    Hugoniot {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Construct the requested family-2/5 contact
    Contact {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Integrate a family-1/6 rarefaction curve from the left state
    Rarefaction {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Entropy dissipation of the requested wave, both routes
    Dissipation {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Non-contraction certificate at a single weight
    Certify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Certificates across a weight grid
    #[command(name = "sweep-a")]
    SweepA {
        #[command(flatten)]
        common: CommonArgs,
        /// Weight grid as LO,HI,N (log-spaced)
        #[arg(long, value_parser = parse_grid)]
        a_grid: Option<AGrid>,
    },
}

fn parse_grid(s: &str) -> Result<AGrid, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected LO,HI,N".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("hi: {e}"))?;
    let n: usize = parts[2].trim().parse().map_err(|e| format!("n: {e}"))?;
    Ok(AGrid { lo, hi, n })
}

fn verbosity() -> u8 {
    match std::env::var("MHD_WAVEKIT_LOG").ok().as_deref() {
        Some("debug") => 2,
        Some("info") => 1,
        _ => 0,
    }
}

fn run(command: &Command) -> mhd_wavekit::Result<Vec<String>> {
    let (common, expected, check_fields, a_grid) = match command {
        Command::Fields { common, check } => (common, "fields", *check, None),
        Command::Hugoniot { common } => (common, "hugoniot", false, None),
        Command::Contact { common } => (common, "contact", false, None),
        Command::Rarefaction { common } => (common, "rarefaction", false, None),
        Command::Dissipation { common } => (common, "dissipation", false, None),
        Command::Certify { common } => (common, "certify", false, None),
        Command::SweepA { common, a_grid } => (common, "sweep-a", false, *a_grid),
    };

    let sc = load_scenario(&common.scenario)?;
    if sc.analysis.name() != expected {
        return Err(mhd_wavekit::WaveKitError::Schema(format!(
            "scenario analysis is '{}' but the '{}' subcommand was invoked",
            sc.analysis.name(),
            expected
        )));
    }

    let tol = match (common.tol_abs, common.tol_rel) {
        (None, None) => None,
        (abs, rel) => {
            let d = Tolerance::default();
            Some(Tolerance::new(abs.unwrap_or(d.abs), rel.unwrap_or(d.rel)))
        }
    };
    let overrides = Overrides {
        out_dir: common.out.clone(),
        tol,
        a_grid,
        check_fields,
    };

    if verbosity() >= 1 {
        eprintln!(
            "mhd-wavekit: running '{}' from {}",
            expected,
            common.scenario.display()
        );
    }
    let outcome = run_scenario(&common.scenario, &overrides)?;
    if verbosity() >= 2 {
        for a in &outcome.artifacts {
            eprintln!("mhd-wavekit: wrote {}", a.display());
        }
    }
    Ok(outcome.summary)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(summary) => {
            for line in summary {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mhd-wavekit: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
