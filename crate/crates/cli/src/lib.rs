//! Command-line front end: tables, verification suite, simulation and
//! information-gain reports, as CSV or JSON.

pub mod report;
pub mod verify;

use std::f64::consts::PI;
use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use spinlab_core::codes::{CoherentCode, SphereGrid};
use spinlab_core::fidelity::{
    asymptotic_table, fidelity_optimal_qubits, fidelity_parallel, max_fidelity_rotation,
};
use spinlab_core::infogain::{
    alpha_scan, info_gain_closed, info_gain_closed_dim, info_gain_matched, maximize_alpha,
};
use spinlab_core::numerics::bessel_j0_first_zero;
use spinlab_core::povm::{octahedron_povm, povm_fidelity_exact, quadrature_povm, simulate};

pub use report::{format_number, Cell, Report};
pub use verify::Level;

#[derive(Debug, Parser)]
#[command(
    name = "spinlab",
    version,
    about = "Direction encoding through spin channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PovmKind {
    Grid,
    Octahedron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InfoMode {
    Closed,
    Quadrature,
    AlphaScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal fidelities: rotation codes, parallel spins, unrestricted.
    Table {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..=1000))]
        max_n: u64,
    },
    /// Cross-checks between independent routes; exit code 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
    /// Monte Carlo run of encode, measure and guess.
    Simulate {
        /// Number of spins.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=12))]
        n: u64,
        #[arg(long, value_enum, default_value_t = PovmKind::Grid)]
        povm: PovmKind,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Average information gain.
    Infogain {
        #[arg(long, value_enum, default_value_t = InfoMode::Closed)]
        mode: InfoMode,
    },
    /// `N^2 (1 - F)` against the square of the first zero of `J0`.
    Asymptotic {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(10..))]
        max_n: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Arguments that parse but do not make sense together.
    Usage(String),
    Compute(spinlab_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spinlab_core::Error> for CliError {
    fn from(e: spinlab_core::Error) -> Self {
        CliError::Compute(e)
    }
}

/// A rendered report and whether every verification in it passed.
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let report = match *command {
        Command::Table { max_n } => cmd_table(max_n as usize)?,
        Command::Verify { level } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let checks = verify::run(level);
            let ok = checks.iter().all(|c| c.passed);
            let mut report = Report::new(vec!["check", "residual", "tolerance", "status"]);
            for c in checks {
                report.push(vec![
                    c.name.into(),
                    c.residual.into(),
                    c.tolerance.into(),
                    if c.passed { "pass" } else { "FAIL" }.into(),
                ]);
            }
            return Ok(Outcome { report, ok });
        }
        Command::Simulate {
            n,
            povm,
            shots,
            seed,
        } => cmd_simulate(n as usize, povm, shots, seed)?,
        Command::Infogain { mode } => cmd_infogain(mode)?,
        Command::Asymptotic { max_n } => cmd_asymptotic(max_n as usize)?,
    };
    Ok(Outcome { report, ok: true })
}

pub fn cmd_table(max_n: usize) -> Result<Report, CliError> {
    if !(1..=1000).contains(&max_n) {
        return Err(CliError::Usage(format!("max-n {max_n} outside 1..=1000")));
    }
    let mut r = Report::new(vec!["n", "f_rotation", "f_parallel", "f_optimal"]);
    for n in 1..=max_n {
        r.push(vec![
            n.into(),
            max_fidelity_rotation(n)?.0.into(),
            fidelity_parallel(n).into(),
            fidelity_optimal_qubits(n).into(),
        ]);
    }
    Ok(r)
}

pub fn cmd_simulate(n: usize, povm: PovmKind, shots: u64, seed: u64) -> Result<Report, CliError> {
    let (estimate, reference) = match povm {
        PovmKind::Octahedron => {
            if n != 2 {
                return Err(CliError::Usage(
                    "the octahedron measurement acts on the spin-3/2 code of two qubits; use --n 2"
                        .into(),
                ));
            }
            let code = CoherentCode::with_dimension(4)?;
            let p = octahedron_povm();
            let reference = povm_fidelity_exact(&code, &p, &SphereGrid::exact_for(code.spin()))?;
            (simulate(&code, &p, shots, seed)?, reference)
        }
        PovmKind::Grid => {
            let (reference, code) = max_fidelity_rotation(n)?;
            let p = quadrature_povm(n, n + 2, n + 2)?;
            (simulate(&code, &p, shots, seed)?, reference)
        }
    };
    let kind = match povm {
        PovmKind::Grid => "grid",
        PovmKind::Octahedron => "octahedron",
    };
    let mut r = Report::new(vec![
        "n",
        "povm",
        "shots",
        "seed",
        "f_hat",
        "stderr",
        "reference",
        "z",
    ]);
    r.push(vec![
        n.into(),
        kind.into(),
        shots.into(),
        seed.into(),
        estimate.mean.into(),
        estimate.stderr.into(),
        reference.into(),
        estimate.z_score(reference).into(),
    ]);
    Ok(r)
}

/// Largest qubit count cross-checked by quadrature (`d = 32`).
const QUADRATURE_MAX_N: usize = 5;

pub fn cmd_infogain(mode: InfoMode) -> Result<Report, CliError> {
    match mode {
        InfoMode::Closed => {
            let mut r = Report::new(vec!["n", "d", "i_av"]);
            for n in 1..=8usize {
                r.push(vec![
                    n.into(),
                    (1usize << n).into(),
                    info_gain_closed(n).into(),
                ]);
            }
            Ok(r)
        }
        InfoMode::Quadrature => {
            let mut r = Report::new(vec!["n", "d", "i_closed", "i_quadrature", "difference"]);
            for n in 1..=QUADRATURE_MAX_N {
                let d = 1usize << n;
                let closed = info_gain_closed_dim(d as f64);
                let quad = info_gain_matched(&CoherentCode::with_dimension(d)?)?;
                r.push(vec![
                    n.into(),
                    d.into(),
                    closed.into(),
                    quad.into(),
                    (quad - closed).into(),
                ]);
            }
            Ok(r)
        }
        InfoMode::AlphaScan => {
            let mut r = Report::new(vec!["kind", "alpha_over_pi", "i_av"]);
            for (a, g) in alpha_scan(65)? {
                r.push(vec!["scan".into(), a.into(), g.into()]);
            }
            let (alpha, gain) = maximize_alpha(1e-6)?;
            r.push(vec!["max".into(), (alpha / PI).into(), gain.into()]);
            Ok(r)
        }
    }
}

pub fn cmd_asymptotic(max_n: usize) -> Result<Report, CliError> {
    if max_n < 10 {
        return Err(CliError::Usage(format!(
            "max-n {max_n} must be at least 10"
        )));
    }
    let xi = bessel_j0_first_zero()?;
    let mut r = Report::new(vec!["n", "f", "scaled_gap", "xi_squared"]);
    for row in asymptotic_table(max_n)? {
        r.push(vec![
            row.nspins.into(),
            row.fidelity.into(),
            row.scaled_gap.into(),
            (xi * xi).into(),
        ]);
    }
    Ok(r)
}
