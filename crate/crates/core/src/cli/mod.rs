//! Command-line front end. Every command writes one artifact (or, for
//! `figure`, one directory of CSV files) and reports through its exit code.

mod commands;
mod figures;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::geometry::DeformParam;

pub use output::Format;

/// Environment variable that replaces the pass/fail threshold of the
/// invoked command.
pub const TOL_ENV: &str = "CURVOSC_TOL";

pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 2;
    pub const ADMISSIBILITY: i32 = 3;
    pub const ROUTE_MISMATCH: i32 = 4;
    pub const ACCURACY: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "curvosc", version, about = "Harmonic oscillator on spaces of constant curvature")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Deformation parameter, read exactly as a decimal (negative: sphere, positive: hyperbolic plane).
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    pub lambda: String,
    /// Frequency of the classical oscillator.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (directory for `figure`); standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Y", alias = "y")]
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Recursion,
    Rodrigues,
    Genfunc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies e_{m,n} ordered by level.
    Energies {
        /// Keep states with e <= E_MAX.
        #[arg(long, conflicts_with = "n_max")]
        e_max: Option<f64>,
        /// Keep levels N = m + n <= N_MAX.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Exact coefficients of a deformed Hermite polynomial, cross-checked across routes.
    Poly {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        index: usize,
        /// Z quantum number attached to the Y family.
        #[arg(long, default_value_t = 0)]
        m_partner: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Recursion)]
        route: RouteArg,
    },
    /// Gram matrix of the Hermite functions under their orthogonality weight.
    Ortho {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max_index: usize,
        #[arg(long, default_value_t = 0)]
        m_partner: usize,
    },
    /// ODE residuals and finite-difference Hamiltonian checks for one state.
    Eigencheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Points per axis of the interior grid.
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
    /// Runge-Kutta trajectory of the classical oscillator.
    Classical {
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        vx0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        vy0: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
    /// Data behind figures I to VII, written as CSV files into `--out` (default: current directory).
    Figure { id: String },
}

/// Map a library error onto the exit-code contract.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Admissibility(_) => exit::ADMISSIBILITY,
        Error::RouteMismatch(_) => exit::ROUTE_MISMATCH,
        Error::Accuracy { .. } => exit::ACCURACY,
        Error::Domain(_)
        | Error::UnboundedEnumeration(_)
        | Error::TrajectoryExit { .. }
        | Error::Fit(_)
        | Error::InvalidArgument(_)
        | Error::Io(_)
        | Error::Json(_) => exit::INVALID,
    }
}

/// Threshold override from the environment, if any.
fn tolerance_override() -> Result<Option<f64>, Error> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(None),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(Some(v)),
            _ => Err(Error::InvalidArgument(format!("{TOL_ENV} must be a positive number, got {text:?}"))),
        },
    }
}

pub fn execute(cli: &Cli) -> Result<(), Error> {
    let lam = DeformParam::from_decimal(&cli.global.lambda)?;
    let tol = tolerance_override()?;
    let g = &cli.global;
    match &cli.command {
        Command::Energies { e_max, n_max } => commands::energies(&lam, *e_max, *n_max, g),
        Command::Poly {
            family,
            index,
            m_partner,
            route,
        } => commands::poly(&lam, *family, *index, *m_partner, *route, tol, g),
        Command::Ortho {
            family,
            max_index,
            m_partner,
        } => commands::ortho(&lam, *family, *max_index, *m_partner, tol, g),
        Command::Eigencheck { m, n, grid } => commands::eigencheck(&lam, *m, *n, *grid, tol, g),
        Command::Classical {
            x0,
            y0,
            vx0,
            vy0,
            dt,
            steps,
        } => commands::classical(&lam, [*x0, *y0, *vx0, *vy0], *dt, *steps, g),
        Command::Figure { id } => figures::emit(id, g.out.as_deref()),
    }
}

/// Parse `args`, run the command and return the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
