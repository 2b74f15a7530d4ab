use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monocst::grid::Grid2;
use monocst::signal::QuadratureSpec;

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "monocst", version, about = "Slice and axial monogenic coherent state transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate U_s (slice) or U_a (axial) of a signal file over a grid.
    Transform {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the slice or axial plane wave with momentum p.
    Planewave {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites (comma separated, or `all`).
    Verify {
        #[arg(long, default_value = "all")]
        suites: String,
        /// Fill the seconds column of the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the Cauchy–Kowalewski polynomial X₀^{(j)} along x̄ = r e₁.
    Ckpoly {
        #[arg(long)]
        j: usize,
        #[command(flatten)]
        common: Common,
    },
    /// λ_k ladder constants next to quadrature-measured ratios.
    Radon {
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Slice,
    Axial,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every command.
#[derive(Debug, Args)]
pub struct Common {
    /// Number of generators; a comma separated list for `verify`.
    #[arg(long)]
    pub m: Option<String>,
    /// Signal JSON file.
    #[arg(long)]
    pub signal: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Sampling grid, `x0=a:b:n,r=a:b:n`.
    #[arg(long, default_value = "x0=-2:2:11,r=0:2:11")]
    pub grid: String,
    /// Tolerance: quadrature convergence for transforms, check tolerance for `verify`.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Quadrature nodes per axis.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub mc_samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Re-derive a restriction-property row and fail on mismatch.
    #[arg(long)]
    pub self_check: bool,
}

/// Validated settings of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub ms: Vec<usize>,
    pub signal: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub grid: Grid2,
    pub quadrature: QuadratureSpec,
    /// Check tolerance override for `verify`.
    pub tolerance: Option<f64>,
    pub self_check: bool,
}

impl RunConfig {
    pub fn from_common(c: &Common) -> Result<Self, CliError> {
        let ms = match &c.m {
            None => Vec::new(),
            Some(text) => text
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("--m expects integers, got {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        if let Some(&bad) = ms.iter().find(|&&m| !(2..=12).contains(&m)) {
            return Err(CliError::Usage(format!("--m {bad} outside 2..=12")));
        }
        let grid: Grid2 = c.grid.parse().map_err(|e| CliError::Usage(format!("--grid: {e}")))?;
        let mut quadrature = QuadratureSpec::default();
        if let Some(n) = c.nodes {
            quadrature.n_points = n;
        }
        if let Some(n) = c.mc_samples {
            quadrature.mc_samples = n;
        }
        if let Some(s) = c.seed {
            quadrature.seed = s;
        }
        if let Some(t) = c.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
        }
        quadrature.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Self {
            ms,
            signal: c.signal.clone(),
            out: c.out.clone(),
            format: c.format,
            grid,
            quadrature,
            tolerance: c.tol,
            self_check: c.self_check,
        })
    }

    /// The single m of a non-`verify` command.
    pub fn single_m(&self, default: usize) -> Result<usize, CliError> {
        match self.ms.as_slice() {
            [] => Ok(default),
            [m] => Ok(*m),
            _ => Err(CliError::Usage("this command takes a single --m".into())),
        }
    }

    /// Tolerance for self-check comparisons.
    pub fn check_tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(1e-9)
    }
}
