//! Command-line definitions. All runs are configured through flags; file
//! formats are documented in the library modules that own them.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "pauli",
    about = "Ground-state bounds and spectra of the semiclassical Dirichlet Pauli operator",
    version
)]
pub struct Cli {
    /// Worker threads for sweeps and basis solves (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GeometryArgs {
    /// Annulus inner and outer radius (rho = 0 for the disk).
    #[arg(long, num_args = 2, value_names = ["RHO", "R"], conflicts_with = "mask")]
    pub annulus: Option<Vec<f64>>,

    /// Mask file: line 1 `nx ny x0 y0 dx`, then ny rows of I/O characters.
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Constant magnetic field strength.
    #[arg(long = "B", default_value_t = 1.0)]
    pub b: f64,

    /// Radial field table (CSV `r,B`, strictly increasing r); annulus only.
    #[arg(long = "B-table", conflicts_with = "b_grid")]
    pub b_table: Option<PathBuf>,

    /// Grid-sampled field matching the mask grid (CSV, row-major, nx columns).
    #[arg(long = "B-grid")]
    pub b_grid: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output path prefix; without it results go to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Write an SVG chart alongside the data files.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generating functions: psi samples, extrema, oscillation, C/p/Phi maps.
    Potential {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        field: FieldArgs,
        /// Log coefficient C; repeatable; `crit` selects the critical value.
        #[arg(long = "C", allow_hyphen_values = true)]
        c: Vec<String>,
        /// Boundary traces p_1,...,p_k for mask domains.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        traces: Option<Vec<f64>>,
        /// Radial sample count for CSV/SVG output.
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        /// Grid resolution (nodes per unit length) for annulus grid output.
        #[arg(long = "grid-n")]
        grid_n: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Eigenvalue sweep over the Aharonov-Bohm parameter kappa.
    Sweep {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        field: FieldArgs,
        /// Semiclassical parameter(s), comma separated.
        #[arg(long = "h", value_delimiter = ',', required = true)]
        h: Vec<f64>,
        /// Explicit kappa grid, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "kappa_range", allow_hyphen_values = true)]
        kappa: Option<Vec<f64>>,
        /// Kappa interval endpoints (default -1.5h to 1.5h).
        #[arg(long = "kappa-range", num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        kappa_range: Option<Vec<f64>>,
        /// Number of kappa grid points.
        #[arg(long, default_value_t = 61)]
        points: usize,
        /// Angular momentum window `LO HI`, or `auto`.
        #[arg(long = "m-window", num_args = 1..=2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        m_window: Option<Vec<String>>,
        /// Radial discretization intervals.
        #[arg(long = "n-r", default_value_t = 2048)]
        n_r: usize,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Evaluate all ground-state energy bounds into a report.
    Bounds {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "h", value_delimiter = ',', required = true)]
        h: Vec<f64>,
        /// Aharonov-Bohm parameter kappa = Phi/(2 pi); annulus only.
        #[arg(long, conflicts_with = "flux", allow_hyphen_values = true)]
        kappa: Option<f64>,
        /// Circulations Phi_1,...,Phi_k.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        flux: Option<Vec<f64>>,
        /// Lattice search half-width.
        #[arg(long, default_value_t = 2)]
        window: i64,
        /// Cutoff distance for the quasimode bound (default 0.5 sqrt(h)).
        #[arg(long)]
        eta: Option<f64>,
        /// Constant C of the distance-form bound; enables that output.
        #[arg(long = "dist-const")]
        dist_const: Option<f64>,
        #[arg(long = "n-r", default_value_t = 2048)]
        n_r: usize,
        /// Skip the radial eigensolve (lambda_numeric reported absent).
        #[arg(long)]
        no_eigensolve: bool,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Decay-rate extraction from eigenvalues along a decreasing h list.
    Slope {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "h", value_delimiter = ',', required = true)]
        h: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long = "n-r", default_value_t = 4096)]
        n_r: usize,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Ground-state energy of the Dirichlet Laplacian.
    Laplacian {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long = "n-r", default_value_t = 4096)]
        n_r: usize,
        /// Grid resolution for mask-free annulus cross-checks.
        #[arg(long = "grid-n")]
        grid_n: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}
