//! Error types shared across the crate.

use thiserror::Error;

/// Coarse classification used by callers that map failures to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad input: geometry, file contents, inconsistent parameters.
    Config,
    /// A solver or iteration failed to deliver the requested accuracy.
    Numerical,
    /// Underlying I/O failure.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("interior is disconnected ({components} components); the domain must be connected")]
    DisconnectedInterior { components: usize },

    #[error("linear solver did not converge: relative residual {residual:.3e} after {iterations} iterations (target {target:.1e})")]
    SolverDiverged {
        residual: f64,
        iterations: usize,
        target: f64,
    },

    #[error("circulation matrix is numerically singular: condition estimate {cond:.3e} exceeds 1e12")]
    IllConditioned { cond: f64 },

    #[error("eigenvalue bracketing failed: {0}")]
    BracketFailure(String),

    #[error("minimizing m = {m_star} sits on the edge of the search window [{lo}, {hi}] even after widening")]
    WindowEdge { m_star: i64, lo: i64, hi: i64 },

    #[error("interior-minimum hypothesis violated: boundary trace p_{index} = {trace:.6e} is not above psi_min = {psi_min:.6e}")]
    BoundaryMinimum {
        index: usize,
        trace: f64,
        psi_min: f64,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::InvalidInput(_)
            | Error::Parse { .. }
            | Error::DegenerateGrid(_)
            | Error::DisconnectedInterior { .. }
            | Error::BoundaryMinimum { .. } => ErrorCategory::Config,
            Error::SolverDiverged { .. }
            | Error::IllConditioned { .. }
            | Error::BracketFailure(_)
            | Error::WindowEdge { .. } => ErrorCategory::Numerical,
            Error::Io(_) => ErrorCategory::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
