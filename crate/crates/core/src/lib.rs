//! Ground-state energy bounds and numerical spectra of the semiclassical
//! Dirichlet Pauli operator on multiply connected planar domains.
//!
//! The crate is organized around the generating function ψ of the magnetic
//! potential (Δψ = B, ψ = 0 on the outer boundary): its oscillation controls
//! the exponential decay rate of the ground-state energy as h → 0, and the
//! circulations Φ_j around the holes are the only gauge-relevant data beyond
//! B. Modules:
//!
//! - [`domain`]: the analytic annulus and rasterized multiply connected
//!   regions with labeled boundary components;
//! - [`radial`]: closed-form annulus analysis (oscillation branches, the
//!   critical log coefficient, C ↔ trace ↔ circulation maps);
//! - [`field`]: grid Poisson solves, the harmonic basis θ_j, the circulation
//!   matrix M and the affine flux ↔ trace maps;
//! - [`gauge`]: oscillation minimization over circulation shifts Φ + 2πhα;
//! - [`spectral`]: the radial eigenvalue family P_m, Dirichlet Laplacian
//!   ground states, and quasimode upper bounds;
//! - [`bounds`]: lower/upper bound evaluation, decay-rate extraction, and
//!   the machine-readable bound report.

pub mod bounds;
pub mod domain;
pub mod error;
pub mod field;
pub mod gauge;
pub mod radial;
pub mod spectral;
pub mod util;

pub use bounds::{BoundReport, BoundValue, SlopeEstimate};
pub use domain::{AnnulusSpec, GridDomain, MaskBitmap, NodeClass};
pub use error::{Error, ErrorCategory, Result};
pub use field::{BField, FluxVector, GridFunction, HarmonicBasis, TraceVector};
pub use gauge::GaugeResult;
pub use radial::{AnnulusNormalization, Branch, RadialField, RadialGeneratingFunction};
pub use spectral::{EigenResult, MWindow, QuasimodeVariant, SpectralConfig, SweepResult};
