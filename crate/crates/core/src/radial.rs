//! Closed-form annulus analysis: radial generating functions ψ with
//! prescribed log coefficient, the three oscillation branches, the critical
//! coefficient, and the affine maps between the log coefficient C, the inner
//! trace p and the circulation Φ.
//!
//! The branch formulas and the C↔p↔Φ relations are stated in the normalized
//! setting R = 1, B = 1. Public entry points accepting a general outer radius
//! and constant field strength rescale internally: lengths by R, potentials
//! and fluxes by B·R².

use crate::error::{Error, Result};

/// Radial magnetic field on [ρ, R]: uniform, or tabulated piecewise-linear.
#[derive(Debug, Clone)]
pub enum RadialField {
    Constant(f64),
    /// Strictly increasing abscissae covering [ρ, R].
    Table(Vec<(f64, f64)>),
}

impl RadialField {
    /// Check definedness on [ρ, R] and positivity of B.
    pub fn validate(&self, rho: f64, r_outer: f64) -> Result<()> {
        match self {
            RadialField::Constant(b0) => {
                if !(b0.is_finite() && *b0 > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "constant field must be finite and > 0, got {b0}"
                    )));
                }
            }
            RadialField::Table(entries) => {
                if entries.len() < 2 {
                    return Err(Error::InvalidInput(
                        "field table needs at least two entries".into(),
                    ));
                }
                for w in entries.windows(2) {
                    if !(w[1].0 > w[0].0) {
                        return Err(Error::InvalidInput(format!(
                            "field table abscissae must be strictly increasing: {} then {}",
                            w[0].0, w[1].0
                        )));
                    }
                }
                if entries.first().unwrap().0 > rho + 1e-12
                    || entries.last().unwrap().0 < r_outer - 1e-12
                {
                    return Err(Error::InvalidInput(format!(
                        "field table [{}, {}] does not cover [{rho}, {r_outer}]",
                        entries.first().unwrap().0,
                        entries.last().unwrap().0
                    )));
                }
                if entries.iter().any(|(_, b)| !(b.is_finite() && *b > 0.0)) {
                    return Err(Error::InvalidInput(
                        "field table values must be finite and > 0".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Field strength at radius r (piecewise-linear for tables, clamped at
    /// the table ends).
    pub fn value_at(&self, r: f64) -> f64 {
        match self {
            RadialField::Constant(b0) => *b0,
            RadialField::Table(entries) => {
                let n = entries.len();
                if r <= entries[0].0 {
                    return entries[0].1;
                }
                if r >= entries[n - 1].0 {
                    return entries[n - 1].1;
                }
                let pos = entries.partition_point(|(x, _)| *x <= r);
                let (x0, b0) = entries[pos - 1];
                let (x1, b1) = entries[pos];
                b0 + (b1 - b0) * (r - x0) / (x1 - x0)
            }
        }
    }
}

/// Position of the minimum of ψ on [ρ, R].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// C ≥ −ρ²/2 (normalized): ψ increasing, minimum at the inner circle.
    NoInteriorMinHighC,
    /// C ≤ −1/2 (normalized): ψ decreasing, minimum at the outer circle.
    NoInteriorMinLowC,
    /// C ∈ (−1/2, −ρ²/2): minimum at r = √(−2C) inside the annulus.
    InteriorMin,
}

#[derive(Debug, Clone)]
enum Form {
    /// ψ(r) = B₀ r²/4 + C ln r + D with D fixed by ψ(R) = 0.
    Closed { b0: f64, d: f64 },
    /// Fine quadrature samples, linear interpolation in between.
    Table { rs: Vec<f64>, psis: Vec<f64> },
}

/// A radial generating function ψ with its extrema and oscillation.
/// ψ(R) = 0 by construction.
#[derive(Debug, Clone)]
pub struct RadialGeneratingFunction {
    pub c: f64,
    pub rho: f64,
    pub r_outer: f64,
    pub psi_min: f64,
    pub psi_max: f64,
    pub argmin_r: f64,
    pub osc: f64,
    pub branch: Branch,
    form: Form,
}

impl RadialGeneratingFunction {
    pub fn eval(&self, r: f64) -> f64 {
        match &self.form {
            Form::Closed { b0, d } => {
                let log_term = if self.c == 0.0 { 0.0 } else { self.c * r.ln() };
                b0 * r * r / 4.0 + log_term + d
            }
            Form::Table { rs, psis } => {
                let n = rs.len();
                if r <= rs[0] {
                    return psis[0];
                }
                if r >= rs[n - 1] {
                    return psis[n - 1];
                }
                let pos = rs.partition_point(|x| *x <= r);
                let t = (r - rs[pos - 1]) / (rs[pos] - rs[pos - 1]);
                psis[pos - 1] + t * (psis[pos] - psis[pos - 1])
            }
        }
    }

    /// Radial derivative ψ′(r).
    pub fn deriv(&self, r: f64) -> f64 {
        match &self.form {
            Form::Closed { b0, .. } => b0 * r / 2.0 + if self.c == 0.0 { 0.0 } else { self.c / r },
            Form::Table { rs, psis } => {
                // one-sided slopes of the sample polyline
                let n = rs.len();
                let pos = rs.partition_point(|x| *x <= r).clamp(1, n - 1);
                (psis[pos] - psis[pos - 1]) / (rs[pos] - rs[pos - 1])
            }
        }
    }

    /// Uniform samples (r, ψ(r)) on [ρ, R], endpoints included.
    pub fn sample(&self, n: usize) -> Vec<(f64, f64)> {
        let n = n.max(2);
        (0..=n)
            .map(|i| {
                let r = self.rho + (self.r_outer - self.rho) * i as f64 / n as f64;
                (r, self.eval(r))
            })
            .collect()
    }
}

/// Build the radial generating function with log coefficient `c` for the
/// given field on the annulus (ρ, R). ψ solves Δψ = B radially with ψ(R) = 0.
pub fn psi_of_c(
    c: f64,
    field: &RadialField,
    rho: f64,
    r_outer: f64,
) -> Result<RadialGeneratingFunction> {
    if !(rho.is_finite() && r_outer.is_finite()) || rho < 0.0 || rho >= r_outer {
        return Err(Error::InvalidInput(format!(
            "annulus requires 0 <= rho < R, got rho = {rho}, R = {r_outer}"
        )));
    }
    if rho == 0.0 && c != 0.0 {
        return Err(Error::InvalidInput(format!(
            "rho = 0 admits only C = 0 (log r is singular at the origin), got C = {c}"
        )));
    }
    field.validate(rho, r_outer)?;

    match field {
        RadialField::Constant(b0) => Ok(constant_field_psi(c, *b0, rho, r_outer)),
        RadialField::Table(_) => table_field_psi(c, field, rho, r_outer),
    }
}

fn constant_field_psi(c: f64, b0: f64, rho: f64, r_outer: f64) -> RadialGeneratingFunction {
    let scale = b0 * r_outer * r_outer;
    let rho_hat = rho / r_outer;
    let c_hat = c / scale;
    let d = -(b0 * r_outer * r_outer / 4.0) - if c == 0.0 { 0.0 } else { c * r_outer.ln() };
    let psi_at = |r_hat: f64| -> f64 {
        r_hat * r_hat / 4.0 - 0.25 + if c_hat == 0.0 { 0.0 } else { c_hat * r_hat.ln() }
    };

    // Sign analysis of ψ̂′(r) = r/2 + C/r; ties go to the closed branches.
    let (branch, min_hat, max_hat, argmin_hat) = if rho_hat == 0.0 || c_hat >= -rho_hat * rho_hat / 2.0
    {
        (Branch::NoInteriorMinHighC, psi_at(rho_hat.max(0.0)).min(0.0), 0.0, rho_hat)
    } else if c_hat <= -0.5 {
        (Branch::NoInteriorMinLowC, 0.0, psi_at(rho_hat), 1.0)
    } else {
        let r_star = (-2.0 * c_hat).sqrt();
        let min_v = -c_hat / 2.0 - 0.25 + (c_hat / 2.0) * (-2.0 * c_hat).ln();
        let max_v = psi_at(rho_hat).max(0.0);
        (Branch::InteriorMin, min_v, max_v, r_star)
    };
    // For the disk (rho = 0, c = 0) the minimum value is ψ̂(0) = −1/4.
    let min_hat = if rho_hat == 0.0 { -0.25 } else { min_hat };

    RadialGeneratingFunction {
        c,
        rho,
        r_outer,
        psi_min: scale * min_hat,
        psi_max: scale * max_hat,
        argmin_r: r_outer * argmin_hat,
        osc: scale * (max_hat - min_hat),
        branch,
        form: Form::Closed { b0, d },
    }
}

/// Minimum fine-quadrature panel count for tabulated fields.
const TABLE_MIN_PANELS: usize = 4096;

fn table_field_psi(
    c: f64,
    field: &RadialField,
    rho: f64,
    r_outer: f64,
) -> Result<RadialGeneratingFunction> {
    // Refine to at least TABLE_MIN_PANELS uniform panels on [rho, R].
    let panels = TABLE_MIN_PANELS;
    let n = panels + 1;
    let dr = (r_outer - rho) / panels as f64;
    let rs: Vec<f64> = (0..n).map(|i| rho + i as f64 * dr).collect();
    let bs: Vec<f64> = rs.iter().map(|&r| field.value_at(r)).collect();

    // F(r) = ∫_ρ^r s B(s) ds by composite trapezoid.
    let mut f = vec![0.0; n];
    for i in 1..n {
        f[i] = f[i - 1] + 0.5 * dr * (rs[i - 1] * bs[i - 1] + rs[i] * bs[i]);
    }
    // r ψ′(r) = F(r) + const; const chosen so that Φ = 2πC + πρ²B(ρ).
    let konst = c + rho * rho * bs[0] / 2.0;
    let dpsi: Vec<f64> = (0..n).map(|i| (f[i] + konst) / rs[i].max(1e-300)).collect();
    // ψ by a second trapezoid, constant fixed by ψ(R) = 0.
    let mut psis = vec![0.0; n];
    for i in 1..n {
        psis[i] = psis[i - 1] + 0.5 * dr * (dpsi[i - 1] + dpsi[i]);
    }
    let shift = psis[n - 1];
    for p in psis.iter_mut() {
        *p -= shift;
    }

    let mut min_i = 0usize;
    let mut max_i = 0usize;
    for i in 1..n {
        if psis[i] < psis[min_i] {
            min_i = i;
        }
        if psis[i] > psis[max_i] {
            max_i = i;
        }
    }
    let branch = if min_i == 0 {
        Branch::NoInteriorMinHighC
    } else if min_i == n - 1 {
        Branch::NoInteriorMinLowC
    } else {
        Branch::InteriorMin
    };
    Ok(RadialGeneratingFunction {
        c,
        rho,
        r_outer,
        psi_min: psis[min_i],
        psi_max: psis[max_i],
        argmin_r: rs[min_i],
        osc: psis[max_i] - psis[min_i],
        branch,
        form: Form::Table { rs, psis },
    })
}

/// Oscillation of ψ̂^C on the normalized annulus (R = 1, B = 1) from the
/// three branch formulas. Total on 0 < ρ < 1.
pub fn oscillation_branches(c: f64, rho: f64) -> f64 {
    assert!(rho > 0.0 && rho < 1.0, "oscillation_branches requires 0 < rho < 1");
    let log_rho = rho.ln();
    let psi_rho = rho * rho / 4.0 - 0.25 + c * log_rho;
    if c >= -rho * rho / 2.0 {
        -rho * rho / 4.0 + 0.25 - c * log_rho
    } else if c <= -0.5 {
        psi_rho
    } else {
        psi_rho.max(0.0) + c / 2.0 + 0.25 - (c / 2.0) * (-2.0 * c).ln()
    }
}

/// Critical log coefficient (1 − ρ²)/(4 log ρ): the oscillation minimizer,
/// and the C for which ψ̂^C(ρ) = 0.
pub fn c_crit(rho: f64) -> f64 {
    assert!(rho > 0.0 && rho < 1.0, "c_crit requires 0 < rho < 1");
    (1.0 - rho * rho) / (4.0 * rho.ln())
}

/// Inner trace p of ψ̂^C: p = ρ²/4 − 1/4 + C log ρ.
pub fn trace_from_c(c: f64, rho: f64) -> f64 {
    assert!(rho > 0.0 && rho < 1.0, "trace_from_c requires 0 < rho < 1");
    rho * rho / 4.0 - 0.25 + c * rho.ln()
}

/// Inverse of [`trace_from_c`]; c_from_trace(0, ρ) = c_crit(ρ).
pub fn c_from_trace(p: f64, rho: f64) -> f64 {
    assert!(rho > 0.0 && rho < 1.0, "c_from_trace requires 0 < rho < 1");
    (p - rho * rho / 4.0 + 0.25) / rho.ln()
}

/// Circulation along the inner circle: Φ = 2πC + πρ².
pub fn flux_from_c(c: f64, rho: f64) -> f64 {
    assert!(rho > 0.0 && rho < 1.0, "flux_from_c requires 0 < rho < 1");
    2.0 * std::f64::consts::PI * c + std::f64::consts::PI * rho * rho
}

/// Inverse of [`flux_from_c`].
pub fn c_from_flux(flux: f64, rho: f64) -> f64 {
    assert!(rho > 0.0 && rho < 1.0, "c_from_flux requires 0 < rho < 1");
    (flux - std::f64::consts::PI * rho * rho) / (2.0 * std::f64::consts::PI)
}

/// Rescaling between a physical annulus (ρ, R) with constant field B₀ and
/// the normalized one (ρ/R, 1) with B = 1. Lengths scale by R, potentials
/// and fluxes by B₀R².
#[derive(Debug, Clone, Copy)]
pub struct AnnulusNormalization {
    pub rho: f64,
    pub r_outer: f64,
    pub b0: f64,
}

impl AnnulusNormalization {
    pub fn new(rho: f64, r_outer: f64, b0: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < r_outer && r_outer.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "annulus normalization requires 0 < rho < R, got rho = {rho}, R = {r_outer}"
            )));
        }
        if !(b0.is_finite() && b0 > 0.0) {
            return Err(Error::InvalidInput(format!(
                "constant field must be > 0, got {b0}"
            )));
        }
        Ok(Self { rho, r_outer, b0 })
    }

    pub fn rho_hat(&self) -> f64 {
        self.rho / self.r_outer
    }

    /// Potential / flux scale B₀R².
    pub fn scale(&self) -> f64 {
        self.b0 * self.r_outer * self.r_outer
    }

    /// Physical oscillation of ψ^Φ at a physical circulation Φ.
    pub fn oscillation_at_flux(&self, flux: f64) -> f64 {
        let c_hat = c_from_flux(flux / self.scale(), self.rho_hat());
        self.scale() * oscillation_branches(c_hat, self.rho_hat())
    }

    /// Physical circulation of the zero-trace solution ψ₀.
    pub fn phi0(&self) -> f64 {
        self.scale() * flux_from_c(c_crit(self.rho_hat()), self.rho_hat())
    }

    /// The zero-trace generating function ψ₀ (physical units).
    pub fn psi0(&self) -> RadialGeneratingFunction {
        let c = self.scale() * c_crit(self.rho_hat());
        constant_field_psi(c, self.b0, self.rho, self.r_outer)
    }

    /// Generating function at a physical circulation Φ.
    pub fn psi_at_flux(&self, flux: f64) -> RadialGeneratingFunction {
        let c = self.scale() * c_from_flux(flux / self.scale(), self.rho_hat());
        constant_field_psi(c, self.b0, self.rho, self.r_outer)
    }
}
