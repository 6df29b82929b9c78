//! Gauge-lattice machinery: spectra are invariant under circulation shifts
//! Φ → Φ + 2πhα with integer α, so the oscillation entering the lower bounds
//! can be minimized over that lattice. δ(Φ,h) measures the excess of the
//! minimized oscillation over Osc(ψ₀).

use crate::error::{Error, Result};
use crate::field::{oscillation, superpose, trace_from_flux, FluxVector, GridFunction, HarmonicBasis};
use crate::radial::AnnulusNormalization;

/// Result of the windowed lattice search.
#[derive(Debug, Clone)]
pub struct GaugeResult {
    pub alpha_star: Vec<i64>,
    pub osc_star: f64,
    /// δ(Φ,h) = osc_star − Osc(ψ₀), measured against the same model.
    pub delta: f64,
    pub shifted_flux: FluxVector,
}

/// Oscillation of ψ^Φ as a function of the circulation vector.
pub trait OscillationModel: Sync {
    fn hole_count(&self) -> usize;

    /// Circulations of the zero-trace solution ψ₀.
    fn phi0(&self) -> FluxVector;

    fn oscillation_at(&self, flux: &FluxVector) -> Result<f64>;

    /// Osc(ψ₀); default evaluates at Φ₀.
    fn oscillation_zero_trace(&self) -> Result<f64> {
        self.oscillation_at(&self.phi0())
    }
}

/// Closed-form annulus model (constant field), k = 1.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusOscillation(pub AnnulusNormalization);

impl OscillationModel for AnnulusOscillation {
    fn hole_count(&self) -> usize {
        1
    }

    fn phi0(&self) -> FluxVector {
        FluxVector(vec![self.0.phi0()])
    }

    fn oscillation_at(&self, flux: &FluxVector) -> Result<f64> {
        if flux.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "annulus model expects k = 1, got flux of length {}",
                flux.len()
            )));
        }
        Ok(self.0.oscillation_at_flux(flux.0[0]))
    }
}

/// Grid model: ψ_p(Φ) by superposition over the precomputed harmonic basis,
/// no further linear solves per lattice point.
pub struct GridOscillation<'a> {
    pub basis: &'a HarmonicBasis,
    pub psi0: &'a GridFunction,
}

impl OscillationModel for GridOscillation<'_> {
    fn hole_count(&self) -> usize {
        self.basis.k()
    }

    fn phi0(&self) -> FluxVector {
        self.basis.phi0.clone()
    }

    fn oscillation_at(&self, flux: &FluxVector) -> Result<f64> {
        let traces = trace_from_flux(self.basis, flux)?;
        Ok(oscillation(&superpose(self.psi0, self.basis, &traces)).2)
    }

    fn oscillation_zero_trace(&self) -> Result<f64> {
        Ok(oscillation(self.psi0).2)
    }
}

/// Componentwise nearest lattice point round((Φ₀ − Φ)/(2πh)), ties to even.
fn center_alpha(flux: &FluxVector, phi0: &FluxVector, h: f64) -> Vec<i64> {
    let period = 2.0 * std::f64::consts::PI * h;
    flux.0
        .iter()
        .zip(&phi0.0)
        .map(|(f, p)| ((p - f) / period).round_ties_even() as i64)
        .collect()
}

/// Exhaustive minimization of Osc(ψ^{Φ+2πhα}) over the integer box of
/// half-width `window` centered at the rounded recentering point. Ties break
/// to the lexicographically smallest α.
pub fn minimize_oscillation_over_lattice(
    model: &dyn OscillationModel,
    flux: &FluxVector,
    h: f64,
    window: i64,
) -> Result<GaugeResult> {
    let k = model.hole_count();
    if flux.len() != k {
        return Err(Error::InvalidInput(format!(
            "flux vector has length {}, model has k = {k}",
            flux.len()
        )));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidInput(format!("h must be > 0, got {h}")));
    }
    if window < 1 {
        return Err(Error::InvalidInput(format!(
            "window half-width must be >= 1, got {window}"
        )));
    }
    if k > 4 && window > 3 {
        return Err(Error::InvalidInput(format!(
            "refusing exhaustive search with k = {k} holes and window {window} \
             ({} lattice points)",
            (2 * window + 1).pow(k as u32)
        )));
    }

    let period = 2.0 * std::f64::consts::PI * h;
    let phi0 = model.phi0();
    let center = center_alpha(flux, &phi0, h);

    let mut alpha = vec![-window; k];
    let mut best: Option<(f64, Vec<i64>)> = None;
    loop {
        let cand: Vec<i64> = alpha.iter().zip(&center).map(|(a, c)| a + c).collect();
        let shifted = FluxVector(
            flux.0
                .iter()
                .zip(&cand)
                .map(|(f, a)| f + period * *a as f64)
                .collect(),
        );
        let osc = model.oscillation_at(&shifted)?;
        let better = match &best {
            None => true,
            Some((best_osc, best_alpha)) => {
                osc < *best_osc || (osc == *best_osc && cand < *best_alpha)
            }
        };
        if better {
            best = Some((osc, cand));
        }
        // odometer increment over the box
        let mut pos = k;
        while pos > 0 {
            alpha[pos - 1] += 1;
            if alpha[pos - 1] <= window {
                break;
            }
            alpha[pos - 1] = -window;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }

    let (osc_star, alpha_star) = best.unwrap();
    let osc0 = model.oscillation_zero_trace()?;
    let shifted_flux = FluxVector(
        flux.0
            .iter()
            .zip(&alpha_star)
            .map(|(f, a)| f + period * *a as f64)
            .collect(),
    );
    Ok(GaugeResult { alpha_star, osc_star, delta: osc_star - osc0, shifted_flux })
}

/// Recentering shift: α = round((Φ₀ − Φ)/(2πh)) componentwise (ties to
/// even); the shifted flux satisfies ‖Φ_new − Φ₀‖_∞ ≤ πh.
pub fn recenter_flux(flux: &FluxVector, phi0: &FluxVector, h: f64) -> (Vec<i64>, FluxVector) {
    assert!(h > 0.0, "recenter_flux requires h > 0");
    assert_eq!(flux.len(), phi0.len(), "flux/phi0 dimension mismatch");
    let period = 2.0 * std::f64::consts::PI * h;
    let alpha = center_alpha(flux, phi0, h);
    let shifted = FluxVector(
        flux.0
            .iter()
            .zip(&alpha)
            .map(|(f, a)| f + period * *a as f64)
            .collect(),
    );
    (alpha, shifted)
}

/// Distance d(Φ, Φ₀ + 2πhZ^k): the ℓ₂ norm of the componentwise-recentered
/// residue (componentwise rounding minimizes the ℓ₂ norm exactly).
pub fn gauge_distance(flux: &FluxVector, phi0: &FluxVector, h: f64) -> f64 {
    assert!(h > 0.0, "gauge_distance requires h > 0");
    assert_eq!(flux.len(), phi0.len(), "flux/phi0 dimension mismatch");
    let (_, shifted) = recenter_flux(flux, phi0, h);
    shifted
        .0
        .iter()
        .zip(&phi0.0)
        .map(|(f, p)| (f - p) * (f - p))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::AnnulusNormalization;
    use approx::assert_relative_eq;

    const PI: f64 = std::f64::consts::PI;

    fn annulus_model() -> AnnulusOscillation {
        AnnulusOscillation(AnnulusNormalization::new(0.5, 1.0, 1.0).unwrap())
    }

    #[test]
    fn exact_lattice_shift_recovers_phi0() {
        let model = annulus_model();
        let h = 0.1;
        let phi0 = model.phi0().0[0];
        let flux = FluxVector(vec![phi0 + 2.0 * PI * h * 3.0]);
        let result = minimize_oscillation_over_lattice(&model, &flux, h, 2).unwrap();
        assert_eq!(result.alpha_star, vec![-3]);
        assert!(result.delta.abs() < 1e-12, "delta = {}", result.delta);
        assert_relative_eq!(
            result.osc_star,
            model.oscillation_zero_trace().unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn windowed_search_matches_brute_force() {
        let model = annulus_model();
        let h = 0.1;
        let flux = FluxVector(vec![0.0]);
        let result = minimize_oscillation_over_lattice(&model, &flux, h, 2).unwrap();
        // brute force over alpha in [-50, 50]
        let mut best = f64::INFINITY;
        let mut best_a = 0i64;
        for a in -50..=50 {
            let osc = model
                .oscillation_at(&FluxVector(vec![2.0 * PI * h * a as f64]))
                .unwrap();
            if osc < best {
                best = osc;
                best_a = a;
            }
        }
        assert_relative_eq!(result.osc_star, best, max_relative = 1e-13);
        assert_eq!(result.alpha_star, vec![best_a]);
    }

    #[test]
    fn large_h_keeps_alpha_zero() {
        let model = annulus_model();
        let h = 10.0;
        let phi0 = model.phi0().0[0];
        let flux = FluxVector(vec![phi0 + 0.5 * PI * h]);
        let result = minimize_oscillation_over_lattice(&model, &flux, h, 2).unwrap();
        assert_eq!(result.alpha_star, vec![0]);
    }

    #[test]
    fn periodicity_of_lattice_minimum() {
        let model = annulus_model();
        let h = 0.07;
        let flux = FluxVector(vec![0.33]);
        let base = minimize_oscillation_over_lattice(&model, &flux, h, 2).unwrap();
        for beta in [-4i64, 1, 9] {
            let shifted = FluxVector(vec![0.33 + 2.0 * PI * h * beta as f64]);
            let res = minimize_oscillation_over_lattice(&model, &shifted, h, 2).unwrap();
            assert_relative_eq!(res.osc_star, base.osc_star, max_relative = 1e-13);
            assert_eq!(res.alpha_star[0], base.alpha_star[0] - beta);
        }
    }

    #[test]
    fn widening_window_never_hurts() {
        let model = annulus_model();
        let h = 0.05;
        let flux = FluxVector(vec![1.1]);
        let mut prev = f64::INFINITY;
        for w in 1..=4 {
            let res = minimize_oscillation_over_lattice(&model, &flux, h, w).unwrap();
            assert!(res.osc_star <= prev + 1e-15);
            prev = res.osc_star;
        }
    }

    #[test]
    fn recenter_bounds() {
        let phi0 = FluxVector(vec![-0.914_236_889_787_749_4]);
        let h = 0.02;
        // exact multiple
        let (alpha, f) = recenter_flux(
            &FluxVector(vec![phi0.0[0] + 2.0 * PI * h * 5.0]),
            &phi0,
            h,
        );
        assert_eq!(alpha, vec![-5]);
        assert_relative_eq!(f.0[0], phi0.0[0], epsilon = 1e-12);
        // just past the half period
        let (_, f) = recenter_flux(
            &FluxVector(vec![phi0.0[0] + PI * h * 1.0001]),
            &phi0,
            h,
        );
        assert!((f.0[0] - phi0.0[0]).abs() <= PI * h * (1.0 + 1e-9));
        // identity
        let (alpha, _) = recenter_flux(&phi0.clone(), &phi0, h);
        assert_eq!(alpha, vec![0]);
    }

    #[test]
    fn gauge_distance_values() {
        let h = 0.1;
        let phi0 = FluxVector(vec![0.4, -0.7]);
        // on the lattice
        let f = FluxVector(vec![0.4 + 2.0 * PI * h * 3.0, -0.7 - 2.0 * PI * h * 2.0]);
        assert!(gauge_distance(&f, &phi0, h) < 1e-12);
        // k=1 midpoint of the period
        let p1 = FluxVector(vec![0.0]);
        let f1 = FluxVector(vec![PI * h]);
        assert_relative_eq!(gauge_distance(&f1, &p1, h), PI * h, max_relative = 1e-12);
        // componentwise residues (0.3, -0.4) in period units
        let f2 = FluxVector(vec![0.4 + 0.3 * 2.0 * PI * h, -0.7 - 0.4 * 2.0 * PI * h]);
        assert_relative_eq!(
            gauge_distance(&f2, &phi0, h),
            0.5 * 2.0 * PI * h,
            max_relative = 1e-12
        );
    }

    #[test]
    fn combinatorial_guard() {
        struct Fake;
        impl OscillationModel for Fake {
            fn hole_count(&self) -> usize {
                5
            }
            fn phi0(&self) -> FluxVector {
                FluxVector(vec![0.0; 5])
            }
            fn oscillation_at(&self, _: &FluxVector) -> crate::error::Result<f64> {
                Ok(0.0)
            }
        }
        let err =
            minimize_oscillation_over_lattice(&Fake, &FluxVector(vec![0.0; 5]), 0.1, 4).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }
}
