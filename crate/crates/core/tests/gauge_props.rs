//! Gauge-lattice properties, including the grid-vs-radial cross-check on
//! the annulus.

use pauli_core::domain::{rasterize_annulus, AnnulusSpec};
use pauli_core::field::{harmonic_basis, BField, FluxVector};
use pauli_core::gauge::{
    gauge_distance, minimize_oscillation_over_lattice, recenter_flux, AnnulusOscillation,
    GridOscillation, OscillationModel,
};
use pauli_core::radial::AnnulusNormalization;
use proptest::prelude::*;

const PI: f64 = std::f64::consts::PI;

#[test]
fn grid_path_matches_radial_branch_formulas() {
    let domain = rasterize_annulus(&AnnulusSpec::new(0.5, 1.0).unwrap(), 128).unwrap();
    let (basis, psi0) = harmonic_basis(&domain, &BField::Constant(1.0)).unwrap();
    let grid_model = GridOscillation { basis: &basis, psi0: &psi0 };
    let radial_model = AnnulusOscillation(AnnulusNormalization::new(0.5, 1.0, 1.0).unwrap());

    let h = 0.1;
    for flux0 in [0.0, 0.9, -2.3] {
        let flux = FluxVector(vec![flux0]);
        let grid_res = minimize_oscillation_over_lattice(&grid_model, &flux, h, 2).unwrap();
        // radial oscillation at the flux the grid search settled on
        let radial_at_shift = radial_model.oscillation_at(&grid_res.shifted_flux).unwrap();
        assert!(
            (grid_res.osc_star - radial_at_shift).abs() < 2e-3,
            "flux {flux0}: grid {} vs radial {radial_at_shift}",
            grid_res.osc_star
        );
        // both paths settle on the same lattice point
        let radial_res = minimize_oscillation_over_lattice(&radial_model, &flux, h, 2).unwrap();
        assert_eq!(radial_res.alpha_star, grid_res.alpha_star);
        // delta is nonnegative up to solver tolerance
        assert!(grid_res.delta >= -1e-8);
    }
}

proptest! {
    #[test]
    fn recenter_always_lands_within_half_period(
        flux in -50.0f64..50.0,
        phi0 in -2.0f64..2.0,
        h in 1e-3f64..1.0,
    ) {
        let (_, shifted) = recenter_flux(
            &FluxVector(vec![flux]),
            &FluxVector(vec![phi0]),
            h,
        );
        prop_assert!((shifted.0[0] - phi0).abs() <= PI * h * (1.0 + 1e-12));
    }

    #[test]
    fn distance_bounded_by_half_period_ball(
        f1 in -20.0f64..20.0,
        f2 in -20.0f64..20.0,
        h in 1e-3f64..1.0,
    ) {
        let d = gauge_distance(
            &FluxVector(vec![f1, f2]),
            &FluxVector(vec![0.3, -0.4]),
            h,
        );
        prop_assert!(d <= PI * h * 2.0f64.sqrt() * (1.0 + 1e-12));
        prop_assert!(d >= 0.0);
    }

    #[test]
    fn lattice_min_invariant_under_integer_shifts(
        flux in -3.0f64..3.0,
        beta in -6i64..6,
        h in 0.02f64..0.5,
    ) {
        let model = AnnulusOscillation(AnnulusNormalization::new(0.5, 1.0, 1.0).unwrap());
        let base = minimize_oscillation_over_lattice(
            &model, &FluxVector(vec![flux]), h, 2).unwrap();
        let shifted = minimize_oscillation_over_lattice(
            &model,
            &FluxVector(vec![flux + 2.0 * PI * h * beta as f64]),
            h,
            2,
        ).unwrap();
        prop_assert!((base.osc_star - shifted.osc_star).abs() <= 1e-12 * (1.0 + base.osc_star));
        prop_assert_eq!(shifted.alpha_star[0], base.alpha_star[0] - beta);
    }
}
