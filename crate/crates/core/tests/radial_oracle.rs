//! Oracle checks for the closed-form annulus analysis: the branch formulas
//! against a dense scan of ψ̂^C, and the critical coefficient against a
//! golden-section search.

use pauli_core::radial::{c_crit, oscillation_branches, psi_of_c, RadialField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn psi_hat(c: f64, r: f64) -> f64 {
    r * r / 4.0 - 0.25 + c * r.ln()
}

/// Oscillation of ψ̂^C from a dense scan with endpoints included.
fn scan_oscillation(c: f64, rho: f64, points: usize) -> f64 {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for i in 0..=points {
        let r = rho + (1.0 - rho) * i as f64 / points as f64;
        let v = psi_hat(c, r);
        min = min.min(v);
        max = max.max(v);
    }
    max - min
}

fn golden_section_min(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    for _ in 0..200 {
        if f(c) < f(d) {
            b = d;
            d = c;
            c = b - inv_phi * (b - a);
        } else {
            a = c;
            c = d;
            d = a + inv_phi * (b - a);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    0.5 * (a + b)
}

#[test]
fn branch_formulas_match_dense_scan() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for _ in 0..500 {
        let rho = rng.gen_range(0.05..0.95);
        let c = rng.gen_range(-2.5..1.5);
        let formula = oscillation_branches(c, rho);
        let scan = scan_oscillation(c, rho, 100_000);
        assert!(
            (formula - scan).abs() <= 1e-8,
            "C={c}, rho={rho}: formula {formula} vs scan {scan}"
        );
    }
}

#[test]
fn c_crit_is_the_golden_section_minimizer() {
    for rho in [0.3, 0.5, 0.7] {
        let c_star = golden_section_min(-1.0, -1e-6, |c| oscillation_branches(c, rho));
        assert!(
            (c_star - c_crit(rho)).abs() < 1e-9,
            "rho={rho}: scan minimizer {c_star} vs c_crit {}",
            c_crit(rho)
        );
    }
    // frozen minimum value at rho = 0.5
    let min_osc = oscillation_branches(c_crit(0.5), 0.5);
    assert!((min_osc - 0.031_659_421_822_852_224).abs() < 1e-13);
}

#[test]
fn interior_min_example_against_scan() {
    // C = -0.270501: interior minimum; scan pins argmin and value
    let f = psi_of_c(-0.270501, &RadialField::Constant(1.0), 0.5, 1.0).unwrap();
    let points = 1_000_000usize;
    let mut min_v = f64::INFINITY;
    let mut min_r = 0.0;
    for i in 0..=points {
        let r = 0.5 + 0.5 * i as f64 / points as f64;
        let v = psi_hat(-0.270501, r);
        if v < min_v {
            min_v = v;
            min_r = r;
        }
    }
    assert!((f.psi_min - min_v).abs() < 1e-12);
    assert!((f.argmin_r - min_r).abs() < 1e-5);
}

proptest! {
    #[test]
    fn osc_equals_branch_formula(c in -3.0f64..2.0, rho in 0.05f64..0.95) {
        let f = psi_of_c(c, &RadialField::Constant(1.0), rho, 1.0).unwrap();
        let formula = oscillation_branches(c, rho);
        prop_assert!((f.osc - formula).abs() <= 1e-12 * (1.0 + formula.abs()));
    }

    #[test]
    fn trace_roundtrip(p in -5.0f64..5.0, rho in 0.05f64..0.95) {
        let c = pauli_core::radial::c_from_trace(p, rho);
        let back = pauli_core::radial::trace_from_c(c, rho);
        prop_assert!((back - p).abs() <= 1e-12 * (1.0 + p.abs()));
    }

    #[test]
    fn flux_roundtrip(phi in -20.0f64..20.0, rho in 0.05f64..0.95) {
        let c = pauli_core::radial::c_from_flux(phi, rho);
        let back = pauli_core::radial::flux_from_c(c, rho);
        prop_assert!((back - phi).abs() <= 1e-12 * (1.0 + phi.abs()));
    }
}
