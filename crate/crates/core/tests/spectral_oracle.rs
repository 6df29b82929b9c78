//! Eigensolver oracles: the Bessel cross-product root for the annulus
//! Dirichlet Laplacian (series evaluated in-test, independent of the
//! finite-difference path), frozen eigenvalues, sweeps, and the
//! lower/numeric/upper sandwich.

use pauli_core::bounds::{lower_bound_gauge, upper_bound_annulus};
use pauli_core::field::FluxVector;
use pauli_core::gauge::AnnulusOscillation;
use pauli_core::radial::AnnulusNormalization;
use pauli_core::spectral::{
    dirichlet_laplacian_groundstate, kappa_sweep, lambda_m, pauli_groundstate,
    quasimode_upper_bound, GeneratingFunctionRef, QuasimodeVariant, SpectralConfig,
};

const RHO: f64 = 0.5;
const R: f64 = 1.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn j0_series(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..200u32 {
        term *= q / ((m as f64) * (m as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

fn y0_series(x: f64) -> f64 {
    let two_over_pi = 2.0 / std::f64::consts::PI;
    let log_part = ((x / 2.0).ln() + EULER_GAMMA) * j0_series(x);
    let q = x * x / 4.0;
    let mut term = 1.0; // (x^2/4)^m / (m!)^2
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    let mut sign = 1.0;
    for m in 1..200u32 {
        term *= q / ((m as f64) * (m as f64));
        harmonic += 1.0 / m as f64;
        sum += sign * harmonic * term;
        sign = -sign;
        if term * harmonic < 1e-18 * (sum.abs() + 1.0) {
            break;
        }
    }
    two_over_pi * (log_part + sum)
}

/// First root of J0(mu rho) Y0(mu R) - J0(mu R) Y0(mu rho): scan for a sign
/// change, then bisect.
fn cross_product_root(rho: f64, r_outer: f64) -> f64 {
    let f = |mu: f64| j0_series(mu * rho) * y0_series(mu * r_outer)
        - j0_series(mu * r_outer) * y0_series(mu * rho);
    let mut a = 0.5;
    let mut fa = f(a);
    let mut b = a;
    loop {
        b += 0.05;
        let fb = f(b);
        if fa * fb < 0.0 {
            break;
        }
        a = b;
        fa = fb;
        assert!(b < 50.0, "no cross-product sign change found");
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if fa * f(mid) <= 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

#[test]
fn y0_reference_values() {
    // A&S: Y0(1) = 0.088256964, Y0(2) = 0.510375673
    assert!((y0_series(1.0) - 0.088_256_964_215_68).abs() < 1e-10);
    assert!((y0_series(2.0) - 0.510_375_672_649_75).abs() < 1e-10);
}

#[test]
fn annulus_laplacian_matches_cross_product_oracle() {
    let mu = cross_product_root(RHO, R);
    let oracle = mu * mu;
    // frozen from the same oracle evaluated at high precision
    assert!((oracle - 39.013_288_499_002_86).abs() < 1e-6, "mu^2 = {oracle}");
    let fd = dirichlet_laplacian_groundstate(RHO, R, 4096).unwrap();
    assert!(
        (fd - oracle).abs() / oracle < 1e-6,
        "FD {fd} vs cross-product {oracle}"
    );
}

#[test]
fn frozen_groundstate_values() {
    // Cross-tool regression: same discretization solved with an
    // independent LAPACK-based eigensolver gives these values.
    let r1 = pauli_groundstate(&SpectralConfig::new(0.1, 0.0), RHO, R).unwrap();
    assert!(
        (r1.lambda_min - 3.001_348_25e-1).abs() / 3.0e-1 < 1e-6,
        "{}",
        r1.lambda_min
    );
    assert_eq!(r1.m_star, 3);
    let r2 = pauli_groundstate(&SpectralConfig::new(0.01, 0.0), RHO, R).unwrap();
    assert!(
        (r2.lambda_min - 9.247_865_64e-5).abs() / 9.2e-5 < 1e-5,
        "{}",
        r2.lambda_min
    );
    assert_eq!(r2.m_star, 27);
}

#[test]
fn discretization_convergence_half_percent() {
    let coarse = pauli_groundstate(&SpectralConfig::new(0.1, 0.0).with_n_r(2048), RHO, R).unwrap();
    let fine = pauli_groundstate(&SpectralConfig::new(0.1, 0.0).with_n_r(4096), RHO, R).unwrap();
    let rel = (coarse.lambda_min - fine.lambda_min).abs() / fine.lambda_min;
    assert!(rel < 0.005, "n_r doubling moved lambda_min by {rel:.3e}");
}

#[test]
fn sweep_rows_ordered_and_envelope_periodic() {
    let h = 0.1;
    let kappas: Vec<f64> = (0..7).map(|j| h * (-1.5 + 0.5 * j as f64)).collect();
    let cfg = SpectralConfig::new(h, 0.0).with_n_r(512);
    let sweep = kappa_sweep(&cfg, &kappas, RHO, R).unwrap();
    let (lo, hi) = sweep.union_window;
    let per_kappa = (hi - lo + 1) as usize;
    assert_eq!(sweep.rows.len(), kappas.len() * per_kappa);
    // kappa-major, m-minor ordering
    for (i, row) in sweep.rows.iter().enumerate() {
        assert_eq!(row.kappa, kappas[i / per_kappa]);
        assert_eq!(row.m, lo + (i % per_kappa) as i64);
    }
    // kappas[1] = -h, kappas[3] = 0, kappas[5] = +h: the envelope repeats
    for (a, b) in [(1usize, 3usize), (3, 5)] {
        let la = sweep.envelope[a].lambda_min;
        let lb = sweep.envelope[b].lambda_min;
        assert!(
            (la - lb).abs() / la <= 1e-12,
            "envelope at {} vs {}: {la:.17e} vs {lb:.17e}",
            kappas[a],
            kappas[b]
        );
    }
    // all eigenvalues satisfy Pauli non-negativity
    for row in &sweep.rows {
        assert!(row.lambda >= -1e-12);
    }
}

#[test]
fn sandwich_at_h_005() {
    let h = 0.05;
    let norm = AnnulusNormalization::new(RHO, R, 1.0).unwrap();
    let lam_d = dirichlet_laplacian_groundstate(RHO, R, 2048).unwrap();
    let flux = FluxVector(vec![0.0]);
    let lower = lower_bound_gauge(&AnnulusOscillation(norm), &flux, h, lam_d, 2, None).unwrap();
    let numeric = pauli_groundstate(&SpectralConfig::new(h, 0.0), RHO, R).unwrap();
    let upper = upper_bound_annulus(&norm, &flux, h, Some(0.05), QuasimodeVariant::Plain).unwrap();
    assert!(
        lower.bound.value <= numeric.lambda_min * 1.01,
        "lower {} vs numeric {}",
        lower.bound.value,
        numeric.lambda_min
    );
    assert!(
        numeric.lambda_min <= upper.value * 1.01,
        "numeric {} vs upper {}",
        numeric.lambda_min,
        upper.value
    );
}

#[test]
fn sinh_tightens_the_plain_bound() {
    let h = 0.02;
    let norm = AnnulusNormalization::new(RHO, R, 1.0).unwrap();
    let psi = norm.psi0();
    let plain =
        quasimode_upper_bound(GeneratingFunctionRef::Radial(&psi), h, None, QuasimodeVariant::Plain)
            .unwrap();
    let sinh =
        quasimode_upper_bound(GeneratingFunctionRef::Radial(&psi), h, None, QuasimodeVariant::Sinh)
            .unwrap();
    assert!(sinh <= plain, "sinh {sinh} vs plain {plain}");
    // and the sinh bound still sits above the eigenvalue
    let numeric = pauli_groundstate(&SpectralConfig::new(h, norm.phi0() / (2.0 * std::f64::consts::PI)).with_n_r(4096), RHO, R)
        .unwrap();
    assert!(numeric.lambda_min <= sinh * 1.01, "numeric {} vs sinh {sinh}", numeric.lambda_min);
}

#[test]
fn lambda_m_rejects_disk() {
    let cfg = SpectralConfig::new(0.1, 0.0);
    assert!(lambda_m(&cfg, 0, 0.0, 1.0).is_err());
}
