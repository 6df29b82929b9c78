use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pauli_core::domain::{rasterize_annulus, AnnulusSpec};
use pauli_core::field::{solve_trace_poisson, BField, TraceVector};
use pauli_core::gauge::{minimize_oscillation_over_lattice, AnnulusOscillation};
use pauli_core::radial::{c_crit, oscillation_branches, AnnulusNormalization};
use pauli_core::spectral::{lambda_m, SpectralConfig};

fn bench_radial(c: &mut Criterion) {
    c.bench_function("oscillation_branches", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..1000 {
                let cc = -1.2 + 0.002 * i as f64;
                acc += oscillation_branches(black_box(cc), black_box(0.5));
            }
            acc
        })
    });
    c.bench_function("c_crit", |b| b.iter(|| c_crit(black_box(0.5))));
}

fn bench_lattice(c: &mut Criterion) {
    let model = AnnulusOscillation(AnnulusNormalization::new(0.5, 1.0, 1.0).unwrap());
    c.bench_function("lattice_min_w2", |b| {
        b.iter(|| {
            minimize_oscillation_over_lattice(
                &model,
                &pauli_core::field::FluxVector(vec![black_box(0.7)]),
                0.05,
                2,
            )
            .unwrap()
            .osc_star
        })
    });
}

fn bench_eigensolve(c: &mut Criterion) {
    let cfg = SpectralConfig::new(0.1, 0.0).with_n_r(1024);
    c.bench_function("lambda_m_1024", |b| {
        b.iter(|| lambda_m(&cfg, black_box(3), 0.5, 1.0).unwrap())
    });
}

fn bench_poisson(c: &mut Criterion) {
    let domain = rasterize_annulus(&AnnulusSpec::new(0.5, 1.0).unwrap(), 64).unwrap();
    c.bench_function("poisson_cg_n64", |b| {
        b.iter(|| {
            solve_trace_poisson(
                &domain,
                &BField::Constant(black_box(1.0)),
                &TraceVector::zeros(1),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, bench_radial, bench_lattice, bench_eigensolve, bench_poisson);
criterion_main!(benches);
