//! Command implementations: orchestration of the library modules plus
//! CSV/JSON/SVG emission. All floats are serialized with 17 significant
//! digits so identical configurations produce byte-identical files.

use std::path::PathBuf;
use std::sync::Arc;

use pauli_core::bounds::{
    build_report, lower_bound_ekp_annulus, lower_bound_gauge, slope_extract, upper_bound_annulus,
    upper_bound_grid, ReportInputs,
};
use pauli_core::domain::{rasterize_annulus, read_mask_file, AnnulusSpec, GridDomain};
use pauli_core::field::{
    dirichlet_groundstate_grid, harmonic_basis, oscillation, solve_trace_poisson, BField,
    FluxVector, TraceVector,
};
use pauli_core::gauge::{AnnulusOscillation, GaugeResult, GridOscillation, OscillationModel};
use pauli_core::radial::{
    c_crit, psi_of_c, AnnulusNormalization, Branch, RadialField, RadialGeneratingFunction,
};
use pauli_core::spectral::{
    dirichlet_laplacian_groundstate, kappa_sweep, pauli_groundstate, MWindow, QuasimodeVariant,
    SpectralConfig, SweepResult,
};
use pauli_core::util::format_g17;

use crate::args::{Command, FieldArgs, GeometryArgs, OutputArgs};
use crate::inputs::{read_b_grid, read_b_table};
use crate::svg::{line_chart, LineStyle, Series};
use crate::CliError;

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Potential { geometry, field, c, traces, samples, grid_n, output } => {
            cmd_potential(&geometry, &field, &c, traces, samples, grid_n, &output)
        }
        Command::Sweep {
            geometry,
            field,
            h,
            kappa,
            kappa_range,
            points,
            m_window,
            n_r,
            output,
        } => cmd_sweep(&geometry, &field, &h, kappa, kappa_range, points, m_window, n_r, &output),
        Command::Bounds {
            geometry,
            field,
            h,
            kappa,
            flux,
            window,
            eta,
            dist_const,
            n_r,
            no_eigensolve,
            output,
        } => cmd_bounds(
            &geometry,
            &field,
            &h,
            kappa,
            flux,
            window,
            eta,
            dist_const,
            n_r,
            no_eigensolve,
            &output,
        ),
        Command::Slope { geometry, field, h, kappa, n_r, output } => {
            cmd_slope(&geometry, &field, &h, kappa, n_r, &output)
        }
        Command::Laplacian { geometry, n_r, grid_n, output } => {
            cmd_laplacian(&geometry, n_r, grid_n, &output)
        }
    }
}

enum Geometry {
    Annulus { rho: f64, r_outer: f64 },
    Mask(Arc<GridDomain>),
}

fn resolve_geometry(args: &GeometryArgs) -> Result<Geometry, CliError> {
    match (&args.annulus, &args.mask) {
        (Some(radii), None) => {
            let spec = AnnulusSpec::new(radii[0], radii[1])?;
            Ok(Geometry::Annulus { rho: spec.rho, r_outer: spec.r_outer })
        }
        (None, Some(path)) => Ok(Geometry::Mask(read_mask_file(path)?)),
        (None, None) => Err(CliError::config("one of --annulus or --mask is required".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn emit(output: &OutputArgs, suffix: &str, kind: &str, content: &str) -> Result<(), CliError> {
    match &output.out {
        Some(prefix) => {
            let path = format!("{}{}", prefix.display(), suffix);
            std::fs::write(&path, content)
                .map_err(|e| CliError::config(format!("cannot write {path}: {e}")))?;
            println!("wrote {path}");
        }
        None => {
            println!("# {kind}");
            print!("{content}");
        }
    }
    Ok(())
}

fn emit_svg(path: &PathBuf, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::NoInteriorMinHighC => "no_interior_min_high_c",
        Branch::NoInteriorMinLowC => "no_interior_min_low_c",
        Branch::InteriorMin => "interior_min",
    }
}

fn require_constant_field(field: &FieldArgs, what: &str) -> Result<f64, CliError> {
    if field.b_table.is_some() || field.b_grid.is_some() {
        return Err(CliError::config(format!("{what} requires a constant field (--B)")));
    }
    if !(field.b > 0.0) {
        return Err(CliError::config(format!("--B must be > 0, got {}", field.b)));
    }
    Ok(field.b)
}

/// Critical log coefficient for an arbitrary radial field: the C with zero
/// inner trace. dψ/dC = log(r/R), so C_crit = −ψ_{C=0}(ρ)/log(ρ/R).
fn c_crit_general(rf: &RadialField, rho: f64, r_outer: f64) -> Result<f64, CliError> {
    if rho == 0.0 {
        return Ok(0.0);
    }
    match rf {
        RadialField::Constant(b0) => Ok(b0 * r_outer * r_outer * c_crit(rho / r_outer)),
        RadialField::Table(_) => {
            let f0 = psi_of_c(0.0, rf, rho, r_outer)?;
            Ok(-f0.eval(rho) / (rho / r_outer).ln())
        }
    }
}

fn flux_of(rf: &RadialField, c: f64, rho: f64) -> f64 {
    let b_inner = rf.value_at(rho);
    2.0 * std::f64::consts::PI * c + std::f64::consts::PI * rho * rho * b_inner
}

#[allow(clippy::too_many_arguments)]
fn cmd_potential(
    geometry: &GeometryArgs,
    field: &FieldArgs,
    c_tokens: &[String],
    traces: Option<Vec<f64>>,
    samples: usize,
    grid_n: Option<usize>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    match resolve_geometry(geometry)? {
        Geometry::Annulus { rho, r_outer } => {
            if field.b_grid.is_some() {
                return Err(CliError::config("--B-grid requires --mask geometry".into()));
            }
            let rf = match &field.b_table {
                Some(path) => read_b_table(path)?,
                None => RadialField::Constant(field.b),
            };
            let tokens: Vec<String> = if c_tokens.is_empty() {
                vec!["crit".into()]
            } else {
                c_tokens.to_vec()
            };
            let mut funcs: Vec<(f64, RadialGeneratingFunction)> = Vec::new();
            for tok in &tokens {
                let c = if tok == "crit" {
                    c_crit_general(&rf, rho, r_outer)?
                } else {
                    tok.parse::<f64>()
                        .map_err(|_| CliError::config(format!("bad --C value `{tok}`")))?
                };
                funcs.push((c, psi_of_c(c, &rf, rho, r_outer)?));
            }

            // summary
            let mut entries = Vec::new();
            for (c, f) in &funcs {
                let flux = if rho > 0.0 {
                    format_g17(flux_of(&rf, *c, rho))
                } else {
                    "null".into()
                };
                entries.push(format!(
                    "  {{\"c\": {}, \"branch\": \"{}\", \"psi_min\": {}, \"psi_max\": {}, \
                     \"osc\": {}, \"argmin_r\": {}, \"trace\": {}, \"flux\": {}}}",
                    format_g17(*c),
                    branch_name(f.branch),
                    format_g17(f.psi_min),
                    format_g17(f.psi_max),
                    format_g17(f.osc),
                    format_g17(f.argmin_r),
                    format_g17(f.eval(rho)),
                    flux
                ));
            }
            emit(output, ".json", "potential summary", &format!("[\n{}\n]\n", entries.join(",\n")))?;

            // samples
            let mut csv = String::from("c,r,psi\n");
            for (c, f) in &funcs {
                for (r, v) in f.sample(samples) {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        format_g17(*c),
                        format_g17(r),
                        format_g17(v)
                    ));
                }
            }
            emit(output, ".csv", "psi samples", &csv)?;

            if let Some(svg_path) = &output.svg {
                let series: Vec<Series> = funcs
                    .iter()
                    .enumerate()
                    .map(|(i, (c, f))| Series {
                        points: f.sample(samples),
                        color: 0,
                        style: LineStyle::cycle(i),
                        width: 1.5,
                        label: format!("C = {c:.6}"),
                    })
                    .collect();
                emit_svg(svg_path, &line_chart(&series, "r", "psi", &[]))?;
            }

            // optional grid cross-check output for the first C
            if let Some(n) = grid_n {
                let spec = AnnulusSpec::new(rho, r_outer)?;
                let domain = rasterize_annulus(&spec, n)?;
                let (c0, f0) = &funcs[0];
                let k = domain.hole_count();
                let tr = if k == 1 { TraceVector(vec![f0.eval(rho)]) } else { TraceVector::zeros(k) };
                let b = match &rf {
                    RadialField::Constant(b0) => BField::Constant(*b0),
                    RadialField::Table(_) => {
                        let vals: Vec<f64> = (0..domain.node_count())
                            .map(|i| {
                                let (x, y) = domain.position(i);
                                rf.value_at(x.hypot(y))
                            })
                            .collect();
                        BField::PerNode(vals)
                    }
                };
                let psi = solve_trace_poisson(&domain, &b, &tr)?;
                emit(
                    output,
                    "_grid.csv",
                    &format!("grid psi at C = {c0}"),
                    &grid_csv(&domain, &psi.values),
                )?;
            }
            Ok(())
        }
        Geometry::Mask(domain) => {
            if field.b_table.is_some() {
                return Err(CliError::config("--B-table requires --annulus geometry".into()));
            }
            let k = domain.hole_count();
            let tr = match traces {
                Some(t) => {
                    if t.len() != k {
                        return Err(CliError::config(format!(
                            "--traces has {} entries, mask domain has k = {k} holes",
                            t.len()
                        )));
                    }
                    TraceVector(t)
                }
                None => TraceVector::zeros(k),
            };
            let b = match &field.b_grid {
                Some(path) => read_b_grid(path, &domain)?,
                None => BField::Constant(field.b),
            };
            let psi = solve_trace_poisson(&domain, &b, &tr)?;
            let (min, max, osc) = oscillation(&psi);
            let summary = format!(
                "{{\"k\": {k}, \"psi_min\": {}, \"psi_max\": {}, \"osc\": {}}}\n",
                format_g17(min),
                format_g17(max),
                format_g17(osc)
            );
            emit(output, ".json", "potential summary", &summary)?;
            emit(output, "_psi.csv", "grid psi", &grid_csv(&domain, &psi.values))?;
            Ok(())
        }
    }
}

/// Row-major CSV of per-node values (nx columns, ny rows).
fn grid_csv(domain: &GridDomain, values: &[f64]) -> String {
    let mut out = String::new();
    for iy in 0..domain.ny() {
        let row: Vec<String> = (0..domain.nx())
            .map(|ix| format_g17(values[domain.index(ix, iy)]))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Scaled radii for a constant field B0 != 1: the eigenvalue problem at
/// (B0, rho, R) equals B0 times the one at (1, sqrt(B0) rho, sqrt(B0) R)
/// with identical h and kappa.
fn scaled_radii(b0: f64, rho: f64, r_outer: f64) -> (f64, f64) {
    let s = b0.sqrt();
    (s * rho, s * r_outer)
}

fn parse_m_window(m_window: Option<Vec<String>>) -> Result<MWindow, CliError> {
    match m_window {
        None => Ok(MWindow::Auto),
        Some(v) if v.len() == 1 && v[0] == "auto" => Ok(MWindow::Auto),
        Some(v) if v.len() == 2 => {
            let lo: i64 = v[0]
                .parse()
                .map_err(|_| CliError::config(format!("bad --m-window bound `{}`", v[0])))?;
            let hi: i64 = v[1]
                .parse()
                .map_err(|_| CliError::config(format!("bad --m-window bound `{}`", v[1])))?;
            Ok(MWindow::Fixed(lo, hi))
        }
        Some(v) => Err(CliError::config(format!(
            "--m-window takes `auto` or two integers, got {v:?}"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    geometry: &GeometryArgs,
    field: &FieldArgs,
    h_list: &[f64],
    kappa: Option<Vec<f64>>,
    kappa_range: Option<Vec<f64>>,
    points: usize,
    m_window: Option<Vec<String>>,
    n_r: usize,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let Geometry::Annulus { rho, r_outer } = resolve_geometry(geometry)? else {
        return Err(CliError::config(
            "sweep uses the radial eigensolver and needs --annulus geometry".into(),
        ));
    };
    if rho == 0.0 {
        return Err(CliError::config("sweep needs an annulus with rho > 0".into()));
    }
    let b0 = require_constant_field(field, "sweep")?;
    let (rho_s, r_s) = scaled_radii(b0, rho, r_outer);
    let window = parse_m_window(m_window)?;

    for (ih, &h) in h_list.iter().enumerate() {
        let kappas: Vec<f64> = match (&kappa, &kappa_range) {
            (Some(list), _) => list.clone(),
            (None, Some(range)) => linspace(range[0], range[1], points)?,
            (None, None) => linspace(-1.5 * h, 1.5 * h, points)?,
        };
        let cfg = SpectralConfig { h, kappa: 0.0, m_window: window, n_r, eig_tol: 1e-12 };
        let sweep = kappa_sweep(&cfg, &kappas, rho_s, r_s)?;

        let mut per_m = String::from("kappa,m,lambda\n");
        for row in &sweep.rows {
            per_m.push_str(&format!(
                "{},{},{}\n",
                format_g17(row.kappa),
                row.m,
                format_g17(b0 * row.lambda)
            ));
        }
        let mut envelope = String::from("kappa,lambda_min,m_star\n");
        for p in &sweep.envelope {
            envelope.push_str(&format!(
                "{},{},{}\n",
                format_g17(p.kappa),
                format_g17(b0 * p.lambda_min),
                p.m_star
            ));
        }
        let tag = if h_list.len() > 1 { format!("_h{ih}") } else { String::new() };
        emit(output, &format!("{tag}.csv"), "per-m eigenvalues", &per_m)?;
        emit(output, &format!("{tag}_envelope.csv"), "envelope", &envelope)?;

        if let Some(svg_path) = &output.svg {
            let path = if h_list.len() > 1 {
                let mut p = svg_path.clone();
                p.set_extension(format!("h{ih}.svg"));
                p
            } else {
                svg_path.clone()
            };
            emit_svg(&path, &sweep_chart(&sweep, b0, h))?;
        }
    }
    Ok(())
}

fn sweep_chart(sweep: &SweepResult, b0: f64, h: f64) -> String {
    let (lo, hi) = sweep.union_window;
    let mut series = Vec::new();
    for (i, m) in (lo..=hi).enumerate() {
        let points: Vec<(f64, f64)> = sweep
            .rows
            .iter()
            .filter(|r| r.m == m)
            .map(|r| (r.kappa, b0 * r.lambda))
            .collect();
        series.push(Series { points, color: i, style: LineStyle::Solid, width: 1.0, label: String::new() });
    }
    // envelope over one flux period [0, h], in bold
    let bold: Vec<(f64, f64)> = sweep
        .envelope
        .iter()
        .filter(|p| p.kappa >= -1e-12 && p.kappa <= h + 1e-12)
        .map(|p| (p.kappa, b0 * p.lambda_min))
        .collect();
    series.push(Series {
        points: bold,
        color: 7,
        style: LineStyle::Solid,
        width: 3.0,
        label: "envelope (one period)".into(),
    });
    line_chart(&series, "kappa", "lambda", &[0.0, h])
}

fn linspace(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::config(format!("need at least 2 grid points, got {points}")));
    }
    if !(hi > lo) {
        return Err(CliError::config(format!("empty range [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|j| lo + step * j as f64).collect())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    geometry: &GeometryArgs,
    field: &FieldArgs,
    h_list: &[f64],
    kappa: Option<f64>,
    flux: Option<Vec<f64>>,
    window: i64,
    eta: Option<f64>,
    dist_const: Option<f64>,
    n_r: usize,
    no_eigensolve: bool,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let mut reports = Vec::new();
    match resolve_geometry(geometry)? {
        Geometry::Annulus { rho, r_outer } => {
            let b0 = require_constant_field(field, "bounds")?;
            if rho == 0.0 {
                // Disk: no holes, no lattice; the gauge bound coincides with
                // the basic one.
                let psi0 = psi_of_c(0.0, &RadialField::Constant(b0), 0.0, r_outer)?;
                let lam_d = dirichlet_laplacian_groundstate(0.0, r_outer, n_r)?;
                for &h in h_list {
                    let upper = pauli_core::spectral::quasimode_upper_bound(
                        pauli_core::spectral::GeneratingFunctionRef::Radial(&psi0),
                        h,
                        eta,
                        QuasimodeVariant::Plain,
                    )?;
                    let ekp = lower_bound_ekp_annulus(0.0, r_outer, b0, h)?;
                    reports.push(build_report(ReportInputs {
                        h,
                        flux: FluxVector(vec![]),
                        lambda_dirichlet: lam_d,
                        osc_at_flux: psi0.osc,
                        gauge: GaugeResult {
                            alpha_star: vec![],
                            osc_star: psi0.osc,
                            delta: 0.0,
                            shifted_flux: FluxVector(vec![]),
                        },
                        two_inf_psi0: 2.0 * psi0.psi_min,
                        lower_ekp_annulus: Some(ekp),
                        upper_quasimode: Some(upper),
                        lambda_numeric: None,
                    }));
                }
            } else {
                let norm = AnnulusNormalization::new(rho, r_outer, b0)?;
                let model = AnnulusOscillation(norm);
                let lam_d = dirichlet_laplacian_groundstate(rho, r_outer, n_r)?;
                let flux_value = match (&flux, kappa) {
                    (Some(f), _) if f.len() == 1 => f[0],
                    (Some(f), _) => {
                        return Err(CliError::config(format!(
                            "annulus bounds take a single flux, got {} components",
                            f.len()
                        )))
                    }
                    (None, Some(k)) => 2.0 * std::f64::consts::PI * k,
                    (None, None) => 0.0,
                };
                let flux_vec = FluxVector(vec![flux_value]);
                let (rho_s, r_s) = scaled_radii(b0, rho, r_outer);
                for &h in h_list {
                    let gauge =
                        lower_bound_gauge(&model, &flux_vec, h, lam_d, window, dist_const)?;
                    let lambda_numeric = if no_eigensolve {
                        None
                    } else {
                        let cfg = SpectralConfig {
                            h,
                            kappa: flux_value / (2.0 * std::f64::consts::PI),
                            m_window: MWindow::Auto,
                            n_r,
                            eig_tol: 1e-12,
                        };
                        Some(b0 * pauli_groundstate(&cfg, rho_s, r_s)?.lambda_min)
                    };
                    let upper =
                        upper_bound_annulus(&norm, &flux_vec, h, eta, QuasimodeVariant::Plain)?;
                    let ekp = lower_bound_ekp_annulus(rho, r_outer, b0, h)?;
                    reports.push(build_report(ReportInputs {
                        h,
                        flux: flux_vec.clone(),
                        lambda_dirichlet: lam_d,
                        osc_at_flux: model.oscillation_at(&flux_vec)?,
                        gauge: gauge.gauge.clone(),
                        two_inf_psi0: 2.0 * norm.psi0().psi_min,
                        lower_ekp_annulus: Some(ekp),
                        upper_quasimode: Some(upper.value),
                        lambda_numeric,
                    }));
                }
            }
        }
        Geometry::Mask(domain) => {
            let k = domain.hole_count();
            let b = match &field.b_grid {
                Some(path) => read_b_grid(path, &domain)?,
                None => {
                    if field.b_table.is_some() {
                        return Err(CliError::config(
                            "--B-table requires --annulus geometry".into(),
                        ));
                    }
                    BField::Constant(field.b)
                }
            };
            let flux_vec = match flux {
                Some(f) if f.len() == k => FluxVector(f),
                Some(f) => {
                    return Err(CliError::config(format!(
                        "--flux has {} components, mask domain has k = {k} holes",
                        f.len()
                    )))
                }
                None => {
                    return Err(CliError::config(
                        "mask bounds need --flux with one component per hole".into(),
                    ))
                }
            };
            let (basis, psi0) = harmonic_basis(&domain, &b)?;
            let lam_d = dirichlet_groundstate_grid(&domain)?;
            let model = GridOscillation { basis: &basis, psi0: &psi0 };
            let two_inf = 2.0 * oscillation(&psi0).0;
            for &h in h_list {
                let gauge = lower_bound_gauge(&model, &flux_vec, h, lam_d, window, dist_const)?;
                let upper =
                    upper_bound_grid(&basis, &psi0, &flux_vec, h, eta, QuasimodeVariant::Plain)?;
                reports.push(build_report(ReportInputs {
                    h,
                    flux: flux_vec.clone(),
                    lambda_dirichlet: lam_d,
                    osc_at_flux: model.oscillation_at(&flux_vec)?,
                    gauge: gauge.gauge.clone(),
                    two_inf_psi0: two_inf,
                    lower_ekp_annulus: None,
                    upper_quasimode: Some(upper.value),
                    lambda_numeric: None,
                }));
            }
        }
    }

    if reports.len() == 1 {
        emit(output, ".json", "bound report", &reports[0].to_json())?;
    } else {
        for (i, r) in reports.iter().enumerate() {
            emit(output, &format!("_h{i}.json"), "bound report", &r.to_json())?;
        }
    }
    Ok(())
}

fn cmd_slope(
    geometry: &GeometryArgs,
    field: &FieldArgs,
    h_list: &[f64],
    kappa: f64,
    n_r: usize,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let Geometry::Annulus { rho, r_outer } = resolve_geometry(geometry)? else {
        return Err(CliError::config(
            "slope uses the radial eigensolver and needs --annulus geometry".into(),
        ));
    };
    if rho == 0.0 {
        return Err(CliError::config("slope needs an annulus with rho > 0".into()));
    }
    let b0 = require_constant_field(field, "slope")?;
    if h_list.len() < 2 {
        return Err(CliError::config("slope needs at least two h values".into()));
    }
    let (rho_s, r_s) = scaled_radii(b0, rho, r_outer);

    let mut table = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let cfg = SpectralConfig { h, kappa, m_window: MWindow::Auto, n_r, eig_tol: 1e-12 };
        let result = pauli_groundstate(&cfg, rho_s, r_s)?;
        table.push((h, b0 * result.lambda_min));
    }
    let norm = AnnulusNormalization::new(rho, r_outer, b0)?;
    let est = slope_extract(&table)?.with_target(2.0 * norm.psi0().psi_min);
    emit(output, ".json", "slope estimate", &est.to_json())
}

fn cmd_laplacian(
    geometry: &GeometryArgs,
    n_r: usize,
    grid_n: Option<usize>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (value, method, grid_value) = match resolve_geometry(geometry)? {
        Geometry::Annulus { rho, r_outer } => {
            let lam = dirichlet_laplacian_groundstate(rho, r_outer, n_r)?;
            let method = if rho == 0.0 { "disk_bessel" } else { "radial_fd" };
            let grid_value = match grid_n {
                Some(n) => {
                    let domain = rasterize_annulus(&AnnulusSpec::new(rho, r_outer)?, n)?;
                    Some(dirichlet_groundstate_grid(&domain)?)
                }
                None => None,
            };
            (lam, method, grid_value)
        }
        Geometry::Mask(domain) => {
            (dirichlet_groundstate_grid(&domain)?, "grid_inverse_power", None)
        }
    };
    let grid_part = match grid_value {
        Some(v) => format!(",\n  \"lambda_dirichlet_grid\": {}", format_g17(v)),
        None => String::new(),
    };
    let json = format!(
        "{{\n  \"lambda_dirichlet\": {},\n  \"method\": \"{method}\"{grid_part}\n}}\n",
        format_g17(value)
    );
    emit(output, ".json", "dirichlet laplacian", &json)
}
