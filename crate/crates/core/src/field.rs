//! Grid Poisson/Hodge machinery: solve Δψ = B with prescribed boundary
//! traces on a [`GridDomain`], build the harmonic basis θ_j, assemble the
//! circulation matrix M and the affine flux↔trace maps.
//!
//! The discrete operator is the 5-point Laplacian with node-centered
//! Dirichlet data. On rasterized annuli the interior→boundary arms carry the
//! circle-crossing fractions recorded by the domain; the Dirichlet value is
//! then imposed at the exact crossing through a linear-extrapolation ghost
//! correction that only modifies the diagonal and the right-hand side, so the
//! system stays symmetric positive definite and second-order accurate. Mask
//! domains have full arms and reduce to the plain staircase scheme.

use std::sync::Arc;

use rayon::prelude::*;

use crate::domain::{Dir, GridDomain, NodeClass};
use crate::error::{Error, Result};

/// Scalar samples on a grid; values are meaningful on INTERIOR and BOUNDARY
/// nodes (BOUNDARY nodes carry the prescribed trace of their component).
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub domain: Arc<GridDomain>,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn constant(domain: Arc<GridDomain>, value: f64) -> Self {
        let values = vec![value; domain.node_count()];
        Self { domain, values }
    }
}

/// Boundary traces p_j, one per hole (component labels 1..=k).
#[derive(Debug, Clone, PartialEq)]
pub struct TraceVector(pub Vec<f64>);

/// Circulations Φ_j, one per hole.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxVector(pub Vec<f64>);

impl FluxVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TraceVector {
    pub fn zeros(k: usize) -> Self {
        Self(vec![0.0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Magnetic field samples for the grid solver.
#[derive(Debug, Clone)]
pub enum BField {
    Constant(f64),
    /// Row-major per-node samples matching the domain grid.
    PerNode(Vec<f64>),
}

impl BField {
    fn at(&self, node: usize) -> f64 {
        match self {
            BField::Constant(b) => *b,
            BField::PerNode(v) => v[node],
        }
    }

    fn validate(&self, domain: &GridDomain) -> Result<()> {
        if let BField::PerNode(v) = self {
            if v.len() != domain.node_count() {
                return Err(Error::InvalidInput(format!(
                    "B samples have {} entries, grid has {} nodes",
                    v.len(),
                    domain.node_count()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("B samples must be finite".into()));
            }
        }
        Ok(())
    }
}

/// Relative-residual target for the conjugate-gradient solver.
pub const CG_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
enum Arm {
    Unknown(usize),
    /// Boundary arm: component label and arm fraction s.
    Boundary { component: usize, s: f64 },
}

/// Assembled SPD system for one domain, reusable across right-hand sides.
struct PoissonSystem {
    domain: Arc<GridDomain>,
    /// Node index per unknown.
    nodes: Vec<usize>,
    arms: Vec<[Arm; 4]>,
    /// Diagonal in units of 1/dx².
    diag: Vec<f64>,
}

impl PoissonSystem {
    fn build(domain: &Arc<GridDomain>) -> Self {
        let mut unknown_of_node = vec![usize::MAX; domain.node_count()];
        let mut nodes = Vec::new();
        for idx in domain.interior_indices() {
            unknown_of_node[idx] = nodes.len();
            nodes.push(idx);
        }
        let mut arms = Vec::with_capacity(nodes.len());
        let mut diag = Vec::with_capacity(nodes.len());
        for &idx in &nodes {
            let mut entry = [Arm::Unknown(usize::MAX); 4];
            let mut d = 0.0;
            for (slot, dir) in Dir::ALL.into_iter().enumerate() {
                let nb = domain
                    .neighbor(idx, dir)
                    .expect("interior nodes keep all four arms on the padded grid");
                match domain.class(nb) {
                    NodeClass::Interior => {
                        entry[slot] = Arm::Unknown(unknown_of_node[nb]);
                        d += 1.0;
                    }
                    NodeClass::Boundary(component) => {
                        let s = domain.cut_fraction(idx, dir);
                        entry[slot] = Arm::Boundary { component, s };
                        d += 1.0 / s;
                    }
                    NodeClass::Exterior => {
                        unreachable!("interior node adjacent to exterior node")
                    }
                }
            }
            arms.push(entry);
            diag.push(d);
        }
        Self { domain: Arc::clone(domain), nodes, arms, diag }
    }

    fn n(&self) -> usize {
        self.nodes.len()
    }

    /// y = A x with A = (1/dx²)(diag − adjacency).
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let inv_dx2 = 1.0 / (self.domain.spacing() * self.domain.spacing());
        for (u, arms) in self.arms.iter().enumerate() {
            let mut acc = self.diag[u] * x[u];
            for arm in arms {
                if let Arm::Unknown(v) = arm {
                    acc -= x[*v];
                }
            }
            y[u] = acc * inv_dx2;
        }
    }

    /// Right-hand side for Δψ = B with traces g (g_0 = 0 on the outer
    /// component): b = −B + (1/dx²) Σ_boundary-arms g_c/s.
    fn rhs(&self, b_field: &BField, traces: &TraceVector) -> Vec<f64> {
        let inv_dx2 = 1.0 / (self.domain.spacing() * self.domain.spacing());
        let trace_of = |component: usize| -> f64 {
            if component == 0 {
                0.0
            } else {
                traces.0[component - 1]
            }
        };
        self.arms
            .iter()
            .zip(&self.nodes)
            .map(|(arms, &node)| {
                let mut acc = -b_field.at(node);
                for arm in arms {
                    if let Arm::Boundary { component, s } = arm {
                        let g = trace_of(*component);
                        if g != 0.0 {
                            acc += g / s * inv_dx2;
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Jacobi-preconditioned conjugate gradients.
    fn cg(&self, b: &[f64], x0: Option<&[f64]>) -> Result<Vec<f64>> {
        let n = self.n();
        let norm_b = norm2(b);
        if norm_b == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let inv_dx2 = 1.0 / (self.domain.spacing() * self.domain.spacing());
        let inv_diag: Vec<f64> = self.diag.iter().map(|d| 1.0 / (d * inv_dx2)).collect();

        let mut x = x0.map_or_else(|| vec![0.0; n], |v| v.to_vec());
        let mut r = vec![0.0; n];
        self.apply(&x, &mut r);
        for i in 0..n {
            r[i] = b[i] - r[i];
        }
        let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![0.0; n];

        let cap = 20 * (self.domain.nx() + self.domain.ny());
        let target = CG_TOLERANCE * norm_b;
        let mut residual = norm2(&r);
        if residual <= target {
            return Ok(x);
        }
        for _ in 0..cap {
            self.apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            residual = norm2(&r);
            if residual <= target {
                return Ok(x);
            }
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(Error::SolverDiverged {
            residual: residual / norm_b,
            iterations: cap,
            target: CG_TOLERANCE,
        })
    }

    /// Expand unknowns to a full grid function, filling boundary traces.
    fn expand(&self, x: &[f64], traces: &TraceVector) -> GridFunction {
        let mut values = vec![0.0; self.domain.node_count()];
        for (u, &node) in self.nodes.iter().enumerate() {
            values[node] = x[u];
        }
        for idx in 0..self.domain.node_count() {
            if let NodeClass::Boundary(component) = self.domain.class(idx) {
                values[idx] = if component == 0 { 0.0 } else { traces.0[component - 1] };
            }
        }
        GridFunction { domain: Arc::clone(&self.domain), values }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solve Δψ = B with trace 0 on the outer boundary and p_j on hole j.
pub fn solve_trace_poisson(
    domain: &Arc<GridDomain>,
    b_field: &BField,
    traces: &TraceVector,
) -> Result<GridFunction> {
    if traces.len() != domain.hole_count() {
        return Err(Error::InvalidInput(format!(
            "trace vector has length {}, domain has k = {} holes",
            traces.len(),
            domain.hole_count()
        )));
    }
    b_field.validate(domain)?;
    let sys = PoissonSystem::build(domain);
    let b = sys.rhs(b_field, traces);
    let x = sys.cg(&b, None)?;
    Ok(sys.expand(&x, traces))
}

/// Harmonic basis θ_j with the circulation matrix M (k×k, row-major) and the
/// reference circulations Φ(Ω_j, 0) of the zero-trace solution.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub domain: Arc<GridDomain>,
    pub thetas: Vec<GridFunction>,
    /// Row-major k×k, M_ij = −∫ ∇θ_i · ∇θ_j.
    pub m: Vec<f64>,
    pub phi0: FluxVector,
}

impl HarmonicBasis {
    pub fn k(&self) -> usize {
        self.thetas.len()
    }

    pub fn m_entry(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.k() + j]
    }
}

/// Discrete Dirichlet energy ∫ ∇u · ∇v over the domain, assembled from
/// forward differences on grid edges with the solver's arm weights (cut
/// boundary arms carry weight 1/s). Exactly the bilinear form of the SPD
/// system, so Green identities hold discretely.
pub fn energy_product(domain: &GridDomain, u: &GridFunction, v: &GridFunction) -> f64 {
    let mut acc = 0.0;
    for idx in domain.interior_indices() {
        for dir in [Dir::East, Dir::North] {
            let nb = domain.neighbor(idx, dir).unwrap();
            if domain.class(nb) == NodeClass::Interior {
                acc += (u.values[nb] - u.values[idx]) * (v.values[nb] - v.values[idx]);
            }
        }
        for dir in Dir::ALL {
            let nb = domain.neighbor(idx, dir).unwrap();
            if matches!(domain.class(nb), NodeClass::Boundary(_)) {
                let s = domain.cut_fraction(idx, dir);
                acc += (u.values[nb] - u.values[idx]) * (v.values[nb] - v.values[idx]) / s;
            }
        }
    }
    acc
}

/// Nodal quadrature of ∫ u·B over the interior.
fn b_integral(domain: &GridDomain, u: &GridFunction, b_field: &BField) -> f64 {
    let dx2 = domain.spacing() * domain.spacing();
    domain
        .interior_indices()
        .map(|idx| u.values[idx] * b_field.at(idx))
        .sum::<f64>()
        * dx2
}

/// Solve the k harmonic problems Δθ_j = 0 (θ_j = 1 on hole j, 0 elsewhere),
/// assemble M from the energy Gram identity, and compute Φ(Ω_j, 0) from the
/// companion identity Φ_i(0) = −∫∇θ_i·∇ψ₀ − ∫θ_i B. Returns the basis and
/// the zero-trace solution ψ₀.
pub fn harmonic_basis(
    domain: &Arc<GridDomain>,
    b_field: &BField,
) -> Result<(HarmonicBasis, GridFunction)> {
    let k = domain.hole_count();
    if k == 0 {
        return Err(Error::InvalidInput(
            "harmonic basis requires at least one hole (k >= 1)".into(),
        ));
    }
    b_field.validate(domain)?;

    let sys = PoissonSystem::build(domain);
    let zero_field = BField::Constant(0.0);

    // The k theta solves and psi0 are independent; run them in parallel,
    // collecting in index order.
    let mut jobs: Vec<(BField, TraceVector)> = (0..k)
        .map(|j| {
            let mut t = TraceVector::zeros(k);
            t.0[j] = 1.0;
            (zero_field.clone(), t)
        })
        .collect();
    jobs.push((b_field.clone(), TraceVector::zeros(k)));

    let solved: Vec<Result<GridFunction>> = jobs
        .par_iter()
        .map(|(field, traces)| {
            let b = sys.rhs(field, traces);
            let x = sys.cg(&b, None)?;
            Ok(sys.expand(&x, traces))
        })
        .collect();

    let mut funcs = Vec::with_capacity(k + 1);
    for r in solved {
        funcs.push(r?);
    }
    let psi0 = funcs.pop().unwrap();
    let thetas = funcs;

    let mut m = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let e = energy_product(domain, &thetas[i], &thetas[j]);
            m[i * k + j] = -e;
            m[j * k + i] = -e;
        }
    }
    let phi0: Vec<f64> = (0..k)
        .map(|i| -energy_product(domain, &thetas[i], &psi0) - b_integral(domain, &thetas[i], b_field))
        .collect();

    Ok((
        HarmonicBasis { domain: Arc::clone(domain), thetas, m, phi0: FluxVector(phi0) },
        psi0,
    ))
}

/// Affine map Φ_i(p) = Φ(Ω_i, 0) + Σ_j M_ij p_j.
pub fn flux_from_trace(basis: &HarmonicBasis, traces: &TraceVector) -> Result<FluxVector> {
    let k = basis.k();
    if traces.len() != k {
        return Err(Error::InvalidInput(format!(
            "trace vector has length {}, basis has k = {k}",
            traces.len()
        )));
    }
    let mut out = basis.phi0.0.clone();
    for i in 0..k {
        for j in 0..k {
            out[i] += basis.m_entry(i, j) * traces.0[j];
        }
    }
    Ok(FluxVector(out))
}

/// Inverse map p(Φ): solve M p = Φ − Φ(·,0) by LU with partial pivoting.
/// Rejects a condition estimate above 1e12 (a degenerate discretization —
/// M itself is provably invertible).
pub fn trace_from_flux(basis: &HarmonicBasis, flux: &FluxVector) -> Result<TraceVector> {
    let k = basis.k();
    if flux.len() != k {
        return Err(Error::InvalidInput(format!(
            "flux vector has length {}, basis has k = {k}",
            flux.len()
        )));
    }
    let lu = smallmat::Lu::factor(&basis.m, k)?;
    let cond = lu.condition_estimate(&basis.m, k);
    if cond > 1e12 {
        return Err(Error::IllConditioned { cond });
    }
    let rhs: Vec<f64> = (0..k).map(|i| flux.0[i] - basis.phi0.0[i]).collect();
    Ok(TraceVector(lu.solve(&rhs)))
}

/// Extrema of a grid function over INTERIOR ∪ BOUNDARY nodes.
/// Returns (ψ_min, ψ_max, Osc).
pub fn oscillation(psi: &GridFunction) -> (f64, f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for idx in 0..psi.domain.node_count() {
        match psi.domain.class(idx) {
            NodeClass::Interior | NodeClass::Boundary(_) => {
                let v = psi.values[idx];
                if v < min {
                    min = v;
                }
                if v > max {
                    max = v;
                }
            }
            NodeClass::Exterior => {}
        }
    }
    (min, max, max - min)
}

/// ψ_p for arbitrary traces by superposition: ψ_p = ψ₀ + Σ_j p_j θ_j.
pub fn superpose(psi0: &GridFunction, basis: &HarmonicBasis, traces: &TraceVector) -> GridFunction {
    let mut values = psi0.values.clone();
    for (j, theta) in basis.thetas.iter().enumerate() {
        let p = traces.0[j];
        if p != 0.0 {
            for (v, t) in values.iter_mut().zip(&theta.values) {
                *v += p * t;
            }
        }
    }
    GridFunction { domain: Arc::clone(&psi0.domain), values }
}

/// Distance from each node to the nearest boundary node, by a two-pass
/// chamfer transform (3–4% accurate; used to shape cutoff profiles, where
/// only the ramp width matters, and for the inradius guard).
#[derive(Debug, Clone)]
pub struct NodeDistanceField {
    dist: Vec<f64>,
    inradius: f64,
}

impl NodeDistanceField {
    pub fn build(domain: &GridDomain) -> Self {
        let (nx, ny) = (domain.nx(), domain.ny());
        let dx = domain.spacing();
        let diag = std::f64::consts::SQRT_2 * dx;
        let mut dist = vec![f64::INFINITY; nx * ny];
        for idx in 0..nx * ny {
            if matches!(domain.class(idx), NodeClass::Boundary(_)) {
                dist[idx] = 0.0;
            }
        }
        let at = |d: &Vec<f64>, ix: isize, iy: isize| -> f64 {
            if ix < 0 || iy < 0 || ix >= nx as isize || iy >= ny as isize {
                f64::INFINITY
            } else {
                d[iy as usize * nx + ix as usize]
            }
        };
        for iy in 0..ny as isize {
            for ix in 0..nx as isize {
                let idx = iy as usize * nx + ix as usize;
                let mut v = dist[idx];
                v = v.min(at(&dist, ix - 1, iy) + dx);
                v = v.min(at(&dist, ix, iy - 1) + dx);
                v = v.min(at(&dist, ix - 1, iy - 1) + diag);
                v = v.min(at(&dist, ix + 1, iy - 1) + diag);
                dist[idx] = v;
            }
        }
        let mut inradius = 0.0f64;
        for iy in (0..ny as isize).rev() {
            for ix in (0..nx as isize).rev() {
                let idx = iy as usize * nx + ix as usize;
                let mut v = dist[idx];
                v = v.min(at(&dist, ix + 1, iy) + dx);
                v = v.min(at(&dist, ix, iy + 1) + dx);
                v = v.min(at(&dist, ix + 1, iy + 1) + diag);
                v = v.min(at(&dist, ix - 1, iy + 1) + diag);
                dist[idx] = v;
                if domain.class(idx) == NodeClass::Interior {
                    inradius = inradius.max(v);
                }
            }
        }
        Self { dist, inradius }
    }

    pub fn distance(&self, idx: usize) -> f64 {
        self.dist[idx]
    }

    /// Largest node-to-boundary distance (inscribed-disk radius estimate).
    pub fn inradius(&self) -> f64 {
        self.inradius
    }
}

/// Ground-state energy of the Dirichlet Laplacian on the grid domain, by
/// inverse power iteration on the SPD 5-point system (CG inner solves).
pub fn dirichlet_groundstate_grid(domain: &Arc<GridDomain>) -> Result<f64> {
    let sys = PoissonSystem::build(domain);
    let n = sys.n();
    if n == 0 {
        return Err(Error::InvalidInput("domain has no interior nodes".into()));
    }
    let mut x = vec![1.0; n];
    let scale = 1.0 / (n as f64).sqrt();
    for v in x.iter_mut() {
        *v *= scale;
    }
    let mut lambda = 0.0;
    let mut ax = vec![0.0; n];
    for _ in 0..200 {
        let y = sys.cg(&x, Some(&x))?;
        let ny = norm2(&y);
        for i in 0..n {
            x[i] = y[i] / ny;
        }
        sys.apply(&x, &mut ax);
        let next = dot(&x, &ax);
        if (next - lambda).abs() <= 1e-10 * next.abs() {
            return Ok(next);
        }
        lambda = next;
    }
    Ok(lambda)
}

mod smallmat {
    //! Dense LU with partial pivoting for the k×k circulation matrix.

    use crate::error::{Error, Result};

    pub struct Lu {
        k: usize,
        lu: Vec<f64>,
        piv: Vec<usize>,
    }

    impl Lu {
        pub fn factor(m: &[f64], k: usize) -> Result<Lu> {
            let mut lu = m.to_vec();
            let mut piv: Vec<usize> = (0..k).collect();
            for col in 0..k {
                let mut pivot_row = col;
                let mut best = lu[col * k + col].abs();
                for row in col + 1..k {
                    let v = lu[row * k + col].abs();
                    if v > best {
                        best = v;
                        pivot_row = row;
                    }
                }
                if best == 0.0 {
                    return Err(Error::IllConditioned { cond: f64::INFINITY });
                }
                if pivot_row != col {
                    for j in 0..k {
                        lu.swap(col * k + j, pivot_row * k + j);
                    }
                    piv.swap(col, pivot_row);
                }
                let d = lu[col * k + col];
                for row in col + 1..k {
                    let f = lu[row * k + col] / d;
                    lu[row * k + col] = f;
                    for j in col + 1..k {
                        lu[row * k + j] -= f * lu[col * k + j];
                    }
                }
            }
            Ok(Lu { k, lu, piv })
        }

        pub fn solve(&self, b: &[f64]) -> Vec<f64> {
            let k = self.k;
            let mut x: Vec<f64> = self.piv.iter().map(|&p| b[p]).collect();
            for i in 0..k {
                for j in 0..i {
                    x[i] -= self.lu[i * k + j] * x[j];
                }
            }
            for i in (0..k).rev() {
                for j in i + 1..k {
                    x[i] -= self.lu[i * k + j] * x[j];
                }
                x[i] /= self.lu[i * k + i];
            }
            x
        }

        /// One-norm condition estimate via explicit inverse columns
        /// (k is small, 1..=4 in practice).
        pub fn condition_estimate(&self, m: &[f64], k: usize) -> f64 {
            let norm = |mat: &dyn Fn(usize, usize) -> f64| -> f64 {
                (0..k)
                    .map(|j| (0..k).map(|i| mat(i, j).abs()).sum::<f64>())
                    .fold(0.0, f64::max)
            };
            let norm_m = norm(&|i, j| m[i * k + j]);
            let mut inv = vec![0.0; k * k];
            for j in 0..k {
                let mut e = vec![0.0; k];
                e[j] = 1.0;
                let col = self.solve(&e);
                for i in 0..k {
                    inv[i * k + j] = col[i];
                }
            }
            let norm_inv = norm(&|i, j| inv[i * k + j]);
            norm_m * norm_inv
        }
    }
}
