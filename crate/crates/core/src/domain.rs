//! Planar computational domains: the analytic annulus and grid-rasterized
//! multiply connected regions with labeled boundary components.
//!
//! A [`GridDomain`] is a node-centered Cartesian grid. INTERIOR nodes carry
//! unknowns; BOUNDARY nodes are complement nodes adjacent to the interior and
//! carry prescribed Dirichlet traces, one label per complement component
//! (0 = unbounded component, 1..=k = holes ordered by min row, then min
//! column). For rasterized annuli the domain additionally stores, per
//! interior→boundary arm, the fraction of the arm inside the true circle, so
//! the field solver can impose the Dirichlet data at the exact crossing.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Analytic annulus ρ < |x| < R; ρ = 0 degenerates to the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusSpec {
    pub rho: f64,
    pub r_outer: f64,
}

impl AnnulusSpec {
    pub fn new(rho: f64, r_outer: f64) -> Result<Self> {
        if !(rho.is_finite() && r_outer.is_finite()) || rho < 0.0 || rho >= r_outer {
            return Err(Error::InvalidInput(format!(
                "annulus requires 0 <= rho < R, got rho = {rho}, R = {r_outer}"
            )));
        }
        Ok(Self { rho, r_outer })
    }

    pub fn is_disk(&self) -> bool {
        self.rho == 0.0
    }
}

/// Per-node classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    Exterior,
    Interior,
    /// Complement node adjacent to the interior; the argument is the
    /// complement-component label (0 = unbounded, 1..=k = holes).
    Boundary(usize),
}

/// Grid arm directions, in the fixed order used for cut-fraction keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    East,
    West,
    North,
    South,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::East, Dir::West, Dir::North, Dir::South];

    pub fn offset(self) -> (isize, isize) {
        match self {
            Dir::East => (1, 0),
            Dir::West => (-1, 0),
            Dir::North => (0, 1),
            Dir::South => (0, -1),
        }
    }
}

/// Node-centered Cartesian grid with labeled boundary components.
#[derive(Debug, Clone)]
pub struct GridDomain {
    origin: (f64, f64),
    spacing: f64,
    nx: usize,
    ny: usize,
    class: Vec<NodeClass>,
    hole_count: usize,
    /// Fraction s ∈ (0,1] of the arm from an interior node towards a
    /// boundary node that lies inside the true geometry. Absent entries
    /// mean s = 1 (the staircase is the geometry, e.g. mask domains).
    cut_fractions: HashMap<(usize, Dir), f64>,
}

impl GridDomain {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin(&self) -> (f64, f64) {
        self.origin
    }

    /// Number of holes k.
    pub fn hole_count(&self) -> usize {
        self.hole_count
    }

    pub fn node_count(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    #[inline]
    pub fn class(&self, idx: usize) -> NodeClass {
        self.class[idx]
    }

    #[inline]
    pub fn class_at(&self, ix: usize, iy: usize) -> NodeClass {
        self.class[self.index(ix, iy)]
    }

    pub fn position(&self, idx: usize) -> (f64, f64) {
        let ix = idx % self.nx;
        let iy = idx / self.nx;
        (
            self.origin.0 + ix as f64 * self.spacing,
            self.origin.1 + iy as f64 * self.spacing,
        )
    }

    /// Neighbor index in direction `dir`, if inside the array bounds.
    #[inline]
    pub fn neighbor(&self, idx: usize, dir: Dir) -> Option<usize> {
        let ix = (idx % self.nx) as isize;
        let iy = (idx / self.nx) as isize;
        let (dx, dy) = dir.offset();
        let (jx, jy) = (ix + dx, iy + dy);
        if jx < 0 || jy < 0 || jx >= self.nx as isize || jy >= self.ny as isize {
            None
        } else {
            Some(jy as usize * self.nx + jx as usize)
        }
    }

    /// Arm fraction for an interior node towards a boundary neighbor.
    #[inline]
    pub fn cut_fraction(&self, interior_idx: usize, dir: Dir) -> f64 {
        *self.cut_fractions.get(&(interior_idx, dir)).unwrap_or(&1.0)
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.class
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == NodeClass::Interior)
            .map(|(i, _)| i)
    }

    pub fn interior_count(&self) -> usize {
        self.class
            .iter()
            .filter(|c| **c == NodeClass::Interior)
            .count()
    }

    pub fn boundary_count(&self, component: usize) -> usize {
        self.class
            .iter()
            .filter(|c| **c == NodeClass::Boundary(component))
            .count()
    }
}

fn bfs_component(
    seed: usize,
    nx: usize,
    ny: usize,
    member: &impl Fn(usize) -> bool,
    visited: &mut [bool],
) -> Vec<usize> {
    let mut stack = vec![seed];
    let mut comp = Vec::new();
    visited[seed] = true;
    while let Some(idx) = stack.pop() {
        comp.push(idx);
        let ix = idx % nx;
        let iy = idx / nx;
        let mut push = |jx: isize, jy: isize| {
            if jx >= 0 && jy >= 0 && (jx as usize) < nx && (jy as usize) < ny {
                let j = jy as usize * nx + jx as usize;
                if !visited[j] && member(j) {
                    visited[j] = true;
                    stack.push(j);
                }
            }
        };
        push(ix as isize + 1, iy as isize);
        push(ix as isize - 1, iy as isize);
        push(ix as isize, iy as isize + 1);
        push(ix as isize, iy as isize - 1);
    }
    comp
}

/// Classify a raw inside/outside bitmap into a labeled [`GridDomain`].
///
/// Complement (outside) components are found by 4-connected flood fill. The
/// component touching the array frame is the unbounded one and labels
/// adjacent outside nodes BOUNDARY(0); bounded components are the holes,
/// ordered by (min row, then min column) and labeled 1..=k. Rejects a
/// disconnected interior.
fn classify(
    inside: &[bool],
    nx: usize,
    ny: usize,
    origin: (f64, f64),
    spacing: f64,
) -> Result<GridDomain> {
    let n = nx * ny;
    assert_eq!(inside.len(), n);
    if !inside.iter().any(|&b| b) {
        return Err(Error::InvalidInput("mask has no inside nodes".into()));
    }

    // Outside nodes on the frame seed the unbounded complement component.
    // The frame rows/columns themselves must be outside, otherwise the
    // "unbounded" component is ambiguous.
    for ix in 0..nx {
        for iy in [0, ny - 1] {
            if inside[iy * nx + ix] {
                return Err(Error::InvalidInput(
                    "inside nodes touch the grid frame; grow the grid by one ring".into(),
                ));
            }
        }
    }
    for iy in 0..ny {
        for ix in [0, nx - 1] {
            if inside[iy * nx + ix] {
                return Err(Error::InvalidInput(
                    "inside nodes touch the grid frame; grow the grid by one ring".into(),
                ));
            }
        }
    }

    // Interior connectivity.
    let mut visited = vec![false; n];
    let seed = inside.iter().position(|&b| b).unwrap();
    let comp = bfs_component(seed, nx, ny, &|j| inside[j], &mut visited);
    let interior_total = inside.iter().filter(|&&b| b).count();
    if comp.len() != interior_total {
        let mut components = 1;
        for j in 0..n {
            if inside[j] && !visited[j] {
                bfs_component(j, nx, ny, &|i| inside[i], &mut visited);
                components += 1;
            }
        }
        return Err(Error::DisconnectedInterior { components });
    }

    // Complement components: label 0 for the unbounded one, then holes.
    let mut comp_label = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let unbounded = bfs_component(0, nx, ny, &|j| !inside[j], &mut visited);
    for &j in &unbounded {
        comp_label[j] = 0;
    }
    let mut holes: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for j in 0..n {
        if !inside[j] && !visited[j] {
            let comp = bfs_component(j, nx, ny, &|i| !inside[i], &mut visited);
            let min_row = comp.iter().map(|&i| i / nx).min().unwrap();
            let min_col = comp
                .iter()
                .filter(|&&i| i / nx == min_row)
                .map(|&i| i % nx)
                .min()
                .unwrap();
            holes.push((min_row, min_col, comp));
        }
    }
    holes.sort_by_key(|(r, c, _)| (*r, *c));
    for (label, (_, _, comp)) in holes.iter().enumerate() {
        for &j in comp {
            comp_label[j] = label + 1;
        }
    }
    let hole_count = holes.len();

    // Node classes: interior, plus complement nodes adjacent to interior.
    let mut class = vec![NodeClass::Exterior; n];
    for j in 0..n {
        if inside[j] {
            class[j] = NodeClass::Interior;
        }
    }
    for j in 0..n {
        if inside[j] {
            let ix = j % nx;
            let iy = j / nx;
            for (dx, dy) in [(1isize, 0isize), (-1, 0), (0, 1), (0, -1)] {
                let jx = ix as isize + dx;
                let jy = iy as isize + dy;
                let nb = jy as usize * nx + jx as usize;
                if !inside[nb] {
                    class[nb] = NodeClass::Boundary(comp_label[nb]);
                }
            }
        }
    }

    Ok(GridDomain {
        origin,
        spacing,
        nx,
        ny,
        class,
        hole_count,
        cut_fractions: HashMap::new(),
    })
}

/// Rasterize an annulus at `n` nodes per unit length.
///
/// INTERIOR nodes are those with ρ < r < R; BOUNDARY nodes are complement
/// nodes adjacent to the interior, labeled 0 (outer) or 1 (hole). Each
/// interior→boundary arm records the exact circle-crossing fraction so the
/// solver is second-order accurate despite the staircase.
pub fn rasterize_annulus(spec: &AnnulusSpec, n: usize) -> Result<Arc<GridDomain>> {
    if n == 0 {
        return Err(Error::InvalidInput("nodes-per-unit-length must be >= 1".into()));
    }
    let dx = 1.0 / n as f64;
    let r_outer = spec.r_outer;
    let rho = spec.rho;
    let pad = 3.0 * dx;
    let half = r_outer + pad;
    let m = (2.0 * half / dx).ceil() as usize + 1;
    let origin = (-half, -half);

    let mut inside = vec![false; m * m];
    for iy in 0..m {
        let y = origin.1 + iy as f64 * dx;
        for ix in 0..m {
            let x = origin.0 + ix as f64 * dx;
            let r = x.hypot(y);
            // the disk keeps its center node
            inside[iy * m + ix] = r < r_outer && (rho == 0.0 || r > rho);
        }
    }

    let mut domain = classify(&inside, m, m, origin, dx)?;

    // Gap resolution check along the +x axis at the row nearest y = 0.
    let iy0 = ((0.0 - origin.1) / dx).round() as usize;
    let mut across = 0usize;
    for ix in 0..m {
        let x = origin.0 + ix as f64 * dx;
        if x > 0.0 && inside[iy0 * m + ix] {
            across += 1;
        }
    }
    if across < 8 {
        return Err(Error::DegenerateGrid(format!(
            "only {across} interior nodes across the gap (need >= 8); increase n beyond {:.1}",
            16.0 / (r_outer - rho)
        )));
    }
    let expected_k = if spec.is_disk() { 0 } else { 1 };
    if domain.hole_count != expected_k {
        return Err(Error::DegenerateGrid(format!(
            "rasterization produced k = {} holes, expected {expected_k}; grid too coarse",
            domain.hole_count
        )));
    }

    // Circle-crossing fractions for interior→boundary arms.
    let mut cuts = HashMap::new();
    for idx in 0..domain.node_count() {
        if domain.class(idx) != NodeClass::Interior {
            continue;
        }
        let (px, py) = domain.position(idx);
        for dir in Dir::ALL {
            let Some(nb) = domain.neighbor(idx, dir) else {
                continue;
            };
            let radius = match domain.class(nb) {
                NodeClass::Boundary(0) => r_outer,
                NodeClass::Boundary(_) => rho,
                _ => continue,
            };
            let (ox, oy) = dir.offset();
            let (vx, vy) = (ox as f64 * dx, oy as f64 * dx);
            if let Some(s) = segment_circle_crossing(px, py, vx, vy, radius) {
                cuts.insert((idx, dir), s.max(1e-6));
            }
        }
    }
    domain.cut_fractions = cuts;

    Ok(Arc::new(domain))
}

/// Smallest t ∈ (0, 1] with |p + t v| = radius.
fn segment_circle_crossing(px: f64, py: f64, vx: f64, vy: f64, radius: f64) -> Option<f64> {
    let a = vx * vx + vy * vy;
    let b = 2.0 * (px * vx + py * vy);
    let c = px * px + py * py - radius * radius;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let mut best: Option<f64> = None;
    for t in [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)] {
        if t > 1e-12 && t <= 1.0 + 1e-12 {
            best = Some(best.map_or(t, |u: f64| u.min(t)));
        }
    }
    best.map(|t| t.min(1.0))
}

/// Inside/outside bitmap with grid placement, as read from a mask file.
#[derive(Debug, Clone)]
pub struct MaskBitmap {
    pub nx: usize,
    pub ny: usize,
    pub origin: (f64, f64),
    pub spacing: f64,
    /// Row-major, `ny` rows of `nx` entries; row j sits at y = y0 + j·dx.
    pub inside: Vec<bool>,
}

impl MaskBitmap {
    /// Parse the text mask format: line 1 `nx ny x0 y0 dx` (whitespace
    /// tolerant), then ny lines of nx characters, `I` = inside, `O` = outside.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty mask file".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header must be `nx ny x0 y0 dx`, got {} fields", fields.len()),
            });
        }
        let nx: usize = fields[0]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad nx `{}`", fields[0]) })?;
        let ny: usize = fields[1]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad ny `{}`", fields[1]) })?;
        let x0: f64 = fields[2]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad x0 `{}`", fields[2]) })?;
        let y0: f64 = fields[3]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad y0 `{}`", fields[3]) })?;
        let dx: f64 = fields[4]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad dx `{}`", fields[4]) })?;
        if nx == 0 || ny == 0 || !(dx > 0.0) {
            return Err(Error::Parse {
                line: 1,
                msg: "nx, ny must be positive and dx > 0".into(),
            });
        }

        let mut inside = vec![false; nx * ny];
        let mut rows = 0usize;
        for (lineno, line) in lines {
            if rows == ny {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected {ny} mask rows, found extra content"),
                });
            }
            if line.len() != nx {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("row has {} characters, expected nx = {nx}", line.len()),
                });
            }
            for (ix, ch) in line.chars().enumerate() {
                inside[rows * nx + ix] = match ch {
                    'I' => true,
                    'O' => false,
                    other => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            msg: format!("unexpected character `{other}` (want I or O)"),
                        })
                    }
                };
            }
            rows += 1;
        }
        if rows != ny {
            return Err(Error::Parse {
                line: rows + 1,
                msg: format!("expected {ny} mask rows, found {rows}"),
            });
        }
        Ok(Self { nx, ny, origin: (x0, y0), spacing: dx, inside })
    }

    /// Build a bitmap from a predicate over physical coordinates, padded by
    /// one outside ring. Convenience for tests and generated geometries.
    pub fn from_fn(
        nx: usize,
        ny: usize,
        origin: (f64, f64),
        spacing: f64,
        f: impl Fn(f64, f64) -> bool,
    ) -> Self {
        let mut inside = vec![false; nx * ny];
        for iy in 1..ny.saturating_sub(1) {
            for ix in 1..nx.saturating_sub(1) {
                let x = origin.0 + ix as f64 * spacing;
                let y = origin.1 + iy as f64 * spacing;
                inside[iy * nx + ix] = f(x, y);
            }
        }
        Self { nx, ny, origin, spacing, inside }
    }
}

/// Label a mask bitmap into a [`GridDomain`].
///
/// The mask is taken as the exact geometry: no cut fractions are attached,
/// every interior→boundary arm has full length.
pub fn label_from_mask(mask: &MaskBitmap) -> Result<Arc<GridDomain>> {
    let domain = classify(&mask.inside, mask.nx, mask.ny, mask.origin, mask.spacing)?;
    Ok(Arc::new(domain))
}

/// Read and label a mask file (see [`MaskBitmap::parse`] for the format).
pub fn read_mask_file(path: &std::path::Path) -> Result<Arc<GridDomain>> {
    let text = std::fs::read_to_string(path)?;
    let mask = MaskBitmap::parse(&text)?;
    label_from_mask(&mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_has_one_hole_and_two_labels() {
        let spec = AnnulusSpec::new(0.5, 1.0).unwrap();
        let d = rasterize_annulus(&spec, 64).unwrap();
        assert_eq!(d.hole_count(), 1);
        assert!(d.boundary_count(0) > 0);
        assert!(d.boundary_count(1) > 0);
    }

    #[test]
    fn disk_has_no_holes() {
        let spec = AnnulusSpec::new(0.0, 1.0).unwrap();
        let d = rasterize_annulus(&spec, 64).unwrap();
        assert_eq!(d.hole_count(), 0);
        assert!(d.boundary_count(0) > 0);
    }

    #[test]
    fn coarse_annulus_rejected() {
        let spec = AnnulusSpec::new(0.5, 1.0).unwrap();
        let err = rasterize_annulus(&spec, 4).unwrap_err();
        assert!(matches!(err, Error::DegenerateGrid(_)), "got {err:?}");
    }

    #[test]
    fn interior_count_tracks_area() {
        let spec = AnnulusSpec::new(0.5, 1.0).unwrap();
        for n in [64usize, 128] {
            let d = rasterize_annulus(&spec, n).unwrap();
            let dx = d.spacing();
            let expected = std::f64::consts::PI * (1.0 - 0.25) / (dx * dx);
            let got = d.interior_count() as f64;
            assert!(
                (got - expected).abs() / expected < 0.05,
                "n={n}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn refinement_preserves_topology() {
        let spec = AnnulusSpec::new(0.3, 1.0).unwrap();
        let d1 = rasterize_annulus(&spec, 64).unwrap();
        let d2 = rasterize_annulus(&spec, 128).unwrap();
        assert_eq!(d1.hole_count(), d2.hole_count());
    }

    #[test]
    fn interior_neighbors_are_interior_or_boundary() {
        let spec = AnnulusSpec::new(0.5, 1.0).unwrap();
        let d = rasterize_annulus(&spec, 48).unwrap();
        for idx in d.interior_indices() {
            for dir in Dir::ALL {
                let nb = d.neighbor(idx, dir).expect("padding keeps arms in bounds");
                assert_ne!(d.class(nb), NodeClass::Exterior);
            }
        }
    }

    #[test]
    fn full_rectangle_mask_has_no_holes() {
        let mask = MaskBitmap::from_fn(20, 14, (0.0, 0.0), 0.1, |_, _| true);
        let d = label_from_mask(&mask).unwrap();
        assert_eq!(d.hole_count(), 0);
    }

    #[test]
    fn two_hole_mask_label_order() {
        // Rectangle with two square holes; left hole must get label 1.
        let mask = MaskBitmap::from_fn(60, 30, (0.0, 0.0), 0.1, |x, y| {
            let hole1 = (1.0..1.6).contains(&x) && (1.0..1.6).contains(&y);
            let hole2 = (4.0..4.6).contains(&x) && (1.0..1.6).contains(&y);
            !(hole1 || hole2)
        });
        let d = label_from_mask(&mask).unwrap();
        assert_eq!(d.hole_count(), 2);
        // label 1 nodes all lie left of label 2 nodes
        let max_x_label1 = (0..d.node_count())
            .filter(|&i| d.class(i) == NodeClass::Boundary(1))
            .map(|i| d.position(i).0)
            .fold(f64::NEG_INFINITY, f64::max);
        let min_x_label2 = (0..d.node_count())
            .filter(|&i| d.class(i) == NodeClass::Boundary(2))
            .map(|i| d.position(i).0)
            .fold(f64::INFINITY, f64::min);
        assert!(max_x_label1 < min_x_label2);
    }

    #[test]
    fn disconnected_mask_rejected() {
        let mask = MaskBitmap::from_fn(40, 20, (0.0, 0.0), 0.1, |x, _| {
            (0.3..1.2).contains(&x) || (2.4..3.4).contains(&x)
        });
        let err = label_from_mask(&mask).unwrap_err();
        assert!(matches!(err, Error::DisconnectedInterior { .. }), "got {err:?}");
    }

    #[test]
    fn mask_parse_roundtrip_and_errors() {
        let text = "5 4 0.0 0.0 0.5\nOOOOO\nOIIIO\nOIIIO\nOOOOO\n";
        let mask = MaskBitmap::parse(text).unwrap();
        assert_eq!((mask.nx, mask.ny), (5, 4));
        assert_eq!(mask.inside.iter().filter(|&&b| b).count(), 6);
        let d = label_from_mask(&mask).unwrap();
        assert_eq!(d.hole_count(), 0);
        assert_eq!(d.interior_count(), 6);

        let bad = "5 4 0.0 0.0 0.5\nOOOOO\nOIXIO\nOIIIO\nOOOOO\n";
        match MaskBitmap::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
