//! Structured grids over the domain, cumulative integration of the
//! immersion along grid edges, and triangulated surface meshes.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::complex::{guard_radii, Complex64, Extended, Path, RationalMap};
use crate::error::{Error, Result};
use crate::singular::{self, Region};
use crate::weierstrass::{FormTriple, Maxface, MinimalSurface};

/// Edge integrals are converged to this, relative.
const EDGE_TOL: f64 = 1e-13;
/// Seam faces are kept when both sides agree to this.
const SEAM_TOL: f64 = 1e-8;
/// A traced closed curve is a centred circle when every sample's radius
/// stays this close to the mean.
const CIRCLE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Identity,
    /// w = 1/z
    Inversion,
}

impl Chart {
    fn to_z(self, u: Complex64) -> Extended {
        match self {
            Chart::Identity => Extended::Finite(u),
            Chart::Inversion if u.is_zero() => Extended::Infinity,
            Chart::Inversion => Extended::Finite(u.inv()),
        }
    }
}

/// Grid layout in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridSpec {
    Polar {
        center: Complex64,
        r_min: f64,
        r_max: f64,
        n_r: usize,
        n_theta: usize,
    },
    Rect {
        min: Complex64,
        max: Complex64,
        n_u: usize,
        n_v: usize,
    },
}

/// Nodes in chart coordinates, row-major. Polar grids have one row per
/// ring and wrap around in the column index.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartGrid {
    pub chart: Chart,
    pub spec: GridSpec,
    pub rows: usize,
    pub cols: usize,
    pub nodes: Vec<Complex64>,
    pub mask: Vec<bool>,
    /// Ring radii moved onto a singular circle.
    pub snapped_radii: Vec<f64>,
}

impl ChartGrid {
    pub fn periodic(&self) -> bool {
        matches!(self.spec, GridSpec::Polar { .. })
    }

    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn z(&self, k: usize) -> Extended {
        self.chart.to_z(self.nodes[k])
    }

    /// The region the grid covers, in the z-plane.
    pub fn region(&self) -> Region {
        let inner = match self.spec {
            GridSpec::Polar { center, r_min, r_max, .. } => Region::Annulus { center, r_min, r_max },
            GridSpec::Rect { min, max, .. } => Region::Box { min, max },
        };
        match self.chart {
            Chart::Identity => inner,
            Chart::Inversion => Region::Inverted(alloc::boxed::Box::new(inner)),
        }
    }
}

/// Obstacles and forms seen from the chart.
fn chart_forms(lift: &FormTriple, infinity_is_obstacle: bool, chart: Chart) -> Result<FormTriple> {
    match chart {
        Chart::Identity => Ok(lift.clone()),
        Chart::Inversion => {
            let [a, b, c] = lift.forms();
            let forms = [a.form_at_infinity(), b.form_at_infinity(), c.form_at_infinity()];
            let mut obstacles: Vec<Complex64> = lift
                .obstacles()
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| p.inv())
                .collect();
            if infinity_is_obstacle {
                obstacles.push(Complex64::zero());
            }
            let base = lift.base_point();
            let base = if base.is_zero() { Complex64::new(f64::INFINITY, 0.0) } else { base.inv() };
            Ok(FormTriple::new(forms, obstacles, base, *lift.tol()))
        }
    }
}

fn infinity_is_obstacle(punctures: &[Extended], forms: &[RationalMap; 3], tol: f64) -> Result<bool> {
    if punctures.contains(&Extended::Infinity) {
        return Ok(true);
    }
    for f in forms.iter().filter(|f| !f.is_zero()) {
        if f.form_order_at(Extended::Infinity, tol)? < 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn build_chart_grid(m: &Maxface, spec: GridSpec, chart: Chart) -> Result<ChartGrid> {
    let tol = m.tol();
    let forms = chart_forms(
        m.lift_forms(),
        infinity_is_obstacle(m.data().punctures(), m.phi(), tol.zero)?,
        chart,
    )?;
    let (rows, cols, mut nodes, mut snapped_radii) = match spec {
        GridSpec::Polar { center, r_min, r_max, n_r, n_theta } => {
            if n_r < 2 || n_theta < 3 || !(r_min >= 0.0 && r_max > r_min) {
                return Err(Error::InvalidParameter("polar grid needs n_r ≥ 2, n_θ ≥ 3, 0 ≤ r_min < r_max".into()));
            }
            let radii: Vec<f64> = (0..n_r)
                .map(|i| r_min + (r_max - r_min) * i as f64 / (n_r - 1) as f64)
                .collect();
            let nodes: Vec<Complex64> = radii
                .iter()
                .flat_map(|&r| (0..n_theta).map(move |k| center + Complex64::from_polar(r, TAU * k as f64 / n_theta as f64)))
                .collect();
            (n_r, n_theta, nodes, Vec::new())
        }
        GridSpec::Rect { min, max, n_u, n_v } => {
            if n_u < 2 || n_v < 2 || !(max.re > min.re && max.im > min.im) {
                return Err(Error::InvalidParameter("rect grid needs n_u, n_v ≥ 2 and a nonempty box".into()));
            }
            let nodes: Vec<Complex64> = (0..n_v)
                .flat_map(|i| {
                    let y = min.im + (max.im - min.im) * i as f64 / (n_v - 1) as f64;
                    (0..n_u).map(move |k| Complex64::new(min.re + (max.re - min.re) * k as f64 / (n_u - 1) as f64, y))
                })
                .collect();
            (n_v, n_u, nodes, Vec::new())
        }
    };
    let mut grid = ChartGrid {
        chart,
        spec,
        rows,
        cols,
        nodes: Vec::new(),
        mask: Vec::new(),
        snapped_radii: Vec::new(),
    };
    if let GridSpec::Polar { center, r_min, r_max, n_r, n_theta } = spec {
        for r0 in singular_circle_radii(m, &grid.region(), chart, center)? {
            if r0 <= r_min || r0 >= r_max {
                continue;
            }
            let step = (r_max - r_min) / (n_r - 1) as f64;
            let i = ((r0 - r_min) / step).round() as usize;
            for k in 0..n_theta {
                nodes[i * n_theta + k] = center + Complex64::from_polar(r0, TAU * k as f64 / n_theta as f64);
            }
            snapped_radii.push(r0);
        }
    }
    let guards = guard_radii(forms.obstacles(), tol.guard_fraction);
    let mask: Vec<bool> = nodes
        .iter()
        .map(|&u| {
            let clear = forms
                .obstacles()
                .iter()
                .zip(&guards)
                .all(|(&p, &g)| (u - p).norm() >= g);
            clear && forms.eval(u).iter().all(|v| v.is_finite())
        })
        .collect();
    if !mask.iter().any(|&ok| ok) {
        return Err(Error::EmptyGrid);
    }
    grid.nodes = nodes;
    grid.mask = mask;
    grid.snapped_radii = snapped_radii;
    Ok(grid)
}

/// Radii (in chart coordinates, about `center`) of traced closed singular
/// curves that are circles about `center`.
fn singular_circle_radii(m: &Maxface, region: &Region, chart: Chart, center: Complex64) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = Vec::new();
    for curve in singular::trace_all(m, region)? {
        if !curve.closed {
            continue;
        }
        let radii: Vec<f64> = curve
            .samples
            .iter()
            .map(|s| match chart {
                Chart::Identity => (s.z - center).norm(),
                Chart::Inversion => (s.z.inv() - center).norm(),
            })
            .collect();
        let mean = radii.iter().sum::<f64>() / radii.len() as f64;
        if radii.iter().all(|r| (r - mean).abs() < CIRCLE_TOL * mean.max(1.0)) {
            // The level set is a circle; pin the radius down by Newton in r.
            let r0 = polish_radius(m, chart, center, mean);
            if !out.iter().any(|&q| (q - r0).abs() < CIRCLE_TOL) {
                out.push(r0);
            }
        }
    }
    Ok(out)
}

fn polish_radius(m: &Maxface, chart: Chart, center: Complex64, r: f64) -> f64 {
    let level = |r: f64| {
        let u = center + Complex64::new(r, 0.0);
        match chart.to_z(u) {
            Extended::Finite(z) => m.level(z),
            Extended::Infinity => f64::NAN,
        }
    };
    let mut r = r;
    for _ in 0..8 {
        let h = 1e-7 * r.max(1e-3);
        let f = level(r);
        let df = (level(r + h) - level(r - h)) / (2.0 * h);
        if !(df.is_finite() && df != 0.0) || f == 0.0 {
            break;
        }
        let next = r - f / df;
        if !next.is_finite() || (next - r).abs() > 1e-6 * r.max(1.0) {
            break;
        }
        r = next;
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshVertex {
    pub z: Extended,
    pub position: [f64; 3],
    /// ds² (or dσ² for minimal meshes) in the chart coordinate.
    pub ds2_factor: f64,
    pub abs_g: f64,
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolylineKind {
    /// Closed curves repeat their first index at the end.
    SingularCurve,
    SwallowtailMarkers,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub kind: PolylineKind,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<MeshVertex>,
    pub faces: Vec<[usize; 3]>,
    pub polylines: Vec<Polyline>,
}

/// Lift values on the grid by integrating along edges from one start node,
/// plus the seam edges (column n−1 to 0) whose integral matches.
struct Integrated {
    values: Vec<Option<[Complex64; 3]>>,
    seam_ok: Vec<bool>,
}

fn integrate_grid(
    grid: &ChartGrid,
    forms: &FormTriple,
    start_value: impl Fn(Extended) -> Option<Result<[Complex64; 3]>>,
    project: impl Fn(&[Complex64; 3]) -> [f64; 3],
) -> Result<Integrated> {
    let n = grid.nodes.len();
    let mut values: Vec<Option<[Complex64; 3]>> = vec![None; n];
    let (rows, cols) = (grid.rows, grid.cols);
    let edge = |a: usize, b: usize| -> Option<Result<[Complex64; 3]>> {
        let path = Path::polyline(&[grid.nodes[a], grid.nodes[b]]).ok()?;
        match forms.integrate_with_tol(&path, EDGE_TOL) {
            Ok(v) => Some(Ok(v)),
            Err(Error::PathThroughSingularity { .. }) => None,
            Err(e) => Some(Err(e)),
        }
    };
    let neighbours = |k: usize| {
        let (i, j) = (k / cols, k % cols);
        let mut out: Vec<usize> = Vec::with_capacity(4);
        if j + 1 < cols {
            out.push(k + 1);
        }
        if j > 0 {
            out.push(k - 1);
        }
        if i + 1 < rows {
            out.push(k + cols);
        }
        if i > 0 {
            out.push(k - cols);
        }
        out
    };
    for seed in 0..n {
        if !grid.mask[seed] || values[seed].is_some() {
            continue;
        }
        let Some(v0) = start_value(grid.z(seed)) else { continue };
        values[seed] = Some(v0?);
        let mut queue = VecDeque::from([seed]);
        while let Some(k) = queue.pop_front() {
            let vk = values[k].expect("queued nodes have values");
            for nb in neighbours(k) {
                if !grid.mask[nb] || values[nb].is_some() {
                    continue;
                }
                if let Some(d) = edge(k, nb) {
                    let d = d?;
                    values[nb] = Some([vk[0] + d[0], vk[1] + d[1], vk[2] + d[2]]);
                    queue.push_back(nb);
                }
            }
        }
    }
    let mut seam_ok = vec![false; rows];
    if grid.periodic() {
        for (i, ok) in seam_ok.iter_mut().enumerate() {
            let (a, b) = (i * cols + cols - 1, i * cols);
            let (Some(va), Some(vb)) = (values[a], values[b]) else { continue };
            let Some(d) = edge(a, b) else { continue };
            let d = d?;
            let across = project(&[va[0] + d[0], va[1] + d[1], va[2] + d[2]]);
            let there = project(&vb);
            *ok = (0..3).all(|c| (across[c] - there[c]).abs() <= SEAM_TOL * (1.0 + there[c].abs()));
        }
    }
    Ok(Integrated { values, seam_ok })
}

fn triangulate(grid: &ChartGrid, integrated: &Integrated, obstacles: &[Complex64], index_of: &[Option<usize>]) -> Vec<[usize; 3]> {
    let (rows, cols) = (grid.rows, grid.cols);
    let col_pairs = if grid.periodic() { cols } else { cols - 1 };
    let mut faces = Vec::new();
    for i in 0..rows - 1 {
        for j in 0..col_pairs {
            let j2 = (j + 1) % cols;
            if j2 == 0 && !(integrated.seam_ok[i] && integrated.seam_ok[i + 1]) {
                continue;
            }
            let quad = [grid.index(i, j), grid.index(i, j2), grid.index(i + 1, j2), grid.index(i + 1, j)];
            let ids: Vec<Option<usize>> = quad.iter().map(|&k| index_of[k]).collect();
            let tris: &[[usize; 3]] = match ids.iter().filter(|v| v.is_none()).count() {
                0 => &[[0, 1, 2], [0, 2, 3]],
                1 => match ids.iter().position(|v| v.is_none()) {
                    Some(0) => &[[1, 2, 3]],
                    Some(1) => &[[0, 2, 3]],
                    Some(2) => &[[0, 1, 3]],
                    _ => &[[0, 1, 2]],
                },
                _ => &[],
            };
            for t in tris {
                let corners = t.map(|c| grid.nodes[quad[c]]);
                if obstacles.iter().any(|&p| inside_triangle(corners, p)) {
                    continue;
                }
                faces.push(t.map(|c| ids[c].expect("filtered above")));
            }
        }
    }
    faces
}

fn inside_triangle([a, b, d]: [Complex64; 3], p: Complex64) -> bool {
    let s = |u: Complex64, v: Complex64| ((v - u).conj() * (p - u)).im;
    let (x, y, z) = (s(a, b), s(b, d), s(d, a));
    (x >= 0.0 && y >= 0.0 && z >= 0.0) || (x <= 0.0 && y <= 0.0 && z <= 0.0)
}

/// |du/dz|⁻² for moving a metric factor into the chart.
fn chart_scale(chart: Chart, u: Complex64) -> f64 {
    match chart {
        Chart::Identity => 1.0,
        Chart::Inversion => {
            let m = u.norm_sqr();
            1.0 / (m * m)
        }
    }
}

enum Output {
    Maxface,
    Companion,
}

fn surface_mesh(m: &Maxface, grid: &ChartGrid, output: Output) -> Result<SurfaceMesh> {
    let tol = m.tol();
    let forms = chart_forms(
        m.lift_forms(),
        infinity_is_obstacle(m.data().punctures(), m.phi(), tol.zero)?,
        grid.chart,
    )?;
    let project = |v: &[Complex64; 3]| match output {
        Output::Maxface => [v[0].re, v[1].re, v[2].re],
        Output::Companion => [v[1].re, v[2].re, -v[0].im],
    };
    let start = |z: Extended| z.finite().map(|z| m.lift(z, None));
    let integrated = integrate_grid(grid, &forms, start, project)?;
    let mut mesh = SurfaceMesh::default();
    let mut index_of = vec![None; grid.nodes.len()];
    for (k, v) in integrated.values.iter().enumerate() {
        let Some(v) = v else { continue };
        let z = grid.z(k);
        let (ds2, abs_g) = match z {
            Extended::Finite(z) => {
                let l = m.local(z);
                let f = match output {
                    Output::Maxface => l.ds2_factor,
                    Output::Companion => l.dsigma2_factor,
                };
                (f * chart_scale(grid.chart, grid.nodes[k]), l.abs_g)
            }
            Extended::Infinity => (f64::NAN, m.data().g().compose_inverse().eval(Complex64::zero(), tol.eval).modulus()),
        };
        index_of[k] = Some(mesh.vertices.len());
        mesh.vertices.push(MeshVertex {
            z,
            position: project(v),
            ds2_factor: ds2,
            abs_g,
            singular: matches!(output, Output::Maxface) && (abs_g - 1.0).abs() < tol.zero,
        });
    }
    mesh.faces = triangulate(grid, &integrated, forms.obstacles(), &index_of);
    Ok(mesh)
}

/// The maxface over the grid, with its singular curves and swallowtails
/// appended as polylines.
pub fn generate_mesh(m: &Maxface, grid: &ChartGrid) -> Result<SurfaceMesh> {
    let mut mesh = surface_mesh(m, grid, Output::Maxface)?;
    let tol = m.tol();
    let mut markers = Vec::new();
    for curve in singular::trace_all(m, &grid.region())? {
        let zs: Vec<Complex64> = curve.samples.iter().map(|s| s.z).collect();
        let mut value = m.lift(zs[0], None)?;
        let first = mesh.vertices.len();
        let mut ids = Vec::with_capacity(zs.len() + 1);
        for (i, &z) in zs.iter().enumerate() {
            if i > 0 {
                let d = m.lift_forms().integrate_with_tol(&Path::polyline(&[zs[i - 1], z])?, EDGE_TOL)?;
                for c in 0..3 {
                    value[c] += d[c];
                }
            }
            let l = m.local(z);
            ids.push(mesh.vertices.len());
            mesh.vertices.push(MeshVertex {
                z: Extended::Finite(z),
                position: [value[0].re, value[1].re, value[2].re],
                ds2_factor: l.ds2_factor * chart_scale(grid.chart, chart_point(grid.chart, z)),
                abs_g: l.abs_g,
                singular: (l.abs_g - 1.0).abs() < tol.zero,
            });
        }
        if curve.closed {
            ids.push(first);
        }
        mesh.polylines.push(Polyline {
            kind: PolylineKind::SingularCurve,
            vertices: ids,
        });
        for &z in &curve.swallowtail_points {
            let f = m.evaluate_immersion(z, None)?;
            let l = m.local(z);
            markers.push(mesh.vertices.len());
            mesh.vertices.push(MeshVertex {
                z: Extended::Finite(z),
                position: f,
                ds2_factor: l.ds2_factor * chart_scale(grid.chart, chart_point(grid.chart, z)),
                abs_g: l.abs_g,
                singular: true,
            });
        }
    }
    if !markers.is_empty() {
        mesh.polylines.push(Polyline {
            kind: PolylineKind::SwallowtailMarkers,
            vertices: markers,
        });
    }
    Ok(mesh)
}

fn chart_point(chart: Chart, z: Complex64) -> Complex64 {
    match chart {
        Chart::Identity => z,
        Chart::Inversion => z.inv(),
    }
}

/// The companion minimal surface over the same grid, from the maxface lift
/// by (F¹, F², iF⁰) ↦ (Re F¹, Re F², −Im F⁰).
pub fn generate_companion_mesh(m: &Maxface, grid: &ChartGrid) -> Result<SurfaceMesh> {
    surface_mesh(m, grid, Output::Companion)
}

/// A minimal surface given by its own data, over a grid built for the
/// matching maxface.
pub fn generate_minimal_mesh(s: &MinimalSurface, grid: &ChartGrid) -> Result<SurfaceMesh> {
    let tol = s.tol();
    let forms = chart_forms(
        s.lift_forms(),
        infinity_is_obstacle(s.data().punctures(), s.lift_forms().forms(), tol.zero)?,
        grid.chart,
    )?;
    let project = |v: &[Complex64; 3]| [v[0].re, v[1].re, v[2].re];
    let start = |z: Extended| z.finite().map(|z| s.lift_forms().lift(z, None));
    let integrated = integrate_grid(grid, &forms, start, project)?;
    let mut mesh = SurfaceMesh::default();
    let mut index_of = vec![None; grid.nodes.len()];
    for (k, v) in integrated.values.iter().enumerate() {
        let Some(v) = v else { continue };
        let z = grid.z(k);
        let (ds2, abs_g) = match z {
            Extended::Finite(z) => (s.metric_factor(z) * chart_scale(grid.chart, grid.nodes[k]), s.abs_g0(z)),
            Extended::Infinity => (f64::NAN, f64::NAN),
        };
        index_of[k] = Some(mesh.vertices.len());
        mesh.vertices.push(MeshVertex {
            z,
            position: project(v),
            ds2_factor: ds2,
            abs_g,
            singular: false,
        });
    }
    mesh.faces = triangulate(grid, &integrated, forms.obstacles(), &index_of);
    Ok(mesh)
}

#[cfg(test)]
mod tests;
