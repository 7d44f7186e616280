//! The singular set {|g| = 1}: seeds, traced curves, and the classification
//! of singular points into cuspidal edges, swallowtails and the rest.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::complex::{Complex64, I};
use crate::error::{Error, Result};
use crate::weierstrass::Maxface;

const H_MIN: f64 = 1e-4;
const H_MAX: f64 = 1e-1;
/// Target turning angle per step; the step is this over the curvature.
const TURN: f64 = 0.02;
const MAX_TURN: f64 = 0.1;
const CORRECTOR_STEPS: usize = 5;
const MAX_SAMPLES: usize = 200_000;
/// Seeds farther than this from the level set (in |g|² − 1) are rejected.
const SEED_RESIDUAL: f64 = 1e-6;
/// Refinement target for special points, relative to |α|.
const REFINE: f64 = 1e-10;
const SCAN_BOX: usize = 129;
const SCAN_RINGS: usize = 41;
const SCAN_ANGLES: usize = 128;

/// Where to look for singular curves.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Annulus {
        center: Complex64,
        r_min: f64,
        r_max: f64,
    },
    Box {
        min: Complex64,
        max: Complex64,
    },
    /// {z : 1/z ∈ inner}
    Inverted(Box<Region>),
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Region::Annulus { center, r_min, r_max } => {
                let r = (z - center).norm();
                r >= *r_min && r <= *r_max
            }
            Region::Box { min, max } => {
                z.re >= min.re && z.re <= max.re && z.im >= min.im && z.im <= max.im
            }
            Region::Inverted(inner) => !z.is_zero() && inner.contains(z.inv()),
        }
    }

    /// Scan lattice: rows of points, adjacent along rows and across rows.
    /// The flag says whether rows wrap around.
    fn lattice(&self) -> (Vec<Vec<Complex64>>, bool) {
        match self {
            Region::Annulus { center, r_min, r_max } => {
                let rows = (0..SCAN_RINGS)
                    .map(|i| {
                        let r = r_min + (r_max - r_min) * i as f64 / (SCAN_RINGS - 1) as f64;
                        (0..SCAN_ANGLES)
                            .map(|k| center + Complex64::from_polar(r, TAU * k as f64 / SCAN_ANGLES as f64))
                            .collect()
                    })
                    .collect();
                (rows, true)
            }
            Region::Box { min, max } => {
                let rows = (0..SCAN_BOX)
                    .map(|i| {
                        let y = min.im + (max.im - min.im) * i as f64 / (SCAN_BOX - 1) as f64;
                        (0..SCAN_BOX)
                            .map(|k| {
                                let x = min.re + (max.re - min.re) * k as f64 / (SCAN_BOX - 1) as f64;
                                Complex64::new(x, y)
                            })
                            .collect()
                    })
                    .collect();
                (rows, false)
            }
            Region::Inverted(inner) => {
                let (rows, wrap) = inner.lattice();
                let rows = rows
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|w| if w.is_zero() { Complex64::new(f64::NAN, f64::NAN) } else { w.inv() })
                            .collect()
                    })
                    .collect();
                (rows, wrap)
            }
        }
    }
}

/// Box centred at 0 that holds every finite puncture, zero and pole of g,
/// grown until |g| stays clear of 1 on its circumscribed circle.
pub fn default_region(m: &Maxface) -> Region {
    let tol = m.tol();
    let mut r: f64 = 1.0;
    for p in m.data().finite_punctures() {
        r = r.max(p.norm());
    }
    let g = m.data().g();
    for root in g.zeros(tol.zero).unwrap_or_default().into_iter().chain(g.poles(tol.zero).unwrap_or_default()) {
        r = r.max(root.value.norm());
    }
    r *= 2.0;
    for _ in 0..12 {
        let clear = (0..64).map(|k| m.level(Complex64::from_polar(r, TAU * k as f64 / 64.0)));
        let (mut above, mut below) = (true, true);
        for f in clear {
            above &= f > 3.0;
            below &= f < -0.75;
        }
        if above || below {
            break;
        }
        r *= 2.0;
    }
    Region::Box {
        min: Complex64::new(-r, -r),
        max: Complex64::new(r, r),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularKind {
    CuspidalEdge,
    Swallowtail,
    NotAFront,
    DegenerateGaussMap,
    /// α real and nonzero but the swallowtail condition is below `band`.
    Borderline { band: f64 },
}

/// Values the classification was decided on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub alpha: Complex64,
    pub re_alpha: f64,
    pub im_alpha: f64,
    /// Re[(g/g′)·α′]
    pub swallowtail_second: f64,
    pub dg_abs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularClass {
    pub kind: SingularKind,
    pub witness: Witness,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularSamplePoint {
    pub z: Complex64,
    pub class: SingularClass,
    /// i·conj(g′/g)
    pub tangent: Complex64,
    /// i/(g ω̂)
    pub null_dir: Complex64,
}

/// Why a traced curve stopped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveEnd {
    Closed,
    RegionExit,
    Puncture(Complex64),
    DegenerateGaussMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularCurve {
    pub samples: Vec<SingularSamplePoint>,
    pub closed: bool,
    pub ends: [CurveEnd; 2],
    pub swallowtail_points: Vec<Complex64>,
    pub not_a_front_points: Vec<Complex64>,
    /// Isolated zeros of Im α where the swallowtail test was inconclusive.
    pub borderline_points: Vec<Complex64>,
}

/// Decision tree at a singular point with band τ (relative):
/// |g′| < τ → degenerate; |Re α| < τ|α| → not a front; both parts of α
/// clear of zero → cuspidal edge; otherwise the sign of
/// Re[(g/g′)α′] against τ·max(1, |α′||g/g′|) decides swallowtail or
/// borderline.
pub fn classify_singular_point(m: &Maxface, z: Complex64) -> Result<SingularClass> {
    let g = m.data().g().eval_raw(z);
    let residual = (g.norm() - 1.0).abs();
    if !(residual < m.tol().classification) {
        return Err(Error::NotSingular { z, residual });
    }
    Ok(classify_unchecked(m, z))
}

fn classify_unchecked(m: &Maxface, z: Complex64) -> SingularClass {
    let tau = m.tol().classification;
    let g = m.data().g().eval_raw(z);
    let dg = m.dg().eval_raw(z);
    let alpha = m.alpha().eval_raw(z);
    let dalpha = m.dalpha().eval_raw(z);
    let ratio = if dg.is_zero() { Complex64::zero() } else { g / dg };
    let second = (ratio * dalpha).re;
    let witness = Witness {
        alpha,
        re_alpha: alpha.re,
        im_alpha: alpha.im,
        swallowtail_second: second,
        dg_abs: dg.norm(),
    };
    let a = alpha.norm();
    let kind = if dg.norm() < tau {
        SingularKind::DegenerateGaussMap
    } else if alpha.re.abs() < tau * a {
        SingularKind::NotAFront
    } else if alpha.im.abs() >= tau * a {
        SingularKind::CuspidalEdge
    } else {
        let band = tau * (dalpha.norm() * ratio.norm()).max(1.0);
        if second.abs() >= band {
            SingularKind::Swallowtail
        } else {
            SingularKind::Borderline { band }
        }
    };
    SingularClass { kind, witness }
}

/// η = i/(g ω̂), the kernel of df at a singular point.
pub fn null_direction(m: &Maxface, z: Complex64) -> Result<Complex64> {
    let g_omega = g_omega(m, z);
    if !(g_omega.norm() > m.tol().zero) || !g_omega.is_finite() {
        return Err(Error::NullDirectionUndefined { z });
    }
    Ok(I / g_omega)
}

/// g ω̂, taken as h/g near the poles of g.
fn g_omega(m: &Maxface, z: Complex64) -> Complex64 {
    let g = m.data().g();
    let (p, q) = (g.num().eval(z), g.den().eval(z));
    if p.norm() > q.norm() {
        m.h().eval_raw(z) * q / p
    } else {
        p / q * m.data().omega_hat().eval_raw(z)
    }
}

/// i·conj(g′/g), tangent to the level set |g| = 1.
pub fn singular_tangent(m: &Maxface, z: Complex64) -> Complex64 {
    let g = m.data().g().eval_raw(z);
    let dg = m.dg().eval_raw(z);
    I * (dg / g).conj()
}

fn sample_at(m: &Maxface, z: Complex64) -> SingularSamplePoint {
    SingularSamplePoint {
        z,
        class: classify_unchecked(m, z),
        tangent: singular_tangent(m, z),
        null_dir: I / g_omega(m, z),
    }
}

/// ∇(|g|² − 1) as a complex number: 2 g conj(g′).
fn gradient(m: &Maxface, z: Complex64) -> Complex64 {
    let g = m.data().g().eval_raw(z);
    let dg = m.dg().eval_raw(z);
    2.0 * g * dg.conj()
}

/// Newton along the gradient onto |g|² = 1.
fn correct(m: &Maxface, mut z: Complex64, steps: usize) -> Option<Complex64> {
    let target = m.tol().trace;
    for _ in 0..steps {
        let f = m.level(z);
        if f.abs() <= target {
            return Some(z);
        }
        let grad = gradient(m, z);
        let n2 = grad.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return None;
        }
        z -= grad * (f / n2);
    }
    (m.level(z).abs() <= target).then_some(z)
}

fn unit_tangent(m: &Maxface, z: Complex64, dir: f64) -> Option<Complex64> {
    let t = singular_tangent(m, z) * dir;
    let n = t.norm();
    (n > 0.0 && n.is_finite()).then(|| t / n)
}

struct Stopper<'a> {
    region: &'a Region,
    obstacles: &'a [Complex64],
    stop_radii: Vec<f64>,
}

impl<'a> Stopper<'a> {
    fn new(m: &'a Maxface, region: &'a Region) -> Self {
        let obstacles = m.obstacles();
        let stop_radii = obstacles
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let spacing = obstacles
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &q)| (q - p).norm())
                    .fold(f64::INFINITY, f64::min);
                let spacing = if spacing.is_finite() { spacing } else { p.norm().max(1.0) };
                1e-3 * spacing
            })
            .collect();
        Self {
            region,
            obstacles,
            stop_radii,
        }
    }

    fn nearest(&self, z: Complex64) -> Option<(Complex64, f64, f64)> {
        self.obstacles
            .iter()
            .zip(&self.stop_radii)
            .map(|(&p, &r)| (p, (z - p).norm(), r))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    fn blocked(&self, z: Complex64) -> Option<CurveEnd> {
        if !self.region.contains(z) {
            return Some(CurveEnd::RegionExit);
        }
        match self.nearest(z) {
            Some((p, d, r)) if d < r => Some(CurveEnd::Puncture(p)),
            _ => None,
        }
    }
}

/// Traces the component of the singular set through `seed`, in both
/// directions unless it closes up.
pub fn trace_singular_curve(m: &Maxface, seed: Complex64, region: &Region) -> Result<SingularCurve> {
    let residual = m.level(seed).abs();
    if !(residual <= SEED_RESIDUAL) {
        return Err(Error::BadSeed { seed, residual });
    }
    let z0 = correct(m, seed, 2 * CORRECTOR_STEPS).ok_or(Error::BadSeed { seed, residual })?;
    let stopper = Stopper::new(m, region);
    let tau = m.tol().classification;
    if m.dg().eval_raw(z0).norm() < tau {
        let mut curve = SingularCurve {
            samples: alloc::vec![sample_at(m, z0)],
            closed: false,
            ends: [CurveEnd::DegenerateGaussMap; 2],
            swallowtail_points: Vec::new(),
            not_a_front_points: Vec::new(),
            borderline_points: Vec::new(),
        };
        locate_special_points(m, &mut curve);
        return Ok(curve);
    }
    let (forward, end_f) = march(m, z0, 1.0, &stopper)?;
    let (points, closed, ends) = if end_f == CurveEnd::Closed {
        (forward, true, [CurveEnd::Closed; 2])
    } else {
        let (backward, end_b) = march(m, z0, -1.0, &stopper)?;
        let mut points: Vec<Complex64> = backward.into_iter().skip(1).rev().collect();
        points.extend(forward);
        (points, false, [end_b, end_f])
    };
    let mut curve = SingularCurve {
        samples: points.into_iter().map(|z| sample_at(m, z)).collect(),
        closed,
        ends,
        swallowtail_points: Vec::new(),
        not_a_front_points: Vec::new(),
        borderline_points: Vec::new(),
    };
    locate_special_points(m, &mut curve);
    Ok(curve)
}

/// One direction of predictor–corrector continuation from z0.
fn march(m: &Maxface, z0: Complex64, dir: f64, stopper: &Stopper) -> Result<(Vec<Complex64>, CurveEnd)> {
    let tau = m.tol().classification;
    let mut points = alloc::vec![z0];
    let mut z = z0;
    let mut h: f64 = 0.01;
    let mut travelled = 0.0;
    let mut t = unit_tangent(m, z, dir).ok_or(Error::TracingStalled { last: z })?;
    loop {
        if points.len() > MAX_SAMPLES {
            return Err(Error::TracingStalled { last: z });
        }
        if let Some((_, d, _)) = stopper.nearest(z) {
            h = h.min((0.25 * d).max(H_MIN));
        }
        let step = loop {
            let predicted = z + t * h;
            let accepted = correct(m, predicted, CORRECTOR_STEPS).and_then(|next| {
                let t_next = unit_tangent(m, next, dir)?;
                let turn = (t_next * t.conj()).arg().abs();
                let drift = (next - predicted).norm();
                (turn <= MAX_TURN && drift <= 0.5 * h).then_some((next, t_next, turn))
            });
            match accepted {
                Some(s) => break s,
                None if h > H_MIN => h = (0.5 * h).max(H_MIN),
                None => return Err(Error::TracingStalled { last: z }),
            }
        };
        let (next, t_next, turn) = step;
        let used = (next - z).norm();
        travelled += used;
        if travelled > 3.0 * used && (next - z0).norm() <= 1.01 * used.max(h) {
            // Closed: keep `next` unless it nearly duplicates the start.
            if (next - z0).norm() > 0.2 * used {
                points.push(next);
            }
            return Ok((points, CurveEnd::Closed));
        }
        if let Some(end) = stopper.blocked(next) {
            return Ok((points, end));
        }
        points.push(next);
        if m.dg().eval_raw(next).norm() < tau {
            return Ok((points, CurveEnd::DegenerateGaussMap));
        }
        let curvature = turn / used.max(f64::MIN_POSITIVE);
        h = if curvature > 0.0 { TURN / curvature } else { H_MAX };
        h = h.clamp(H_MIN, H_MAX);
        z = next;
        t = t_next;
    }
}

/// Zeros of Im α (swallowtail candidates) and of Re α (non-front points)
/// along the curve, refined by bisection on the level set.
fn locate_special_points(m: &Maxface, curve: &mut SingularCurve) {
    let im_part = |s: &SingularSamplePoint| s.class.witness.im_alpha / s.class.witness.alpha.norm();
    let re_part = |s: &SingularSamplePoint| s.class.witness.re_alpha / s.class.witness.alpha.norm();
    let im_zeros = curve_zeros(m, curve, im_part, |a: Complex64| a.im / a.norm());
    let re_zeros = curve_zeros(m, curve, re_part, |a: Complex64| a.re / a.norm());
    for z in im_zeros {
        match classify_unchecked(m, z).kind {
            SingularKind::Swallowtail => curve.swallowtail_points.push(z),
            SingularKind::Borderline { .. } => curve.borderline_points.push(z),
            _ => {}
        }
    }
    for z in re_zeros {
        if classify_unchecked(m, z).kind == SingularKind::NotAFront {
            curve.not_a_front_points.push(z);
        }
    }
}

fn curve_zeros(
    m: &Maxface,
    curve: &SingularCurve,
    at_sample: impl Fn(&SingularSamplePoint) -> f64,
    at_alpha: impl Fn(Complex64) -> f64,
) -> Vec<Complex64> {
    let tau = m.tol().classification;
    let s = &curve.samples;
    let n = s.len();
    let mut out: Vec<Complex64> = Vec::new();
    let push = |z: Complex64, out: &mut Vec<Complex64>| {
        if !out.iter().any(|&q| (q - z).norm() < 1e-8) {
            out.push(z);
        }
    };
    let value = |z: Complex64| at_alpha(m.alpha().eval_raw(z));
    let pairs = if curve.closed { n } else { n.saturating_sub(1) };
    for i in 0..n {
        let v = at_sample(&s[i]);
        if v.is_nan() {
            continue;
        }
        if v.abs() < REFINE {
            // A zero sitting on a sample counts only if it is isolated.
            let prev = if i > 0 { Some(&s[i - 1]) } else if curve.closed { s.last() } else { None };
            let next = if i + 1 < n { Some(&s[i + 1]) } else if curve.closed { s.first() } else { None };
            let isolated = [prev, next]
                .into_iter()
                .flatten()
                .all(|q| at_sample(q).abs() >= tau);
            if isolated {
                push(s[i].z, &mut out);
            }
        }
    }
    for i in 0..pairs {
        let a = &s[i];
        let b = &s[(i + 1) % n];
        let (va, vb) = (at_sample(a), at_sample(b));
        if !(va * vb < 0.0) || va.abs() < REFINE || vb.abs() < REFINE {
            continue;
        }
        if va.abs() < tau && vb.abs() < tau {
            continue;
        }
        if let Some(z) = bisect(m, a.z, b.z, va, &value) {
            push(z, &mut out);
        }
    }
    out
}

/// Bisection on the chord between two samples, each trial point projected
/// back onto the level set.
fn bisect(m: &Maxface, a: Complex64, b: Complex64, va: f64, value: &impl Fn(Complex64) -> f64) -> Option<Complex64> {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut best = None;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let z = correct(m, a + (b - a) * mid, 2 * CORRECTOR_STEPS)?;
        let v = value(z);
        best = Some(z);
        if v.abs() < REFINE {
            break;
        }
        if (v < 0.0) == (va < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    best
}

/// Points where |g|² − 1 changes sign between neighbouring lattice nodes,
/// refined onto the level set.
fn crossings(m: &Maxface, region: &Region) -> (Vec<Complex64>, f64) {
    let (rows, wrap) = region.lattice();
    let stopper = Stopper::new(m, region);
    let usable = |z: Complex64| z.is_finite() && stopper.blocked(z).is_none();
    let levels: Vec<Vec<Option<f64>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&z| usable(z).then(|| m.level(z)).filter(|f| !f.is_nan()))
                .collect()
        })
        .collect();
    let mut spacing = f64::INFINITY;
    let mut out = Vec::new();
    let mut edge = |a: Complex64, b: Complex64, fa: Option<f64>, fb: Option<f64>, out: &mut Vec<Complex64>| {
        spacing = spacing.min((b - a).norm());
        let (Some(fa), Some(fb)) = (fa, fb) else { return };
        if fa == 0.0 {
            out.push(a);
            return;
        }
        if fa * fb >= 0.0 {
            return;
        }
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            let f = m.level(a + (b - a) * mid);
            if (f < 0.0) == (fa < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if let Some(z) = correct(m, a + (b - a) * (0.5 * (lo + hi)), 2 * CORRECTOR_STEPS) {
            if region.contains(z) {
                out.push(z);
            }
        }
    };
    for (i, row) in rows.iter().enumerate() {
        let n = row.len();
        let cols = if wrap { n } else { n.saturating_sub(1) };
        for k in 0..cols {
            let k2 = (k + 1) % n;
            edge(row[k], row[k2], levels[i][k], levels[i][k2], &mut out);
        }
        if i + 1 < rows.len() {
            for k in 0..n {
                edge(row[k], rows[i + 1][k], levels[i][k], levels[i + 1][k], &mut out);
            }
        }
    }
    (out, spacing)
}

fn distance_to_polyline(z: Complex64, points: &[Complex64], closed: bool) -> f64 {
    let n = points.len();
    if n == 1 {
        return (z - points[0]).norm();
    }
    let segs = if closed { n } else { n - 1 };
    (0..segs)
        .map(|i| {
            let a = points[i];
            let b = points[(i + 1) % n];
            let d = b - a;
            let l2 = d.norm_sqr();
            let t = if l2 == 0.0 { 0.0 } else { (((z - a) * d.conj()).re / l2).clamp(0.0, 1.0) };
            (z - (a + d * t)).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Every component of the singular set meeting the region, traced once.
pub fn trace_all(m: &Maxface, region: &Region) -> Result<Vec<SingularCurve>> {
    let (candidates, spacing) = crossings(m, region);
    let mut curves: Vec<SingularCurve> = Vec::new();
    for z in candidates {
        let covered = curves.iter().any(|c| {
            let pts: Vec<Complex64> = c.samples.iter().map(|s| s.z).collect();
            distance_to_polyline(z, &pts, c.closed) < 0.25 * spacing
        });
        if covered {
            continue;
        }
        curves.push(trace_singular_curve(m, z, region)?);
    }
    Ok(curves)
}

/// One point on each component of the singular set meeting the region.
pub fn singular_seeds(m: &Maxface, region: &Region) -> Result<Vec<Complex64>> {
    Ok(trace_all(m, region)?
        .into_iter()
        .map(|c| c.samples[0].z)
        .collect())
}

/// Swallowtails along a traced curve.
pub fn locate_swallowtails(curve: &SingularCurve) -> &[Complex64] {
    &curve.swallowtail_points
}

#[cfg(test)]
mod tests;
