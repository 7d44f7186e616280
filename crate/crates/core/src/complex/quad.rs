use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::Complex64;
use crate::error::{Error, Result};

/// Positive half of the 10-point Gauss–Legendre rule on [−1, 1].
pub(crate) const GL_NODES: [f64; 5] = [
    0.14887433898163122,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
pub(crate) const GL_WEIGHTS: [f64; 5] = [
    0.295524224714753,
    0.2692667193099965,
    0.219086362515982,
    0.14945134915058036,
    0.06667134430868807,
];

const MAX_DEPTH: u32 = 40;
const MIN_TRAPEZOID_NODES: usize = 16;
const MAX_TRAPEZOID_NODES: usize = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::CounterClockwise => 1.0,
            Orientation::Clockwise => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathPiece {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// center + radius·e^{i(start_angle + t·sweep)}, t ∈ [0, 1].
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl PathPiece {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Segment { from, to } => from + (to - from) * t,
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Complex64::from_polar(radius, start_angle + t * sweep),
        }
    }

    /// dz/dt
    pub fn velocity(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Segment { from, to } => to - from,
            PathPiece::Arc {
                radius,
                start_angle,
                sweep,
                ..
            } => Complex64::new(0.0, sweep) * Complex64::from_polar(radius, start_angle + t * sweep),
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn length(&self) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => (to - from).norm(),
            PathPiece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Euclidean distance from `p` to the piece.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - from).norm();
                }
                let t = ((p - from) * d.conj()).re / len2;
                (p - self.point(t.clamp(0.0, 1.0))).norm()
            }
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let rel = p - center;
                let on_circle = (rel.norm() - radius).abs();
                // Is the direction of p inside the swept angular range?
                let mut phi = rel.im.atan2(rel.re) - start_angle;
                if sweep >= 0.0 {
                    phi -= TAU * (phi / TAU).floor();
                    if phi <= sweep {
                        return on_circle;
                    }
                } else {
                    phi = -phi - TAU * (-phi / TAU).floor();
                    if phi <= -sweep {
                        return on_circle;
                    }
                }
                (p - self.start()).norm().min((p - self.end()).norm())
            }
        }
    }
}

/// A piecewise path of segments and circular arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pieces: Vec<PathPiece>,
}

impl Path {
    /// Straight segments through the waypoints; consecutive waypoints must
    /// be distinct.
    pub fn polyline(waypoints: &[Complex64]) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidPath("a polyline needs at least two waypoints"));
        }
        let mut pieces = Vec::with_capacity(waypoints.len() - 1);
        for w in waypoints.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidPath("consecutive waypoints coincide"));
            }
            pieces.push(PathPiece::Segment { from: w[0], to: w[1] });
        }
        Ok(Self { pieces })
    }

    /// Full circle starting at angle 0.
    pub fn circle(center: Complex64, radius: f64, orientation: Orientation) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidPath("circle radius must be positive"));
        }
        Ok(Self {
            pieces: vec![PathPiece::Arc {
                center,
                radius,
                start_angle: 0.0,
                sweep: orientation.sign() * TAU,
            }],
        })
    }

    pub fn arc(center: Complex64, radius: f64, start_angle: f64, sweep: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidPath("arc radius must be positive"));
        }
        Ok(Self {
            pieces: vec![PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            }],
        })
    }

    /// Pieces are taken as given; gaps between them are not checked.
    pub fn from_pieces(pieces: Vec<PathPiece>) -> Self {
        Self { pieces }
    }

    pub fn pieces(&self) -> &[PathPiece] {
        &self.pieces
    }

    pub fn start(&self) -> Option<Complex64> {
        self.pieces.first().map(PathPiece::start)
    }

    pub fn end(&self) -> Option<Complex64> {
        self.pieces.last().map(PathPiece::end)
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(PathPiece::length).sum()
    }

    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.pieces
            .iter()
            .map(|piece| piece.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Appends the pieces of `other`.
    pub fn then(mut self, other: &Path) -> Self {
        self.pieces.extend_from_slice(&other.pieces);
        self
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|p| match *p {
                PathPiece::Segment { from, to } => PathPiece::Segment { from: to, to: from },
                PathPiece::Arc {
                    center,
                    radius,
                    start_angle,
                    sweep,
                } => PathPiece::Arc {
                    center,
                    radius,
                    start_angle: start_angle + sweep,
                    sweep: -sweep,
                },
            })
            .collect();
        Self { pieces }
    }
}

/// Values that can be integrated: a single complex number or a triple of
/// forms integrated together.
pub trait FormValue: Copy {
    fn null() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, c: Complex64) -> Self;
    /// Largest component modulus.
    fn magnitude(self) -> f64;
    fn lead(self) -> Complex64;
}

impl FormValue for Complex64 {
    fn null() -> Self {
        Complex64::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, c: Complex64) -> Self {
        self * c
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn lead(self) -> Complex64 {
        self
    }
}

impl FormValue for [Complex64; 3] {
    fn null() -> Self {
        [Complex64::zero(); 3]
    }
    fn add(self, o: Self) -> Self {
        [self[0] + o[0], self[1] + o[1], self[2] + o[2]]
    }
    fn sub(self, o: Self) -> Self {
        [self[0] - o[0], self[1] - o[1], self[2] - o[2]]
    }
    fn scale(self, c: Complex64) -> Self {
        [self[0] * c, self[1] * c, self[2] * c]
    }
    fn magnitude(self) -> f64 {
        self[0].norm().max(self[1].norm()).max(self[2].norm())
    }
    fn lead(self) -> Complex64 {
        self[0]
    }
}

/// Guard radius of each pole: `fraction` × distance to the nearest other
/// pole (or × max(1, |p|) for an isolated pole).
pub(crate) fn guard_radii(poles: &[Complex64], fraction: f64) -> Vec<f64> {
    poles
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let spacing = poles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| (q - p).norm())
                .fold(f64::INFINITY, f64::min);
            let spacing = if spacing.is_finite() { spacing } else { p.norm().max(1.0) };
            fraction * spacing
        })
        .collect()
}

/// ∫_path f(z) dz by adaptive composite Gauss–Legendre quadrature.
///
/// Each piece is bisected until the 10-point rule on the whole agrees with
/// the sum over its halves to `tol` (relative to max(1, |piece integral|)).
/// A path passing within the guard radius of one of `poles` is rejected.
pub fn path_integral<V: FormValue>(
    f: impl Fn(Complex64) -> V,
    path: &Path,
    poles: &[Complex64],
    guard_fraction: f64,
    tol: f64,
) -> Result<V> {
    let guards = guard_radii(poles, guard_fraction);
    for (&pole, &guard) in poles.iter().zip(&guards) {
        if path.distance_to(pole) < guard {
            return Err(Error::PathThroughSingularity { pole });
        }
    }
    let mut total = V::null();
    for piece in path.pieces() {
        let whole = gauss_legendre(&f, piece, 0.0, 1.0);
        let target = tol * whole.magnitude().max(1.0);
        total = total.add(adaptive(&f, piece, 0.0, 1.0, whole, target, 0)?);
    }
    Ok(total)
}

fn gauss_legendre<V: FormValue>(f: &impl Fn(Complex64) -> V, piece: &PathPiece, a: f64, b: f64) -> V {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = V::null();
    for (&x, &w) in GL_NODES.iter().zip(&GL_WEIGHTS) {
        for t in [mid - half * x, mid + half * x] {
            let dz = piece.velocity(t);
            acc = acc.add(f(piece.point(t)).scale(dz * (w * half)));
        }
    }
    acc
}

fn adaptive<V: FormValue>(
    f: &impl Fn(Complex64) -> V,
    piece: &PathPiece,
    a: f64,
    b: f64,
    whole: V,
    target: f64,
    depth: u32,
) -> Result<V> {
    let mid = 0.5 * (a + b);
    let left = gauss_legendre(f, piece, a, mid);
    let right = gauss_legendre(f, piece, mid, b);
    let both = left.add(right);
    let err = both.sub(whole).magnitude();
    if err <= target {
        return Ok(both);
    }
    if depth >= MAX_DEPTH || !err.is_finite() {
        return Err(Error::QuadratureFailure {
            last: both.lead(),
            previous: whole.lead(),
        });
    }
    let child = target * core::f64::consts::FRAC_1_SQRT_2;
    let l = adaptive(f, piece, a, mid, left, child, depth + 1)?;
    let r = adaptive(f, piece, mid, b, right, child, depth + 1)?;
    Ok(l.add(r))
}

/// ∮ f(z) dz over a full circle by the trapezoid rule, doubling the node
/// count until successive estimates agree to `tol` (relative to
/// max(1, |estimate|)). Exponentially accurate for integrands analytic in a
/// neighbourhood of the circle.
pub fn contour_integral<V: FormValue>(f: impl Fn(Complex64) -> V, circle: &Path, tol: f64) -> Result<V> {
    let (center, radius, start_angle, sweep) = match circle.pieces() {
        [PathPiece::Arc {
            center,
            radius,
            start_angle,
            sweep,
        }] if (sweep.abs() - TAU).abs() < 1e-12 => (*center, *radius, *start_angle, *sweep),
        _ => return Err(Error::InvalidPath("contour integrals need a full circle")),
    };
    let sample = |theta: f64| {
        let e = Complex64::from_polar(radius, start_angle + theta);
        f(center + e).scale(Complex64::new(0.0, 1.0) * e)
    };
    let direction = sweep.signum();
    let mut n = MIN_TRAPEZOID_NODES;
    let mut sum = V::null();
    for k in 0..n {
        sum = sum.add(sample(direction * TAU * k as f64 / n as f64));
    }
    let mut estimate = sum.scale(Complex64::new(direction * TAU / n as f64, 0.0));
    while n < MAX_TRAPEZOID_NODES {
        for k in 0..n {
            let theta = direction * PI * (2 * k + 1) as f64 / n as f64;
            sum = sum.add(sample(theta));
        }
        n *= 2;
        let next = sum.scale(Complex64::new(direction * TAU / n as f64, 0.0));
        let change = next.sub(estimate).magnitude();
        if change <= tol * next.magnitude().max(1.0) {
            return Ok(next);
        }
        estimate = next;
    }
    let last = estimate;
    Err(Error::QuadratureFailure {
        last: last.lead(),
        previous: last.lead(),
    })
}
