//! Global checks on the punctured sphere: periods, ends, completeness,
//! the Osserman-type inequality and the total curvature of the lift metric.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::complex::{contour_integral, Complex64, Extended, Orientation, Path, Polynomial, RationalMap, GL_NODES, GL_WEIGHTS, I};
use crate::error::{Error, Result};
use crate::weierstrass::{phi_forms, Maxface};

/// Periods of one puncture loop.
#[derive(Clone, Debug, PartialEq)]
pub struct PuncturePeriod {
    pub puncture: Extended,
    /// 2πi·Res of each component of Φ.
    pub periods: [Complex64; 3],
    /// The same loop integrals by quadrature.
    pub quadrature: [Complex64; 3],
    pub discrepancy: f64,
    pub loop_radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodReport {
    pub punctures: Vec<PuncturePeriod>,
    pub max_re_violation: f64,
    pub max_discrepancy: f64,
    pub passes: bool,
}

/// Above this, residues and quadrature disagree for real.
const INCONSISTENT: f64 = 1e-6;

/// Loop radius around a finite puncture: half the distance to the nearest
/// other obstacle, or half of max(1, |p|) when there is none.
fn loop_radius(obstacles: &[Complex64], p: Complex64) -> f64 {
    let d = obstacles
        .iter()
        .map(|&q| (q - p).norm())
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min);
    0.5 * if d.is_finite() { d } else { p.norm().max(1.0) }
}

pub fn compute_periods(m: &Maxface) -> Result<PeriodReport> {
    let tol = m.tol();
    let phi = m.phi();
    let obstacles = m.obstacles();
    let mut out = Vec::new();
    for &puncture in m.data().punctures() {
        let mut periods = [Complex64::zero(); 3];
        for k in 0..3 {
            periods[k] = 2.0 * PI * I * phi[k].form_residue_at(puncture, tol.zero)?.value;
        }
        let (circle, radius) = match puncture {
            Extended::Finite(p) => {
                let r = loop_radius(obstacles, p);
                (Path::circle(p, r, Orientation::CounterClockwise)?, r)
            }
            // Clockwise in z is counter-clockwise around ∞ in w = 1/z.
            Extended::Infinity => {
                let r = 2.0 * obstacles.iter().map(|p| p.norm()).fold(1.0, f64::max);
                (Path::circle(Complex64::zero(), r, Orientation::Clockwise)?, r)
            }
        };
        let quadrature: [Complex64; 3] = contour_integral(|z| m.phi_at(z), &circle, 1e-13)?;
        let discrepancy = (0..3)
            .map(|k| (periods[k] - quadrature[k]).norm())
            .fold(0.0, f64::max);
        if discrepancy > INCONSISTENT {
            return Err(Error::InternalInconsistency { puncture, discrepancy });
        }
        out.push(PuncturePeriod {
            puncture,
            periods,
            quadrature,
            discrepancy,
            loop_radius: radius,
        });
    }
    let max_re_violation = out
        .iter()
        .flat_map(|p| p.periods.iter().map(|v| v.re.abs()))
        .fold(0.0, f64::max);
    let max_discrepancy = out.iter().map(|p| p.discrepancy).fold(0.0, f64::max);
    Ok(PeriodReport {
        punctures: out,
        max_re_violation,
        max_discrepancy,
        passes: max_re_violation < tol.period,
    })
}

/// Degree of g as a map of the sphere; 0 for constant g.
pub fn gauss_degree(m: &Maxface) -> usize {
    m.data().g().degree()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndType {
    Catenoidal,
    Planar,
    /// Pole order above 2: complete but not embedded.
    HigherOrder,
    /// |g(p)| = 1 at the end.
    SimpleCandidate,
    /// Pole order below 2 at an end with |g(p)| ≠ 1.
    LowOrder,
}

/// The isometry that moved g(p) to 0 before reading off the end
/// coefficients: an optional reflection (g, ω̂) ↦ (1/g, g²ω̂), then the boost
/// g ↦ (a g + b)/(b̄ g + ā), ω̂ ↦ (b̄ g + ā)² ω̂.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndNormalization {
    pub reflected: bool,
    pub boost: Option<(Complex64, Complex64)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndCoefficients {
    pub a: f64,
    pub c: f64,
    pub normalization: EndNormalization,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndReport {
    pub puncture: Extended,
    /// f64::INFINITY at a pole of g.
    pub g_modulus: f64,
    pub end_complete: bool,
    pub phi_pole_order: i32,
    pub df_order_ok: bool,
    pub embedded: bool,
    pub end_type: EndType,
    pub coefficients: Option<EndCoefficients>,
}

fn form_pole_order(forms: &[RationalMap; 3], p: Extended, tol: f64) -> Result<i32> {
    let mut order = i32::MIN;
    for form in forms.iter().filter(|f| !f.is_zero()) {
        order = order.max(-form.form_order_at(p, tol)?);
    }
    Ok(order)
}

pub fn analyze_end(m: &Maxface, puncture: Extended) -> Result<EndReport> {
    let data = m.data();
    let tol = m.tol();
    if !data.is_puncture(puncture, tol) {
        return Err(Error::PunctureNotListed { point: puncture });
    }
    if let Extended::Finite(p) = puncture {
        let guard = tol.guard_fraction * p.norm().max(1.0);
        let crowded = m
            .obstacles()
            .iter()
            .any(|&q| q != p && (q - p).norm() > tol.zero.sqrt() * (1.0 + p.norm()) && (q - p).norm() < guard);
        if crowded {
            return Err(Error::BadPunctureGeometry { puncture });
        }
    }
    let g_p = match puncture {
        Extended::Finite(p) => data.g().eval(p, tol.eval),
        Extended::Infinity => data.g().compose_inverse().eval(Complex64::zero(), tol.eval),
    };
    let g_modulus = g_p.modulus();
    let end_complete = !((g_modulus - 1.0).abs() < tol.classification);
    let order = form_pole_order(m.phi(), puncture, tol.zero)?;
    let df_order_ok = order >= 2;
    let embedded = order == 2;
    let coefficients = if embedded && end_complete {
        Some(end_coefficients(m, puncture, g_p)?)
    } else {
        None
    };
    let end_type = if !end_complete {
        EndType::SimpleCandidate
    } else if order > 2 {
        EndType::HigherOrder
    } else if order < 2 {
        EndType::LowOrder
    } else if coefficients.is_some_and(|k| k.c.abs() > tol.zero) {
        EndType::Catenoidal
    } else {
        EndType::Planar
    };
    Ok(EndReport {
        puncture,
        g_modulus,
        end_complete,
        phi_pole_order: order,
        df_order_ok,
        embedded,
        end_type,
        coefficients,
    })
}

/// (a, c) of an embedded end after normalizing g(p) to 0: a is the modulus
/// of the t⁻² coefficient of Φ¹ in the local coordinate t, c the real part
/// of the residue of Φ⁰.
fn end_coefficients(m: &Maxface, puncture: Extended, g_p: Extended) -> Result<EndCoefficients> {
    let t = m.tol().zero;
    let mut g = m.data().g().clone();
    let mut omega = m.data().omega_hat().clone();
    let mut g0 = g_p;
    let reflected = g_p.modulus() > 1.0;
    if reflected {
        omega = g.powi(2, t)?.mul(&omega, t)?;
        g = g.recip()?;
        g0 = match g_p {
            Extended::Finite(v) => Extended::Finite(v.inv()),
            Extended::Infinity => Extended::Finite(Complex64::zero()),
        };
    }
    let v = g0.finite().unwrap_or_default();
    let boost = if v.norm() > t {
        let a = Complex64::new(1.0 / (1.0 - v.norm_sqr()).sqrt(), 0.0);
        let b = -v * a;
        let factor = chop(&g.mobius(b.conj(), a.conj(), Complex64::zero(), Complex64::new(1.0, 0.0)), t)?;
        omega = chop(&factor.powi(2, t)?.mul(&omega, t)?, t)?;
        g = chop(&g.mobius(a, b, b.conj(), a.conj()), t)?;
        Some((a, b))
    } else {
        None
    };
    let phi = phi_forms(&g, &omega, t)?;
    let (horizontal, vertical) = match puncture {
        Extended::Finite(p) => (phi[1].laurent_at(p, 4, t)?, phi[0].form_residue_at(puncture, t)?),
        Extended::Infinity => (
            phi[1].form_at_infinity().laurent_at(Complex64::zero(), 4, t)?,
            phi[0].form_residue_at(puncture, t)?,
        ),
    };
    Ok(EndCoefficients {
        a: horizontal.coefficient(-2).norm(),
        c: vertical.value.re,
        normalization: EndNormalization { reflected, boost },
    })
}

/// Drops coefficients that cancelled to rounding level in a Möbius image.
fn chop(f: &RationalMap, tol: f64) -> Result<RationalMap> {
    let clean = |p: &Polynomial| {
        let scale = p.coefficient_scale();
        Polynomial::new(
            p.coeffs()
                .iter()
                .map(|&c| if c.norm() <= 1e-14 * scale { Complex64::zero() } else { c })
                .collect(),
        )
    };
    RationalMap::reduced(clean(f.num()), clean(f.den()), tol)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Completeness {
    Complete,
    /// The ends with |g| = 1.
    WeaklyCompleteOnly(Vec<Extended>),
}

pub fn classify_completeness(m: &Maxface) -> Result<Completeness> {
    let periods = compute_periods(m)?;
    if !periods.passes {
        return Err(Error::PeriodConditionFailed {
            violation: periods.max_re_violation,
        });
    }
    let ends = analyze_ends(m)?;
    Ok(completeness_of(&ends))
}

fn analyze_ends(m: &Maxface) -> Result<Vec<EndReport>> {
    m.data().punctures().iter().map(|&p| analyze_end(m, p)).collect()
}

fn completeness_of(ends: &[EndReport]) -> Completeness {
    let bad: Vec<Extended> = ends.iter().filter(|e| !e.end_complete).map(|e| e.puncture).collect();
    if bad.is_empty() {
        Completeness::Complete
    } else {
        Completeness::WeaklyCompleteOnly(bad)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalReport {
    pub label: String,
    pub period: PeriodReport,
    pub ends: Vec<EndReport>,
    pub deg_g: usize,
    pub euler_punctured: i64,
    pub osserman_lhs: i64,
    pub osserman_rhs: i64,
    pub equality: bool,
    pub all_ends_embedded: bool,
    /// `None` when the periods fail and the surface is not well defined.
    pub completeness: Option<Completeness>,
    /// The inequality is a theorem only for complete surfaces with
    /// vanishing real periods.
    pub osserman_applicable: bool,
    pub total_curvature_numeric: f64,
}

pub fn osserman_report(m: &Maxface) -> Result<GlobalReport> {
    let period = compute_periods(m)?;
    let ends = analyze_ends(m)?;
    let completeness = period.passes.then(|| completeness_of(&ends));
    let n = m.data().punctures().len() as i64;
    let deg_g = gauss_degree(m);
    let euler_punctured = 2 - n;
    let osserman_lhs = 2 * deg_g as i64;
    let osserman_rhs = -euler_punctured + n;
    let equality = osserman_lhs == osserman_rhs;
    let all_ends_embedded = ends.iter().all(|e| e.embedded);
    let osserman_applicable = completeness == Some(Completeness::Complete);
    if osserman_applicable && (osserman_lhs < osserman_rhs || equality != all_ends_embedded) {
        return Err(Error::OssermanInconsistent {
            lhs: osserman_lhs,
            rhs: osserman_rhs,
        });
    }
    Ok(GlobalReport {
        label: String::from(m.data().label()),
        period,
        ends,
        deg_g,
        euler_punctured,
        osserman_lhs,
        osserman_rhs,
        equality,
        all_ends_embedded,
        completeness,
        osserman_applicable,
        total_curvature_numeric: total_curvature_numeric(m)?,
    })
}

/// ∫ 4|g′|²/(1+|g|²)² over the sphere: the area of the Gauss image counted
/// with multiplicity, 4π·deg g. Integrated over |z| ≤ 1 and |1/z| ≤ 1 in
/// polar coordinates, trapezoid in angle and composite Gauss–Legendre in
/// radius, both doubled until the total settles.
pub fn total_curvature_numeric(m: &Maxface) -> Result<f64> {
    let t = m.tol().zero;
    let g = m.data().g().clone();
    let g_inf = g.compose_inverse();
    let inner = Density::new(g, t)?;
    let outer = Density::new(g_inf, t)?;
    let mut panels = 4;
    let mut angles = 64;
    let mut previous = f64::NAN;
    for _ in 0..8 {
        let total = inner.disk(panels, angles) + outer.disk(panels, angles);
        if (total - previous).abs() <= 1e-7 * total.abs().max(1.0) {
            return Ok(total);
        }
        previous = total;
        panels *= 2;
        angles *= 2;
    }
    Err(Error::QuadratureFailure {
        last: Complex64::new(previous, 0.0),
        previous: Complex64::new(previous, 0.0),
    })
}

/// The spherical area density of g, evaluated through 1/g where |g| > 1.
struct Density {
    g: RationalMap,
    dg: RationalMap,
    inv: Option<(RationalMap, RationalMap)>,
}

impl Density {
    fn new(g: RationalMap, tol: f64) -> Result<Self> {
        let dg = g.derivative(tol)?;
        let inv = if g.is_zero() {
            None
        } else {
            let w = g.recip()?;
            let dw = w.derivative(tol)?;
            Some((w, dw))
        };
        Ok(Self { g, dg, inv })
    }

    fn at(&self, z: Complex64) -> f64 {
        let p = self.g.num().eval(z);
        let q = self.g.den().eval(z);
        let (u, du) = match &self.inv {
            Some((w, dw)) if p.norm() > q.norm() => (w.eval_raw(z), dw.eval_raw(z)),
            _ => (self.g.eval_raw(z), self.dg.eval_raw(z)),
        };
        let s = 1.0 + u.norm_sqr();
        4.0 * du.norm_sqr() / (s * s)
    }

    fn disk(&self, panels: usize, angles: usize) -> f64 {
        let h = 1.0 / panels as f64;
        let dtheta = TAU / angles as f64;
        let mut sum = 0.0;
        for i in 0..panels {
            let mid = (i as f64 + 0.5) * h;
            for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                for r in [mid - 0.5 * h * x, mid + 0.5 * h * x] {
                    let ring: f64 = (0..angles)
                        .map(|k| self.at(Complex64::from_polar(r, k as f64 * dtheta)))
                        .sum();
                    sum += 0.5 * h * w * r * ring * dtheta;
                }
            }
        }
        sum
    }
}

#[cfg(test)]
mod tests;
