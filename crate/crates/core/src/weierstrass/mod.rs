//! Weierstrass data, the three holomorphic forms, and everything that can be
//! evaluated pointwise from them.

mod minimal;
mod route;

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::complex::{Complex64, Extended, Path, Polynomial, RationalMap, I};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

pub use minimal::{MinimalData, MinimalSurface};
pub use route::FormTriple;

/// (g, ω = ω̂ dz) on the Riemann sphere minus `punctures`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    g: RationalMap,
    omega_hat: RationalMap,
    punctures: Vec<Extended>,
    base_point: Complex64,
    label: String,
}

impl WeierstrassData {
    /// Validates the data: distinct punctures, g not a unimodular
    /// constant, the lift metric (1+|g|²)²|ω̂|² regular off the punctures,
    /// and a base point away from punctures and poles.
    pub fn new(
        g: RationalMap,
        omega_hat: RationalMap,
        punctures: Vec<Extended>,
        base_point: Complex64,
        label: impl Into<String>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let data = Self {
            g,
            omega_hat,
            punctures,
            base_point,
            label: label.into(),
        };
        data.validate(tol)?;
        Ok(data)
    }

    pub fn g(&self) -> &RationalMap {
        &self.g
    }

    pub fn omega_hat(&self) -> &RationalMap {
        &self.omega_hat
    }

    pub fn punctures(&self) -> &[Extended] {
        &self.punctures
    }

    pub fn finite_punctures(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.punctures.iter().filter_map(|p| p.finite())
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_puncture(&self, p: Extended, tol: &Tolerances) -> bool {
        let radius = tol.zero.sqrt();
        self.punctures.iter().any(|q| q.approx_eq(p, radius))
    }

    fn validate(&self, tol: &Tolerances) -> Result<()> {
        if let Some(c) = self.g.as_constant() {
            if (c.norm() - 1.0).abs() <= tol.zero {
                return Err(Error::UnitModulusConstantGauss);
            }
        }
        for (i, p) in self.punctures.iter().enumerate() {
            if self.punctures[..i].iter().any(|q| q.approx_eq(*p, tol.zero)) {
                return Err(Error::DuplicatePuncture { point: *p });
            }
        }
        if self.omega_hat.is_zero() {
            return Err(Error::MetricCondition {
                point: Extended::Finite(self.base_point),
                detail: "omega vanishes identically",
            });
        }
        for pole in self.omega_hat.poles(tol.zero)? {
            let p = Extended::Finite(pole.value);
            if !self.is_puncture(p, tol) {
                return Err(Error::MetricCondition {
                    point: p,
                    detail: "omega has a pole off the punctures",
                });
            }
        }
        let mut candidates: Vec<Complex64> = self
            .omega_hat
            .zeros(tol.zero)?
            .into_iter()
            .map(|r| r.value)
            .collect();
        candidates.extend(self.g.poles(tol.zero)?.into_iter().map(|r| r.value));
        for z in candidates {
            let p = Extended::Finite(z);
            if self.is_puncture(p, tol) {
                continue;
            }
            self.check_lift_metric_at(p, tol)?;
        }
        if !self.is_puncture(Extended::Infinity, tol) {
            self.check_lift_metric_at(Extended::Infinity, tol)?;
        }
        let base = Extended::Finite(self.base_point);
        if self.is_puncture(base, tol) {
            return Err(Error::BasePointSingular {
                base_point: self.base_point,
            });
        }
        for form in phi_forms(&self.g, &self.omega_hat, tol.zero)? {
            if !form.is_zero() && form.order_at(base, tol.zero)? < 0 {
                return Err(Error::BasePointSingular {
                    base_point: self.base_point,
                });
            }
        }
        Ok(())
    }

    /// At a non-puncture: ω̂ (as a 1-form) vanishes to order exactly twice
    /// the pole order of g.
    fn check_lift_metric_at(&self, p: Extended, tol: &Tolerances) -> Result<()> {
        let g_pole = if self.g.is_zero() {
            0
        } else {
            (-self.g.order_at(p, tol.zero)?).max(0)
        };
        let omega_order = self.omega_hat.form_order_at(p, tol.zero)?;
        if omega_order < 0 {
            return Err(Error::MetricCondition {
                point: p,
                detail: "omega has a pole off the punctures",
            });
        }
        if omega_order != 2 * g_pole {
            return Err(Error::MetricCondition {
                point: p,
                detail: if g_pole == 0 {
                    "omega vanishes where g is finite (branch point)"
                } else {
                    "omega must vanish to exactly twice the pole order of g"
                },
            });
        }
        Ok(())
    }

    /// (λg, ω̂/λ) for real λ ≠ 0.
    pub fn lopez_ros(&self, lambda: f64, tol: &Tolerances) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidDeformation);
        }
        Self::new(
            self.g.scale(Complex64::new(lambda, 0.0)),
            self.omega_hat.scale(Complex64::new(1.0 / lambda, 0.0)),
            self.punctures.clone(),
            self.base_point,
            self.label.clone(),
            tol,
        )
    }

    /// Minimal-surface data with Gauss map g₀ = −i·g and the same ω.
    pub fn companion(&self) -> MinimalData {
        MinimalData::from_parts(
            self.g.scale(-I),
            self.omega_hat.clone(),
            self.punctures.clone(),
            self.base_point,
            self.label.clone(),
        )
    }
}

/// Φ = (−2g, 1+g², i(1−g²))·ω̂, each reduced.
pub fn phi_forms(g: &RationalMap, omega_hat: &RationalMap, tol: f64) -> Result<[RationalMap; 3]> {
    let one = RationalMap::constant(Complex64::new(1.0, 0.0));
    let g2 = g.powi(2, tol)?;
    Ok([
        g.mul(omega_hat, tol)?.scale(Complex64::new(-2.0, 0.0)),
        one.add(&g2, tol)?.mul(omega_hat, tol)?,
        one.sub(&g2, tol)?.mul(omega_hat, tol)?.scale(I),
    ])
}

/// Numerator of −(Φ⁰)² + (Φ¹)² + (Φ²)² over the common denominator q²s,
/// where g = p/q and ω̂ = r/s. Identically zero in exact arithmetic.
pub fn nullity_numerator(g: &RationalMap, omega_hat: &RationalMap) -> Polynomial {
    let p = g.num();
    let q = g.den();
    let r = omega_hat.num();
    let pq = p * q;
    let p2 = p * p;
    let q2 = q * q;
    let n0 = (&pq * r).scale(Complex64::new(-2.0, 0.0));
    let n1 = &(&q2 + &p2) * r;
    let n2 = (&(&q2 - &p2) * r).scale(I);
    &(&(&n1 * &n1) + &(&n2 * &n2)) - &(&n0 * &n0)
}

/// Pointwise quantities at a regular point of the domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalGeometry {
    pub z: Complex64,
    /// g(z), or the infinity tag at a pole of g.
    pub g: Extended,
    pub abs_g: f64,
    /// ν, or `None` within the zero tolerance of the singular set.
    pub nu: Option<[f64; 3]>,
    pub n_euc: [f64; 3],
    pub ds2_factor: f64,
    pub dsigma2_factor: f64,
    /// `f64::INFINITY` on the singular set.
    pub k_induced: f64,
    pub k_lift: f64,
    pub lambda: f64,
}

/// A surface point: position together with the local geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    pub f: [f64; 3],
    pub local: LocalGeometry,
}

/// Gauss map values in a chart where they stay bounded: g itself when
/// |g| ≤ 1, else w = 1/g with h = g²ω̂ in place of ω̂.
#[derive(Clone, Copy, Debug)]
enum GaussChart {
    Direct {
        g: Complex64,
        dg: Complex64,
        omega: Complex64,
    },
    Inverted {
        w: Complex64,
        dw: Complex64,
        h: Complex64,
    },
}

/// Validated data with every derived rational map cached.
#[derive(Clone, Debug)]
pub struct Maxface {
    data: WeierstrassData,
    tol: Tolerances,
    lift: FormTriple,
    dg: RationalMap,
    /// g²ω̂, finite at the poles of g.
    h: RationalMap,
    /// 1/g and its derivative; `None` for g ≡ 0.
    w: Option<(RationalMap, RationalMap)>,
    alpha: RationalMap,
    dalpha: RationalMap,
}

impl Maxface {
    pub fn new(data: WeierstrassData, tol: Tolerances) -> Result<Self> {
        let t = tol.zero;
        let phi = phi_forms(&data.g, &data.omega_hat, t)?;
        let dg = data.g.derivative(t)?;
        let h = data.g.powi(2, t)?.mul(&data.omega_hat, t)?;
        let w = if data.g.is_zero() {
            None
        } else {
            let w = data.g.recip()?;
            let dw = w.derivative(t)?;
            Some((w, dw))
        };
        let alpha = if dg.is_zero() {
            RationalMap::zero()
        } else {
            dg.mul(&h.recip()?, t)?
        };
        let dalpha = alpha.derivative(t)?;
        let mut obstacles: Vec<Complex64> = data.finite_punctures().collect();
        for form in &phi {
            for pole in form.poles(t)? {
                if !obstacles
                    .iter()
                    .any(|&o| (o - pole.value).norm() <= t.sqrt() * (1.0 + o.norm()))
                {
                    obstacles.push(pole.value);
                }
            }
        }
        let lift = FormTriple::new(phi, obstacles, data.base_point, tol);
        Ok(Self {
            data,
            tol,
            lift,
            dg,
            h,
            w,
            alpha,
            dalpha,
        })
    }

    pub fn data(&self) -> &WeierstrassData {
        &self.data
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn phi(&self) -> &[RationalMap; 3] {
        self.lift.forms()
    }

    pub fn lift_forms(&self) -> &FormTriple {
        &self.lift
    }

    pub fn dg(&self) -> &RationalMap {
        &self.dg
    }

    /// g²ω̂
    pub fn h(&self) -> &RationalMap {
        &self.h
    }

    /// α = g′/(g²ω̂)
    pub fn alpha(&self) -> &RationalMap {
        &self.alpha
    }

    pub fn dalpha(&self) -> &RationalMap {
        &self.dalpha
    }

    /// Punctures and poles of Φ in the finite plane.
    pub fn obstacles(&self) -> &[Complex64] {
        self.lift.obstacles()
    }

    pub fn phi_at(&self, z: Complex64) -> [Complex64; 3] {
        self.lift.eval(z)
    }

    /// ∫ Φ from the base point: the holomorphic lift.
    pub fn lift(&self, z: Complex64, path: Option<&Path>) -> Result<[Complex64; 3]> {
        self.lift.lift(z, path)
    }

    /// f(z) = Re ∫ Φ.
    pub fn evaluate_immersion(&self, z: Complex64, path: Option<&Path>) -> Result<[f64; 3]> {
        let v = self.lift(z, path)?;
        Ok([v[0].re, v[1].re, v[2].re])
    }

    pub fn default_route(&self, z: Complex64) -> Result<Path> {
        self.lift.route(self.data.base_point, z)
    }

    /// g(z) with the infinity tag at poles.
    pub fn g_at(&self, z: Complex64) -> Extended {
        self.data.g.eval(z, self.tol.eval)
    }

    /// |g(z)|² − 1, computed as (1 − |w|²)/|w|² beyond the unit circle.
    pub fn level(&self, z: Complex64) -> f64 {
        match self.chart(z) {
            GaussChart::Direct { g, .. } => g.norm_sqr() - 1.0,
            GaussChart::Inverted { w, .. } => {
                let m = w.norm_sqr();
                if m == 0.0 {
                    f64::INFINITY
                } else {
                    (1.0 - m) / m
                }
            }
        }
    }

    fn chart(&self, z: Complex64) -> GaussChart {
        let p = self.data.g.num().eval(z);
        let q = self.data.g.den().eval(z);
        match &self.w {
            Some((_, dw)) if p.norm() > q.norm() => GaussChart::Inverted {
                w: q / p,
                dw: dw.eval_raw(z),
                h: self.h.eval_raw(z),
            },
            _ => GaussChart::Direct {
                g: if p.is_zero() { Complex64::zero() } else { p / q },
                dg: self.dg.eval_raw(z),
                omega: self.data.omega_hat.eval_raw(z),
            },
        }
    }

    pub fn local(&self, z: Complex64) -> LocalGeometry {
        let near_singular = |abs_g: f64| (abs_g - 1.0).abs() < self.tol.zero;
        match self.chart(z) {
            GaussChart::Direct { g, dg, omega } => {
                let m = g.norm_sqr();
                let abs_g = m.sqrt();
                let o2 = omega.norm_sqr();
                let root = ((1.0 + m) * (1.0 + m) + 4.0 * m).sqrt();
                let dsigma2_factor = (1.0 + m) * (1.0 + m) * o2;
                let ds2_factor = (1.0 - m) * (1.0 - m) * o2;
                let k_induced = if near_singular(abs_g) {
                    f64::INFINITY
                } else {
                    4.0 * dg.norm_sqr() / ((1.0 - m).powi(4) * o2)
                };
                LocalGeometry {
                    z,
                    g: Extended::Finite(g),
                    abs_g,
                    nu: (!near_singular(abs_g))
                        .then(|| [-(1.0 + m), 2.0 * g.re, 2.0 * g.im].map(|x| x / (1.0 - m))),
                    n_euc: [1.0 + m, 2.0 * g.re, 2.0 * g.im].map(|x| x / root),
                    ds2_factor,
                    dsigma2_factor,
                    k_induced,
                    k_lift: -4.0 * dg.norm_sqr() / ((1.0 + m).powi(4) * o2),
                    lambda: (m - 1.0) * o2 * root,
                }
            }
            GaussChart::Inverted { w, dw, h } => {
                let m = w.norm_sqr();
                let abs_g = if m == 0.0 { f64::INFINITY } else { 1.0 / m.sqrt() };
                let h2 = h.norm_sqr();
                let root = ((1.0 + m) * (1.0 + m) + 4.0 * m).sqrt();
                let k_induced = if near_singular(abs_g) {
                    f64::INFINITY
                } else {
                    4.0 * dw.norm_sqr() / ((m - 1.0).powi(4) * h2)
                };
                LocalGeometry {
                    z,
                    g: if m == 0.0 {
                        Extended::Infinity
                    } else {
                        Extended::Finite(w.inv())
                    },
                    abs_g,
                    nu: (!near_singular(abs_g))
                        .then(|| [-(1.0 + m), 2.0 * w.re, -2.0 * w.im].map(|x| x / (m - 1.0))),
                    n_euc: [1.0 + m, 2.0 * w.re, -2.0 * w.im].map(|x| x / root),
                    ds2_factor: (m - 1.0) * (m - 1.0) * h2,
                    dsigma2_factor: (1.0 + m) * (1.0 + m) * h2,
                    k_induced,
                    k_lift: -4.0 * dw.norm_sqr() / ((1.0 + m).powi(4) * h2),
                    lambda: (1.0 - m) * h2 * root,
                }
            }
        }
    }

    /// (ν or undefined, n_euc).
    pub fn normals(&self, z: Complex64) -> (Option<[f64; 3]>, [f64; 3]) {
        let l = self.local(z);
        (l.nu, l.n_euc)
    }

    /// (ds², dσ², K of ds², K of dσ²) conformal factors and curvatures.
    pub fn metric_and_curvature(&self, z: Complex64) -> (f64, f64, f64, f64) {
        let l = self.local(z);
        (l.ds2_factor, l.dsigma2_factor, l.k_induced, l.k_lift)
    }

    pub fn lambda_indicator(&self, z: Complex64) -> f64 {
        self.local(z).lambda
    }

    pub fn sample(&self, z: Complex64, path: Option<&Path>) -> Result<SurfaceSample> {
        Ok(SurfaceSample {
            f: self.evaluate_immersion(z, path)?,
            local: self.local(z),
        })
    }
}

/// Lorentzian inner product −a⁰b⁰ + a¹b¹ + a²b².
pub fn lorentz_inner(a: [f64; 3], b: [f64; 3]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[cfg(test)]
mod tests;
