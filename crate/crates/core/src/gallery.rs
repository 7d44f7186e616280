//! Built-in example surfaces.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::complex::{Complex64, Extended, Polynomial, RationalMap, I};
use crate::error::{Error, Result};
use crate::tol::Tolerances;
use crate::weierstrass::{MinimalData, WeierstrassData};

pub const NAMES: [&str; 6] = [
    "plane",
    "catenoid",
    "enneper",
    "lopez-ros-catenoid",
    "lopez-ros-enneper",
    "jorge-meeks-companion",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GalleryParams {
    /// Catenoid scale.
    pub a: f64,
    /// Lopez–Ros parameter.
    pub lambda: f64,
    /// Number of ends of the Jorge–Meeks companion.
    pub n: u32,
}

impl Default for GalleryParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            lambda: 2.0,
            n: 3,
        }
    }
}

/// Which parameters an entry reads.
pub fn parameters_of(name: &str) -> &'static [&'static str] {
    match name {
        "catenoid" => &["a"],
        "lopez-ros-catenoid" => &["a", "lambda"],
        "lopez-ros-enneper" => &["lambda"],
        "jorge-meeks-companion" => &["n"],
        _ => &[],
    }
}

pub fn gallery(name: &str, params: &GalleryParams, tol: &Tolerances) -> Result<WeierstrassData> {
    match name {
        "plane" => plane(tol),
        "catenoid" => catenoid(params.a, tol),
        "enneper" => enneper(tol),
        "lopez-ros-catenoid" => {
            check_lambda(params.lambda)?;
            let label = format!("lopez-ros-catenoid(a={}, lambda={})", params.a, params.lambda);
            Ok(catenoid(params.a, tol)?.lopez_ros(params.lambda, tol)?.with_label(label))
        }
        "lopez-ros-enneper" => {
            check_lambda(params.lambda)?;
            let label = format!("lopez-ros-enneper(lambda={})", params.lambda);
            Ok(enneper(tol)?.lopez_ros(params.lambda, tol)?.with_label(label))
        }
        "jorge-meeks-companion" => jorge_meeks_companion(params.n, tol),
        _ => Err(Error::UnknownSurface(name.to_string())),
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be a nonzero real number".to_string()));
    }
    Ok(())
}

fn z() -> RationalMap {
    RationalMap::identity()
}

/// g = 0, ω̂ = 1.
pub fn plane(tol: &Tolerances) -> Result<WeierstrassData> {
    WeierstrassData::new(
        RationalMap::zero(),
        RationalMap::constant(Complex64::new(1.0, 0.0)),
        vec![Extended::Infinity],
        Complex64::new(0.0, 0.0),
        "plane",
        tol,
    )
}

/// g = z, ω̂ = a/z², ends at 0 and ∞.
pub fn catenoid(a: f64, tol: &Tolerances) -> Result<WeierstrassData> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter("a must be a nonzero real number".to_string()));
    }
    WeierstrassData::new(
        z(),
        catenoid_omega(a, tol)?,
        vec![Extended::Finite(Complex64::new(0.0, 0.0)), Extended::Infinity],
        Complex64::new(1.0, 0.0),
        format!("catenoid(a={a})"),
        tol,
    )
}

fn catenoid_omega(a: f64, tol: &Tolerances) -> Result<RationalMap> {
    RationalMap::new(
        Polynomial::from_real(&[a]),
        Polynomial::from_real(&[0.0, 0.0, 1.0]),
        tol.zero,
    )
}

/// g = z, ω̂ = 1, one end at ∞.
pub fn enneper(tol: &Tolerances) -> Result<WeierstrassData> {
    WeierstrassData::new(
        z(),
        RationalMap::constant(Complex64::new(1.0, 0.0)),
        vec![Extended::Infinity],
        Complex64::new(0.0, 0.0),
        "enneper",
        tol,
    )
}

/// g = i z^(n−1), ω̂ = 1/(zⁿ − 1)², ends at the n-th roots of unity.
pub fn jorge_meeks_companion(n: u32, tol: &Tolerances) -> Result<WeierstrassData> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".to_string()));
    }
    let n_us = n as usize;
    let g = RationalMap::polynomial(Polynomial::monomial(I, n_us - 1));
    let mut den = vec![Complex64::new(0.0, 0.0); n_us + 1];
    den[0] = Complex64::new(-1.0, 0.0);
    den[n_us] = Complex64::new(1.0, 0.0);
    let den = Polynomial::new(den).pow(2);
    let omega_hat = RationalMap::new(Polynomial::one(), den, tol.zero)?;
    let punctures = roots_of_unity(n)
        .into_iter()
        .map(Extended::Finite)
        .collect();
    WeierstrassData::new(
        g,
        omega_hat,
        punctures,
        Complex64::new(0.0, 0.0),
        format!("jorge-meeks-companion(n={n})"),
        tol,
    )
}

pub fn roots_of_unity(n: u32) -> Vec<Complex64> {
    // Exact values on the axes.
    let axes = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    (0..n)
        .map(|k| {
            if (4 * k) % n == 0 {
                axes[(4 * k / n) as usize]
            } else {
                Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
            }
        })
        .collect()
}

/// The helicoid as minimal data: g₀ = −iz, ω̂ = a/z².
pub fn helicoid(a: f64, tol: &Tolerances) -> Result<MinimalData> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter("a must be a nonzero real number".to_string()));
    }
    Ok(MinimalData::from_parts(
        z().scale(-I),
        catenoid_omega(a, tol)?,
        vec![Extended::Finite(Complex64::new(0.0, 0.0)), Extended::Infinity],
        Complex64::new(1.0, 0.0),
        format!("helicoid(a={a})"),
    ))
}

/// Positive λ for which the Lopez–Ros deformation (λg, ω̂/λ) puts an end on
/// the singular set, |λ g(p)| = 1. Ends with g(p) ∈ {0, ∞} never do.
pub fn lopez_ros_excluded(data: &WeierstrassData, tol: &Tolerances) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &p in data.punctures() {
        let value = match p {
            Extended::Finite(z) => data.g().eval(z, tol.eval),
            Extended::Infinity => data.g().compose_inverse().eval(Complex64::new(0.0, 0.0), tol.eval),
        };
        if let Extended::Finite(v) = value {
            let m = v.norm();
            if m > tol.zero {
                let lambda = 1.0 / m;
                if !out.iter().any(|&l| (l - lambda).abs() <= tol.zero * lambda) {
                    out.push(lambda);
                }
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
