#[allow(unused_imports)]
use num_traits::Float;
use alloc::string::String;
use alloc::vec::Vec;

use super::route::FormTriple;
use super::WeierstrassData;
use crate::complex::{Complex64, Extended, Path, RationalMap, I};
use crate::error::Result;
use crate::tol::Tolerances;

/// Weierstrass data of a minimal surface in Euclidean 3-space, integrated as
/// Re ∫ ((1−g₀²), i(1+g₀²), 2g₀)·ω̂ dz. Its induced metric is
/// (1+|g₀|²)²|ω̂|²·|dz|².
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalData {
    g0: RationalMap,
    omega_hat: RationalMap,
    punctures: Vec<Extended>,
    base_point: Complex64,
    label: String,
}

impl MinimalData {
    pub fn from_parts(
        g0: RationalMap,
        omega_hat: RationalMap,
        punctures: Vec<Extended>,
        base_point: Complex64,
        label: impl Into<String>,
    ) -> Self {
        Self {
            g0,
            omega_hat,
            punctures,
            base_point,
            label: label.into(),
        }
    }

    pub fn g0(&self) -> &RationalMap {
        &self.g0
    }

    pub fn omega_hat(&self) -> &RationalMap {
        &self.omega_hat
    }

    pub fn punctures(&self) -> &[Extended] {
        &self.punctures
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The maxface whose companion this is: g = i·g₀.
    pub fn maxface_data(&self, tol: &Tolerances) -> Result<WeierstrassData> {
        WeierstrassData::new(
            self.g0.scale(I),
            self.omega_hat.clone(),
            self.punctures.clone(),
            self.base_point,
            self.label.clone(),
            tol,
        )
    }

    pub fn forms(&self, tol: f64) -> Result<[RationalMap; 3]> {
        let one = RationalMap::constant(Complex64::new(1.0, 0.0));
        let g2 = self.g0.powi(2, tol)?;
        Ok([
            one.sub(&g2, tol)?.mul(&self.omega_hat, tol)?,
            one.add(&g2, tol)?.mul(&self.omega_hat, tol)?.scale(I),
            self.g0.mul(&self.omega_hat, tol)?.scale(Complex64::new(2.0, 0.0)),
        ])
    }

    pub fn prepare(&self, tol: Tolerances) -> Result<MinimalSurface> {
        let forms = self.forms(tol.zero)?;
        let mut obstacles: Vec<Complex64> = self.punctures.iter().filter_map(|p| p.finite()).collect();
        for form in &forms {
            for pole in form.poles(tol.zero)? {
                if !obstacles
                    .iter()
                    .any(|&o| (o - pole.value).norm() <= tol.zero.sqrt() * (1.0 + o.norm()))
                {
                    obstacles.push(pole.value);
                }
            }
        }
        Ok(MinimalSurface {
            data: self.clone(),
            tol,
            lift: FormTriple::new(forms, obstacles, self.base_point, tol),
        })
    }
}

/// Prepared minimal surface.
#[derive(Clone, Debug)]
pub struct MinimalSurface {
    data: MinimalData,
    tol: Tolerances,
    lift: FormTriple,
}

impl MinimalSurface {
    pub fn data(&self) -> &MinimalData {
        &self.data
    }

    pub fn lift_forms(&self) -> &FormTriple {
        &self.lift
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn evaluate(&self, z: Complex64, path: Option<&Path>) -> Result<[f64; 3]> {
        let v = self.lift.lift(z, path)?;
        Ok([v[0].re, v[1].re, v[2].re])
    }

    pub fn abs_g0(&self, z: Complex64) -> f64 {
        self.data.g0.eval(z, self.tol.eval).modulus()
    }

    /// (1+|g₀|²)²|ω̂|², from |Φ₀|² + |Φ₁|² + |Φ₂|² = 2(1+|g₀|²)²|ω̂|² so that
    /// poles of g₀ need no special case.
    pub fn metric_factor(&self, z: Complex64) -> f64 {
        let f = self.lift.eval(z);
        0.5 * (f[0].norm_sqr() + f[1].norm_sqr() + f[2].norm_sqr())
    }
}
