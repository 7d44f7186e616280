//! Complex rational-function algebra and the quadrature engines built on it.

mod poly;
mod quad;
mod rational;

use core::fmt;

pub use num_complex::Complex64;
pub use poly::{Polynomial, Root};
pub(crate) use quad::{guard_radii, GL_NODES, GL_WEIGHTS};
pub use quad::{contour_integral, path_integral, FormValue, Orientation, Path, PathPiece};
pub use rational::{Laurent, RationalMap, Residue};

/// The imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point of the Riemann sphere, or the value of a meromorphic function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Extended::Finite(z) => Some(z),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinity)
    }

    /// |value|, with `f64::INFINITY` for the point at infinity.
    pub fn modulus(self) -> f64 {
        match self {
            Extended::Finite(z) => z.norm(),
            Extended::Infinity => f64::INFINITY,
        }
    }

    /// Same point of the sphere within `tol` (relative for large moduli).
    pub fn approx_eq(self, other: Extended, tol: f64) -> bool {
        match (self, other) {
            (Extended::Infinity, Extended::Infinity) => true,
            (Extended::Finite(a), Extended::Finite(b)) => {
                (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
            }
            _ => false,
        }
    }
}

impl From<Complex64> for Extended {
    fn from(z: Complex64) -> Self {
        Extended::Finite(z)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(z) => write!(f, "{} {:+}i", z.re, z.im),
            Extended::Infinity => write!(f, "infinity"),
        }
    }
}
