use alloc::string::String;
use core::fmt;

use crate::complex::{Complex64, Extended};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Root finding was asked for a constant (or zero) polynomial.
    NoRoots,
    RootFindingFailure {
        residual: f64,
    },
    ZeroDenominator,
    /// Numerator and denominator share a root.
    NotCoprime {
        root: Complex64,
    },
    /// Valuation of the zero function.
    UndefinedOrder,
    QuadratureFailure {
        last: Complex64,
        previous: Complex64,
    },
    PathThroughSingularity {
        pole: Complex64,
    },
    InvalidPath(&'static str),
    /// The lift metric (1+|g|²)²|ω̂|² degenerates or blows up off the ends.
    MetricCondition {
        point: Extended,
        detail: &'static str,
    },
    /// g is a constant of modulus one, so the induced metric vanishes identically.
    UnitModulusConstantGauss,
    BasePointSingular {
        base_point: Complex64,
    },
    DuplicatePuncture {
        point: Extended,
    },
    PunctureNotListed {
        point: Extended,
    },
    InvalidDeformation,
    BadSeed {
        seed: Complex64,
        residual: f64,
    },
    TracingStalled {
        last: Complex64,
    },
    NotSingular {
        z: Complex64,
        residual: f64,
    },
    NullDirectionUndefined {
        z: Complex64,
    },
    InternalInconsistency {
        puncture: Extended,
        discrepancy: f64,
    },
    PeriodConditionFailed {
        violation: f64,
    },
    BadPunctureGeometry {
        puncture: Extended,
    },
    NotComplete,
    /// The inequality or its equality case contradicts the end analysis.
    OssermanInconsistent {
        lhs: i64,
        rhs: i64,
    },
    EmptyGrid,
    UnknownSurface(String),
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoRoots => write!(f, "polynomial of degree < 1 has no roots"),
            Error::RootFindingFailure { residual } => {
                write!(f, "root finding did not converge (relative residual {residual:e})")
            }
            Error::ZeroDenominator => write!(f, "denominator is the zero polynomial"),
            Error::NotCoprime { root } => write!(
                f,
                "numerator and denominator share the root {} {:+}i; supply reduced data",
                root.re, root.im
            ),
            Error::UndefinedOrder => write!(f, "order of the zero function is undefined"),
            Error::QuadratureFailure { last, previous } => write!(
                f,
                "quadrature did not converge (last {last}, previous {previous})"
            ),
            Error::PathThroughSingularity { pole } => write!(
                f,
                "integration path passes within the guard radius of the pole {} {:+}i",
                pole.re, pole.im
            ),
            Error::InvalidPath(why) => write!(f, "invalid path: {why}"),
            Error::MetricCondition { point, detail } => {
                write!(f, "metric condition violated at {point}: {detail}")
            }
            Error::UnitModulusConstantGauss => {
                write!(f, "g is constant with |g| = 1; the induced metric vanishes identically")
            }
            Error::BasePointSingular { base_point } => write!(
                f,
                "base point {} {:+}i is a puncture or a pole of the forms",
                base_point.re, base_point.im
            ),
            Error::DuplicatePuncture { point } => write!(f, "puncture {point} listed twice"),
            Error::PunctureNotListed { point } => write!(f, "{point} is not a puncture of the data"),
            Error::InvalidDeformation => write!(f, "deformation parameter must be nonzero"),
            Error::BadSeed { seed, residual } => write!(
                f,
                "seed {} {:+}i is not on the singular set (||g|^2 - 1| = {residual:e})",
                seed.re, seed.im
            ),
            Error::TracingStalled { last } => write!(
                f,
                "singular-curve tracing stalled near {} {:+}i",
                last.re, last.im
            ),
            Error::NotSingular { z, residual } => write!(
                f,
                "{} {:+}i is not a singular point (||g| - 1| = {residual:e})",
                z.re, z.im
            ),
            Error::NullDirectionUndefined { z } => write!(
                f,
                "null direction undefined at {} {:+}i (omega vanishes)",
                z.re, z.im
            ),
            Error::InternalInconsistency { puncture, discrepancy } => write!(
                f,
                "residue and quadrature periods disagree by {discrepancy:e} at {puncture}"
            ),
            Error::PeriodConditionFailed { violation } => {
                write!(f, "period condition fails (max |Re P| = {violation:e})")
            }
            Error::BadPunctureGeometry { puncture } => {
                write!(f, "puncture {puncture} is not isolated from the poles of the forms")
            }
            Error::NotComplete => write!(f, "surface is not complete"),
            Error::OssermanInconsistent { lhs, rhs } => write!(
                f,
                "Osserman check inconsistent with the end analysis (2 deg g = {lhs}, rhs = {rhs})"
            ),
            Error::EmptyGrid => write!(f, "every grid node is masked"),
            Error::UnknownSurface(name) => write!(f, "unknown gallery surface '{name}'"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
        }
    }
}

impl core::error::Error for Error {}
