use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::complex::{path_integral, Complex64, Path, PathPiece, RationalMap};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Detour arcs sit at this fraction of the obstacle spacing.
const DETOUR_FRACTION: f64 = 0.3;

/// Three rational 1-forms integrated from a base point, avoiding a fixed
/// set of obstacles (punctures and poles).
#[derive(Clone, Debug)]
pub struct FormTriple {
    forms: [RationalMap; 3],
    obstacles: Vec<Complex64>,
    base_point: Complex64,
    tol: Tolerances,
}

impl FormTriple {
    pub fn new(
        forms: [RationalMap; 3],
        obstacles: Vec<Complex64>,
        base_point: Complex64,
        tol: Tolerances,
    ) -> Self {
        Self {
            forms,
            obstacles,
            base_point,
            tol,
        }
    }

    pub fn forms(&self) -> &[RationalMap; 3] {
        &self.forms
    }

    pub fn obstacles(&self) -> &[Complex64] {
        &self.obstacles
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn eval(&self, z: Complex64) -> [Complex64; 3] {
        [
            self.forms[0].eval_raw(z),
            self.forms[1].eval_raw(z),
            self.forms[2].eval_raw(z),
        ]
    }

    /// ∫ along `path` of the three forms.
    pub fn integrate(&self, path: &Path) -> Result<[Complex64; 3]> {
        self.integrate_with_tol(path, self.tol.quadrature)
    }

    pub fn integrate_with_tol(&self, path: &Path, tol: f64) -> Result<[Complex64; 3]> {
        path_integral(
            |z| self.eval(z),
            path,
            &self.obstacles,
            self.tol.guard_fraction,
            tol,
        )
    }

    /// ∫ from the base point to z, along `path` if given, else along the
    /// default route.
    pub fn lift(&self, z: Complex64, path: Option<&Path>) -> Result<[Complex64; 3]> {
        match path {
            Some(path) => {
                let close = |a: Option<Complex64>, b: Complex64| {
                    a.is_some_and(|a| (a - b).norm() <= 1e-12 * (1.0 + b.norm()))
                };
                if !close(path.start(), self.base_point) {
                    return Err(Error::InvalidPath("path must start at the base point"));
                }
                if !close(path.end(), z) {
                    return Err(Error::InvalidPath("path must end at the evaluation point"));
                }
                self.integrate(path)
            }
            None => {
                if z == self.base_point {
                    return Ok([Complex64::zero(); 3]);
                }
                self.integrate(&self.route(self.base_point, z)?)
            }
        }
    }

    /// Straight segment from `from` to `to`, bent around every obstacle it
    /// passes near by the shorter arc of a circle centred on the obstacle
    /// (counter-clockwise when the segment hits the centre).
    pub fn route(&self, from: Complex64, to: Complex64) -> Result<Path> {
        if from == to {
            return Err(Error::InvalidPath("route endpoints coincide"));
        }
        let dir = to - from;
        let len = dir.norm();
        let u = dir / len;
        let mut detours: Vec<(f64, f64, Complex64, f64)> = Vec::new();
        for (i, &p) in self.obstacles.iter().enumerate() {
            let spacing = self
                .obstacles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| (q - p).norm())
                .fold(f64::INFINITY, f64::min);
            let spacing = if spacing.is_finite() { spacing } else { p.norm().max(1.0) };
            let end_dist = (from - p).norm().min((to - p).norm());
            let r = (DETOUR_FRACTION * spacing).min(0.5 * end_dist);
            let t = ((p - from) * u.conj()).re;
            let offset = ((p - from) * u.conj()).im;
            let d = if t <= 0.0 || t >= len {
                continue;
            } else {
                offset.abs()
            };
            if d >= r {
                continue;
            }
            let half = (r * r - d * d).sqrt();
            detours.push((t - half, t + half, p, r));
        }
        detours.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut pieces = Vec::new();
        let mut cursor = from;
        for (t_in, t_out, p, r) in detours {
            let entry = from + u * t_in;
            let exit = from + u * t_out;
            if entry != cursor {
                pieces.push(PathPiece::Segment {
                    from: cursor,
                    to: entry,
                });
            }
            let a_in = (entry - p).arg();
            let a_out = (exit - p).arg();
            let mut sweep = a_out - a_in;
            while sweep > PI {
                sweep -= 2.0 * PI;
            }
            while sweep <= -PI {
                sweep += 2.0 * PI;
            }
            if (sweep.abs() - PI).abs() < 1e-9 {
                sweep = PI;
            }
            pieces.push(PathPiece::Arc {
                center: p,
                radius: r,
                start_angle: a_in,
                sweep,
            });
            cursor = exit;
        }
        if cursor != to {
            pieces.push(PathPiece::Segment { from: cursor, to });
        }
        Ok(Path::from_pieces(pieces))
    }
}
