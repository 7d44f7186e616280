use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::Complex64;
use crate::error::{Error, Result};

const ABERTH_MAX_ITER: usize = 2000;

/// Dense polynomial, coefficients lowest degree first. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// c·z^k
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![Complex64::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// z − r
    pub fn linear_factor(r: Complex64) -> Self {
        Self::new(vec![-r, Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &a| acc * z + a)
    }

    /// (p(z), p′(z)) in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &a in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// max |a_k|; zero for the zero polynomial.
    pub fn coefficient_scale(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Σ |a_k| r^k, the natural magnitude against which p(z) with |z| = r is
    /// judged to be zero.
    pub fn magnitude_at(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
    }

    /// Coefficients of p(c + t) in t.
    pub fn taylor_at(&self, c: Complex64) -> Vec<Complex64> {
        let mut t = self.coeffs.clone();
        let n = t.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                let next = t[j + 1];
                t[j] += c * next;
            }
        }
        t
    }

    /// Taylor coefficients of the polynomial with coefficients |a_k| at |c|;
    /// entry j bounds the rounding scale of `taylor_at(c)[j]`.
    pub(crate) fn taylor_scales(&self, c: Complex64) -> Vec<f64> {
        let r = c.norm();
        let mut t: Vec<f64> = self.coeffs.iter().map(|a| a.norm()).collect();
        let n = t.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                let next = t[j + 1];
                t[j] += r * next;
            }
        }
        t
    }

    /// Order of vanishing at `c`: the number of leading Taylor coefficients
    /// that are zero relative to `tol`. The zero polynomial returns `None`.
    pub fn valuation_at(&self, c: Complex64, tol: f64) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        if c.is_zero() {
            return Some(self.low_zeros());
        }
        let taylor = self.taylor_at(c);
        let scales = self.taylor_scales(c);
        let deg = taylor.len() - 1;
        Some(
            taylor
                .iter()
                .zip(&scales)
                .take(deg)
                .take_while(|(t, s)| t.norm() <= tol * **s)
                .count(),
        )
    }

    /// Number of exactly-zero coefficients at the low end (order at z = 0).
    pub fn low_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|a| a.is_zero()).count()
    }

    /// p / z^k, discarding the low coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).copied().collect())
    }

    /// p · z^k
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Quotient of synthetic division by (z − r); the remainder is dropped.
    pub fn deflate(&self, r: Complex64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut q = vec![Complex64::zero(); n - 1];
        let mut acc = Complex64::zero();
        for k in (1..n).rev() {
            acc = acc * r + self.coeffs[k];
            q[k - 1] = acc;
        }
        Self::new(q)
    }

    /// z^deg · p(1/z)
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// All roots with multiplicities; the multiplicities sum to the degree.
    ///
    /// Exact zeros at the origin are split off first; the rest comes from
    /// Aberth–Ehrlich iteration. Multiple roots only converge to roughly
    /// ε^{1/m}, so nearby approximations are clustered and a cluster of
    /// size m is accepted when the first m Taylor coefficients at its
    /// centroid, polished by Newton on p^{(m−1)}, vanish relative to `tol`.
    /// Simple roots are polished by Newton on p.
    pub fn roots(&self, tol: f64) -> Result<Vec<Root>> {
        let deg = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NoRoots),
        };
        let zeros_at_origin = self.low_zeros();
        let mut out = Vec::new();
        if zeros_at_origin > 0 {
            out.push(Root {
                value: Complex64::zero(),
                multiplicity: zeros_at_origin,
            });
        }
        let rest = self.shift_down(zeros_at_origin);
        if rest.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let approx = rest.aberth()?;
        for root in rest.cluster(&approx, tol) {
            out.push(root);
        }
        let total: usize = out.iter().map(|r| r.multiplicity).sum();
        debug_assert_eq!(total, deg);
        let worst = out
            .iter()
            .map(|r| self.eval(r.value).norm() / self.magnitude_at(r.value.norm()).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        if !(worst <= tol) {
            return Err(Error::RootFindingFailure { residual: worst });
        }
        Ok(out)
    }

    fn aberth(&self) -> Result<Vec<Complex64>> {
        let n = self.degree().unwrap_or(0);
        let lead = self.coeffs[n];
        let monic: Vec<Complex64> = self.coeffs.iter().map(|&a| a / lead).collect();
        let monic = Polynomial { coeffs: monic };
        if n == 1 {
            return Ok(vec![-monic.coeffs[0]]);
        }
        // Start on a circle of the geometric-mean root radius, rotated off
        // the real axis to avoid symmetric stagnation.
        let radius = monic.coeffs[0].norm().powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
            .collect();
        let mut done = vec![false; n];
        for _ in 0..ABERTH_MAX_ITER {
            for k in 0..n {
                if done[k] {
                    continue;
                }
                let (p, dp) = monic.eval_with_derivative(z[k]);
                let backward = 8.0 * f64::EPSILON * monic.magnitude_at(z[k].norm());
                if p.norm() <= backward {
                    done[k] = true;
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if !step.re.is_finite() || !step.im.is_finite() {
                    continue;
                }
                z[k] -= step;
                if step.norm() <= 4.0 * f64::EPSILON * z[k].norm() {
                    done[k] = true;
                }
            }
            if done.iter().all(|&d| d) {
                break;
            }
        }
        Ok(z)
    }

    fn cluster(&self, approx: &[Complex64], tol: f64) -> Vec<Root> {
        let mut assigned = vec![false; approx.len()];
        let mut out = Vec::new();
        for i in 0..approx.len() {
            if assigned[i] {
                continue;
            }
            let radius = 1e-4 * (1.0 + approx[i].norm());
            let members: Vec<usize> = (i..approx.len())
                .filter(|&j| !assigned[j] && (approx[j] - approx[i]).norm() < radius)
                .collect();
            let m = members.len();
            let centroid: Complex64 =
                members.iter().map(|&j| approx[j]).sum::<Complex64>() / m as f64;
            let polished = if m > 1 { self.polish(centroid, m) } else { centroid };
            if m > 1 && self.vanishes_to_order(polished, m, tol) {
                for &j in &members {
                    assigned[j] = true;
                }
                out.push(Root {
                    value: polished,
                    multiplicity: m,
                });
            } else {
                assigned[i] = true;
                out.push(Root {
                    value: self.polish(approx[i], 1),
                    multiplicity: 1,
                });
            }
        }
        out
    }

    fn vanishes_to_order(&self, c: Complex64, m: usize, tol: f64) -> bool {
        let taylor = self.taylor_at(c);
        let scales = self.taylor_scales(c);
        taylor
            .iter()
            .zip(&scales)
            .take(m)
            .all(|(t, s)| t.norm() <= tol * s)
    }

    /// Newton on the (m−1)-th derivative, where an m-fold root is simple.
    fn polish(&self, start: Complex64, m: usize) -> Complex64 {
        let mut q = self.clone();
        for _ in 1..m {
            q = q.derivative();
        }
        let mut z = start;
        for _ in 0..4 {
            let (p, dp) = q.eval_with_derivative(z);
            if dp.is_zero() {
                break;
            }
            let next = z - p / dp;
            if !next.re.is_finite() || !next.im.is_finite() {
                break;
            }
            if (q.eval(next).norm()) > p.norm() {
                break;
            }
            z = next;
        }
        z
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_default()
                        + rhs.coeffs.get(k).copied().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&a| -a).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}
