use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{Complex64, Extended, Polynomial, Root};
use crate::error::{Error, Result};

/// p(z)/q(z) with q ≠ 0 and p, q without common roots.
///
/// Coprimality is validated at construction; the arithmetic below cancels
/// common factors at the roots of the operand denominators so results stay
/// reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

/// Laurent expansion f(p + t) = Σ_k coeffs[k] · t^(valuation + k).
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub valuation: i32,
    pub coeffs: Vec<Complex64>,
}

impl Laurent {
    /// Coefficient of t^power, zero outside the computed window.
    pub fn coefficient(&self, power: i32) -> Complex64 {
        let k = power - self.valuation;
        if k < 0 {
            return Complex64::zero();
        }
        self.coeffs.get(k as usize).copied().unwrap_or_default()
    }
}

/// A residue. `at_pole` is false when the point was not a pole, in which
/// case the value is zero by convention and callers may want to warn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residue {
    pub value: Complex64,
    pub at_pole: bool,
}

impl RationalMap {
    /// Validated constructor; rejects a zero denominator and shared roots.
    pub fn new(num: Polynomial, den: Polynomial, tol: f64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if num.low_zeros() > 0 && den.low_zeros() > 0 {
            return Err(Error::NotCoprime {
                root: Complex64::zero(),
            });
        }
        if num.degree() >= Some(1) && den.degree() >= Some(1) {
            for root in den.roots(tol)? {
                if num.valuation_at(root.value, tol).unwrap_or(0) > 0 {
                    return Err(Error::NotCoprime { root: root.value });
                }
            }
        }
        Ok(Self { num, den })
    }

    /// Cancels common factors instead of rejecting them.
    pub fn reduced(num: Polynomial, den: Polynomial, tol: f64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let roots = if den.degree() >= Some(1) {
            den.roots(tol)?
        } else {
            Vec::new()
        };
        Ok(Self::cancel(num, den, &roots, tol))
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// The identity map z ↦ z.
    pub fn identity() -> Self {
        Self::polynomial(Polynomial::monomial(Complex64::new(1.0, 0.0), 1))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value if the map is constant.
    pub fn as_constant(&self) -> Option<Complex64> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Complex64::zero()),
            (Some(0), Some(0)) => Some(self.num.coeffs()[0] / self.den.coeffs()[0]),
            _ => None,
        }
    }

    /// Degree as a map of the sphere: max(deg num, deg den).
    pub fn degree(&self) -> usize {
        if self.num.is_zero() {
            return 0;
        }
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Value at z; the infinity tag at poles.
    pub fn eval(&self, z: Complex64, eval_tol: f64) -> Extended {
        let d = self.den.eval(z);
        if d.norm() <= eval_tol * self.den.magnitude_at(z.norm()) {
            if self.num.is_zero() {
                return Extended::Finite(Complex64::zero());
            }
            return Extended::Infinity;
        }
        Extended::Finite(self.num.eval(z) / d)
    }

    /// num(z)/den(z) without any pole test.
    pub fn eval_raw(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// (f(z), f′(z)) by the quotient rule, no pole test.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let (p, dp) = self.num.eval_with_derivative(z);
        let (q, dq) = self.den.eval_with_derivative(z);
        (p / q, (dp * q - p * dq) / (q * q))
    }

    pub fn poles(&self, tol: f64) -> Result<Vec<Root>> {
        if self.num.is_zero() || self.den.degree() == Some(0) {
            return Ok(Vec::new());
        }
        self.den.roots(tol)
    }

    pub fn zeros(&self, tol: f64) -> Result<Vec<Root>> {
        match self.num.degree() {
            Some(d) if d >= 1 => self.num.roots(tol),
            _ => Ok(Vec::new()),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn mul(&self, other: &Self, tol: f64) -> Result<Self> {
        let roots = merge_roots(&[self.den_roots(tol)?, other.den_roots(tol)?], tol);
        Ok(Self::cancel(
            &self.num * &other.num,
            &self.den * &other.den,
            &roots,
            tol,
        ))
    }

    pub fn add(&self, other: &Self, tol: f64) -> Result<Self> {
        if self.den == other.den {
            let roots = self.den_roots(tol)?;
            return Ok(Self::cancel(
                &self.num + &other.num,
                self.den.clone(),
                &roots,
                tol,
            ));
        }
        let roots = merge_roots(&[self.den_roots(tol)?, other.den_roots(tol)?], tol);
        Ok(Self::cancel(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
            &roots,
            tol,
        ))
    }

    pub fn sub(&self, other: &Self, tol: f64) -> Result<Self> {
        self.add(&other.neg(), tol)
    }

    pub fn powi(&self, k: u32, tol: f64) -> Result<Self> {
        let roots: Vec<Root> = self
            .den_roots(tol)?
            .into_iter()
            .map(|r| Root {
                value: r.value,
                multiplicity: r.multiplicity * k as usize,
            })
            .collect();
        Ok(Self::cancel(self.num.pow(k), self.den.pow(k), &roots, tol))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self, tol: f64) -> Result<Self> {
        let p = &self.num;
        let q = &self.den;
        let num = &(&p.derivative() * q) - &(p * &q.derivative());
        let roots: Vec<Root> = self
            .den_roots(tol)?
            .into_iter()
            .map(|r| Root {
                value: r.value,
                multiplicity: 2 * r.multiplicity,
            })
            .collect();
        Ok(Self::cancel(num, q * q, &roots, tol))
    }

    /// (a·f + b)/(c·f + d); coprimality is preserved when ad − bc ≠ 0.
    pub fn mobius(&self, a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        let num = &self.num.scale(a) + &self.den.scale(b);
        let den = &self.num.scale(c) + &self.den.scale(d);
        Self { num, den }
    }

    /// Valuation ord_p(f): negative for poles, positive for zeros. At
    /// infinity this is deg den − deg num.
    pub fn order_at(&self, p: Extended, tol: f64) -> Result<i32> {
        if self.num.is_zero() {
            return Err(Error::UndefinedOrder);
        }
        match p {
            Extended::Infinity => Ok(self.den.degree().unwrap_or(0) as i32
                - self.num.degree().unwrap_or(0) as i32),
            Extended::Finite(z) => {
                let zn = self.num.valuation_at(z, tol).unwrap_or(0) as i32;
                let zd = self.den.valuation_at(z, tol).unwrap_or(0) as i32;
                Ok(zn - zd)
            }
        }
    }

    /// First `terms` Laurent coefficients at a finite point.
    pub fn laurent_at(&self, p: Complex64, terms: usize, tol: f64) -> Result<Laurent> {
        if self.num.is_zero() {
            return Err(Error::UndefinedOrder);
        }
        let kn = self.num.valuation_at(p, tol).unwrap_or(0);
        let kd = self.den.valuation_at(p, tol).unwrap_or(0);
        let a = self.num.taylor_at(p);
        let b = self.den.taylor_at(p);
        let a = &a[kn..];
        let b = &b[kd..];
        let mut q: Vec<Complex64> = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut acc = a.get(k).copied().unwrap_or_default();
            for j in 1..=k.min(b.len() - 1) {
                acc -= b[j] * q[k - j];
            }
            q.push(acc / b[0]);
        }
        Ok(Laurent {
            valuation: kn as i32 - kd as i32,
            coeffs: q,
        })
    }

    /// Coefficient of (z − p)^(−1). Zero (flagged) when p is not a pole.
    pub fn residue_at(&self, p: Complex64, tol: f64) -> Result<Residue> {
        if self.num.is_zero() {
            return Ok(Residue {
                value: Complex64::zero(),
                at_pole: false,
            });
        }
        let order = self.order_at(Extended::Finite(p), tol)?;
        if order >= 0 {
            return Ok(Residue {
                value: Complex64::zero(),
                at_pole: false,
            });
        }
        let laurent = self.laurent_at(p, (-order) as usize, tol)?;
        Ok(Residue {
            value: laurent.coefficient(-1),
            at_pole: true,
        })
    }

    /// f(1/w) as a rational function of w.
    pub fn compose_inverse(&self) -> Self {
        self.inverted_with_shift(0)
    }

    /// The 1-form f(z)dz written in the chart w = 1/z: −f(1/w)·w^(−2).
    pub fn form_at_infinity(&self) -> Self {
        self.inverted_with_shift(2).neg()
    }

    fn inverted_with_shift(&self, extra_den_power: i32) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap_or(0) as i32;
        let dd = self.den.degree().unwrap_or(0) as i32;
        let e = dd - dn - extra_den_power;
        let num = self.num.reversed();
        let den = self.den.reversed();
        if e >= 0 {
            Self {
                num: num.shift_up(e as usize),
                den,
            }
        } else {
            Self {
                num,
                den: den.shift_up((-e) as usize),
            }
        }
    }

    /// Valuation of the 1-form f(z)dz, using the chart w = 1/z at infinity.
    pub fn form_order_at(&self, p: Extended, tol: f64) -> Result<i32> {
        match p {
            Extended::Finite(_) => self.order_at(p, tol),
            Extended::Infinity => Ok(self.order_at(p, tol)? - 2),
        }
    }

    /// Residue of the 1-form f(z)dz; at infinity taken in the chart w = 1/z.
    pub fn form_residue_at(&self, p: Extended, tol: f64) -> Result<Residue> {
        match p {
            Extended::Finite(z) => self.residue_at(z, tol),
            Extended::Infinity => self
                .form_at_infinity()
                .residue_at(Complex64::zero(), tol),
        }
    }

    /// f(p + t) as a function of t, with coefficients that vanish to `tol`
    /// at t = 0 set exactly to zero.
    pub fn recentered(&self, p: Complex64, tol: f64) -> Self {
        let clean = |poly: &Polynomial| {
            let k = poly.valuation_at(p, tol).unwrap_or(0);
            let mut t = poly.taylor_at(p);
            for c in t.iter_mut().take(k) {
                *c = Complex64::zero();
            }
            Polynomial::new(t)
        };
        if self.num.is_zero() {
            return Self::zero();
        }
        Self {
            num: clean(&self.num),
            den: clean(&self.den),
        }
    }

    fn den_roots(&self, tol: f64) -> Result<Vec<Root>> {
        if self.den.degree().unwrap_or(0) == 0 || self.num.is_zero() {
            return Ok(Vec::new());
        }
        self.den.roots(tol)
    }

    /// Divides num and den by (z − r)^k at each listed denominator root
    /// where num also vanishes to order k.
    fn cancel(mut num: Polynomial, mut den: Polynomial, den_roots: &[Root], tol: f64) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let k0 = num.low_zeros().min(den.low_zeros());
        num = num.shift_down(k0);
        den = den.shift_down(k0);
        for root in den_roots {
            if root.value.is_zero() {
                continue;
            }
            let k = num
                .valuation_at(root.value, tol)
                .unwrap_or(0)
                .min(den.valuation_at(root.value, tol).unwrap_or(0))
                .min(root.multiplicity);
            for _ in 0..k {
                num = num.deflate(root.value);
                den = den.deflate(root.value);
            }
        }
        Self { num, den }
    }
}

/// Unions root lists, adding multiplicities of coincident roots.
fn merge_roots(lists: &[Vec<Root>], tol: f64) -> Vec<Root> {
    let mut out: Vec<Root> = Vec::new();
    for root in lists.iter().flatten() {
        let radius = tol.sqrt() * (1.0 + root.value.norm());
        match out
            .iter_mut()
            .find(|r| (r.value - root.value).norm() <= radius)
        {
            Some(existing) => existing.multiplicity += root.multiplicity,
            None => out.push(*root),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::complex::{c, I};
    use alloc::vec;

    const TOL: f64 = 1e-9;

    fn poly(re: &[f64]) -> Polynomial {
        Polynomial::from_real(re)
    }

    fn rational(num: &[f64], den: &[f64]) -> RationalMap {
        RationalMap::new(poly(num), poly(den), TOL).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let id = RationalMap::identity();
        assert_eq!(id.eval(c(3.0, 4.0), 1e-12), Extended::Finite(c(3.0, 4.0)));
        let inv_sq = rational(&[1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(inv_sq.eval(c(2.0, 0.0), 1e-12), Extended::Finite(c(0.25, 0.0)));
        let f = rational(&[1.0, 0.0, 1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(f.eval(c(0.0, 0.0), 1e-12), Extended::Infinity);
    }

    #[test]
    fn rejects_common_roots_and_zero_denominator() {
        let err = RationalMap::new(poly(&[-1.0, 0.0, 1.0]), poly(&[-1.0, 1.0]), TOL);
        assert!(matches!(err, Err(Error::NotCoprime { .. })));
        let err = RationalMap::new(poly(&[0.0, 1.0]), poly(&[0.0, 0.0, 1.0]), TOL);
        assert!(matches!(err, Err(Error::NotCoprime { .. })));
        let err = RationalMap::new(poly(&[1.0]), Polynomial::zero(), TOL);
        assert_eq!(err, Err(Error::ZeroDenominator));
    }

    #[test]
    fn derivative_examples() {
        let sq = RationalMap::polynomial(poly(&[0.0, 0.0, 1.0]));
        assert_eq!(sq.derivative(TOL).unwrap(), RationalMap::polynomial(poly(&[0.0, 2.0])));

        let inv = rational(&[1.0], &[0.0, 1.0]);
        let d = inv.derivative(TOL).unwrap();
        assert_eq!(d.order_at(Extended::Finite(c(0.0, 0.0)), TOL), Ok(-2));
        assert_eq!(d.eval(c(2.0, 0.0), 1e-12), Extended::Finite(c(-0.25, 0.0)));
    }

    #[test]
    fn derivative_of_quotient_matches_finite_differences() {
        // (a + z^3)/(1 - z) with a = 0.7 + 0.2i
        let a = c(0.7, 0.2);
        let f = RationalMap::new(
            Polynomial::new(vec![a, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            poly(&[1.0, -1.0]),
            TOL,
        )
        .unwrap();
        let d = f.derivative(TOL).unwrap();
        // ((3z^2)(1-z) + (a+z^3)) / (1-z)^2, already coprime.
        assert_eq!(d.den().degree(), Some(2));
        let points = [c(0.3, 0.4), c(-1.2, 0.5), c(2.0, -0.7), c(0.1, -2.2), c(-0.6, -0.6)];
        for z in points {
            let h = 1e-5 * (1.0 + z.norm());
            let fd = (f.eval_raw(z + h) - f.eval_raw(z - h)) / (2.0 * h);
            let exact = d.eval_raw(z);
            assert!((fd - exact).norm() / exact.norm() < 1e-8, "at {z}");
        }
    }

    #[test]
    fn order_examples() {
        let cat = rational(&[1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(cat.order_at(Extended::Finite(c(0.0, 0.0)), TOL), Ok(-2));
        assert_eq!(RationalMap::identity().order_at(Extended::Infinity, TOL), Ok(-1));
        let f = rational(&[1.0, 0.0, 1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(f.order_at(Extended::Finite(I), TOL), Ok(1));
        assert_eq!(RationalMap::zero().order_at(Extended::Infinity, TOL), Err(Error::UndefinedOrder));
    }

    #[test]
    fn residue_examples() {
        let a = 1.7;
        let f = rational(&[-2.0 * a], &[0.0, 1.0]);
        let r = f.residue_at(c(0.0, 0.0), TOL).unwrap();
        assert!(r.at_pole);
        assert!((r.value - c(-2.0 * a, 0.0)).norm() < 1e-15);

        let g = rational(&[a, 0.0, a], &[0.0, 0.0, 1.0]);
        assert_eq!(g.residue_at(c(0.0, 0.0), TOL).unwrap().value, c(0.0, 0.0));

        let h = rational(&[1.0], &[-1.0, 0.0, 1.0]);
        let r = h.residue_at(c(1.0, 0.0), TOL).unwrap();
        assert!((r.value - c(0.5, 0.0)).norm() < 1e-14);

        let not_pole = h.residue_at(c(3.0, 0.0), TOL).unwrap();
        assert!(!not_pole.at_pole);
        assert_eq!(not_pole.value, c(0.0, 0.0));
    }

    #[test]
    fn forms_at_infinity() {
        // (1 + z^2) dz  ->  -(1 + w^-2) w^-2 dw has a pole of order 4.
        let enneper = RationalMap::polynomial(poly(&[1.0, 0.0, 1.0]));
        assert_eq!(enneper.form_order_at(Extended::Infinity, TOL), Ok(-4));
        // (1 + z^2)/z^2 dz  ->  order 2 at infinity.
        let cat = rational(&[1.0, 0.0, 1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(cat.form_order_at(Extended::Infinity, TOL), Ok(-2));
        // dz/z has residue -1 at infinity.
        let log = rational(&[1.0], &[0.0, 1.0]);
        let r = log.form_residue_at(Extended::Infinity, TOL).unwrap();
        assert!((r.value - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn products_cancel_common_factors() {
        let z = RationalMap::identity();
        let inv_sq = rational(&[1.0], &[0.0, 0.0, 1.0]);
        let prod = z.mul(&inv_sq, TOL).unwrap();
        assert_eq!(prod, rational(&[1.0], &[0.0, 1.0]));

        let a = rational(&[1.0], &[-1.0, 1.0]);
        let b = RationalMap::polynomial(poly(&[-1.0, 0.0, 1.0]));
        let prod = a.mul(&b, TOL).unwrap();
        assert_eq!(prod.den().degree(), Some(0));
        assert!((prod.eval_raw(c(2.0, 0.0)) - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn laurent_coefficients_at_double_pole() {
        // a(1+z^2)/z^2 = a/z^2 + a
        let f = rational(&[2.0, 0.0, 2.0], &[0.0, 0.0, 1.0]);
        let l = f.laurent_at(c(0.0, 0.0), 4, TOL).unwrap();
        assert_eq!(l.valuation, -2);
        assert_eq!(l.coefficient(-2), c(2.0, 0.0));
        assert_eq!(l.coefficient(-1), c(0.0, 0.0));
        assert_eq!(l.coefficient(0), c(2.0, 0.0));
    }

    #[test]
    fn residue_at_double_pole_off_origin() {
        // 1/((z-1)^2 (z+1)): residue at 1 is d/dz[1/(z+1)] = -1/4.
        let den = &(&poly(&[-1.0, 1.0]) * &poly(&[-1.0, 1.0])) * &poly(&[1.0, 1.0]);
        let f = RationalMap::new(poly(&[1.0]), den, TOL).unwrap();
        let r = f.residue_at(c(1.0, 0.0), TOL).unwrap();
        assert!((r.value - c(-0.25, 0.0)).norm() < 1e-12, "{:?}", r);
        let r = f.residue_at(c(-1.0, 0.0), TOL).unwrap();
        assert!((r.value - c(0.25, 0.0)).norm() < 1e-12);
    }
}
