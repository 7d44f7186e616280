extern crate std;

use alloc::vec;
use core::f64::consts::{FRAC_PI_4, PI};

use super::*;
use crate::complex::c;
use crate::gallery;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn catenoid(a: f64) -> Maxface {
    Maxface::new(gallery::catenoid(a, &tol()).unwrap(), tol()).unwrap()
}

fn enneper() -> Maxface {
    Maxface::new(gallery::enneper(&tol()).unwrap(), tol()).unwrap()
}

fn close(a: Complex64, b: Complex64, eps: f64) -> bool {
    (a - b).norm() <= eps
}

#[test]
fn phi_forms_of_gallery_examples() {
    let a = 1.5;
    let cat = catenoid(a);
    let z = c(0.7, -0.4);
    let phi = cat.phi_at(z);
    assert!(close(phi[0], c(-2.0 * a, 0.0) / z, 1e-13));
    assert!(close(phi[1], (1.0 + z * z) * a / (z * z), 1e-13));
    assert!(close(phi[2], I * (1.0 - z * z) * a / (z * z), 1e-13));
    // Φ⁰ = −2a/z is stored reduced.
    assert_eq!(cat.phi()[0].den().degree(), Some(1));

    let e = enneper();
    let phi = e.phi_at(z);
    assert!(close(phi[0], -2.0 * z, 1e-15));
    assert!(close(phi[1], 1.0 + z * z, 1e-15));
    assert!(close(phi[2], I * (1.0 - z * z), 1e-15));

    let plane = Maxface::new(gallery::plane(&tol()).unwrap(), tol()).unwrap();
    assert_eq!(plane.phi_at(z), [c(0.0, 0.0), c(1.0, 0.0), I]);
}

#[test]
fn nullity_numerator_vanishes_exactly_for_gallery_data() {
    for name in gallery::NAMES {
        let data = gallery::gallery(name, &gallery::GalleryParams::default(), &tol()).unwrap();
        let n = nullity_numerator(data.g(), data.omega_hat());
        assert!(n.is_zero(), "{name}: {:?}", n);
    }
}

#[test]
fn catenoid_immersion_matches_closed_form() {
    let a = 1.0;
    let cat = catenoid(a);
    for &(r, theta) in &[(2.0, 0.3), (0.4, 2.9), (1.0, -2.0), (2.5, PI), (0.3, -PI + 0.01)] {
        let z = Complex64::from_polar(r, theta);
        let f = cat.evaluate_immersion(z, None).unwrap();
        let expect = [
            -2.0 * a * f64::ln(r),
            a * (r - 1.0 / r) * theta.cos(),
            a * (r - 1.0 / r) * theta.sin(),
        ];
        for k in 0..3 {
            assert!((f[k] - expect[k]).abs() < 1e-10, "r={r} θ={theta}: {f:?} vs {expect:?}");
        }
    }
}

#[test]
fn enneper_immersion_matches_closed_form() {
    let e = enneper();
    for z in [c(0.3, 0.2), c(-1.4, 0.9), c(2.0, -1.0)] {
        let f = e.evaluate_immersion(z, None).unwrap();
        let z3 = z * z * z;
        let expect = [(-z * z).re, (z + z3 / 3.0).re, (I * (z - z3 / 3.0)).re];
        for k in 0..3 {
            assert!((f[k] - expect[k]).abs() < 1e-10);
        }
    }
    assert_eq!(e.evaluate_immersion(c(0.0, 0.0), None).unwrap(), [0.0; 3]);
}

#[test]
fn explicit_path_must_connect_base_point_and_target() {
    let e = enneper();
    let p = Path::polyline(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0)]).unwrap();
    assert!(e.evaluate_immersion(c(1.0, 1.0), Some(&p)).is_ok());
    assert!(matches!(
        e.evaluate_immersion(c(2.0, 1.0), Some(&p)),
        Err(Error::InvalidPath(_))
    ));
}

#[test]
fn default_route_detours_around_the_puncture() {
    let cat = catenoid(1.0);
    let route = cat.default_route(c(-2.0, 0.0)).unwrap();
    assert!(route.distance_to(c(0.0, 0.0)) > 0.2);
    assert!(close(route.end().unwrap(), c(-2.0, 0.0), 1e-15));
    assert_eq!(route.pieces().len(), 3);
}

#[test]
fn normals_examples() {
    let plane = Maxface::new(gallery::plane(&tol()).unwrap(), tol()).unwrap();
    let (nu, n) = plane.normals(c(0.3, 0.1));
    assert_eq!(nu, Some([-1.0, 0.0, 0.0]));
    assert_eq!(n, [1.0, 0.0, 0.0]);

    let (nu, _) = catenoid(1.0).normals(c(2.0, 0.0));
    let nu = nu.unwrap();
    assert!((nu[0] - 5.0 / 3.0).abs() < 1e-15 && (nu[1] + 4.0 / 3.0).abs() < 1e-15);
    assert!((lorentz_inner(nu, nu) + 1.0).abs() < 1e-14);

    let (nu, n) = catenoid(1.0).normals(Complex64::from_polar(1.0, 0.4));
    assert!(nu.is_none());
    assert!((n.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
}

#[test]
fn normals_at_a_pole_of_g() {
    // g = 1/z, ω̂ = z² has a regular point at z = 0.
    let t = tol();
    let g = RationalMap::new(Polynomial::one(), Polynomial::monomial(c(1.0, 0.0), 1), t.zero).unwrap();
    let omega = RationalMap::polynomial(Polynomial::monomial(c(1.0, 0.0), 2));
    let data = WeierstrassData::new(g, omega, vec![Extended::Infinity], c(0.5, 0.0), "inverted enneper", &t).unwrap();
    let m = Maxface::new(data, t).unwrap();
    let l = m.local(c(0.0, 0.0));
    assert_eq!(l.g, Extended::Infinity);
    assert_eq!(l.nu, Some([1.0, 0.0, 0.0]));
    assert_eq!(l.n_euc, [1.0, 0.0, 0.0]);
    assert!((l.ds2_factor - 1.0).abs() < 1e-15);
    assert!((l.k_induced - 4.0).abs() < 1e-15);
}

#[test]
fn metric_examples() {
    let cat = catenoid(1.0);
    for t in [-1.2, 0.3, 0.9] {
        let z = c(f64::exp(t), 0.0);
        let (ds2, _, _, _) = cat.metric_and_curvature(z);
        // |dz|² = e^{2t}(dt² + dθ²); with ω̂ = a/z² the length scale is 2a.
        let s = 2.0 * f64::sinh(t);
        assert!((ds2 * z.norm_sqr() - s * s).abs() < 1e-10);
    }
    let e = enneper();
    assert_eq!(e.metric_and_curvature(c(0.0, 0.0)), (1.0, 1.0, 4.0, -4.0));
    let plane = Maxface::new(gallery::plane(&tol()).unwrap(), tol()).unwrap();
    assert_eq!(plane.metric_and_curvature(c(1.0, 2.0)).2, 0.0);
    assert_eq!(e.metric_and_curvature(c(0.0, 1.0)).2, f64::INFINITY);
}

#[test]
fn lambda_examples() {
    let e = enneper();
    assert!((e.lambda_indicator(c(2.0, 0.0)) - 3.0 * f64::sqrt(41.0)).abs() < 1e-13);
    assert!(e.lambda_indicator(Complex64::from_polar(1.0, FRAC_PI_4)).abs() < 1e-15);
    let plane = Maxface::new(gallery::plane(&tol()).unwrap(), tol()).unwrap();
    assert_eq!(plane.lambda_indicator(c(0.2, 0.0)), -1.0);
}

#[test]
fn companion_round_trip_is_exact() {
    let data = gallery::catenoid(1.0, &tol()).unwrap();
    let comp = data.companion();
    assert_eq!(comp.g0(), &RationalMap::identity().scale(-I));
    let back = comp.maxface_data(&tol()).unwrap();
    assert_eq!(back.g(), data.g());
    assert_eq!(back.omega_hat(), data.omega_hat());
}

#[test]
fn companion_metric_is_the_lift_metric() {
    let cat = catenoid(1.3);
    let comp = cat.data().companion().prepare(tol()).unwrap();
    for z in [c(0.5, 0.5), c(-1.5, 0.2), c(0.1, -2.0)] {
        let a = cat.local(z).dsigma2_factor;
        let b = comp.metric_factor(z);
        assert!((a - b).abs() <= 1e-13 * a);
    }
}

#[test]
fn lopez_ros_examples() {
    let t = tol();
    let data = gallery::catenoid(1.0, &t).unwrap();
    let d2 = data.lopez_ros(2.0, &t).unwrap();
    assert_eq!(d2.g().eval_raw(c(0.25, 0.0)), c(0.5, 0.0));
    assert_eq!(data.lopez_ros(1.0, &t).unwrap(), data);
    assert_eq!(data.lopez_ros(0.0, &t), Err(Error::InvalidDeformation));
}

#[test]
fn validation_rejects_bad_data() {
    let t = tol();
    let z = RationalMap::identity();
    let one = RationalMap::constant(c(1.0, 0.0));
    let inf = vec![Extended::Infinity];
    let o = c(0.0, 0.0);

    let err = WeierstrassData::new(one.clone(), one.clone(), inf.clone(), o, "", &t);
    assert_eq!(err, Err(Error::UnitModulusConstantGauss));

    let err = WeierstrassData::new(z.clone(), one.clone(), vec![Extended::Infinity, Extended::Infinity], o, "", &t);
    assert!(matches!(err, Err(Error::DuplicatePuncture { .. })));

    // ω̂ = z: a branch point at 0.
    let err = WeierstrassData::new(z.clone(), z.clone(), inf.clone(), c(1.0, 0.0), "", &t);
    assert!(matches!(err, Err(Error::MetricCondition { .. })));

    // ω̂ = 1/z² without the puncture at 0.
    let omega = RationalMap::new(Polynomial::one(), Polynomial::monomial(c(1.0, 0.0), 2), t.zero).unwrap();
    let err = WeierstrassData::new(z.clone(), omega.clone(), inf.clone(), c(1.0, 0.0), "", &t);
    assert!(matches!(err, Err(Error::MetricCondition { .. })));

    let err = WeierstrassData::new(z.clone(), omega, vec![Extended::Finite(o), Extended::Infinity], o, "", &t);
    assert!(matches!(err, Err(Error::BasePointSingular { .. })));
}
