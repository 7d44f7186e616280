extern crate std;

use alloc::vec;
use core::f64::consts::PI;

use super::*;
use crate::complex::{c, Polynomial};
use crate::gallery::{self, GalleryParams};
use crate::tol::Tolerances;
use crate::weierstrass::WeierstrassData;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn surface(name: &str, params: GalleryParams) -> Maxface {
    Maxface::new(gallery::gallery(name, &params, &tol()).unwrap(), tol()).unwrap()
}

fn z_pow(k: usize) -> Polynomial {
    Polynomial::monomial(c(1.0, 0.0), k)
}

fn modified_catenoid(a: f64) -> Maxface {
    let t = tol();
    let omega = RationalMap::new(Polynomial::constant(c(0.0, a)), z_pow(2), t.zero).unwrap();
    let data = WeierstrassData::new(
        RationalMap::identity(),
        omega,
        vec![Extended::Finite(c(0.0, 0.0)), Extended::Infinity],
        c(1.0, 0.0),
        "modified catenoid",
        &t,
    )
    .unwrap();
    Maxface::new(data, t).unwrap()
}

#[test]
fn catenoid_periods() {
    let m = surface("catenoid", GalleryParams { a: 1.5, ..Default::default() });
    let r = compute_periods(&m).unwrap();
    assert!(r.passes);
    assert!(r.max_re_violation < 1e-10);
    assert!(r.max_discrepancy < 1e-9);
    let at0 = &r.punctures[0];
    assert_eq!(at0.puncture, Extended::Finite(c(0.0, 0.0)));
    assert!((at0.periods[0] - c(0.0, 2.0 * PI * -3.0)).norm() < 1e-12);
    assert_eq!(at0.loop_radius, 0.5);
}

#[test]
fn modified_catenoid_fails_by_four_pi_a() {
    for a in [1.0, 0.5, 2.0] {
        let r = compute_periods(&modified_catenoid(a)).unwrap();
        assert!(!r.passes);
        assert!((r.max_re_violation - 4.0 * PI * a).abs() < 1e-8);
        assert!(r.max_discrepancy < 1e-9);
    }
    assert!(matches!(
        classify_completeness(&modified_catenoid(1.0)),
        Err(Error::PeriodConditionFailed { .. })
    ));
}

#[test]
fn periods_of_every_gallery_surface() {
    for name in gallery::NAMES {
        let m = surface(name, GalleryParams::default());
        let r = compute_periods(&m).unwrap();
        assert!(r.passes, "{name}: {}", r.max_re_violation);
        assert!(r.max_discrepancy < 1e-9, "{name}: {}", r.max_discrepancy);
    }
    for n in 2..=5 {
        let m = surface("jorge-meeks-companion", GalleryParams { n, ..Default::default() });
        assert!(compute_periods(&m).unwrap().passes);
    }
}

#[test]
fn degrees() {
    assert_eq!(gauss_degree(&surface("catenoid", GalleryParams::default())), 1);
    let jm = surface("jorge-meeks-companion", GalleryParams { n: 4, ..Default::default() });
    assert_eq!(gauss_degree(&jm), 3);
    let g = RationalMap::new(
        Polynomial::from_real(&[1.0, 0.0, 1.0]),
        Polynomial::from_real(&[-1.0, 0.0, 1.0]),
        1e-12,
    )
    .unwrap();
    assert_eq!(g.degree(), 2);
    assert_eq!(gauss_degree(&surface("plane", GalleryParams::default())), 0);
}

#[test]
fn catenoid_ends() {
    let a = 1.5;
    let m = surface("catenoid", GalleryParams { a, ..Default::default() });
    let zero = analyze_end(&m, Extended::Finite(c(0.0, 0.0))).unwrap();
    assert_eq!(zero.g_modulus, 0.0);
    assert_eq!(zero.phi_pole_order, 2);
    assert!(zero.embedded && zero.end_complete && zero.df_order_ok);
    assert_eq!(zero.end_type, EndType::Catenoidal);
    let k = zero.coefficients.unwrap();
    assert!((k.a - a).abs() < 1e-12 && (k.c + 2.0 * a).abs() < 1e-12);
    assert!(!k.normalization.reflected && k.normalization.boost.is_none());

    let inf = analyze_end(&m, Extended::Infinity).unwrap();
    assert_eq!(inf.g_modulus, f64::INFINITY);
    assert_eq!(inf.phi_pole_order, 2);
    assert!(inf.embedded);
    let k = inf.coefficients.unwrap();
    assert!((k.a - a).abs() < 1e-12 && (k.c - 2.0 * a).abs() < 1e-12);
    assert!(k.normalization.reflected);

    assert!(matches!(
        analyze_end(&m, Extended::Finite(c(1.0, 0.0))),
        Err(Error::PunctureNotListed { .. })
    ));
}

#[test]
fn enneper_end_is_not_embedded() {
    let m = surface("enneper", GalleryParams::default());
    let e = analyze_end(&m, Extended::Infinity).unwrap();
    assert_eq!(e.phi_pole_order, 4);
    assert!(!e.embedded && e.df_order_ok);
    assert_eq!(e.end_type, EndType::HigherOrder);
}

#[test]
fn companion_ends_sit_on_the_singular_set() {
    for n in 2..=4 {
        let m = surface("jorge-meeks-companion", GalleryParams { n, ..Default::default() });
        match classify_completeness(&m).unwrap() {
            Completeness::WeaklyCompleteOnly(bad) => assert_eq!(bad.len(), n as usize),
            other => panic!("{other:?}"),
        }
        for &p in m.data().punctures() {
            let e = analyze_end(&m, p).unwrap();
            assert!((e.g_modulus - 1.0).abs() < 1e-10);
            assert_eq!(e.end_type, EndType::SimpleCandidate);
        }
    }
}

#[test]
fn order_one_end_is_flagged() {
    let t = tol();
    let omega = RationalMap::new(Polynomial::one(), z_pow(1), t.zero).unwrap();
    let data = WeierstrassData::new(
        RationalMap::identity(),
        omega,
        vec![Extended::Finite(c(0.0, 0.0)), Extended::Infinity],
        c(1.0, 0.0),
        "order one",
        &t,
    )
    .unwrap();
    let m = Maxface::new(data, t).unwrap();
    let e = analyze_end(&m, Extended::Finite(c(0.0, 0.0))).unwrap();
    assert_eq!(e.phi_pole_order, 1);
    assert!(!e.df_order_ok);
    assert_eq!(e.end_type, EndType::LowOrder);
    assert!(!compute_periods(&m).unwrap().passes);
    let report = osserman_report(&m).unwrap();
    assert!(report.completeness.is_none() && !report.osserman_applicable);
}

#[test]
fn boosted_end_coefficients_match_the_centred_catenoid() {
    // The catenoid with g moved by a boost: g = (z + s)/(s z + 1), s real.
    // Same surface up to an isometry, so a and |c| are unchanged.
    let t = tol();
    let s = 0.4;
    let a = 1.0;
    let g = RationalMap::new(Polynomial::from_real(&[s, 1.0]), Polynomial::from_real(&[1.0, s]), t.zero).unwrap();
    let factor = Polynomial::from_real(&[1.0, s]);
    let k = 1.0 - s * s;
    let omega = RationalMap::new(
        factor.pow(2).scale(c(a / k, 0.0)),
        z_pow(2),
        t.zero,
    )
    .unwrap();
    let punctures = vec![Extended::Finite(c(0.0, 0.0)), Extended::Infinity];
    let data = WeierstrassData::new(g, omega, punctures, c(1.0, 0.0), "boosted", &t).unwrap();
    let m = Maxface::new(data, t).unwrap();
    let e = analyze_end(&m, Extended::Finite(c(0.0, 0.0))).unwrap();
    assert!((e.g_modulus - s).abs() < 1e-14);
    let coef = e.coefficients.unwrap();
    assert!(coef.normalization.boost.is_some());
    assert!((coef.a - a).abs() < 1e-10, "{coef:?}");
    assert!((coef.c.abs() - 2.0 * a).abs() < 1e-10, "{coef:?}");
}

#[test]
fn osserman_examples() {
    let cat = osserman_report(&surface("catenoid", GalleryParams::default())).unwrap();
    assert_eq!((cat.osserman_lhs, cat.osserman_rhs), (2, 2));
    assert!(cat.equality && cat.all_ends_embedded);
    assert_eq!(cat.completeness, Some(Completeness::Complete));
    assert_eq!(cat.euler_punctured, 0);

    let enn = osserman_report(&surface("enneper", GalleryParams::default())).unwrap();
    assert_eq!((enn.osserman_lhs, enn.osserman_rhs, enn.euler_punctured), (2, 0, 1));
    assert!(!enn.equality && !enn.all_ends_embedded);

    let lr = osserman_report(&surface("lopez-ros-catenoid", GalleryParams { lambda: 2.0, ..Default::default() })).unwrap();
    assert!(lr.equality);
    assert_eq!(lr.completeness, Some(Completeness::Complete));
}

#[test]
fn lopez_ros_catenoid_is_complete() {
    let m = surface("lopez-ros-catenoid", GalleryParams { lambda: 3.0, ..Default::default() });
    assert_eq!(classify_completeness(&m).unwrap(), Completeness::Complete);
}

#[test]
fn total_curvature_counts_the_degree() {
    for (name, params, deg) in [
        ("catenoid", GalleryParams::default(), 1.0),
        ("enneper", GalleryParams::default(), 1.0),
        ("jorge-meeks-companion", GalleryParams { n: 3, ..Default::default() }, 2.0),
        ("plane", GalleryParams::default(), 0.0),
    ] {
        let k = total_curvature_numeric(&surface(name, params)).unwrap();
        assert!((k - 4.0 * PI * deg).abs() <= 1e-6 * (1.0 + k), "{name}: {k}");
    }
}
