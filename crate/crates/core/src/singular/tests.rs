extern crate std;

use core::f64::consts::{FRAC_PI_4, FRAC_PI_6};

use super::*;
use crate::complex::c;
use crate::gallery;
use crate::tol::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn surface(name: &str) -> Maxface {
    let data = gallery::gallery(name, &gallery::GalleryParams::default(), &tol()).unwrap();
    Maxface::new(data, tol()).unwrap()
}

fn unit_box(r: f64) -> Region {
    Region::Box {
        min: c(-r, -r),
        max: c(r, r),
    }
}

#[test]
fn enneper_classification() {
    let e = surface("enneper");
    let k = |z| classify_singular_point(&e, z).unwrap().kind;
    assert_eq!(k(Complex64::from_polar(1.0, FRAC_PI_6)), SingularKind::CuspidalEdge);
    assert_eq!(k(c(1.0, 0.0)), SingularKind::Swallowtail);
    assert_eq!(k(c(0.0, -1.0)), SingularKind::Swallowtail);
    assert_eq!(k(Complex64::from_polar(1.0, FRAC_PI_4)), SingularKind::NotAFront);
    let w = classify_singular_point(&e, c(1.0, 0.0)).unwrap().witness;
    assert_eq!(w.alpha, c(1.0, 0.0));
    assert!(matches!(
        classify_singular_point(&e, c(0.5, 0.0)),
        Err(Error::NotSingular { .. })
    ));
}

#[test]
fn catenoid_is_borderline_everywhere() {
    let a = 1.7;
    let m = Maxface::new(gallery::catenoid(a, &tol()).unwrap(), tol()).unwrap();
    for theta in [0.0, 0.4, 2.0, -2.8] {
        let cls = classify_singular_point(&m, Complex64::from_polar(1.0, theta)).unwrap();
        assert!(matches!(cls.kind, SingularKind::Borderline { .. }), "{cls:?}");
        assert!((cls.witness.alpha - c(1.0 / a, 0.0)).norm() < 1e-14);
        assert!(cls.witness.swallowtail_second.abs() < 1e-14);
    }
}

#[test]
fn null_direction_examples() {
    let e = surface("enneper");
    // g ω̂ = z, so η = i/z.
    let eta = null_direction(&e, Complex64::from_polar(1.0, 0.3)).unwrap();
    assert!((eta - I * Complex64::from_polar(1.0, -0.3)).norm() < 1e-15);
}

#[test]
fn null_direction_undefined_where_omega_vanishes() {
    // g = 1/z, ω̂ = z² vanishes at 0.
    let t = tol();
    let g = crate::RationalMap::new(
        crate::Polynomial::one(),
        crate::Polynomial::monomial(c(1.0, 0.0), 1),
        t.zero,
    )
    .unwrap();
    let omega = crate::RationalMap::polynomial(crate::Polynomial::monomial(c(1.0, 0.0), 2));
    let data = crate::WeierstrassData::new(g, omega, alloc::vec![crate::Extended::Infinity], c(0.5, 0.0), "", &t).unwrap();
    let m = Maxface::new(data, t).unwrap();
    assert!(matches!(null_direction(&m, c(0.0, 0.0)), Err(Error::NullDirectionUndefined { .. })));
}

#[test]
fn traces_the_catenoid_circle() {
    let m = surface("catenoid");
    let region = Region::Annulus {
        center: c(0.0, 0.0),
        r_min: 0.5,
        r_max: 2.0,
    };
    let curves = trace_all(&m, &region).unwrap();
    assert_eq!(curves.len(), 1);
    let curve = &curves[0];
    assert!(curve.closed);
    for s in &curve.samples {
        assert!(m.level(s.z).abs() < 1e-10);
        assert!((s.z.norm() - 1.0).abs() < 1e-10);
    }
    assert!(curve.swallowtail_points.is_empty());
    assert!(curve.not_a_front_points.is_empty());
    assert!(curve.borderline_points.is_empty());
}

#[test]
fn enneper_special_points() {
    let m = surface("enneper");
    let curves = trace_all(&m, &unit_box(2.0)).unwrap();
    assert_eq!(curves.len(), 1);
    let curve = &curves[0];
    assert!(curve.closed);
    assert!(curve.samples.iter().all(|s| m.level(s.z).abs() < 1e-10));
    let near = |pts: &[Complex64], z: Complex64| pts.iter().any(|&p| (p - z).norm() < 1e-8);
    let st = &curve.swallowtail_points;
    assert_eq!(st.len(), 4, "{st:?}");
    for z in [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)] {
        assert!(near(st, z), "{z} missing from {st:?}");
    }
    let naf = &curve.not_a_front_points;
    assert_eq!(naf.len(), 4);
    for k in [1.0, 3.0, 5.0, 7.0] {
        let z = Complex64::from_polar(1.0, k * FRAC_PI_4);
        assert!(near(naf, z), "{z} missing from {naf:?}");
    }
}

#[test]
fn lopez_ros_enneper_swallowtails_move_to_radius_one_over_lambda() {
    let lambda = 2.0;
    let data = gallery::enneper(&tol()).unwrap().lopez_ros(lambda, &tol()).unwrap();
    let m = Maxface::new(data, tol()).unwrap();
    let curves = trace_all(&m, &default_region(&m)).unwrap();
    assert_eq!(curves.len(), 1);
    let st = &curves[0].swallowtail_points;
    assert_eq!(st.len(), 4);
    for z in st {
        assert!((z.norm() - 1.0 / lambda).abs() < 1e-8);
    }
}

#[test]
fn plane_has_no_singular_set() {
    let m = surface("plane");
    assert!(singular_seeds(&m, &unit_box(3.0)).unwrap().is_empty());
}

#[test]
fn seeds_off_the_level_set_are_rejected() {
    let m = surface("enneper");
    assert!(matches!(
        trace_singular_curve(&m, c(0.9, 0.0), &unit_box(2.0)),
        Err(Error::BadSeed { .. })
    ));
}

#[test]
fn open_curves_stop_at_the_region_boundary() {
    let m = surface("enneper");
    let region = Region::Box {
        min: c(0.5, -2.0),
        max: c(2.0, 2.0),
    };
    let curve = trace_singular_curve(&m, c(1.0, 0.0), &region).unwrap();
    assert!(!curve.closed);
    assert_eq!(curve.ends, [CurveEnd::RegionExit; 2]);
    assert_eq!(curve.swallowtail_points.len(), 1);
}

#[test]
fn companion_curves_run_into_the_punctures() {
    let m = surface("jorge-meeks-companion");
    let curves = trace_all(&m, &default_region(&m)).unwrap();
    assert!(!curves.is_empty());
    for curve in &curves {
        assert!(curve.ends.iter().all(|e| matches!(e, CurveEnd::Puncture(_))), "{:?}", curve.ends);
        assert!(curve.samples.iter().all(|s| (s.z.norm() - 1.0).abs() < 1e-9));
    }
}

#[test]
fn kernel_of_df_is_the_null_direction() {
    // Re α is the determinant between the tangent-line normal conj(g′/g)
    // and η, and df(η) = Re(Φ η) vanishes on the singular set.
    let m = surface("enneper");
    for theta in [0.1, 0.7, 1.3, 2.2, -0.4] {
        let z = Complex64::from_polar(1.0, theta);
        let eta = null_direction(&m, z).unwrap();
        let g = m.data().g().eval_raw(z);
        let mu = (m.dg().eval_raw(z) / g).conj();
        let det = (mu.conj() * eta).im;
        let alpha = m.alpha().eval_raw(z);
        assert!((det - alpha.re).abs() < 1e-13);
        let phi = m.phi_at(z);
        for k in 0..3 {
            assert!((phi[k] * eta).re.abs() < 1e-13);
        }
    }
}
