extern crate std;

use alloc::vec::Vec;

use super::*;
use crate::complex::{c, I};
use crate::gallery::{self, GalleryParams};
use crate::tol::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn surface(name: &str) -> Maxface {
    Maxface::new(gallery::gallery(name, &GalleryParams::default(), &tol()).unwrap(), tol()).unwrap()
}

fn catenoid_polar() -> GridSpec {
    GridSpec::Polar {
        center: c(0.0, 0.0),
        r_min: 0.3,
        r_max: 3.0,
        n_r: 40,
        n_theta: 120,
    }
}

fn enneper_rect(n: usize) -> GridSpec {
    GridSpec::Rect {
        min: c(-1.5, -1.5),
        max: c(1.5, 1.5),
        n_u: n,
        n_v: n,
    }
}

#[test]
fn catenoid_grid_has_a_ring_on_the_singular_circle() {
    let m = surface("catenoid");
    let grid = build_chart_grid(&m, catenoid_polar(), Chart::Identity).unwrap();
    assert_eq!((grid.rows, grid.cols), (40, 120));
    assert_eq!(grid.snapped_radii.len(), 1);
    assert!((grid.snapped_radii[0] - 1.0).abs() < 1e-12);
    assert!(grid.nodes.iter().any(|z| (z.norm() - 1.0).abs() < 1e-12));
    assert!(grid.mask.iter().all(|&ok| ok));
}

#[test]
fn enneper_lattice_is_unmasked() {
    let grid = build_chart_grid(&surface("enneper"), enneper_rect(80), Chart::Identity).unwrap();
    assert_eq!(grid.nodes.len(), 6400);
    assert!(grid.mask.iter().all(|&ok| ok));
    assert!(grid.snapped_radii.is_empty());
}

#[test]
fn lattice_over_a_puncture_masks_it() {
    let m = surface("catenoid");
    let spec = GridSpec::Rect {
        min: c(-1.0, -1.0),
        max: c(1.0, 1.0),
        n_u: 21,
        n_v: 21,
    };
    let grid = build_chart_grid(&m, spec, Chart::Identity).unwrap();
    let masked: Vec<Complex64> = grid.nodes.iter().zip(&grid.mask).filter(|(_, &ok)| !ok).map(|(z, _)| *z).collect();
    assert_eq!(masked.len(), 1);
    assert!(masked[0].norm() < 1e-15);
    let mesh = generate_mesh(&m, &grid).unwrap();
    // The four cells around 0 lose the masked corner and keep one triangle each.
    assert_eq!(mesh.faces.len(), 2 * 20 * 20 - 4);
}

#[test]
fn fully_masked_grid_is_rejected() {
    let m = surface("catenoid");
    let spec = GridSpec::Rect {
        min: c(-1e-5, -1e-5),
        max: c(1e-5, 1e-5),
        n_u: 3,
        n_v: 3,
    };
    assert_eq!(build_chart_grid(&m, spec, Chart::Identity), Err(Error::EmptyGrid));
}

#[test]
fn catenoid_mesh_collapses_the_singular_ring() {
    let m = surface("catenoid");
    let grid = build_chart_grid(&m, catenoid_polar(), Chart::Identity).unwrap();
    let mesh = generate_mesh(&m, &grid).unwrap();
    let ring: Vec<&MeshVertex> = mesh.vertices.iter().filter(|v| v.singular).collect();
    assert!(ring.len() >= 120);
    for v in &ring {
        assert!(v.position.iter().all(|x| x.abs() < 1e-8), "{:?}", v.position);
    }
    // Seam faces close the annulus since the real periods vanish.
    assert_eq!(mesh.faces.len(), 2 * 39 * 120);
    let curves: Vec<&Polyline> = mesh.polylines.iter().filter(|p| p.kind == PolylineKind::SingularCurve).collect();
    assert_eq!(curves.len(), 1);
    assert_eq!(curves[0].vertices.first(), curves[0].vertices.last());
}

#[test]
fn enneper_mesh_matches_the_closed_form() {
    let m = surface("enneper");
    let grid = build_chart_grid(&m, enneper_rect(40), Chart::Identity).unwrap();
    let mesh = generate_mesh(&m, &grid).unwrap();
    for v in &mesh.vertices {
        let z = v.z.finite().unwrap();
        let z3 = z * z * z;
        let expect = [(-z * z).re, (z + z3 / 3.0).re, (I * (z - z3 / 3.0)).re];
        for k in 0..3 {
            assert!((v.position[k] - expect[k]).abs() < 1e-8);
        }
    }
    let markers = mesh.polylines.iter().find(|p| p.kind == PolylineKind::SwallowtailMarkers).unwrap();
    assert_eq!(markers.vertices.len(), 4);
}

#[test]
fn plane_mesh_is_flat() {
    let m = surface("plane");
    let mesh = generate_mesh(&m, &build_chart_grid(&m, enneper_rect(11), Chart::Identity).unwrap()).unwrap();
    assert!(mesh.vertices.iter().all(|v| v.position[0].abs() < 1e-10));
    assert!(mesh.polylines.is_empty());
}

#[test]
fn cumulative_values_match_direct_integration() {
    let m = surface("catenoid");
    let grid = build_chart_grid(&m, catenoid_polar(), Chart::Identity).unwrap();
    let mesh = generate_mesh(&m, &grid).unwrap();
    for k in (0..40 * 120).step_by(239).take(20) {
        let v = &mesh.vertices[k];
        let direct = m.evaluate_immersion(v.z.finite().unwrap(), None).unwrap();
        for i in 0..3 {
            assert!((v.position[i] - direct[i]).abs() < 1e-8);
        }
    }
}

#[test]
fn inversion_chart_reaches_the_far_end() {
    // Enneper near ∞, in w = 1/z.
    let m = surface("enneper");
    let spec = GridSpec::Polar {
        center: c(0.0, 0.0),
        r_min: 0.25,
        r_max: 0.8,
        n_r: 12,
        n_theta: 48,
    };
    let grid = build_chart_grid(&m, spec, Chart::Inversion).unwrap();
    let mesh = generate_mesh(&m, &grid).unwrap();
    for v in mesh.vertices.iter().take(12 * 48).step_by(37) {
        let z = v.z.finite().unwrap();
        let direct = m.evaluate_immersion(z, None).unwrap();
        for i in 0..3 {
            assert!((v.position[i] - direct[i]).abs() < 1e-8 * (1.0 + direct[i].abs()));
        }
    }
    assert_eq!(mesh.faces.len(), 2 * 11 * 48);
}

#[test]
fn companion_mesh_is_the_helicoid() {
    let a = 1.0;
    let m = surface("catenoid");
    let grid = build_chart_grid(&m, catenoid_polar(), Chart::Identity).unwrap();
    let companion = generate_companion_mesh(&m, &grid).unwrap();
    let helicoid = gallery::helicoid(a, &tol()).unwrap().prepare(tol()).unwrap();
    let direct = generate_minimal_mesh(&helicoid, &grid).unwrap();
    assert_eq!(companion.vertices.len(), direct.vertices.len());
    for (u, v) in companion.vertices.iter().zip(&direct.vertices) {
        for k in 0..3 {
            assert!((u.position[k] - v.position[k]).abs() < 1e-8);
        }
        assert!((u.ds2_factor - v.ds2_factor).abs() <= 1e-12 * u.ds2_factor);
    }
    // The helicoid's height has a period around 0, so the seam stays open.
    assert_eq!(companion.faces.len(), 2 * 39 * 119);
    assert_eq!(companion.faces, direct.faces);
}
