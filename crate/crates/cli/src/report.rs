//! JSON shapes for command output. Complex numbers are `[re, im]`, the
//! point at infinity is `"inf"`.

use std::f64::consts::PI;

use maxface_core::global::{Completeness, EndReport, EndType, GlobalReport, PuncturePeriod};
use maxface_core::singular::{CurveEnd, Region, SingularCurve, SingularKind, SingularSamplePoint, Witness};
use maxface_core::{Complex64, Extended};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Point {
    Finite([f64; 2]),
    Infinity(&'static str),
}

impl From<Extended> for Point {
    fn from(p: Extended) -> Self {
        match p {
            Extended::Finite(z) => Point::Finite(pair(z)),
            Extended::Infinity => Point::Infinity("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Modulus {
    Finite(f64),
    Infinity(&'static str),
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Serialize)]
pub struct PeriodJson {
    pub puncture: Point,
    pub periods: [[f64; 2]; 3],
    pub quadrature: [[f64; 2]; 3],
    pub discrepancy: f64,
    pub loop_radius: f64,
}

impl From<&PuncturePeriod> for PeriodJson {
    fn from(p: &PuncturePeriod) -> Self {
        Self {
            puncture: p.puncture.into(),
            periods: p.periods.map(pair),
            quadrature: p.quadrature.map(pair),
            discrepancy: p.discrepancy,
            loop_radius: p.loop_radius,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PeriodsJson {
    pub passes: bool,
    pub max_re_violation: f64,
    pub max_discrepancy: f64,
    pub punctures: Vec<PeriodJson>,
}

#[derive(Debug, Serialize)]
pub struct CoefficientsJson {
    pub a: f64,
    pub c: f64,
    pub reflected: bool,
    pub boost: Option<[[f64; 2]; 2]>,
}

#[derive(Debug, Serialize)]
pub struct EndJson {
    pub puncture: Point,
    pub g_modulus: Modulus,
    pub end_complete: bool,
    pub phi_pole_order: i32,
    pub df_order_ok: bool,
    pub embedded: bool,
    pub end_type: &'static str,
    pub coefficients: Option<CoefficientsJson>,
}

fn end_type_name(t: EndType) -> &'static str {
    match t {
        EndType::Catenoidal => "catenoidal",
        EndType::Planar => "planar",
        EndType::HigherOrder => "higher-order",
        EndType::SimpleCandidate => "simple-candidate",
        EndType::LowOrder => "low-order",
    }
}

impl From<&EndReport> for EndJson {
    fn from(e: &EndReport) -> Self {
        Self {
            puncture: e.puncture.into(),
            g_modulus: if e.g_modulus.is_finite() {
                Modulus::Finite(e.g_modulus)
            } else {
                Modulus::Infinity("inf")
            },
            end_complete: e.end_complete,
            phi_pole_order: e.phi_pole_order,
            df_order_ok: e.df_order_ok,
            embedded: e.embedded,
            end_type: end_type_name(e.end_type),
            coefficients: e.coefficients.map(|c| CoefficientsJson {
                a: c.a,
                c: c.c,
                reflected: c.normalization.reflected,
                boost: c.normalization.boost.map(|(a, b)| [pair(a), pair(b)]),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CompletenessJson {
    pub kind: &'static str,
    /// Ends with |g| = 1.
    pub weak_ends: Vec<Point>,
}

#[derive(Debug, Serialize)]
pub struct OssermanJson {
    pub applicable: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub equality: bool,
    pub all_ends_embedded: bool,
}

#[derive(Debug, Serialize)]
pub struct CurvatureJson {
    pub numeric: f64,
    pub over_4pi: f64,
    pub deg_g: usize,
}

#[derive(Debug, Serialize)]
pub struct ChecksJson {
    pub periods: bool,
    pub complete: bool,
    pub osserman_equality: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub label: String,
    pub periods: PeriodsJson,
    pub ends: Vec<EndJson>,
    pub deg_g: usize,
    pub euler_characteristic: i64,
    /// Null when the period condition fails.
    pub completeness: Option<CompletenessJson>,
    pub osserman: OssermanJson,
    pub total_curvature: CurvatureJson,
    pub lopez_ros_excluded: Vec<f64>,
    pub checks: ChecksJson,
}

impl VerifyJson {
    pub fn new(r: &GlobalReport, lopez_ros_excluded: Vec<f64>) -> Self {
        let completeness = r.completeness.as_ref().map(|c| match c {
            Completeness::Complete => CompletenessJson {
                kind: "Complete",
                weak_ends: Vec::new(),
            },
            Completeness::WeaklyCompleteOnly(ends) => CompletenessJson {
                kind: "WeaklyCompleteOnly",
                weak_ends: ends.iter().map(|&p| p.into()).collect(),
            },
        });
        Self {
            label: r.label.clone(),
            periods: PeriodsJson {
                passes: r.period.passes,
                max_re_violation: r.period.max_re_violation,
                max_discrepancy: r.period.max_discrepancy,
                punctures: r.period.punctures.iter().map(Into::into).collect(),
            },
            ends: r.ends.iter().map(Into::into).collect(),
            deg_g: r.deg_g,
            euler_characteristic: r.euler_punctured,
            completeness,
            osserman: OssermanJson {
                applicable: r.osserman_applicable,
                lhs: r.osserman_lhs,
                rhs: r.osserman_rhs,
                equality: r.equality,
                all_ends_embedded: r.all_ends_embedded,
            },
            total_curvature: CurvatureJson {
                numeric: r.total_curvature_numeric,
                over_4pi: r.total_curvature_numeric / (4.0 * PI),
                deg_g: r.deg_g,
            },
            lopez_ros_excluded,
            checks: ChecksJson {
                periods: r.period.passes,
                complete: matches!(r.completeness, Some(Completeness::Complete)),
                osserman_equality: r.osserman_applicable && r.equality,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub alpha: [f64; 2],
    pub re_alpha: f64,
    pub im_alpha: f64,
    pub swallowtail_second: f64,
    pub dg_abs: f64,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            alpha: pair(w.alpha),
            re_alpha: w.re_alpha,
            im_alpha: w.im_alpha,
            swallowtail_second: w.swallowtail_second,
            dg_abs: w.dg_abs,
        }
    }
}

pub fn kind_name(k: SingularKind) -> &'static str {
    match k {
        SingularKind::CuspidalEdge => "cuspidal-edge",
        SingularKind::Swallowtail => "swallowtail",
        SingularKind::NotAFront => "not-a-front",
        SingularKind::DegenerateGaussMap => "degenerate-gauss-map",
        SingularKind::Borderline { .. } => "borderline",
    }
}

#[derive(Debug, Serialize)]
pub struct SampleJson {
    pub z: [f64; 2],
    pub kind: &'static str,
    pub tangent: [f64; 2],
    pub null_direction: [f64; 2],
    pub witness: WitnessJson,
}

impl From<&SingularSamplePoint> for SampleJson {
    fn from(s: &SingularSamplePoint) -> Self {
        Self {
            z: pair(s.z),
            kind: kind_name(s.class.kind),
            tangent: pair(s.tangent),
            null_direction: pair(s.null_dir),
            witness: (&s.class.witness).into(),
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct KindCounts {
    pub cuspidal_edge: usize,
    pub swallowtail: usize,
    pub not_a_front: usize,
    pub degenerate_gauss_map: usize,
    pub borderline: usize,
}

impl KindCounts {
    fn add(&mut self, k: SingularKind) {
        let slot = match k {
            SingularKind::CuspidalEdge => &mut self.cuspidal_edge,
            SingularKind::Swallowtail => &mut self.swallowtail,
            SingularKind::NotAFront => &mut self.not_a_front,
            SingularKind::DegenerateGaussMap => &mut self.degenerate_gauss_map,
            SingularKind::Borderline { .. } => &mut self.borderline,
        };
        *slot += 1;
    }
}

fn end_name(e: &CurveEnd) -> serde_json::Value {
    match e {
        CurveEnd::Closed => "closed".into(),
        CurveEnd::RegionExit => "region-exit".into(),
        CurveEnd::DegenerateGaussMap => "degenerate-gauss-map".into(),
        CurveEnd::Puncture(p) => serde_json::json!({ "puncture": pair(*p) }),
    }
}

#[derive(Debug, Serialize)]
pub struct CurveJson {
    pub closed: bool,
    pub ends: [serde_json::Value; 2],
    pub sample_count: usize,
    pub kinds: KindCounts,
    pub swallowtails: Vec<[f64; 2]>,
    pub not_a_front: Vec<[f64; 2]>,
    pub borderline: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleJson>>,
}

impl CurveJson {
    pub fn new(c: &SingularCurve, with_samples: bool) -> Self {
        let mut kinds = KindCounts::default();
        c.samples.iter().for_each(|s| kinds.add(s.class.kind));
        Self {
            closed: c.closed,
            ends: [end_name(&c.ends[0]), end_name(&c.ends[1])],
            sample_count: c.samples.len(),
            kinds,
            swallowtails: c.swallowtail_points.iter().copied().map(pair).collect(),
            not_a_front: c.not_a_front_points.iter().copied().map(pair).collect(),
            borderline: c.borderline_points.iter().copied().map(pair).collect(),
            samples: with_samples.then(|| c.samples.iter().map(Into::into).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum RegionJson {
    Annulus { center: [f64; 2], r_min: f64, r_max: f64 },
    Box { min: [f64; 2], max: [f64; 2] },
    Inverted { inner: Box<RegionJson> },
}

impl From<&Region> for RegionJson {
    fn from(r: &Region) -> Self {
        match r {
            Region::Annulus { center, r_min, r_max } => RegionJson::Annulus {
                center: pair(*center),
                r_min: *r_min,
                r_max: *r_max,
            },
            Region::Box { min, max } => RegionJson::Box {
                min: pair(*min),
                max: pair(*max),
            },
            Region::Inverted(inner) => RegionJson::Inverted {
                inner: Box::new(inner.as_ref().into()),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SingularJson {
    pub label: String,
    pub region: RegionJson,
    pub curve_count: usize,
    pub totals: KindCounts,
    pub swallowtails: Vec<[f64; 2]>,
    pub not_a_front: Vec<[f64; 2]>,
    pub curves: Vec<CurveJson>,
}

impl SingularJson {
    pub fn new(label: &str, region: &Region, curves: &[SingularCurve], with_samples: bool) -> Self {
        let curves: Vec<CurveJson> = curves.iter().map(|c| CurveJson::new(c, with_samples)).collect();
        let mut totals = KindCounts::default();
        for c in &curves {
            totals.cuspidal_edge += c.kinds.cuspidal_edge;
            totals.swallowtail += c.kinds.swallowtail;
            totals.not_a_front += c.kinds.not_a_front;
            totals.degenerate_gauss_map += c.kinds.degenerate_gauss_map;
            totals.borderline += c.kinds.borderline;
        }
        Self {
            label: label.to_string(),
            region: region.into(),
            curve_count: curves.len(),
            totals,
            swallowtails: curves.iter().flat_map(|c| c.swallowtails.iter().copied()).collect(),
            not_a_front: curves.iter().flat_map(|c| c.not_a_front.iter().copied()).collect(),
            curves,
        }
    }
}
