use maxface::description::{PunctureSpec, RationalSpec, SurfaceDescription};
use maxface::{InputError, parse_tolerances};
use maxface_core::gallery::{self, GalleryParams};
use maxface_core::Tolerances;
use proptest::prelude::*;

const CATENOID: &str = r#"{
  "label": "catenoid",
  "g": { "num": [[0, 0], [1, 0]], "den": [[1, 0]] },
  "omega_hat": { "num": [[1, 0]], "den": [[0, 0], [0, 0], [1, 0]] },
  "punctures": [[0, 0], "inf"],
  "base_point": [1, 0]
}"#;

fn field_of(err: InputError) -> String {
    match err {
        InputError::Field { field, .. } => field,
        other => panic!("expected a field error, got {other}"),
    }
}

#[test]
fn parses_the_catenoid() {
    let d = SurfaceDescription::parse(CATENOID).unwrap();
    assert_eq!(d.punctures, vec![PunctureSpec::Finite([0.0, 0.0]), PunctureSpec::Infinity("inf")]);
    let data = d.to_data(&Tolerances::default()).unwrap();
    let expect = gallery::catenoid(1.0, &Tolerances::default()).unwrap();
    assert_eq!(data.g(), expect.g());
    assert_eq!(data.omega_hat(), expect.omega_hat());
}

#[test]
fn non_rational_input_names_the_field() {
    let text = CATENOID.replace(r#"{ "num": [[0, 0], [1, 0]], "den": [[1, 0]] }"#, r#""exp(z)""#);
    let err = SurfaceDescription::parse(&text).unwrap_err();
    assert!(err.to_string().contains("exp(z)"), "{err}");
    assert_eq!(field_of(err), "g");

    let text = CATENOID.replace(r#"[[0, 0], "inf"]"#, r#"[[0, 0], "infinity"]"#);
    assert_eq!(field_of(SurfaceDescription::parse(&text).unwrap_err()), "punctures[1]");

    let text = CATENOID.replace(r#""den": [[1, 0]]"#, r#""den": [[1, "x"]]"#);
    assert_eq!(field_of(SurfaceDescription::parse(&text).unwrap_err()), "g.den[0]");

    let text = CATENOID.replace(r#""base_point": [1, 0]"#, r#""base_point": [1, 0], "extra": 1"#);
    assert_eq!(field_of(SurfaceDescription::parse(&text).unwrap_err()), "extra");

    assert!(matches!(SurfaceDescription::parse("{"), Err(InputError::Json(_))));
}

#[test]
fn invalid_data_is_rejected() {
    // The puncture at 0 is missing.
    let text = CATENOID.replace(r#"[[0, 0], "inf"]"#, r#"["inf"]"#);
    let d = SurfaceDescription::parse(&text).unwrap();
    assert!(matches!(d.to_data(&Tolerances::default()), Err(InputError::Data(_))));
    // Zero denominator.
    let text = CATENOID.replace(r#""den": [[1, 0]]"#, r#""den": [[0, 0]]"#);
    let d = SurfaceDescription::parse(&text).unwrap();
    assert_eq!(field_of(d.to_data(&Tolerances::default()).unwrap_err()), "g");
}

#[test]
fn gallery_data_round_trips() {
    let tol = Tolerances::default();
    for name in gallery::NAMES {
        let data = gallery::gallery(name, &GalleryParams::default(), &tol).unwrap();
        let text = SurfaceDescription::from_data(&data).to_json();
        let back = SurfaceDescription::parse(&text).unwrap().to_data(&tol).unwrap();
        assert_eq!(back, data, "{name}");
    }
}

#[test]
fn tolerance_overrides() {
    let tol = parse_tolerances("zero=1e-10, period=1e-6").unwrap();
    assert_eq!(tol.zero, 1e-10);
    assert_eq!(tol.period, 1e-6);
    assert_eq!(tol.eval, Tolerances::default().eval);
    assert_eq!(parse_tolerances("").unwrap(), Tolerances::default());
    assert!(parse_tolerances("zero").is_err());
    assert!(parse_tolerances("zero=-1").is_err());
    assert!(parse_tolerances("nope=1").is_err());
}

fn coeffs() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec(prop::array::uniform2(-1e3..1e3f64), 1..5)
}

fn puncture() -> impl Strategy<Value = PunctureSpec> {
    prop_oneof![
        prop::array::uniform2(-10.0..10.0f64).prop_map(PunctureSpec::Finite),
        Just(PunctureSpec::Infinity("inf")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn serialize_then_parse_is_identity(
        label in "[a-z ]{0,12}",
        g in (coeffs(), coeffs()),
        w in (coeffs(), coeffs()),
        punctures in prop::collection::vec(puncture(), 0..4),
        base_point in prop::array::uniform2(-10.0..10.0f64),
    ) {
        let d = SurfaceDescription {
            label,
            g: RationalSpec { num: g.0, den: g.1 },
            omega_hat: RationalSpec { num: w.0, den: w.1 },
            punctures,
            base_point,
        };
        let back = SurfaceDescription::parse(&d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }
}
