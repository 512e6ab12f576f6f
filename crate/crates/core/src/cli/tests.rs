use super::*;
use crate::manifold::{library, library_names};
use crate::tqft::Amplitude;
use num_rational::Ratio;

fn opts(q: usize, coeff: &str) -> Options {
    Options { coeff: crate::exactalg::FinAbGroup::parse(coeff).unwrap(), q, ..Options::default() }
}

#[test]
fn library_manifolds_round_trip() {
    for name in library_names() {
        let m = library(name).unwrap();
        let file = ManifoldFile::from_manifold(&m);
        let back = ManifoldFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let m2 = back.to_manifold().unwrap();
        assert_eq!(m2.complex.counts(), m.complex.counts(), "{name}");
        assert_eq!(m2.oriented_facets(), m.oriented_facets(), "{name}");
    }
}

#[test]
fn invalid_files_are_rejected() {
    let mut file = ManifoldFile::from_manifold(&library("annulus").unwrap());
    file.boundary.pop();
    assert!(matches!(file.to_manifold(), Err(crate::Error::Validation(_))));
    let mut file = ManifoldFile::from_manifold(&library("torus2").unwrap());
    file.orientation[0] = -file.orientation[0];
    assert!(file.to_manifold().is_err());
    file.orientation.pop();
    assert!(matches!(file.to_manifold(), Err(crate::Error::Validation(_))));
    assert!(matches!(ManifoldFile::from_json("{\"dimension\": 2}"), Err(crate::Error::Parse(_))));
}

#[test]
fn files_load_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disk.json");
    let mut file = ManifoldFile::from_manifold(&library("disk").unwrap());
    file.skeleton = Some(SkeletonSpec { q: 0, source: SkeletonSource::Dual });
    file.save(&path).unwrap();
    let input = Input::resolve(path.to_str().unwrap()).unwrap();
    assert_eq!(input.label, "disk");
    assert_eq!(input.skeleton, file.skeleton);
    assert!(matches!(Input::resolve("no-such-manifold"), Err(crate::Error::UnknownManifold(_))));
}

fn group(name: &str, deg: usize, coeff: &str) -> String {
    let r = cmd_cohomology(&Input::resolve(name).unwrap(), deg, None, &opts(0, coeff), false).unwrap();
    r.groups[0].display.clone()
}

#[test]
fn cohomology_command() {
    assert_eq!(group("torus2", 1, "Z2"), "Z2 x Z2");
    assert_eq!(group("sphere2", 1, "Z2"), "0");
    assert_eq!(group("torus3", 1, "Z2"), "Z2 x Z2 x Z2");
    let input = Input::resolve("disk").unwrap();
    let r = cmd_cohomology(&input, 2, Some(PairSpec::Boundary), &opts(0, "Z3"), true).unwrap();
    assert_eq!(r.groups[0].display, "Z3");
    assert_eq!(r.facts.len(), 1);
    let r = cmd_cohomology(&Input::resolve("circle").unwrap(), 1, Some("triangulation".parse().unwrap()), &opts(0, "Z2"), false).unwrap();
    assert_eq!(r.groups[0].factors, vec![2, 2, 2]);
}

fn exact(v: &ValueEntry) -> Amplitude {
    v.exact.parse().unwrap()
}

#[test]
fn gauge_command() {
    let closed = |name: &str| GaugeTarget::Closed(Input::resolve(name).unwrap());
    let r = cmd_gauge("trivial", &closed("torus2"), None, false, &opts(0, "Z2")).unwrap();
    assert_eq!(exact(&r.values[0]), Amplitude::from_int(2));
    let fact = |r: &RunReport, k: &str| r.facts.iter().find(|f| f.key == k).unwrap().value.clone();
    assert_eq!(fact(&r, "c"), "1/2");
    assert_eq!(fact(&r, "backgrounds"), "4");
    let r = cmd_gauge("trivial", &closed("sphere2"), Some("A=0"), false, &opts(0, "Z2")).unwrap();
    assert_eq!(r.values.len(), 1);
    assert_eq!(exact(&r.values[0]), Amplitude::from_ratio(Ratio::new(1, 2)));
    let r = cmd_gauge("trivial", &closed("torus2"), Some("all"), true, &opts(0, "Z2")).unwrap();
    assert_eq!(r.values.len(), 5);
    let target = GaugeTarget::Bordism { name: "identity".into(), slice: Input::resolve("circle").unwrap() };
    let r = cmd_gauge("trivial", &target, None, false, &opts(0, "Z2")).unwrap();
    assert_eq!(r.matrices[0].map.source.len(), r.matrices[0].map.target.len());
    assert!(cmd_gauge("ising", &closed("torus2"), None, false, &opts(0, "Z2")).is_err());
}

#[test]
fn torus3_gauged_for_one_form_symmetry() {
    let r = cmd_gauge("trivial", &GaugeTarget::Closed(Input::resolve("torus3").unwrap()), None, false, &opts(1, "Z2")).unwrap();
    assert_eq!(exact(&r.values[0]), Amplitude::from_int(2));
}

#[test]
fn report_values_round_trip() {
    let mut r = RunReport::new("test");
    for a in [Amplitude::sqrt(&num_rational::BigRational::from_integer(2.into())).unwrap(), Amplitude::phase(Ratio::new(1, 3)), Amplitude::from_int(-7)] {
        r.value("x", &a);
    }
    for v in &r.values {
        let a: Amplitude = v.exact.parse().unwrap();
        let (re, im) = a.to_complex();
        assert!((re - v.re).abs() < 1e-12 && (im - v.im).abs() < 1e-12);
    }
    let csv = r.to_csv().unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(r.to_json().contains("\"exact\""));
}

#[test]
fn normalization_weights_parse() {
    assert_eq!(parse_ratio("0.5").unwrap(), Ratio::new(1, 2));
    assert_eq!(parse_ratio("1").unwrap(), Ratio::from_integer(1));
    assert_eq!(parse_ratio("1/2").unwrap(), Ratio::new(1, 2));
    assert!(parse_ratio("half").is_err());
}

#[test]
fn verify_suites_pass() {
    for suite in ["axioms", "sequences", "gauging", "double-gauge", "delta"] {
        let r = cmd_verify(suite.parse().unwrap(), &Scope::default(), &opts(0, "Z2")).unwrap();
        assert!(!r.checks.is_empty(), "{suite}");
        assert!(r.passed(), "{suite}\n{}", r.to_text());
    }
    let scope = Scope { sigma: Some(Input::resolve("torus2").unwrap()), ..Scope::default() };
    let r = cmd_verify(Suite::Sequences, &scope, &opts(1, "Z2")).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&crate::Error::CapExceeded { order: 10, cap: 1 }), 3);
    assert_eq!(exit_code(&crate::Error::Parse("x".into())), 2);
}
