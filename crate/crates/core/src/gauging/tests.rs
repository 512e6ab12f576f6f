use super::*;
use crate::bordism::{circle_slice, compose, identity, symmetry_cylinder, Composition};
use crate::manifold::library;
use crate::tqft::{fixture_set, trivial_theory, verify_functor};

fn sym(d: usize, q: usize, n: u64) -> Symmetry {
    Symmetry::new(d, q, FinAbGroup::cyclic(n)).unwrap()
}

fn gauged(s: &Symmetry) -> GaugedTheory {
    gauge(Arc::new(trivial_theory(s.clone())))
}

fn rational(a: &Amplitude) -> BigRational {
    a.as_rational().unwrap_or_else(|| panic!("{a} is not rational"))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn closed_partition_functions() {
    let s = sym(2, 0, 2);
    let zg = gauged(&s);
    assert_eq!(rational(&zg.partition_function(library("torus2").unwrap()).unwrap()), q(2, 1));
    assert_eq!(rational(&zg.partition_function(library("sphere2").unwrap()).unwrap()), q(1, 2));
    let c = coefficient_c(&closed(&s, library("torus2").unwrap()).unwrap(), Ratio::new(1, 2)).unwrap();
    assert_eq!(c.to_string(), "1/2");
}

#[test]
fn cylinder_normalization() {
    let slice = circle_slice(&sym(2, 0, 2)).unwrap();
    let c = coefficient_c(&slice.identity_cylinder().unwrap(), Ratio::new(1, 2)).unwrap();
    assert_eq!(rational(&c.value().unwrap()), q(1, 2));
}

#[test]
fn gauged_circle_and_torus_trace() {
    let s = sym(2, 0, 2);
    let zg = gauged(&s);
    let slice = circle_slice(&s).unwrap().dual().unwrap();
    let zero = slice.object(vec![0; slice.backgrounds().group().rank()]).unwrap();
    assert_eq!(zg.hilbert(&zero).unwrap().dimension().unwrap(), 2);
    let torus = Composition::new(&crate::bordism::bent_out(&slice).unwrap(), &crate::bordism::bent_in(&slice).unwrap()).unwrap();
    let z = zg.value(&DecoratedBordism { bordism: torus.glued.clone(), class: torus.glued.backgrounds.group().zero() }).unwrap();
    assert_eq!(z.matrix[0][0], Amplitude::from_int(2));
    let circle = zg.value(&compose(&identity(&zero).unwrap(), &identity(&zero).unwrap()).unwrap()).unwrap();
    assert_eq!(circle.trace(), Amplitude::from_int(2));
}

#[test]
fn gauged_theory_is_a_functor() {
    let s = sym(2, 0, 2);
    let zg = gauged(&s);
    let slice = circle_slice(zg.symmetry()).unwrap();
    let r = verify_functor(&zg, &fixture_set(&slice, 2).unwrap()).unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn dual_symmetry_refinement() {
    let s = sym(2, 0, 2);
    let zg = gauged(&s);
    let values = zg.refined_partition_functions(library("torus2").unwrap()).unwrap();
    assert_eq!(values.len(), 4);
    for (a, v) in values {
        assert_eq!(v == Amplitude::from_int(2), a.is_zero(), "A={a}: {v}");
        assert!(a.is_zero() || v.is_zero());
    }
    let slice = circle_slice(&s).unwrap();
    assert!(pairing_vanishes_on_parallel(&slice).unwrap());
    assert!(pairing_vanishes_on_parallel(&slice.dual().unwrap()).unwrap());
}

#[test]
fn delta_identity() {
    for name in ["torus2", "sphere2"] {
        let m = closed(&sym(2, 0, 2), library(name).unwrap()).unwrap();
        let r = delta_identity_check(&m).unwrap();
        assert!(r.exact, "{name}: {r:?}");
    }
}

#[test]
fn double_gauging() {
    let s = sym(2, 0, 2);
    let t = double_gauge_check(&s, library("torus2").unwrap()).unwrap();
    assert!(t.independent_of_background);
    assert_eq!(rational(&t.kappa_exact), q(1, 1));
    let sp = double_gauge_check(&s, library("sphere2").unwrap()).unwrap();
    assert_eq!(rational(&sp.kappa_exact), q(1, 4), "{sp:?}");
    assert!(sp.matches_reciprocal);
}

#[test]
fn dual_characters_on_symmetry_cylinders() {
    // ρ*(α) on the gauged theory acts on each sector by a phase.
    let s = sym(2, 0, 2);
    let zg = gauged(&s);
    let slice = circle_slice(zg.symmetry()).unwrap();
    for obj in slice.objects().unwrap() {
        let e = zg.hilbert(&obj).unwrap().idempotent;
        for alpha in slice.segment.h_x.group().enumerate().unwrap() {
            let r = zg.value(&symmetry_cylinder(&obj, &alpha).unwrap()).unwrap();
            let sectors = zg.sectors(&obj.slice.dual().unwrap()).unwrap();
            for sec in &sectors.sectors {
                let n = sec.space.labels().len();
                let d = &r.matrix[sec.offset][sec.offset];
                let e_d = &e.matrix[sec.offset][sec.offset];
                assert!(n == 1);
                assert!(e_d.is_zero() || *d == Amplitude::from_int(1) || *d == Amplitude::from_int(-1));
            }
        }
    }
}

#[test]
fn gauged_functor_over_z3() {
    let zg = gauged(&sym(2, 0, 3));
    let slice = circle_slice(zg.symmetry()).unwrap();
    let r = verify_functor(&zg, &fixture_set(&slice, 2).unwrap()).unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn torus_slices_in_three_dimensions() {
    for (q, expected) in [(0, 4), (1, 2)] {
        let s = sym(3, q, 2);
        let zg = gauged(&s);
        let z = zg.partition_function(library("torus3").unwrap()).unwrap();
        assert_eq!(z, Amplitude::from_int(expected), "q={q}");
        let slice = Slice::standard(zg.symmetry(), &library("torus2").unwrap(), crate::manifold::SkeletonKind::Triangulation).unwrap();
        let zero = slice.object(vec![0; slice.backgrounds().group().rank()]).unwrap();
        assert_eq!(zg.hilbert(&zero).unwrap().dimension().unwrap(), expected as u64, "q={q}");
        let h = zg.hilbert(&zero).unwrap();
        assert!(h.idempotent.is_idempotent());
        assert_eq!(zg.value(&identity(&zero).unwrap()).unwrap(), h.idempotent);
        assert!(crate::tqft::check_representation(&zg, &zero).unwrap().passed());
    }
}

/// `ρ*(α)` acts on the sector `b̃` by `e^{−2πi⟨b̃ ∪ α, [Σ]⟩}`.
#[test]
fn dual_symmetry_phases_match_closed_form() {
    for n in [2, 3] {
        let zg = gauged(&sym(2, 0, n));
        let slice = circle_slice(zg.symmetry()).unwrap();
        let input = slice.dual().unwrap();
        let w = input.working();
        let cycle = w.fundamental_cycle().unwrap();
        let rank: Vec<u32> = (0..w.complex.n_vertices() as u32).collect();
        let h_abs = &input.segment.h_x_next;
        let h_dual = &slice.segment.h_x;
        for obj in slice.objects().unwrap() {
            let e = zg.hilbert(&obj).unwrap().idempotent;
            let sectors = zg.sectors(&input).unwrap();
            for alpha in h_dual.group().enumerate().unwrap() {
                let r = zg.value(&symmetry_cylinder(&obj, &alpha).unwrap()).unwrap();
                for sec in &sectors.sectors {
                    let x = cup_evaluate(&w.complex, &h_abs.representative(&sec.absolute), &h_dual.representative(&alpha), &cycle, &rank, &input.symmetry.group).unwrap();
                    let expected = e.matrix[sec.offset][sec.offset].clone() * Amplitude::phase(x);
                    assert_eq!(r.matrix[sec.offset][sec.offset], expected, "n={n} a={} α={alpha} b̃={}", obj.b, sec.absolute);
                }
            }
        }
    }
}

#[test]
fn projectors_are_orthogonal_and_complete() {
    let s = sym(2, 0, 3);
    let zg = Arc::new(gauged(&s));
    let slice = circle_slice(zg.symmetry()).unwrap();
    for obj in slice.objects().unwrap().into_iter().step_by(4) {
        let h = slice.segment.h_x.group();
        let ps: Vec<LinearMap> = h.enumerate().unwrap().map(|c| projector(&*zg, &obj, &Character(c)).unwrap()).collect();
        let mut total = LinearMap::zero(ps[0].source.clone(), ps[0].target.clone());
        for (i, p) in ps.iter().enumerate() {
            total = total.add(p).unwrap();
            for (j, p2) in ps.iter().enumerate() {
                let prod = p.compose(p2).unwrap();
                assert!(if i == j { prod == *p } else { prod.is_zero() });
            }
        }
        assert_eq!(total, zg.hilbert(&obj).unwrap().idempotent);
    }
}

#[test]
fn choices_do_not_matter() {
    let s = sym(2, 0, 2);
    let sc = crate::manifold::SliceComplex::subdivide(&library("circle").unwrap()).unwrap();
    let custom = Slice::new(&s, Arc::new(crate::manifold::SkeletonPair::custom(&sc, 0, &[0, 5], &[1, 2]).unwrap())).unwrap();
    for seed in [1, 2, 3] {
        let zr = gauged(&s).with_section(Section::Random(seed));
        assert_eq!(zr.partition_function(library("torus2").unwrap()).unwrap(), Amplitude::from_int(2));
        let dual = custom.dual().unwrap();
        let zero = dual.object(vec![0; dual.backgrounds().group().rank()]).unwrap();
        assert_eq!(zr.hilbert(&zero).unwrap().dimension().unwrap(), 2);
    }
    for s_exp in [Ratio::from_integer(0), Ratio::from_integer(1)] {
        let z = gauged(&s).with_normalization(s_exp);
        assert_eq!(z.partition_function(library("sphere2").unwrap()).unwrap(), Amplitude::from_ratio(Ratio::new(1, 2)));
    }
}
