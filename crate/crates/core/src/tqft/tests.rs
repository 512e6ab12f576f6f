use super::*;
use crate::bordism::{circle_slice, Symmetry};
use crate::exactalg::FinAbGroup;

fn setup(n: u64) -> (Arc<Slice>, Arc<dyn Theory>) {
    let sym = Symmetry::new(2, 0, FinAbGroup::cyclic(n)).unwrap();
    (circle_slice(&sym).unwrap(), Arc::new(trivial_theory(sym)))
}

#[test]
fn trivial_theory_is_a_functor() {
    let (s, z) = setup(2);
    let fixtures = fixture_set(&s, 2).unwrap();
    assert!(fixtures.len() >= 10, "{}", fixtures.len());
    let r = verify_functor(&*z, &fixtures).unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert!(r.count("composition") > 0);
    for o in s.objects().unwrap() {
        assert!(check_representation(&*z, &o).unwrap().passed());
    }
}

#[test]
fn corrupted_theory_fails_composition() {
    let (s, z) = setup(2);
    let bad = ScaledTheory { inner: z, factor: Amplitude::from_int(2) };
    let r = verify_functor(&bad, &fixture_set(&s, 1).unwrap()).unwrap();
    assert!(r.failures().iter().any(|c| c.name == "composition"));
}
