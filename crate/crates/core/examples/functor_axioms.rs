//! Functoriality of the trivial and gauged theories on the fixture bordisms
//! over the circle.

use bordcat::bordism::{circle_slice, Symmetry};
use bordcat::exactalg::FinAbGroup;
use bordcat::gauging::gauge;
use bordcat::tqft::{fixture_set, trivial_theory, verify_functor, Theory};
use std::sync::Arc;

fn main() -> bordcat::Result<()> {
    let s = Symmetry::new(2, 0, FinAbGroup::cyclic(2))?;
    let z = Arc::new(trivial_theory(s.clone()));
    let zg = gauge(z.clone());
    let theories: [(&str, &dyn Theory); 2] = [("trivial", z.as_ref()), ("gauged", &zg)];
    for (label, theory) in theories {
        let fixtures = fixture_set(&circle_slice(theory.symmetry())?, 1)?;
        let r = verify_functor(theory, &fixtures)?;
        println!("{label}: {} fixtures, {}/{} checks pass", fixtures.len(), r.checks.iter().filter(|c| c.passed).count(), r.checks.len());
        for f in r.failures() {
            println!("  failed {} {}: {}", f.name, f.subject, f.detail);
        }
    }
    Ok(())
}
