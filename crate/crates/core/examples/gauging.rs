//! Gauging the trivial theory: partition functions, refined values and
//! Hilbert space dimensions.

use bordcat::bordism::{circle_slice, Symmetry};
use bordcat::exactalg::FinAbGroup;
use bordcat::gauging::gauge;
use bordcat::manifold::library;
use bordcat::tqft::{trivial_theory, Theory};
use std::sync::Arc;

fn main() -> bordcat::Result<()> {
    for (d, q, name) in [(2, 0, "torus2"), (2, 0, "sphere2"), (2, 0, "genus2"), (3, 0, "torus3"), (3, 1, "torus3")] {
        for n in [2, 3] {
            let zg = gauge(Arc::new(trivial_theory(Symmetry::new(d, q, FinAbGroup::cyclic(n))?)));
            println!("Z_g({name}; q={q}, Z{n}) = {}", zg.partition_function(library(name)?)?);
        }
    }

    let zg = gauge(Arc::new(trivial_theory(Symmetry::new(2, 0, FinAbGroup::cyclic(2))?)));
    for (a, v) in zg.refined_partition_functions(library("torus2")?)? {
        println!("Z_g(torus2, A={a}) = {v}");
    }
    let slice = circle_slice(zg.symmetry())?;
    for obj in slice.objects()? {
        println!("dim H_g(circle, b={}) = {}", obj.b, zg.hilbert(&obj)?.dimension()?);
    }
    Ok(())
}
