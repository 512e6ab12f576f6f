//! Gauging twice returns the input up to an Euler-type counterterm, and the
//! character sum over dual backgrounds is a delta function.

use bordcat::bordism::{closed, Symmetry};
use bordcat::exactalg::FinAbGroup;
use bordcat::gauging::{delta_identity_check, double_gauge_check};
use bordcat::manifold::library;

fn main() -> bordcat::Result<()> {
    let s = Symmetry::new(2, 0, FinAbGroup::cyclic(2))?;
    for name in ["torus2", "sphere2", "genus2"] {
        let r = double_gauge_check(&s, library(name)?)?;
        println!(
            "{name}: Z_gg = {} for every background: {}; |H^i| = {:?}, alternating product {}",
            r.kappa, r.independent_of_background, r.orders, r.alternating
        );
        let d = delta_identity_check(&closed(&s, library(name)?)?)?;
        println!("  character sums over {} pairs: delta {}, diagonal {}", d.pairs, d.exact, d.constant);
    }
    Ok(())
}
