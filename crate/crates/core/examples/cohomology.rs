//! Cohomology of library manifolds, absolute and relative to the boundary.

use bordcat::complex::{cohomology, SimplicialPair};
use bordcat::exactalg::FinAbGroup;
use bordcat::manifold::{library, library_names};

fn main() -> bordcat::Result<()> {
    let coefficients = ["Z2", "Z3", "Z4"];
    for name in library_names() {
        let m = library(name)?;
        let absolute = SimplicialPair::absolute(m.complex.clone());
        let relative = SimplicialPair::new(m.complex.clone(), m.boundary())?;
        for c in coefficients {
            let g = FinAbGroup::parse(c)?;
            let abs: Vec<String> = (0..=m.dim).map(|k| cohomology(&absolute, k, &g).group().to_string()).collect();
            let rel: Vec<String> = (0..=m.dim).map(|k| cohomology(&relative, k, &g).group().to_string()).collect();
            println!("{name:>8} {c}: H* = [{}]  H*(M, dM) = [{}]", abs.join(", "), rel.join(", "));
        }
    }
    Ok(())
}
