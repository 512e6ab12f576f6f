//! The long exact sequence of a skeleton pair on the torus, for both skeleton
//! constructions and both degrees.

use bordcat::complex::long_exact_sequence_check;
use bordcat::exactalg::FinAbGroup;
use bordcat::manifold::{library, skeleton_pair, SkeletonKind, SliceComplex};

fn main() -> bordcat::Result<()> {
    let torus = SliceComplex::subdivide(&library("torus2")?)?;
    for q in [0, 1] {
        for kind in [SkeletonKind::Triangulation, SkeletonKind::Dual] {
            let pair = skeleton_pair(&torus, q, kind)?.relative_pair();
            let e = long_exact_sequence_check(&pair, q, &FinAbGroup::cyclic(2))?;
            println!(
                "{kind:?} q={q}: H^q(X)={:?} H^q(A)={:?} H^(q+1)(X,A)={:?} H^(q+1)(X)={:?}",
                e.h_x, e.h_a, e.h_rel, e.h_x_next
            );
            println!(
                "  iota injective {}, exact at A {}, exact at (X,A) {}, g surjective {}",
                e.iota_injective, e.exact_at_a, e.exact_at_rel, e.g_surjective
            );
        }
    }
    Ok(())
}
