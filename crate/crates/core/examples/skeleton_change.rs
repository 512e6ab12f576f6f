//! Changing the skeleton pair on the circle: one marked point against two,
//! with the backgrounds of the change cylinder between each pair of objects.

use bordcat::bordism::{skeleton_change_cylinder, Slice, Symmetry};
use bordcat::exactalg::FinAbGroup;
use bordcat::manifold::{library, SkeletonPair, SliceComplex};
use bordcat::tqft::{check_equivariance, trivial_theory};
use std::sync::Arc;

fn main() -> bordcat::Result<()> {
    let s = Symmetry::new(2, 0, FinAbGroup::cyclic(2))?;
    let sc = SliceComplex::subdivide(&library("circle")?)?;
    let one = Slice::new(&s, Arc::new(SkeletonPair::custom(&sc, 0, &[0], &[5])?))?;
    let two = Slice::new(&s, Arc::new(SkeletonPair::custom(&sc, 0, &[0, 5], &[1, 2])?))?;
    println!("objects: one-point {}, two-point {}", one.backgrounds().order(), two.backgrounds().order());

    let m = skeleton_change_cylinder(&one, &two)?;
    let z = trivial_theory(s.clone());
    for a in one.objects()? {
        for b in two.objects()? {
            let n = m.backgrounds_with(&a.b, &b.b)?.classes.len();
            if n > 0 {
                println!("b={} -> b'={}: {n} backgrounds, equivariant {:?}", a.b, b.b, check_equivariance(&z, &a, &b)?);
            }
        }
    }
    Ok(())
}
