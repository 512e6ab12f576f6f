//! Gluing bordisms: the torus from two bent annuli, with the Mayer–Vietoris
//! count of backgrounds, and the splitting of cylinder backgrounds.

use bordcat::bordism::{bent_in, bent_out, circle_slice, Composition, Symmetry};
use bordcat::exactalg::FinAbGroup;

fn main() -> bordcat::Result<()> {
    let s = Symmetry::new(2, 0, FinAbGroup::cyclic(2))?;
    let slice = circle_slice(&s)?;
    let c = Composition::new(&bent_out(&slice)?, &bent_in(&slice)?)?;
    println!("glued: closed {}, Euler characteristic {}", c.glued.is_closed(), c.glued.manifold.euler_characteristic());
    let r = c.mayer_vietoris()?;
    println!("backgrounds: lower x upper {} -> agreeing {} -> glued {}", r.fine_order, r.agreeing_pairs, r.glued_order);
    println!("|Ker eta| = {} = {}; report passes: {}", r.kernel_eta, r.kernel_eta_formula, r.passed());

    let cyl = slice.identity_cylinder()?;
    println!(
        "cylinder backgrounds {} = {} slice backgrounds x {} classes on the skeleton",
        cyl.backgrounds.order(),
        slice.backgrounds().order(),
        slice.segment.h_a.order()
    );
    Ok(())
}
