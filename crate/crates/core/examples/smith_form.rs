//! Smith normal form over ℤ and cokernels in finite modules.

use bordcat::exactalg::{cokernel_presentation, kernel_mod, smith_normal_form, verify_smith, FinAbGroup, IntMatrix};

fn main() -> bordcat::Result<()> {
    let a = IntMatrix::from_fn(3, 3, |i, j| [[2, 4, 4], [-6, 6, 12], [10, -4, -16]][i][j].into());
    let s = smith_normal_form(&a);
    println!("Smith form certified: {}", verify_smith(&a, &s));

    // ℤ₄ ⊕ ℤ₆ modulo the relation (2, 3).
    let rel = IntMatrix::from_fn(2, 1, |i, _| [2i64, 3][i].into());
    let p = cokernel_presentation(&rel, &[4, 6])?;
    println!("Z4 x Z6 / <(2,3)> = {} (order {})", p.group, p.group.order());

    // Solutions of 2x + 4y ≡ 0 in ℤ₈.
    let m = IntMatrix::from_fn(1, 2, |_, j| [2i64, 4][j].into());
    println!("kernel generators of (2 4) mod 8: {:?}", kernel_mod(&m, &[8, 8], &[8])?);

    let g = FinAbGroup::parse("Z2xZ4")?;
    println!("{g} has dual {} and {} elements", g.dual(), g.order());
    Ok(())
}
