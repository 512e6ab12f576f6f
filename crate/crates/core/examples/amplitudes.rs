//! Exact amplitudes in cyclotomic fields.

use bordcat::tqft::Amplitude;
use num_rational::{BigRational, Ratio};

fn main() -> bordcat::Result<()> {
    let z = Amplitude::root_of_unity(1, 6);
    let cube = &(&z * &z) * &z;
    println!("zeta_6^3 = {cube}");
    let sum: Amplitude = (0..5).map(|k| Amplitude::root_of_unity(k, 5)).sum();
    println!("sum of fifth roots = {sum}");

    // Gauss sum for ℤ₃: Σ e^{2πi k²/3} = i√3.
    let gauss: Amplitude = (0..3).map(|k| Amplitude::phase(Ratio::new(k * k, 3))).sum();
    println!("Gauss sum = {gauss} ~ {:?}", gauss.to_complex());

    let root2 = Amplitude::sqrt(&BigRational::from_integer(2.into()))?;
    println!("sqrt 2 = {root2}, squared {}", &root2 * &root2);

    let parsed: Amplitude = gauss.to_string().parse()?;
    println!("round trip through text: {}", parsed == gauss);
    Ok(())
}
