//! Checks of the dual symmetry: the character sum identity, double gauging
//! and the vanishing of pairings between parallel classes.

use super::{cup_pairing, evaluate, gauge};
use crate::bordism::{closed, Bordism, Slice, Symmetry};
use crate::complex::{cohomology_order, cup_evaluate, SimplicialPair};
use crate::error::Result;
use crate::manifold::TriangulatedManifold;
use crate::tqft::{trivial_theory, Amplitude, Theory};
use num_rational::Ratio;
use serde::Serialize;
use std::sync::Arc;

/// `S(B, B′) = Σ_A e^{2πi⟨A ∪ (B − B′)⟩}` over all dual backgrounds `A`.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub backgrounds: u128,
    pub dual_backgrounds: u128,
    pub pairs: usize,
    /// `S(B, B)`, equal for all `B` when `exact` holds.
    pub constant: String,
    /// `S(B, B′) = |dual backgrounds| · δ_{B,B′}` for every pair.
    pub exact: bool,
}

pub fn delta_identity_check(m: &Arc<Bordism>) -> Result<DeltaReport> {
    let dual = m.dual()?;
    let g = m.backgrounds.group();
    let pairings: Vec<Vec<Ratio<i64>>> = dual
        .backgrounds
        .group()
        .enumerate()?
        .map(|a| cup_pairing(m, &dual.backgrounds.representative(&a)))
        .collect::<Result<_>>()?;
    let n = Amplitude::from_int(pairings.len() as i64);
    let (mut pairs, mut exact) = (0, true);
    let mut constant = None;
    for b in g.enumerate()? {
        for b2 in g.enumerate()? {
            let diff = g.sub(&b, &b2);
            let sum: Amplitude = pairings.iter().map(|t| Amplitude::phase(-evaluate(t, &diff))).sum();
            let expected = if b == b2 { n.clone() } else { Amplitude::zero() };
            exact &= sum == expected;
            if b == b2 {
                constant.get_or_insert(sum);
            }
            pairs += 1;
        }
    }
    Ok(DeltaReport {
        backgrounds: g.order(),
        dual_backgrounds: pairings.len() as u128,
        pairs,
        constant: constant.map(|c| c.to_string()).unwrap_or_default(),
        exact,
    })
}

/// Gauging the trivial theory twice on a closed manifold. The measured
/// `κ(M) = Z_gg(M, B)` is compared with both `∏ᵢ |Hⁱ(M; G)|^{(−1)^i}` and
/// its reciprocal.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleGaugeReport {
    pub symmetry: String,
    pub gauged: String,
    /// `Z_gg(M, B)` for every background `B`.
    pub values: Vec<String>,
    pub kappa: String,
    pub kappa_approx: f64,
    pub independent_of_background: bool,
    /// `|Hⁱ(M; G)|` for `i = 0..=d`.
    pub orders: Vec<u128>,
    pub alternating: String,
    pub reciprocal: String,
    pub matches_alternating: bool,
    pub matches_reciprocal: bool,
    #[serde(skip)]
    pub kappa_exact: Amplitude,
}

pub fn double_gauge_check(symmetry: &Symmetry, manifold: TriangulatedManifold) -> Result<DoubleGaugeReport> {
    let z: Arc<dyn Theory> = Arc::new(trivial_theory(symmetry.clone()));
    let once = Arc::new(gauge(z));
    let twice = gauge(once.clone());
    let m = closed(symmetry, manifold)?;
    let gauged = once.plain_value(&m)?.matrix[0][0].clone();
    let values: Vec<Amplitude> = m.decorations()?.iter().map(|d| Ok(twice.value(d)?.matrix[0][0].clone())).collect::<Result<_>>()?;
    let kappa = values[0].clone();
    let g = &symmetry.group;
    let orders: Vec<u128> =
        (0..=symmetry.d).map(|i| cohomology_order(&SimplicialPair::absolute(m.manifold.complex.clone()), i, g)).collect();
    let (mut alt, mut rec) = (Amplitude::one(), Amplitude::one());
    for (i, &o) in orders.iter().enumerate() {
        let e = if i % 2 == 0 { 1 } else { -1 };
        alt = &alt * &Amplitude::power(o as u64, Ratio::from_integer(e))?;
        rec = &rec * &Amplitude::power(o as u64, Ratio::from_integer(-e))?;
    }
    Ok(DoubleGaugeReport {
        symmetry: symmetry.to_string(),
        gauged: gauged.to_string(),
        values: values.iter().map(|v| v.to_string()).collect(),
        kappa: kappa.to_string(),
        kappa_approx: kappa.to_complex().0,
        independent_of_background: values.iter().all(|v| *v == kappa),
        orders,
        alternating: alt.to_string(),
        reciprocal: rec.to_string(),
        matches_alternating: kappa == alt,
        matches_reciprocal: kappa == rec,
        kappa_exact: kappa,
    })
}

/// `⟨(a ⊕ 0) ∪ (b ⊕ 0), [Σ × I]⟩ = 0` for every dual background `a` and
/// background `b` on the slice.
pub fn pairing_vanishes_on_parallel(slice: &Arc<Slice>) -> Result<bool> {
    if slice.is_empty() {
        return Ok(true);
    }
    let dual = slice.dual()?;
    let (cyl, dual_cyl) = (slice.identity_cylinder()?, dual.identity_cylinder()?);
    let cycle = cyl.fundamental_cycle()?.expect("nonempty cylinder");
    let order = cyl.cup_order();
    for a in dual.backgrounds().group().enumerate()? {
        let ca = dual_cyl.parallel(&a)?;
        for b in slice.backgrounds().group().enumerate()? {
            let x = cup_evaluate(&cyl.manifold.complex, &ca, &cyl.parallel(&b)?, cycle, &order, &slice.symmetry.group)?;
            if x != Ratio::from_integer(0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
