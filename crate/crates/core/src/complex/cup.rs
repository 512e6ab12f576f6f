use super::cochain::{Chain, Cochain};
use super::cohomology::CohomologyClass;
use super::simplicial::{permutation_sign, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactalg::FinAbGroup;
use num_rational::Ratio;

/// Fundamental cycle `Σ εᵢ [σᵢ]` of an oriented pure complex.
///
/// Orientation signs must agree across every interior codimension-one face;
/// the first disagreement is reported with both top simplices.
pub fn fundamental_cycle(k: &SimplicialComplex, orientation: &[i8]) -> Result<Chain> {
    let d = k.dim().ok_or_else(|| Error::Invalid("empty complex has no fundamental cycle".into()))?;
    if orientation.len() != k.count(d) || orientation.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Invalid("orientation must give ±1 per top simplex".into()));
    }
    let chain = Chain { degree: d, coeffs: orientation.iter().map(|&s| s as i64).collect() };
    if d == 0 {
        return Ok(chain);
    }
    let mut seen: Vec<Option<(usize, i64)>> = vec![None; k.count(d - 1)];
    for i in 0..k.count(d) {
        for (j, &f) in k.faces(d, i).iter().enumerate() {
            let s = chain.coeffs[i] * if j % 2 == 0 { 1 } else { -1 };
            match seen[f as usize] {
                Some((other, t)) if t == s => {
                    return Err(Error::Validation(vec![format!(
                        "orientation inconsistency: top simplices {:?} and {:?} induce the same sign on {:?}",
                        k.simplex(d, other),
                        k.simplex(d, i),
                        k.simplex(d - 1, f as usize)
                    )]))
                }
                _ => seen[f as usize] = Some((i, s)),
            }
        }
    }
    Ok(chain)
}

/// `⟨α ∪ β, c⟩ ∈ ℚ/ℤ` with the Alexander–Whitney product taken in the
/// vertex order given by `rank` (lower rank first), and values multiplied
/// through the standard pairing of `G* × G`.
///
/// Both coefficient groups must have the same invariant factors.
pub fn cup_evaluate(
    k: &SimplicialComplex,
    front: &Cochain,
    back: &Cochain,
    cycle: &Chain,
    rank: &[u32],
    g: &FinAbGroup,
) -> Result<Ratio<i64>> {
    let d = cycle.degree;
    let p = front.degree;
    if p + back.degree != d {
        return Err(Error::Mismatch(format!("degrees {} + {} do not sum to {d}", p, back.degree)));
    }
    if rank.len() != k.n_vertices() {
        return Err(Error::Mismatch("vertex order length".into()));
    }
    let e = g.exponent() as i128;
    let mut acc: i128 = 0;
    for i in cycle.support() {
        let mut verts: Vec<u32> = k.simplex(d, i).to_vec();
        verts.sort_by_key(|&v| rank[v as usize]);
        let sign = permutation_sign(&verts).unwrap() as i128 * cycle.coeffs[i] as i128;
        let (fs, fi) = oriented(k, &verts[..=p]);
        let (bs, bi) = oriented(k, &verts[p..]);
        let a = &front.values[fi];
        let b = &back.values[bi];
        let pairing: i128 = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(g.factors())
            .map(|((&x, &y), &n)| x as i128 * y as i128 * (e / n as i128))
            .sum();
        acc += sign * (fs * bs) as i128 * pairing;
    }
    Ok(Ratio::new(acc.rem_euclid(e) as i64, e as i64))
}

fn oriented(k: &SimplicialComplex, verts: &[u32]) -> (i8, usize) {
    (permutation_sign(verts).unwrap(), k.index_of(verts).expect("face of a simplex"))
}

/// Class-level wrapper of [`cup_evaluate`], using canonical representatives.
pub fn cup_evaluate_classes(front: &CohomologyClass, back: &CohomologyClass, cycle: &Chain, rank: &[u32]) -> Result<Ratio<i64>> {
    let (gf, gb) = (front.group.coefficients(), back.group.coefficients());
    if gf.factors() != gb.factors() {
        return Err(Error::Mismatch(format!("coefficients {gf} and {gb} are not dual")));
    }
    if *front.group.pair().total != *back.group.pair().total {
        return Err(Error::Mismatch("classes live on different complexes".into()));
    }
    cup_evaluate(&front.group.pair().total, front.cocycle(), back.cocycle(), cycle, rank, gf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_cycle_is_closed() {
        let mut f = Vec::new();
        for &a in &[0u32, 1] {
            for &(b, c) in &[(2u32, 3u32), (3, 4), (4, 5), (2, 5)] {
                f.push(vec![a, b, c]);
            }
        }
        let k = SimplicialComplex::from_facets(6, &f).unwrap();
        let mut orient = vec![0i8; 8];
        // Propagate: try signs so that every edge cancels.
        for (i, s) in k.simplices(2).iter().enumerate() {
            // Orientation of [a, b, c] induced by the outward normal of the
            // octahedron with 0 = north, 1 = south, 2..5 around the equator.
            let north = s[0] == 0;
            let ccw = matches!((s[1], s[2]), (2, 3) | (3, 4) | (4, 5)) ;
            orient[i] = if north == ccw { 1 } else { -1 };
        }
        let c = fundamental_cycle(&k, &orient).unwrap();
        assert!(c.boundary(&k).is_zero());
        assert_eq!(c.coeffs.iter().filter(|&&x| x == 1).count(), 4);
    }

    #[test]
    fn single_simplex_boundary() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let c = fundamental_cycle(&k, &[1]).unwrap();
        assert_eq!(c.boundary(&k).coeffs, vec![1, -1, 1]);
    }
}
