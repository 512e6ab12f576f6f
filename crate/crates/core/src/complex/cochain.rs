use super::simplicial::{SimplicialComplex, SimplicialMap, SimplicialPair, Subcomplex};
use crate::exactalg::modular::SparseMatrix;
use crate::exactalg::{FinAbGroup, GroupElement, IntMatrix};
use rand::Rng;

/// `G`-valued function on the `k`-simplices of a complex, indexed like
/// [`SimplicialComplex::simplices`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<GroupElement>,
}

impl Cochain {
    pub fn zero(k: &SimplicialComplex, degree: usize, g: &FinAbGroup) -> Self {
        Cochain { degree, values: vec![g.zero(); k.count(degree)] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GroupElement::is_zero)
    }

    pub fn add(&self, other: &Cochain, g: &FinAbGroup) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain { degree: self.degree, values: self.values.iter().zip(&other.values).map(|(a, b)| g.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &Cochain, g: &FinAbGroup) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain { degree: self.degree, values: self.values.iter().zip(&other.values).map(|(a, b)| g.sub(a, b)).collect() }
    }

    pub fn scale(&self, k: i64, g: &FinAbGroup) -> Cochain {
        Cochain { degree: self.degree, values: self.values.iter().map(|a| g.scale(k, a)).collect() }
    }

    /// True if the cochain is zero on every simplex of `sub`.
    pub fn vanishes_on(&self, sub: &Subcomplex) -> bool {
        self.values.iter().enumerate().all(|(i, v)| !sub.contains(self.degree, i) || v.is_zero())
    }

    /// Random cochain vanishing on `sub`.
    pub fn random(pair: &SimplicialPair, degree: usize, g: &FinAbGroup, rng: &mut impl Rng) -> Cochain {
        let values = (0..pair.total.count(degree))
            .map(|i| {
                if pair.sub.contains(degree, i) {
                    g.zero()
                } else {
                    GroupElement::new(g.factors().iter().map(|&n| rng.gen_range(0..n)).collect())
                }
            })
            .collect();
        Cochain { degree, values }
    }
}

/// `(δc)(σ) = Σⱼ (−1)ʲ c(∂ⱼσ)`.
pub fn coboundary(k: &SimplicialComplex, c: &Cochain, g: &FinAbGroup) -> Cochain {
    let d = c.degree + 1;
    let values = (0..k.count(d))
        .map(|i| {
            let mut acc = g.zero();
            for (j, &f) in k.faces(d, i).iter().enumerate() {
                let v = &c.values[f as usize];
                acc = if j % 2 == 0 { g.add(&acc, v) } else { g.sub(&acc, v) };
            }
            acc
        })
        .collect();
    Cochain { degree: d, values }
}

/// Pullback of a cochain along a simplicial map; degenerate images give 0.
pub fn pullback_cochain(f: &SimplicialMap, c: &Cochain, g: &FinAbGroup) -> Cochain {
    let values = (0..f.source.count(c.degree))
        .map(|i| match f.image_of(c.degree, i) {
            Some((s, j)) => g.scale(s as i64, &c.values[j]),
            None => g.zero(),
        })
        .collect();
    Cochain { degree: c.degree, values }
}

/// Extension by zero along an injective simplicial map (typically a
/// subcomplex inclusion).
pub fn extend_by_zero(f: &SimplicialMap, c: &Cochain, g: &FinAbGroup) -> Cochain {
    let mut out = Cochain::zero(&f.target, c.degree, g);
    for (i, v) in c.values.iter().enumerate() {
        let (s, j) = f.image_of(c.degree, i).expect("extension along a non-injective map");
        out.values[j] = g.scale(s as i64, v);
    }
    out
}

/// Integer matrix of `δ: Cᵏ(X, A) → Cᵏ⁺¹(X, A)`. Rows are the relative
/// `(k+1)`-simplices and columns the relative `k`-simplices, both in
/// increasing index order. Entries are `±1` and the same matrix serves every
/// coefficient group.
pub fn coboundary_matrix(pair: &SimplicialPair, k: usize) -> IntMatrix {
    let cols = pair.relative_simplices(k);
    let rows = pair.relative_simplices(k + 1);
    let pos = positions(pair.total.count(k), &cols);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (r, &t) in rows.iter().enumerate() {
        for (j, &f) in pair.total.faces(k + 1, t as usize).iter().enumerate() {
            if let Some(c) = pos[f as usize] {
                m.set(r, c as usize, if j % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// Sparse `δ` on relative cochains with residues modulo `n`.
pub(crate) fn coboundary_sparse(pair: &SimplicialPair, k: usize, rel_k: &[u32], rel_k1: &[u32], n: u64) -> SparseMatrix {
    let pos = positions(pair.total.count(k), rel_k);
    let trip = rel_k1.iter().enumerate().flat_map(|(r, &t)| {
        let pos = &pos;
        pair.total
            .faces(k + 1, t as usize)
            .iter()
            .enumerate()
            .filter_map(move |(j, &f)| pos[f as usize].map(|c| (r, c as usize, if j % 2 == 0 { 1 } else { -1 })))
    });
    SparseMatrix::from_triplets(rel_k1.len(), rel_k.len(), n, trip)
}

pub(crate) fn positions(total: usize, rel: &[u32]) -> Vec<Option<u32>> {
    let mut pos = vec![None; total];
    for (p, &i) in rel.iter().enumerate() {
        pos[i as usize] = Some(p as u32);
    }
    pos
}

/// Integer chain: coefficients on the `k`-simplices of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: Vec<i64>,
}

impl Chain {
    pub fn boundary(&self, k: &SimplicialComplex) -> Chain {
        assert!(self.degree > 0, "boundary of a 0-chain");
        let mut coeffs = vec![0; k.count(self.degree - 1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                for (j, &f) in k.faces(self.degree, i).iter().enumerate() {
                    coeffs[f as usize] += if j % 2 == 0 { c } else { -c };
                }
            }
        }
        Chain { degree: self.degree - 1, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn circle_incidence() {
        let c = Arc::new(SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap());
        let m = coboundary_matrix(&SimplicialPair::absolute(c), 0);
        assert_eq!((m.rows(), m.cols()), (3, 3));
        for i in 0..3 {
            let s: i64 = (0..3).map(|j| i64::try_from(m.get(i, j).clone()).unwrap()).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn delta_squared_vanishes() {
        let t = Arc::new(SimplicialComplex::from_facets(4, &[vec![0, 1, 2, 3]]).unwrap());
        let p = SimplicialPair::absolute(t);
        for k in 0..2 {
            assert!(coboundary_matrix(&p, k + 1).mul(&coboundary_matrix(&p, k)).is_zero());
        }
    }

    #[test]
    fn simplex_rel_boundary_top_degree() {
        let t = Arc::new(SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap());
        let sub = Subcomplex::closure(&t, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let p = SimplicialPair::new(t, sub).unwrap();
        let m = coboundary_matrix(&p, 2);
        assert_eq!((m.rows(), m.cols()), (0, 1));
        let m = coboundary_matrix(&p, 1);
        assert_eq!((m.rows(), m.cols()), (1, 0));
    }
}
