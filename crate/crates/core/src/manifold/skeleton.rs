use super::TriangulatedManifold;
use crate::complex::{barycentric_subdivision, coboundary_matrix, SimplicialPair, Subcomplex};
use crate::error::{Error, Result};
use crate::exactalg::smith_normal_form;
use num_traits::{One, Signed};
use std::sync::Arc;

/// A closed manifold `Σ` together with its barycentric subdivision, where
/// skeleta and dual skeleta both live as full subcomplexes.
#[derive(Clone, Debug)]
pub struct SliceComplex {
    pub base: Arc<TriangulatedManifold>,
    /// Oriented subdivision; all skeleton pairs on `Σ` refer to its vertices.
    pub working: Arc<TriangulatedManifold>,
    /// Dimension of the carrier simplex of each working vertex.
    pub carrier_dim: Vec<usize>,
}

impl PartialEq for SliceComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.working, &other.working)
            || (self.working.dim == other.working.dim
                && self.working.complex == other.working.complex
                && self.working.orientation == other.working.orientation
                && self.carrier_dim == other.carrier_dim)
    }
}

impl SliceComplex {
    /// Subdivides a closed manifold.
    pub fn subdivide(base: &TriangulatedManifold) -> Result<Arc<Self>> {
        if !base.is_closed() {
            return Err(Error::Invalid("a slice must be a closed manifold".into()));
        }
        if base.is_empty() {
            return Ok(Self::empty(base.dim));
        }
        let sd = barycentric_subdivision(&base.complex);
        let d = base.dim;
        let orientation = sd
            .complex
            .simplices(d)
            .iter()
            .map(|s| {
                let (cd, ci) = sd.simplex_carrier(s);
                debug_assert_eq!(cd, d);
                base.orientation[ci] * sd.flag_sign(&base.complex, s)
            })
            .collect();
        let working = TriangulatedManifold::new(sd.complex.clone(), d, orientation)?;
        let carrier_dim = sd.carrier.iter().map(|c| c.0).collect();
        Ok(Arc::new(SliceComplex { base: Arc::new(base.clone()), working: Arc::new(working), carrier_dim }))
    }

    /// The empty `dim`-manifold.
    pub fn empty(dim: usize) -> Arc<Self> {
        let m = Arc::new(TriangulatedManifold::empty(dim));
        Arc::new(SliceComplex { base: m.clone(), working: m, carrier_dim: Vec::new() })
    }

    /// Dimension of `Σ`.
    pub fn dim(&self) -> usize {
        self.working.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.working.complex.n_vertices()
    }

    /// `Σ₁ ⊔ Σ₂`; vertices of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &SliceComplex) -> Result<Arc<Self>> {
        let base = Arc::new(self.base.disjoint_union(&other.base)?);
        let working = Arc::new(self.working.disjoint_union(&other.working)?);
        let carrier_dim = self.carrier_dim.iter().chain(&other.carrier_dim).copied().collect();
        Ok(Arc::new(SliceComplex { base, working, carrier_dim }))
    }
}

/// Provenance of a skeleton pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkeletonKind {
    /// `sk` is the `(d−q−2)`-skeleton of the triangulation, `sk_dual` the dual `q`-skeleton.
    Triangulation,
    /// `sk` is the dual `(d−q−2)`-skeleton, `sk_dual` the `q`-skeleton of the triangulation.
    Dual,
    /// Explicit vertex sets, admitted after a retraction certificate.
    Custom,
}

/// A `(d−q−2)`-skeleton `sk` of `Σ` and a `q`-dimensional `sk_dual` onto
/// which `Σ ∖ sk` deformation retracts (and vice versa). Both are full
/// subcomplexes of the working subdivision.
#[derive(Clone, Debug)]
pub struct SkeletonPair {
    pub slice: Arc<SliceComplex>,
    /// Bulk dimension; `Σ` has dimension `d − 1`.
    pub d: usize,
    pub q: usize,
    pub kind: SkeletonKind,
    pub sk: Subcomplex,
    pub sk_dual: Subcomplex,
}

impl PartialEq for SkeletonPair {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.q == other.q && self.sk == other.sk && self.sk_dual == other.sk_dual && self.slice == other.slice
    }
}

/// Standard pair on the subdivision. For [`SkeletonKind::Triangulation`],
/// `sk` is spanned by barycenters of simplices of dimension `≤ d−q−2` and
/// `sk_dual` by the remaining barycenters; [`SkeletonKind::Dual`] exchanges
/// the roles with the threshold at `q`.
pub fn skeleton_pair(slice: &Arc<SliceComplex>, q: usize, kind: SkeletonKind) -> Result<SkeletonPair> {
    let d = slice.dim() + 1;
    if d < 2 || q > d - 2 {
        return Err(Error::Invalid(format!("q = {q} out of range 0..={} for d = {d}", d.saturating_sub(2))));
    }
    let k = &slice.working.complex;
    let cd = &slice.carrier_dim;
    let (sk, sk_dual) = match kind {
        SkeletonKind::Triangulation => {
            let t = d - q - 2;
            (Subcomplex::full_on(k, |v| cd[v as usize] <= t), Subcomplex::full_on(k, |v| cd[v as usize] > t))
        }
        SkeletonKind::Dual => (Subcomplex::full_on(k, |v| cd[v as usize] > q), Subcomplex::full_on(k, |v| cd[v as usize] <= q)),
        SkeletonKind::Custom => return Err(Error::Invalid("custom pairs are built with SkeletonPair::custom".into())),
    };
    Ok(SkeletonPair { slice: slice.clone(), d, q, kind, sk, sk_dual })
}

impl SkeletonPair {
    /// Pair spanned by explicit vertex sets of the working subdivision.
    /// Admitted only if both are disjoint, of the right dimensions, and each
    /// is a deformation retract of the complement of the other at the level
    /// of integral homology.
    pub fn custom(slice: &Arc<SliceComplex>, q: usize, sk: &[u32], sk_dual: &[u32]) -> Result<SkeletonPair> {
        let d = slice.dim() + 1;
        if d < 2 || q > d - 2 {
            return Err(Error::Invalid(format!("q = {q} out of range for d = {d}")));
        }
        let k = &slice.working.complex;
        let n = k.n_vertices() as u32;
        if let Some(v) = sk.iter().chain(sk_dual).find(|&&v| v >= n) {
            return Err(Error::Invalid(format!("vertex {v} is not in the subdivision")));
        }
        let pair = SkeletonPair {
            slice: slice.clone(),
            d,
            q,
            kind: SkeletonKind::Custom,
            sk: Subcomplex::full_on(k, |v| sk.contains(&v)),
            sk_dual: Subcomplex::full_on(k, |v| sk_dual.contains(&v)),
        };
        pair.certify()?;
        Ok(pair)
    }

    /// Checks disjointness, dimensions and the mutual retraction property.
    pub fn certify(&self) -> Result<()> {
        let k = &self.slice.working.complex;
        let mut errors = Vec::new();
        if !self.sk.intersection(&self.sk_dual).is_empty() {
            errors.push("sk and sk_dual intersect".to_string());
        }
        let top = |s: &Subcomplex| (0..=k.dim().unwrap_or(0)).rev().find(|&i| s.count(i) > 0);
        if top(&self.sk).is_some_and(|t| t > self.d - self.q - 2) {
            errors.push(format!("sk has dimension above {}", self.d - self.q - 2));
        }
        if top(&self.sk_dual).is_some_and(|t| t > self.q) {
            errors.push(format!("sk_dual has dimension above {}", self.q));
        }
        if errors.is_empty() {
            for (a, b, what) in [(&self.sk, &self.sk_dual, "Σ ∖ sk does not retract onto sk_dual"), (&self.sk_dual, &self.sk, "Σ ∖ sk_dual does not retract onto sk")] {
                if !complement_retracts(&self.slice.working, a, b) {
                    errors.push(what.to_string());
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }

    /// The pair for the dual symmetry degree `d − q − 2`, with roles exchanged.
    pub fn swapped(&self) -> SkeletonPair {
        let kind = match self.kind {
            SkeletonKind::Triangulation => SkeletonKind::Dual,
            SkeletonKind::Dual => SkeletonKind::Triangulation,
            SkeletonKind::Custom => SkeletonKind::Custom,
        };
        SkeletonPair {
            slice: self.slice.clone(),
            d: self.d,
            q: self.d - 2 - self.q,
            kind,
            sk: self.sk_dual.clone(),
            sk_dual: self.sk.clone(),
        }
    }

    /// True if every working vertex lies in `sk` or `sk_dual`.
    pub fn is_complementary(&self) -> bool {
        let mut covered = vec![false; self.slice.n_vertices()];
        for v in self.sk.vertices().into_iter().chain(self.sk_dual.vertices()) {
            covered[v as usize] = true;
        }
        covered.into_iter().all(|c| c)
    }

    /// `(Σ, sk_dual)`, the finite model of `(Σ, Σ ∖ sk)`.
    pub fn relative_pair(&self) -> SimplicialPair {
        SimplicialPair { total: self.slice.working.complex.clone(), sub: self.sk_dual.clone() }
    }

    /// Pair on `Σ₁ ⊔ Σ₂`.
    pub fn disjoint_union(&self, other: &SkeletonPair) -> Result<SkeletonPair> {
        if self.d != other.d || self.q != other.q {
            return Err(Error::Mismatch("disjoint union of pairs with different (d, q)".into()));
        }
        let slice = self.slice.disjoint_union(&other.slice)?;
        let k = &slice.working.complex;
        let shift = self.slice.n_vertices() as u32;
        let pick = |a: &Subcomplex, b: &Subcomplex| {
            let va = a.vertices();
            let vb: Vec<u32> = b.vertices().into_iter().map(|v| v + shift).collect();
            Subcomplex::full_on(k, |v| if v < shift { va.binary_search(&v).is_ok() } else { vb.binary_search(&v).is_ok() })
        };
        let kind = if self.kind == other.kind { self.kind } else { SkeletonKind::Custom };
        Ok(SkeletonPair {
            sk: pick(&self.sk, &other.sk),
            sk_dual: pick(&self.sk_dual, &other.sk_dual),
            slice,
            d: self.d,
            q: self.q,
            kind,
        })
    }
}

/// True if `H_*(K_{V∖a}, b; ℤ) = 0`, where `K_{V∖a}` is the full subcomplex
/// on the vertices outside `a`.
fn complement_retracts(m: &TriangulatedManifold, a: &Subcomplex, b: &Subcomplex) -> bool {
    let k = &m.complex;
    let av = a.vertices();
    let rest = Subcomplex::full_on(k, |v| av.binary_search(&v).is_err());
    if !b.is_subset_of(&rest) {
        return false;
    }
    let (rk, inc) = rest.to_complex(k);
    let sub = b.preimage(k, &inc.vertex_map, &rk);
    let pair = SimplicialPair { total: rk.clone(), sub };
    let top = rk.dim().unwrap_or(0);
    // Exact over ℤ iff every coboundary has unit elementary divisors and
    // ranks add up to the chain dimensions.
    let mut ranks = Vec::new();
    for i in 0..top {
        let s = smith_normal_form(&coboundary_matrix(&pair, i));
        if s.diagonal().iter().any(|x| !x.abs().is_one()) {
            return false;
        }
        ranks.push(s.rank());
    }
    (0..=top).all(|i| {
        let below = if i == 0 { 0 } else { ranks[i - 1] };
        let above = ranks.get(i).copied().unwrap_or(0);
        pair.relative_simplices(i).len() == below + above
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::library;

    fn circle() -> Arc<SliceComplex> {
        SliceComplex::subdivide(&library("circle").unwrap()).unwrap()
    }

    #[test]
    fn circle_standard_pair() {
        let s = circle();
        let p = skeleton_pair(&s, 0, SkeletonKind::Triangulation).unwrap();
        assert_eq!(p.sk.vertices(), vec![0, 1, 2]);
        assert_eq!(p.sk_dual.vertices(), vec![3, 4, 5]);
        p.certify().unwrap();
        assert!(p.is_complementary());
    }

    #[test]
    fn torus_pairs_certify() {
        let s = SliceComplex::subdivide(&library("torus2").unwrap()).unwrap();
        for q in 0..2 {
            for kind in [SkeletonKind::Triangulation, SkeletonKind::Dual] {
                skeleton_pair(&s, q, kind).unwrap().certify().unwrap();
            }
        }
    }

    #[test]
    fn custom_circle_pairs() {
        let s = circle();
        // Working circle runs 0-3-1-5-2-4-0.
        SkeletonPair::custom(&s, 0, &[0], &[5]).unwrap();
        SkeletonPair::custom(&s, 0, &[0, 5], &[1, 2]).unwrap();
        assert!(SkeletonPair::custom(&s, 0, &[0], &[1, 2]).is_err());
        assert!(SkeletonPair::custom(&s, 0, &[0, 3], &[5]).is_err());
    }

    #[test]
    fn q_out_of_range() {
        assert!(skeleton_pair(&circle(), 1, SkeletonKind::Triangulation).is_err());
    }
}
