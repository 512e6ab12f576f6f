//! Oriented triangulated manifolds, skeleton pairs, cylinders and gluing.

mod embed;
mod glue;
mod library;
mod skeleton;

pub use embed::{find_boundary_embedding, BoundaryEmbedding, Direction};
pub use glue::{cone, cylinder, glue, glue_self, remove_open_star, Cylinder, Gluing};
pub use library::{library, library_names, mobius_strip};
pub use skeleton::{skeleton_pair, SkeletonKind, SkeletonPair, SliceComplex};

use crate::complex::{cohomology_order, fundamental_cycle, Chain, SimplicialComplex, SimplicialPair, Subcomplex};
use crate::error::{Error, Result};
use crate::exactalg::FinAbGroup;
use serde::Serialize;
use std::collections::VecDeque;
use std::sync::Arc;

/// Oriented triangulated manifold, possibly with boundary and possibly
/// disconnected.
#[derive(Clone, Debug)]
pub struct TriangulatedManifold {
    pub complex: Arc<SimplicialComplex>,
    pub dim: usize,
    /// Sign per top simplex relative to its increasing vertex order.
    pub orientation: Vec<i8>,
}

/// Summary returned by a successful [`TriangulatedManifold::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub dim: usize,
    pub counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub closed: bool,
    pub components: usize,
    pub boundary_components: usize,
}

impl TriangulatedManifold {
    /// Manifold with the given orientation, validated.
    pub fn new(complex: Arc<SimplicialComplex>, dim: usize, orientation: Vec<i8>) -> Result<Self> {
        let m = TriangulatedManifold { complex, dim, orientation };
        m.validate()?;
        Ok(m)
    }

    /// Empty manifold of dimension `dim`.
    pub fn empty(dim: usize) -> Self {
        TriangulatedManifold { complex: Arc::new(SimplicialComplex::empty()), dim, orientation: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.complex.n_vertices() == 0
    }

    /// Orients each connected component by propagation from its first top
    /// simplex (which gets `+1`), then validates.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<u32>]) -> Result<Self> {
        let complex = Arc::new(SimplicialComplex::from_facets(n_vertices, facets)?);
        let dim = complex.dim().ok_or_else(|| Error::Invalid("no simplices".into()))?;
        let orientation = propagate_orientation(&complex, dim)?;
        Self::new(complex, dim, orientation)
    }

    /// All checks: purity, pseudo-manifold condition, vertex links,
    /// orientation consistency, closed boundary.
    pub fn validate(&self) -> Result<Certificate> {
        let k = &self.complex;
        let d = self.dim;
        let mut errors = Vec::new();
        if self.is_empty() {
            return Ok(Certificate { dim: d, counts: vec![], euler_characteristic: 0, closed: true, components: 0, boundary_components: 0 });
        }
        if k.dim() != Some(d) {
            errors.push(format!("complex has dimension {:?}, expected {d}", k.dim()));
            return Err(Error::Validation(errors));
        }
        for f in k.facets() {
            if f.len() != d + 1 {
                errors.push(format!("not pure: maximal simplex {f:?} has dimension {}", f.len() - 1));
            }
        }
        if self.orientation.len() != k.count(d) {
            errors.push("orientation length differs from the number of top simplices".into());
        }
        if !errors.is_empty() {
            return Err(Error::Validation(errors));
        }
        let cof = codim_one_cofaces(k, d);
        for (f, c) in cof.iter().enumerate() {
            if d > 0 && (c.is_empty() || c.len() > 2) {
                errors.push(format!("pseudo-manifold failure: face {:?} lies in {} top simplices", k.simplex(d - 1, f), c.len()));
            }
        }
        if !errors.is_empty() {
            return Err(Error::Validation(errors));
        }
        let boundary = self.boundary();
        if d >= 1 {
            let z2 = FinAbGroup::cyclic(2);
            for v in 0..k.n_vertices() as u32 {
                let link = k.link(v);
                let on_boundary = boundary.contains(0, v as usize);
                let ok = if d == 1 {
                    link.n_vertices() == if on_boundary { 1 } else { 2 }
                } else {
                    let p = SimplicialPair::absolute(Arc::new(link));
                    (0..d).all(|i| {
                        let expect = if i == 0 || (i == d - 1 && !on_boundary) { 2 } else { 1 };
                        cohomology_order(&p, i, &z2) == expect
                    })
                };
                if !ok {
                    errors.push(format!(
                        "link of vertex {v} is not a homology {}",
                        if on_boundary { "ball" } else { "sphere" }
                    ));
                }
            }
        }
        if let Err(Error::Validation(mut e)) = fundamental_cycle(k, &self.orientation) {
            errors.append(&mut e);
        }
        if d >= 2 {
            // Every codim-2 face of the boundary lies in exactly two boundary faces.
            let mut deg = vec![0usize; k.count(d - 2)];
            for f in 0..k.count(d - 1) {
                if boundary.contains(d - 1, f) {
                    for &g in k.faces(d - 1, f) {
                        deg[g as usize] += 1;
                    }
                }
            }
            for (g, &n) in deg.iter().enumerate() {
                if n != 0 && n != 2 {
                    errors.push(format!("boundary is not closed at {:?}", k.simplex(d - 2, g)));
                }
            }
        }
        if !errors.is_empty() {
            return Err(Error::Validation(errors));
        }
        Ok(Certificate {
            dim: d,
            counts: k.counts(),
            euler_characteristic: k.euler_characteristic(),
            closed: boundary.is_empty(),
            components: k.components().len(),
            boundary_components: self.boundary_components().len(),
        })
    }

    /// Boundary subcomplex: closure of the codimension-one faces lying in one top simplex.
    pub fn boundary(&self) -> Subcomplex {
        let k = &self.complex;
        if self.dim == 0 || self.is_empty() {
            return Subcomplex::empty(k);
        }
        let faces: Vec<Vec<u32>> = codim_one_cofaces(k, self.dim)
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() == 1)
            .map(|(f, _)| k.simplex(self.dim - 1, f).to_vec())
            .collect();
        Subcomplex::closure(k, &faces).expect("boundary faces")
    }

    pub fn is_closed(&self) -> bool {
        self.boundary().is_empty()
    }

    /// Connected components of the boundary, as vertex sets.
    pub fn boundary_components(&self) -> Vec<Vec<u32>> {
        let b = self.boundary();
        if b.is_empty() {
            return Vec::new();
        }
        let (sub, inc) = b.to_complex(&self.complex);
        sub.components().into_iter().map(|c| c.into_iter().map(|v| inc.vertex_map[v as usize]).collect()).collect()
    }

    /// Orientation induced on each boundary codimension-one face, as
    /// `(face index, sign relative to increasing vertex order)`.
    pub fn induced_boundary_orientation(&self) -> Vec<(usize, i8)> {
        let k = &self.complex;
        let d = self.dim;
        let mut out = Vec::new();
        for (f, c) in codim_one_cofaces(k, d).iter().enumerate() {
            if let [(t, j)] = c[..] {
                let s = self.orientation[t] * if j % 2 == 0 { 1 } else { -1 };
                out.push((f, s));
            }
        }
        out
    }

    pub fn fundamental_cycle(&self) -> Result<Chain> {
        fundamental_cycle(&self.complex, &self.orientation)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    /// Same triangulation with the opposite orientation.
    pub fn reversed(&self) -> TriangulatedManifold {
        TriangulatedManifold { complex: self.complex.clone(), dim: self.dim, orientation: self.orientation.iter().map(|s| -s).collect() }
    }

    /// Disjoint union; the vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &TriangulatedManifold) -> Result<TriangulatedManifold> {
        if self.dim != other.dim && !self.is_empty() && !other.is_empty() {
            return Err(Error::Mismatch(format!("disjoint union of dimensions {} and {}", self.dim, other.dim)));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let shift = self.complex.n_vertices() as u32;
        let mut facets: Vec<(Vec<u32>, i8)> = self.oriented_facets();
        facets.extend(other.oriented_facets().into_iter().map(|(s, o)| (s.into_iter().map(|v| v + shift).collect(), o)));
        Self::from_oriented_facets(self.complex.n_vertices() + other.complex.n_vertices(), self.dim, &facets)
    }

    /// Top simplices in increasing vertex order with their orientation signs.
    pub fn oriented_facets(&self) -> Vec<(Vec<u32>, i8)> {
        self.complex.simplices(self.dim).iter().cloned().zip(self.orientation.iter().copied()).collect()
    }

    /// Builds a manifold from top simplices given as vertex tuples in any
    /// order; `sign` orients the tuple as listed.
    pub fn from_oriented_facets(n_vertices: usize, dim: usize, facets: &[(Vec<u32>, i8)]) -> Result<Self> {
        let simplices: Vec<Vec<u32>> = facets.iter().map(|(s, _)| s.clone()).collect();
        let complex = Arc::new(SimplicialComplex::from_facets(n_vertices, &simplices)?);
        if complex.count(dim) != facets.len() {
            return Err(Error::Validation(vec![format!(
                "{} top simplices collapse to {} distinct ones",
                facets.len(),
                complex.count(dim)
            )]));
        }
        let mut orientation = vec![0i8; complex.count(dim)];
        for (s, o) in facets {
            let idx = complex.index_of(s).expect("listed simplex");
            orientation[idx] = o * crate::complex::permutation_sign(s).expect("distinct vertices");
        }
        Self::new(complex, dim, orientation)
    }

    /// Relabels vertices by a bijection, keeping the geometric orientation.
    pub fn relabel(&self, perm: &[u32]) -> Result<TriangulatedManifold> {
        let facets: Vec<(Vec<u32>, i8)> =
            self.oriented_facets().into_iter().map(|(s, o)| (s.iter().map(|&v| perm[v as usize]).collect(), o)).collect();
        Self::from_oriented_facets(self.complex.n_vertices(), self.dim, &facets)
    }
}

/// Top simplices containing each codimension-one face, with the position of
/// the omitted vertex.
fn codim_one_cofaces(k: &SimplicialComplex, d: usize) -> Vec<Vec<(usize, usize)>> {
    if d == 0 {
        return Vec::new();
    }
    let mut cof = vec![Vec::new(); k.count(d - 1)];
    for t in 0..k.count(d) {
        for (j, &f) in k.faces(d, t).iter().enumerate() {
            cof[f as usize].push((t, j));
        }
    }
    cof
}

/// Consistent orientation found by propagation across codimension-one faces.
pub fn propagate_orientation(k: &SimplicialComplex, d: usize) -> Result<Vec<i8>> {
    let cof = codim_one_cofaces(k, d);
    let n = k.count(d);
    let mut orient = vec![0i8; n];
    for start in 0..n {
        if orient[start] != 0 {
            continue;
        }
        orient[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for (j, &f) in k.faces(d, t).iter().enumerate() {
                let induced = orient[t] * if j % 2 == 0 { 1 } else { -1 };
                for &(u, i) in &cof[f as usize] {
                    if u == t {
                        continue;
                    }
                    // The neighbor must induce the opposite sign on the shared face.
                    let want = -induced * if i % 2 == 0 { 1 } else { -1 };
                    if orient[u] == 0 {
                        orient[u] = want;
                        queue.push_back(u);
                    } else if orient[u] != want {
                        return Err(Error::Validation(vec![format!(
                            "non-orientable: no consistent orientation of {:?} and {:?} across {:?}",
                            k.simplex(d, t),
                            k.simplex(d, u),
                            k.simplex(d - 1, f as usize)
                        )]));
                    }
                }
            }
        }
    }
    Ok(orient)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_validates() {
        for name in library_names() {
            let m = library(name).unwrap();
            m.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn mobius_fails_orientability() {
        let err = mobius_strip().unwrap_err();
        assert!(err.to_string().contains("non-orientable"), "{err}");
    }

    #[test]
    fn cone_on_torus_fails_link_check() {
        let t = library("torus2").unwrap();
        let mut facets: Vec<Vec<u32>> = t.complex.simplices(2).to_vec();
        for f in facets.iter_mut() {
            f.push(7);
        }
        let err = TriangulatedManifold::from_facets(8, &facets).unwrap_err();
        assert!(err.to_string().contains("link of vertex 7"), "{err}");
    }

    #[test]
    fn library_counts() {
        let t = library("torus2").unwrap();
        assert_eq!(t.complex.counts(), vec![7, 21, 14]);
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(library("sphere2").unwrap().euler_characteristic(), 2);
        assert_eq!(library("genus2").unwrap().complex.counts(), vec![11, 39, 26]);
        assert_eq!(library("torus3").unwrap().complex.counts(), vec![27, 189, 324, 162]);
        assert_eq!(library("sphere3").unwrap().euler_characteristic(), 0);
    }

    #[test]
    fn boundaries() {
        assert!(library("sphere2").unwrap().is_closed());
        assert_eq!(library("disk").unwrap().boundary_components().len(), 1);
        assert_eq!(library("annulus").unwrap().boundary_components().len(), 2);
    }
}
