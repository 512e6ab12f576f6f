use crate::error::{invalid, Error, Result};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Strictly increasing vertex tuple.
pub type Simplex = Vec<u32>;

/// Finite abstract simplicial complex on vertices `0..n`, stored per dimension
/// with simplices sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, u32>>,
    /// `faces[k][i*(k+1)+j]` is the index of the face of `(k, i)` omitting vertex `j`.
    faces: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Closure of the given simplices. Every vertex in `0..n_vertices` must
    /// occur in some simplex, so that vertex ids are exactly `0..n_vertices`.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<u32>]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("simplex {f:?} repeats a vertex"));
            }
            if s.is_empty() {
                continue;
            }
            if let Some(&v) = s.iter().find(|&&v| v as usize >= n_vertices) {
                return invalid(format!("vertex {v} out of range 0..{n_vertices}"));
            }
            let k = s.len() - 1;
            if sets.len() <= k {
                sets.resize(k + 1, BTreeSet::new());
            }
            sets[k].insert(s);
        }
        for k in (1..sets.len()).rev() {
            let faces: Vec<Simplex> = sets[k]
                .iter()
                .flat_map(|s| (0..s.len()).map(move |j| [&s[..j], &s[j + 1..]].concat()))
                .collect();
            sets[k - 1].extend(faces);
        }
        if sets.first().map_or(0, BTreeSet::len) != n_vertices {
            return invalid(format!(
                "{} of {n_vertices} vertices appear in simplices",
                sets.first().map_or(0, BTreeSet::len)
            ));
        }
        Ok(Self::from_sorted(n_vertices, sets.into_iter().map(|s| s.into_iter().collect()).collect()))
    }

    fn from_sorted(n_vertices: usize, by_dim: Vec<Vec<Simplex>>) -> Self {
        let index: Vec<HashMap<Simplex, u32>> =
            by_dim.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for k in 1..by_dim.len() {
            let mut f = Vec::with_capacity(by_dim[k].len() * (k + 1));
            for s in &by_dim[k] {
                for j in 0..=k {
                    let face = [&s[..j], &s[j + 1..]].concat();
                    f.push(index[k - 1][&face]);
                }
            }
            faces.push(f);
        }
        SimplicialComplex { n_vertices, by_dim, index, faces }
    }

    pub fn empty() -> Self {
        Self::from_sorted(0, Vec::new())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[u32] {
        &self.by_dim[k][i]
    }

    /// Index of a simplex given by its vertices in any order.
    pub fn index_of(&self, vertices: &[u32]) -> Option<usize> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        self.index.get(s.len().checked_sub(1)?)?.get(&s).map(|&i| i as usize)
    }

    /// Indices of the faces of `(k, i)`; face `j` omits vertex `j` and enters
    /// the boundary with sign `(−1)ʲ`.
    pub fn faces(&self, k: usize, i: usize) -> &[u32] {
        &self.faces[k][i * (k + 1)..(i + 1) * (k + 1)]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..self.by_dim.len() {
            let mut covered = vec![false; self.count(k)];
            if k + 1 < self.by_dim.len() {
                for i in 0..self.count(k + 1) {
                    for &f in self.faces(k + 1, i) {
                        covered[f as usize] = true;
                    }
                }
            }
            out.extend(self.by_dim[k].iter().zip(covered).filter(|(_, c)| !c).map(|(s, _)| s.clone()));
        }
        out
    }

    /// Link of a vertex, with vertices relabeled compactly in increasing order.
    pub fn link(&self, v: u32) -> SimplicialComplex {
        let mut faces = Vec::new();
        for k in 1..self.by_dim.len() {
            for s in &self.by_dim[k] {
                if s.binary_search(&v).is_ok() {
                    faces.push(s.iter().copied().filter(|&w| w != v).collect::<Vec<_>>());
                }
            }
        }
        let verts: BTreeSet<u32> = faces.iter().flatten().copied().collect();
        let relabel: HashMap<u32, u32> = verts.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
        let faces: Vec<Simplex> = faces.iter().map(|f| f.iter().map(|w| relabel[w]).collect()).collect();
        SimplicialComplex::from_facets(verts.len(), &faces).expect("link is a complex")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n_vertices()`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.n_vertices as u32;
        let mut facets = self.facets();
        facets.extend(other.facets().into_iter().map(|s| s.into_iter().map(|v| v + shift).collect()));
        SimplicialComplex::from_facets(self.n_vertices + other.n_vertices, &facets).expect("disjoint union")
    }

    /// Complex with vertex `v` renamed to `perm[v]`; `perm` must be a bijection.
    pub fn relabel(&self, perm: &[u32]) -> Result<SimplicialComplex> {
        if perm.len() != self.n_vertices {
            return Err(Error::Mismatch("relabeling length".into()));
        }
        let facets: Vec<Simplex> = self.facets().iter().map(|s| s.iter().map(|&v| perm[v as usize]).collect()).collect();
        SimplicialComplex::from_facets(self.n_vertices, &facets)
    }

    /// Connected components as vertex sets.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
            parent[a.max(b)] = a.min(b);
        }
        let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
        for v in 0..self.n_vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v as u32);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// Subcomplex of a fixed ambient complex, as per-dimension membership masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subcomplex {
    mask: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(k: &SimplicialComplex) -> Self {
        Subcomplex { mask: (0..k.by_dim.len()).map(|d| vec![false; k.count(d)]).collect() }
    }

    pub fn everything(k: &SimplicialComplex) -> Self {
        Subcomplex { mask: (0..k.by_dim.len()).map(|d| vec![true; k.count(d)]).collect() }
    }

    /// Full subcomplex spanned by the vertices satisfying `keep`.
    pub fn full_on(k: &SimplicialComplex, keep: impl Fn(u32) -> bool) -> Self {
        Subcomplex {
            mask: (0..k.by_dim.len()).map(|d| k.by_dim[d].iter().map(|s| s.iter().all(|&v| keep(v))).collect()).collect(),
        }
    }

    /// Closure of the given simplices.
    pub fn closure(k: &SimplicialComplex, simplices: &[Simplex]) -> Result<Self> {
        let mut sub = Self::empty(k);
        for s in simplices {
            let d = s.len().checked_sub(1).ok_or_else(|| Error::Invalid("empty simplex".into()))?;
            let i = k.index_of(s).ok_or_else(|| Error::Invalid(format!("{s:?} is not a simplex")))?;
            sub.mask[d][i] = true;
        }
        sub.close(k);
        Ok(sub)
    }

    fn close(&mut self, k: &SimplicialComplex) {
        for d in (1..self.mask.len()).rev() {
            for i in 0..self.mask[d].len() {
                if self.mask[d][i] {
                    for &f in k.faces(d, i) {
                        self.mask[d - 1][f as usize] = true;
                    }
                }
            }
        }
    }

    pub fn contains(&self, d: usize, i: usize) -> bool {
        self.mask.get(d).is_some_and(|m| m[i])
    }

    pub fn contains_simplex(&self, k: &SimplicialComplex, s: &[u32]) -> bool {
        k.index_of(s).is_some_and(|i| self.contains(s.len() - 1, i))
    }

    pub fn count(&self, d: usize) -> usize {
        self.mask.get(d).map_or(0, |m| m.iter().filter(|&&b| b).count())
    }

    pub fn is_empty(&self) -> bool {
        self.mask.iter().all(|m| m.iter().all(|&b| !b))
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.mask.first().map_or(Vec::new(), |m| (0..m.len()).filter(|&i| m[i]).map(|i| i as u32).collect())
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            mask: self.mask.iter().zip(&other.mask).map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect()).collect(),
        }
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            mask: self.mask.iter().zip(&other.mask).map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x && *y).collect()).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Subcomplex) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a.iter().zip(b).all(|(x, y)| !*x || *y))
    }

    /// Face-closure check.
    pub fn is_closed(&self, k: &SimplicialComplex) -> bool {
        (1..self.mask.len()).all(|d| (0..self.mask[d].len()).all(|i| !self.mask[d][i] || k.faces(d, i).iter().all(|&f| self.mask[d - 1][f as usize])))
    }

    /// True if every simplex of `k` with all vertices in this subcomplex belongs to it.
    pub fn is_full(&self, k: &SimplicialComplex) -> bool {
        let verts: BTreeSet<u32> = self.vertices().into_iter().collect();
        *self == Subcomplex::full_on(k, |v| verts.contains(&v))
    }

    /// The subcomplex as a standalone complex with compact vertex labels, and
    /// the inclusion map into `k`.
    pub fn to_complex(&self, k: &Arc<SimplicialComplex>) -> (Arc<SimplicialComplex>, SimplicialMap) {
        let verts = self.vertices();
        let relabel: HashMap<u32, u32> = verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut facets = Vec::new();
        for d in 0..self.mask.len() {
            for i in 0..self.mask[d].len() {
                if self.mask[d][i] {
                    facets.push(k.simplex(d, i).iter().map(|v| relabel[v]).collect::<Vec<_>>());
                }
            }
        }
        let sub = Arc::new(SimplicialComplex::from_facets(verts.len(), &facets).expect("subcomplex"));
        let map = SimplicialMap { source: sub.clone(), target: k.clone(), vertex_map: verts };
        (sub, map)
    }

    /// Transport along a vertex map that sends this subcomplex's simplices to
    /// simplices of `target`.
    pub fn image(&self, k: &SimplicialComplex, f: &[u32], target: &SimplicialComplex) -> Result<Subcomplex> {
        let mut simplices = Vec::new();
        for d in 0..self.mask.len() {
            for i in 0..self.mask[d].len() {
                if self.mask[d][i] {
                    simplices.push(k.simplex(d, i).iter().map(|&v| f[v as usize]).collect::<Vec<_>>());
                }
            }
        }
        Subcomplex::closure(target, &simplices)
    }

    /// Preimage under a vertex map into `target`.
    pub fn preimage(&self, target: &SimplicialComplex, f: &[u32], source: &SimplicialComplex) -> Subcomplex {
        Subcomplex {
            mask: (0..source.by_dim.len())
                .map(|d| {
                    source.by_dim[d]
                        .iter()
                        .map(|s| {
                            let img: BTreeSet<u32> = s.iter().map(|&v| f[v as usize]).collect();
                            let img: Vec<u32> = img.into_iter().collect();
                            self.contains_simplex(target, &img)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Pair `(X, A)` of a complex and a subcomplex.
#[derive(Clone, Debug)]
pub struct SimplicialPair {
    pub total: Arc<SimplicialComplex>,
    pub sub: Subcomplex,
}

impl SimplicialPair {
    pub fn new(total: Arc<SimplicialComplex>, sub: Subcomplex) -> Result<Self> {
        if !sub.is_closed(&total) {
            return invalid("subcomplex is not closed under faces");
        }
        Ok(SimplicialPair { total, sub })
    }

    /// The absolute pair `(X, ∅)`.
    pub fn absolute(total: Arc<SimplicialComplex>) -> Self {
        let sub = Subcomplex::empty(&total);
        SimplicialPair { total, sub }
    }

    /// Indices of the `k`-simplices not in the subcomplex.
    pub fn relative_simplices(&self, k: usize) -> Vec<u32> {
        (0..self.total.count(k)).filter(|&i| !self.sub.contains(k, i)).map(|i| i as u32).collect()
    }
}

/// Simplicial map given on vertices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialComplex>,
    pub target: Arc<SimplicialComplex>,
    pub vertex_map: Vec<u32>,
}

impl SimplicialMap {
    /// Checks that every simplex maps onto a simplex.
    pub fn new(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, vertex_map: Vec<u32>) -> Result<Self> {
        let m = SimplicialMap { source, target, vertex_map };
        m.check()?;
        Ok(m)
    }

    pub fn identity(k: &Arc<SimplicialComplex>) -> Self {
        SimplicialMap { source: k.clone(), target: k.clone(), vertex_map: (0..k.n_vertices() as u32).collect() }
    }

    pub fn check(&self) -> Result<()> {
        if self.vertex_map.len() != self.source.n_vertices() {
            return invalid("vertex map length differs from the source vertex count");
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v as usize >= self.target.n_vertices()) {
            return invalid(format!("vertex map hits {v}, outside the target"));
        }
        for s in self.source.facets() {
            let img: BTreeSet<u32> = s.iter().map(|&v| self.vertex_map[v as usize]).collect();
            let img: Vec<u32> = img.into_iter().collect();
            if self.target.index_of(&img).is_none() {
                return invalid(format!("simplex {s:?} maps to non-simplex {img:?}"));
            }
        }
        Ok(())
    }

    /// Checks the pair condition `f(A) ⊆ B`.
    pub fn check_pairs(&self, a: &Subcomplex, b: &Subcomplex) -> Result<()> {
        for d in 0..=self.source.dim().unwrap_or(0) {
            for i in 0..self.source.count(d) {
                if a.contains(d, i) {
                    let img: BTreeSet<u32> = self.source.simplex(d, i).iter().map(|&v| self.vertex_map[v as usize]).collect();
                    let img: Vec<u32> = img.into_iter().collect();
                    if !b.contains_simplex(&self.target, &img) {
                        return invalid(format!("simplex {:?} of the source subcomplex leaves the target subcomplex", self.source.simplex(d, i)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, g: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            source: self.source.clone(),
            target: g.target.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| g.vertex_map[v as usize]).collect(),
        }
    }

    /// Image of the oriented simplex `(k, i)`: `Some((sign, index))` when
    /// nondegenerate, where `sign` orders the image vertices increasingly.
    pub fn image_of(&self, k: usize, i: usize) -> Option<(i8, usize)> {
        let img: Vec<u32> = self.source.simplex(k, i).iter().map(|&v| self.vertex_map[v as usize]).collect();
        let sign = permutation_sign(&img)?;
        Some((sign, self.target.index_of(&img)?))
    }
}

/// Sign of the permutation sorting `xs`, or `None` if `xs` has repeats.
pub fn permutation_sign<T: Ord>(xs: &[T]) -> Option<i8> {
    let mut inversions = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            match xs[i].cmp(&xs[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn closure_and_counts() {
        let t = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.counts(), vec![3, 3, 1]);
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(circle().euler_characteristic(), 0);
    }

    #[test]
    fn faces_follow_omission_order() {
        let t = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let f: Vec<&[u32]> = t.faces(2, 0).iter().map(|&i| t.simplex(1, i as usize)).collect();
        assert_eq!(f, vec![&[1, 2][..], &[0, 2][..], &[0, 1][..]]);
    }

    #[test]
    fn link_of_triangle_vertex() {
        let t = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.link(0).counts(), vec![2, 1]);
    }

    #[test]
    fn missing_vertex_rejected() {
        assert!(SimplicialComplex::from_facets(4, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn non_simplicial_map_rejected() {
        let c = Arc::new(circle());
        let seg = Arc::new(SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap());
        assert!(SimplicialMap::new(seg.clone(), c.clone(), vec![0, 1]).is_ok());
        let two_points = Arc::new(SimplicialComplex::from_facets(2, &[vec![0], vec![1]]).unwrap());
        assert!(SimplicialMap::new(seg, two_points, vec![0, 1]).is_err());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), Some(1));
        assert_eq!(permutation_sign(&[1, 0, 2]), Some(-1));
        assert_eq!(permutation_sign(&[2, 0, 1]), Some(1));
        assert_eq!(permutation_sign(&[1, 1]), None);
    }
}
