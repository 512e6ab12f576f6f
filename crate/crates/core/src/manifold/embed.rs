use super::{SkeletonPair, TriangulatedManifold};
use crate::complex::{permutation_sign, Subcomplex};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Incoming,
    Outgoing,
}

impl Direction {
    /// Sign relating the orientation of `Σ` to the induced boundary orientation.
    pub fn sign(self) -> i8 {
        match self {
            Direction::Incoming => -1,
            Direction::Outgoing => 1,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Incoming => Direction::Outgoing,
            Direction::Outgoing => Direction::Incoming,
        }
    }
}

/// Simplicial identification of a slice (with its skeleton pair) onto a union
/// of boundary components of a manifold. Outgoing embeddings preserve the
/// induced boundary orientation, incoming ones reverse it.
#[derive(Clone, Debug)]
pub struct BoundaryEmbedding {
    pub pair: Arc<SkeletonPair>,
    pub direction: Direction,
    /// Vertex of `M` for each vertex of the working subdivision of `Σ`.
    pub map: Vec<u32>,
}

impl BoundaryEmbedding {
    /// Checks injectivity, that top simplices land on boundary faces covering
    /// whole components, and the orientation convention.
    pub fn check(&self, m: &TriangulatedManifold) -> Result<()> {
        let w = &self.pair.slice.working;
        if self.map.len() != w.complex.n_vertices() {
            return Err(Error::Mismatch("embedding length differs from the slice vertex count".into()));
        }
        let distinct: BTreeSet<u32> = self.map.iter().copied().collect();
        if distinct.len() != self.map.len() {
            return Err(Error::Invalid("boundary embedding is not injective".into()));
        }
        if w.is_empty() {
            return Ok(());
        }
        let induced: HashMap<Vec<u32>, i8> = boundary_faces(m);
        let mut errors = Vec::new();
        for (s, o) in w.oriented_facets() {
            let img: Vec<u32> = s.iter().map(|&v| self.map[v as usize]).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            match induced.get(&sorted) {
                None => errors.push(format!("{s:?} maps to {img:?}, which is not a boundary face")),
                Some(&i) if o * permutation_sign(&img).unwrap() != i * self.direction.sign() => {
                    errors.push(format!("{s:?} maps to {img:?} with the wrong orientation for {:?}", self.direction))
                }
                _ => {}
            }
        }
        // The image must be a union of whole boundary components.
        let image: BTreeSet<u32> = distinct;
        for comp in m.boundary_components() {
            let hit = comp.iter().filter(|v| image.contains(v)).count();
            if hit != 0 && hit != comp.len() {
                errors.push(format!("image covers part of the boundary component containing {}", comp[0]));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::BoundaryMismatch(errors.join("; ")))
        }
    }

    /// Image of the whole slice.
    pub fn image(&self, m: &TriangulatedManifold) -> Subcomplex {
        self.transport(m, &Subcomplex::everything(&self.pair.slice.working.complex))
    }

    /// Image of `sk_dual`, the model of `Σ̂`.
    pub fn dual_image(&self, m: &TriangulatedManifold) -> Subcomplex {
        self.transport(m, &self.pair.sk_dual)
    }

    /// Image of `sk`.
    pub fn skeleton_image(&self, m: &TriangulatedManifold) -> Subcomplex {
        self.transport(m, &self.pair.sk)
    }

    fn transport(&self, m: &TriangulatedManifold, s: &Subcomplex) -> Subcomplex {
        s.image(&self.pair.slice.working.complex, &self.map, &m.complex).expect("embedding checked")
    }

    /// Same embedding after renaming the vertices of `M` by `relabel`.
    pub fn relabeled(&self, relabel: &[u32]) -> BoundaryEmbedding {
        BoundaryEmbedding { pair: self.pair.clone(), direction: self.direction, map: self.map.iter().map(|&v| relabel[v as usize]).collect() }
    }
}

/// Boundary codimension-one faces of `M` with their induced orientation
/// relative to increasing vertex order.
pub(crate) fn boundary_faces(m: &TriangulatedManifold) -> HashMap<Vec<u32>, i8> {
    m.induced_boundary_orientation().into_iter().map(|(f, s)| (m.complex.simplex(m.dim - 1, f).to_vec(), s)).collect()
}

/// Finds an embedding of the slice of `pair` onto boundary components of `m`
/// with the given direction, restricted to `within` when given. The search is
/// deterministic: the lexicographically first vertex assignment wins.
pub fn find_boundary_embedding(
    m: &TriangulatedManifold,
    pair: &Arc<SkeletonPair>,
    direction: Direction,
    within: Option<&[u32]>,
) -> Result<BoundaryEmbedding> {
    let w = &pair.slice.working;
    let n = w.complex.n_vertices();
    if n == 0 {
        return Ok(BoundaryEmbedding { pair: pair.clone(), direction, map: Vec::new() });
    }
    if w.dim + 1 != m.dim {
        return Err(Error::Mismatch(format!("slice of dimension {} in a {}-manifold", w.dim, m.dim)));
    }
    let allowed: Option<BTreeSet<u32>> = within.map(|v| v.iter().copied().collect());
    let faces: HashMap<Vec<u32>, i8> = boundary_faces(m)
        .into_iter()
        .filter(|(f, _)| allowed.as_ref().is_none_or(|a| f.iter().all(|v| a.contains(v))))
        .collect();
    let mut t_adj: HashMap<u32, BTreeSet<u32>> = HashMap::new();
    for f in faces.keys() {
        for &a in f {
            for &b in f {
                if a != b {
                    t_adj.entry(a).or_default().insert(b);
                }
            }
        }
    }
    let s_adj: Vec<BTreeSet<u32>> = {
        let mut adj = vec![BTreeSet::new(); n];
        for e in w.complex.simplices(1) {
            adj[e[0] as usize].insert(e[1]);
            adj[e[1] as usize].insert(e[0]);
        }
        adj
    };
    // Search order: breadth first inside each component.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s as u32]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &s_adj[v as usize] {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let position: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v as usize] = i;
        }
        p
    };
    // Top simplices of Σ, checked once their last vertex in search order is assigned.
    let mut due: Vec<Vec<(Vec<u32>, i8)>> = vec![Vec::new(); n];
    for (s, o) in w.oriented_facets() {
        let last = s.iter().map(|&v| position[v as usize]).max().unwrap();
        due[last].push((s, o));
    }
    let mut targets: Vec<u32> = t_adj.keys().copied().collect();
    targets.sort_unstable();
    let mut search = Search { order: &order, s_adj: &s_adj, t_adj: &t_adj, faces: &faces, due: &due, sign: direction.sign(), map: vec![u32::MAX; n], used: BTreeSet::new(), targets: &targets };
    if search.extend(0) {
        let e = BoundaryEmbedding { pair: pair.clone(), direction, map: search.map };
        e.check(m)?;
        Ok(e)
    } else {
        Err(Error::BoundaryMismatch(format!("no {direction:?} embedding of the slice onto the boundary")))
    }
}

struct Search<'a> {
    order: &'a [u32],
    s_adj: &'a [BTreeSet<u32>],
    t_adj: &'a HashMap<u32, BTreeSet<u32>>,
    faces: &'a HashMap<Vec<u32>, i8>,
    due: &'a [Vec<(Vec<u32>, i8)>],
    sign: i8,
    map: Vec<u32>,
    used: BTreeSet<u32>,
    targets: &'a [u32],
}

impl Search<'_> {
    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i] as usize;
        let anchor = self.s_adj[v].iter().find(|&&u| self.map[u as usize] != u32::MAX).copied();
        let candidates: Vec<u32> = match anchor {
            Some(u) => self.t_adj[&self.map[u as usize]].iter().copied().collect(),
            None => self.targets.to_vec(),
        };
        for c in candidates {
            if self.used.contains(&c) || self.t_adj[&c].len() != self.s_adj[v].len() {
                continue;
            }
            let adjacent_ok = self.s_adj[v]
                .iter()
                .all(|&u| self.map[u as usize] == u32::MAX || self.t_adj[&c].contains(&self.map[u as usize]));
            if !adjacent_ok {
                continue;
            }
            self.map[v] = c;
            let faces_ok = self.due[i].iter().all(|(s, o)| {
                let img: Vec<u32> = s.iter().map(|&x| self.map[x as usize]).collect();
                let mut sorted = img.clone();
                sorted.sort_unstable();
                self.faces.get(&sorted).is_some_and(|&ind| o * permutation_sign(&img).unwrap() == ind * self.sign)
            });
            if faces_ok {
                self.used.insert(c);
                if self.extend(i + 1) {
                    return true;
                }
                self.used.remove(&c);
            }
            self.map[v] = u32::MAX;
        }
        false
    }
}
