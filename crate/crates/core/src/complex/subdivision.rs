use super::simplicial::{permutation_sign, SimplicialComplex};
use std::sync::Arc;

/// Barycentric subdivision with its carrier map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: Arc<SimplicialComplex>,
    /// Carrier `(dim, index)` of each new vertex. New vertex ids increase with
    /// carrier dimension, then carrier index.
    pub carrier: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl Subdivision {
    /// Vertex of the subdivision at the barycenter of `(dim, index)`.
    pub fn barycenter(&self, dim: usize, index: usize) -> u32 {
        (self.offsets[dim] + index) as u32
    }

    pub fn carrier_dim(&self, v: u32) -> usize {
        self.carrier[v as usize].0
    }

    /// Carrier of a simplex of the subdivision: the largest carrier among its vertices.
    pub fn simplex_carrier(&self, s: &[u32]) -> (usize, usize) {
        s.iter().map(|&v| self.carrier[v as usize]).max().expect("nonempty simplex")
    }

    /// Orientation of a top simplex of the subdivision relative to the
    /// orientation of its carrier's vertex order: the sign of the order in
    /// which the flag adds vertices.
    pub fn flag_sign(&self, base: &SimplicialComplex, s: &[u32]) -> i8 {
        let (d, i) = self.simplex_carrier(s);
        let top = base.simplex(d, i);
        // Vertices of `s` sorted by carrier dimension form the flag.
        let mut flag: Vec<(usize, usize)> = s.iter().map(|&v| self.carrier[v as usize]).collect();
        flag.sort();
        let mut order = Vec::with_capacity(top.len());
        let mut prev: &[u32] = &[];
        for &(fd, fi) in &flag {
            let cur = base.simplex(fd, fi);
            let added = cur.iter().find(|v| !prev.contains(v)).expect("flag grows by one vertex");
            order.push(top.iter().position(|w| w == added).unwrap());
            prev = cur;
        }
        permutation_sign(&order).expect("flag is a permutation")
    }
}

/// Barycentric subdivision: one vertex per simplex, one simplex per chain of faces.
pub fn barycentric_subdivision(x: &SimplicialComplex) -> Subdivision {
    let mut offsets = Vec::new();
    let mut carrier = Vec::new();
    for d in 0..=x.dim().unwrap_or(0) {
        offsets.push(carrier.len());
        carrier.extend((0..x.count(d)).map(|i| (d, i)));
    }
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for top in x.facets() {
        let d = top.len() - 1;
        // Every ordering of the vertices gives one maximal flag.
        let mut perm: Vec<usize> = (0..=d).collect();
        loop {
            let mut s = Vec::with_capacity(d + 1);
            let mut verts: Vec<u32> = Vec::new();
            for &p in &perm {
                verts.push(top[p]);
                let k = verts.len() - 1;
                let idx = x.index_of(&verts).expect("face of a simplex");
                s.push((offsets[k] + idx) as u32);
            }
            facets.push(s);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    let complex = SimplicialComplex::from_facets(carrier.len(), &facets).expect("subdivision is a complex");
    Subdivision { complex: Arc::new(complex), carrier, offsets }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_and_triangle() {
        let i = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        assert_eq!(barycentric_subdivision(&i).complex.count(1), 2);
        let t = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&t);
        assert_eq!(sd.complex.count(2), 6);
        assert_eq!(sd.complex.n_vertices(), 7);
        assert_eq!(sd.complex.euler_characteristic(), 1);
    }

    #[test]
    fn flag_signs_on_interval() {
        let i = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        let sd = barycentric_subdivision(&i);
        let b = sd.barycenter(1, 0);
        assert_eq!(sd.flag_sign(&i, &[0, b]), 1);
        assert_eq!(sd.flag_sign(&i, &[1, b]), -1);
    }
}
