use super::{BoundaryEmbedding, Direction, SkeletonPair, TriangulatedManifold};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Prism triangulation of `Σ × [0, layers]` with its two ends.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub manifold: TriangulatedManifold,
    /// `Σ × {0}`.
    pub incoming: BoundaryEmbedding,
    /// `Σ × {layers}`.
    pub outgoing: BoundaryEmbedding,
}

/// `Σ × [0, layers]`, vertex `(v, t)` numbered `t·n + v`. Each top simplex
/// `[v₀…vₖ]` of each layer splits into the prisms
/// `[(v₀,t)…(vᵢ,t),(vᵢ,t+1)…(vₖ,t+1)]` with sign `(−1)ⁱ`. The two pairs may
/// differ but must live on the same slice.
pub fn cylinder(incoming: &Arc<SkeletonPair>, outgoing: &Arc<SkeletonPair>, layers: usize) -> Result<Cylinder> {
    if incoming.slice != outgoing.slice || incoming.d != outgoing.d {
        return Err(Error::Mismatch("cylinder ends live on different slices".into()));
    }
    if layers == 0 {
        return Err(Error::Invalid("a cylinder needs at least one layer".into()));
    }
    let w = &incoming.slice.working;
    let nv = w.complex.n_vertices() as u32;
    let manifold = if w.is_empty() {
        TriangulatedManifold::empty(incoming.d)
    } else {
        let mut facets = Vec::new();
        for (s, o) in w.oriented_facets() {
            for t in 0..layers as u32 {
                for i in 0..s.len() {
                    let p: Vec<u32> =
                        s[..=i].iter().map(|&v| t * nv + v).chain(s[i..].iter().map(|&v| (t + 1) * nv + v)).collect();
                    facets.push((p, if i % 2 == 0 { o } else { -o }));
                }
            }
        }
        TriangulatedManifold::from_oriented_facets((layers + 1) * nv as usize, w.dim + 1, &facets)?
    };
    let top = layers as u32 * nv;
    let incoming = BoundaryEmbedding { pair: incoming.clone(), direction: Direction::Incoming, map: (0..nv).collect() };
    let outgoing = BoundaryEmbedding { pair: outgoing.clone(), direction: Direction::Outgoing, map: (0..nv).map(|v| top + v).collect() };
    incoming.check(&manifold)?;
    outgoing.check(&manifold)?;
    Ok(Cylinder { manifold, incoming, outgoing })
}

/// Cone over each component of `Σ`, one apex per component; apexes follow
/// the slice vertices. A ball when `Σ` is a union of spheres.
pub fn cone(pair: &Arc<SkeletonPair>, direction: Direction) -> Result<(TriangulatedManifold, BoundaryEmbedding)> {
    let w = &pair.slice.working;
    let nv = w.complex.n_vertices() as u32;
    let comps = w.complex.components();
    let mut apex = vec![0u32; nv as usize];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            apex[v as usize] = nv + i as u32;
        }
    }
    let k = w.dim + 1;
    // Omitting the apex (last position) induces `ε·o·(−1)^k`; choose ε so this is `direction.sign()·o`.
    let eps = direction.sign() * if k.is_multiple_of(2) { 1 } else { -1 };
    let facets: Vec<(Vec<u32>, i8)> = w
        .oriented_facets()
        .into_iter()
        .map(|(mut s, o)| {
            let a = apex[s[0] as usize];
            s.push(a);
            (s, eps * o)
        })
        .collect();
    let m = if w.is_empty() {
        TriangulatedManifold::empty(pair.d)
    } else {
        TriangulatedManifold::from_oriented_facets(nv as usize + comps.len(), k, &facets)?
    };
    let e = BoundaryEmbedding { pair: pair.clone(), direction, map: (0..nv).collect() };
    e.check(&m)?;
    Ok((m, e))
}

/// Result of gluing `M₋` and `M₊`: vertices of `M₋` keep their ids, and
/// `plus_map` sends each vertex of `M₊` to its id in the glued manifold.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub manifold: TriangulatedManifold,
    pub plus_map: Vec<u32>,
}

/// Glues the outgoing end `out` of `M₋` to the incoming end `inc` of `M₊`.
/// Both ends must carry the same slice and skeleton pair.
pub fn glue(minus: &TriangulatedManifold, out: &BoundaryEmbedding, plus: &TriangulatedManifold, inc: &BoundaryEmbedding) -> Result<Gluing> {
    if out.direction != Direction::Outgoing || inc.direction != Direction::Incoming {
        return Err(Error::BoundaryMismatch("gluing needs an outgoing end of M₋ and an incoming end of M₊".into()));
    }
    if out.pair.slice != inc.pair.slice {
        return Err(Error::BoundaryMismatch("the glued ends carry different slices".into()));
    }
    if *out.pair != *inc.pair {
        return Err(Error::BoundaryMismatch("the glued ends carry different skeleton pairs".into()));
    }
    out.check(minus)?;
    inc.check(plus)?;
    let n_minus = minus.complex.n_vertices() as u32;
    let mut plus_map = vec![u32::MAX; plus.complex.n_vertices()];
    for (s, &p) in inc.map.iter().enumerate() {
        plus_map[p as usize] = out.map[s];
    }
    let mut next = n_minus;
    for slot in plus_map.iter_mut().filter(|x| **x == u32::MAX) {
        *slot = next;
        next += 1;
    }
    if minus.is_empty() && plus.is_empty() {
        return Ok(Gluing { manifold: TriangulatedManifold::empty(minus.dim), plus_map });
    }
    let mut facets = minus.oriented_facets();
    facets.extend(plus.oriented_facets().into_iter().map(|(s, o)| (s.iter().map(|&v| plus_map[v as usize]).collect(), o)));
    let dim = if minus.is_empty() { plus.dim } else { minus.dim };
    let manifold = TriangulatedManifold::from_oriented_facets(next as usize, dim, &facets)?;
    let sigma = out.pair.slice.working.complex.counts();
    check_counts(&manifold, &[&minus.complex.counts(), &plus.complex.counts()], &sigma)?;
    Ok(Gluing { manifold, plus_map })
}

/// Identifies the incoming end `inc` of `M` with its outgoing end `out`.
/// Returns the glued manifold and the new id of every old vertex.
pub fn glue_self(m: &TriangulatedManifold, out: &BoundaryEmbedding, inc: &BoundaryEmbedding) -> Result<(TriangulatedManifold, Vec<u32>)> {
    if out.direction != Direction::Outgoing || inc.direction != Direction::Incoming {
        return Err(Error::BoundaryMismatch("self-gluing needs one outgoing and one incoming end".into()));
    }
    if *out.pair != *inc.pair {
        return Err(Error::BoundaryMismatch("the glued ends carry different skeleton pairs".into()));
    }
    out.check(m)?;
    inc.check(m)?;
    let n = m.complex.n_vertices();
    let mut target: Vec<u32> = (0..n as u32).collect();
    for (s, &p) in inc.map.iter().enumerate() {
        target[p as usize] = out.map[s];
    }
    let mut compact = vec![u32::MAX; n];
    let mut next = 0u32;
    for v in 0..n {
        if target[v] == v as u32 {
            compact[v] = next;
            next += 1;
        }
    }
    let relabel: Vec<u32> = (0..n).map(|v| compact[target[v] as usize]).collect();
    let facets: Vec<(Vec<u32>, i8)> =
        m.oriented_facets().into_iter().map(|(s, o)| (s.iter().map(|&v| relabel[v as usize]).collect(), o)).collect();
    let glued = TriangulatedManifold::from_oriented_facets(next as usize, m.dim, &facets)?;
    check_counts(&glued, &[&m.complex.counts()], &out.pair.slice.working.complex.counts())?;
    Ok((glued, relabel))
}

/// `χ`-level bookkeeping: every simplex outside `σ` must survive the gluing.
fn check_counts(glued: &TriangulatedManifold, parts: &[&Vec<usize>], sigma: &[usize]) -> Result<()> {
    let got = glued.complex.counts();
    for (k, &g) in got.iter().enumerate() {
        let expect: usize = parts.iter().map(|p| p.get(k).copied().unwrap_or(0)).sum::<usize>() - sigma.get(k).copied().unwrap_or(0);
        if g != expect {
            return Err(Error::Validation(vec![format!(
                "gluing identifies {}-simplices outside the glued boundary ({g} instead of {expect})",
                k
            )]));
        }
    }
    Ok(())
}

/// Removes the open star of an interior vertex. Returns the new manifold and
/// the new id of every old vertex (`u32::MAX` for the removed one).
pub fn remove_open_star(m: &TriangulatedManifold, v: u32) -> Result<(TriangulatedManifold, Vec<u32>)> {
    if v as usize >= m.complex.n_vertices() {
        return Err(Error::Invalid(format!("vertex {v} out of range")));
    }
    if m.boundary().contains(0, v as usize) {
        return Err(Error::Invalid(format!("vertex {v} lies on the boundary")));
    }
    let relabel: Vec<u32> = (0..m.complex.n_vertices() as u32)
        .map(|w| match w.cmp(&v) {
            std::cmp::Ordering::Less => w,
            std::cmp::Ordering::Equal => u32::MAX,
            std::cmp::Ordering::Greater => w - 1,
        })
        .collect();
    let facets: Vec<(Vec<u32>, i8)> = m
        .oriented_facets()
        .into_iter()
        .filter(|(s, _)| !s.contains(&v))
        .map(|(s, o)| (s.iter().map(|&w| relabel[w as usize]).collect(), o))
        .collect();
    let out = TriangulatedManifold::from_oriented_facets(m.complex.n_vertices() - 1, m.dim, &facets)?;
    Ok((out, relabel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{find_boundary_embedding, library, skeleton_pair, SkeletonKind, SliceComplex};

    fn circle_pair() -> Arc<SkeletonPair> {
        let s = SliceComplex::subdivide(&library("circle").unwrap()).unwrap();
        Arc::new(skeleton_pair(&s, 0, SkeletonKind::Triangulation).unwrap())
    }

    #[test]
    fn cylinder_and_composition() {
        let p = circle_pair();
        let a = cylinder(&p, &p, 1).unwrap();
        let b = cylinder(&p, &p, 2).unwrap();
        assert_eq!(a.manifold.euler_characteristic(), 0);
        let g = glue(&a.manifold, &a.outgoing, &b.manifold, &b.incoming).unwrap();
        let c = cylinder(&p, &p, 3).unwrap();
        assert_eq!(g.manifold.complex.counts(), c.manifold.complex.counts());
        // χ(M) = χ(M₋) + χ(M₊) − χ(σ) with χ(S¹) = 0.
        assert_eq!(g.manifold.euler_characteristic(), 0);
    }

    #[test]
    fn closing_a_cylinder_gives_a_torus() {
        let p = circle_pair();
        let c = cylinder(&p, &p, 3).unwrap();
        let (t, _) = glue_self(&c.manifold, &c.outgoing, &c.incoming).unwrap();
        assert!(t.is_closed());
        assert_eq!(t.euler_characteristic(), 0);
        // Two layers collapse simplices once closed up.
        let c = cylinder(&p, &p, 2).unwrap();
        assert!(glue_self(&c.manifold, &c.outgoing, &c.incoming).is_err());
    }

    #[test]
    fn two_disks_make_a_sphere() {
        let p = circle_pair();
        let (d1, e1) = cone(&p, Direction::Outgoing).unwrap();
        let (d2, e2) = cone(&p, Direction::Incoming).unwrap();
        let g = glue(&d1, &e1, &d2, &e2).unwrap();
        assert!(g.manifold.is_closed());
        assert_eq!(g.manifold.euler_characteristic(), 2);
    }

    #[test]
    fn wrong_direction_rejected() {
        let p = circle_pair();
        let c = cylinder(&p, &p, 1).unwrap();
        assert!(glue(&c.manifold, &c.incoming, &c.manifold, &c.incoming).is_err());
    }

    #[test]
    fn pants_from_star_removal() {
        let p = circle_pair();
        let c = cylinder(&p, &p, 4).unwrap();
        let nv = p.slice.n_vertices() as u32;
        let (pants, relabel) = remove_open_star(&c.manifold, 2 * nv).unwrap();
        assert_eq!(pants.boundary_components().len(), 3);
        assert_eq!(pants.euler_characteristic(), -1);
        let inc = c.incoming.relabeled(&relabel);
        let out = c.outgoing.relabeled(&relabel);
        inc.check(&pants).unwrap();
        out.check(&pants).unwrap();
        let hole = pants.boundary_components().into_iter().find(|comp| !comp.contains(&inc.map[0]) && !comp.contains(&out.map[0])).unwrap();
        find_boundary_embedding(&pants, &p, Direction::Incoming, Some(&hole)).unwrap();
        find_boundary_embedding(&pants, &p, Direction::Outgoing, Some(&hole)).unwrap();
    }

    #[test]
    fn reflected_end_of_a_cylinder() {
        let p = circle_pair();
        let c = cylinder(&p, &p, 2).unwrap();
        let bottom: Vec<u32> = c.incoming.map.clone();
        let e = find_boundary_embedding(&c.manifold, &p, Direction::Outgoing, Some(&bottom)).unwrap();
        assert_ne!(e.map, c.incoming.map);
    }
}
