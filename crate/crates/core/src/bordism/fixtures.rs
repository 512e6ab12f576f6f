//! Standard bordisms: cylinders, cones, bent annuli and pairs of pants.
//! Pants and bent annuli need one-dimensional slices.

use super::{Bordism, DecoratedBordism, DecoratedObject, Slice, Symmetry};
use crate::error::{Error, Result};
use crate::manifold::{cone, cylinder, find_boundary_embedding, library, remove_open_star, Direction, SkeletonKind, TriangulatedManifold};
use std::sync::Arc;

/// The subdivided triangle boundary with its standard pair.
pub fn circle_slice(symmetry: &Symmetry) -> Result<Arc<Slice>> {
    Slice::standard(symmetry, &library("circle")?, SkeletonKind::Triangulation)
}

/// `M: ∅ → ∅`.
pub fn closed(symmetry: &Symmetry, manifold: TriangulatedManifold) -> Result<Arc<Bordism>> {
    if !manifold.is_closed() {
        return Err(Error::Invalid("a closed bordism needs a closed manifold".into()));
    }
    let empty = Slice::empty(symmetry)?;
    Bordism::new(manifold, &empty, Vec::new(), &empty, Vec::new())
}

/// Cone on `Σ` as a bordism `∅ → Σ`.
pub fn disk_in(slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    let (m, e) = cone(&slice.pair, Direction::Outgoing)?;
    Bordism::new(m, &Slice::empty(&slice.symmetry)?, Vec::new(), slice, e.map)
}

/// Cone on `Σ` as a bordism `Σ → ∅`.
pub fn disk_out(slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    let (m, e) = cone(&slice.pair, Direction::Incoming)?;
    Bordism::new(m, slice, e.map, &Slice::empty(&slice.symmetry)?, Vec::new())
}

/// Cylinder between two pairs on the same slice.
pub fn skeleton_change_cylinder(source: &Arc<Slice>, target: &Arc<Slice>) -> Result<Arc<Bordism>> {
    Bordism::cylinder(source, target, 1)
}

/// Braiding `Σ₁ ⊔ Σ₂ → Σ₂ ⊔ Σ₁` on `(b₁, b₂)`: the identity cylinder of
/// `Σ₁ ⊔ Σ₂` with the outgoing end relabeled.
pub fn swap(first: &DecoratedObject, second: &DecoratedObject) -> Result<DecoratedBordism> {
    let (s1, s2) = (&first.slice, &second.slice);
    let source = s1.disjoint_union(s2)?;
    let target = s2.disjoint_union(s1)?;
    let c = cylinder(&source.pair, &source.pair, 1)?;
    let (n1, n2) = (s1.pair.slice.n_vertices() as u32, s2.pair.slice.n_vertices() as u32);
    let top = n1 + n2;
    let out_map: Vec<u32> = (0..n2).map(|w| top + n1 + w).chain((0..n1).map(|w| top + w)).collect();
    let outgoing = crate::manifold::BoundaryEmbedding { pair: target.pair.clone(), direction: Direction::Outgoing, map: out_map };
    let projection = (0..c.manifold.complex.n_vertices() as u32).map(|v| v % top.max(1)).collect();
    let m = Bordism::assemble(Arc::new(c.manifold), &source, c.incoming, &target, outgoing, Some(projection))?;
    let b = first.disjoint_union(second)?;
    let class = m.backgrounds.class_of(&m.parallel(&b.b)?)?;
    Ok(DecoratedBordism { bordism: m, class })
}

/// A four-layer cylinder over a one-dimensional slice with the open star of
/// a middle vertex removed, and the vertices of the resulting hole.
fn holed_cylinder(slice: &Arc<Slice>) -> Result<(TriangulatedManifold, Vec<u32>, Vec<u32>, Vec<u32>)> {
    if slice.symmetry.d != 2 {
        return Err(Error::Invalid("pants are built over one-dimensional slices".into()));
    }
    let c = cylinder(&slice.pair, &slice.pair, 4)?;
    let nv = slice.pair.slice.n_vertices() as u32;
    let centre = 2 * nv;
    let hole: Vec<u32> = c
        .manifold
        .complex
        .simplices(1)
        .iter()
        .filter_map(|e| if e[0] == centre { Some(e[1]) } else if e[1] == centre { Some(e[0]) } else { None })
        .collect();
    let (m, relabel) = remove_open_star(&c.manifold, centre)?;
    let hole: Vec<u32> = hole.iter().map(|&v| relabel[v as usize]).collect();
    let bottom = c.incoming.map.iter().map(|&v| relabel[v as usize]).collect();
    let top = c.outgoing.map.iter().map(|&v| relabel[v as usize]).collect();
    Ok((m, bottom, top, hole))
}

/// Pair of pants `Σ ⊔ Σ → Σ`; the second incoming circle is the hole.
pub fn pants(slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    let (m, bottom, top, hole) = holed_cylinder(slice)?;
    let h = find_boundary_embedding(&m, &slice.pair, Direction::Incoming, Some(&hole))?;
    let source = slice.disjoint_union(slice)?;
    Bordism::new(m, &source, bottom.into_iter().chain(h.map).collect(), slice, top)
}

/// Pair of pants `Σ → Σ ⊔ Σ`; the second outgoing circle is the hole.
pub fn copants(slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    let (m, bottom, top, hole) = holed_cylinder(slice)?;
    let h = find_boundary_embedding(&m, &slice.pair, Direction::Outgoing, Some(&hole))?;
    let target = slice.disjoint_union(slice)?;
    Bordism::new(m, slice, bottom, &target, top.into_iter().chain(h.map).collect())
}

/// Bent annulus `∅ → Σ ⊔ Σ`. Two layers keep an interior circle, so that
/// gluing bent annuli never identifies simplices outside the cut.
pub fn bent_in(slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    let c = cylinder(&slice.pair, &slice.pair, 2)?;
    let first = find_boundary_embedding(&c.manifold, &slice.pair, Direction::Outgoing, Some(&c.incoming.map))?;
    let target = slice.disjoint_union(slice)?;
    let out = first.map.into_iter().chain(c.outgoing.map).collect();
    Bordism::new(c.manifold, &Slice::empty(&slice.symmetry)?, Vec::new(), &target, out)
}

/// Bent annulus `Σ ⊔ Σ → ∅`.
pub fn bent_out(slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    let c = cylinder(&slice.pair, &slice.pair, 2)?;
    let second = find_boundary_embedding(&c.manifold, &slice.pair, Direction::Incoming, Some(&c.outgoing.map))?;
    let source = slice.disjoint_union(slice)?;
    let inc = c.incoming.map.into_iter().chain(second.map).collect();
    Bordism::new(c.manifold, &source, inc, &Slice::empty(&slice.symmetry)?, Vec::new())
}
