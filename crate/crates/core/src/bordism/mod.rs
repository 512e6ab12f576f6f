//! The bordism category with `q`-form `G` backgrounds.
//!
//! An object is a closed `(d−1)`-manifold `Σ` with a skeleton pair and a class
//! `b ∈ H^{q+1}(Σ, sk_dual; G)`. A morphism is a `d`-manifold `M` whose boundary
//! is identified with the ends, decorated by `B ∈ H^{q+1}(M, R; G)`, where `R`
//! is the image of `sk_dual` on both ends. Everything lives on the working
//! subdivision of the slices.

mod compose;
mod fixtures;

pub use compose::{compose, Composition, MayerVietorisReport};
pub use fixtures::{bent_in, bent_out, circle_slice, closed, copants, disk_in, disk_out, pants, skeleton_change_cylinder, swap};

use crate::complex::{
    cohomology, coboundary, extend_by_zero, induced_pullback, pullback_cochain, sequence_segment, Chain, Cochain, CohomologyGroup,
    SequenceSegment, SimplicialMap, SimplicialPair, Subcomplex,
};
use crate::error::{Error, Result};
use crate::exactalg::{solve_congruences, FinAbGroup, GroupElement, Homomorphism};
use crate::manifold::{cylinder, skeleton_pair, BoundaryEmbedding, Direction, SkeletonKind, SkeletonPair, SliceComplex, TriangulatedManifold};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Bulk dimension `d`, form degree `q ≤ d − 2` and coefficient group `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub d: usize,
    pub q: usize,
    pub group: FinAbGroup,
}

impl Symmetry {
    pub fn new(d: usize, q: usize, group: FinAbGroup) -> Result<Self> {
        if d < 2 || q + 2 > d {
            return Err(Error::Invalid(format!("a {q}-form symmetry needs q ≤ d − 2, got d = {d}")));
        }
        Ok(Symmetry { d, q, group })
    }

    /// `(d, d − q − 2, G*)`.
    pub fn dual(&self) -> Symmetry {
        Symmetry { d: self.d, q: self.d - self.q - 2, group: self.group.dual() }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} q={} G={}", self.d, self.q, self.group)
    }
}

/// A slice `Σ` with its skeleton pair and the groups of the sequence
/// `Hq(Σ) → Hq(sk_dual) → H^{q+1}(Σ, sk_dual) → H^{q+1}(Σ)`.
pub struct Slice {
    pub symmetry: Symmetry,
    pub pair: Arc<SkeletonPair>,
    pub segment: SequenceSegment,
    identity: OnceLock<Arc<Bordism>>,
    dual: OnceLock<Arc<Slice>>,
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Slice({}, {} vertices, {:?}, backgrounds {})",
            self.symmetry,
            self.pair.slice.n_vertices(),
            self.pair.kind,
            self.backgrounds().group()
        )
    }
}

impl Slice {
    pub fn new(symmetry: &Symmetry, pair: Arc<SkeletonPair>) -> Result<Arc<Slice>> {
        if pair.d != symmetry.d || pair.q != symmetry.q {
            return Err(Error::Mismatch(format!("pair for (d, q) = ({}, {}) used with {symmetry}", pair.d, pair.q)));
        }
        let segment = sequence_segment(&pair.relative_pair(), symmetry.q, &symmetry.group)?;
        Ok(Arc::new(Slice { symmetry: symmetry.clone(), pair, segment, identity: OnceLock::new(), dual: OnceLock::new() }))
    }

    /// Subdivides `base` and takes the standard pair of the given kind.
    pub fn standard(symmetry: &Symmetry, base: &TriangulatedManifold, kind: SkeletonKind) -> Result<Arc<Slice>> {
        if base.dim + 1 != symmetry.d {
            return Err(Error::Mismatch(format!("a slice of dimension {} for d = {}", base.dim, symmetry.d)));
        }
        let sc = SliceComplex::subdivide(base)?;
        Slice::new(symmetry, Arc::new(skeleton_pair(&sc, symmetry.q, kind)?))
    }

    /// The empty slice.
    pub fn empty(symmetry: &Symmetry) -> Result<Arc<Slice>> {
        let sc = SliceComplex::empty(symmetry.d - 1);
        Slice::new(symmetry, Arc::new(skeleton_pair(&sc, symmetry.q, SkeletonKind::Triangulation)?))
    }

    pub fn is_empty(&self) -> bool {
        self.pair.slice.working.is_empty()
    }

    pub fn working(&self) -> &Arc<TriangulatedManifold> {
        &self.pair.slice.working
    }

    /// `H^{q+1}(Σ, sk_dual; G)`.
    pub fn backgrounds(&self) -> &Arc<CohomologyGroup> {
        &self.segment.h_rel
    }

    /// Same symmetry and structurally equal pair.
    pub fn same(&self, other: &Slice) -> bool {
        std::ptr::eq(self, other) || (self.symmetry == other.symmetry && *self.pair == *other.pair)
    }

    pub fn object(self: &Arc<Self>, coords: Vec<u64>) -> Result<DecoratedObject> {
        let b = self.backgrounds().group().element(coords)?;
        Ok(DecoratedObject { slice: self.clone(), b })
    }

    /// All objects over this slice.
    pub fn objects(self: &Arc<Self>) -> Result<Vec<DecoratedObject>> {
        Ok(self.backgrounds().group().enumerate()?.map(|b| DecoratedObject { slice: self.clone(), b }).collect())
    }

    /// `Σ₁ ⊔ Σ₂`.
    pub fn disjoint_union(&self, other: &Slice) -> Result<Arc<Slice>> {
        if self.symmetry != other.symmetry {
            return Err(Error::Mismatch("disjoint union of slices with different symmetries".into()));
        }
        Slice::new(&self.symmetry, Arc::new(self.pair.disjoint_union(&other.pair)?))
    }

    /// The same slice for the dual symmetry, with `sk` and `sk_dual` exchanged.
    pub fn dual(&self) -> Result<Arc<Slice>> {
        if let Some(s) = self.dual.get() {
            return Ok(s.clone());
        }
        let s = Slice::new(&self.symmetry.dual(), Arc::new(self.pair.swapped()))?;
        Ok(self.dual.get_or_init(|| s).clone())
    }

    /// `Σ × [0, 1]` between two copies of this slice.
    pub fn identity_cylinder(self: &Arc<Self>) -> Result<Arc<Bordism>> {
        if let Some(b) = self.identity.get() {
            return Ok(b.clone());
        }
        let b = Bordism::cylinder(self, self, 1)?;
        Ok(self.identity.get_or_init(|| b).clone())
    }
}

/// An object `(Σ, b)`.
#[derive(Clone)]
pub struct DecoratedObject {
    pub slice: Arc<Slice>,
    pub b: GroupElement,
}

impl PartialEq for DecoratedObject {
    fn eq(&self, other: &Self) -> bool {
        self.b == other.b && self.slice.same(&other.slice)
    }
}

impl fmt::Debug for DecoratedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, b={})", self.slice, self.b)
    }
}

impl DecoratedObject {
    /// Canonical representative of `b`.
    pub fn cocycle(&self) -> Cochain {
        self.slice.backgrounds().representative(&self.b)
    }

    /// `g(b) ∈ H^{q+1}(Σ)`.
    pub fn absolute_class(&self) -> GroupElement {
        self.slice.segment.g.apply(&self.b)
    }

    /// `(Σ₁ ⊔ Σ₂, b₁ ⊕ b₂)`.
    pub fn disjoint_union(&self, other: &DecoratedObject) -> Result<DecoratedObject> {
        let slice = self.slice.disjoint_union(&other.slice)?;
        let c = concat(&self.cocycle(), &other.cocycle());
        let b = slice.backgrounds().class_of(&c)?;
        Ok(DecoratedObject { slice, b })
    }
}

/// Cochain on a disjoint union, whose simplices list the first summand first.
pub(crate) fn concat(a: &Cochain, b: &Cochain) -> Cochain {
    Cochain { degree: a.degree, values: a.values.iter().chain(&b.values).cloned().collect() }
}

/// Canonical `B` for an object, with the restrictions `(i₋*B, i₊*B)`.
#[derive(Clone, Debug)]
pub struct BackgroundSet {
    pub b_in: GroupElement,
    pub b_out: GroupElement,
    pub classes: Vec<GroupElement>,
}

/// An undecorated bordism `Σ₋ → Σ₊` with its background group.
pub struct Bordism {
    pub symmetry: Symmetry,
    pub manifold: Arc<TriangulatedManifold>,
    pub source: Arc<Slice>,
    pub target: Arc<Slice>,
    pub incoming: BoundaryEmbedding,
    pub outgoing: BoundaryEmbedding,
    /// `R`: images of `sk_dual` on both ends.
    pub relative: Subcomplex,
    /// `H^{q+1}(M, R; G)`.
    pub backgrounds: Arc<CohomologyGroup>,
    pub restrict_in: Homomorphism,
    pub restrict_out: Homomorphism,
    /// For cylinders: the projection of `M` onto the working complex of the
    /// source slice.
    pub projection: Option<Vec<u32>>,
    cycle: OnceLock<Option<Chain>>,
    dual: OnceLock<Arc<Bordism>>,
}

impl fmt::Debug for Bordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bordism({}, {} vertices, χ={}, backgrounds {})",
            self.symmetry,
            self.manifold.complex.n_vertices(),
            self.manifold.euler_characteristic(),
            self.backgrounds.group()
        )
    }
}

impl Bordism {
    /// `M: Σ₋ → Σ₊` with the vertex of `M` for every working vertex of each end.
    pub fn new(
        manifold: TriangulatedManifold,
        source: &Arc<Slice>,
        in_map: Vec<u32>,
        target: &Arc<Slice>,
        out_map: Vec<u32>,
    ) -> Result<Arc<Bordism>> {
        let incoming = BoundaryEmbedding { pair: source.pair.clone(), direction: Direction::Incoming, map: in_map };
        let outgoing = BoundaryEmbedding { pair: target.pair.clone(), direction: Direction::Outgoing, map: out_map };
        Bordism::assemble(Arc::new(manifold), source, incoming, target, outgoing, None)
    }

    pub(crate) fn assemble(
        manifold: Arc<TriangulatedManifold>,
        source: &Arc<Slice>,
        incoming: BoundaryEmbedding,
        target: &Arc<Slice>,
        outgoing: BoundaryEmbedding,
        projection: Option<Vec<u32>>,
    ) -> Result<Arc<Bordism>> {
        let symmetry = source.symmetry.clone();
        if target.symmetry != symmetry {
            return Err(Error::Mismatch("the ends carry different symmetries".into()));
        }
        if manifold.dim != symmetry.d && !manifold.is_empty() {
            return Err(Error::Mismatch(format!("a {}-manifold as a bordism for d = {}", manifold.dim, symmetry.d)));
        }
        if incoming.direction != Direction::Incoming || outgoing.direction != Direction::Outgoing {
            return Err(Error::BoundaryMismatch("ends given with the wrong directions".into()));
        }
        if *incoming.pair != *source.pair || *outgoing.pair != *target.pair {
            return Err(Error::BoundaryMismatch("embedding pairs differ from the slice pairs".into()));
        }
        incoming.check(&manifold)?;
        outgoing.check(&manifold)?;
        // The two ends are disjoint and together cover ∂M.
        let mut covered = vec![0u8; manifold.complex.n_vertices()];
        for &v in incoming.map.iter().chain(&outgoing.map) {
            covered[v as usize] += 1;
        }
        if covered.iter().any(|&c| c > 1) {
            return Err(Error::BoundaryMismatch("incoming and outgoing ends overlap".into()));
        }
        if let Some(v) = manifold.boundary().vertices().into_iter().find(|&v| covered[v as usize] == 0) {
            return Err(Error::BoundaryMismatch(format!("boundary vertex {v} belongs to neither end")));
        }
        let relative = incoming.dual_image(&manifold).union(&outgoing.dual_image(&manifold));
        let pair = SimplicialPair::new(manifold.complex.clone(), relative.clone())?;
        let backgrounds = cohomology(&pair, symmetry.q + 1, &symmetry.group);
        let f_in = SimplicialMap::new(source.working().complex.clone(), manifold.complex.clone(), incoming.map.clone())?;
        let f_out = SimplicialMap::new(target.working().complex.clone(), manifold.complex.clone(), outgoing.map.clone())?;
        let restrict_in = induced_pullback(&f_in, &backgrounds, source.backgrounds())?;
        let restrict_out = induced_pullback(&f_out, &backgrounds, target.backgrounds())?;
        Ok(Arc::new(Bordism {
            symmetry,
            manifold,
            source: source.clone(),
            target: target.clone(),
            incoming,
            outgoing,
            relative,
            backgrounds,
            restrict_in,
            restrict_out,
            projection,
            cycle: OnceLock::new(),
            dual: OnceLock::new(),
        }))
    }

    /// `Σ × [0, layers]` from `source` to `target`, which must share the
    /// underlying slice but may carry different skeleton pairs.
    pub fn cylinder(source: &Arc<Slice>, target: &Arc<Slice>, layers: usize) -> Result<Arc<Bordism>> {
        let c = cylinder(&source.pair, &target.pair, layers)?;
        let nv = source.pair.slice.n_vertices() as u32;
        let projection = (0..c.manifold.complex.n_vertices() as u32).map(|v| v % nv.max(1)).collect();
        Bordism::assemble(Arc::new(c.manifold), source, c.incoming, target, c.outgoing, Some(projection))
    }

    pub fn is_closed(&self) -> bool {
        self.source.is_empty() && self.target.is_empty()
    }

    /// `(M, R)`.
    pub fn pair(&self) -> SimplicialPair {
        SimplicialPair { total: self.manifold.complex.clone(), sub: self.relative.clone() }
    }

    pub fn decorate(self: &Arc<Self>, coords: Vec<u64>) -> Result<DecoratedBordism> {
        let class = self.backgrounds.group().element(coords)?;
        Ok(DecoratedBordism { bordism: self.clone(), class })
    }

    /// The class of a relative cocycle on `M`.
    pub fn decorate_cocycle(self: &Arc<Self>, c: &Cochain) -> Result<DecoratedBordism> {
        Ok(DecoratedBordism { bordism: self.clone(), class: self.backgrounds.class_of(c)? })
    }

    /// Every decoration of `M`.
    pub fn decorations(self: &Arc<Self>) -> Result<Vec<DecoratedBordism>> {
        Ok(self.backgrounds.group().enumerate()?.map(|class| DecoratedBordism { bordism: self.clone(), class }).collect())
    }

    /// `(i₋*B, i₊*B)`.
    pub fn restrict(&self, class: &GroupElement) -> (GroupElement, GroupElement) {
        (self.restrict_in.apply(class), self.restrict_out.apply(class))
    }

    /// The `B` with `i₋*B = b_in` and `i₊*B = b_out`, in increasing order.
    /// Solves the restriction equations instead of enumerating all `B`.
    pub fn backgrounds_with(&self, b_in: &GroupElement, b_out: &GroupElement) -> Result<BackgroundSet> {
        let (fi, fo) = (&self.restrict_in, &self.restrict_out);
        let rows: Vec<Vec<u64>> = fi.matrix.iter().chain(&fo.matrix).cloned().collect();
        let moduli: Vec<u64> = fi.target.factors().iter().chain(fo.target.factors()).copied().collect();
        let y: Vec<u64> = b_in.coords.iter().chain(&b_out.coords).copied().collect();
        let group = self.backgrounds.group();
        let mut classes = Vec::new();
        if let Some((x, kernel)) = solve_congruences(&rows, &moduli, group.factors(), &y) {
            let x = GroupElement::new(x);
            let kernel: Vec<GroupElement> = kernel.into_iter().map(GroupElement::new).collect();
            classes = group.span(&kernel)?.iter().map(|k| group.add(&x, k)).collect();
            classes.sort();
        }
        Ok(BackgroundSet { b_in: b_in.clone(), b_out: b_out.clone(), classes })
    }

    /// Fundamental cycle of `M`; `None` for the empty manifold.
    pub fn fundamental_cycle(&self) -> Result<Option<&Chain>> {
        if let Some(c) = self.cycle.get() {
            return Ok(c.as_ref());
        }
        let c = if self.manifold.is_empty() { None } else { Some(self.manifold.fundamental_cycle()?) };
        Ok(self.cycle.get_or_init(|| c).as_ref())
    }

    /// Vertex order for cup products: boundary `sk` vertices, then boundary
    /// `sk_dual` vertices, then the interior. On a boundary top simplex this
    /// puts exactly the `sk` vertices in front, which makes
    /// `⟨A ∪ B, [M]⟩` independent of representatives vanishing on the images
    /// of `sk` (for `A`) and `sk_dual` (for `B`).
    pub fn cup_order(&self) -> Vec<u32> {
        let n = self.manifold.complex.n_vertices();
        let mut class = vec![2u32; n];
        for e in [&self.incoming, &self.outgoing] {
            for v in e.pair.sk_dual.vertices() {
                class[e.map[v as usize] as usize] = 1;
            }
            for v in e.pair.sk.vertices() {
                class[e.map[v as usize] as usize] = 0;
            }
        }
        (0..n).map(|v| class[v] * n as u32 + v as u32).collect()
    }

    pub fn incoming_map(&self) -> Result<SimplicialMap> {
        SimplicialMap::new(self.source.working().complex.clone(), self.manifold.complex.clone(), self.incoming.map.clone())
    }

    pub fn outgoing_map(&self) -> Result<SimplicialMap> {
        SimplicialMap::new(self.target.working().complex.clone(), self.manifold.complex.clone(), self.outgoing.map.clone())
    }

    /// `δ` of `β`'s representative extended by zero from the outgoing end: a
    /// class vanishing on both ends, perpendicular to the slices.
    pub fn perpendicular(&self, beta: &GroupElement) -> Result<Cochain> {
        let h = &self.target.segment.h_x;
        let g = &self.symmetry.group;
        let c = h.representative(&h.group().element(beta.coords.clone())?);
        Ok(coboundary(&self.manifold.complex, &extend_by_zero(&self.outgoing_map()?, &c, g), g))
    }

    /// Pullback of an object cocycle along the cylinder projection.
    pub fn parallel(&self, b: &GroupElement) -> Result<Cochain> {
        let proj = self.projection.as_ref().ok_or_else(|| Error::Invalid("not a cylinder".into()))?;
        let f = SimplicialMap::new(self.manifold.complex.clone(), self.source.working().complex.clone(), proj.clone())?;
        let h = self.source.backgrounds();
        Ok(pullback_cochain(&f, &h.representative(&h.group().element(b.coords.clone())?), &self.symmetry.group))
    }

    /// The same manifold as a bordism for the dual symmetry.
    pub fn dual(&self) -> Result<Arc<Bordism>> {
        if let Some(b) = self.dual.get() {
            return Ok(b.clone());
        }
        let (s, t) = (self.source.dual()?, self.target.dual()?);
        let inc = BoundaryEmbedding { pair: s.pair.clone(), direction: Direction::Incoming, map: self.incoming.map.clone() };
        let out = BoundaryEmbedding { pair: t.pair.clone(), direction: Direction::Outgoing, map: self.outgoing.map.clone() };
        let b = Bordism::assemble(self.manifold.clone(), &s, inc, &t, out, self.projection.clone())?;
        Ok(self.dual.get_or_init(|| b).clone())
    }

    /// `M₁ ⊔ M₂`, with the ends concatenated.
    pub fn disjoint_union(&self, other: &Bordism) -> Result<Arc<Bordism>> {
        let source = self.source.disjoint_union(&other.source)?;
        let target = self.target.disjoint_union(&other.target)?;
        let manifold = if other.manifold.is_empty() {
            (*self.manifold).clone()
        } else if self.manifold.is_empty() {
            (*other.manifold).clone()
        } else {
            self.manifold.disjoint_union(&other.manifold)?
        };
        let shift = self.manifold.complex.n_vertices() as u32;
        let join = |a: &[u32], b: &[u32]| a.iter().copied().chain(b.iter().map(|&v| v + shift)).collect::<Vec<u32>>();
        let incoming = BoundaryEmbedding { pair: source.pair.clone(), direction: Direction::Incoming, map: join(&self.incoming.map, &other.incoming.map) };
        let outgoing = BoundaryEmbedding { pair: target.pair.clone(), direction: Direction::Outgoing, map: join(&self.outgoing.map, &other.outgoing.map) };
        Bordism::assemble(Arc::new(manifold), &source, incoming, &target, outgoing, None)
    }
}

/// A morphism `(M, B)`.
#[derive(Clone)]
pub struct DecoratedBordism {
    pub bordism: Arc<Bordism>,
    pub class: GroupElement,
}

impl fmt::Debug for DecoratedBordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, B={})", self.bordism, self.class)
    }
}

impl DecoratedBordism {
    pub fn source(&self) -> DecoratedObject {
        DecoratedObject { slice: self.bordism.source.clone(), b: self.bordism.restrict_in.apply(&self.class) }
    }

    pub fn target(&self) -> DecoratedObject {
        DecoratedObject { slice: self.bordism.target.clone(), b: self.bordism.restrict_out.apply(&self.class) }
    }

    pub fn cocycle(&self) -> Cochain {
        self.bordism.backgrounds.representative(&self.class)
    }

    /// `(M₁ ⊔ M₂, B₁ ⊕ B₂)`.
    pub fn disjoint_union(&self, other: &DecoratedBordism) -> Result<DecoratedBordism> {
        let bordism = self.bordism.disjoint_union(&other.bordism)?;
        bordism.decorate_cocycle(&concat(&self.cocycle(), &other.cocycle()))
    }

    /// Decomposition `B = b ⊕ ι(β)` of a decorated endomorphism cylinder.
    pub fn cylinder_form(&self) -> Result<(GroupElement, GroupElement)> {
        let m = &self.bordism;
        if !m.source.same(&m.target) {
            return Err(Error::Invalid("not an endomorphism".into()));
        }
        let (b_in, b_out) = m.restrict(&self.class);
        if b_in != b_out {
            return Err(Error::Invalid(format!("ends carry different classes {b_in} and {b_out}")));
        }
        let h = &m.backgrounds;
        let rest = h.group().sub(&self.class, &h.class_of(&m.parallel(&b_in)?)?);
        for beta in m.target.segment.h_x.group().enumerate()? {
            if h.class_of(&m.perpendicular(&beta)?)? == rest {
                return Ok((b_in, beta));
            }
        }
        Err(Error::Invalid("class is not of the form b ⊕ ι(β)".into()))
    }
}

/// `(Σ × I, b ⊕ 0)`.
pub fn identity(obj: &DecoratedObject) -> Result<DecoratedBordism> {
    symmetry_cylinder(obj, &obj.slice.segment.h_x.group().zero())
}

/// `(Σ × I, b ⊕ ι(β))` for `β ∈ Hq(Σ; G)`. The parallel part is the pullback
/// of `b` along the projection to the incoming end; the perpendicular part
/// is `δ` of `β` extended by zero from the outgoing end.
pub fn symmetry_cylinder(obj: &DecoratedObject, beta: &GroupElement) -> Result<DecoratedBordism> {
    let m = obj.slice.identity_cylinder()?;
    let g = &obj.slice.symmetry.group;
    let c = m.parallel(&obj.b)?.add(&m.perpendicular(beta)?, g);
    m.decorate_cocycle(&c)
}

/// Some `B` on the cylinder from `source` to `target` restricting to
/// `(b, b')`, or `None` when there is none.
pub fn skeleton_change(source: &DecoratedObject, target: &DecoratedObject) -> Result<Option<DecoratedBordism>> {
    let m = skeleton_change_cylinder(&source.slice, &target.slice)?;
    let set = m.backgrounds_with(&source.b, &target.b)?;
    Ok(set.classes.first().map(|c| DecoratedBordism { bordism: m.clone(), class: c.clone() }))
}

#[cfg(test)]
mod tests;
