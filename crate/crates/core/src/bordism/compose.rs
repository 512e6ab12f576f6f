use super::{Bordism, DecoratedBordism};
use crate::complex::{
    coboundary, coboundary_preimage, cohomology, cohomology_order, extend_by_zero, induced_pullback, permutation_sign,
    pullback_cochain, Cochain, CohomologyGroup, SimplicialMap, SimplicialPair, Subcomplex,
};
use crate::error::{Error, Result};
use crate::exactalg::GroupElement;
use crate::manifold::glue;
use num_rational::Ratio;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

/// `M = M₊ ∘ M₋` glued along the cut `σ`, reusable for every pair of
/// decorations.
pub struct Composition {
    pub lower: Arc<Bordism>,
    pub upper: Arc<Bordism>,
    pub glued: Arc<Bordism>,
    /// Id in `M` of each vertex of `M₊`; vertices of `M₋` keep their ids.
    pub plus_map: Vec<u32>,
    fine: OnceLock<Arc<CohomologyGroup>>,
}

impl Composition {
    pub fn new(upper: &Arc<Bordism>, lower: &Arc<Bordism>) -> Result<Composition> {
        if !lower.target.same(&upper.source) {
            return Err(Error::BoundaryMismatch("the outgoing slice of M₋ differs from the incoming slice of M₊".into()));
        }
        let g = glue(&lower.manifold, &lower.outgoing, &upper.manifold, &upper.incoming)?;
        let outgoing = upper.outgoing.relabeled(&g.plus_map);
        let projection = match (&lower.projection, &upper.projection) {
            (Some(pl), Some(pu)) => {
                let mut p = vec![0u32; g.manifold.complex.n_vertices()];
                p[..pl.len()].copy_from_slice(pl);
                for (u, &x) in g.plus_map.iter().enumerate() {
                    p[x as usize] = pl[lower.outgoing.map[pu[u] as usize] as usize];
                }
                Some(p)
            }
            _ => None,
        };
        let glued = Bordism::assemble(Arc::new(g.manifold), &lower.source, lower.incoming.clone(), &upper.target, outgoing, projection)?;
        Ok(Composition { lower: lower.clone(), upper: upper.clone(), glued, plus_map: g.plus_map, fine: OnceLock::new() })
    }

    fn cut_maps(&self) -> Result<(SimplicialMap, SimplicialMap)> {
        Ok((self.lower.outgoing_map()?, self.upper.incoming_map()?))
    }

    /// A cocycle on `M` relative to `R ∪ σ̂` that restricts to the canonical
    /// representative of `B₋` on `M₋` and to one of `B₊` on `M₊`. The
    /// representative of `B₊` is corrected by `δλ` with `δλ` matching the
    /// difference on the cut.
    pub fn glue_cocycles(&self, upper_class: &GroupElement, lower_class: &GroupElement) -> Result<Cochain> {
        let (lo, up) = (&self.lower, &self.upper);
        if lo.restrict_out.apply(lower_class) != up.restrict_in.apply(upper_class) {
            return Err(Error::BoundaryMismatch("the decorations differ on the cut".into()));
        }
        let g = &lo.symmetry.group;
        let q = lo.symmetry.q;
        let c_minus = lo.backgrounds.representative(lower_class);
        let mut c_plus = up.backgrounds.representative(upper_class);
        let (f_minus, f_plus) = self.cut_maps()?;
        let diff = pullback_cochain(&f_minus, &c_minus, g).sub(&pullback_cochain(&f_plus, &c_plus, g), g);
        if !diff.is_zero() {
            let cut = lo.target.pair.relative_pair();
            let lambda = coboundary_preimage(&cut, q, &diff, g)
                .ok_or_else(|| Error::Invalid("cut difference is not a coboundary: gluing uniqueness failed".into()))?;
            c_plus = c_plus.add(&coboundary(&up.manifold.complex, &extend_by_zero(&f_plus, &lambda, g), g), g);
        }
        let m = &self.glued.manifold.complex;
        let mut out = Cochain::zero(m, q + 1, g);
        let mut from_minus = vec![false; m.count(q + 1)];
        for (i, s) in lo.manifold.complex.simplices(q + 1).iter().enumerate() {
            let j = m.index_of(s).expect("simplex of M₋");
            out.values[j] = c_minus.values[i].clone();
            from_minus[j] = true;
        }
        for (i, s) in up.manifold.complex.simplices(q + 1).iter().enumerate() {
            let img: Vec<u32> = s.iter().map(|&v| self.plus_map[v as usize]).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            let j = m.index_of(&sorted).expect("simplex of M₊");
            let v = g.scale(permutation_sign(&img).unwrap() as i64, &c_plus.values[i]);
            debug_assert!(!from_minus[j] || out.values[j] == v, "representatives disagree on the cut");
            out.values[j] = v;
        }
        Ok(out)
    }

    /// `η(B̄)` for the unique `B̄` gluing `B₋` and `B₊`.
    pub fn compose(&self, upper_class: &GroupElement, lower_class: &GroupElement) -> Result<GroupElement> {
        self.glued.backgrounds.class_of(&self.glue_cocycles(upper_class, lower_class)?)
    }

    /// `R ∪ σ̂` in `M`.
    pub fn fine_relative(&self) -> Subcomplex {
        let cut = self.lower.outgoing.dual_image(&self.glued.manifold);
        self.glued.relative.union(&cut)
    }

    /// `H^{q+1}(M, R ∪ σ̂)`.
    pub fn fine_backgrounds(&self) -> &Arc<CohomologyGroup> {
        self.fine.get_or_init(|| {
            let pair = SimplicialPair { total: self.glued.manifold.complex.clone(), sub: self.fine_relative() };
            cohomology(&pair, self.glued.symmetry.q + 1, &self.glued.symmetry.group)
        })
    }

    /// `|Ker η|` from orders of lower cohomology:
    /// `∏ᵢ (|Hⁱ(σ̂)|·|Hⁱ(M, R ∪ σ̂)| / |Hⁱ(M, R)|)^{(−1)^{q−i}}`.
    pub fn kernel_eta_formula(&self) -> Ratio<i128> {
        let sym = &self.glued.symmetry;
        let cut = &self.lower.target.pair;
        let (sigma_hat, _) = cut.sk_dual.to_complex(&cut.slice.working.complex);
        let hat = SimplicialPair::absolute(sigma_hat);
        let fine = SimplicialPair { total: self.glued.manifold.complex.clone(), sub: self.fine_relative() };
        let coarse = self.glued.pair();
        let mut acc = Ratio::from_integer(1i128);
        for i in 0..=sym.q {
            let num = cohomology_order(&hat, i, &sym.group) as i128 * cohomology_order(&fine, i, &sym.group) as i128;
            let f = Ratio::new(num, cohomology_order(&coarse, i, &sym.group) as i128);
            acc *= if (sym.q - i).is_multiple_of(2) { f } else { f.recip() };
        }
        acc
    }

    /// Checks the gluing lemma exhaustively: `φ` is injective with image the
    /// pairs agreeing on the cut, `η` is onto, `|Ker η|` matches the formula,
    /// and the cochain-level composite equals `η ∘ φ⁻¹`.
    pub fn mayer_vietoris(&self) -> Result<MayerVietorisReport> {
        let (lo, up) = (&self.lower, &self.upper);
        let fine = self.fine_backgrounds().clone();
        let n_minus = lo.manifold.complex.n_vertices() as u32;
        let m = self.glued.manifold.complex.clone();
        let to_minus = SimplicialMap::new(lo.manifold.complex.clone(), m.clone(), (0..n_minus).collect())?;
        let to_plus = SimplicialMap::new(up.manifold.complex.clone(), m.clone(), self.plus_map.clone())?;
        let phi_minus = induced_pullback(&to_minus, &fine, &lo.backgrounds)?;
        let phi_plus = induced_pullback(&to_plus, &fine, &up.backgrounds)?;
        let eta = induced_pullback(&SimplicialMap::identity(&m), &fine, &self.glued.backgrounds)?;
        let mut by_pair: HashMap<(GroupElement, GroupElement), GroupElement> = HashMap::new();
        let mut phi_injective = true;
        let mut images_agree = true;
        for b in fine.group().enumerate()? {
            let (bm, bp) = (phi_minus.apply(&b), phi_plus.apply(&b));
            images_agree &= lo.restrict_out.apply(&bm) == up.restrict_in.apply(&bp);
            phi_injective &= by_pair.insert((bm, bp), b).is_none();
        }
        // Pairs agreeing on the cut, counted per cut value.
        let mut minus_by_cut: HashMap<GroupElement, Vec<GroupElement>> = HashMap::new();
        for b in lo.backgrounds.group().enumerate()? {
            minus_by_cut.entry(lo.restrict_out.apply(&b)).or_default().push(b);
        }
        let mut agreeing = 0u128;
        let mut consistent = true;
        let mut every_pair_glues = true;
        for bp in up.backgrounds.group().enumerate()? {
            let Some(list) = minus_by_cut.get(&up.restrict_in.apply(&bp)) else { continue };
            for bm in list {
                agreeing += 1;
                match by_pair.get(&(bm.clone(), bp.clone())) {
                    Some(bbar) => consistent &= eta.apply(bbar) == self.compose(&bp, bm)?,
                    None => every_pair_glues = false,
                }
            }
        }
        let hit: BTreeSet<GroupElement> = by_pair.values().map(|b| eta.apply(b)).collect();
        let kernel_eta = eta.kernel_order()?;
        let formula = self.kernel_eta_formula();
        Ok(MayerVietorisReport {
            fine_order: fine.order(),
            glued_order: self.glued.backgrounds.order(),
            agreeing_pairs: agreeing,
            phi_injective,
            images_agree,
            every_pair_glues,
            eta_surjective: hit.len() as u128 == self.glued.backgrounds.order(),
            kernel_eta,
            kernel_eta_formula: formula.to_string(),
            formula_matches: formula == Ratio::from_integer(kernel_eta as i128),
            consistent,
        })
    }

    /// Retraction of `M` onto the non-cylinder piece, when one piece is an
    /// endomorphism cylinder: its vertices project to the cut.
    pub fn collapse(&self) -> Result<(SimplicialMap, bool)> {
        let (lo, up) = (&self.lower, &self.upper);
        let m = &self.glued.manifold.complex;
        if let (Some(pu), true) = (&up.projection, up.source.same(&up.target)) {
            let mut r: Vec<u32> = (0..m.n_vertices() as u32).collect();
            for (u, &x) in self.plus_map.iter().enumerate() {
                r[x as usize] = lo.outgoing.map[pu[u] as usize];
            }
            r.truncate(m.n_vertices());
            let map = SimplicialMap::new(m.clone(), lo.manifold.complex.clone(), r)?;
            return Ok((map, false));
        }
        if let (Some(pl), true) = (&lo.projection, lo.source.same(&lo.target)) {
            let mut r = vec![0u32; m.n_vertices()];
            for (u, &x) in self.plus_map.iter().enumerate() {
                r[x as usize] = u as u32;
            }
            for (v, &s) in pl.iter().enumerate() {
                r[v] = up.incoming.map[s as usize];
            }
            let map = SimplicialMap::new(m.clone(), up.manifold.complex.clone(), r)?;
            return Ok((map, true));
        }
        Err(Error::Invalid("neither piece is an endomorphism cylinder".into()))
    }
}

/// Outcome of [`Composition::mayer_vietoris`].
#[derive(Clone, Debug, Serialize)]
pub struct MayerVietorisReport {
    pub fine_order: u128,
    pub glued_order: u128,
    pub agreeing_pairs: u128,
    pub phi_injective: bool,
    pub images_agree: bool,
    pub every_pair_glues: bool,
    pub eta_surjective: bool,
    pub kernel_eta: u128,
    pub kernel_eta_formula: String,
    pub formula_matches: bool,
    pub consistent: bool,
}

impl MayerVietorisReport {
    pub fn passed(&self) -> bool {
        self.phi_injective
            && self.images_agree
            && self.every_pair_glues
            && self.eta_surjective
            && self.formula_matches
            && self.consistent
            && self.fine_order == self.agreeing_pairs
            && self.fine_order == self.glued_order * self.kernel_eta
    }
}

/// `(M₊, B₊) ∘ (M₋, B₋)`.
pub fn compose(upper: &DecoratedBordism, lower: &DecoratedBordism) -> Result<DecoratedBordism> {
    let c = Composition::new(&upper.bordism, &lower.bordism)?;
    let class = c.compose(&upper.class, &lower.class)?;
    Ok(DecoratedBordism { bordism: c.glued, class })
}
