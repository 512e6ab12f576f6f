//! TQFTs with a `q`-form symmetry as functors on decorated bordisms.
//!
//! A state space is presented as an idempotent `E` on an ambient labeled
//! space; the Hilbert space is its image and its dimension is `tr E`. Values
//! are maps between ambient spaces with `E₊ Z E₋ = Z`. This keeps values
//! exact without choosing bases of images, and every axiom check below is
//! basis independent.

mod amplitude;
mod linear;

pub use amplitude::Amplitude;
pub(crate) use amplitude::prime_factors;
pub use linear::{LinearMap, SerialMap};

use crate::bordism::{
    bent_in, bent_out, compose, copants, disk_in, disk_out, identity, pants, skeleton_change, swap, symmetry_cylinder, DecoratedBordism,
    DecoratedObject, Slice, Symmetry,
};
use crate::error::{Error, Result};
use crate::exactalg::GroupElement;
use crate::report::Report;
use std::sync::Arc;

/// `H(Σ, b)` as the image of an idempotent.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertSpace {
    pub idempotent: LinearMap,
}

impl HilbertSpace {
    /// The whole labeled space.
    pub fn full(labels: Vec<String>) -> Self {
        HilbertSpace { idempotent: LinearMap::identity(labels) }
    }

    pub fn labels(&self) -> &[String] {
        &self.idempotent.source
    }

    /// `tr E`.
    pub fn dimension(&self) -> Result<u64> {
        let t = self.idempotent.trace();
        t.as_integer()
            .and_then(|k| u64::try_from(k).ok())
            .ok_or_else(|| Error::Invalid(format!("idempotent with trace {t}")))
    }
}

/// A symmetric monoidal functor from decorated bordisms. Implementations must
/// be deterministic, so that structurally equal objects get equal ambient
/// spaces.
pub trait Theory: Send + Sync {
    fn name(&self) -> String;
    fn symmetry(&self) -> &Symmetry;
    fn hilbert(&self, obj: &DecoratedObject) -> Result<HilbertSpace>;
    fn value(&self, m: &DecoratedBordism) -> Result<LinearMap>;
}

pub(crate) fn check_symmetry(theory: &dyn Theory, s: &Symmetry) -> Result<()> {
    if theory.symmetry() != s {
        return Err(Error::Mismatch(format!("{} has symmetry {}, got {s}", theory.name(), theory.symmetry())));
    }
    Ok(())
}

/// Every state space `ℂ` and every value `1`.
pub struct TrivialTheory {
    symmetry: Symmetry,
}

pub fn trivial_theory(symmetry: Symmetry) -> TrivialTheory {
    TrivialTheory { symmetry }
}

impl Theory for TrivialTheory {
    fn name(&self) -> String {
        format!("trivial({})", self.symmetry)
    }

    fn symmetry(&self) -> &Symmetry {
        &self.symmetry
    }

    fn hilbert(&self, obj: &DecoratedObject) -> Result<HilbertSpace> {
        check_symmetry(self, &obj.slice.symmetry)?;
        Ok(HilbertSpace::full(vec!["1".into()]))
    }

    fn value(&self, m: &DecoratedBordism) -> Result<LinearMap> {
        check_symmetry(self, &m.bordism.symmetry)?;
        Ok(LinearMap::scalar(Amplitude::one()))
    }
}

/// `Z` with every value multiplied by a fixed amplitude; with a factor other
/// than `0` or `1` this breaks functoriality.
pub struct ScaledTheory {
    pub inner: Arc<dyn Theory>,
    pub factor: Amplitude,
}

impl Theory for ScaledTheory {
    fn name(&self) -> String {
        format!("{}·{}", self.factor, self.inner.name())
    }

    fn symmetry(&self) -> &Symmetry {
        self.inner.symmetry()
    }

    fn hilbert(&self, obj: &DecoratedObject) -> Result<HilbertSpace> {
        self.inner.hilbert(obj)
    }

    fn value(&self, m: &DecoratedBordism) -> Result<LinearMap> {
        Ok(self.inner.value(m)?.scale(&self.factor))
    }
}

/// `ρ(β) = Z(Σ × I, b ⊕ ι(β))`.
pub fn rho(z: &dyn Theory, obj: &DecoratedObject, beta: &GroupElement) -> Result<LinearMap> {
    z.value(&symmetry_cylinder(obj, beta)?)
}

/// Checks `ρ(β₁)ρ(β₂) = ρ(β₁ + β₂)` over all pairs and `ρ(0) = E`.
pub fn check_representation(z: &dyn Theory, obj: &DecoratedObject) -> Result<Report> {
    let mut report = Report::new(format!("representation on {obj:?}"));
    let h = obj.slice.segment.h_x.group().clone();
    let betas: Vec<GroupElement> = h.enumerate()?.collect();
    let rhos: Vec<LinearMap> = betas.iter().map(|b| rho(z, obj, b)).collect::<Result<_>>()?;
    report.check("unit", "ρ(0)", rhos[0] == z.hilbert(obj)?.idempotent, "");
    for (i, b1) in betas.iter().enumerate() {
        for (j, b2) in betas.iter().enumerate() {
            let k = h.index_of(&h.add(b1, b2)) as usize;
            report.check("product", format!("β₁={b1} β₂={b2}"), rhos[i].compose(&rhos[j])? == rhos[k], "");
        }
    }
    Ok(report)
}

/// When the skeleton-change cylinder from `source` to `target` exists,
/// checks that its value intertwines the two representations.
pub fn check_equivariance(z: &dyn Theory, source: &DecoratedObject, target: &DecoratedObject) -> Result<Option<bool>> {
    let Some(cyl) = skeleton_change(source, target)? else {
        return Ok(None);
    };
    let v = z.value(&cyl)?;
    for beta in source.slice.segment.h_x.group().enumerate()? {
        let lhs = rho(z, target, &beta)?.compose(&v)?;
        let rhs = v.compose(&rho(z, source, &beta)?)?;
        if lhs != rhs {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// A named decorated bordism.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub morphism: DecoratedBordism,
}

impl Fixture {
    pub fn new(name: impl Into<String>, morphism: DecoratedBordism) -> Self {
        Fixture { name: name.into(), morphism }
    }

    fn is_endomorphism(&self) -> bool {
        self.morphism.source() == self.morphism.target()
    }
}

/// Checks the functor axioms on a fixture set, exactly:
/// - idempotents and `Z(Σ × I, b ⊕ 0) = E` on every end,
/// - `E₊ Z(M) E₋ = Z(M)`,
/// - `Z(F ∘ E) = Z(F) Z(E)` for every composable ordered pair,
/// - dimensions and traces of endomorphisms multiply under `⊔`,
/// - the braiding squares to the identity, has trace `dim X` on `X ⊔ X`,
///   and is natural for pairs of endomorphisms.
pub fn verify_functor(z: &dyn Theory, fixtures: &[Fixture]) -> Result<Report> {
    let mut report = Report::new(format!("functor axioms for {}", z.name()));
    let values: Vec<LinearMap> = fixtures.iter().map(|f| z.value(&f.morphism)).collect::<Result<_>>()?;
    let mut objects: Vec<(String, DecoratedObject)> = Vec::new();
    for f in fixtures {
        for (end, o) in [("source", f.morphism.source()), ("target", f.morphism.target())] {
            if !o.slice.is_empty() && !objects.iter().any(|(_, x)| *x == o) {
                objects.push((format!("{} of {}", end, f.name), o));
            }
        }
    }
    let mut dims = Vec::new();
    for (name, o) in &objects {
        let h = z.hilbert(o)?;
        report.check("idempotent", name.as_str(), h.idempotent.is_idempotent(), "");
        report.check("identity", name.as_str(), z.value(&identity(o)?)? == h.idempotent, "");
        dims.push(h.dimension()?);
    }
    for (f, v) in fixtures.iter().zip(&values) {
        let (hs, ht) = (z.hilbert(&f.morphism.source())?, z.hilbert(&f.morphism.target())?);
        let sandwiched = ht.idempotent.compose(v)?.compose(&hs.idempotent)?;
        report.check("ends", f.name.as_str(), sandwiched == *v, "");
    }
    for (i, upper) in fixtures.iter().enumerate() {
        for (j, lower) in fixtures.iter().enumerate() {
            if upper.morphism.source() != lower.morphism.target() {
                continue;
            }
            let glued = z.value(&compose(&upper.morphism, &lower.morphism)?)?;
            let product = values[i].compose(&values[j])?;
            let detail = if glued == product { String::new() } else { format!("Z(F∘E) = {glued:?} vs Z(F)Z(E) = {product:?}") };
            report.check("composition", format!("{} ∘ {}", upper.name, lower.name), glued == product, detail);
        }
    }
    let endos: Vec<usize> = (0..fixtures.len()).filter(|&i| fixtures[i].is_endomorphism()).collect();
    for (a, &i) in endos.iter().enumerate() {
        for &j in &endos[a..] {
            let u = fixtures[i].morphism.disjoint_union(&fixtures[j].morphism)?;
            let (lhs, rhs) = (z.value(&u)?.trace(), &values[i].trace() * &values[j].trace());
            report.check("tensor trace", format!("{} ⊔ {}", fixtures[i].name, fixtures[j].name), lhs == rhs, format!("{lhs} vs {rhs}"));
        }
    }
    let few = objects.len().min(3);
    for a in 0..few {
        for b in a..few {
            let (x, y) = (&objects[a].1, &objects[b].1);
            let subject = format!("{} ⊔ {}", objects[a].0, objects[b].0);
            let xy = x.disjoint_union(y)?;
            let hxy = z.hilbert(&xy)?;
            report.check("tensor dimension", subject.as_str(), hxy.dimension()? == dims[a] * dims[b], "");
            let s = z.value(&swap(x, y)?)?;
            let t = z.value(&swap(y, x)?)?;
            report.check("braiding square", subject.as_str(), t.compose(&s)? == hxy.idempotent, "");
            if a == b {
                let tr = s.trace();
                report.check("braiding trace", subject.as_str(), tr == Amplitude::from_int(dims[a] as i64), format!("{tr}"));
            }
        }
    }
    let open: Vec<usize> = endos.iter().copied().filter(|&i| !fixtures[i].morphism.source().slice.is_empty()).take(3).collect();
    for (a, &i) in open.iter().enumerate() {
        for &j in &open[a..] {
            let (f, e) = (&fixtures[i].morphism, &fixtures[j].morphism);
            let lhs = compose(&swap(&f.target(), &e.target())?, &f.disjoint_union(e)?)?;
            let rhs = compose(&e.disjoint_union(f)?, &swap(&f.source(), &e.source())?)?;
            report.check("braiding naturality", format!("{} ⊔ {}", fixtures[i].name, fixtures[j].name), z.value(&lhs)? == z.value(&rhs)?, "");
        }
    }
    Ok(report)
}

/// Connected with the Euler characteristic of a sphere; exact for slices of
/// dimension at most two, where the cone is then a disk.
fn is_sphere(slice: &Slice) -> bool {
    let w = &slice.working().complex;
    let dim = slice.symmetry.d as i64 - 1;
    w.components().len() == 1 && w.euler_characteristic() == 1 + (-1i64).pow(dim as u32)
}

/// Cylinders, disks (over spheres), bent annuli and pants over `slice`, decorated so that
/// their ends lie in a small set of objects: `b = 0`, some `b ≠ 0` with
/// `g(b) = 0`, and some `b` with `g(b) ≠ 0` (when these exist). Keeps at most
/// `per_bordism` decorations of each undecorated bordism.
pub fn fixture_set(slice: &Arc<Slice>, per_bordism: usize) -> Result<Vec<Fixture>> {
    let objs = slice.objects()?;
    let mut chosen = vec![objs[0].clone()];
    chosen.extend(objs.iter().find(|o| !o.b.is_zero() && o.absolute_class().is_zero()).cloned());
    chosen.extend(objs.iter().find(|o| !o.absolute_class().is_zero()).cloned());
    let mut allowed = vec![DecoratedObject { slice: Slice::empty(&slice.symmetry)?, b: Slice::empty(&slice.symmetry)?.backgrounds().group().zero() }];
    allowed.extend(chosen.iter().cloned());
    for x in &chosen {
        for y in &chosen {
            allowed.push(x.disjoint_union(y)?);
        }
    }
    let mut out = Vec::new();
    let h = slice.segment.h_x.group().clone();
    for (k, o) in chosen.iter().enumerate() {
        out.push(Fixture::new(format!("id[{}]", o.b), identity(o)?));
        if k < 2 && !h.is_trivial() {
            out.push(Fixture::new(format!("sym[{}; {}]", o.b, h.generator(0)), symmetry_cylinder(o, &h.generator(0))?));
        }
    }
    let mut pieces = Vec::new();
    if is_sphere(slice) {
        pieces.extend([("disk_in", disk_in(slice)?), ("disk_out", disk_out(slice)?)]);
    }
    if slice.symmetry.d == 2 {
        pieces.extend([("bent_in", bent_in(slice)?), ("bent_out", bent_out(slice)?), ("pants", pants(slice)?), ("copants", copants(slice)?)]);
    }
    for (name, m) in pieces {
        let mut kept = 0;
        for x in allowed.iter().filter(|x| x.slice.same(&m.source)) {
            for y in allowed.iter().filter(|y| y.slice.same(&m.target)) {
                for class in m.backgrounds_with(&x.b, &y.b)?.classes.into_iter().take(per_bordism - kept) {
                    out.push(Fixture::new(format!("{name}[{class}]"), DecoratedBordism { bordism: m.clone(), class }));
                    kept += 1;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
