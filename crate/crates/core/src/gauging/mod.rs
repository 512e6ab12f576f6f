//! Gauging a `q`-form `G` symmetry and the dual `(d−q−2)`-form `G*` symmetry
//! of the result.
//!
//! For an input theory `Z`, the gauged state space on `Σ` is the sum over
//! `b̃ ∈ H^{q+1}(Σ)` of an isotypic part of `H(Σ, b(b̃))`, where `b(·)` is a
//! fixed section of `g`. A bordism `M` decorated by a dual background `A`
//! gets the projected sum `c(M) Σ_B Z(M, B) e^{−2πi⟨A ∪ B, [M]⟩}`. The
//! gauged theory is itself a [`Theory`] for the dual symmetry, so it can be
//! gauged again.

mod checks;

pub use checks::{delta_identity_check, double_gauge_check, pairing_vanishes_on_parallel, DeltaReport, DoubleGaugeReport};

use crate::bordism::{closed, Bordism, DecoratedBordism, DecoratedObject, Slice, Symmetry};
use crate::complex::{cohomology_order, cup_evaluate, Cochain, SimplicialPair};
use crate::error::{Error, Result};
use crate::exactalg::{Character, FinAbGroup, GroupElement};
use crate::manifold::TriangulatedManifold;
use crate::tqft::{check_symmetry, prime_factors, rho, Amplitude, HilbertSpace, LinearMap, Theory};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// The orders entering `c(M) = ∏_{i≤q} (|Hⁱ(M,R)| |Hⁱ(Σ₊)|^s |Hⁱ(Σ₋)|^{1−s})^{(−1)^{q−i+1}}`,
/// with `c(M)` kept as exponents of primes.
#[derive(Clone, Debug, Serialize)]
pub struct GaugeNormalization {
    pub q: usize,
    pub s: (i64, i64),
    pub relative_orders: Vec<u128>,
    pub incoming_orders: Vec<u128>,
    pub outgoing_orders: Vec<u128>,
    #[serde(skip)]
    pub exponents: BTreeMap<u64, Ratio<i64>>,
}

impl GaugeNormalization {
    /// Exact `c(M)`; needs every prime exponent to be a half-integer.
    pub fn value(&self) -> Result<Amplitude> {
        self.exponents.iter().try_fold(Amplitude::one(), |acc, (&p, &e)| Ok(&acc * &Amplitude::power(p, e)?))
    }

    pub fn to_f64(&self) -> f64 {
        self.exponents.iter().map(|(&p, e)| (p as f64).powf(*e.numer() as f64 / *e.denom() as f64)).product()
    }
}

impl fmt::Display for GaugeNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Ok(v) => match v.as_rational() {
                Some(r) => write!(f, "{r}"),
                None => write!(f, "{v}"),
            },
            Err(_) => write!(f, "{}", self.to_f64()),
        }
    }
}

fn add_order(exps: &mut BTreeMap<u64, Ratio<i64>>, order: u128, e: Ratio<i64>) -> Result<()> {
    let mut n = u64::try_from(order).map_err(|_| Error::Invalid(format!("order {order} out of range")))?;
    for p in prime_factors(n) {
        while n % p == 0 {
            n /= p;
            *exps.entry(p).or_insert_with(Ratio::zero) += e;
        }
    }
    exps.retain(|_, e| !e.is_zero());
    Ok(())
}

/// `c(M)` for the symmetry of `m`, with `s` weighting the outgoing end.
pub fn coefficient_c(m: &Bordism, s: Ratio<i64>) -> Result<GaugeNormalization> {
    let (q, g) = (m.symmetry.q, &m.symmetry.group);
    let absolute = |slice: &Slice, i| cohomology_order(&SimplicialPair::absolute(slice.working().complex.clone()), i, g);
    let mut out = GaugeNormalization {
        q,
        s: (*s.numer(), *s.denom()),
        relative_orders: (0..=q).map(|i| cohomology_order(&m.pair(), i, g)).collect(),
        incoming_orders: (0..=q).map(|i| absolute(&m.source, i)).collect(),
        outgoing_orders: (0..=q).map(|i| absolute(&m.target, i)).collect(),
        exponents: BTreeMap::new(),
    };
    for i in 0..=q {
        let sign = Ratio::from_integer(if (q - i + 1) % 2 == 0 { 1 } else { -1 });
        add_order(&mut out.exponents, out.relative_orders[i], sign)?;
        add_order(&mut out.exponents, out.outgoing_orders[i], sign * s)?;
        add_order(&mut out.exponents, out.incoming_orders[i], sign * (Ratio::one() - s))?;
    }
    Ok(out)
}

/// How `b(b̃)` is picked among the preimages of `b̃` under `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    /// Lexicographically least coordinates.
    LexMin,
    /// Uniform, from a generator seeded by the seed and `b̃`.
    Random(u64),
}

/// One summand `H(Σ, b(b̃))` of the gauged ambient space.
#[derive(Clone, Debug)]
pub struct Sector {
    pub absolute: GroupElement,
    pub b: GroupElement,
    pub space: HilbertSpace,
    pub offset: usize,
    /// `ρ_b(β)` in the enumeration order of `Hq(Σ)`.
    pub rho: Vec<LinearMap>,
}

/// All sectors over an input slice.
#[derive(Debug)]
pub struct Sectors {
    pub slice: Arc<Slice>,
    pub sectors: Vec<Sector>,
    pub labels: Vec<String>,
}

impl Sectors {
    pub fn position(&self, absolute: &GroupElement) -> Option<usize> {
        self.sectors.iter().position(|s| s.absolute == *absolute)
    }
}

/// `(1/|Hq(Σ)|) Σ_β ρ(β) e^{−2πi χ(β)}`.
fn project(rhos: &[LinearMap], h: &FinAbGroup, chi: &Character) -> Result<LinearMap> {
    let mut acc = LinearMap::zero(rhos[0].source.clone(), rhos[0].target.clone());
    for (beta, r) in h.enumerate()?.zip(rhos) {
        acc = acc.add(&r.scale(&Amplitude::phase(h.pair(chi, &beta))))?;
    }
    Ok(acc.scale_rational(&BigRational::new(1.into(), (rhos.len() as i64).into())))
}

/// The isotypic projector `P^χ` of an arbitrary theory on `(Σ, b)`.
pub fn projector(z: &dyn Theory, obj: &DecoratedObject, chi: &Character) -> Result<LinearMap> {
    let h = obj.slice.segment.h_x.group();
    let rhos: Vec<LinearMap> = h.enumerate()?.map(|beta| rho(z, obj, &beta)).collect::<Result<_>>()?;
    project(&rhos, h, chi)
}

/// `⟨A ∪ Bⱼ, [M]⟩` for the generators `Bⱼ` of `H^{q+1}(M, R; G)`, where `A`
/// is a relative cocycle for the dual symmetry; zero on the empty manifold.
pub fn cup_pairing(m: &Bordism, a: &Cochain) -> Result<Vec<Ratio<i64>>> {
    let gens = m.backgrounds.group().rank();
    let Some(cycle) = m.fundamental_cycle()? else {
        return Ok(vec![Ratio::zero(); gens]);
    };
    let order = m.cup_order();
    let g = &m.symmetry.group;
    (0..gens)
        .map(|j| {
            let b = m.backgrounds.representative(&m.backgrounds.group().generator(j));
            cup_evaluate(&m.manifold.complex, a, &b, cycle, &order, g)
        })
        .collect()
}

fn evaluate(t: &[Ratio<i64>], b: &GroupElement) -> Ratio<i64> {
    let x: Ratio<i64> = t.iter().zip(&b.coords).map(|(t, &c)| t * c as i64).sum();
    x.fract()
}

type SectorCache = HashMap<usize, (Arc<Slice>, Arc<Sectors>)>;

/// The gauged theory, with symmetry `(d, d − q − 2, G*)`.
pub struct GaugedTheory {
    input: Arc<dyn Theory>,
    symmetry: Symmetry,
    section: Section,
    s: Ratio<i64>,
    /// Keyed by slice address; the stored `Arc` keeps the address alive.
    cache: Mutex<SectorCache>,
}

/// Gauges the full symmetry of `z`, with the lex-min section and `s = 1/2`.
pub fn gauge(z: Arc<dyn Theory>) -> GaugedTheory {
    let symmetry = z.symmetry().dual();
    GaugedTheory { input: z, symmetry, section: Section::LexMin, s: Ratio::new(1, 2), cache: Mutex::new(HashMap::new()) }
}

impl GaugedTheory {
    pub fn with_section(mut self, section: Section) -> Self {
        self.section = section;
        self
    }

    /// Normalization exponent `s`; `c(M)` must stay exact for the bordisms used.
    pub fn with_normalization(mut self, s: Ratio<i64>) -> Self {
        self.s = s;
        self
    }

    pub fn input(&self) -> &Arc<dyn Theory> {
        &self.input
    }

    pub fn normalization(&self, m: &Bordism) -> Result<GaugeNormalization> {
        coefficient_c(m, self.s)
    }

    /// `preimages` sorted; `index` is the position of `b̃` in `H^{q+1}(Σ)`.
    fn choose(&self, preimages: &[GroupElement], index: u128) -> GroupElement {
        match self.section {
            Section::LexMin => preimages[0].clone(),
            Section::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                preimages[rng.gen_range(0..preimages.len())].clone()
            }
        }
    }

    /// Sectors over a slice of the input symmetry.
    pub fn sectors(&self, slice: &Arc<Slice>) -> Result<Arc<Sectors>> {
        check_symmetry(&*self.input, &slice.symmetry)?;
        let key = Arc::as_ptr(slice) as usize;
        if let Some((_, s)) = self.cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let seg = &slice.segment;
        let mut preimages: BTreeMap<GroupElement, Vec<GroupElement>> = BTreeMap::new();
        for b in slice.backgrounds().group().enumerate()? {
            preimages.entry(seg.g.apply(&b)).or_default().push(b);
        }
        let h = seg.h_x.group();
        let (mut sectors, mut labels) = (Vec::new(), Vec::new());
        for absolute in seg.h_x_next.group().enumerate()? {
            let Some(pre) = preimages.get_mut(&absolute) else { continue };
            pre.sort();
            let b = self.choose(pre, seg.h_x_next.group().index_of(&absolute));
            let obj = DecoratedObject { slice: slice.clone(), b: b.clone() };
            let space = self.input.hilbert(&obj)?;
            let rho: Vec<LinearMap> = if slice.is_empty() {
                vec![space.idempotent.clone()]
            } else {
                h.enumerate()?.map(|beta| rho(&*self.input, &obj, &beta)).collect::<Result<_>>()?
            };
            labels.extend(space.labels().iter().map(|l| format!("{absolute}:{l}")));
            sectors.push(Sector { absolute, b, offset: labels.len() - space.labels().len(), space, rho });
        }
        let s = Arc::new(Sectors { slice: slice.clone(), sectors, labels });
        self.cache.lock().unwrap().insert(key, (slice.clone(), s.clone()));
        Ok(s)
    }

    /// `g*(a)`: the character `β ↦ ⟨A ∪ ι(β), [Σ × I]⟩` of `Hq(Σ; G)`, where
    /// `A` is the pullback of `a` along the cylinder projection.
    pub fn character(&self, obj: &DecoratedObject) -> Result<Character> {
        check_symmetry(self, &obj.slice.symmetry)?;
        let slice_in = obj.slice.dual()?;
        let h = slice_in.segment.h_x.group();
        if slice_in.is_empty() {
            return Ok(Character(h.zero()));
        }
        let a = obj.slice.identity_cylinder()?.parallel(&obj.b)?;
        let cyl = slice_in.identity_cylinder()?;
        debug_assert_eq!(*cyl.manifold.complex, *obj.slice.identity_cylinder()?.manifold.complex);
        let cycle = cyl.fundamental_cycle()?.expect("nonempty cylinder");
        let order = cyl.cup_order();
        let coords = (0..h.rank())
            .map(|j| {
                let b = cyl.perpendicular(&h.generator(j))?;
                let x = cup_evaluate(&cyl.manifold.complex, &a, &b, cycle, &order, &self.input.symmetry().group)?;
                Ok((x * h.factors()[j] as i64).to_integer().rem_euclid(h.factors()[j] as i64) as u64)
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(Character(GroupElement::new(coords)))
    }

    /// The sum `c(M) Σ_B Z(M, B) e^{−2πi⟨A ∪ B⟩}` over all sectors, before
    /// projection. Pairs of sectors with no admissible `B` give zero blocks.
    pub fn naive_value(&self, m: &DecoratedBordism) -> Result<LinearMap> {
        check_symmetry(self, &m.bordism.symmetry)?;
        let m_in = m.bordism.dual()?;
        let (src, tgt) = (self.sectors(&m_in.source)?, self.sectors(&m_in.target)?);
        let t = cup_pairing(&m_in, &m.cocycle())?;
        let c = self.normalization(&m_in)?.value()?;
        let mut out = LinearMap::zero(src.labels.clone(), tgt.labels.clone());
        for ts in &tgt.sectors {
            for ss in &src.sectors {
                let set = m_in.backgrounds_with(&ss.b, &ts.b)?;
                let mut block = LinearMap::zero(ss.space.labels().to_vec(), ts.space.labels().to_vec());
                for class in set.classes {
                    let phase = Amplitude::phase(evaluate(&t, &class));
                    let v = self.input.value(&DecoratedBordism { bordism: m_in.clone(), class })?;
                    block = block.add(&v.scale(&phase))?;
                }
                out.set_block(ts.offset, ss.offset, &block.scale(&c));
            }
        }
        Ok(out)
    }

    /// Gauged value of an undecorated bordism of the input symmetry, with the
    /// dual background `A = 0`.
    pub fn plain_value(&self, m: &Arc<Bordism>) -> Result<LinearMap> {
        let dual = m.dual()?;
        self.value(&DecoratedBordism { bordism: dual.clone(), class: dual.backgrounds.group().zero() })
    }

    /// `Z_g(M)` for a closed manifold, as an amplitude.
    pub fn partition_function(&self, manifold: TriangulatedManifold) -> Result<Amplitude> {
        let m = closed(self.input.symmetry(), manifold)?;
        Ok(self.plain_value(&m)?.matrix[0][0].clone())
    }

    /// `Z_g(M, A)` for a closed manifold and every dual background `A`.
    pub fn refined_partition_functions(&self, manifold: TriangulatedManifold) -> Result<Vec<(GroupElement, Amplitude)>> {
        let m = closed(self.input.symmetry(), manifold)?.dual()?;
        m.decorations()?.into_iter().map(|d| Ok((d.class.clone(), self.value(&d)?.matrix[0][0].clone()))).collect()
    }
}

impl Theory for GaugedTheory {
    fn name(&self) -> String {
        format!("gauged {}", self.input.name())
    }

    fn symmetry(&self) -> &Symmetry {
        &self.symmetry
    }

    fn hilbert(&self, obj: &DecoratedObject) -> Result<HilbertSpace> {
        check_symmetry(self, &obj.slice.symmetry)?;
        let sectors = self.sectors(&obj.slice.dual()?)?;
        let chi = self.character(obj)?;
        let h = sectors.slice.segment.h_x.group();
        let blocks: Vec<LinearMap> = sectors
            .sectors
            .iter()
            .map(|s| {
                let mut p = project(&s.rho, h, &chi)?;
                p.source = s.space.labels().iter().map(|l| format!("{}:{l}", s.absolute)).collect();
                p.target = p.source.clone();
                Ok(p)
            })
            .collect::<Result<_>>()?;
        Ok(HilbertSpace { idempotent: LinearMap::direct_sum(&blocks) })
    }

    fn value(&self, m: &DecoratedBordism) -> Result<LinearMap> {
        let naive = self.naive_value(m)?;
        let (e_in, e_out) = (self.hilbert(&m.source())?, self.hilbert(&m.target())?);
        e_out.idempotent.compose(&naive)?.compose(&e_in.idempotent)
    }
}

#[cfg(test)]
mod tests;
