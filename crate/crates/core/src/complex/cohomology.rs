//! Relative cohomology `Hᵏ(X, A; G)` with explicit representatives.
//!
//! `G` is split into primary cyclic factors `ℤ/pᵉ`. For each of them:
//!
//! 1. `δₖ₋₁` is diagonalized with row transforms, `U·δₖ₋₁·V = D`. In the
//!    coordinates `y = U x` the coboundaries are `⊕ p^{v_r} e_r` over the
//!    pivot rows, so rows with unit pivots drop out of `Cᵏ/Bᵏ`.
//! 2. `δₖ` restricted to the surviving coordinates is diagonalized with
//!    column transforms; its kernel `K` contains `Hᵏ` as `K / ⊕ p^{v_r} e_r`.
//! 3. The few remaining relations are reduced to elementary divisors.
//!
//! Over a field step 3 is empty and `K` has the dimension of `Hᵏ`.

use super::cochain::{coboundary, coboundary_sparse, positions, Cochain};
use super::simplicial::{SimplicialMap, SimplicialPair};
use crate::error::{Error, Result};
use crate::exactalg::modular::{axpy, eliminate, sparse_dot, PrimePower, SparseMatrix, SparseVec, Track};
use crate::exactalg::{prime_power_factors, CyclicIso, FinAbGroup, GroupElement, Homomorphism};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// `Hᵏ(X, A; G)` with canonical representatives.
pub struct CohomologyGroup {
    pair: SimplicialPair,
    degree: usize,
    coeffs: FinAbGroup,
    group: FinAbGroup,
    rel: Vec<u32>,
    pos: Vec<Option<u32>>,
    parts: Vec<Part>,
    iso: CyclicIso,
    generators: Vec<Cochain>,
}

struct Part {
    factor: usize,
    data: Arc<Primary>,
    /// CRT idempotent of this prime power inside the invariant factor.
    crt: u64,
}

struct Primary {
    pp: PrimePower,
    /// Rows of `U` for the surviving coordinates; `None` when `U = I`.
    u_rows: Option<Vec<SparseVec>>,
    /// Rows of `V⁻¹` for the kernel generators, with `e − exp`.
    kernel_coords: Vec<(SparseVec, u32)>,
    /// Rows of the cokernel transform, with summand exponents.
    summands: Vec<(SparseVec, u32)>,
    /// Representatives (over relative positions) of the summand generators.
    summand_reps: Vec<Vec<u64>>,
}

impl fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}(pair; {}) = {}", self.degree, self.coeffs, self.group)
    }
}

/// Computes `Hᵏ(X, A; G)`.
pub fn cohomology(pair: &SimplicialPair, k: usize, g: &FinAbGroup) -> Arc<CohomologyGroup> {
    let rel = pair.relative_simplices(k);
    let pos = positions(pair.total.count(k), &rel);
    let rel_prev = if k > 0 { pair.relative_simplices(k - 1) } else { Vec::new() };
    let rel_next = pair.relative_simplices(k + 1);
    let mut cache: HashMap<PrimePower, Arc<Primary>> = HashMap::new();
    let mut parts = Vec::new();
    let mut cyclic_orders = Vec::new();
    for (factor, &n) in g.factors().iter().enumerate() {
        for pp in prime_power_factors(n) {
            let data = cache
                .entry(pp)
                .or_insert_with(|| Arc::new(primary(pair, k, &rel, &rel_prev, &rel_next, pp)))
                .clone();
            cyclic_orders.extend(data.summands.iter().map(|&(_, exp)| pp.pow(exp)));
            let q = pp.modulus();
            let m = n / q;
            let crt = (m as u128 * inverse_mod(m % q, q) as u128 % n as u128) as u64;
            let crt = if m == 1 { 1 } else { crt };
            parts.push(Part { factor, data, crt });
        }
    }
    let (group, iso) = FinAbGroup::from_cyclic_orders(&cyclic_orders);
    let mut h = CohomologyGroup {
        pair: pair.clone(),
        degree: k,
        coeffs: g.clone(),
        group,
        rel,
        pos,
        parts,
        iso,
        generators: Vec::new(),
    };
    h.generators = (0..h.group.rank()).map(|i| h.representative(&h.group.generator(i))).collect();
    Arc::new(h)
}

fn inverse_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(n as i128) as u64
}

fn primary(pair: &SimplicialPair, k: usize, rel: &[u32], rel_prev: &[u32], rel_next: &[u32], pp: PrimePower) -> Primary {
    let n = pp.modulus();
    let e = pp.e;
    let m = rel.len();
    // Step 1: coboundaries from degree k − 1.
    let (u_rows, u_inv_cols, quotient_exp): (Option<Vec<SparseVec>>, Option<Vec<SparseVec>>, Vec<u32>) = if rel_prev.is_empty() {
        (None, None, vec![e; m])
    } else {
        let a = coboundary_sparse(pair, k - 1, rel_prev, rel, n);
        let el = eliminate(a, pp, Track { rows: true, cols: false });
        let u = el.u.as_ref().unwrap();
        let ui = el.u_inv_t.as_ref().unwrap();
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut exps = Vec::new();
        for r in 0..m {
            let exp = el.row_pivot(r).map_or(e, |pv| pv.val);
            if exp > 0 {
                rows.push(u.rows[r].clone());
                cols.push(ui.rows[r].clone());
                exps.push(exp);
            }
        }
        (Some(rows), Some(cols), exps)
    };
    let s_len = quotient_exp.len();
    // Step 2: δₖ on the surviving coordinates.
    let delta = coboundary_sparse(pair, k, rel, rel_next, n);
    let w = match &u_inv_cols {
        None => delta,
        Some(cols) => {
            let dt = delta.transpose();
            let mut wt = SparseMatrix::zeros(s_len, rel_next.len(), n);
            for (s, col) in cols.iter().enumerate() {
                let mut acc: SparseVec = Vec::new();
                for &(i, a) in col {
                    axpy(&mut acc, &dt.rows[i as usize], a as u64, n);
                }
                wt.rows[s] = acc;
            }
            wt.transpose()
        }
    };
    let el2 = eliminate(w, pp, Track { rows: false, cols: true });
    let vt = el2.v_t.as_ref().unwrap();
    let vinv = el2.v_inv.as_ref().unwrap();
    let kernel = el2.kernel_basis();
    let kernel_coords: Vec<(SparseVec, u32)> = kernel.iter().map(|&(c, exp)| (vinv.rows[c].clone(), e - exp)).collect();
    // Step 3: relations p^{v_s} e_s for the surviving coordinates with v_s < e.
    let ng = kernel.len();
    let mut trip: Vec<(usize, usize, i64)> = Vec::new();
    let mut col = 0usize;
    for (s, &v) in quotient_exp.iter().enumerate() {
        if v == e {
            continue;
        }
        let scale = pp.pow(v);
        for (j, &(c, exp)) in kernel.iter().enumerate() {
            let y = vinv.get(c, s) * scale % n;
            let div = pp.pow(e - exp);
            debug_assert_eq!(y % div, 0, "relation outside the kernel");
            let coord = (y / div) % pp.pow(exp);
            if coord != 0 {
                trip.push((j, col, coord as i64));
            }
        }
        col += 1;
    }
    for (j, &(_, exp)) in kernel.iter().enumerate() {
        if exp < e {
            trip.push((j, col, pp.pow(exp) as i64));
        }
        col += 1;
    }
    let rel_matrix = SparseMatrix::from_triplets(ng, col, n, trip);
    let el3 = eliminate(rel_matrix, pp, Track { rows: true, cols: false });
    let u3 = el3.u.as_ref().unwrap();
    let u3_inv = el3.u_inv_t.as_ref().unwrap();
    let mut summands = Vec::new();
    let mut summand_reps = Vec::new();
    for (t, exp) in el3.cokernel_basis() {
        summands.push((u3.rows[t].clone(), exp));
        // Kernel coordinates of the generator: column t of U₃⁻¹.
        let mut y: SparseVec = Vec::new();
        for &(j, a) in &u3_inv.rows[t] {
            let (c, kexp) = kernel[j as usize];
            let f = a as u64 % pp.pow(kexp) * pp.pow(e - kexp) % n;
            axpy(&mut y, &vt.rows[c], f, n);
        }
        let mut x = vec![0u64; m];
        match &u_inv_cols {
            None => {
                for &(s, a) in &y {
                    x[s as usize] = a as u64;
                }
            }
            Some(cols) => {
                let mut acc: SparseVec = Vec::new();
                for &(s, a) in &y {
                    axpy(&mut acc, &cols[s as usize], a as u64, n);
                }
                for (i, a) in acc {
                    x[i as usize] = a as u64;
                }
            }
        }
        summand_reps.push(x);
    }
    Primary { pp, u_rows, kernel_coords, summands, summand_reps }
}

impl Primary {
    /// Summand coordinates of the class of the relative cocycle `x`.
    fn coordinates(&self, x: &[u64]) -> Vec<u64> {
        let n = self.pp.modulus();
        let y: Vec<u64> = match &self.u_rows {
            None => x.iter().map(|&v| v % n).collect(),
            Some(rows) => rows.iter().map(|r| sparse_dot(r, x, n)).collect(),
        };
        let kc: Vec<u64> = self
            .kernel_coords
            .iter()
            .map(|(row, shift)| {
                let v = sparse_dot(row, &y, n);
                let div = self.pp.pow(*shift);
                debug_assert_eq!(v % div, 0, "not a cocycle");
                v / div
            })
            .collect();
        self.summands.iter().map(|(row, exp)| sparse_dot(row, &kc, n) % self.pp.pow(*exp)).collect()
    }
}

impl CohomologyGroup {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &FinAbGroup {
        &self.coeffs
    }

    pub fn pair(&self) -> &SimplicialPair {
        &self.pair
    }

    /// Canonical representatives of the invariant-factor generators.
    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    /// True if `c` vanishes on the subcomplex and has zero coboundary.
    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        c.degree == self.degree
            && c.values.len() == self.pair.total.count(self.degree)
            && c.vanishes_on(&self.pair.sub)
            && coboundary(&self.pair.total, c, &self.coeffs).is_zero()
    }

    /// Class of a relative cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<GroupElement> {
        if !self.is_cocycle(c) {
            return Err(Error::Invalid(format!("cochain is not a relative {}-cocycle", self.degree)));
        }
        Ok(self.class_of_unchecked(c))
    }

    pub(crate) fn class_of_unchecked(&self, c: &Cochain) -> GroupElement {
        let mut cyc = Vec::new();
        for part in &self.parts {
            let n = part.data.pp.modulus();
            let x: Vec<u64> = self.rel.iter().map(|&i| c.values[i as usize].coords[part.factor] % n).collect();
            cyc.extend(part.data.coordinates(&x));
        }
        self.iso.forward(&self.group, &cyc)
    }

    /// Canonical representative: `Σ hᵢ·repᵢ` over the cyclic summands.
    pub fn representative(&self, h: &GroupElement) -> Cochain {
        let cyc = self.iso.backward(h);
        let mut values = vec![self.coeffs.zero(); self.pair.total.count(self.degree)];
        let mut offset = 0;
        for part in &self.parts {
            let d = &part.data;
            let n = d.pp.modulus();
            let nf = self.coeffs.factors()[part.factor];
            let mut x = vec![0u64; self.rel.len()];
            for (t, rep) in d.summand_reps.iter().enumerate() {
                let c = cyc[offset + t] % n;
                if c != 0 {
                    for (xi, &r) in x.iter_mut().zip(rep) {
                        *xi = (*xi + c * r) % n;
                    }
                }
            }
            offset += d.summands.len();
            for (p, &i) in self.rel.iter().enumerate() {
                if x[p] != 0 {
                    let slot = &mut values[i as usize].coords[part.factor];
                    *slot = ((*slot as u128 + x[p] as u128 * part.crt as u128) % nf as u128) as u64;
                }
            }
        }
        Cochain { degree: self.degree, values }
    }

    /// Canonical representative of the class of `c`.
    pub fn canonicalize(&self, c: &Cochain) -> Result<Cochain> {
        Ok(self.representative(&self.class_of(c)?))
    }

    /// The class with the given coordinates.
    pub fn class(self: &Arc<Self>, coords: GroupElement) -> Result<CohomologyClass> {
        let coords = self.group.element(coords.coords)?;
        Ok(CohomologyClass { group: self.clone(), coords, cocycle: OnceLock::new() })
    }

    pub fn zero_class(self: &Arc<Self>) -> CohomologyClass {
        CohomologyClass { group: self.clone(), coords: self.group.zero(), cocycle: OnceLock::new() }
    }

    /// Class of a relative cocycle.
    pub fn class_of_cocycle(self: &Arc<Self>, c: &Cochain) -> Result<CohomologyClass> {
        let coords = self.class_of(c)?;
        Ok(CohomologyClass { group: self.clone(), coords, cocycle: OnceLock::new() })
    }

    /// All classes, subject to the enumeration cap.
    pub fn classes(self: &Arc<Self>) -> Result<Vec<CohomologyClass>> {
        Ok(self.group.enumerate()?.map(|coords| CohomologyClass { group: self.clone(), coords, cocycle: OnceLock::new() }).collect())
    }

    /// Position of each relative simplex among the relative cochain coordinates.
    pub fn relative_position(&self, simplex: usize) -> Option<usize> {
        self.pos[simplex].map(|p| p as usize)
    }
}

/// Class in a computed cohomology group.
#[derive(Clone)]
pub struct CohomologyClass {
    pub group: Arc<CohomologyGroup>,
    pub coords: GroupElement,
    cocycle: OnceLock<Cochain>,
}

impl CohomologyClass {
    /// Canonical cocycle, computed once.
    pub fn cocycle(&self) -> &Cochain {
        self.cocycle.get_or_init(|| self.group.representative(&self.coords))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        assert!(Arc::ptr_eq(&self.group, &other.group), "classes from different groups");
        CohomologyClass { group: self.group.clone(), coords: self.group.group.add(&self.coords, &other.coords), cocycle: OnceLock::new() }
    }

    pub fn neg(&self) -> CohomologyClass {
        CohomologyClass { group: self.group.clone(), coords: self.group.group.neg(&self.coords), cocycle: OnceLock::new() }
    }
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coords == other.coords
    }
}

impl Eq for CohomologyClass {}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] in {}", self.coords, self.group.group)
    }
}

/// Some relative cochain `λ ∈ Cᵏ(X, A; G)` with `δλ = c`, or `None` when the
/// relative cochain `c` is not a coboundary.
pub fn coboundary_preimage(pair: &SimplicialPair, k: usize, c: &Cochain, g: &FinAbGroup) -> Option<Cochain> {
    assert_eq!(c.degree, k + 1, "cochain degree");
    let rel = pair.relative_simplices(k);
    let rel_next = pair.relative_simplices(k + 1);
    let mut out = Cochain::zero(&pair.total, k, g);
    if !c.vanishes_on(&pair.sub) {
        return None;
    }
    for (factor, &n) in g.factors().iter().enumerate() {
        for pp in prime_power_factors(n) {
            let q = pp.modulus();
            let y: Vec<u64> = rel_next.iter().map(|&i| c.values[i as usize].coords[factor] % q).collect();
            let x = if y.iter().all(|&v| v == 0) {
                vec![0; rel.len()]
            } else {
                eliminate(coboundary_sparse(pair, k, &rel, &rel_next, q), pp, Track { rows: true, cols: true }).solve(&y)?
            };
            let m = n / q;
            let crt = if m == 1 { 1 } else { (m as u128 * inverse_mod(m % q, q) as u128 % n as u128) as u64 };
            for (p, &i) in rel.iter().enumerate() {
                if x[p] != 0 {
                    let slot = &mut out.values[i as usize].coords[factor];
                    *slot = ((*slot as u128 + x[p] as u128 * crt as u128) % n as u128) as u64;
                }
            }
        }
    }
    Some(out)
}

/// `|Hᵏ(X, A; G)|` from ranks alone, without representatives.
pub fn cohomology_order(pair: &SimplicialPair, k: usize, g: &FinAbGroup) -> u128 {
    let rel = pair.relative_simplices(k);
    let rel_prev = if k > 0 { pair.relative_simplices(k - 1) } else { Vec::new() };
    let rel_next = pair.relative_simplices(k + 1);
    let mut cache: HashMap<PrimePower, u64> = HashMap::new();
    let mut total: u128 = 1;
    for &n in g.factors() {
        for pp in prime_power_factors(n) {
            let log = *cache.entry(pp).or_insert_with(|| {
                let q = pp.modulus();
                let ker = eliminate(coboundary_sparse(pair, k, &rel, &rel_next, q), pp, Track::default()).kernel_log_order();
                let im = if rel_prev.is_empty() {
                    0
                } else {
                    eliminate(coboundary_sparse(pair, k - 1, &rel_prev, &rel, q), pp, Track::default()).image_log_order()
                };
                ker - im
            });
            total *= (pp.p as u128).pow(log as u32);
        }
    }
    total
}

/// Homomorphism `f*: Hᵏ(Y, B) → Hᵏ(X, A)` induced by a map of pairs
/// `f: (X, A) → (Y, B)`.
pub fn induced_pullback(f: &SimplicialMap, target: &CohomologyGroup, source: &CohomologyGroup) -> Result<Homomorphism> {
    if target.degree != source.degree || target.coeffs != source.coeffs {
        return Err(Error::Mismatch("pullback between groups of different degree or coefficients".into()));
    }
    if *f.target != *target.pair.total || *f.source != *source.pair.total {
        return Err(Error::Mismatch("map does not connect the given pairs".into()));
    }
    f.check()?;
    f.check_pairs(&source.pair.sub, &target.pair.sub)?;
    let images: Vec<GroupElement> = target
        .generators
        .iter()
        .map(|c| source.class_of_unchecked(&super::cochain::pullback_cochain(f, c, &target.coeffs)))
        .collect();
    Homomorphism::from_images(target.group.clone(), source.group.clone(), &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplicial::{SimplicialComplex, Subcomplex};

    fn circle() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap())
    }

    fn torus7() -> Arc<SimplicialComplex> {
        let mut f = Vec::new();
        for i in 0..7u32 {
            f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        Arc::new(SimplicialComplex::from_facets(7, &f).unwrap())
    }

    #[test]
    fn circle_groups() {
        let p = SimplicialPair::absolute(circle());
        let z2 = FinAbGroup::cyclic(2);
        assert_eq!(cohomology(&p, 0, &z2).group().factors(), &[2]);
        assert_eq!(cohomology(&p, 1, &z2).group().factors(), &[2]);
        assert_eq!(cohomology(&p, 2, &z2).group().factors(), &[] as &[u64]);
    }

    #[test]
    fn torus_groups() {
        let p = SimplicialPair::absolute(torus7());
        for (g, h1) in [("Z2", vec![2, 2]), ("Z4", vec![4, 4]), ("Z6", vec![6, 6]), ("Z2xZ2", vec![2, 2, 2, 2])] {
            let g = FinAbGroup::parse(g).unwrap();
            let h = cohomology(&p, 1, &g);
            assert_eq!(h.group().factors(), &h1[..]);
            assert_eq!(cohomology_order(&p, 1, &g), h.order());
            assert_eq!(cohomology(&p, 2, &g).order(), g.order());
        }
    }

    #[test]
    fn representatives_round_trip() {
        let p = SimplicialPair::absolute(torus7());
        let g = FinAbGroup::parse("Z4xZ12").unwrap();
        let h = cohomology(&p, 1, &g);
        for x in h.group().enumerate().unwrap().step_by(37) {
            let c = h.representative(&x);
            assert!(h.is_cocycle(&c));
            assert_eq!(h.class_of(&c).unwrap(), x);
        }
    }

    #[test]
    fn relative_disk() {
        // Triangle relative to its boundary: H² = G, H¹ = 0.
        let t = Arc::new(SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap());
        let sub = Subcomplex::closure(&t, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let p = SimplicialPair::new(t, sub).unwrap();
        let z3 = FinAbGroup::cyclic(3);
        assert_eq!(cohomology(&p, 2, &z3).order(), 3);
        assert_eq!(cohomology(&p, 1, &z3).order(), 1);
        assert_eq!(cohomology(&p, 0, &z3).order(), 1);
    }

    #[test]
    fn identity_pullback_is_identity() {
        let k = torus7();
        let p = SimplicialPair::absolute(k.clone());
        let g = FinAbGroup::cyclic(2);
        let h = cohomology(&p, 1, &g);
        let f = induced_pullback(&SimplicialMap::identity(&k), &h, &h).unwrap();
        assert_eq!(f, Homomorphism::identity(h.group()));
    }

    #[test]
    fn coboundary_preimages() {
        use rand::SeedableRng;
        let k = torus7();
        let sub = Subcomplex::full_on(&k, |v| v < 2);
        let pair = SimplicialPair::new(k.clone(), sub).unwrap();
        let g = FinAbGroup::new(vec![2, 12]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let lam = Cochain::random(&pair, 1, &g, &mut rng);
            let c = coboundary(&k, &lam, &g);
            let sol = coboundary_preimage(&pair, 1, &c, &g).expect("coboundary");
            assert!(sol.vanishes_on(&pair.sub));
            assert_eq!(coboundary(&k, &sol, &g), c);
        }
        let h = cohomology(&pair, 2, &g);
        let gen = h.representative(&h.group().generator(0));
        assert!(coboundary_preimage(&pair, 1, &gen, &g).is_none());
    }
}
