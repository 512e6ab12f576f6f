use super::matrix::{smith_normal_form, IntMatrix};
use crate::error::{invalid, Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

static ENUMERATION_CAP: AtomicU64 = AtomicU64::new(1_000_000);

/// Current cap on the number of elements any enumeration may visit.
pub fn enumeration_cap() -> u64 {
    ENUMERATION_CAP.load(Ordering::Relaxed)
}

pub fn set_enumeration_cap(cap: u64) {
    ENUMERATION_CAP.store(cap, Ordering::Relaxed);
}

/// Finite abelian group `ℤ_{n₁} × … × ℤ_{n_k}` in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

/// Element of a [`FinAbGroup`], as reduced coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// Element of the Pontryagin dual `G* = Hom(G, ℝ/ℤ)`, in the coordinates
/// dual to those of `G`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub GroupElement);

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{}", self.0)
    }
}

/// Isomorphism between a product of cyclic groups and its invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicIso {
    pub cyclic_orders: Vec<u64>,
    /// `invariant coords = to_invariant · cyclic coords`.
    pub to_invariant: Vec<Vec<u64>>,
    /// `cyclic coords = from_invariant · invariant coords`.
    pub from_invariant: Vec<Vec<u64>>,
}

impl CyclicIso {
    pub fn forward(&self, group: &FinAbGroup, c: &[u64]) -> GroupElement {
        group.reduce(self.to_invariant.iter().map(|row| dot(row, c)).collect())
    }

    pub fn backward(&self, h: &GroupElement) -> Vec<u64> {
        self.from_invariant
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(row, &o)| if o == 0 { 0 } else { (dot(row, &h.coords) % o as u128) as u64 })
            .collect()
    }
}

fn dot(a: &[u64], b: &[u64]) -> u128 {
    a.iter().zip(b).map(|(&x, &y)| x as u128 * y as u128).sum()
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// Group from invariant factors; each must be `≥ 2` and divide the next.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return invalid(format!("invariant factors must be >= 2, got {factors:?}"));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return invalid(format!("invariant factors must form a divisibility chain, got {factors:?}"));
        }
        Ok(FinAbGroup { factors })
    }

    /// Invariant-factor form of `ℤ_{o₁} × … × ℤ_{o_m}` with explicit isomorphism.
    /// Orders `≤ 1` denote trivial factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> (Self, CyclicIso) {
        let orders: Vec<u64> = orders.iter().map(|&o| o.max(1)).collect();
        let s = smith_normal_form(&IntMatrix::diagonal(&orders));
        let diag: Vec<u64> = s.diagonal().iter().map(|x| x.to_u64().expect("order overflow")).collect();
        let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] > 1).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| diag[i]).collect();
        let to_invariant = keep
            .iter()
            .map(|&i| {
                (0..orders.len())
                    .map(|j| s.u.get(i, j).mod_floor(&diag[i].into()).to_u64().unwrap())
                    .collect()
            })
            .collect();
        let from_invariant = (0..orders.len())
            .map(|j| {
                keep.iter()
                    .map(|&i| s.u_inv.get(j, i).mod_floor(&orders[j].into()).to_u64().unwrap())
                    .collect()
            })
            .collect();
        (FinAbGroup { factors }, CyclicIso { cyclic_orders: orders, to_invariant, from_invariant })
    }

    /// Parses `Z2`, `Z2xZ4`, `Z2 x Z3`, `1` or `0` (trivial).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" || t == "1" || t.is_empty() {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for part in t.split(['x', 'X', '×']) {
            let p = part.trim();
            let digits = p.strip_prefix('Z').or_else(|| p.strip_prefix('ℤ')).unwrap_or(p);
            let n: u64 = digits.trim_start_matches('_').parse().map_err(|_| Error::Parse(format!("bad group factor `{p}`")))?;
            if n == 0 {
                return Err(Error::Parse("infinite cyclic factors are not supported".into()));
            }
            orders.push(n);
        }
        Ok(Self::from_cyclic_orders(&orders).0)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&n| n as u128).product()
    }

    /// Least common multiple of element orders (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Reduces arbitrary non-negative coordinates into the group.
    pub fn reduce(&self, coords: Vec<u128>) -> GroupElement {
        assert_eq!(coords.len(), self.rank(), "coordinate count mismatch");
        GroupElement {
            coords: coords.iter().zip(&self.factors).map(|(&c, &n)| (c % n as u128) as u64).collect(),
        }
    }

    pub fn reduce_signed(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.rank(), "coordinate count mismatch");
        GroupElement {
            coords: coords.iter().zip(&self.factors).map(|(&c, &n)| c.rem_euclid(n as i64) as u64).collect(),
        }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        if coords.len() != self.rank() || coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n) {
            return invalid(format!("{coords:?} is not a reduced element of {self}"));
        }
        Ok(GroupElement { coords })
    }

    /// The element with a single coordinate `1` in slot `i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.zero();
        g.coords[i] = 1;
        g
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a.coords.iter().zip(&b.coords).zip(&self.factors).map(|((&x, &y), &n)| (x + y) % n).collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement { coords: a.coords.iter().zip(&self.factors).map(|(&x, &n)| (n - x) % n).collect() }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| ((k.rem_euclid(n as i64) as u128 * x as u128) % n as u128) as u64)
                .collect(),
        }
    }

    /// Order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords.iter().zip(&self.factors).fold(1, |acc, (&x, &n)| acc.lcm(&(n / n.gcd(&x))))
    }

    /// Iterates over all elements in lexicographic order of coordinates,
    /// subject to the global enumeration cap.
    pub fn enumerate(&self) -> Result<Elements> {
        self.enumerate_with_cap(enumeration_cap())
    }

    pub fn enumerate_with_cap(&self, cap: u64) -> Result<Elements> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(Elements { factors: self.factors.clone(), next: Some(self.zero().coords) })
    }

    /// Element at position `index` of [`enumerate`](Self::enumerate), for
    /// splitting enumeration by index range.
    pub fn element_at(&self, mut index: u128) -> GroupElement {
        assert!(index < self.order(), "index out of range");
        let mut coords = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.factors[i] as u128;
            coords[i] = (index % n) as u64;
            index /= n;
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, a: &GroupElement) -> u128 {
        a.coords.iter().zip(&self.factors).fold(0, |acc, (&x, &n)| acc * n as u128 + x as u128)
    }

    /// Pontryagin dual; isomorphic to `G` with the same invariant factors.
    pub fn dual(&self) -> FinAbGroup {
        self.clone()
    }

    /// `χ(g) = Σ χᵢ gᵢ / nᵢ mod 1`.
    pub fn pair(&self, chi: &Character, g: &GroupElement) -> Ratio<i64> {
        let e = self.exponent();
        let num: u128 = chi
            .0
            .coords
            .iter()
            .zip(&g.coords)
            .zip(&self.factors)
            .map(|((&c, &x), &n)| c as u128 * x as u128 * (e / n) as u128)
            .sum();
        Ratio::new((num % e as u128) as i64, e as i64)
    }

    /// Direct product with the isomorphism from concatenated coordinates.
    pub fn product(&self, other: &FinAbGroup) -> (FinAbGroup, CyclicIso) {
        let mut orders = self.factors.clone();
        orders.extend_from_slice(&other.factors);
        Self::from_cyclic_orders(&orders)
    }

    /// Subgroup generated by `gens`, as a sorted element set.
    pub fn span(&self, gens: &[GroupElement]) -> Result<BTreeSet<GroupElement>> {
        let cap = enumeration_cap() as usize;
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut queue = VecDeque::from([self.zero()]);
        seen.insert(self.zero());
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { order: seen.len() as u128, cap: cap as u64 });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Odometer over all elements of a group.
pub struct Elements {
    factors: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.factors[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(GroupElement { coords: cur })
    }
}

/// Group homomorphism given by a coordinate matrix (`target.rank() × source.rank()`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: Vec<Vec<u64>>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.matrix)
    }
}

impl Homomorphism {
    /// Checks well-definedness: each source generator of order `n` maps to an
    /// element killed by `n`.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Mismatch(format!("homomorphism matrix shape for {source} -> {target}")));
        }
        let matrix: Vec<Vec<u64>> =
            matrix.into_iter().zip(target.factors()).map(|(r, &n)| r.into_iter().map(|x| x % n).collect()).collect();
        let h = Homomorphism { source, target, matrix };
        for (j, &n) in h.source.factors().iter().enumerate() {
            let img = h.apply(&h.source.generator(j));
            if !h.target.scale(n as i64, &img).is_zero() {
                return invalid(format!("generator {j} of order {n} maps to {img}, not killed by {n}"));
            }
        }
        Ok(h)
    }

    /// Builds the map from the images of the source generators.
    pub fn from_images(source: FinAbGroup, target: FinAbGroup, images: &[GroupElement]) -> Result<Self> {
        let matrix = (0..target.rank()).map(|i| images.iter().map(|g| g.coords[i]).collect()).collect();
        Self::new(source, target, matrix)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let matrix = (0..g.rank()).map(|i| (0..g.rank()).map(|j| u64::from(i == j)).collect()).collect();
        Homomorphism { source: g.clone(), target: g.clone(), matrix }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        Homomorphism { source: source.clone(), target: target.clone(), matrix: vec![vec![0; source.rank()]; target.rank()] }
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        self.target.reduce(self.matrix.iter().map(|row| dot(row, &g.coords)).collect())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target != other.source {
            return Err(Error::Mismatch(format!("cannot compose {} -> {} with {} -> {}", self.source, self.target, other.source, other.target)));
        }
        let images: Vec<GroupElement> =
            (0..self.source.rank()).map(|j| other.apply(&self.apply(&self.source.generator(j)))).collect();
        Self::from_images(self.source.clone(), other.target.clone(), &images)
    }

    /// Image as an element set.
    pub fn image(&self) -> Result<BTreeSet<GroupElement>> {
        let gens: Vec<GroupElement> = (0..self.source.rank()).map(|j| self.apply(&self.source.generator(j))).collect();
        self.target.span(&gens)
    }

    /// All `x` with `f(x) = y`, through [`solve_congruences`].
    pub fn preimage(&self, y: &GroupElement) -> Result<Vec<GroupElement>> {
        let Some((x, kernel)) = solve_congruences(&self.matrix, self.target.factors(), self.source.factors(), &y.coords) else {
            return Ok(Vec::new());
        };
        let x = GroupElement::new(x);
        let kernel: Vec<GroupElement> = kernel.into_iter().map(GroupElement::new).collect();
        Ok(self.source.span(&kernel)?.iter().map(|k| self.source.add(&x, k)).collect())
    }

    /// Kernel by exhaustive enumeration of the source.
    pub fn kernel(&self) -> Result<Vec<GroupElement>> {
        Ok(self.source.enumerate()?.filter(|g| self.apply(g).is_zero()).collect())
    }

    pub fn image_order(&self) -> Result<u128> {
        Ok(self.image()?.len() as u128)
    }

    pub fn kernel_order(&self) -> Result<u128> {
        Ok(self.source.order() / self.image_order()?)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.image_order()? == self.source.order())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image_order()? == self.target.order())
    }

    /// Pontryagin dual map `target* → source*`, `χ ↦ χ∘self`.
    pub fn dual(&self) -> Homomorphism {
        // χ∘f on generator j: Σᵢ χᵢ fᵢⱼ / nᵢ = (Σᵢ χᵢ fᵢⱼ mⱼ/nᵢ) / mⱼ.
        let rows = (0..self.source.rank())
            .map(|j| {
                let m = self.source.factors()[j];
                (0..self.target.rank())
                    .map(|i| {
                        let n = self.target.factors()[i];
                        let f = self.matrix[i][j] as u128 * m as u128;
                        debug_assert!(f.is_multiple_of(n as u128));
                        ((f / n as u128) % m as u128) as u64
                    })
                    .collect()
            })
            .collect();
        Homomorphism { source: self.target.dual(), target: self.source.dual(), matrix: rows }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(Zero::is_zero))
    }
}

/// Solutions of `Σⱼ aᵢⱼ xⱼ ≡ yᵢ (mod mᵢ)` with `xⱼ ∈ ℤ_{nⱼ}`: one solution
/// and generators of the solutions of the homogeneous system, or `None`.
/// Works through a Smith form of `[A | −diag(m)]`, so the cost does not
/// depend on the size of the source group.
pub fn solve_congruences(a: &[Vec<u64>], moduli: &[u64], source: &[u64], y: &[u64]) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let (r, s) = (moduli.len(), source.len());
    let m = IntMatrix::from_fn(r, s + r, |i, j| {
        if j < s {
            a[i][j].into()
        } else if j - s == i {
            -num_bigint::BigInt::from(moduli[i])
        } else {
            0.into()
        }
    });
    let f = smith_normal_form(&m);
    let rank = f.rank();
    let uy: Vec<num_bigint::BigInt> =
        (0..r).map(|i| (0..r).map(|k| f.u.get(i, k) * num_bigint::BigInt::from(y[k])).sum()).collect();
    let mut w = vec![num_bigint::BigInt::zero(); s + r];
    for i in 0..r {
        if i < rank {
            let (q, rem) = uy[i].div_rem(f.d.get(i, i));
            if !rem.is_zero() {
                return None;
            }
            w[i] = q;
        } else if !uy[i].is_zero() {
            return None;
        }
    }
    let reduce = |col: &dyn Fn(usize) -> num_bigint::BigInt| -> Vec<u64> {
        (0..s).map(|j| col(j).mod_floor(&source[j].into()).to_u64().unwrap()).collect()
    };
    let x = reduce(&|j| (0..s + r).map(|k| f.v.get(j, k) * &w[k]).sum());
    let kernel = (rank..s + r).map(|k| reduce(&|j| f.v.get(j, k).clone())).filter(|g| g.iter().any(|&c| c != 0)).collect();
    Some((x, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts() {
        let g = FinAbGroup::parse("Z2xZ2").unwrap();
        assert_eq!(g.enumerate().unwrap().count(), 4);
        assert_eq!(FinAbGroup::trivial().enumerate().unwrap().collect::<Vec<_>>(), vec![GroupElement::new(vec![])]);
        assert_eq!(FinAbGroup::cyclic(6).enumerate().unwrap().count(), 6);
    }

    #[test]
    fn cap_names_order() {
        let g = FinAbGroup::parse("Z4xZ4").unwrap();
        assert_eq!(g.enumerate_with_cap(10).err(), Some(Error::CapExceeded { order: 16, cap: 10 }));
    }

    #[test]
    fn cyclic_orders_to_invariant_factors() {
        let (g, iso) = FinAbGroup::from_cyclic_orders(&[2, 3, 4]);
        assert_eq!(g.factors(), &[2, 12]);
        for a in 0..2 {
            for b in 0..3 {
                for c in 0..4 {
                    let h = iso.forward(&g, &[a, b, c]);
                    assert_eq!(iso.backward(&h), vec![a, b, c]);
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let z2 = FinAbGroup::cyclic(2);
        let one = GroupElement::new(vec![1]);
        assert_eq!(z2.pair(&Character(one.clone()), &one), Ratio::new(1, 2));
        let z4 = FinAbGroup::cyclic(4);
        assert_eq!(z4.pair(&Character(one.clone()), &one), Ratio::new(1, 4));
        let g = FinAbGroup::parse("Z2xZ6").unwrap();
        for x in g.enumerate().unwrap() {
            assert!(g.pair(&Character(g.zero()), &x).is_zero());
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(FinAbGroup::parse("Z2xZ4").unwrap().to_string(), "Z2 x Z4");
        assert_eq!(FinAbGroup::parse("Z6").unwrap().factors(), &[6]);
        assert_eq!(FinAbGroup::parse("Z2 x Z3").unwrap().factors(), &[6]);
        assert!(FinAbGroup::parse("Q").is_err());
    }

    #[test]
    fn homomorphism_well_definedness() {
        let z2 = FinAbGroup::cyclic(2);
        let z4 = FinAbGroup::cyclic(4);
        assert!(Homomorphism::new(z2.clone(), z4.clone(), vec![vec![2]]).is_ok());
        assert!(Homomorphism::new(z2, z4, vec![vec![1]]).is_err());
    }

    #[test]
    fn dual_map_pairs_correctly() {
        let z2 = FinAbGroup::cyclic(2);
        let z4 = FinAbGroup::cyclic(4);
        let f = Homomorphism::new(z2.clone(), z4.clone(), vec![vec![2]]).unwrap();
        let fd = f.dual();
        for chi in z4.enumerate().unwrap() {
            for g in z2.enumerate().unwrap() {
                let lhs = z4.pair(&Character(chi.clone()), &f.apply(&g));
                let rhs = z2.pair(&Character(fd.apply(&chi)), &g);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
