use super::group::{CyclicIso, FinAbGroup, GroupElement, Homomorphism};
use super::matrix::{smith_normal_form, IntMatrix};
use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Generators of `{x ∈ ⊕ⱼ ℤ_{sⱼ} : A·x = 0 in ⊕ᵢ ℤ_{tᵢ}}`.
///
/// A modulus of 0 stands for ℤ. `A` must be well defined on residues, i.e.
/// `sⱼ·A[·][j] ≡ 0` in the target. Zero generators are omitted, so the
/// trivial kernel yields an empty list.
pub fn kernel_mod(a: &IntMatrix, source: &[u64], target: &[u64]) -> Result<Vec<Vec<i64>>> {
    let (r, c) = (a.rows(), a.cols());
    if source.len() != c || target.len() != r {
        return invalid(format!("kernel_mod: {r}x{c} matrix with {} source and {} target moduli", source.len(), target.len()));
    }
    for (j, &s) in source.iter().enumerate() {
        for (i, &t) in target.iter().enumerate() {
            if t != 0 && !(a.get(i, j) * BigInt::from(s)).is_multiple_of(&BigInt::from(t)) {
                return invalid(format!("kernel_mod: column {j} is not well defined modulo {s}"));
            }
            if t == 0 && s != 0 && !a.get(i, j).is_zero() {
                return invalid(format!("kernel_mod: torsion column {j} maps into a free target"));
            }
        }
    }
    // Integer kernel of [A | −diag(t)], projected onto the x block.
    let aug = a.hcat(&IntMatrix::diagonal(&target.iter().map(|&t| -(t as i64)).collect::<Vec<_>>()));
    let s = smith_normal_form(&aug);
    let rank = s.rank();
    let mut gens = Vec::new();
    for k in rank..aug.cols() {
        let v: Vec<i64> = (0..c)
            .map(|j| {
                let x = s.v.get(j, k);
                let x = if source[j] == 0 { x.clone() } else { x.mod_floor(&BigInt::from(source[j])) };
                x.to_i64().expect("kernel generator overflow")
            })
            .collect();
        if v.iter().any(|&x| x != 0) {
            gens.push(v);
        }
    }
    Ok(gens)
}

/// `kernel_mod` with a single modulus on both sides.
pub fn kernel_mod_uniform(a: &IntMatrix, n: u64) -> Result<Vec<Vec<i64>>> {
    kernel_mod(a, &vec![n; a.cols()], &vec![n; a.rows()])
}

/// Finite group `(⊕ⱼ ℤ_{mⱼ}) / ⟨relation columns⟩` with projection and a
/// deterministic section.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FinAbGroup,
    pub moduli: Vec<u64>,
    /// `group coords = proj · x`, one row per invariant factor.
    proj: Vec<Vec<BigInt>>,
    /// Representatives `x` of the group generators.
    gen_reps: Vec<Vec<BigInt>>,
    /// Hermite basis of the relation lattice: row `i` vanishes before column `i`
    /// and has positive entry there.
    hermite: Vec<Vec<BigInt>>,
}

/// Presents the cokernel of `relations` (columns are relations) in the ambient
/// module `⊕ ℤ_{mⱼ}`, where a modulus of 0 means ℤ. The cokernel must be finite.
pub fn cokernel_presentation(relations: &IntMatrix, moduli: &[u64]) -> Result<Presentation> {
    let a = moduli.len();
    if relations.rows() != a {
        return invalid(format!("cokernel_presentation: {} relation rows for {a} ambient coordinates", relations.rows()));
    }
    let full = relations.hcat(&IntMatrix::diagonal(&moduli.iter().map(|&m| m as i64).collect::<Vec<_>>()));
    let s = smith_normal_form(&full);
    let diag = s.diagonal();
    if diag.len() < a || diag.iter().take(a).any(Zero::is_zero) {
        return invalid("cokernel_presentation: cokernel is infinite");
    }
    let keep: Vec<usize> = (0..a).filter(|&i| diag[i] > BigInt::from(1)).collect();
    let factors: Vec<u64> = keep.iter().map(|&i| diag[i].to_u64().expect("factor overflow")).collect();
    let group = FinAbGroup::new(factors)?;
    let proj = keep.iter().map(|&i| s.u.row(i).to_vec()).collect();
    let gen_reps = keep.iter().map(|&i| (0..a).map(|j| s.u_inv.get(j, i).clone()).collect()).collect();
    let hermite = hermite_rows(&full);
    let p = Presentation { group, moduli: moduli.to_vec(), proj, gen_reps, hermite };
    Ok(p)
}

/// Row-style Hermite basis of the lattice spanned by the columns of `m`,
/// assumed of full rank.
fn hermite_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let a = m.rows();
    let mut vecs: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| (0..a).map(|i| m.get(i, j).clone()).collect()).collect();
    vecs.retain(|v| v.iter().any(|x| !x.is_zero()));
    let mut basis = Vec::with_capacity(a);
    for col in 0..a {
        // Euclid on the entries at `col` among the remaining vectors.
        loop {
            let nz: Vec<usize> = (0..vecs.len()).filter(|&k| !vecs[k][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&k| vecs[k][col].abs()).unwrap();
            for &k in &nz {
                if k != piv {
                    let q = vecs[k][col].div_floor(&vecs[piv][col]);
                    let pv = vecs[piv].clone();
                    for (x, y) in vecs[k].iter_mut().zip(&pv) {
                        *x -= &q * y;
                    }
                }
            }
        }
        let idx = (0..vecs.len()).find(|&k| !vecs[k][col].is_zero()).expect("relation lattice is not of full rank");
        let mut v = vecs.swap_remove(idx);
        if v[col].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        basis.push(v);
        vecs.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    basis
}

impl Presentation {
    /// Class of an ambient vector.
    pub fn project(&self, x: &[i64]) -> GroupElement {
        let coords: Vec<i64> = self
            .proj
            .iter()
            .zip(self.group.factors())
            .map(|(row, &n)| {
                let s: BigInt = row.iter().zip(x).map(|(r, &xi)| r * xi).sum();
                s.mod_floor(&BigInt::from(n)).to_i64().unwrap()
            })
            .collect();
        self.group.reduce_signed(&coords)
    }

    /// Lexicographically smallest non-negative representative of `g`.
    pub fn section(&self, g: &GroupElement) -> Vec<i64> {
        let mut x: Vec<BigInt> = vec![BigInt::zero(); self.moduli.len()];
        for (rep, &c) in self.gen_reps.iter().zip(&g.coords) {
            for (xi, ri) in x.iter_mut().zip(rep) {
                *xi += ri * c;
            }
        }
        for (i, h) in self.hermite.iter().enumerate() {
            let q = x[i].div_floor(&h[i]);
            if !q.is_zero() {
                for (xj, hj) in x.iter_mut().zip(h) {
                    *xj -= &q * hj;
                }
            }
        }
        x.iter().map(|v| v.to_i64().expect("representative overflow")).collect()
    }

    /// Projection as a homomorphism, when every ambient modulus is nonzero.
    pub fn projection(&self) -> Result<Homomorphism> {
        if self.moduli.contains(&0) {
            return invalid("projection from a module with free summands is not a finite group map");
        }
        let (amb, iso): (FinAbGroup, CyclicIso) = FinAbGroup::from_cyclic_orders(&self.moduli);
        let images: Vec<GroupElement> = (0..amb.rank())
            .map(|k| {
                let x = iso.backward(&amb.generator(k));
                self.project(&x.iter().map(|&v| v as i64).collect::<Vec<_>>())
            })
            .collect();
        Homomorphism::from_images(amb, self.group.clone(), &images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_mod_uniform(&IntMatrix::from_rows(&[[2]]), 4).unwrap(), vec![vec![2]]);
        assert!(kernel_mod_uniform(&IntMatrix::identity(2), 2).unwrap().is_empty());
        assert_eq!(kernel_mod_uniform(&IntMatrix::from_rows(&[[1, 1]]), 2).unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn cokernel_examples() {
        let p = cokernel_presentation(&IntMatrix::diagonal(&[2i64, 2]), &[0, 0]).unwrap();
        assert_eq!(p.group.factors(), &[2, 2]);
        let p = cokernel_presentation(&IntMatrix::from_rows(&[[2, 0], [0, 1]]), &[0, 0]).unwrap();
        assert_eq!(p.group.factors(), &[2]);
        let p = cokernel_presentation(&IntMatrix::zeros(1, 0), &[6]).unwrap();
        assert_eq!(p.group.factors(), &[6]);
        for g in p.group.enumerate().unwrap() {
            assert_eq!(p.section(&g), vec![g.coords[0] as i64]);
        }
    }

    #[test]
    fn section_is_lexicographic_minimum() {
        // ℤ₄ × ℤ₄ modulo (2, 2): the class of (1, 3) contains (3, 1) and (1, 3);
        // both reduce to the minimum (1, 3) with first coordinate 1.
        let p = cokernel_presentation(&IntMatrix::from_rows(&[[2], [2]]), &[4, 4]).unwrap();
        assert_eq!(p.group.order(), 8);
        for g in p.group.enumerate().unwrap() {
            let x = p.section(&g);
            assert_eq!(p.project(&x), g);
            let mut best: Option<Vec<i64>> = None;
            for a in 0..4 {
                for b in 0..4 {
                    if p.project(&[a, b]) == g && best.as_ref().is_none_or(|v| vec![a, b] < *v) {
                        best = Some(vec![a, b]);
                    }
                }
            }
            assert_eq!(Some(x), best);
        }
    }

    #[test]
    fn infinite_cokernel_rejected() {
        assert!(cokernel_presentation(&IntMatrix::zeros(1, 0), &[0]).is_err());
    }
}
