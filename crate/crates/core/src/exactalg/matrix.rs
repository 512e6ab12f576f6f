use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from `i64` rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i].as_ref()[j]))
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone().into() } else { BigInt::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i * self.cols + j] = v.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Entries as `i64`, if all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * f;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * f;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U·A·V = D` together with the inverses of the transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Operations applied during the reduction, replayed on the transforms.
struct Tracker {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.u.add_row(dst, src, f);
        self.u_inv.add_col(src, dst, &-f);
    }
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.v.add_col(dst, src, f);
        self.v_inv.add_row(src, dst, &-f);
    }
    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
        for r in 0..self.u_inv.rows() {
            let v = -self.u_inv.get(r, i);
            self.u_inv.set(r, i, v);
        }
    }
}

/// Smith normal form over ℤ with unimodular transforms.
///
/// The result satisfies `U·A·V = D`, `D` diagonal with non-negative entries
/// forming a divisibility chain.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut t = Tracker {
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for p in 0..m.min(n) {
        // Bring the smallest nonzero entry of the trailing block to (p, p).
        let Some((i0, j0)) = min_abs_entry(&d, p, p) else { break };
        d.swap_rows(p, i0);
        t.swap_rows(p, i0);
        d.swap_cols(p, j0);
        t.swap_cols(p, j0);
        loop {
            let mut clean = true;
            for i in p + 1..m {
                if !d.get(i, p).is_zero() {
                    let q = -d.get(i, p).div_floor(d.get(p, p));
                    d.add_row(i, p, &q);
                    t.add_row(i, p, &q);
                    if !d.get(i, p).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in p + 1..n {
                if !d.get(p, j).is_zero() {
                    let q = -d.get(p, j).div_floor(d.get(p, p));
                    d.add_col(j, p, &q);
                    t.add_col(j, p, &q);
                    if !d.get(p, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // A remainder smaller than the pivot exists in row or column p.
                let (mut bi, mut bj) = (p, p);
                for i in p + 1..m {
                    let x = d.get(i, p);
                    if !x.is_zero() && x.abs() < d.get(bi, bj).abs() {
                        (bi, bj) = (i, p);
                    }
                }
                for j in p + 1..n {
                    let x = d.get(p, j);
                    if !x.is_zero() && x.abs() < d.get(bi, bj).abs() {
                        (bi, bj) = (p, j);
                    }
                }
                d.swap_rows(p, bi);
                t.swap_rows(p, bi);
                d.swap_cols(p, bj);
                t.swap_cols(p, bj);
                continue;
            }
            let piv = d.get(p, p).clone();
            let bad = (p + 1..m).find(|&i| (p + 1..n).any(|j| !d.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(p, i, &one);
                    t.add_row(p, i, &one);
                }
                None => break,
            }
        }
        if d.get(p, p).is_negative() {
            d.negate_row(p);
            t.negate_row(p);
        }
    }
    let out = SmithForm { u: t.u, d, v: t.v, u_inv: t.u_inv, v_inv: t.v_inv };
    debug_assert!(verify_smith(a, &out));
    out
}

fn min_abs_entry(d: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..d.rows() {
        for j in c0..d.cols() {
            let x = d.get(i, j);
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Checks every postcondition of [`smith_normal_form`] by direct multiplication.
pub fn verify_smith(a: &IntMatrix, s: &SmithForm) -> bool {
    let diag = s.diagonal();
    s.u.mul(a).mul(&s.v) == s.d
        && s.d.is_diagonal()
        && diag.iter().all(|x| !x.is_negative())
        && diag.windows(2).all(|w| w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero())
        && s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows())
        && s.v.mul(&s.v_inv) == IntMatrix::identity(a.cols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(s: &SmithForm) -> Vec<i64> {
        s.diagonal().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(diag_i64(&s), vec![2, 4]);
        assert!(verify_smith(&a, &s));
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn identity_and_zero() {
        let i = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&i).d, i);
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero());
        assert!(verify_smith(&z, &s));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = IntMatrix::diagonal(&[4i64, 6]);
        assert_eq!(diag_i64(&smith_normal_form(&a)), vec![2, 12]);
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_rows(&[[0, 1, 2], [3, 4, 5], [6, 7, 9]]);
        assert_eq!(a.determinant(), BigInt::from(-3));
    }
}
