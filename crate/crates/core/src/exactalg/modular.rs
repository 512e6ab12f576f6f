//! Diagonalization of sparse matrices over `ℤ/pᵉ`.
//!
//! Over a local ring every matrix is equivalent to a diagonal one whose
//! entries are `pᵛ` times units. Pivots are taken level by level in `v`, so
//! every multiplier used during elimination is a ring element and no
//! division by non-units ever occurs.

/// Prime-power modulus `pᵉ` with `e ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Self {
        assert!(p >= 2 && e >= 1, "invalid prime power");
        PrimePower { p, e }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// `pᵏ`.
    pub fn pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    /// p-adic valuation of a residue; `e` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus();
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit modulo `pᵉ`.
    pub fn unit_inverse(&self, u: u64) -> u64 {
        let n = self.modulus() as i128;
        let (mut r0, mut r1) = (n, (u as i128).rem_euclid(n));
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        assert_eq!(r0, 1, "{u} is not a unit mod {n}");
        t0.rem_euclid(n) as u64
    }
}

/// Factor an integer `n ≥ 2` into prime powers, ascending by prime.
pub fn prime_power_factors(mut n: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push(PrimePower::new(p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push(PrimePower::new(n, 1));
    }
    out
}

/// Sparse vector: nonzero `(index, residue)` pairs sorted by index.
pub type SparseVec = Vec<(u32, u32)>;

/// `dst += f·src (mod n)`.
pub fn axpy(dst: &mut SparseVec, src: &[(u32, u32)], f: u64, n: u64) {
    let f = f % n;
    if f == 0 || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i]);
            i += 1;
        } else if take_src {
            out.push((src[j].0, (f * src[j].1 as u64 % n) as u32));
            j += 1;
        } else {
            let v = (dst[i].1 as u64 + f * src[j].1 as u64) % n;
            if v != 0 {
                out.push((dst[i].0, v as u32));
            }
            i += 1;
            j += 1;
        }
    }
    *dst = out;
}

/// Value at `idx`.
pub fn sparse_get(v: &[(u32, u32)], idx: usize) -> u64 {
    v.binary_search_by_key(&(idx as u32), |e| e.0).map_or(0, |k| v[k].1 as u64)
}

/// Dot product of a sparse and a dense vector.
pub fn sparse_dot(v: &[(u32, u32)], x: &[u64], n: u64) -> u64 {
    v.iter().fold(0, |acc, &(i, a)| (acc + a as u64 * (x[i as usize] % n)) % n)
}

/// Row-major sparse matrix of residues modulo `n < 2³²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub cols: usize,
    pub modulus: u64,
    pub rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!((2..=u32::MAX as u64).contains(&modulus));
        SparseMatrix { cols, modulus, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for (i, r) in m.rows.iter_mut().enumerate() {
            r.push((i as u32, 1));
        }
        m
    }

    /// From `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, modulus: u64, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut m = Self::zeros(rows, cols, modulus);
        let mut buckets: Vec<Vec<(u32, i64)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            buckets[i].push((j as u32, v));
        }
        let n = modulus as i64;
        for (row, mut b) in m.rows.iter_mut().zip(buckets) {
            b.sort_unstable_by_key(|e| e.0);
            for (j, v) in b {
                match row.last_mut() {
                    Some(last) if last.0 == j => last.1 = ((last.1 as i64 + v).rem_euclid(n)) as u32,
                    _ => row.push((j, v.rem_euclid(n) as u32)),
                }
            }
            row.retain(|e| e.1 != 0);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        sparse_get(&self.rows[i], j)
    }

    /// `self · x`.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        self.rows.iter().map(|r| sparse_dot(r, x, self.modulus)).collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.cols, self.rows.len(), self.modulus);
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                out.rows[j as usize].push((i as u32, v));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    /// Valuation of the pivot entry, in `0..e`.
    pub val: u32,
    /// The pivot entry `D[row][col]`.
    pub entry: u64,
}

/// Which transforms to record during [`eliminate`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub rows: bool,
    pub cols: bool,
}

/// Result of diagonalizing `A` over `ℤ/pᵉ`: `U·A·V = D` where `D` vanishes
/// off the pivots.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub pp: PrimePower,
    pub rows: usize,
    pub cols: usize,
    pub pivots: Vec<Pivot>,
    col_pivot: Vec<Option<u32>>,
    row_pivot: Vec<Option<u32>>,
    /// `U`, by rows.
    pub u: Option<SparseMatrix>,
    /// `U⁻¹` by columns: row `r` holds column `r` of `U⁻¹`.
    pub u_inv_t: Option<SparseMatrix>,
    /// `V` by columns: row `c` holds column `c` of `V`.
    pub v_t: Option<SparseMatrix>,
    /// `V⁻¹`, by rows.
    pub v_inv: Option<SparseMatrix>,
}

impl Elimination {
    pub fn col_pivot(&self, c: usize) -> Option<Pivot> {
        self.col_pivot[c].map(|i| self.pivots[i as usize])
    }

    pub fn row_pivot(&self, r: usize) -> Option<Pivot> {
        self.row_pivot[r].map(|i| self.pivots[i as usize])
    }

    /// `log_p |ker A|` for `A` acting on `(ℤ/pᵉ)^cols`.
    pub fn kernel_log_order(&self) -> u64 {
        let e = self.pp.e as u64;
        (0..self.cols).map(|c| self.col_pivot(c).map_or(e, |pv| pv.val as u64)).sum()
    }

    /// `log_p |im A|`.
    pub fn image_log_order(&self) -> u64 {
        self.pivots.iter().map(|pv| (self.pp.e - pv.val) as u64).sum()
    }

    /// Generators of `ker A` as `(c, exp)`: the generator `p^(e−exp)·V e_c`
    /// has order `p^exp`.
    pub fn kernel_basis(&self) -> Vec<(usize, u32)> {
        (0..self.cols)
            .filter_map(|c| match self.col_pivot(c) {
                None => Some((c, self.pp.e)),
                Some(pv) if pv.val > 0 => Some((c, pv.val)),
                Some(_) => None,
            })
            .collect()
    }

    /// Cokernel summands as `(r, exp)`: the class of `x` has coordinate
    /// `(U x)_r mod p^exp`.
    /// Some `x` with `A·x = y`, or `None` when `y` is not in the image.
    /// Needs both transforms.
    pub fn solve(&self, y: &[u64]) -> Option<Vec<u64>> {
        let (u, v_t) = (self.u.as_ref().expect("row transform tracked"), self.v_t.as_ref().expect("column transform tracked"));
        let n = self.pp.modulus();
        let z = u.apply(y);
        let mut x = vec![0u64; self.cols];
        for (r, &zr) in z.iter().enumerate() {
            match self.row_pivot(r) {
                None if zr != 0 => return None,
                None => {}
                Some(p) => {
                    let pv = self.pp.pow(p.val);
                    if zr % pv != 0 {
                        return None;
                    }
                    let w = (zr / pv) as u128 * self.pp.unit_inverse(p.entry / pv) as u128 % n as u128;
                    if w != 0 {
                        for &(i, vi) in &v_t.rows[p.col] {
                            x[i as usize] = ((x[i as usize] as u128 + w * vi as u128) % n as u128) as u64;
                        }
                    }
                }
            }
        }
        Some(x)
    }

    pub fn cokernel_basis(&self) -> Vec<(usize, u32)> {
        (0..self.rows)
            .filter_map(|r| match self.row_pivot(r) {
                None => Some((r, self.pp.e)),
                Some(pv) if pv.val > 0 => Some((r, pv.val)),
                Some(_) => None,
            })
            .collect()
    }
}

/// Diagonalizes `a` over `ℤ/pᵉ`. The matrix modulus must equal `pᵉ`.
pub fn eliminate(a: SparseMatrix, pp: PrimePower, track: Track) -> Elimination {
    let n = pp.modulus();
    assert_eq!(a.modulus, n, "matrix modulus differs from pᵉ");
    let (m, c) = (a.nrows(), a.cols);
    let mut rows = a.rows;
    // Rows that may hold a nonzero in each column; entries can be stale.
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); c];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j as usize].push(i as u32);
        }
    }
    let mut out = Elimination {
        pp,
        rows: m,
        cols: c,
        pivots: Vec::new(),
        col_pivot: vec![None; c],
        row_pivot: vec![None; m],
        u: track.rows.then(|| SparseMatrix::identity(m, n)),
        u_inv_t: track.rows.then(|| SparseMatrix::identity(m, n)),
        v_t: track.cols.then(|| SparseMatrix::identity(c, n)),
        v_inv: track.cols.then(|| SparseMatrix::identity(c, n)),
    };
    for level in 0..pp.e {
        for col in 0..c {
            if out.col_pivot[col].is_some() {
                continue;
            }
            let mut live: Vec<(u32, u64)> = Vec::new();
            let mut best: Option<(usize, usize)> = None;
            let mut cands = std::mem::take(&mut col_rows[col]);
            cands.sort_unstable();
            cands.dedup();
            for &r in &cands {
                let r = r as usize;
                if out.row_pivot[r].is_some() {
                    continue;
                }
                let x = sparse_get(&rows[r], col);
                if x == 0 {
                    continue;
                }
                live.push((r as u32, x));
                if pp.valuation(x) == level && best.is_none_or(|(_, len)| rows[r].len() < len) {
                    best = Some((r, rows[r].len()));
                }
            }
            col_rows[col] = live.iter().map(|e| e.0).collect();
            let Some((prow, _)) = best else { continue };
            let piv = sparse_get(&rows[prow], col);
            let pv = pp.pow(level);
            let unit_inv = pp.unit_inverse(piv / pv);
            let prow_vec = rows[prow].clone();
            let u_prow = out.u.as_ref().map(|u| u.rows[prow].clone());
            let mut uinv_prow = out.u_inv_t.as_mut().map(|ui| std::mem::take(&mut ui.rows[prow]));
            for &(r, x) in &live {
                let r = r as usize;
                if r == prow {
                    continue;
                }
                let f = (x / pv) % n * unit_inv % n;
                axpy(&mut rows[r], &prow_vec, n - f, n);
                // Fill-in can only appear in the support of the pivot row.
                for &(j, _) in &prow_vec {
                    if j as usize != col && sparse_get(&rows[r], j as usize) != 0 {
                        col_rows[j as usize].push(r as u32);
                    }
                }
                if let (Some(u), Some(up)) = (out.u.as_mut(), u_prow.as_ref()) {
                    axpy(&mut u.rows[r], up, n - f, n);
                }
                if let (Some(ui), Some(dst)) = (out.u_inv_t.as_ref(), uinv_prow.as_mut()) {
                    axpy(dst, &ui.rows[r], f, n);
                }
            }
            if let (Some(ui), Some(dst)) = (out.u_inv_t.as_mut(), uinv_prow) {
                ui.rows[prow] = dst;
            }
            // Column `col` is now zero outside `prow`; clearing the rest of the
            // pivot row only touches the transforms.
            let v_col = out.v_t.as_ref().map(|vt| vt.rows[col].clone());
            let mut vinv_col = out.v_inv.as_mut().map(|vi| std::mem::take(&mut vi.rows[col]));
            for &(j, x) in &prow_vec {
                let j = j as usize;
                if j == col {
                    continue;
                }
                let f = (x as u64 / pv) % n * unit_inv % n;
                if let (Some(vt), Some(vc)) = (out.v_t.as_mut(), v_col.as_ref()) {
                    axpy(&mut vt.rows[j], vc, n - f, n);
                }
                if let (Some(vi), Some(dst)) = (out.v_inv.as_ref(), vinv_col.as_mut()) {
                    axpy(dst, &vi.rows[j], f, n);
                }
            }
            if let (Some(vi), Some(dst)) = (out.v_inv.as_mut(), vinv_col) {
                vi.rows[col] = dst;
            }
            rows[prow] = vec![(col as u32, piv as u32)];
            col_rows[col] = vec![prow as u32];
            out.col_pivot[col] = Some(out.pivots.len() as u32);
            out.row_pivot[prow] = Some(out.pivots.len() as u32);
            out.pivots.push(Pivot { row: prow, col, val: level, entry: piv });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]], n: u64) -> SparseMatrix {
        let trip = rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &x)| (i, j, x)));
        SparseMatrix::from_triplets(rows.len(), rows[0].len(), n, trip)
    }

    fn dense(a: &SparseMatrix) -> Vec<Vec<u64>> {
        (0..a.nrows()).map(|i| (0..a.cols).map(|j| a.get(i, j)).collect()).collect()
    }

    fn mul(a: &[Vec<u64>], b: &[Vec<u64>], n: u64) -> Vec<Vec<u64>> {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter().map(|r| (0..cols).map(|j| (0..inner).fold(0, |acc, k| (acc + r[k] * b[k][j]) % n)).collect()).collect()
    }

    fn transpose(a: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
    }

    fn ident(k: usize) -> Vec<Vec<u64>> {
        (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()
    }

    pub(crate) fn check(a: &SparseMatrix, pp: PrimePower) {
        let n = pp.modulus();
        let el = eliminate(a.clone(), pp, Track { rows: true, cols: true });
        let u = dense(el.u.as_ref().unwrap());
        let v = transpose(&dense(el.v_t.as_ref().unwrap()), a.cols);
        let d = mul(&mul(&u, &dense(a), n), &v, n);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                match el.row_pivot(i) {
                    Some(pv) if pv.col == j => assert_eq!(pp.valuation(x), pv.val),
                    _ => assert_eq!(x, 0, "off-pivot entry at ({i},{j})"),
                }
            }
        }
        let ui = transpose(&dense(el.u_inv_t.as_ref().unwrap()), a.nrows());
        assert_eq!(mul(&u, &ui, n), ident(a.nrows()));
        assert_eq!(mul(&v, &dense(el.v_inv.as_ref().unwrap()), n), ident(a.cols));
    }

    #[test]
    fn diagonalizes_mod_four() {
        let pp = PrimePower::new(2, 2);
        check(&mat(&[&[2, 1, 3], &[0, 2, 2], &[2, 3, 1]], 4), pp);
        check(&mat(&[&[2, 0], &[0, 2], &[2, 2]], 4), pp);
    }

    #[test]
    fn diagonalizes_mod_nine() {
        check(&mat(&[&[3, 6, 0, 1], &[0, 3, 3, 0], &[6, 0, 3, 3]], 9), PrimePower::new(3, 2));
    }

    #[test]
    fn kernel_order_mod_four() {
        let el = eliminate(mat(&[&[2]], 4), PrimePower::new(2, 2), Track::default());
        assert_eq!(el.kernel_log_order(), 1);
        assert_eq!(el.image_log_order(), 1);
    }

    #[test]
    fn factoring() {
        assert_eq!(prime_power_factors(12), vec![PrimePower::new(2, 2), PrimePower::new(3, 1)]);
        assert_eq!(prime_power_factors(7), vec![PrimePower::new(7, 1)]);
    }

    #[test]
    fn unit_inverses() {
        let pp = PrimePower::new(3, 2);
        for u in [1u64, 2, 4, 5, 7, 8] {
            assert_eq!(u * pp.unit_inverse(u) % 9, 1);
        }
    }

    #[test]
    fn axpy_cancels() {
        let mut a: SparseVec = vec![(0, 1), (2, 3)];
        axpy(&mut a, &[(0, 1), (1, 1)], 3, 4);
        assert_eq!(a, vec![(1, 3), (2, 3)]);
    }

    proptest::proptest! {
        #[test]
        fn random_matrices_diagonalize(
            (rows, cols) in (1usize..6, 1usize..6),
            seed in proptest::collection::vec(0i64..36, 36),
            which in 0usize..4,
        ) {
            let pp = [PrimePower::new(2, 1), PrimePower::new(2, 2), PrimePower::new(3, 2), PrimePower::new(2, 3)][which];
            let n = pp.modulus();
            let trip = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| (i, j, seed[i * 6 + j] % n as i64));
            check(&SparseMatrix::from_triplets(rows, cols, n, trip), pp);
        }
    }
}
