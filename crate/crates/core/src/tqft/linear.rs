//! Linear maps between labeled bases, with exact entries.

use super::Amplitude;
use crate::error::{Error, Result};
use num_rational::BigRational;
use serde::Serialize;
use std::fmt;

/// A matrix from the span of `source` to the span of `target`; rows are
/// indexed by `target`. Labels are descriptive and ignored by equality.
#[derive(Clone)]
pub struct LinearMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: Vec<Vec<Amplitude>>,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.cols() == other.cols()
    }
}

impl LinearMap {
    pub fn zero(source: Vec<String>, target: Vec<String>) -> Self {
        let matrix = vec![vec![Amplitude::zero(); source.len()]; target.len()];
        LinearMap { source, target, matrix }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let mut m = LinearMap::zero(labels.clone(), labels);
        for i in 0..m.rows() {
            m.matrix[i][i] = Amplitude::one();
        }
        m
    }

    /// A `1 × 1` map.
    pub fn scalar(a: Amplitude) -> Self {
        LinearMap { source: vec!["1".into()], target: vec!["1".into()], matrix: vec![vec![a]] }
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Amplitude::is_zero)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap> {
        if self.cols() != first.rows() {
            return Err(Error::Mismatch(format!("composing {}×{} after {}×{}", self.rows(), self.cols(), first.rows(), first.cols())));
        }
        let matrix = (0..self.rows())
            .map(|i| {
                (0..first.cols())
                    .map(|j| {
                        (0..self.cols())
                            .filter(|&k| !self.matrix[i][k].is_zero() && !first.matrix[k][j].is_zero())
                            .map(|k| &self.matrix[i][k] * &first.matrix[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(LinearMap { source: first.source.clone(), target: self.target.clone(), matrix })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::Mismatch("adding maps of different shapes".into()));
        }
        let mut out = self.clone();
        for (r, o) in out.matrix.iter_mut().zip(&other.matrix) {
            for (x, y) in r.iter_mut().zip(o) {
                *x = &*x + y;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, a: &Amplitude) -> LinearMap {
        let mut out = self.clone();
        for x in out.matrix.iter_mut().flatten() {
            *x = &*x * a;
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> LinearMap {
        self.scale(&Amplitude::from_rational(r.clone()))
    }

    pub fn trace(&self) -> Amplitude {
        (0..self.rows().min(self.cols())).map(|i| self.matrix[i][i].clone()).sum()
    }

    /// Kronecker product; basis `s ⊗ t` with the first factor varying slowest.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        let pair = |a: &[String], b: &[String]| a.iter().flat_map(|x| b.iter().map(move |y| format!("{x}⊗{y}"))).collect::<Vec<_>>();
        let mut out = LinearMap::zero(pair(&self.source, &other.source), pair(&self.target, &other.target));
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (k, orow) in other.matrix.iter().enumerate() {
                    for (l, y) in orow.iter().enumerate() {
                        out.matrix[i * other.rows() + k][j * other.cols() + l] = x * y;
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[LinearMap]) -> LinearMap {
        let source: Vec<String> = blocks.iter().flat_map(|b| b.source.iter().cloned()).collect();
        let target: Vec<String> = blocks.iter().flat_map(|b| b.target.iter().cloned()).collect();
        let mut out = LinearMap::zero(source, target);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, row) in b.matrix.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    out.matrix[r0 + i][c0 + j] = x.clone();
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        out
    }

    /// Writes `block` at the given offsets.
    pub fn set_block(&mut self, row: usize, col: usize, block: &LinearMap) {
        for (i, r) in block.matrix.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                self.matrix[row + i][col + j] = x.clone();
            }
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.rows() == self.cols() && self.compose(self).map(|sq| sq == *self).unwrap_or(false)
    }

    pub fn to_serial(&self) -> SerialMap {
        SerialMap {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}×{} {:?} -> {:?}", self.rows(), self.cols(), self.source, self.target)?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A map with entries in the exact string form.
#[derive(Clone, Debug, Serialize)]
pub struct SerialMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> LinearMap {
        let c = rows[0].len();
        LinearMap {
            source: (0..c).map(|i| i.to_string()).collect(),
            target: (0..rows.len()).map(|i| i.to_string()).collect(),
            matrix: rows.iter().map(|r| r.iter().map(|&x| Amplitude::from_int(x)).collect()).collect(),
        }
    }

    #[test]
    fn products_and_traces() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.compose(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.tensor(&b).trace(), &a.trace() * &b.trace());
        assert_eq!(LinearMap::direct_sum(&[a.clone(), b.clone()]).trace(), Amplitude::from_int(5));
        assert!(m(&[&[1, 0], &[0, 0]]).is_idempotent());
        assert!(!a.is_idempotent());
        assert!(a.compose(&m(&[&[1, 2, 3]])).is_err());
    }
}
