use crate::error::{Error, Result};

/// Matrix over the field with two elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Reduces an integer matrix mod 2.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.as_ref().iter().enumerate() {
                m.set(i, j, x.rem_euclid(2) == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.bits[i * self.cols + j] = b;
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        F2Matrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for j in 0..other.cols {
                        if other.get(k, j) {
                            let b = out.get(i, j);
                            out.set(i, j, !b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            for j in 0..m.cols {
                let (a, b) = (m.get(rank, j), m.get(p, j));
                m.set(rank, j, b);
                m.set(p, j, a);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    for j in 0..m.cols {
                        let x = m.get(r, j) ^ m.get(rank, j);
                        m.set(r, j, x);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Numbers of 1×1 and 2×2 Jordan blocks of an involution over F₂.
///
/// An involution has only the eigenvalue 1 and blocks of size at most 2, so
/// the 2×2 blocks are counted by `rank(M − I)` and the rest are 1×1.
pub fn f2_jordan_counts(m: &F2Matrix) -> Result<(usize, usize)> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("Jordan counts need a square matrix".into()));
    }
    let n = m.rows();
    if m.mul(m) != F2Matrix::identity(n) {
        return Err(Error::NotInvolution);
    }
    let j2 = m.add(&F2Matrix::identity(n)).rank();
    Ok((n - 2 * j2, j2))
}
