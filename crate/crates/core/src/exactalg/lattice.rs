//! Incremental row-echelon bases for sublattices of ℤⁿ.
//!
//! Relation sets coming out of the bar complex are long (thousands of
//! vectors) but very sparse, so they are folded one at a time into an
//! echelon basis kept in sparse form. The basis spans exactly the lattice
//! generated by everything inserted so far.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Sparse integer vector: `(index, value)` pairs, indices strictly increasing, no zeros.
pub type SparseVec = Vec<(usize, BigInt)>;

pub fn sparse_from_dense(v: &[BigInt]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a·x + b·y` for sparse `x`, `y`.
fn combine(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len().max(y.len()));
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, val) = match (x.get(i), y.get(j)) {
            (Some((ix, vx)), Some((iy, vy))) if ix == iy => {
                i += 1;
                j += 1;
                (*ix, a * vx + b * vy)
            }
            (Some((ix, vx)), Some((iy, _))) if ix < iy => {
                i += 1;
                (*ix, a * vx)
            }
            (Some(_), Some((iy, vy))) | (None, Some((iy, vy))) => {
                j += 1;
                (*iy, b * vy)
            }
            (Some((ix, vx)), None) => {
                i += 1;
                (*ix, a * vx)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

/// Echelon basis of a sublattice of ℤⁿ, keyed by leading index.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Folds `v` into the basis. Returns `true` if the lattice grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let mut grew = false;
        while let Some((lead, lead_val)) = v.first().cloned() {
            debug_assert!(lead < self.dim);
            let Some(b) = self.rows.get_mut(&lead) else {
                if lead_val.is_negative() {
                    for (_, x) in v.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                self.rows.insert(lead, v);
                return true;
            };
            let p = b[0].1.clone();
            if lead_val.is_multiple_of(&p) {
                let q = &lead_val / &p;
                v = combine(&BigInt::from(1), &v, &-q, b);
            } else {
                // Replace the pivot row by the gcd combination, keep reducing the rest.
                let e = p.extended_gcd(&lead_val);
                let g = e.gcd;
                let new_b = combine(&e.x, b, &e.y, &v);
                let rest = combine(&(&lead_val / &g), b, &-(&p / &g), &v);
                *b = new_b;
                if b[0].1.is_negative() {
                    for (_, x) in b.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                v = rest;
                grew = true;
            }
        }
        grew
    }

    pub fn insert_dense(&mut self, v: &[BigInt]) -> bool {
        self.insert(sparse_from_dense(v))
    }

    /// Reduces entries above each pivot into `[0, pivot)`, giving the
    /// (row-style) Hermite normal form of the lattice.
    pub fn reduce(&mut self) {
        let leads: Vec<usize> = self.rows.keys().copied().collect();
        for (k, &lead) in leads.iter().enumerate().rev() {
            let pivot_row = self.rows[&lead].clone();
            let p = pivot_row[0].1.clone();
            for &other in &leads[..k] {
                let row = self.rows.get_mut(&other).unwrap();
                let entry = row.iter().find(|(i, _)| *i == lead).map(|(_, x)| x.clone());
                if let Some(x) = entry {
                    let q = x.div_floor(&p);
                    if !q.is_zero() {
                        *row = combine(&BigInt::from(1), row, &-q, &pivot_row);
                    }
                }
            }
        }
    }

    /// Basis vectors ordered by leading index.
    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.rows.values().map(|v| dense_from_sparse(v, self.dim)).collect()
    }

    /// Basis vectors as the columns of a `dim × rank` matrix.
    pub fn to_column_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.vectors(), self.dim)
    }
}

/// Hermite-reduced basis of the lattice spanned by the columns of `m`.
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let mut e = EchelonBasis::new(m.rows());
    for j in 0..m.cols() {
        e.insert_dense(&m.column(j));
    }
    e.reduce();
    e.to_column_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::big_vec;

    #[test]
    fn gcd_merge() {
        let mut e = EchelonBasis::new(2);
        e.insert_dense(&big_vec(&[4, 1]));
        e.insert_dense(&big_vec(&[6, 0]));
        e.reduce();
        // lattice generated by (4,1),(6,0) has index 6 in ℤ²
        let m = e.to_column_matrix();
        assert_eq!(m.determinant().abs(), BigInt::from(6));
    }

    #[test]
    fn dependent_vectors_do_not_grow() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert_dense(&big_vec(&[1, 2, 3])));
        assert!(!e.insert_dense(&big_vec(&[2, 4, 6])));
        assert!(!e.insert_dense(&big_vec(&[0, 0, 0])));
        assert_eq!(e.rank(), 1);
    }
}
