//! Smith normal form over the integers.
//!
//! The reduction is deterministic: at every stage the pivot is the nonzero
//! entry of least absolute value in the remaining block, ties broken in
//! row-major order. Within a stage, the pivot is re-chosen among the pivot
//! row and column until both are clear, then the divisibility condition is
//! enforced by folding an offending row into the pivot row.

use std::mem;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d₁, …, d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Full Smith decomposition with both transforms.
///
/// ```
/// use qcohom::exactalg::{big_vec, smith_normal_form, IntMatrix};
///
/// let a = IntMatrix::from_rows(&[[4, 6], [6, 9]]);
/// let snf = smith_normal_form(&a);
/// assert_eq!(snf.diagonal(), big_vec(&[1, 0]));
/// assert_eq!(snf.rank(), 1);
/// ```
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let parts = SmithReduction::run(a, Track::BOTH);
    let mut d = IntMatrix::zeros(a.rows(), a.cols());
    for (i, x) in parts.diagonal.iter().enumerate() {
        d[(i, i)] = x.clone();
    }
    SmithDecomposition { u: parts.u.unwrap(), d, v: parts.v.unwrap() }
}

/// Which transforms the reduction keeps track of.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const BOTH: Track = Track { u: true, u_inv: false, v: true, v_inv: false };
}

/// Output of a reduction; transforms are present only when requested.
#[derive(Clone, Debug)]
pub(crate) struct SmithReduction {
    /// `d_i` for `i < min(rows, cols)`; nonzero entries come first.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    #[allow(dead_code)]
    pub v_inv: Option<IntMatrix>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    v_inv: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn rows_to_matrix(rows: Vec<Vec<BigInt>>, n: usize) -> IntMatrix {
    IntMatrix::from_big_rows(rows, n)
}

fn add_row_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn add_col_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            let delta = c * &row[source];
            row[target] += delta;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn negate_col(m: &mut [Vec<BigInt>], j: usize) {
    for row in m.iter_mut() {
        let x = mem::take(&mut row[j]);
        row[j] = -x;
    }
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = &mut self.v {
            swap_cols(v, i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// row_target += c · row_source
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        add_row_multiple(&mut self.a, target, source, c);
        if let Some(u) = &mut self.u {
            add_row_multiple(u, target, source, c);
        }
        if let Some(ui) = &mut self.u_inv {
            add_col_multiple(ui, source, target, &-c);
        }
    }

    /// col_target += c · col_source
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        add_col_multiple(&mut self.a, target, source, c);
        if let Some(v) = &mut self.v {
            add_col_multiple(v, target, source, c);
        }
        if let Some(vi) = &mut self.v_inv {
            add_row_multiple(vi, source, target, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            let y = mem::take(x);
            *x = -y;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                let y = mem::take(x);
                *x = -y;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            negate_col(ui, i);
        }
    }
}

impl SmithReduction {
    pub(crate) fn run(input: &IntMatrix, track: Track) -> SmithReduction {
        let m = input.rows();
        let n = input.cols();
        let mut w = Work {
            a: input.to_rows(),
            u: track.u.then(|| identity_rows(m)),
            u_inv: track.u_inv.then(|| identity_rows(m)),
            v: track.v.then(|| identity_rows(n)),
            v_inv: track.v_inv.then(|| identity_rows(n)),
        };

        let mut t = 0;
        while t < m.min(n) {
            // Stage pivot: least |entry| in the trailing block, row-major ties.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &w.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if w.a[bi][bj].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            loop {
                // Clear column t and row t, re-pivoting on smaller remainders.
                loop {
                    let mut smaller: Option<(bool, usize)> = None;
                    let mut pivot_abs = w.a[t][t].abs();
                    for i in t + 1..m {
                        if w.a[i][t].is_zero() {
                            continue;
                        }
                        let q = w.a[i][t].div_floor(&w.a[t][t]);
                        w.add_row(i, t, &-q);
                        let r = w.a[i][t].abs();
                        if !r.is_zero() && r < pivot_abs {
                            pivot_abs = r;
                            smaller = Some((true, i));
                        }
                    }
                    for j in t + 1..n {
                        if w.a[t][j].is_zero() {
                            continue;
                        }
                        let q = w.a[t][j].div_floor(&w.a[t][t]);
                        w.add_col(j, t, &-q);
                        let r = w.a[t][j].abs();
                        if !r.is_zero() && r < pivot_abs {
                            pivot_abs = r;
                            smaller = Some((false, j));
                        }
                    }
                    match smaller {
                        Some((true, i)) => w.swap_rows(t, i),
                        Some((false, j)) => w.swap_cols(t, j),
                        None => {
                            let clear =
                                (t + 1..m).all(|i| w.a[i][t].is_zero()) && (t + 1..n).all(|j| w.a[t][j].is_zero());
                            if clear {
                                break;
                            }
                        }
                    }
                }

                // Divisibility: fold a row with an entry not divisible by the pivot.
                let p = w.a[t][t].clone();
                let offending =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_zero() && !w.a[i][j].is_multiple_of(&p)));
                match offending {
                    Some(i) => w.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }

            if w.a[t][t].is_negative() {
                w.negate_row(t);
            }
            t += 1;
        }

        let diagonal: Vec<BigInt> = (0..m.min(n)).map(|i| w.a[i][i].clone()).collect();
        let rank = diagonal.iter().take_while(|x| !x.is_zero()).count();
        SmithReduction {
            diagonal,
            rank,
            u: w.u.map(|x| rows_to_matrix(x, m)),
            u_inv: w.u_inv.map(|x| rows_to_matrix(x, m)),
            v: w.v.map(|x| rows_to_matrix(x, n)),
            v_inv: w.v_inv.map(|x| rows_to_matrix(x, n)),
        }
    }
}
