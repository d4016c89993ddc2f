//! Slow, independent reference computations for the test suites.
//!
//! Everything here works on plain `i64` matrices and enumerates instead of
//! reducing. Nothing is shared with the main crate.

use std::collections::{HashMap, HashSet, VecDeque};

pub type Mat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let m = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..m).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[i64], a: &Mat) -> Vec<i64> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| v.iter().zip(a).map(|(x, row)| x * row[j]).sum()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All products of the generators, identity first, by breadth-first search.
pub fn close_group(gens: &[Mat], cap: usize) -> Option<Vec<Mat>> {
    let n = gens.first()?.len();
    let mut elems = vec![identity(n)];
    let mut seen: HashSet<Mat> = elems.iter().cloned().collect();
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let gs = mat_mul(&g, s);
            if seen.insert(gs.clone()) {
                if elems.len() == cap {
                    return None;
                }
                elems.push(gs.clone());
                queue.push_back(gs);
            }
        }
    }
    Some(elems)
}

/// Determinant by cofactor expansion.
pub fn det(a: &Mat) -> i64 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Mat = a[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Determinantal divisors `d_k` = gcd of all `k×k` minors, for `k = 1..=min(m,n)`,
/// stopping at the first zero.
pub fn determinantal_divisors(a: &Mat) -> Vec<i64> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=m.min(n) {
        let cols = combinations(n, k);
        let mut g = 0;
        for rows in combinations(m, k) {
            for cs in &cols {
                let sub: Mat = rows.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
                if g == 1 {
                    break;
                }
            }
            if g == 1 {
                break;
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// Nonzero invariant factors `d_k / d_{k−1}`, including ones.
pub fn invariant_factors(a: &Mat) -> Vec<i64> {
    let d = determinantal_divisors(a);
    let mut prev = 1;
    d.iter()
        .map(|&x| {
            let f = x / prev;
            prev = x;
            f
        })
        .collect()
}

/// `Π |1 − ζ_N^k|` over `k` coprime to `N`, evaluated in floating point.
pub fn cyclotomic_norm_numeric(n: u64) -> i64 {
    let mut log = 0.0f64;
    for k in 1..n {
        if gcd(k as i64, n as i64) == 1 {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            log += ((1.0 - t.cos()).powi(2) + t.sin().powi(2)).sqrt().ln();
        }
    }
    log.exp().round() as i64
}

/// Every `x ∈ (ℤ/m)ⁿ` with `A·x ≡ b (mod m)`.
pub fn solve_mod_exhaustive(a: &Mat, b: &[i64], m: i64) -> Vec<Vec<i64>> {
    let n = a.first().map_or(0, Vec::len);
    let total = (m as u64).pow(n as u32);
    (0..total)
        .map(|idx| {
            let mut rest = idx;
            (0..n)
                .map(|_| {
                    let x = (rest % m as u64) as i64;
                    rest /= m as u64;
                    x
                })
                .collect::<Vec<i64>>()
        })
        .filter(|x| mat_vec(a, x).iter().zip(b).all(|(l, r)| (l - r).rem_euclid(m) == 0))
        .collect()
}

/// Counts from the brute-force computation of `H¹(G, L̂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyCount {
    pub modulus: i64,
    pub cocycles: u64,
    pub coboundaries: u64,
}

impl CohomologyCount {
    pub fn order(&self) -> u64 {
        self.cocycles / self.coboundaries
    }
}

struct Table {
    elems: Vec<Mat>,
    gens: Vec<usize>,
    mul: Vec<Vec<usize>>,
}

impl Table {
    fn new(gens: &[Mat], cap: usize) -> Option<Table> {
        let elems = close_group(gens, cap)?;
        let index: HashMap<&Mat, usize> = elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mul = elems.iter().map(|a| elems.iter().map(|b| index[&mat_mul(a, b)]).collect()).collect();
        let gens = gens.iter().map(|g| index[g]).collect();
        Some(Table { elems, gens, mul })
    }
}

fn reduce(v: &[i64], m: i64) -> Vec<i64> {
    v.iter().map(|x| x.rem_euclid(m)).collect()
}

/// A finite group given by its multiplication table, element 0 the identity,
/// acting through `reps` (not necessarily faithfully).
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub reps: Vec<Mat>,
    pub mul: Vec<Vec<usize>>,
    pub gens: Vec<usize>,
}

impl GroupTable {
    pub fn from_matrices(gens: &[Mat], cap: usize) -> Option<GroupTable> {
        let t = Table::new(gens, cap)?;
        Some(GroupTable { reps: t.elems, mul: t.mul, gens: t.gens })
    }
}

/// Enumerates cocycles `v_{gh} ≡ R_g·v_h + v_g (mod M)` with `M = #G` from
/// their generator values, and coboundaries `(R_g − I)·c` from gauge vectors
/// with a denominator large enough to reach every class.
///
/// Feasible for `#G ≤ 8`, rank ≤ 2.
pub fn cohomology_count(gens: &[Mat]) -> Option<CohomologyCount> {
    cohomology_count_table(&GroupTable::from_matrices(gens, 64)?)
}

/// As [`cohomology_count`], for an abstract group table.
pub fn cohomology_count_table(g: &GroupTable) -> Option<CohomologyCount> {
    let t = Table { elems: g.reps.clone(), gens: g.gens.clone(), mul: g.mul.clone() };
    let n = t.elems.len();
    let r = t.elems[0].len();
    let m = n as i64;
    let per_gen = (m as u64).pow(r as u32);
    let total = per_gen.checked_pow(t.gens.len() as u32)?;
    let mut cocycles = 0;
    for idx in 0..total {
        let mut rest = idx;
        let gen_vals: Vec<Vec<i64>> = t
            .gens
            .iter()
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let x = (rest % m as u64) as i64;
                        rest /= m as u64;
                        x
                    })
                    .collect()
            })
            .collect();
        if let Some(vals) = extend(&t, &gen_vals, m) {
            if is_cocycle(&t, &vals, m) {
                cocycles += 1;
            }
        }
    }
    Some(CohomologyCount { modulus: m, cocycles, coboundaries: coboundary_count(&t, m) })
}

fn extend(t: &Table, gen_vals: &[Vec<i64>], m: i64) -> Option<Vec<Vec<i64>>> {
    let r = t.elems[0].len();
    let mut vals: Vec<Option<Vec<i64>>> = vec![None; t.elems.len()];
    vals[0] = Some(vec![0; r]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        let vg = vals[g].clone().unwrap();
        for (s, vs) in t.gens.iter().zip(gen_vals) {
            let gs = t.mul[g][*s];
            let rv = mat_vec(&t.elems[g], vs);
            let v = reduce(&rv.iter().zip(&vg).map(|(a, b)| a + b).collect::<Vec<_>>(), m);
            match &vals[gs] {
                Some(w) if *w != v => return None,
                Some(_) => {}
                None => {
                    vals[gs] = Some(v);
                    queue.push_back(gs);
                }
            }
        }
    }
    vals.into_iter().collect()
}

fn is_cocycle(t: &Table, vals: &[Vec<i64>], m: i64) -> bool {
    (0..t.elems.len()).all(|g| {
        (0..t.elems.len()).all(|h| {
            let rv = mat_vec(&t.elems[g], &vals[h]);
            let gh = t.mul[g][h];
            vals[gh].iter().zip(rv.iter().zip(&vals[g])).all(|(a, (b, c))| (a - b - c).rem_euclid(m) == 0)
        })
    })
}

fn coboundary_count(t: &Table, m: i64) -> u64 {
    let r = t.elems[0].len();
    let id = identity(r);
    let stacked: Mat = t
        .elems
        .iter()
        .flat_map(|g| g.iter().zip(&id).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>()))
        .collect();
    let e = invariant_factors(&stacked).into_iter().max().unwrap_or(1);
    let d = m * e;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for idx in 0..(d as u64).pow(r as u32) {
        let mut rest = idx;
        let c: Vec<i64> = (0..r)
            .map(|_| {
                let x = (rest % d as u64) as i64;
                rest /= d as u64;
                x
            })
            .collect();
        let img = mat_vec(&stacked, &c);
        if img.iter().all(|x| x % e == 0) {
            seen.insert(reduce(&img.iter().map(|x| x / e).collect::<Vec<_>>(), m));
        }
    }
    seen.len() as u64
}

/// Every element of `(ℤ/M)^{N·r}` that is a cocycle, for small inputs only.
pub fn all_cocycles(g: &GroupTable) -> Option<(i64, Vec<Vec<Vec<i64>>>)> {
    let t = Table { elems: g.reps.clone(), gens: g.gens.clone(), mul: g.mul.clone() };
    let r = t.elems[0].len();
    let m = t.elems.len() as i64;
    let per_gen = (m as u64).pow(r as u32);
    let total = per_gen.checked_pow(t.gens.len() as u32)?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let gen_vals: Vec<Vec<i64>> = t
            .gens
            .iter()
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let x = (rest % m as u64) as i64;
                        rest /= m as u64;
                        x
                    })
                    .collect()
            })
            .collect();
        if let Some(vals) = extend(&t, &gen_vals, m) {
            if is_cocycle(&t, &vals, m) {
                out.push(vals);
            }
        }
    }
    Some((m, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot4() -> Mat {
        vec![vec![0, -1], vec![1, 0]]
    }

    #[test]
    fn closure_orders() {
        assert_eq!(close_group(&[rot4()], 100).unwrap().len(), 4);
        assert_eq!(close_group(&[rot4(), vec![vec![1, 0], vec![0, -1]]], 100).unwrap().len(), 8);
        assert!(close_group(&[vec![vec![1, 1], vec![0, 1]]], 50).is_none());
    }

    #[test]
    fn minors() {
        assert_eq!(invariant_factors(&vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(invariant_factors(&vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(det(&vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]), 1);
    }

    #[test]
    fn norms() {
        assert_eq!(cyclotomic_norm_numeric(8), 2);
        assert_eq!(cyclotomic_norm_numeric(9), 3);
        assert_eq!(cyclotomic_norm_numeric(6), 1);
    }

    #[test]
    fn pg_and_rotation() {
        let pg = cohomology_count(&[vec![vec![1, 0], vec![0, -1]]]).unwrap();
        assert_eq!(pg.order(), 2);
        assert_eq!(cohomology_count(&[rot4()]).unwrap().order(), 1);
        let rect = cohomology_count(&[vec![vec![-1, 0], vec![0, -1]], vec![vec![1, 0], vec![0, -1]]]).unwrap();
        assert_eq!(rect.order(), 4);
        // C₂ × C₂ on ℤ with one factor acting trivially.
        let klein = GroupTable {
            reps: vec![vec![vec![1]], vec![vec![-1]], vec![vec![1]], vec![vec![-1]]],
            mul: vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
            gens: vec![1, 2],
        };
        assert_eq!(cohomology_count_table(&klein).unwrap().order(), 2);
    }

    #[test]
    fn exhaustive_solutions() {
        let sols = solve_mod_exhaustive(&vec![vec![2, 0], vec![0, 1]], &[2, 3], 4);
        assert_eq!(sols.len(), 2);
    }
}
