use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lattice::{EchelonBasis, SparseVec};
use super::smith::{SmithReduction, Track};
use super::IntMatrix;
use crate::error::{Error, Result};

/// A finitely generated abelian group `⊕ ℤ/dᵢ` presented as a quotient
/// of a sublattice of ℤⁿ, with explicit generator lifts and a projection
/// from the ambient lattice onto class coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianGroupStructure {
    invariant_factors: Vec<BigInt>,
    /// Ambient lifts, one per invariant factor.
    generators: Vec<Vec<BigInt>>,
    /// The same lifts in coordinates of the input generator columns.
    generator_coords: Vec<Vec<BigInt>>,
    #[serde(skip)]
    projection: Projection,
}

#[derive(Clone, Debug)]
struct Projection {
    ambient_dim: usize,
    /// U from `U·G·V = D` for the generator matrix.
    u: IntMatrix,
    /// Nonzero diagonal of `D`.
    d: Vec<BigInt>,
    /// Rows of the relation transform that survive (factors ≠ 1).
    p_kept: IntMatrix,
}

impl AbelianGroupStructure {
    /// Invariant factors `d₁ | d₂ | …`, each ≥ 2 or 0 (a free factor).
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        use num_traits::ToPrimitive;
        self.invariant_factors.iter().map(|x| x.to_u64().expect("factor fits u64")).collect()
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn generator_coords(&self) -> &[Vec<BigInt>] {
        &self.generator_coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection.ambient_dim
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.invariant_factors.iter().all(|d| !d.is_zero())
    }

    /// Group order, `None` when a free factor is present.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Coordinates of the class of an ambient vector, each reduced into
    /// `[0, dᵢ)` (unreduced for free factors).
    pub fn class_of(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let p = &self.projection;
        if v.len() != p.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                p.ambient_dim
            )));
        }
        let w = p.u.mul_vec(v);
        let rank = p.d.len();
        if w[rank..].iter().any(|x| !x.is_zero()) {
            return Err(Error::RelationNotInSpan { index: 0 });
        }
        let mut y = Vec::with_capacity(rank);
        for (wi, di) in w[..rank].iter().zip(&p.d) {
            let (q, r) = wi.div_rem(di);
            if !r.is_zero() {
                return Err(Error::RelationNotInSpan { index: 0 });
            }
            y.push(q);
        }
        let z = p.p_kept.mul_vec(&y);
        Ok(self.reduce_coords(z))
    }

    /// Reduces class coordinates modulo the invariant factors.
    pub fn reduce_coords(&self, z: Vec<BigInt>) -> Vec<BigInt> {
        z.into_iter().zip(&self.invariant_factors).map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) }).collect()
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.class_of(v)?.iter().all(Zero::is_zero))
    }

    /// All class coordinate vectors of a finite group, in lexicographic order.
    pub fn enumerate(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![]];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut x = BigInt::zero();
                while &x < d {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    next.push(p);
                    x += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Lift of the class with the given coordinates (`Σ zᵢ·genᵢ`).
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.projection.ambient_dim];
        for (z, g) in coords.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += z * x;
            }
        }
        out
    }

    /// The finite factors only; class coordinates of torsion elements are unchanged.
    pub fn torsion_part(&self) -> Self {
        let keep: Vec<usize> =
            (0..self.invariant_factors.len()).filter(|&i| !self.invariant_factors[i].is_zero()).collect();
        AbelianGroupStructure {
            invariant_factors: keep.iter().map(|&i| self.invariant_factors[i].clone()).collect(),
            generators: keep.iter().map(|&i| self.generators[i].clone()).collect(),
            generator_coords: keep.iter().map(|&i| self.generator_coords[i].clone()).collect(),
            projection: Projection { p_kept: self.projection.p_kept.select_rows(&keep), ..self.projection.clone() },
        }
    }
}

/// Structure of `span(generators) / span(relations)`; both are given as columns.
pub fn quotient_structure(generators: &IntMatrix, relations: &IntMatrix) -> Result<AbelianGroupStructure> {
    if generators.rows() != relations.rows() {
        return Err(Error::DimensionMismatch(format!(
            "generators live in dimension {}, relations in {}",
            generators.rows(),
            relations.rows()
        )));
    }
    let rels = (0..relations.cols()).map(|j| super::lattice::sparse_from_dense(&relations.column(j)));
    quotient_structure_sparse(generators, rels)
}

/// As [`quotient_structure`], with relations streamed as sparse vectors.
pub fn quotient_structure_sparse<I>(generators: &IntMatrix, relations: I) -> Result<AbelianGroupStructure>
where
    I: IntoIterator<Item = SparseVec>,
{
    let n = generators.rows();
    let gsnf = SmithReduction::run(generators, Track { u: true, u_inv: false, v: true, v_inv: false });
    let u = gsnf.u.unwrap();
    let v = gsnf.v.unwrap();
    let rank = gsnf.rank;
    let d: Vec<BigInt> = gsnf.diagonal[..rank].to_vec();

    let mut echelon = EchelonBasis::new(n);
    for (index, r) in relations.into_iter().enumerate() {
        if r.iter().any(|(i, _)| *i >= n) {
            return Err(Error::RelationNotInSpan { index });
        }
        echelon.insert(r);
    }
    echelon.reduce();

    // Relation coordinates y with G·V·(y, 0) = relation.
    let mut coord_cols = Vec::with_capacity(echelon.rank());
    for (index, rel) in echelon.vectors().iter().enumerate() {
        let w = u.mul_vec(rel);
        if w[rank..].iter().any(|x| !x.is_zero()) {
            return Err(Error::RelationNotInSpan { index });
        }
        let mut y = Vec::with_capacity(rank);
        for (wi, di) in w[..rank].iter().zip(&d) {
            let (q, r) = wi.div_rem(di);
            if !r.is_zero() {
                return Err(Error::RelationNotInSpan { index });
            }
            y.push(q);
        }
        coord_cols.push(y);
    }
    let y_mat = IntMatrix::from_columns(&coord_cols, rank);

    let ysnf = SmithReduction::run(&y_mat, Track { u: true, u_inv: true, v: false, v_inv: false });
    let p = ysnf.u.unwrap();
    let p_inv = ysnf.u_inv.unwrap();

    let mut factors = Vec::new();
    let mut kept_rows = Vec::new();
    let mut generators_out = Vec::new();
    let mut coords_out = Vec::new();
    for i in 0..rank {
        let e = ysnf.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
        if e.is_one() {
            continue;
        }
        let y = p_inv.column(i);
        let mut padded = y.clone();
        padded.resize(generators.cols(), BigInt::zero());
        let x = v.mul_vec(&padded);
        let ambient = generators.mul_vec(&x);
        factors.push(e.abs());
        kept_rows.push(i);
        generators_out.push(ambient);
        coords_out.push(x);
    }

    Ok(AbelianGroupStructure {
        invariant_factors: factors,
        generators: generators_out,
        generator_coords: coords_out,
        projection: Projection { ambient_dim: n, u, d, p_kept: p.select_rows(&kept_rows) },
    })
}

/// ℤ-basis of `{x : A·x = 0}` as the columns of a matrix, in Hermite form.
///
/// A zero-row matrix has the identity basis; an injective map has an empty one.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = SmithReduction::run(a, Track { u: false, u_inv: false, v: true, v_inv: false });
    let v = snf.v.unwrap();
    let cols: Vec<usize> = (snf.rank..a.cols()).collect();
    let raw = v.select_columns(&cols);
    super::lattice::column_lattice_basis(&raw)
}

/// Integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = SmithReduction::run(a, Track::BOTH);
    let c = snf.u.unwrap().mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let di = if i < snf.rank { Some(&snf.diagonal[i]) } else { None };
        match di {
            Some(di) => {
                let (q, r) = c[i].div_rem(di);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !c[i].is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.unwrap().mul_vec(&y))
}

/// A solution of `A·x ≡ b (mod m)` with entries in `[0, m)`, or `None`.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    assert!(m.is_positive(), "modulus must be positive");
    assert_eq!(a.rows(), b.len());
    let snf = SmithReduction::run(a, Track::BOTH);
    let c = snf.u.unwrap().mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let ci = c[i].mod_floor(m);
        let di = if i < snf.diagonal.len() { snf.diagonal[i].mod_floor(m) } else { BigInt::zero() };
        // d·y ≡ c (mod m)
        let g = di.gcd(m);
        if !ci.is_multiple_of(&g) {
            return None;
        }
        if di.is_zero() {
            continue;
        }
        let mg = m / &g;
        let inv = mod_inverse(&(&di / &g), &mg).expect("coprime after dividing out the gcd");
        y[i] = ((&ci / &g) * inv).mod_floor(&mg);
    }
    Some(snf.v.unwrap().mul_vec(&y).into_iter().map(|x| x.mod_floor(m)).collect())
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Whether `x` lies in the subgroup of `⊕ ℤ/dᵢ` generated by `gens` (zero `dᵢ` = free).
pub fn span_contains(moduli: &[BigInt], gens: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let n = moduli.len();
    let mut cols: Vec<Vec<BigInt>> = gens.to_vec();
    for (i, d) in moduli.iter().enumerate() {
        let mut e = vec![BigInt::zero(); n];
        e[i] = d.clone();
        cols.push(e);
    }
    let a = IntMatrix::from_columns(&cols, n);
    solve_integer(&a, x).is_some()
}

/// Generators of the kernel of the homomorphism `⊕ ℤ/dᵢ → ⊕ ℤ/eⱼ` sending
/// the i-th basis element to `images[i]`.
pub fn hom_kernel(source: &[BigInt], target: &[BigInt], images: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let ns = source.len();
    let nt = target.len();
    assert_eq!(images.len(), ns);
    let mut cols: Vec<Vec<BigInt>> = images.to_vec();
    for (j, e) in target.iter().enumerate() {
        let mut c = vec![BigInt::zero(); nt];
        c[j] = e.clone();
        cols.push(c);
    }
    let a = IntMatrix::from_columns(&cols, nt);
    let k = kernel_basis(&a);
    (0..k.cols())
        .map(|j| {
            k.column(j)[..ns]
                .iter()
                .zip(source)
                .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::big_vec;

    fn factors(s: &AbelianGroupStructure) -> Vec<u64> {
        s.factors_u64()
    }

    #[test]
    fn quotient_by_diagonal() {
        let s = quotient_structure(&IntMatrix::identity(2), &IntMatrix::diagonal(&[2, 2])).unwrap();
        assert_eq!(factors(&s), vec![2, 2]);
    }

    #[test]
    fn empty_relations_give_free_factor() {
        let s = quotient_structure(&IntMatrix::identity(1), &IntMatrix::from_rows(&[[0]])).unwrap();
        assert_eq!(factors(&s), vec![0]);
        assert!(s.order().is_none());
    }

    #[test]
    fn sublattice_quotient() {
        let g = IntMatrix::from_rows(&[[1], [0]]);
        let r = IntMatrix::from_rows(&[[2], [0]]);
        let s = quotient_structure(&g, &r).unwrap();
        assert_eq!(factors(&s), vec![2]);
        assert_eq!(s.generator_coords()[0], big_vec(&[1]));
        assert_eq!(s.class_of(&big_vec(&[3, 0])).unwrap(), big_vec(&[1]));
        assert!(s.class_of(&big_vec(&[0, 1])).is_err());
    }

    #[test]
    fn relation_outside_span_is_rejected() {
        let g = IntMatrix::from_rows(&[[1], [0]]);
        let r = IntMatrix::from_rows(&[[0], [1]]);
        assert!(matches!(quotient_structure(&g, &r), Err(Error::RelationNotInSpan { .. })));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[[1, 1]])), IntMatrix::from_rows(&[[1], [-1]]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[[2, 4]])), IntMatrix::from_rows(&[[2], [-1]]));
        assert_eq!(kernel_basis(&IntMatrix::zeros(0, 3)), IntMatrix::identity(3));
    }

    #[test]
    fn solve_mod_examples() {
        let m = |x: i64| BigInt::from(x);
        assert_eq!(solve_mod(&IntMatrix::from_rows(&[[2]]), &big_vec(&[1]), &m(4)), None);
        assert_eq!(solve_mod(&IntMatrix::from_rows(&[[1]]), &big_vec(&[3]), &m(5)), Some(big_vec(&[3])));
        assert_eq!(solve_mod(&IntMatrix::from_rows(&[[2, 1]]), &big_vec(&[1]), &m(4)), Some(big_vec(&[0, 1])));
    }

    #[test]
    fn kernel_of_finite_hom() {
        // ℤ/4 → ℤ/2, 1 ↦ 1: kernel generated by 2
        let k = hom_kernel(&big_vec(&[4]), &big_vec(&[2]), &[big_vec(&[1])]);
        assert!(span_contains(&big_vec(&[4]), &k, &big_vec(&[2])));
        assert!(!span_contains(&big_vec(&[4]), &k, &big_vec(&[1])));
    }
}
