use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::cocycle::{pair_unchecked, Phase, PhaseCocycle};
use crate::error::{Error, Result};
use crate::exactalg::lattice::{EchelonBasis, SparseVec};
use crate::exactalg::{kernel_basis, quotient_structure, solve_mod, AbelianGroupStructure, IntMatrix};
use crate::exactalg::{SmithReduction, Track};
use crate::groups::PointGroup;
use crate::homology::Chain1;
use crate::lattices::LatticeModule;

/// `H¹(G, L̂)` as cocycles modulo coboundaries over `ℤ/M`, `M = #G`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    structure: AbelianGroupStructure,
    group: PointGroup,
    modulus: BigInt,
    generators: Vec<PhaseCocycle>,
}

impl CohomologyGroup {
    pub fn invariant_factors(&self) -> &[BigInt] {
        self.structure.invariant_factors()
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.structure.factors_u64()
    }

    pub fn order(&self) -> BigInt {
        self.structure.order().expect("H¹ of a finite group is finite")
    }

    pub fn is_trivial(&self) -> bool {
        self.structure.is_trivial()
    }

    /// The modulus `#G` used for all representatives.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// One cocycle per invariant factor.
    pub fn generators(&self) -> &[PhaseCocycle] {
        &self.generators
    }

    pub fn group(&self) -> &PointGroup {
        &self.group
    }

    /// Class coordinates of any cocycle on this group.
    pub fn class_of(&self, phi: &PhaseCocycle) -> Result<Vec<BigInt>> {
        let phi = if self.modulus.is_multiple_of(phi.modulus()) {
            phi.with_modulus(&self.modulus)?
        } else {
            reduce_to_torsion(&self.group, phi, &self.modulus)?.with_modulus(&self.modulus)?
        };
        self.structure.class_of(&phi.to_dense())
    }

    pub fn is_coboundary(&self, phi: &PhaseCocycle) -> Result<bool> {
        Ok(self.class_of(phi)?.iter().all(Zero::is_zero))
    }

    /// The representative `Σ zᵢ·genᵢ`.
    pub fn cocycle(&self, coords: &[BigInt]) -> PhaseCocycle {
        let v = self.structure.lift(coords);
        let r = self.group.rank();
        let values =
            if r == 0 { vec![vec![]; self.group.order()] } else { v.chunks(r).map(<[BigInt]>::to_vec).collect() };
        PhaseCocycle::new_unchecked(self.modulus.clone(), values)
    }

    /// Every class, as `(coordinates, representative)` in lexicographic order.
    pub fn classes(&self) -> Vec<(Vec<BigInt>, PhaseCocycle)> {
        self.structure
            .enumerate()
            .into_iter()
            .map(|z| {
                let phi = self.cocycle(&z);
                (z, phi)
            })
            .collect()
    }
}

/// Cocycle-law conditions `v_{gh} − R_g v_h − v_g` as sparse rows over `ℤ^{N·r}`.
fn cocycle_conditions(group: &PointGroup) -> impl Iterator<Item = SparseVec> + '_ {
    let n = group.order();
    let r = group.rank();
    (0..n).flat_map(move |g| (0..n).flat_map(move |h| (0..r).map(move |i| (g, h, i)))).map(move |(g, h, i)| {
        let mut row: std::collections::BTreeMap<usize, BigInt> = Default::default();
        *row.entry(group.mul(g, h) * r + i).or_default() += 1;
        for (j, x) in group.rep(g).row(i).iter().enumerate() {
            if !x.is_zero() {
                *row.entry(h * r + j).or_default() -= x;
            }
        }
        *row.entry(g * r + i).or_default() -= 1;
        row.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    })
}

/// Classes of phase functions with values in `(1/#G)ℤ/ℤ`, which by the
/// torsion bound represent all of `H¹(G, L̂)`.
///
/// ```
/// use qcohom::lattices::preset_lattice;
/// use qcohom::phases::cohomology_classes;
///
/// let h = cohomology_classes(&preset_lattice("I213").unwrap());
/// assert_eq!(h.factors_u64(), vec![2]);
/// assert_eq!(h.classes().len(), 2);
/// ```
pub fn cohomology_classes(l: &LatticeModule) -> CohomologyGroup {
    let group = l.group().clone();
    let n = group.order();
    let r = group.rank();
    let dim = n * r;
    let m = BigInt::from(n);

    // Cocycles: v with C·v ≡ 0 (mod M). Only the row lattice of C matters.
    let mut rows = EchelonBasis::new(dim);
    for row in cocycle_conditions(&group) {
        rows.insert(row);
    }
    let c = IntMatrix::from_big_rows(rows.vectors(), dim);
    let snf = SmithReduction::run(&c, Track { u: false, u_inv: false, v: true, v_inv: false });
    let v = snf.v.unwrap();
    // With w = V⁻¹v the condition is dᵢwᵢ ≡ 0 (mod M).
    let mut cocycle_cols = Vec::with_capacity(dim);
    for i in 0..dim {
        let scale = match snf.diagonal.get(i) {
            Some(d) if !d.is_zero() => &m / d.gcd(&m),
            _ => BigInt::one(),
        };
        cocycle_cols.push(v.column(i).into_iter().map(|x| x * &scale).collect::<Vec<_>>());
    }
    let cocycles = IntMatrix::from_columns(&cocycle_cols, dim);

    // Coboundaries: M·(R_g − I)χ for rational χ, i.e. the saturation of the
    // column span of the stacked (R_g − I), plus M·ℤ^{N·r}.
    let id = IntMatrix::identity(r);
    let mut a = IntMatrix::zeros(0, r);
    for rep in group.reps() {
        a = a.vstack(&(rep - &id));
    }
    let asnf = SmithReduction::run(&a, Track { u: false, u_inv: true, v: false, v_inv: false });
    let u_inv = asnf.u_inv.unwrap();
    let mut rel_cols: Vec<Vec<BigInt>> = (0..asnf.rank).map(|i| u_inv.column(i)).collect();
    for j in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[j] = m.clone();
        rel_cols.push(e);
    }
    let relations = IntMatrix::from_columns(&rel_cols, dim);

    let structure = quotient_structure(&cocycles, &relations).expect("coboundaries are cocycles");
    let generators = structure
        .generators()
        .iter()
        .map(|g| {
            let values = if r == 0 { vec![vec![]; n] } else { g.chunks(r).map(<[BigInt]>::to_vec).collect() };
            PhaseCocycle::new_unchecked(m.clone(), values)
        })
        .collect();
    CohomologyGroup { structure, group, modulus: m, generators }
}

/// Largest elementary divisor of `a` (1 for the zero matrix).
fn exponent_of_cokernel(a: &IntMatrix) -> BigInt {
    let s = SmithReduction::run(a, Track::default());
    s.diagonal[..s.rank].last().cloned().unwrap_or_else(BigInt::one)
}

/// A gauge-equivalent cocycle with values in `(1/target)ℤ/ℤ`.
///
/// Solves `(R_g − I)ψ ≡ target·Φ_g (mod ℤ)` for rational `ψ` and returns
/// `Φ − d(ψ/target)`. With `target = #G` a solution always exists.
pub fn reduce_to_torsion(group: &PointGroup, phi: &PhaseCocycle, target: &BigInt) -> Result<PhaseCocycle> {
    phi.verify(group)?;
    let r = group.rank();
    let id = IntMatrix::identity(r);
    let mut a = IntMatrix::zeros(0, r);
    for rep in group.reps() {
        a = a.vstack(&(rep - &id));
    }
    let e = exponent_of_cokernel(&a);
    // ψ = y/D with D = M'·e; then A·y ≡ e·T·v (mod D).
    let d = phi.modulus() * &e;
    let rhs: Vec<BigInt> = phi.to_dense().iter().map(|x| x * &e * target).collect();
    let y = solve_mod(&a, &rhs, &d).ok_or(Error::NotKilled { modulus: target.to_u64().unwrap_or(0) })?;
    let ay = a.mul_vec(&y);
    let values: Vec<BigInt> = rhs.iter().zip(&ay).map(|(b, x)| (b - x) / &d).collect();
    let values = if r == 0 { vec![vec![]; group.order()] } else { values.chunks(r).map(<[BigInt]>::to_vec).collect() };
    PhaseCocycle::new(group, target.clone(), values)
}

/// A gauge-equivalent cocycle with `Φ'_g ≡ 0`, when `Φ_g` vanishes on the
/// vectors fixed by `g`.
pub fn normalize_gauge_at(group: &PointGroup, phi: &PhaseCocycle, g: usize) -> Result<PhaseCocycle> {
    let r = group.rank();
    let id = IntMatrix::identity(r);
    let b = group.rep(g) - &id;
    let fixed = kernel_basis(&b.transpose());
    for j in 0..fixed.cols() {
        if !phi.eval(g, &fixed.column(j)).is_zero() {
            return Err(Error::HypothesisFails { element: group.label(g).into() });
        }
    }
    // χ = y/D with D = M·e: (R_g − I)·y ≡ e·v_g (mod D).
    let e = exponent_of_cokernel(&b);
    let d = phi.modulus() * &e;
    let rhs: Vec<BigInt> = phi.value(g).iter().map(|x| x * &e).collect();
    let y = solve_mod(&b, &rhs, &d).ok_or_else(|| Error::HypothesisFails { element: group.label(g).into() })?;
    let values = group
        .reps()
        .iter()
        .zip(phi.values())
        .map(|(rep, v)| {
            let shift = (rep - &id).mul_vec(&y);
            v.iter().zip(shift).map(|(x, s)| x * &e - s).collect()
        })
        .collect();
    Ok(PhaseCocycle::new(group, d, values)?.reduced())
}

/// `k ↦ k·F` carries the action through `α`: checks `R_g·F = F·R_{α(g)}`.
pub fn check_equivariant(group: &PointGroup, f: &IntMatrix, alpha: &[usize]) -> Result<()> {
    if !f.is_square() || f.rows() != group.rank() || !f.is_unimodular() {
        return Err(Error::NotEquivariant("F must be an invertible integer matrix of the lattice rank".into()));
    }
    if !group.group().is_automorphism(alpha) {
        return Err(Error::NotEquivariant("α is not an automorphism of G".into()));
    }
    for g in group.elements() {
        if &(group.rep(g) * f) != &(f * group.rep(alpha[g])) {
            return Err(Error::NotEquivariant(format!("R_g·F ≠ F·R_α(g) at g = {}", group.label(g))));
        }
    }
    Ok(())
}

/// The automorphism `α` with `R_{α(g)} = F⁻¹·R_g·F`, if `F` normalizes the action.
pub fn induced_automorphism(group: &PointGroup, f: &IntMatrix) -> Result<Vec<usize>> {
    let f_inv = f.inverse().ok_or_else(|| Error::NotEquivariant("F is not invertible over ℤ".into()))?;
    group
        .elements()
        .map(|g| {
            let m = &(&f_inv * group.rep(g)) * f;
            group
                .find_matrix(&m)
                .ok_or_else(|| Error::NotEquivariant(format!("F⁻¹·R_g·F is not in G for g = {}", group.label(g))))
        })
        .collect()
}

/// `Φ'_g(k) = Φ_{α(g)}(k·F)`, i.e. `v'_g = F·v_{α(g)}`.
pub fn apply_automorphism(
    group: &PointGroup,
    phi: &PhaseCocycle,
    f: &IntMatrix,
    alpha: &[usize],
) -> Result<PhaseCocycle> {
    check_equivariant(group, f, alpha)?;
    let values = group.elements().map(|g| f.mul_vec(phi.value(alpha[g]))).collect();
    PhaseCocycle::new(group, phi.modulus().clone(), values)
}

/// Matrix of pairings `⟨genᵢ(H¹), genⱼ(H₁)⟩`.
pub fn pairing_matrix(phis: &[PhaseCocycle], cycles: &[Chain1]) -> Vec<Vec<Phase>> {
    phis.iter().map(|p| cycles.iter().map(|c| pair_unchecked(p, c)).collect()).collect()
}
