//! First homology `H₁(G, L)` from the bar resolution, the cyclic shortcut
//! `H₁(C_N, L) = ker(r − 1)/N_r L`, and the map to `H₁(G/H, L_H)`.
//!
//! A 1-chain `Σ k_g[g]` is stored densely as a vector in `ℤ^{N·r}` with
//! `k_g` occupying the block `g·r .. (g+1)·r`. Degenerate bar simplices
//! (`[e|h]`, `[g|e]`) are kept in the relation set.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::lattice::{column_lattice_basis, SparseVec};
use crate::exactalg::{hom_kernel, kernel_basis, quotient_structure, quotient_structure_sparse, span_contains};
use crate::exactalg::{AbelianGroupStructure, IntMatrix};
use crate::groups::{PointGroup, SubgroupData};
use crate::lattices::LatticeModule;

/// `Σ_g k_g[g]` with `k_g ∈ ℤʳ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain1 {
    rank: usize,
    terms: BTreeMap<usize, Vec<BigInt>>,
}

impl Chain1 {
    pub fn zero(rank: usize) -> Self {
        Chain1 { rank, terms: BTreeMap::new() }
    }

    /// The single term `k[g]`.
    pub fn term(g: usize, k: Vec<BigInt>) -> Self {
        let mut c = Chain1::zero(k.len());
        c.add_term(g, &k);
        c
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, g: usize, k: &[BigInt]) {
        assert_eq!(k.len(), self.rank, "coefficient has the wrong length");
        let entry = self.terms.entry(g).or_insert_with(|| vec![BigInt::zero(); k.len()]);
        for (a, b) in entry.iter_mut().zip(k) {
            *a += b;
        }
        if entry.iter().all(Zero::is_zero) {
            self.terms.remove(&g);
        }
    }

    pub fn coefficient(&self, g: usize) -> Vec<BigInt> {
        self.terms.get(&g).cloned().unwrap_or_else(|| vec![BigInt::zero(); self.rank])
    }

    /// Nonzero terms, ordered by element index.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Vec<BigInt>)> {
        self.terms.iter().map(|(g, k)| (*g, k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Chain1::zero(self.rank);
        for (g, k) in self.terms() {
            out.add_term(g, &k.iter().map(|x| x * c).collect::<Vec<_>>());
        }
        out
    }

    pub fn plus(&self, other: &Chain1) -> Self {
        let mut out = self.clone();
        for (g, k) in other.terms() {
            out.add_term(g, k);
        }
        out
    }

    pub fn to_dense(&self, order: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); order * self.rank];
        for (g, k) in self.terms() {
            v[g * self.rank..(g + 1) * self.rank].clone_from_slice(k);
        }
        v
    }

    pub fn from_dense(rank: usize, v: &[BigInt]) -> Self {
        let mut c = Chain1::zero(rank);
        if rank == 0 {
            return c;
        }
        for (g, block) in v.chunks(rank).enumerate() {
            c.add_term(g, block);
        }
        c
    }
}

/// `Σ q_{g,h}[g|h]` with `q_{g,h} ∈ ℤʳ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain2 {
    rank: usize,
    terms: BTreeMap<(usize, usize), Vec<BigInt>>,
}

impl Chain2 {
    pub fn zero(rank: usize) -> Self {
        Chain2 { rank, terms: BTreeMap::new() }
    }

    pub fn term(g: usize, h: usize, q: Vec<BigInt>) -> Self {
        let mut c = Chain2::zero(q.len());
        c.add_term(g, h, &q);
        c
    }

    pub fn add_term(&mut self, g: usize, h: usize, q: &[BigInt]) {
        assert_eq!(q.len(), self.rank, "coefficient has the wrong length");
        let entry = self.terms.entry((g, h)).or_insert_with(|| vec![BigInt::zero(); q.len()]);
        for (a, b) in entry.iter_mut().zip(q) {
            *a += b;
        }
        if entry.iter().all(Zero::is_zero) {
            self.terms.remove(&(g, h));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Vec<BigInt>)> {
        self.terms.iter().map(|(gh, q)| (*gh, q))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// `∂(Σ k_g[g]) = Σ (k_g·g − k_g)`.
pub fn boundary1(group: &PointGroup, c: &Chain1) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); group.rank()];
    for (g, k) in c.terms() {
        let kg = group.rep(g).vec_mul(k);
        for ((o, a), b) in out.iter_mut().zip(kg).zip(k) {
            *o += a - b;
        }
    }
    out
}

/// `∂(q[g|h]) = (q·g)[h] − q[gh] + q[g]`.
pub fn boundary2(group: &PointGroup, c: &Chain2) -> Chain1 {
    let mut out = Chain1::zero(c.rank());
    for ((g, h), q) in c.terms() {
        out.add_term(h, &group.rep(g).vec_mul(q));
        out.add_term(group.mul(g, h), &q.iter().map(|x| -x).collect::<Vec<_>>());
        out.add_term(g, q);
    }
    out
}

pub fn is_cycle(group: &PointGroup, c: &Chain1) -> bool {
    boundary1(group, c).iter().all(Zero::is_zero)
}

/// `∂₂(e_i[g|h])` as a sparse vector of the dense 1-chain layout.
fn bar_relation(reps: &[IntMatrix], mul: &dyn Fn(usize, usize) -> usize, g: usize, h: usize, i: usize) -> SparseVec {
    let r = reps[g].rows();
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (j, x) in reps[g].row(i).iter().enumerate() {
        if !x.is_zero() {
            *acc.entry(h * r + j).or_default() += x;
        }
    }
    *acc.entry(mul(g, h) * r + i).or_default() -= 1;
    *acc.entry(g * r + i).or_default() += 1;
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Clone, Debug)]
enum Reduction {
    /// Classes live in `ℤ^{N·r}/im ∂₂`.
    Bar,
    /// Classes live in `ker(r − 1)/N_r L`; `power[g] = j` with `g = r^j`.
    Cyclic { generator: usize, power: Vec<usize> },
}

/// `H₁(G, L)` with explicit generating cycles and a membership test.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    structure: AbelianGroupStructure,
    group: PointGroup,
    generators: Vec<Chain1>,
    reduction: Reduction,
}

impl HomologyGroup {
    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        self.structure.invariant_factors()
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.structure.factors_u64()
    }

    pub fn order(&self) -> BigInt {
        self.structure.order().expect("H₁ of a finite group is finite")
    }

    pub fn is_trivial(&self) -> bool {
        self.structure.is_trivial()
    }

    /// One cycle per invariant factor.
    pub fn generators(&self) -> &[Chain1] {
        &self.generators
    }

    pub fn group(&self) -> &PointGroup {
        &self.group
    }

    /// Class coordinates of a cycle, reduced modulo the invariant factors.
    pub fn class_of(&self, c: &Chain1) -> Result<Vec<BigInt>> {
        if !is_cycle(&self.group, c) {
            return Err(Error::NotACycle);
        }
        match &self.reduction {
            Reduction::Bar => self.structure.class_of(&c.to_dense(self.group.order())),
            Reduction::Cyclic { generator, power } => {
                // q[r^{a+1}] ≡ q[r^a] + (q·r^a)[r] modulo boundaries.
                let rep = self.group.rep(*generator);
                let mut m = vec![BigInt::zero(); c.rank()];
                for (g, k) in c.terms() {
                    let mut x = k.clone();
                    for _ in 0..power[g] {
                        for (a, b) in m.iter_mut().zip(&x) {
                            *a += b;
                        }
                        x = rep.vec_mul(&x);
                    }
                }
                self.structure.class_of(&m)
            }
        }
    }

    pub fn is_boundary(&self, c: &Chain1) -> Result<bool> {
        Ok(self.class_of(c)?.iter().all(Zero::is_zero))
    }
}

/// `H₁(G, L)` as the torsion of `C₁/im ∂₂`.
///
/// Since `C₁/ker ∂₁` embeds in the free module `L`, the torsion subgroup of
/// `C₁/im ∂₂` is exactly `ker ∂₁/im ∂₂`, which is finite for finite `G`.
pub fn h1_bar(l: &LatticeModule) -> HomologyGroup {
    let group = l.group().clone();
    let n = group.order();
    let r = l.rank();
    let reps = group.reps().to_vec();
    let table = group.group().clone();
    let mul = move |a: usize, b: usize| table.mul(a, b);
    let relations = (0..n).flat_map(|g| (0..n).flat_map(move |h| (0..r).map(move |i| (g, h, i))));
    let relations = relations.map(|(g, h, i)| bar_relation(&reps, &mul, g, h, i));
    let full = quotient_structure_sparse(&IntMatrix::identity(n * r), relations)
        .expect("relations live in the ambient lattice");
    let structure = full.torsion_part();
    let generators = structure.generators().iter().map(|v| Chain1::from_dense(r, v)).collect();
    HomologyGroup { structure, group, generators, reduction: Reduction::Bar }
}

/// `H₁(C_N, L) = ker(r − 1)/N_r L` for a cyclic group generated by `generator`.
pub fn h1_cyclic(l: &LatticeModule, generator: usize) -> Result<HomologyGroup> {
    let group = l.group().clone();
    let n = group.order();
    let mut power = vec![usize::MAX; n];
    let mut x = 0;
    for j in 0..n {
        if power[x] != usize::MAX {
            return Err(Error::NotCyclic);
        }
        power[x] = j;
        x = group.mul(x, generator);
    }
    let r = l.rank();
    let rep = group.rep(generator);
    let id = IntMatrix::identity(r);
    // Row vectors: k·R = k ⇔ (Rᵀ − I)·kᵀ = 0; N_r L is spanned by the rows of Σ Rʲ.
    let fixed = kernel_basis(&(&rep.transpose() - &id));
    let mut norm = IntMatrix::zeros(r, r);
    let mut p = id.clone();
    for _ in 0..n {
        norm = &norm + &p;
        p = &p * rep;
    }
    let structure = quotient_structure(&fixed, &norm.transpose())?;
    let generators = structure.generators().iter().map(|k| Chain1::term(generator, k.clone())).collect();
    Ok(HomologyGroup { structure, group, generators, reduction: Reduction::Cyclic { generator, power } })
}

/// Finite abelian duality: the character group has the same invariant factors.
pub fn dual_structure(h: &AbelianGroupStructure) -> Result<AbelianGroupStructure> {
    if !h.is_finite() {
        return Err(Error::InfiniteFactor);
    }
    Ok(h.clone())
}

/// `H₁(Q, L_H)` for `Q = G/H`, computed on lifts: chains `Σ k_q[q]` with
/// `k_q ∈ L`, cycles are those with `∂k ∈ S = ⟨k(h − 1)⟩`, boundaries are
/// the bar relations of `Q` plus `S` in every slot.
#[derive(Clone, Debug)]
pub struct CoinvariantHomology {
    pub structure: AbelianGroupStructure,
    pub quotient_order: usize,
    pub rank: usize,
}

impl CoinvariantHomology {
    pub fn factors_u64(&self) -> Vec<u64> {
        self.structure.factors_u64()
    }

    /// Class of the lifted chain `Σ k_q[q]` (dense layout over `Q`).
    pub fn class_of_dense(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.structure.class_of(v)
    }
}

/// The map `H₁(G, L) → H₁(G/H, L_H)` of the homology exact sequence, with
/// the inclusion-induced `H₁(H, L) → H₁(G, L)` for the exactness check.
#[derive(Clone, Debug)]
pub struct CoinvariantQuotientMap {
    pub source: HomologyGroup,
    pub target: CoinvariantHomology,
    /// Image of each source generator in target coordinates.
    pub images: Vec<Vec<BigInt>>,
    /// `H₁(H, L)` and the images of its generators in source coordinates.
    pub subgroup_homology: HomologyGroup,
    pub inclusion_images: Vec<Vec<BigInt>>,
}

impl CoinvariantQuotientMap {
    pub fn is_surjective(&self) -> bool {
        let t = self.target.structure.invariant_factors();
        (0..t.len()).all(|j| {
            let mut e = vec![BigInt::zero(); t.len()];
            e[j] = BigInt::from(1);
            span_contains(t, &self.images, &e)
        })
    }

    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        hom_kernel(self.source.invariant_factors(), self.target.structure.invariant_factors(), &self.images)
    }

    pub fn is_isomorphism(&self) -> bool {
        let s = self.source.invariant_factors();
        self.is_surjective() && self.kernel().iter().all(|k| k.iter().zip(s).all(|(x, d)| (x % d).is_zero()))
    }

    /// Image of `H₁(H, L)` equals the kernel of this map.
    pub fn is_exact_in_middle(&self) -> bool {
        let s = self.source.invariant_factors();
        let kernel = self.kernel();
        let image_in_kernel = self.inclusion_images.iter().all(|x| span_contains(s, &kernel, x));
        let kernel_in_image = kernel.iter().all(|x| span_contains(s, &self.inclusion_images, x));
        image_in_kernel && kernel_in_image
    }
}

pub fn coinvariant_quotient_map(l: &LatticeModule, h: &SubgroupData) -> Result<CoinvariantQuotientMap> {
    let quotient = h.quotient().ok_or(Error::NotNormal)?;
    let g = l.group();
    let r = l.rank();
    let q_order = quotient.group.order();
    let id = IntMatrix::identity(r);

    // S as columns: transposed rows of (R_h − I).
    let mut s_cols: Vec<Vec<BigInt>> = Vec::new();
    for x in h.members() {
        let d = g.rep(x) - &id;
        s_cols.extend(d.to_rows());
    }
    let s_mat = IntMatrix::from_columns(&s_cols, r);

    // ∂₁ on lifts, using the coset representatives' matrices.
    let rep_q: Vec<&IntMatrix> = quotient.representatives.iter().map(|&x| g.rep(x)).collect();
    let mut d1_cols = Vec::with_capacity(q_order * r);
    for m in &rep_q {
        d1_cols.extend((m.to_owned() - &id).to_rows());
    }
    let d1 = IntMatrix::from_columns(&d1_cols, r);
    let stacked = d1.hstack(&s_mat.map(|x| -x));
    let ker = kernel_basis(&stacked);
    let lifts: Vec<usize> = (0..q_order * r).collect();
    let cycles = column_lattice_basis(&ker.select_rows(&lifts));

    let mut relations: Vec<SparseVec> = Vec::new();
    let reps: Vec<IntMatrix> = rep_q.iter().map(|m| (*m).clone()).collect();
    let qg = quotient.group.clone();
    let mul = move |a: usize, b: usize| qg.mul(a, b);
    for a in 0..q_order {
        for b in 0..q_order {
            for i in 0..r {
                relations.push(bar_relation(&reps, &mul, a, b, i));
            }
        }
    }
    for q in 0..q_order {
        for s in &s_cols {
            relations.push(
                s.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (q * r + i, x.clone())).collect(),
            );
        }
    }
    let structure = quotient_structure_sparse(&cycles, relations)?;
    let target = CoinvariantHomology { structure, quotient_order: q_order, rank: r };

    let source = h1_bar(l);
    let push = |c: &Chain1| -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); q_order * r];
        for (x, k) in c.terms() {
            let q = quotient.coset_of[x];
            for (o, y) in v[q * r..(q + 1) * r].iter_mut().zip(k) {
                *o += y;
            }
        }
        target.class_of_dense(&v)
    };
    let images = source.generators().iter().map(push).collect::<Result<Vec<_>>>()?;

    let (sub_group, embedding) = h.as_point_group();
    let sub_lattice = LatticeModule::new(format!("{}|H", l.name()), sub_group, None)?;
    let subgroup_homology = h1_bar(&sub_lattice);
    let inclusion_images = subgroup_homology
        .generators()
        .iter()
        .map(|c| {
            let mut lifted = Chain1::zero(r);
            for (x, k) in c.terms() {
                lifted.add_term(embedding[x], k);
            }
            source.class_of(&lifted)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CoinvariantQuotientMap { source, target, images, subgroup_homology, inclusion_images })
}
