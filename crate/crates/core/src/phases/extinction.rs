use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::cocycle::PhaseCocycle;
use super::products::translation_difference;
use crate::exactalg::{kernel_basis, span_contains, IntMatrix};
use crate::groups::PointGroup;
use crate::homology::{Chain1, HomologyGroup};

/// Verdict for one lattice vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extinction {
    pub k: Vec<BigInt>,
    pub extinct: bool,
    /// First element (by index) with `k·g = k` and `Φ_g(k) ≠ 0`.
    pub witness: Option<usize>,
}

/// `ρ̂(k) = 0` is forced when some `g` fixes `k` with `Φ_g(k) ≠ 0`.
pub fn extinction_set(group: &PointGroup, phi: &PhaseCocycle, ks: &[Vec<BigInt>]) -> Vec<Extinction> {
    ks.iter()
        .map(|k| {
            let witness = group.elements().find(|&g| &group.rep(g).vec_mul(k) == k && !phi.eval(g, k).is_zero());
            Extinction { k: k.clone(), extinct: witness.is_some(), witness }
        })
        .collect()
}

/// How a generator of `H₁(G, L)` can be written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expressibility {
    /// In the span of cycles `k[g]` with `k·g = k`.
    Kg,
    /// Needs cycles `σ∩([g|h] − [h|g])` as well.
    SigmaCapC,
    /// Not reached by either family within the search bounds.
    Other,
}

/// Search bounds for the `σ∩c` family: `q ∈ ((1/D)ℤ/ℤ)ʳ` for each listed
/// `D`, skipped when `Dʳ` exceeds `max_points`.
#[derive(Clone, Debug)]
pub struct ExpressibilitySearch {
    pub denominators: Vec<u32>,
    pub max_points: u64,
}

impl Default for ExpressibilitySearch {
    fn default() -> Self {
        ExpressibilitySearch { denominators: vec![2, 3, 4], max_points: 1 << 14 }
    }
}

/// Classes of all `k[g]` cycles, `k` running over a basis of `L^g`.
pub fn kg_cycle_classes(h1: &HomologyGroup) -> Vec<(Chain1, Vec<BigInt>)> {
    let group = h1.group();
    let id = IntMatrix::identity(group.rank());
    let mut out = Vec::new();
    for g in group.elements().skip(1) {
        let fixed = kernel_basis(&(group.rep(g) - &id).transpose());
        for j in 0..fixed.cols() {
            let c = Chain1::term(g, fixed.column(j));
            let z = h1.class_of(&c).expect("k[g] with k fixed is a cycle");
            out.push((c, z));
        }
    }
    out
}

/// Classes of `σ∩([g|h] − [h|g])` over commuting pairs and the `q` grid.
pub fn sigma_cap_classes(h1: &HomologyGroup, search: &ExpressibilitySearch) -> Vec<(Chain1, Vec<BigInt>)> {
    let group = h1.group();
    let r = group.rank();
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = group
        .elements()
        .flat_map(|g| group.elements().filter(move |&h| g < h).map(move |h| (g, h)))
        .filter(|&(g, h)| g != 0 && group.group().commute(g, h))
        .collect();
    for &d in &search.denominators {
        let points = (d as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
        if points > search.max_points {
            continue;
        }
        for idx in 0..points {
            let mut rest = idx;
            let q: Vec<BigRational> = (0..r)
                .map(|_| {
                    let x = rest % d as u64;
                    rest /= d as u64;
                    BigRational::new(BigInt::from(x), BigInt::from(d))
                })
                .collect();
            for &(g, h) in &pairs {
                let kg = translation_difference(group, &q, g);
                let kh = translation_difference(group, &q, h);
                if kg.iter().chain(&kh).any(|x| !x.is_integer()) {
                    continue;
                }
                let mut c = Chain1::zero(r);
                c.add_term(h, &kg.iter().map(|x| x.to_integer()).collect::<Vec<_>>());
                c.add_term(g, &kh.iter().map(|x| -x.to_integer()).collect::<Vec<_>>());
                let z = h1.class_of(&c).expect("commuting pair with integral k gives a cycle");
                if z.iter().any(|x| !x.is_zero()) {
                    out.push((c, z));
                }
            }
        }
    }
    out
}

/// One flag per generator of `H₁(G, L)`.
pub fn expressibility(h1: &HomologyGroup, search: &ExpressibilitySearch) -> Vec<Expressibility> {
    let factors = h1.invariant_factors();
    let kg: Vec<Vec<BigInt>> = kg_cycle_classes(h1).into_iter().map(|(_, z)| z).collect();
    let mut both = kg.clone();
    let mut sigma_done = false;
    (0..factors.len())
        .map(|i| {
            let mut e = vec![BigInt::zero(); factors.len()];
            e[i] = BigInt::from(1);
            if span_contains(factors, &kg, &e) {
                return Expressibility::Kg;
            }
            if !sigma_done {
                both.extend(sigma_cap_classes(h1, search).into_iter().map(|(_, z)| z));
                sigma_done = true;
            }
            if span_contains(factors, &both, &e) {
                Expressibility::SigmaCapC
            } else {
                Expressibility::Other
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::big_vec;
    use crate::homology::h1_bar;
    use crate::lattices::{cyclotomic_lattice, preset_lattice};
    use crate::phases::cohomology_classes;

    #[test]
    fn pg_extinctions() {
        let l = preset_lattice("pg").unwrap();
        let g = l.group();
        let h = cohomology_classes(&l);
        let phi = &h.generators()[0];
        let ks = vec![big_vec(&[1, 0]), big_vec(&[2, 0]), big_vec(&[-3, 0]), big_vec(&[1, 1])];
        let ext: Vec<bool> = extinction_set(g, phi, &ks).iter().map(|e| e.extinct).collect();
        assert_eq!(ext, vec![true, false, true, false]);
        assert_eq!(extinction_set(g, phi, &ks)[0].witness, g.group().find_label("m"));
        assert!(extinction_set(g, &PhaseCocycle::zero(g), &ks).iter().all(|e| !e.extinct));
    }

    #[test]
    fn rotations_have_no_extinctions() {
        let l = cyclotomic_lattice(4, None).unwrap();
        let ks: Vec<Vec<BigInt>> = (-2..=2).flat_map(|a| (-2..=2).map(move |b| big_vec(&[a, b]))).collect();
        let phi = PhaseCocycle::zero(l.group());
        assert!(extinction_set(l.group(), &phi, &ks).iter().all(|e| !e.extinct));
    }

    #[test]
    fn pg_generator_is_a_kg_cycle() {
        let h = h1_bar(&preset_lattice("pg").unwrap());
        assert_eq!(expressibility(&h, &ExpressibilitySearch::default()), vec![Expressibility::Kg]);
    }
}
