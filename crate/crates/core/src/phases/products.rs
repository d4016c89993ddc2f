use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::cocycle::{pair, Phase, PhaseCocycle};
use crate::error::{Error, Result};
use crate::groups::PointGroup;
use crate::homology::Chain1;

/// `σ(g) = q·g − q` for a rational vector `q` with every `σ(g)` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationCocycle {
    q: Vec<BigRational>,
    values: Vec<Vec<BigInt>>,
}

impl TranslationCocycle {
    pub fn new(group: &PointGroup, q: Vec<BigRational>) -> Result<Self> {
        if q.len() != group.rank() {
            return Err(Error::DimensionMismatch("q has the wrong length".into()));
        }
        let mut values = Vec::with_capacity(group.order());
        for g in group.elements() {
            let k = translation_difference(group, &q, g);
            if k.iter().any(|x| !x.is_integer()) {
                return Err(Error::NotIntegralTranslation { element: group.label(g).into() });
            }
            values.push(k.into_iter().map(|x| x.to_integer()).collect());
        }
        Ok(TranslationCocycle { q, values })
    }

    pub fn q(&self) -> &[BigRational] {
        &self.q
    }

    /// `k_g = q·g − q`.
    pub fn value(&self, g: usize) -> &[BigInt] {
        &self.values[g]
    }
}

/// `q·g − q` over ℚ.
pub fn translation_difference(group: &PointGroup, q: &[BigRational], g: usize) -> Vec<BigRational> {
    let rep = group.rep(g);
    (0..group.rank())
        .map(|j| {
            let s: BigRational =
                q.iter().enumerate().map(|(i, x)| x * BigRational::from_integer(rep[(i, j)].clone())).sum();
            s - &q[j]
        })
        .collect()
}

/// A 2-chain `Σ n_{g,h}[g|h]` with integer coefficients (trivial module ℤ).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoChain {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl TwoChain {
    pub fn new() -> Self {
        TwoChain::default()
    }

    pub fn add(&mut self, g: usize, h: usize, n: impl Into<BigInt>) {
        let e = self.terms.entry((g, h)).or_default();
        *e += n.into();
        if e.is_zero() {
            self.terms.remove(&(g, h));
        }
    }

    /// `[g|h] − [h|g]`, a cycle exactly when `g` and `h` commute.
    pub fn commutator(g: usize, h: usize) -> Self {
        let mut c = TwoChain::new();
        c.add(g, h, 1);
        c.add(h, g, -1);
        c
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().flat_map(|&(g, h)| [g, h]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `∂[g|h] = [h] − [gh] + [g]` with trivial coefficients vanishes.
    pub fn is_cycle(&self, group: &PointGroup) -> bool {
        let mut acc = vec![BigInt::zero(); group.order()];
        for ((g, h), n) in self.terms() {
            acc[h] += n;
            acc[group.mul(g, h)] -= n;
            acc[g] += n;
        }
        acc.iter().all(Zero::is_zero)
    }

    /// The chain with every element index replaced by `map[index]`.
    pub fn relabelled(&self, map: &[usize]) -> Self {
        let mut out = TwoChain::new();
        for ((g, h), n) in self.terms() {
            out.add(map[g], map[h], n.clone());
        }
        out
    }
}

/// A 2-cocycle `G × G → (1/M)ℤ/ℤ` with trivial action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSystem {
    modulus: BigInt,
    values: Vec<Vec<BigInt>>,
}

impl FactorSystem {
    /// Checks `f(h,l) − f(gh,l) + f(g,hl) − f(g,h) ≡ 0` on all triples.
    pub fn new(group: &PointGroup, modulus: BigInt, values: Vec<Vec<BigInt>>) -> Result<Self> {
        let values: Vec<Vec<BigInt>> =
            values.into_iter().map(|row| row.into_iter().map(|x| x.mod_floor(&modulus)).collect()).collect();
        for g in group.elements() {
            for h in group.elements() {
                for l in group.elements() {
                    let s = &values[h][l] - &values[group.mul(g, h)][l] + &values[g][group.mul(h, l)] - &values[g][h];
                    if !s.is_multiple_of(&modulus) {
                        return Err(Error::NotACocycle { g: group.label(g).into(), h: group.label(h).into() });
                    }
                }
            }
        }
        Ok(FactorSystem { modulus, values })
    }

    pub fn value(&self, g: usize, h: usize) -> Phase {
        Phase::new(self.values[g][h].clone(), self.modulus.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    /// `Σ n_{g,h}·f(g,h)`.
    pub fn pair(&self, c: &TwoChain) -> Phase {
        let s: BigInt = c.terms().map(|((g, h), n)| n * &self.values[g][h]).sum();
        Phase::new(s, self.modulus.clone())
    }
}

/// `Φ ∪ σ : (g, h) ↦ Φ_h(k_g)`.
pub fn cup_sigma(group: &PointGroup, phi: &PhaseCocycle, sigma: &TranslationCocycle) -> Result<FactorSystem> {
    let values = group
        .elements()
        .map(|g| group.elements().map(|h| sigma.value(g).iter().zip(phi.value(h)).map(|(a, b)| a * b).sum()).collect())
        .collect();
    FactorSystem::new(group, phi.modulus().clone(), values)
}

/// `σ ∩ Σ n_{g,h}[g|h] = Σ n_{g,h}·k_g[h]`.
pub fn cap_sigma(group: &PointGroup, sigma: &TranslationCocycle, c: &TwoChain) -> Result<Chain1> {
    if !c.is_cycle(group) {
        return Err(Error::NotA2Cycle);
    }
    let mut out = Chain1::zero(group.rank());
    for ((g, h), n) in c.terms() {
        let k: Vec<BigInt> = sigma.value(g).iter().map(|x| x * n).collect();
        out.add_term(h, &k);
    }
    Ok(out)
}

/// Cap product from a bare `q`, requiring integrality only on the elements
/// the cycle uses as first slot.
pub fn cap_sigma_partial(group: &PointGroup, q: &[BigRational], c: &TwoChain) -> Result<Chain1> {
    if !c.is_cycle(group) {
        return Err(Error::NotA2Cycle);
    }
    let mut out = Chain1::zero(group.rank());
    for ((g, h), n) in c.terms() {
        let k = translation_difference(group, q, g);
        if k.iter().any(|x| !x.is_integer()) {
            return Err(Error::NonIntegralCoefficients);
        }
        let k: Vec<BigInt> = k.into_iter().map(|x| x.to_integer() * n).collect();
        out.add_term(h, &k);
    }
    Ok(out)
}

/// Both sides of `⟨Φ, σ∩c⟩ = ⟨Φ∪σ, c⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmCheck {
    pub lhs: Phase,
    pub rhs: Phase,
    pub equal: bool,
    pub equal_up_to_sign: bool,
}

/// Evaluates the cap/cup identity on the subgroup generated by the support
/// of `c`, so `q` only has to be compatible with that subgroup.
///
/// `flip_pairing` negates the left-hand pairing; it exists to check that the
/// identity is sensitive to the sign convention.
pub fn km_identity_check(
    group: &PointGroup,
    phi: &PhaseCocycle,
    q: &[BigRational],
    c: &TwoChain,
    flip_pairing: bool,
) -> Result<KmCheck> {
    let members = group.group().generated_subgroup(&c.support());
    let (sub, embedding) = group.restrict(&members)?;
    let mut local = vec![usize::MAX; group.order()];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i;
    }
    let phi_sub =
        PhaseCocycle::new(&sub, phi.modulus().clone(), embedding.iter().map(|&x| phi.value(x).to_vec()).collect())?;
    let c_sub = c.relabelled(&local);
    let sigma = TranslationCocycle::new(&sub, q.to_vec())?;
    let cap = cap_sigma(&sub, &sigma, &c_sub)?;
    let mut lhs = pair(&sub, &phi_sub, &cap)?;
    if flip_pairing {
        lhs = -lhs;
    }
    let rhs = cup_sigma(&sub, &phi_sub, &sigma)?.pair(&c_sub);
    let equal = lhs == rhs;
    let equal_up_to_sign = equal || lhs == -rhs.clone();
    Ok(KmCheck { lhs, rhs, equal, equal_up_to_sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::preset_lattice;
    use crate::phases::cohomology_classes;

    fn half(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::new(x.into(), 2.into())).collect()
    }

    #[test]
    fn integral_q_gives_trivial_products() {
        let l = preset_lattice("rectangular").unwrap();
        let g = l.group();
        let h = cohomology_classes(&l);
        let sigma = TranslationCocycle::new(g, half(&[2, 4])).unwrap();
        for phi in h.generators() {
            assert!(cup_sigma(g, phi, &sigma).unwrap().is_zero());
        }
    }

    #[test]
    fn cap_of_equal_pair_is_zero() {
        let l = preset_lattice("rectangular").unwrap();
        let g = l.group();
        let sigma = TranslationCocycle::new(g, half(&[1, 1])).unwrap();
        assert!(cap_sigma(g, &sigma, &TwoChain::commutator(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn non_commuting_pair_is_not_a_cycle() {
        let l = preset_lattice("square_axis_mirror").unwrap();
        let g = l.group();
        let r = g.group().find_label("r").unwrap();
        let m = g.group().find_label("m").unwrap();
        let sigma = TranslationCocycle::new(g, half(&[0, 0])).unwrap();
        assert_eq!(cap_sigma(g, &sigma, &TwoChain::commutator(r, m)), Err(Error::NotA2Cycle));
    }

    #[test]
    fn non_integral_translation_is_rejected() {
        let l = preset_lattice("square_axis_mirror").unwrap();
        assert!(matches!(
            TranslationCocycle::new(l.group(), vec![BigRational::new(1.into(), 3.into()), BigRational::zero()]),
            Err(Error::NotIntegralTranslation { .. })
        ));
    }

    #[test]
    fn km_identity_on_order_three_classes() {
        let l = preset_lattice("c3xc3").unwrap();
        let g = l.group();
        let h = cohomology_classes(&l);
        let a = g.group().find_label("a").unwrap();
        let b = g.group().find_label("b").unwrap();
        let q: Vec<BigRational> = [1, 1, 0, 0].iter().map(|&x| BigRational::new(x.into(), 3.into())).collect();
        let c = TwoChain::commutator(a, b);
        let mut seen_nonzero = false;
        for phi in h.generators() {
            let k = km_identity_check(g, phi, &q, &c, false).unwrap();
            assert!(k.equal);
            seen_nonzero |= !k.lhs.is_zero();
            let flipped = km_identity_check(g, phi, &q, &c, true).unwrap();
            assert_eq!(flipped.equal, k.lhs.is_zero());
        }
        assert!(seen_nonzero);
    }

    #[test]
    fn km_identity_on_i212121() {
        let l = preset_lattice("I212121").unwrap();
        let g = l.group();
        let phi = &cohomology_classes(&l).generators()[0].clone();
        let mut nonzero = 0;
        for x in g.elements().skip(1) {
            for y in g.elements().skip(1) {
                if x >= y {
                    continue;
                }
                for idx in 0..64 {
                    let q: Vec<BigRational> =
                        (0..3).map(|i| BigRational::new(((idx >> (2 * i)) & 3).into(), 4.into())).collect();
                    if let Ok(k) = km_identity_check(g, phi, &q, &TwoChain::commutator(x, y), false) {
                        assert!(k.equal);
                        nonzero += usize::from(!k.lhs.is_zero());
                    }
                }
            }
        }
        assert!(nonzero > 0);
    }
}
