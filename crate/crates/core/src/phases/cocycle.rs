use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::groups::PointGroup;
use crate::homology::{is_cycle, Chain1};

/// An element of ℚ/ℤ, kept in `[0, 1)` and rendered as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(BigRational);

impl Phase {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Phase::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_rational(x: BigRational) -> Self {
        let f = x.floor();
        Phase(x - f)
    }

    pub fn zero() -> Self {
        Phase(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 + rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_rational(-self.0)
    }
}

/// A phase function `g ↦ Φ_g ∈ Hom(L, (1/M)ℤ/ℤ)`, `Φ_g(k) = k·v_g / M`.
///
/// Construction checks `Φ_{gh}(k) = Φ_h(k·g) + Φ_g(k)` on every pair, which
/// in terms of the value vectors reads `v_{gh} ≡ R_g·v_h + v_g (mod M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseCocycle {
    modulus: BigInt,
    values: Vec<Vec<BigInt>>,
}

impl PhaseCocycle {
    pub fn new(group: &PointGroup, modulus: impl Into<BigInt>, values: Vec<Vec<BigInt>>) -> Result<Self> {
        let modulus = modulus.into();
        if !modulus.is_positive() {
            return Err(Error::ModulusMismatch("modulus must be positive".into()));
        }
        if values.len() != group.order() || values.iter().any(|v| v.len() != group.rank()) {
            return Err(Error::DimensionMismatch("one value vector of length r per element".into()));
        }
        let phi = PhaseCocycle::normalized(modulus, values);
        phi.check(group)?;
        Ok(phi)
    }

    fn normalized(modulus: BigInt, values: Vec<Vec<BigInt>>) -> Self {
        let values = values.into_iter().map(|v| v.into_iter().map(|x| x.mod_floor(&modulus)).collect()).collect();
        PhaseCocycle { modulus, values }
    }

    pub(crate) fn new_unchecked(modulus: BigInt, values: Vec<Vec<BigInt>>) -> Self {
        PhaseCocycle::normalized(modulus, values)
    }

    /// From rational values `Φ_g(e_i)`, brought to a common denominator.
    pub fn from_rational(group: &PointGroup, values: &[Vec<BigRational>]) -> Result<Self> {
        let m = values.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = values
            .iter()
            .map(|v| v.iter().map(|x| (x * BigRational::from_integer(m.clone())).to_integer()).collect())
            .collect();
        PhaseCocycle::new(group, m, ints)
    }

    pub fn zero(group: &PointGroup) -> Self {
        PhaseCocycle::normalized(BigInt::one(), vec![vec![BigInt::zero(); group.rank()]; group.order()])
    }

    fn check(&self, group: &PointGroup) -> Result<()> {
        if self.values[0].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACocycle { g: group.label(0).into(), h: group.label(0).into() });
        }
        for g in group.elements() {
            for h in group.elements() {
                let rhs = group.rep(g).mul_vec(&self.values[h]);
                let ok = self.values[group.mul(g, h)]
                    .iter()
                    .zip(rhs.iter().zip(&self.values[g]))
                    .all(|(a, (b, c))| (a - b - c).is_multiple_of(&self.modulus));
                if !ok {
                    return Err(Error::NotACocycle { g: group.label(g).into(), h: group.label(h).into() });
                }
            }
        }
        Ok(())
    }

    /// Re-runs the cocycle check against `group`.
    pub fn verify(&self, group: &PointGroup) -> Result<()> {
        self.check(group)
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// `v_g`, with entries in `[0, M)`.
    pub fn value(&self, g: usize) -> &[BigInt] {
        &self.values[g]
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// `Φ_g(k)`.
    pub fn eval(&self, g: usize, k: &[BigInt]) -> Phase {
        let s: BigInt = k.iter().zip(&self.values[g]).map(|(a, b)| a * b).sum();
        Phase::new(s, self.modulus.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    /// The same cocycle written over modulus `m`, a multiple of the current one.
    pub fn with_modulus(&self, m: &BigInt) -> Result<Self> {
        if !m.is_multiple_of(&self.modulus) {
            return Err(Error::ModulusMismatch(format!("{} does not divide {m}", self.modulus)));
        }
        let f = m / &self.modulus;
        Ok(PhaseCocycle::normalized(
            m.clone(),
            self.values.iter().map(|v| v.iter().map(|x| x * &f).collect()).collect(),
        ))
    }

    /// Smallest modulus that still represents the same values.
    pub fn reduced(&self) -> Self {
        let g = self.values.iter().flatten().fold(self.modulus.clone(), |acc, x| acc.gcd(x));
        PhaseCocycle::normalized(
            &self.modulus / &g,
            self.values.iter().map(|v| v.iter().map(|x| x / &g).collect()).collect(),
        )
    }

    pub fn plus(&self, other: &PhaseCocycle) -> Self {
        let m = self.modulus.lcm(&other.modulus);
        let a = self.with_modulus(&m).unwrap();
        let b = other.with_modulus(&m).unwrap();
        let values =
            a.values.iter().zip(&b.values).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect();
        PhaseCocycle::normalized(m, values).reduced()
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let values = self.values.iter().map(|v| v.iter().map(|x| x * c).collect()).collect();
        PhaseCocycle::normalized(self.modulus.clone(), values).reduced()
    }

    pub fn negated(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    /// Values as an element of `ℤ^{N·r}` (block `g` holds `v_g`).
    pub fn to_dense(&self) -> Vec<BigInt> {
        self.values.iter().flatten().cloned().collect()
    }

    /// `{ "modulus": M, "values": { label: [int] } }` with sorted keys.
    pub fn to_json(&self, group: &PointGroup) -> serde_json::Value {
        let mut values = serde_json::Map::new();
        for g in group.elements() {
            let v: Vec<serde_json::Value> = self.values[g].iter().map(|x| json_int(x)).collect();
            values.insert(group.label(g).to_string(), serde_json::Value::Array(v));
        }
        serde_json::json!({ "modulus": json_int(&self.modulus), "values": values })
    }
}

fn json_int(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

/// A gauge function `χ ∈ Hom(L, (1/M)ℤ/ℤ)`, `χ(k) = k·c / M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeFunction {
    pub modulus: BigInt,
    pub chi: Vec<BigInt>,
}

impl GaugeFunction {
    pub fn new(modulus: impl Into<BigInt>, chi: Vec<BigInt>) -> Self {
        let modulus = modulus.into();
        let chi = chi.into_iter().map(|x| x.mod_floor(&modulus)).collect();
        GaugeFunction { modulus, chi }
    }
}

/// `g ↦ χ∘(g − 1)`, i.e. `v_g = (R_g − I)·c`.
pub fn coboundary(chi: &GaugeFunction, group: &PointGroup) -> Result<PhaseCocycle> {
    if chi.chi.len() != group.rank() {
        return Err(Error::DimensionMismatch("gauge function has the wrong length".into()));
    }
    let id = IntMatrix::identity(group.rank());
    let values = group.reps().iter().map(|m| (m - &id).mul_vec(&chi.chi)).collect();
    Ok(PhaseCocycle::normalized(chi.modulus.clone(), values))
}

/// `⟨Φ, c⟩ = Σ_g Φ_g(k_g)` for a cycle `c = Σ k_g[g]`.
pub fn pair(group: &PointGroup, phi: &PhaseCocycle, c: &Chain1) -> Result<Phase> {
    if !is_cycle(group, c) {
        return Err(Error::NotACycle);
    }
    Ok(pair_unchecked(phi, c))
}

pub(crate) fn pair_unchecked(phi: &PhaseCocycle, c: &Chain1) -> Phase {
    let s: BigInt = c.terms().map(|(g, k)| k.iter().zip(phi.value(g)).map(|(a, b)| a * b).sum::<BigInt>()).sum();
    Phase::new(s, phi.modulus().clone())
}
