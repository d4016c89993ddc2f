//! Quasilattices with a point-group action: cyclotomic modules ℤ[ζ_N],
//! the classical 2D and 3D presets, duals and coinvariant quotients.
//!
//! A quasilattice is stored as ℤʳ with the group acting on row vectors.
//! For ℤ[ζ_N] the basis is the power basis `1, ζ, …, ζ^{φ(N)−1}`, the
//! rotation is the companion matrix of the cyclotomic polynomial and the
//! mirror is complex conjugation `ζ ↦ ζ⁻¹`.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{smith_normal_form, IntMatrix};
use crate::groups::{cyclic_group, dihedral_group, GroupDescriptor, PointGroup, SubgroupData};

/// `(N, mirror)` for lattices built by [`cyclotomic_lattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclotomicTag {
    pub order: usize,
    pub mirror: Option<MirrorChoice>,
}

/// Which reflection generates the mirror of a cyclotomic dihedral lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorChoice {
    /// `ζ ↦ ζ⁻¹`, the mirror along the real axis.
    Conjugation,
    /// `ζ ↦ −ζ⁻¹`, the conjugation followed by the half turn.
    NegatedConjugation,
}

/// The quasilattice `L ≅ ℤʳ` together with the group acting on it.
#[derive(Clone, Debug)]
pub struct LatticeModule {
    name: String,
    group: PointGroup,
    embedding: Option<Vec<Vec<f64>>>,
    cyclotomic: Option<CyclotomicTag>,
}

impl LatticeModule {
    /// `embedding`, when present, is an `r × d` matrix whose rows are the
    /// images of the basis vectors; it must have full column rank.
    pub fn new(name: impl Into<String>, group: PointGroup, embedding: Option<Vec<Vec<f64>>>) -> Result<Self> {
        if let Some(e) = &embedding {
            check_embedding(e, group.rank())?;
        }
        Ok(LatticeModule { name: name.into(), group, embedding, cyclotomic: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn group(&self) -> &PointGroup {
        &self.group
    }

    pub fn embedding(&self) -> Option<&[Vec<f64>]> {
        self.embedding.as_deref()
    }

    pub fn cyclotomic(&self) -> Option<CyclotomicTag> {
        self.cyclotomic
    }

    /// Position of `k` in Fourier space under the embedding.
    pub fn embed(&self, k: &[i64]) -> Result<Vec<f64>> {
        let e = self.embedding.as_ref().ok_or(Error::NoEmbedding)?;
        let d = e.first().map_or(0, Vec::len);
        let mut out = vec![0.0; d];
        for (ki, row) in k.iter().zip(e) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += *ki as f64 * x;
            }
        }
        Ok(out)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn check_embedding(e: &[Vec<f64>], rank: usize) -> Result<()> {
    let d = e.first().map_or(0, Vec::len);
    if e.len() != rank || e.iter().any(|row| row.len() != d) || d > rank.max(1) {
        return Err(Error::DimensionMismatch(format!("embedding must be {rank}×d with d ≤ {rank}")));
    }
    // Full column rank: Gaussian elimination on the transpose.
    let mut m: Vec<Vec<f64>> = (0..d).map(|j| e.iter().map(|row| row[j]).collect()).collect();
    let scale = e.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    let mut rank_found = 0;
    for col in 0..rank {
        let Some(p) = (rank_found..d).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())) else {
            break;
        };
        if m[p][col].abs() <= 1e-9 * scale {
            continue;
        }
        m.swap(rank_found, p);
        for i in rank_found + 1..d {
            let f = m[i][col] / m[rank_found][col];
            for j in col..rank {
                m[i][j] -= f * m[rank_found][j];
            }
        }
        rank_found += 1;
    }
    if rank_found < d {
        return Err(Error::DimensionMismatch("embedding does not have full column rank".into()));
    }
    Ok(())
}

/// Integer polynomial, coefficients in ascending degree.
pub type Polynomial = Vec<i64>;

fn poly_mul(a: &[i64], b: &[i64]) -> Polynomial {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic divisor.
fn poly_div_monic(a: &[i64], b: &[i64]) -> Polynomial {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// `F_N(x)`, from `xᴺ − 1 = Π_{d|N} F_d(x)`.
pub fn cyclotomic_polynomial(n: usize) -> Polynomial {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut p = vec![0; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        p = poly_div_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// Product of polynomials, exposed for the reconstruction identity.
pub fn polynomial_product(polys: &[Polynomial]) -> Polynomial {
    polys.iter().fold(vec![1], |acc, p| poly_mul(&acc, p))
}

/// `F_N(1)`: the prime `p` when `N = pᵉ`, otherwise 1.
pub fn cyclotomic_norm_one_minus_zeta(n: usize) -> i64 {
    cyclotomic_polynomial(n).iter().sum()
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Companion matrix: ones on the subdiagonal, last column `−a₀, …, −a_{n−1}`.
pub fn companion_matrix(f: &[i64]) -> IntMatrix {
    let n = f.len() - 1;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        if i + 1 < n {
            rows[i + 1][i] = 1;
        }
        rows[i][n - 1] = -f[i];
    }
    IntMatrix::from_rows_with_cols(&rows, n)
}

/// Power-basis coordinates of `ζᵉ` in ℤ[ζ_N].
fn zeta_power_coords(n: usize, e: usize) -> Vec<BigInt> {
    let c = companion_matrix(&cyclotomic_polynomial(n));
    let mut v = vec![BigInt::zero(); c.rows()];
    v[0] = BigInt::one();
    for _ in 0..e % n {
        v = c.mul_vec(&v);
    }
    v
}

/// Matrix of `ζ ↦ ζ⁻¹`: column `i` holds the coordinates of `ζ^{−i}`.
pub fn conjugation_matrix(n: usize) -> IntMatrix {
    let r = euler_phi(n);
    let cols: Vec<Vec<BigInt>> = (0..r).map(|i| zeta_power_coords(n, (n - i % n) % n)).collect();
    IntMatrix::from_columns(&cols, r)
}

/// ℤ[ζ_N] with the rotation group `C_N`, or `D_N` when a mirror is chosen.
pub fn cyclotomic_lattice(n: usize, mirror: Option<MirrorChoice>) -> Result<LatticeModule> {
    if n < 2 {
        return Err(Error::InvalidGroup("cyclotomic lattice needs N ≥ 2".into()));
    }
    let rot = companion_matrix(&cyclotomic_polynomial(n));
    let group = match mirror {
        None => cyclic_group(n, &rot)?,
        Some(choice) => {
            let j = conjugation_matrix(n);
            let m = match choice {
                MirrorChoice::Conjugation => j,
                MirrorChoice::NegatedConjugation => -&j,
            };
            dihedral_group(n, &rot, &m)?
        }
    };
    let name = match mirror {
        None => format!("cyclic_{n}"),
        Some(MirrorChoice::Conjugation) => format!("dihedral_{n}"),
        Some(MirrorChoice::NegatedConjugation) => format!("dihedral_{n}_negated"),
    };
    let embedding = cyclotomic_embedding(n);
    let mut l = LatticeModule::new(name, group, Some(embedding))?;
    l.cyclotomic = Some(CyclotomicTag { order: n, mirror });
    Ok(l)
}

/// Planar embedding with `pos(k·r)` the rotation of `pos(k)` by `2π/N`
/// and the conjugation mirror acting as reflection in the x-axis.
fn cyclotomic_embedding(n: usize) -> Vec<Vec<f64>> {
    let f = cyclotomic_polynomial(n);
    let r = f.len() - 1;
    let lambda = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
    // Eigenvector of the companion matrix for λ, by back substitution.
    let mut z = vec![Complex64::new(0.0, 0.0); r];
    z[r - 1] = Complex64::new(1.0, 0.0);
    for i in (1..r).rev() {
        z[i - 1] = lambda * z[i] + f[i] as f64;
    }
    let j = conjugation_matrix(n);
    let jz: Vec<Complex64> = (0..r).map(|a| (0..r).map(|b| z[b] * j[(a, b)].to_f64().unwrap()).sum()).collect();
    let pivot = (0..r).max_by(|&a, &b| z[a].norm().total_cmp(&z[b].norm())).unwrap();
    let c = jz[pivot] / z[pivot].conj();
    let alpha = Complex64::from_polar(1.0 / z[pivot].norm(), -c.arg() / 2.0);
    let z: Vec<Complex64> = z.iter().map(|x| alpha * x).collect();
    if r == 1 {
        return vec![vec![1.0]];
    }
    z.iter().map(|x| vec![x.re, x.im]).collect()
}

/// Matrix of multiplication by `multiplier(ζ)` on a cyclotomic lattice.
pub fn scale_automorphism(l: &LatticeModule, multiplier: &[i64]) -> Result<IntMatrix> {
    let tag = l.cyclotomic.ok_or(Error::NotCyclotomic)?;
    let c = companion_matrix(&cyclotomic_polynomial(tag.order));
    let r = c.rows();
    let mut acc = IntMatrix::zeros(r, r);
    let mut power = IntMatrix::identity(r);
    for &a in multiplier {
        acc = &acc + &power.map(|x| x * a);
        power = &power * &c;
    }
    let det = acc.determinant();
    if det.abs() != BigInt::one() {
        return Err(Error::NotAUnit { det: det.to_string() });
    }
    Ok(acc)
}

/// Contragredient action `g ↦ (rep(g)⁻¹)ᵀ`, as on `Hom(L, ℤ)`.
pub fn dual_action(l: &LatticeModule) -> LatticeModule {
    let g = l.group();
    let rep = g.reps().iter().map(|m| m.inverse().expect("point group matrices are unimodular").transpose()).collect();
    let group = g.with_rep(rep).expect("contragredient of a representation");
    let embedding = l.embedding.as_ref().and_then(|e| inverse_transpose_f64(e));
    LatticeModule { name: format!("{}^dual", l.name), group, embedding, cyclotomic: None }
}

fn inverse_transpose_f64(e: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = e.len();
    if e.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<f64>> = e.iter().map(|r| r.clone()).collect();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        inv.swap(col, p);
        let d = a[col][col];
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for i in (0..n).filter(|&i| i != col) {
            let f = a[i][col];
            for j in 0..n {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    Some((0..n).map(|i| (0..n).map(|j| inv[j][i]).collect()).collect())
}

/// The coinvariants `L_H = L / ⟨kh − k⟩` when they form an `F_p`-vector space.
#[derive(Clone, Debug)]
pub struct CoinvariantSpace {
    /// `None` when the space is zero.
    pub prime: Option<u64>,
    pub dimension: usize,
    /// `r × n` matrix; `k ↦ k·P mod p` is the projection onto `F_pⁿ`.
    pub projection: IntMatrix,
    /// Induced matrix (entries in `[0, p)`) for each element of `G`, acting on row vectors.
    pub induced: Vec<IntMatrix>,
}

impl CoinvariantSpace {
    pub fn project(&self, k: &[BigInt]) -> Vec<BigInt> {
        let p = BigInt::from(self.prime.unwrap_or(1));
        self.projection.vec_mul(k).into_iter().map(|x| x.mod_floor(&p)).collect()
    }
}

/// Coinvariants of `H` as an `F_p`-space with the induced `G`-action.
///
/// For `H` generated by the rotation of ℤ[ζ_N] this is `L/(1−ζ)L`, which is
/// `F_p` when `N = pᵉ` and zero otherwise.
pub fn coinvariants_mod(l: &LatticeModule, h: &SubgroupData) -> Result<CoinvariantSpace> {
    let g = l.group();
    let r = l.rank();
    let mut rel = IntMatrix::zeros(0, r);
    for x in h.members() {
        rel = rel.vstack(&(g.rep(x) - &IntMatrix::identity(r)));
    }
    // Row span of `rel`: with U·rel·V = D it is {y·V⁻¹ : yᵢ ∈ dᵢℤ}.
    let snf = smith_normal_form(&rel);
    let diag = snf.diagonal();
    let mut kept = Vec::new();
    let mut prime: Option<BigInt> = None;
    for i in 0..r {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_one() {
            continue;
        }
        match &prime {
            _ if d.is_zero() => return Err(Error::NotElementary),
            None => prime = Some(d.clone()),
            Some(p) if *p != d => return Err(Error::NotElementary),
            _ => {}
        }
        kept.push(i);
    }
    if let Some(p) = &prime {
        let small = p.to_u64().ok_or(Error::NotElementary)?;
        if !(2..=small).take_while(|q| q * q <= small).all(|q| small % q != 0) {
            return Err(Error::NotElementary);
        }
    }
    let v = &snf.v;
    let v_inv = v.inverse().expect("unimodular");
    let projection = v.select_columns(&kept);
    let p = prime.clone().unwrap_or_else(BigInt::one);
    let induced = g
        .reps()
        .iter()
        .map(|m| {
            let full = &(&v_inv * m) * v;
            full.select_rows(&kept).select_columns(&kept).map(|x| x.mod_floor(&p))
        })
        .collect();
    Ok(CoinvariantSpace { prime: prime.map(|p| p.to_u64().unwrap()), dimension: kept.len(), projection, induced })
}

/// On-disk preset: a group, a lattice action and an optional embedding.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresetDescriptor {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(flatten)]
    pub kind: PresetKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresetKind {
    Cyclotomic {
        order: usize,
        #[serde(default)]
        mirror: Option<MirrorChoice>,
    },
    /// The group acts on L by the descriptor's matrices.
    Explicit {
        group: GroupDescriptor,
        #[serde(default)]
        embedding: Option<Vec<Vec<f64>>>,
    },
    /// The descriptor gives the action on a direct-space lattice 𝒯;
    /// L = Hom(𝒯, ℤ) carries the contragredient action.
    DirectSpace {
        group: GroupDescriptor,
        #[serde(default)]
        embedding: Option<Vec<Vec<f64>>>,
    },
}

/// Lattice file for the command line: the action of each group generator
/// (defaults to the group's own matrices) and an optional embedding.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LatticeDescriptor {
    #[serde(default)]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(default)]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub embedding: Option<Vec<Vec<f64>>>,
}

impl LatticeDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(format!("line {}: {e}", e.line())))
    }

    pub fn build(&self, group: &PointGroup) -> Result<LatticeModule> {
        let group = match &self.action {
            None => group.clone(),
            Some(mats) => {
                for m in mats {
                    if m.len() != self.rank || m.iter().any(|row| row.len() != self.rank) {
                        return Err(Error::Descriptor(format!("action matrices must be {0}×{0}", self.rank)));
                    }
                }
                let images: Vec<IntMatrix> = mats.iter().map(|m| IntMatrix::from_rows(m)).collect();
                group.with_generator_images(&images)?
            }
        };
        if group.rank() != self.rank {
            return Err(Error::Descriptor(format!(
                "lattice rank {} but group acts on rank {}",
                self.rank,
                group.rank()
            )));
        }
        let name = self.name.clone().unwrap_or_else(|| format!("{}-lattice", group.name()));
        LatticeModule::new(name, group, self.embedding.clone())
    }
}

impl PresetDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(format!("line {}: {e}", e.line())))
    }

    pub fn build(&self) -> Result<LatticeModule> {
        let l = match &self.kind {
            PresetKind::Cyclotomic { order, mirror } => cyclotomic_lattice(*order, *mirror)?,
            PresetKind::Explicit { group, embedding } => {
                LatticeModule::new(self.name.clone(), group.build()?, embedding.clone())?
            }
            PresetKind::DirectSpace { group, embedding } => {
                let direct = LatticeModule::new(self.name.clone(), group.build()?, None)?;
                let mut l = dual_action(&direct);
                if let Some(e) = embedding {
                    check_embedding(e, l.rank())?;
                    l.embedding = Some(e.clone());
                }
                l
            }
        };
        let group = l.group().clone().with_name(self.name.clone());
        Ok(LatticeModule { name: self.name.clone(), group, ..l })
    }
}

macro_rules! builtin_presets {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../presets/", $name, ".json")))),*]
    };
}

/// Presets shipped with the crate, as `(name, json)`.
pub const BUILTIN_PRESETS: &[(&str, &str)] = builtin_presets![
    "pg",
    "rectangular",
    "centered_rectangular",
    "square_axis_mirror",
    "square_diagonal_mirror",
    "triangular_mirror_a",
    "triangular_mirror_b",
    "I212121",
    "I213",
    "c3xc3",
    "cyclic_2",
    "cyclic_3",
    "cyclic_4",
    "cyclic_5",
    "cyclic_6",
    "cyclic_7",
    "cyclic_8",
    "cyclic_12",
    "cyclic_16",
    "dihedral_2",
    "dihedral_3",
    "dihedral_4",
    "dihedral_5",
    "dihedral_6",
    "dihedral_7",
    "dihedral_8",
    "dihedral_12",
    "dihedral_16",
];

/// Environment variable naming a directory of `<name>.json` presets that
/// take precedence over the built-in ones.
pub const PRESET_DIR_ENV: &str = "QCOHOM_PRESET_DIR";

pub fn preset_names() -> Vec<&'static str> {
    BUILTIN_PRESETS.iter().map(|(n, _)| *n).collect()
}

/// Loads a preset by name.
pub fn preset_lattice(name: &str) -> Result<LatticeModule> {
    preset_descriptor(name)?.build()
}

pub fn preset_descriptor(name: &str) -> Result<PresetDescriptor> {
    if let Some(dir) = std::env::var_os(PRESET_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            return PresetDescriptor::from_json(&text)
                .map_err(|e| Error::Descriptor(format!("{}: {e}", path.display())));
        }
    }
    let (_, text) =
        BUILTIN_PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    PresetDescriptor::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn cyclotomic_goldens() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_norm_one_minus_zeta(9), 3);
        assert_eq!(cyclotomic_norm_one_minus_zeta(12), 1);
        assert_eq!(cyclotomic_norm_one_minus_zeta(2), 2);
    }

    #[test]
    fn reconstruction_identity() {
        for n in 1..=60usize {
            let parts: Vec<Polynomial> = (1..=n).filter(|d| n % d == 0).map(cyclotomic_polynomial).collect();
            let mut expected = vec![0; n + 1];
            expected[0] = -1;
            expected[n] = 1;
            assert_eq!(polynomial_product(&parts), expected, "N = {n}");
        }
    }

    #[test]
    fn cyclotomic_lattice_shapes() {
        let l4 = cyclotomic_lattice(4, None).unwrap();
        assert_eq!(l4.rank(), 2);
        assert_eq!(l4.group().rep(1), &m(&[&[0, -1], &[1, 0]]));
        let l2 = cyclotomic_lattice(2, None).unwrap();
        assert_eq!(l2.group().rep(1), &m(&[&[-1]]));
        let d5 = cyclotomic_lattice(5, Some(MirrorChoice::Conjugation)).unwrap();
        assert_eq!((d5.rank(), d5.group().order()), (4, 10));
    }

    #[test]
    fn embedding_is_equivariant() {
        for n in [3usize, 4, 5, 8, 12] {
            let l = cyclotomic_lattice(n, Some(MirrorChoice::Conjugation)).unwrap();
            let g = l.group();
            let (_, r, mi) = g.dihedral_pair().unwrap();
            let theta = std::f64::consts::TAU / n as f64;
            for i in 0..l.rank() {
                let mut k = vec![0i64; l.rank()];
                k[i] = 1;
                let p = l.embed(&k).unwrap();
                let kr: Vec<i64> =
                    g.rep(r).vec_mul(&crate::exactalg::big_vec(&k)).iter().map(|x| x.to_i64().unwrap()).collect();
                let km: Vec<i64> =
                    g.rep(mi).vec_mul(&crate::exactalg::big_vec(&k)).iter().map(|x| x.to_i64().unwrap()).collect();
                let pr = l.embed(&kr).unwrap();
                let pm = l.embed(&km).unwrap();
                let rot = [p[0] * theta.cos() - p[1] * theta.sin(), p[0] * theta.sin() + p[1] * theta.cos()];
                assert!((pr[0] - rot[0]).abs() < 1e-9 && (pr[1] - rot[1]).abs() < 1e-9, "N={n}");
                assert!((pm[0] - p[0]).abs() < 1e-9 && (pm[1] + p[1]).abs() < 1e-9, "N={n}");
            }
        }
    }

    #[test]
    fn scale_automorphisms() {
        let l5 = cyclotomic_lattice(5, None).unwrap();
        let c = l5.group().rep(1).clone();
        assert!(scale_automorphism(&l5, &[1]).unwrap().is_identity());
        assert_eq!(scale_automorphism(&l5, &[0, 1]).unwrap(), c);
        let f = scale_automorphism(&l5, &[0, 1, 0, 0, 1]).unwrap();
        assert!(f.is_unimodular());
        assert_eq!(&f * &c, &c * &f);
        assert!(matches!(scale_automorphism(&l5, &[2]), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn dual_goldens() {
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(shear.inverse().unwrap().transpose(), m(&[&[1, 0], &[-1, 1]]));
        let sq = preset_lattice("square_axis_mirror").unwrap();
        let d = dual_action(&sq);
        assert_eq!(d.group().reps(), sq.group().reps());
        let c3 = cyclotomic_lattice(3, None).unwrap();
        let dd = dual_action(&dual_action(&c3));
        assert_eq!(dd.group().reps(), c3.group().reps());
        assert_eq!(dual_action(&c3).group().rep(1), &c3.group().rep(1).inverse().unwrap().transpose());
    }

    #[test]
    fn coinvariant_dimensions() {
        let rot_subgroup = |l: &LatticeModule| {
            let g = l.group();
            SubgroupData::new(g, &g.group().generated_subgroup(&[1])).unwrap()
        };
        let l8 = cyclotomic_lattice(8, None).unwrap();
        let s = coinvariants_mod(&l8, &rot_subgroup(&l8)).unwrap();
        assert_eq!((s.prime, s.dimension), (Some(2), 1));
        let l12 = cyclotomic_lattice(12, None).unwrap();
        assert_eq!(coinvariants_mod(&l12, &rot_subgroup(&l12)).unwrap().dimension, 0);
        let half_turn = cyclic_group(2, &m(&[&[-1, 0], &[0, -1]])).unwrap();
        let l = LatticeModule::new("Z2", half_turn, None).unwrap();
        let s = coinvariants_mod(&l, &rot_subgroup(&l)).unwrap();
        assert_eq!((s.prime, s.dimension), (Some(2), 2));
    }

    #[test]
    fn every_builtin_preset_loads() {
        for name in preset_names() {
            let l = preset_lattice(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(l.name(), name);
        }
        assert_eq!(preset_lattice("I212121").unwrap().group().order(), 4);
        assert_eq!(preset_lattice("I213").unwrap().group().order(), 12);
        assert!(matches!(preset_lattice("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn rejects_degenerate_embedding() {
        let g = cyclic_group(1, &IntMatrix::identity(2)).unwrap();
        assert!(LatticeModule::new("x", g.clone(), Some(vec![vec![1.0, 2.0], vec![2.0, 4.0]])).is_err());
        assert!(LatticeModule::new("x", g, Some(vec![vec![1.0], vec![0.5]])).is_ok());
    }
}
