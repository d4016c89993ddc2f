use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qcohom::exactalg::{f2_jordan_counts, F2Matrix};
use qcohom::groups::{GroupDescriptor, SubgroupData};
use qcohom::homology::h1_bar;
use qcohom::lattices::{coinvariants_mod, preset_lattice, preset_names, LatticeDescriptor, LatticeModule};
use qcohom::phases::{
    cohomology_classes, expressibility, extinction_set, pair, CohomologyGroup, Expressibility, ExpressibilitySearch,
    Phase, PhaseCocycle,
};

use crate::args::Common;
use crate::error::{CliError, CliResult};

/// Resolves the lattices named by `--preset` or `--group/--lattice`.
///
/// With neither given, `default_all` selects every preset; otherwise it is an
/// input error.
pub fn load_lattices(common: &Common, default_all: bool) -> CliResult<Vec<LatticeModule>> {
    if let (Some(gpath), Some(lpath)) = (&common.group, &common.lattice) {
        let read = |p: &std::path::Path| {
            std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        };
        let gd = GroupDescriptor::from_json(&read(gpath)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", gpath.display())))?;
        let ld = LatticeDescriptor::from_json(&read(lpath)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", lpath.display())))?;
        let group = gd.build().map_err(|e| CliError::Input(format!("{}: {e}", gpath.display())))?;
        let l = ld.build(&group).map_err(|e| CliError::Input(format!("{}: {e}", lpath.display())))?;
        return Ok(vec![l]);
    }
    let names: Vec<String> = if common.presets.is_empty() {
        if !default_all {
            return Err(CliError::Input("give --preset NAME or --group FILE --lattice FILE".into()));
        }
        preset_names().into_iter().map(String::from).collect()
    } else {
        common.presets.clone()
    };
    names.iter().map(|n| preset_lattice(n).map_err(CliError::from)).collect()
}

pub fn single_lattice(common: &Common) -> CliResult<LatticeModule> {
    let mut ls = load_lattices(common, false)?;
    if ls.len() != 1 {
        return Err(CliError::Input("this command takes exactly one lattice".into()));
    }
    Ok(ls.remove(0))
}

/// One classified `(G, L)` pair.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryTypeRecord {
    pub group: String,
    pub order: usize,
    pub lattice: String,
    pub rank: usize,
    pub factors: Vec<u64>,
    /// Per generator class: `Φ_s(e_i)` on each group generator `s`.
    pub fingerprints: Vec<String>,
    pub expressibility: Vec<Expressibility>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dihedral_2d: Option<Vec<u64>>,
}

pub fn fingerprint(l: &LatticeModule, phi: &PhaseCocycle) -> String {
    let g = l.group();
    let basis: Vec<Vec<BigInt>> =
        (0..l.rank()).map(|i| (0..l.rank()).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    g.group()
        .generators()
        .iter()
        .map(|&s| {
            let vals: Vec<String> = basis.iter().map(|e| phi.eval(s, e).to_string()).collect();
            format!("{}:[{}]", g.label(s), vals.join(" "))
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// `H¹(D_N, L̂)` from the mirror's Jordan blocks on `L/(1−ζ)L`, for a
/// dihedral group acting in the plane. `None` when the shortcut does not apply.
pub fn dihedral_2d_factors(l: &LatticeModule) -> CliResult<Option<Vec<u64>>> {
    let planar = l.cyclotomic().is_some() || l.embedding().is_some_and(|e| e.first().is_some_and(|r| r.len() == 2));
    let g = l.group();
    let Some((n, r, m)) = g.dihedral_pair() else { return Ok(None) };
    if !planar || n < 2 {
        return Ok(None);
    }
    if !n.is_power_of_two() {
        return Ok(Some(Vec::new()));
    }
    let h = SubgroupData::new(g, &g.group().generated_subgroup(&[r]))?;
    let space = coinvariants_mod(l, &h)?;
    if space.dimension == 0 {
        return Ok(Some(Vec::new()));
    }
    if space.prime != Some(2) {
        return Err(CliError::Internal(format!("coinvariants are over F_{:?}, expected F_2", space.prime)));
    }
    let rows = space.induced[m].to_i64_rows().expect("entries are 0 or 1");
    let (j1, _) = f2_jordan_counts(&F2Matrix::from_rows(&rows))?;
    Ok(Some(vec![2; j1]))
}

pub fn classify(l: &LatticeModule, dihedral_2d: bool) -> CliResult<SymmetryTypeRecord> {
    let h = cohomology_classes(l);
    let h1 = h1_bar(l);
    if h1.factors_u64() != h.factors_u64() {
        return Err(CliError::Internal(format!(
            "{}: H¹ factors {:?} but H₁ factors {:?}",
            l.name(),
            h.factors_u64(),
            h1.factors_u64()
        )));
    }
    let fast = if dihedral_2d { dihedral_2d_factors(l)? } else { None };
    if let Some(f) = &fast {
        if *f != h.factors_u64() {
            return Err(CliError::Internal(format!(
                "{}: dihedral shortcut gives {f:?}, general path {:?}",
                l.name(),
                h.factors_u64()
            )));
        }
    }
    Ok(SymmetryTypeRecord {
        group: l.group().name().to_string(),
        order: l.group().order(),
        lattice: l.name().to_string(),
        rank: l.rank(),
        factors: h.factors_u64(),
        fingerprints: h.generators().iter().map(|phi| fingerprint(l, phi)).collect(),
        expressibility: expressibility(&h1, &ExpressibilitySearch::default()),
        dihedral_2d: fast,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingRow {
    pub cycle: usize,
    pub class: usize,
    pub value: Phase,
}

fn select_class(h: &CohomologyGroup, index: Option<usize>) -> CliResult<(usize, PhaseCocycle)> {
    let classes = h.classes();
    let i = index.unwrap_or(if classes.len() > 1 { 1 } else { 0 });
    classes
        .into_iter()
        .nth(i)
        .map(|(_, phi)| (i, phi))
        .ok_or_else(|| CliError::Input(format!("class index {i} out of range (group has {} classes)", h.order())))
}

/// Rows ordered by class, then cycle. Fails if some nonzero class pairs to
/// zero with every generator cycle.
pub fn invariants(l: &LatticeModule, class: Option<usize>) -> CliResult<Vec<PairingRow>> {
    let h = cohomology_classes(l);
    let h1 = h1_bar(l);
    let chosen: Vec<(usize, PhaseCocycle)> = match class {
        Some(_) => vec![select_class(&h, class)?],
        None => h.classes().into_iter().map(|(_, phi)| phi).enumerate().collect(),
    };
    let mut rows = Vec::new();
    for (ci, phi) in chosen {
        let mut column = Vec::new();
        for (zi, z) in h1.generators().iter().enumerate() {
            column.push(PairingRow { cycle: zi, class: ci, value: pair(l.group(), &phi, z)? });
        }
        let zero_class = h.is_coboundary(&phi)?;
        if !zero_class && column.iter().all(|r| r.value.is_zero()) {
            return Err(CliError::Internal(format!("class {ci} pairs to zero with every cycle")));
        }
        rows.extend(column);
    }
    Ok(rows)
}

/// Lattice vectors with `|kᵢ| ≤ kmax`, in lexicographic order.
pub fn box_vectors(rank: usize, kmax: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (-kmax..=kmax).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtinctionRow {
    pub k: Vec<i64>,
    pub extinct: bool,
    pub witness: Option<String>,
}

pub fn extinctions(l: &LatticeModule, class: Option<usize>, kmax: i64) -> CliResult<Vec<ExtinctionRow>> {
    if kmax < 0 {
        return Err(CliError::Input("--kmax must be nonnegative".into()));
    }
    let (_, phi) = select_class(&cohomology_classes(l), class)?;
    let ks = box_vectors(l.rank(), kmax);
    let big: Vec<Vec<BigInt>> = ks.iter().map(|k| k.iter().map(|&x| BigInt::from(x)).collect()).collect();
    Ok(extinction_set(l.group(), &phi, &big)
        .into_iter()
        .zip(ks)
        .map(|(e, k)| ExtinctionRow {
            k,
            extinct: e.extinct,
            witness: e.witness.map(|w| l.group().label(w).to_string()),
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffractionSpot {
    pub k: Vec<i64>,
    pub position: Vec<f64>,
    pub intensity: f64,
    /// Phase of `ρ̂(k)` relative to the orbit representative; absent when extinct.
    pub phase: Option<Phase>,
    pub extinct: bool,
    pub witness: Option<String>,
}

/// One amplitude per orbit (drawn in order of the lexicographically least
/// orbit member), phases from `ρ̂(k·g) = e^{2πiΦ_g(k)}·ρ̂(k)`.
pub fn diffract(l: &LatticeModule, class: Option<usize>, kmax: i64, seed: u64) -> CliResult<Vec<DiffractionSpot>> {
    if l.embedding().is_none() {
        return Err(qcohom::Error::NoEmbedding.into());
    }
    let ext = extinctions(l, class, kmax)?;
    let (_, phi) = select_class(&cohomology_classes(l), class)?;
    let g = l.group();
    let to_big = |k: &[i64]| k.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    // For each box vector: (orbit representative, element carrying it to k).
    let mut rep_of: Vec<(Vec<BigInt>, usize)> = Vec::with_capacity(ext.len());
    for row in &ext {
        let k = to_big(&row.k);
        let orbit: Vec<(Vec<BigInt>, usize)> = g.elements().map(|x| (g.rep(x).vec_mul(&k), x)).collect();
        let (rep, x) = orbit.into_iter().min().expect("orbit is nonempty");
        // k = rep·x⁻¹.
        rep_of.push((rep, g.inverse(x)));
    }
    let mut amplitude: BTreeMap<Vec<BigInt>, f64> = rep_of.iter().map(|(r, _)| (r.clone(), 0.0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for a in amplitude.values_mut() {
        *a = rng.gen_range(0.1..1.0);
    }
    ext.into_iter()
        .zip(rep_of)
        .map(|(row, (rep, x))| {
            let position = l.embed(&row.k)?;
            let (intensity, phase) = if row.extinct {
                (0.0, None)
            } else {
                let a = amplitude[&rep];
                (a * a, Some(phi.eval(x, &rep)))
            };
            Ok(DiffractionSpot { k: row.k, position, intensity, phase, extinct: row.extinct, witness: row.witness })
        })
        .collect()
}
