use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use qcohom::groups::SubgroupData;
use qcohom::homology::{coinvariant_quotient_map, h1_bar};
use qcohom::lattices::{preset_lattice, LatticeModule};
use qcohom::phases::{cohomology_classes, km_identity_check, pair, reduce_to_torsion, KmCheck, PhaseCocycle, TwoChain};

use crate::error::CliResult;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub passed: bool,
    pub check: String,
    pub subject: String,
    pub detail: String,
}

impl CheckLine {
    fn new(passed: bool, check: &str, subject: &str, detail: impl Into<String>) -> Self {
        CheckLine { passed, check: check.into(), subject: subject.into(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelfcheckOptions {
    /// Replaces `#G` as the target modulus in the torsion check.
    pub modulus: Option<u64>,
    pub flip_pairing: bool,
}

/// Groups small enough for the enumeration oracle.
pub fn oracle_feasible(l: &LatticeModule) -> bool {
    l.group().order() <= 8 && l.rank() <= 2
}

pub fn oracle_table(l: &LatticeModule) -> qcohom_oracle::GroupTable {
    let g = l.group();
    qcohom_oracle::GroupTable {
        reps: g.reps().iter().map(|m| m.to_i64_rows().expect("small entries")).collect(),
        mul: g.elements().map(|a| g.elements().map(|b| g.mul(a, b)).collect()).collect(),
        gens: g.group().generators().to_vec(),
    }
}

/// `|H¹(G, L̂)| = |H₁(G, L)|`, and both equal the enumerated count when feasible.
pub fn duality_check(l: &LatticeModule) -> CheckLine {
    let coh = cohomology_classes(l).order();
    let hom = h1_bar(l).order();
    let mut detail = format!("|H^1| = {coh}, |H_1| = {hom}");
    let mut ok = coh == hom;
    if oracle_feasible(l) {
        match qcohom_oracle::cohomology_count_table(&oracle_table(l)) {
            Some(c) => {
                detail.push_str(&format!(", enumerated {}", c.order()));
                ok &= BigInt::from(c.order()) == coh;
            }
            None => {
                detail.push_str(", enumeration failed");
                ok = false;
            }
        }
    }
    CheckLine::new(ok, "duality", l.name(), detail)
}

/// `H₁(C_N, L) → H₁(D_N, L) → H₁(D₁, L_H)` is exact in the middle; when the
/// first group vanishes the second map is an isomorphism.
pub fn exactness_check(l: &LatticeModule) -> Option<CheckLine> {
    let g = l.group();
    let (n, r, _) = g.dihedral_pair()?;
    if n < 2 {
        return None;
    }
    let line = (|| -> qcohom::Result<CheckLine> {
        let h = SubgroupData::new(g, &g.group().generated_subgroup(&[r]))?;
        let map = coinvariant_quotient_map(l, &h)?;
        let exact = map.is_exact_in_middle();
        let first_trivial = map.subgroup_homology.is_trivial();
        let iso = !first_trivial || map.is_isomorphism();
        Ok(CheckLine::new(
            exact && iso,
            "exactness",
            l.name(),
            format!(
                "exact in middle: {exact}, H_1(C_N) trivial: {first_trivial}, quotient map isomorphism: {}",
                map.is_isomorphism()
            ),
        ))
    })();
    Some(line.unwrap_or_else(|e| CheckLine::new(false, "exactness", l.name(), e.to_string())))
}

/// Generator classes have modulus dividing `#G`; rescaling and reducing to
/// the target modulus keeps every pairing with the generator cycles.
pub fn torsion_check(l: &LatticeModule, override_modulus: Option<u64>) -> CheckLine {
    let g = l.group();
    let h = cohomology_classes(l);
    let h1 = h1_bar(l);
    let order = BigInt::from(g.order());
    let target = override_modulus.map(BigInt::from).unwrap_or_else(|| order.clone());
    for (i, phi) in h.generators().iter().enumerate() {
        if !(&order % phi.modulus()).is_zero() {
            return CheckLine::new(false, "torsion", l.name(), format!("class {i} has modulus {}", phi.modulus()));
        }
        let rescaled = phi.with_modulus(&(phi.modulus() * BigInt::from(6))).expect("multiple of the modulus");
        let reduced = match reduce_to_torsion(g, &rescaled, &target) {
            Ok(x) => x,
            Err(e) => return CheckLine::new(false, "torsion", l.name(), format!("class {i}: {e}")),
        };
        for z in h1.generators() {
            let before = pair(g, phi, z).expect("generator is a cycle");
            let after = pair(g, &reduced, z).expect("generator is a cycle");
            if before != after {
                return CheckLine::new(
                    false,
                    "torsion",
                    l.name(),
                    format!("class {i}: pairing {before} became {after}"),
                );
            }
        }
    }
    CheckLine::new(
        true,
        "torsion",
        l.name(),
        format!("{} generator(s) reduced to modulus {target}", h.generators().len()),
    )
}

/// One evaluation of the cap/cup identity.
#[derive(Clone, Debug)]
pub struct KmConfig {
    pub preset: &'static str,
    pub class: usize,
    pub q: Vec<BigRational>,
    pub g: String,
    pub h: String,
}

impl KmConfig {
    pub fn describe(&self) -> String {
        let q: Vec<String> = self.q.iter().map(ToString::to_string).collect();
        format!(
            "{} class {} q=({}) [{}|{}]-[{}|{}]",
            self.preset,
            self.class,
            q.join(","),
            self.g,
            self.h,
            self.h,
            self.g
        )
    }
}

const KM_PRESETS: &[(&str, i64)] =
    &[("pg", 2), ("square_axis_mirror", 2), ("rectangular", 2), ("I212121", 4), ("I213", 2), ("c3xc3", 3)];

/// Per preset: up to `per_preset` configurations with a nonzero pairing and
/// one with the zero class, in a fixed order.
pub fn km_configurations(per_preset: usize) -> Vec<KmConfig> {
    let mut out = Vec::new();
    for &(preset, d) in KM_PRESETS {
        let l = preset_lattice(preset).expect("built-in preset");
        let g = l.group();
        let h = cohomology_classes(&l);
        let mut classes: Vec<PhaseCocycle> = h.generators().to_vec();
        classes.push(PhaseCocycle::zero(g));
        let zero_index = classes.len() - 1;
        let r = l.rank();
        let points = (d as u64).pow(r as u32);
        let mut nonzero = 0;
        let mut have_zero = false;
        'search: for a in g.elements().skip(1) {
            for b in g.elements().skip(a) {
                if !g.group().commute(a, b) {
                    continue;
                }
                for idx in 0..points {
                    let mut rest = idx;
                    let q: Vec<BigRational> = (0..r)
                        .map(|_| {
                            let x = (rest % d as u64) as i64;
                            rest /= d as u64;
                            BigRational::new(x.into(), d.into())
                        })
                        .collect();
                    for (ci, phi) in classes.iter().enumerate() {
                        let Ok(k) = km_identity_check(g, phi, &q, &TwoChain::commutator(a, b), false) else { continue };
                        let take = if ci == zero_index { !have_zero } else { !k.lhs.is_zero() && nonzero < per_preset };
                        if take {
                            if ci == zero_index {
                                have_zero = true;
                            } else {
                                nonzero += 1;
                            }
                            out.push(KmConfig {
                                preset,
                                class: ci,
                                q: q.clone(),
                                g: g.label(a).to_string(),
                                h: g.label(b).to_string(),
                            });
                        }
                        if have_zero && nonzero >= per_preset {
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn run_km(config: &KmConfig, flip_pairing: bool) -> qcohom::Result<KmCheck> {
    let l = preset_lattice(config.preset)?;
    let g = l.group();
    let h = cohomology_classes(&l);
    let phi = h.generators().get(config.class).cloned().unwrap_or_else(|| PhaseCocycle::zero(g));
    let a = g.group().find_label(&config.g).expect("label from the same preset");
    let b = g.group().find_label(&config.h).expect("label from the same preset");
    km_identity_check(g, &phi, &config.q, &TwoChain::commutator(a, b), flip_pairing)
}

/// The sign is fixed at +1: a configuration passes only on exact equality.
pub fn km_check(configs: &[KmConfig], flip_pairing: bool) -> Vec<CheckLine> {
    configs
        .iter()
        .map(|c| match run_km(c, flip_pairing) {
            Ok(k) => CheckLine::new(k.equal, "km-identity", &c.describe(), format!("lhs {} rhs {}", k.lhs, k.rhs)),
            Err(e) => CheckLine::new(false, "km-identity", &c.describe(), e.to_string()),
        })
        .collect()
}

pub fn run_selfcheck(lattices: &[LatticeModule], opts: &SelfcheckOptions) -> CliResult<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for l in lattices {
        lines.push(duality_check(l));
    }
    for l in lattices {
        lines.extend(exactness_check(l));
    }
    for l in lattices {
        lines.push(torsion_check(l, opts.modulus));
    }
    lines.extend(km_check(&km_configurations(3), opts.flip_pairing));
    Ok(lines)
}
