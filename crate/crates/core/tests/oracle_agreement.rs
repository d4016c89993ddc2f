use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qcohom::exactalg::{smith_normal_form, IntMatrix};
use qcohom::homology::h1_bar;
use qcohom::lattices::{cyclotomic_norm_one_minus_zeta, preset_lattice, preset_names, LatticeModule};
use qcohom::phases::{cohomology_classes, PhaseCocycle};
use qcohom_oracle as oracle;

fn table(l: &LatticeModule) -> oracle::GroupTable {
    let g = l.group();
    oracle::GroupTable {
        reps: g.reps().iter().map(|m| m.to_i64_rows().unwrap()).collect(),
        mul: g.elements().map(|a| g.elements().map(|b| g.mul(a, b)).collect()).collect(),
        gens: g.group().generators().to_vec(),
    }
}

fn small(l: &LatticeModule) -> bool {
    l.group().order() <= 8 && l.rank() <= 2
}

#[test]
fn cohomology_order_matches_enumeration() {
    let mut checked = 0;
    for name in preset_names() {
        let l = preset_lattice(name).unwrap();
        if !small(&l) {
            continue;
        }
        let count = oracle::cohomology_count_table(&table(&l)).unwrap();
        let coh = cohomology_classes(&l).order();
        let hom = h1_bar(&l).order();
        assert_eq!(coh, BigInt::from(count.order()), "{name}");
        assert_eq!(hom, BigInt::from(count.order()), "{name}");
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn every_enumerated_cocycle_is_accepted_and_classified() {
    for name in ["pg", "rectangular", "square_axis_mirror", "dihedral_4"] {
        let l = preset_lattice(name).unwrap();
        let g = l.group();
        let h = cohomology_classes(&l);
        let (m, all) = oracle::all_cocycles(&table(&l)).unwrap();
        let mut classes = std::collections::BTreeSet::new();
        for vals in all {
            let values = vals.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect();
            let phi = PhaseCocycle::new(g, m, values).unwrap();
            classes.insert(h.class_of(&phi).unwrap());
        }
        assert_eq!(BigInt::from(classes.len()), h.order(), "{name}");
    }
}

#[test]
fn matrix_closure_agrees_for_faithful_actions() {
    for name in ["pg", "rectangular", "square_axis_mirror", "square_diagonal_mirror", "centered_rectangular"] {
        let l = preset_lattice(name).unwrap();
        let g = l.group();
        let gens: Vec<oracle::Mat> = g.group().generators().iter().map(|&s| g.rep(s).to_i64_rows().unwrap()).collect();
        let count = oracle::cohomology_count(&gens).unwrap();
        assert_eq!(cohomology_classes(&l).order(), BigInt::from(count.order()), "{name}");
    }
}

#[test]
fn stacked_action_invariants_match_minors() {
    for name in preset_names() {
        let l = preset_lattice(name).unwrap();
        if !small(&l) {
            continue;
        }
        let id = IntMatrix::identity(l.rank());
        let mut a = IntMatrix::zeros(0, l.rank());
        for rep in l.group().reps() {
            a = a.vstack(&(rep - &id));
        }
        let ours: Vec<i64> = smith_normal_form(&a)
            .diagonal()
            .iter()
            .filter_map(|x| x.to_i64().filter(|&v| v != 0))
            .map(i64::abs)
            .collect();
        assert_eq!(ours, oracle::invariant_factors(&a.to_i64_rows().unwrap()), "{name}");
    }
}

#[test]
fn cyclotomic_norms_match_numeric_products() {
    for n in 2..=100u64 {
        assert_eq!(cyclotomic_norm_one_minus_zeta(n as usize), oracle::cyclotomic_norm_numeric(n), "N = {n}");
    }
}
