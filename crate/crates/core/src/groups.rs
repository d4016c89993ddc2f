//! Finite point groups acting on ℤʳ by integer matrices.
//!
//! Lattice vectors are row vectors and group elements act on the right,
//! `k ↦ k·g`, so the representation satisfies `rep(g·h) = rep(g)·rep(h)`.
//! Every other module inherits this convention.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// Default bound on the closure computed by [`from_generators`].
pub const DEFAULT_ELEMENT_CAP: usize = 1000;

/// Groups up to this order get the exhaustive associativity check at construction.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 200;

/// Abstract finite group given by its multiplication table.
///
/// Element 0 is the identity. Labels are shortlex words in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table: identity at index 0, inverses,
    /// closure, and (for moderate orders) associativity on all triples.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        Self::from_table_checked(labels, table, generators, true)
    }

    fn from_table_checked(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        check_associativity: bool,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table shape".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if table[0][a] != a || row[0] != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| table[a][b] == 0) else {
                return Err(Error::InvalidGroup(format!("{} has no inverse", labels[a])));
            };
            if table[b][a] != 0 {
                return Err(Error::InvalidGroup(format!("{} has no two-sided inverse", labels[a])));
            }
            inverses[a] = b;
        }
        if check_associativity && n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails on ({}, {}, {})",
                                labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::InvalidGroup("generator out of range".into()));
        }
        Ok(FiniteGroup { labels, table, inverses, generators })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in map {
            if x >= n || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }
}

/// Finite group with a right action on ℤʳ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGroup {
    name: String,
    group: FiniteGroup,
    rank: usize,
    rep: Vec<IntMatrix>,
}

impl PointGroup {
    /// Checks that every matrix is `rank × rank` and unimodular and that
    /// `rep(g·h) = rep(g)·rep(h)` on every pair.
    pub fn new(name: impl Into<String>, group: FiniteGroup, rank: usize, rep: Vec<IntMatrix>) -> Result<Self> {
        if rep.len() != group.order() {
            return Err(Error::InvalidGroup("one matrix per element required".into()));
        }
        for (g, m) in rep.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch(format!("matrix for {} is not {rank}×{rank}", group.label(g))));
            }
            if !m.is_unimodular() {
                return Err(Error::InvalidGroup(format!("matrix for {} is not invertible over ℤ", group.label(g))));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                if rep[group.mul(a, b)] != &rep[a] * &rep[b] {
                    return Err(Error::RelationViolation(format!(
                        "rep({}·{}) ≠ rep({})·rep({})",
                        group.label(a),
                        group.label(b),
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        Ok(PointGroup { name: name.into(), group, rank, rep })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rep(&self, g: usize) -> &IntMatrix {
        &self.rep[g]
    }

    pub fn reps(&self) -> &[IntMatrix] {
        &self.rep
    }

    pub fn label(&self, g: usize) -> &str {
        self.group.label(g)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.group.elements()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.group.inverse(a)
    }

    /// Element whose matrix equals `m`, if any.
    pub fn find_matrix(&self, m: &IntMatrix) -> Option<usize> {
        self.rep.iter().position(|r| r == m)
    }

    /// The same abstract group acting through different matrices.
    pub fn with_rep(&self, rep: Vec<IntMatrix>) -> Result<PointGroup> {
        let rank = rep.first().map_or(self.rank, IntMatrix::rows);
        PointGroup::new(self.name.clone(), self.group.clone(), rank, rep)
    }

    /// Action defined by new matrices for the generators, extended along the table.
    pub fn with_generator_images(&self, images: &[IntMatrix]) -> Result<PointGroup> {
        let gens = self.group.generators();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let rank = images.first().map_or(self.rank, IntMatrix::rows);
        let mut rep: Vec<Option<IntMatrix>> = vec![None; self.order()];
        rep[0] = Some(IntMatrix::identity(rank));
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&s, m) in gens.iter().zip(images) {
                let y = self.mul(x, s);
                if rep[y].is_none() {
                    rep[y] = Some(rep[x].as_ref().unwrap() * m);
                    queue.push_back(y);
                }
            }
        }
        let rep = rep
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::InvalidGroup("generators do not generate the group".into())))
            .collect::<Result<Vec<_>>>()?;
        self.with_rep(rep)
    }

    /// `(N, r, m)` when the generators are labelled `r`, `m` and satisfy the
    /// dihedral relations with `#G = 2N`. For `N = 1` only `m` is required.
    pub fn dihedral_pair(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        let m = g.find_label("m")?;
        let r = g.find_label("r").unwrap_or(0);
        let n = g.element_order(r);
        if g.element_order(m) != 2 || 2 * n != g.order() {
            return None;
        }
        let rot = g.generated_subgroup(&[r]);
        if rot.contains(&m) || g.mul(g.mul(m, r), m) != g.inverse(r) {
            return None;
        }
        Some((n, r, m))
    }

    /// Restriction to a subgroup, with the embedding of its elements into `self`.
    pub fn restrict(&self, members: &[usize]) -> Result<(PointGroup, Vec<usize>)> {
        let sub = SubgroupData::new(self, members)?;
        Ok(sub.as_point_group())
    }
}

/// Shortlex enumeration of the closure of `gens` under right multiplication.
fn shortlex_closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<(Vec<T>, Vec<Vec<usize>>)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut next = 0;
    while next < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = mul(&elements[next], g);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::NotFinite { cap });
            }
            let mut w = words[next].clone();
            w.push(s);
            index.insert(y.clone(), elements.len());
            elements.push(y);
            words.push(w);
        }
        next += 1;
    }
    Ok((elements, words))
}

/// Renders a word like `r^2*m`; the empty word is `e`.
pub fn word_label(word: &[usize], gen_labels: &[String]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let run = j - i;
        let l = &gen_labels[word[i]];
        parts.push(if run == 1 { l.clone() } else { format!("{l}^{run}") });
        i = j;
    }
    parts.join("*")
}

fn table_from_elements<T, F>(elements: &[T], mul: F) -> Vec<Vec<usize>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    elements.iter().map(|a| elements.iter().map(|b| index[&mul(a, b)]).collect()).collect()
}

fn matrix_order(m: &IntMatrix, limit: usize) -> Option<usize> {
    let id = IntMatrix::identity(m.rows());
    let mut p = m.clone();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// Cyclic group of order `n` generated by `generator` (label `r`).
pub fn cyclic_group(n: usize, generator: &IntMatrix) -> Result<PointGroup> {
    if n == 0 || !generator.is_square() {
        return Err(Error::WrongOrder { expected: n, actual: None });
    }
    let order = matrix_order(generator, n.max(1));
    if order != Some(n) {
        return Err(Error::WrongOrder { expected: n, actual: matrix_order(generator, 1000) });
    }
    let labels: Vec<String> = (0..n).map(|k| word_label(&vec![0; k], &["r".to_string()])).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    let group = FiniteGroup::from_table(labels, table, gens)?;
    let rep = (0..n).map(|k| generator.pow(k as u32)).collect();
    PointGroup::new(format!("C{n}"), group, generator.rows(), rep)
}

/// Dihedral group `⟨r, m⟩` of order `2n`, with the abstract dihedral table.
///
/// The matrices need not give a faithful action; they only have to satisfy
/// the defining relations.
pub fn dihedral_group(n: usize, rotation: &IntMatrix, mirror: &IntMatrix) -> Result<PointGroup> {
    if n == 0 {
        return Err(Error::RelationViolation("rotation order must be positive".into()));
    }
    if !rotation.is_square() || rotation.rows() != mirror.rows() || !mirror.is_square() {
        return Err(Error::DimensionMismatch("rotation and mirror must be square of equal size".into()));
    }
    let id = IntMatrix::identity(rotation.rows());
    if rotation.pow(n as u32) != id {
        return Err(Error::RelationViolation(format!("rotation^{n} = I")));
    }
    if matrix_order(rotation, n) != Some(n) {
        return Err(Error::RelationViolation(format!("rotation has order exactly {n}")));
    }
    if &(mirror * mirror) != &id {
        return Err(Error::RelationViolation("mirror^2 = I".into()));
    }
    let rot_inv = rotation.pow(n as u32 - 1);
    if &(&(mirror * rotation) * mirror) != &rot_inv {
        return Err(Error::RelationViolation("mirror*rotation*mirror = rotation^-1".into()));
    }

    // (i, s) stands for r^i·m^s.
    let n_i = n as i64;
    let mul = |a: &(i64, u8), b: &(i64, u8)| {
        let j = if a.1 == 0 { b.0 } else { -b.0 };
        ((a.0 + j).rem_euclid(n_i), a.1 ^ b.1)
    };
    let gens = [(1 % n_i, 0u8), (0, 1u8)];
    let (elements, words) = shortlex_closure((0i64, 0u8), &gens, mul, 2 * n + 1)?;
    debug_assert_eq!(elements.len(), 2 * n);
    let gen_labels = ["r".to_string(), "m".to_string()];
    let labels = words.iter().map(|w| word_label(w, &gen_labels)).collect();
    let table = table_from_elements(&elements, mul);
    let gen_idx = gens.iter().map(|g| elements.iter().position(|x| x == g).unwrap()).collect();
    let group = FiniteGroup::from_table(labels, table, gen_idx)?;
    let rep = elements
        .iter()
        .map(|&(i, s)| {
            let r = rotation.pow(i as u32);
            if s == 1 {
                &r * mirror
            } else {
                r
            }
        })
        .collect();
    PointGroup::new(format!("D{n}"), group, rotation.rows(), rep)
}

/// Group generated by labelled matrices; elements are enumerated by closure.
pub fn from_generators(gens: &[(String, IntMatrix)], cap: usize) -> Result<PointGroup> {
    from_generators_checked(gens, cap, true)
}

fn from_generators_checked(gens: &[(String, IntMatrix)], cap: usize, check: bool) -> Result<PointGroup> {
    let Some((_, first)) = gens.first() else {
        return Err(Error::InvalidGroup("at least one generator required".into()));
    };
    let rank = first.rows();
    for (l, m) in gens {
        if m.rows() != rank || m.cols() != rank {
            return Err(Error::DimensionMismatch(format!("generator {l} is not {rank}×{rank}")));
        }
        if !m.is_unimodular() {
            return Err(Error::InvalidGroup(format!("generator {l} is not invertible over ℤ")));
        }
    }
    let mats: Vec<IntMatrix> = gens.iter().map(|(_, m)| m.clone()).collect();
    let mul = |a: &IntMatrix, b: &IntMatrix| a * b;
    let (elements, words) = shortlex_closure(IntMatrix::identity(rank), &mats, mul, cap)?;
    let gen_labels: Vec<String> = gens.iter().map(|(l, _)| l.clone()).collect();
    let labels = words.iter().map(|w| word_label(w, &gen_labels)).collect();
    let table = table_from_elements(&elements, mul);
    let gen_idx = mats.iter().map(|m| elements.iter().position(|x| x == m).unwrap()).collect();
    let group = FiniteGroup::from_table_checked(labels, table, gen_idx, check)?;
    PointGroup::new(format!("G{}", elements.len()), group, rank, elements)
}

/// A subgroup together with its normality flag and, when normal, the quotient.
#[derive(Clone, Debug)]
pub struct SubgroupData {
    parent: PointGroup,
    members: Vec<bool>,
    normal: bool,
    quotient: Option<Quotient>,
}

/// Quotient `G/H` with coset representatives (least element index in each coset).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of each element of `G`.
    pub coset_of: Vec<usize>,
    /// Representative element of each coset.
    pub representatives: Vec<usize>,
}

impl SubgroupData {
    pub fn new(parent: &PointGroup, members: &[usize]) -> Result<Self> {
        let g = parent.group();
        let n = g.order();
        let mut flags = vec![false; n];
        for &x in members {
            if x >= n {
                return Err(Error::NotSubgroup(format!("element index {x} out of range")));
            }
            flags[x] = true;
        }
        if !flags[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in 0..n {
            if !flags[a] {
                continue;
            }
            if !flags[g.inverse(a)] {
                return Err(Error::NotSubgroup(format!("not closed under inverse at {}", g.label(a))));
            }
            for b in 0..n {
                if flags[b] && !flags[g.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("not closed: {}·{}", g.label(a), g.label(b))));
                }
            }
        }
        let normal = (0..n).all(|x| (0..n).filter(|&h| flags[h]).all(|h| flags[g.mul(g.mul(x, h), g.inverse(x))]));
        let quotient = normal.then(|| build_quotient(g, &flags));
        Ok(SubgroupData { parent: parent.clone(), members: flags, normal, quotient })
    }

    pub fn parent(&self) -> &PointGroup {
        &self.parent
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members[g]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn order(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn quotient(&self) -> Option<&Quotient> {
        self.quotient.as_ref()
    }

    /// The subgroup as a point group in its own right, with its embedding.
    pub fn as_point_group(&self) -> (PointGroup, Vec<usize>) {
        let g = self.parent.group();
        let members = self.members();
        let gens: Vec<usize> = members.iter().copied().filter(|&x| x != 0).collect();
        // Shortlex over the parent's labels keeps the element names readable.
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = members.iter().map(|&x| g.label(x).to_string()).collect();
        let table = members.iter().map(|&a| members.iter().map(|&b| local[&g.mul(a, b)]).collect()).collect();
        let gen_local = gens.iter().map(|x| local[x]).collect();
        let group = FiniteGroup::from_table(labels, table, gen_local).expect("subgroup table is a group");
        let rep = members.iter().map(|&x| self.parent.rep(x).clone()).collect();
        let pg = PointGroup::new(format!("{}<{}", self.parent.name(), members.len()), group, self.parent.rank(), rep)
            .expect("restriction of a representation");
        (pg, members)
    }
}

fn build_quotient(g: &FiniteGroup, flags: &[bool]) -> Quotient {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(x);
        for h in 0..n {
            if flags[h] {
                coset_of[g.mul(x, h)] = c;
            }
        }
    }
    let q = representatives.len();
    let table =
        (0..q).map(|a| (0..q).map(|b| coset_of[g.mul(representatives[a], representatives[b])]).collect()).collect();
    let labels = representatives.iter().map(|&x| format!("[{}]", g.label(x))).collect();
    let mut gens: Vec<usize> = g.generators().iter().map(|&s| coset_of[s]).filter(|&c| c != 0).collect();
    gens.dedup();
    let group = FiniteGroup::from_table(labels, table, gens).expect("quotient of a group by a normal subgroup");
    Quotient { group, coset_of, representatives }
}

/// Subgroup that must be normal; builds the quotient table.
pub fn normal_subgroup(g: &PointGroup, members: &[usize]) -> Result<SubgroupData> {
    let s = SubgroupData::new(g, members)?;
    if !s.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(s)
}

/// JSON group descriptor consumed by the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub rank: usize,
    pub generators: Vec<GeneratorDescriptor>,
    #[serde(default = "default_true")]
    pub relations_check: bool,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorDescriptor {
    pub label: String,
    pub matrix: Vec<Vec<i64>>,
}

fn default_true() -> bool {
    true
}

impl GroupDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(format!("line {}: {e}", e.line())))
    }

    /// Builds the group by closure. With `relations_check` off, the
    /// associativity sweep is skipped (closure of matrices is associative anyway).
    pub fn build(&self) -> Result<PointGroup> {
        let mut gens = Vec::new();
        for g in &self.generators {
            if g.matrix.len() != self.rank || g.matrix.iter().any(|r| r.len() != self.rank) {
                return Err(Error::Descriptor(format!("generator {} is not {}×{}", g.label, self.rank, self.rank)));
            }
            gens.push((g.label.clone(), IntMatrix::from_rows(&g.matrix)));
        }
        let pg = from_generators_checked(&gens, DEFAULT_ELEMENT_CAP, self.relations_check)?;
        Ok(match &self.name {
            Some(n) => pg.with_name(n.clone()),
            None => pg,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn trivial_cyclic() {
        let g = cyclic_group(1, &m(&[&[1]])).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.label(0), "e");
    }

    #[test]
    fn c4_on_square_lattice() {
        let g = cyclic_group(4, &m(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.group().labels(), &["e", "r", "r^2", "r^3"]);
    }

    #[test]
    fn c5_companion() {
        let c = m(&[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]]);
        assert_eq!(cyclic_group(5, &c).unwrap().order(), 5);
        assert!(matches!(cyclic_group(4, &c), Err(Error::WrongOrder { expected: 4, actual: Some(5) })));
    }

    #[test]
    fn dihedral_orders() {
        let d1 = dihedral_group(1, &IntMatrix::identity(2), &m(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!(d1.order(), 2);
        let d4 = dihedral_group(4, &m(&[&[0, -1], &[1, 0]]), &m(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(&d4.group().labels()[..4], &["e", "r", "m", "r^2"]);
    }

    #[test]
    fn dihedral_relation_is_named() {
        let err = dihedral_group(4, &m(&[&[0, -1], &[1, 0]]), &m(&[&[1, 1], &[0, -1]])).unwrap_err();
        assert_eq!(err, Error::RelationViolation("mirror*rotation*mirror = rotation^-1".into()));
        let err = dihedral_group(4, &m(&[&[0, -1], &[1, 0]]), &m(&[&[2, 0], &[0, 1]])).unwrap_err();
        assert_eq!(err, Error::RelationViolation("mirror^2 = I".into()));
    }

    #[test]
    fn closure_counts() {
        assert_eq!(from_generators(&[("e".into(), IntMatrix::identity(3))], 1000).unwrap().order(), 1);
        let a = m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let b = m(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let g222 = from_generators(&[("a".into(), a.clone()), ("b".into(), b.clone())], 1000).unwrap();
        assert_eq!(g222.order(), 4);
        let c3 = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let t = from_generators(&[("a".into(), a), ("c".into(), c3)], 1000).unwrap();
        assert_eq!(t.order(), 12);
    }

    #[test]
    fn infinite_closure_is_capped() {
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(from_generators(&[("s".into(), shear)], 50), Err(Error::NotFinite { cap: 50 }));
    }

    #[test]
    fn normality() {
        let d4 = dihedral_group(4, &m(&[&[0, -1], &[1, 0]]), &m(&[&[1, 0], &[0, -1]])).unwrap();
        let r = d4.group().find_label("r").unwrap();
        let mi = d4.group().find_label("m").unwrap();
        let rot = d4.group().generated_subgroup(&[r]);
        let h = normal_subgroup(&d4, &rot).unwrap();
        assert_eq!(h.quotient().unwrap().group.order(), 2);
        let mirror = d4.group().generated_subgroup(&[mi]);
        assert_eq!(normal_subgroup(&d4, &mirror).unwrap_err(), Error::NotNormal);
        let all: Vec<usize> = d4.elements().collect();
        assert_eq!(normal_subgroup(&d4, &all).unwrap().quotient().unwrap().group.order(), 1);
        assert!(matches!(SubgroupData::new(&d4, &[0, r]), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn descriptor_round_trip() {
        let text = r#"{"rank": 2, "generators": [{"label": "m", "matrix": [[1,0],[0,-1]]}], "relations_check": true}"#;
        let g = GroupDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.label(1), "m");
        assert!(GroupDescriptor::from_json("{\"rank\": 2,\n \"generators\": 5}").is_err());
    }
}
