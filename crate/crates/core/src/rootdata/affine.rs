use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use super::system::{dot, RootSystem, Root};
use super::types::{Family, FiniteType, TypeExpr};

/// Bijection of a node set, stored as the image of each node.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodePermutation(Vec<usize>);

impl NodePermutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &NodePermutation) -> NodePermutation {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> NodePermutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == i).collect()
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Orbits, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.0[i];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn map_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&i| self.0[i]).collect();
        v.sort_unstable();
        v
    }

    pub fn stabilizes(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.map_set(set) == s
    }
}

impl fmt::Debug for NodePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Coxeter bond order from a symmetrized Gram matrix; `0` encodes infinity.
pub fn bond_order(gram: &[Vec<i64>], i: usize, j: usize) -> u32 {
    if i == j {
        return 1;
    }
    let g = gram[i][j];
    if g == 0 {
        return 2;
    }
    match 4 * g * g / (gram[i][i] * gram[j][j]) {
        1 => 3,
        2 => 4,
        3 => 6,
        _ => 0,
    }
}

/// A connected piece of a subdiagram, typed as a root system, with its nodes
/// listed in the standard (Bourbaki) order of that type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub ty: FiniteType,
    pub nodes: Vec<usize>,
}

fn walk_path(adj: &[Vec<usize>], start: usize, prev: Option<usize>) -> Vec<usize> {
    let mut path = vec![start];
    let (mut cur, mut before) = (start, prev);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| Some(x) != before).collect();
        match next.as_slice() {
            [n] => {
                path.push(*n);
                before = Some(cur);
                cur = *n;
            }
            _ => return path,
        }
    }
}

fn type_connected(gram: &[Vec<i64>], nodes: &[usize]) -> Component {
    let k = nodes.len();
    let local_adj: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&a| nodes.iter().copied().filter(|&b| b != a && gram[a][b] != 0).collect())
        .collect();
    let adj: Vec<Vec<usize>> = {
        let mut full = vec![Vec::new(); gram.len()];
        for (i, &a) in nodes.iter().enumerate() {
            full[a] = local_adj[i].clone();
        }
        full
    };
    let norm = |x: usize| gram[x][x];
    let comp = |family, order: Vec<usize>| Component {
        ty: FiniteType::new(family, order.len()).expect("component types are canonical"),
        nodes: order,
    };
    if k == 1 {
        return comp(Family::A, nodes.to_vec());
    }
    let bonds: Vec<(usize, usize, u32)> = nodes
        .iter()
        .flat_map(|&a| nodes.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && gram[a][b] != 0)
        .map(|(a, b)| (a, b, bond_order(gram, a, b)))
        .collect();
    let max_deg = nodes.iter().map(|&a| adj[a].len()).max().unwrap_or(0);
    let ends: Vec<usize> = nodes.iter().copied().filter(|&a| adj[a].len() == 1).collect();

    if let Some(&(a, b, _)) = bonds.iter().find(|b| b.2 == 6) {
        let (short, long) = if norm(a) < norm(b) { (a, b) } else { (b, a) };
        return comp(Family::G, vec![short, long]);
    }
    if let Some(&(a, b, _)) = bonds.iter().find(|b| b.2 == 4) {
        if k == 2 {
            let (short, long) = if norm(a) < norm(b) { (a, b) } else { (b, a) };
            return comp(Family::B, vec![long, short]);
        }
        let mut path = walk_path(&adj, ends[0], None);
        let pos = path
            .windows(2)
            .position(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a))
            .expect("double bond on path");
        if k == 4 && pos == 1 {
            if norm(path[0]) < norm(path[3]) {
                path.reverse();
            }
            return comp(Family::F, path);
        }
        if pos == 0 {
            path.reverse();
        }
        let last = *path.last().expect("nonempty");
        let family = if norm(last) < norm(path[0]) { Family::B } else { Family::C };
        return comp(family, path);
    }
    if max_deg <= 2 {
        let start = *ends.iter().min().expect("path has ends");
        return comp(Family::A, walk_path(&adj, start, None));
    }
    let branch = *nodes.iter().find(|&&a| adj[a].len() == 3).expect("branch node");
    let mut arms: Vec<Vec<usize>> =
        adj[branch].iter().map(|&n| walk_path(&adj, n, Some(branch))).collect();
    arms.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    match lens.as_slice() {
        [1, 1, _] => {
            if lens[2] == 1 {
                arms.rotate_left(1);
            }
            let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
            order.push(branch);
            order.push(arms[0][0]);
            order.push(arms[1][0]);
            comp(Family::D, order)
        }
        [1, 2, m] if (2..=4).contains(m) => {
            let (short_arm, long_arm, leaf) = (&arms[1], &arms[2], arms[0][0]);
            let mut order = vec![short_arm[1], leaf, short_arm[0], branch];
            order.extend(long_arm.iter().copied());
            comp(Family::E, order)
        }
        _ => unreachable!("unexpected branched diagram with arms {lens:?}"),
    }
}

/// Connected components of the subdiagram on `nodes`, typed as root systems.
pub fn type_subdiagram(gram: &[Vec<i64>], nodes: &[usize]) -> Vec<Component> {
    let mut remaining: Vec<usize> = nodes.to_vec();
    remaining.sort_unstable();
    let mut out = Vec::new();
    while let Some(&start) = remaining.first() {
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for &b in &remaining {
                if gram[a][b] != 0 && !comp.contains(&b) {
                    comp.push(b);
                }
            }
            i += 1;
        }
        remaining.retain(|x| !comp.contains(x));
        comp.sort_unstable();
        out.push(type_connected(gram, &comp));
    }
    out
}

pub fn components_type(components: &[Component]) -> TypeExpr {
    TypeExpr::from_factors(components.iter().map(|c| c.ty).collect())
}

/// Reduced word for the longest element of the parabolic subgroup on
/// `subset`, found by driving a regular dominant weight to the antidominant
/// chamber (lowest index first).
pub fn longest_word(r: &RootSystem, subset: &[bool]) -> Vec<usize> {
    let n = r.rank();
    let cartan = r.cartan();
    let mut v: Vec<i64> = (0..n).map(|i| i64::from(subset[i])).collect();
    let mut word = Vec::new();
    while let Some(i) = (0..n).find(|&i| subset[i] && v[i] > 0) {
        let vi = v[i];
        for j in 0..n {
            v[j] -= vi * cartan[i][j];
        }
        word.push(i);
    }
    word
}

/// Applies a word (first letter first) to a vector in root coordinates.
pub fn apply_word(r: &RootSystem, word: &[usize], beta: &mut [i64]) {
    for &i in word {
        r.reflect(i, beta);
    }
}

/// The automorphism `alpha_i -> -w_0(alpha_i)` of the simple roots.
pub fn op_automorphism(t: FiniteType) -> NodePermutation {
    static OPS: Lazy<Mutex<HashMap<FiniteType, NodePermutation>>> = Lazy::new(Default::default);
    if let Some(p) = OPS.lock().expect("cache").get(&t) {
        return p.clone();
    }
    let p = compute_op(t);
    OPS.lock().expect("cache").insert(t, p.clone());
    p
}

fn compute_op(t: FiniteType) -> NodePermutation {
    let r = super::root_system(t);
    let n = r.rank();
    let word = longest_word(&r, &vec![true; n]);
    let images = (0..n)
        .map(|i| {
            let mut b: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
            apply_word(&r, &word, &mut b);
            let j = b.iter().position(|&x| x != 0).expect("nonzero");
            debug_assert_eq!(b[j], -1);
            j
        })
        .collect();
    NodePermutation::from_images(images).expect("op is a permutation")
}

/// Untwisted affine diagram: node 0 carries `-theta`, node `i >= 1` carries
/// the simple root `alpha_i`.
#[derive(Clone, Debug)]
pub struct AffineDiagram {
    base: Arc<RootSystem>,
    vectors: Vec<Root>,
    gram: Vec<Vec<i64>>,
    marks: Vec<u32>,
}

pub fn affinize(r: Arc<RootSystem>) -> AffineDiagram {
    let n = r.rank();
    let mut vectors: Vec<Root> = vec![r.highest_root().iter().map(|x| -x).collect()];
    vectors.extend((0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()));
    let gram = vectors
        .iter()
        .map(|u| vectors.iter().map(|v| dot(r.gram(), u, v)).collect())
        .collect();
    let mut marks = vec![1u32];
    marks.extend(r.highest_root().iter().map(|&c| c as u32));
    AffineDiagram { base: r, vectors, gram, marks }
}

impl AffineDiagram {
    pub fn base(&self) -> &RootSystem {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<RootSystem> {
        &self.base
    }

    pub fn finite_type(&self) -> FiniteType {
        self.base.finite_type()
    }

    pub fn node_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.vectors.len()
    }

    pub fn root_vector(&self, node: usize) -> &Root {
        &self.vectors[node]
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn mark(&self, node: usize) -> u32 {
        self.marks[node]
    }

    pub fn marks(&self) -> &[u32] {
        &self.marks
    }

    /// Largest mark.
    pub fn boc(&self) -> u32 {
        *self.marks.iter().max().expect("nonempty")
    }

    pub fn special_nodes(&self) -> Vec<usize> {
        self.nodes().filter(|&s| self.marks[s] == 1).collect()
    }

    /// Coxeter matrix entry; `0` means infinity (only in type `A1`).
    pub fn coxeter(&self, i: usize, j: usize) -> u32 {
        bond_order(&self.gram, i, j)
    }

    pub fn is_long(&self, node: usize) -> bool {
        self.gram[node][node] == self.base.long_norm()
    }

    /// `sum_s c(s) * vector(s) == 0`.
    pub fn mark_relation_holds(&self) -> bool {
        let n = self.base.rank();
        (0..n).all(|k| {
            self.vectors.iter().zip(&self.marks).map(|(v, &c)| v[k] * c as i64).sum::<i64>() == 0
        })
    }

    pub fn preserves_structure(&self, p: &NodePermutation) -> bool {
        p.len() == self.node_count()
            && self.nodes().all(|i| {
                self.marks[p.apply(i)] == self.marks[i]
                    && self.nodes().all(|j| self.coxeter(p.apply(i), p.apply(j)) == self.coxeter(i, j))
            })
    }

    /// Components of the diagram with `removed` deleted; empty iff all nodes go.
    pub fn components_after_deletion(&self, removed: &[usize]) -> Vec<Component> {
        let keep: Vec<usize> = self.nodes().filter(|s| !removed.contains(s)).collect();
        type_subdiagram(&self.gram, &keep)
    }

    pub fn subdiagram(&self, kept: &[usize]) -> Vec<Component> {
        type_subdiagram(&self.gram, kept)
    }

    /// One-line text form: nodes with marks, then bonds of order > 2.
    pub fn pretty(&self) -> String {
        let nodes: Vec<String> = self.nodes().map(|s| format!("{s}:{}", self.marks[s])).collect();
        let mut bonds = Vec::new();
        for i in self.nodes() {
            for j in i + 1..self.node_count() {
                match self.coxeter(i, j) {
                    2 => {}
                    0 => bonds.push(format!("{i}-{j}:inf")),
                    m => bonds.push(format!("{i}-{j}:{m}")),
                }
            }
        }
        format!("{}^a nodes=[{}] bonds=[{}]", self.finite_type(), nodes.join(","), bonds.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{affine_diagram, build_root_system};

    fn t(s: &str) -> FiniteType {
        s.parse().unwrap()
    }

    fn sorted_marks(s: &str) -> Vec<u32> {
        let mut m = affine_diagram(t(s)).marks().to_vec();
        m.sort_unstable();
        m
    }

    #[test]
    fn e8_marks() {
        let mut want = vec![1, 2, 3, 4, 5, 6, 4, 2, 3];
        want.sort_unstable();
        assert_eq!(sorted_marks("E8"), want);
    }

    #[test]
    fn c_marks_and_bonds() {
        let d = affine_diagram(t("C4"));
        assert_eq!(d.marks(), &[1, 2, 2, 2, 1]);
        assert_eq!(d.coxeter(0, 1), 4);
        assert_eq!(d.coxeter(3, 4), 4);
        assert_eq!(d.coxeter(1, 2), 3);
    }

    #[test]
    fn a_is_a_cycle() {
        let d = affine_diagram(t("A4"));
        assert!(d.marks().iter().all(|&m| m == 1));
        for i in 0..5 {
            assert_eq!(d.coxeter(i, (i + 1) % 5), 3);
        }
        assert_eq!(d.coxeter(0, 2), 2);
        assert_eq!(affine_diagram(t("A1")).coxeter(0, 1), 0);
    }

    #[test]
    fn boc_values() {
        for (s, b) in [("A5", 1), ("B5", 2), ("C5", 2), ("D6", 2), ("G2", 3), ("F4", 4), ("E6", 3), ("E7", 4), ("E8", 6)] {
            assert_eq!(affine_diagram(t(s)).boc(), b, "{s}");
        }
    }

    #[test]
    fn deletions() {
        let e8 = affine_diagram(t("E8"));
        let five = e8.nodes().find(|&s| e8.mark(s) == 5).unwrap();
        assert_eq!(components_type(&e8.components_after_deletion(&[five])).sorted().to_string(), "A4xA4");

        for n in 4..9 {
            let b = affine_diagram(t(&format!("B{n}")));
            for k in 2..n {
                let c = components_type(&b.components_after_deletion(&[k]));
                let want = TypeExpr::normalize(Family::D, k as i64)
                    .unwrap()
                    .product(&TypeExpr::normalize(Family::B, (n - k) as i64).unwrap());
                assert_eq!(c.sorted(), want.sorted(), "B{n} minus {k}");
            }
        }

        let c4 = affine_diagram(t("C4"));
        let comps = c4.components_after_deletion(&[1]);
        assert_eq!(components_type(&comps).sorted().to_string(), "C3xA1");
        assert!(c4.components_after_deletion(&[0, 1, 2, 3, 4]).is_empty());
    }

    #[test]
    fn deleting_affine_node_recovers_type() {
        let c2 = affine_diagram(t("C2")).components_after_deletion(&[0]);
        assert_eq!((c2[0].ty, c2[0].nodes.clone()), (t("B2"), vec![2, 1]));
        for s in ["A1", "A6", "B2", "B7", "C3", "C6", "D4", "D7", "E6", "E7", "E8", "F4", "G2"] {
            let d = affine_diagram(t(s));
            let comps = d.components_after_deletion(&[0]);
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].ty, t(s));
            assert_eq!(comps[0].nodes, (1..d.node_count()).collect::<Vec<_>>(), "{s}");
            assert!(d.mark_relation_holds());
        }
    }

    #[test]
    fn op_examples() {
        assert_eq!(op_automorphism(t("A3")).images(), &[2, 1, 0]);
        assert!(op_automorphism(t("E7")).is_identity());
        assert_eq!(op_automorphism(t("D5")).images(), &[0, 1, 2, 4, 3]);
        assert!(op_automorphism(t("D4")).is_identity());
        assert_eq!(op_automorphism(t("E6")).images(), &[5, 1, 4, 3, 2, 0]);
        assert!(op_automorphism(t("B3")).is_identity());
    }

    #[test]
    fn longest_word_length() {
        for s in ["A4", "B3", "D5", "E6", "F4", "G2"] {
            let r = build_root_system(t(s));
            assert_eq!(longest_word(&r, &vec![true; r.rank()]).len(), t(s).positive_root_count());
        }
    }
}
