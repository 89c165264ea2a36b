//! Fundamental groups of affine Weyl groups, their actions on the affine
//! diagram, and the quotients attached to maximal node subsets.

mod omega_j;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::ablat::{
    duality_pairing, lattice_quotient, Element, FinAbGroup, IntMatrix, Lattice, PairingTable,
    Quotient,
};
use crate::error::{Error, Result};
use crate::rootdata::{
    affine_diagram, apply_word, longest_word, root_system, AffineDiagram, Family, FiniteType,
    NodePermutation,
};

pub use omega_j::{m_set, omega_of_j, OmegaOfJ};

/// Which of the two groups an [`OmegaGroup`] plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// Acting on the nodes `S` of `W`.
    Omega,
    /// Acting on the nodes `S'` of the dual affine group.
    OmegaPrime,
}

/// `P^v / Q^v` of a finite type, acting on the nodes of its affine diagram.
///
/// Elements are written in the invariant-factor coordinates of the quotient of
/// the fundamental-coweight lattice by the columns of the Cartan matrix.
#[derive(Clone, Debug)]
pub struct OmegaGroup {
    ty: FiniteType,
    side: Side,
    diagram: Arc<AffineDiagram>,
    quotient: Quotient,
    tags: Vec<usize>,
    perms: Vec<NodePermutation>,
}

fn cartan_int(t: FiniteType) -> IntMatrix {
    IntMatrix::from_rows(root_system(t).cartan())
}

/// Wall permutation of `t_lambda * w_{0,j} * w_0` for the minuscule coweight at node `j`.
fn wall_permutation(d: &AffineDiagram, j: usize) -> Result<NodePermutation> {
    let r = d.base();
    let n = r.rank();
    let w0 = longest_word(r, &vec![true; n]);
    let parabolic: Vec<bool> = (0..n).map(|i| i + 1 != j).collect();
    let wj = longest_word(r, &parabolic);
    let level = |s: usize| i64::from(s == 0);
    let mut images = Vec::with_capacity(d.node_count());
    for s in d.nodes() {
        let mut beta = d.root_vector(s).clone();
        apply_word(r, &w0, &mut beta);
        apply_word(r, &wj, &mut beta);
        let k = level(s) - beta[j - 1];
        let target = d
            .nodes()
            .find(|&m| d.root_vector(m) == &beta && level(m) == k)
            .ok_or_else(|| {
                Error::Classification(format!("wall permutation for node {j} of {} left the alcove", d.finite_type()))
            })?;
        images.push(target);
    }
    NodePermutation::from_images(images)
        .ok_or_else(|| Error::Classification("wall map is not a bijection".into()))
}

impl OmegaGroup {
    fn build(t: FiniteType, side: Side) -> Result<Self> {
        let diagram = affine_diagram(t);
        let n = t.rank();
        let quotient = Quotient::new(&cartan_int(t))?;
        let group = quotient.group().clone();
        let size = group.order() as usize;
        let mut tags = vec![usize::MAX; size];
        tags[group.index_of(&group.identity())] = 0;
        for j in diagram.special_nodes().into_iter().filter(|&j| j > 0) {
            let unit: Vec<i64> = (0..n).map(|i| i64::from(i + 1 == j)).collect();
            let idx = group.index_of(&quotient.class_of_i64(&unit));
            if tags[idx] != usize::MAX {
                return Err(Error::Classification(format!("two minuscule nodes share a class in {t}")));
            }
            tags[idx] = j;
        }
        if tags.contains(&usize::MAX) {
            return Err(Error::Classification(format!("{t}: some class has no minuscule representative")));
        }
        // wall permutations of the generators; the rest follows from the group law
        let els = group.elements();
        let gens: Vec<NodePermutation> = group
            .generators()
            .iter()
            .map(|g| wall_permutation(&diagram, tags[group.index_of(g)]))
            .collect::<Result<_>>()?;
        let perms = els
            .iter()
            .map(|x| {
                let mut p = NodePermutation::identity(diagram.node_count());
                for (k, g) in gens.iter().enumerate() {
                    for _ in 0..x[k] {
                        p = g.compose(&p);
                    }
                }
                p
            })
            .collect();
        let g = Self { ty: t, side, diagram, quotient, tags, perms };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Classification(format!("{}: {what}", self.ty)));
        let group = self.group();
        if group.order() != self.ty.connection_index() {
            return bad("order differs from det of the Cartan matrix");
        }
        let els = group.elements();
        let mut zero_images: Vec<usize> = els.iter().map(|x| self.action(x).apply(0)).collect();
        zero_images.sort_unstable();
        if zero_images != self.diagram.special_nodes() {
            return bad("action is not simply transitive on mark-1 nodes");
        }
        for x in &els {
            let p = self.action(x);
            if p.apply(0) != self.node_tag(x) || !self.diagram.preserves_structure(p) {
                return bad("action does not preserve the diagram");
            }
            for y in &els {
                if self.action(&group.add(x, y)) != &p.compose(self.action(y)) {
                    return bad("action is not a homomorphism");
                }
            }
        }
        Ok(())
    }

    /// Wall permutation computed directly from the minuscule coweight of `x`
    /// (the stored action is built from generators only).
    pub fn direct_action(&self, x: &[u64]) -> Result<NodePermutation> {
        match self.node_tag(x) {
            0 => Ok(NodePermutation::identity(self.diagram.node_count())),
            j => wall_permutation(&self.diagram, j),
        }
    }

    pub fn finite_type(&self) -> FiniteType {
        self.ty
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn diagram(&self) -> &AffineDiagram {
        &self.diagram
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn group(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn order(&self) -> u64 {
        self.group().order()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.group().elements()
    }

    pub fn identity(&self) -> Element {
        self.group().identity()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.group().contains(x)
    }

    pub fn action(&self, x: &[u64]) -> &NodePermutation {
        &self.perms[self.group().index_of(x)]
    }

    /// The mark-1 node `j` with `x = [fundamental coweight j]` (0 for the identity).
    pub fn node_tag(&self, x: &[u64]) -> usize {
        self.tags[self.group().index_of(x)]
    }

    /// Inverse of [`Self::node_tag`].
    pub fn element_at_node(&self, j: usize) -> Option<Element> {
        self.elements().into_iter().find(|x| self.node_tag(x) == j)
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        self.group().element_order(x)
    }

    pub fn fixed_nodes(&self, x: &[u64]) -> Vec<usize> {
        self.action(x).fixed_points()
    }

    /// Orbit of a node subset under the whole group, as sorted sets in
    /// lexicographic order (first entry is the canonical representative).
    pub fn set_orbit(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> =
            self.perms.iter().map(|p| p.map_set(set)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn node_orbits(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> =
            self.diagram.nodes().map(|s| self.set_orbit(&[s]).concat()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Same element read in the group of another type with the same
    /// connection index (the dual, or the same type).
    pub fn transfer(&self, x: &[u64], to: &OmegaGroup) -> Result<Element> {
        if !self.contains(x) {
            return Err(Error::BadOmega(x.to_vec()));
        }
        if to.ty == self.ty {
            return Ok(x.to_vec());
        }
        if to.ty != self.ty.dual() {
            return Err(Error::InvalidArgument(format!("cannot transfer from {} to {}", self.ty, to.ty)));
        }
        // B <-> C: both are Z/2
        Ok(if x.iter().all(|&a| a == 0) { to.identity() } else { to.generators_nonzero() })
    }

    fn generators_nonzero(&self) -> Element {
        self.elements().into_iter().find(|x| x.iter().any(|&a| a != 0)).expect("nontrivial")
    }

    pub fn is_identity(&self, x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }
}

static GROUPS: Lazy<Mutex<HashMap<(FiniteType, Side), Arc<OmegaGroup>>>> =
    Lazy::new(Default::default);

fn cached(t: FiniteType, side: Side) -> Arc<OmegaGroup> {
    if let Some(g) = GROUPS.lock().expect("cache").get(&(t, side)) {
        return g.clone();
    }
    let g = Arc::new(OmegaGroup::build(t, side).unwrap_or_else(|e| panic!("internal check failed: {e}")));
    GROUPS.lock().expect("cache").entry((t, side)).or_insert(g).clone()
}

/// `Omega` for the affine diagram `d`, with all constructor checks run.
pub fn fundamental_group_with_action(d: &AffineDiagram) -> Arc<OmegaGroup> {
    cached(d.finite_type(), Side::Omega)
}

/// `Omega` of the affine Weyl group of type `t`, acting on its nodes `S`.
pub fn omega(t: FiniteType) -> Arc<OmegaGroup> {
    cached(t, Side::Omega)
}

/// `Omega'` attached to `W` of type `t`: it acts on the nodes `S'` of the
/// dual affine diagram.
pub fn omega_prime(t: FiniteType) -> Arc<OmegaGroup> {
    cached(t.dual(), Side::OmegaPrime)
}

/// Elements of `Omega'` (type D) fixing at least two nodes.
pub fn underline_subgroup(g: &OmegaGroup) -> Result<Vec<Element>> {
    if g.finite_type().family() != Family::D {
        return Err(Error::InvalidArgument(format!("{} is not of type D", g.finite_type())));
    }
    Ok(g.elements().into_iter().filter(|x| g.fixed_nodes(x).len() >= 2).collect())
}

/// The pairing between `P^v/Q^v` and `P/Q` of a finite type.
pub fn omega_duality(t: FiniteType) -> Result<PairingTable> {
    let a = cartan_int(t);
    let n = t.rank();
    let coweights = Lattice::standard(n);
    let coroots = Lattice::from_integer_columns(&a)?;
    let omega = lattice_quotient(&coweights, &coroots)?;
    let dual = lattice_quotient(&coroots.dual(), &coweights.dual())?;
    duality_pairing(&omega, &dual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> FiniteType {
        s.parse().unwrap()
    }

    #[test]
    fn type_a_rotates() {
        let g = omega(t("A4"));
        assert!(g.group().is_cyclic());
        assert_eq!(g.order(), 5);
        let gen = g.element_at_node(1).unwrap();
        assert_eq!(g.action(&gen).images(), &[1, 2, 3, 4, 0]);
    }

    #[test]
    fn structure_table() {
        assert_eq!(omega(t("D5")).group().invariant_factors(), vec![4]);
        assert_eq!(omega(t("D6")).group().invariant_factors(), vec![2, 2]);
        for s in ["E8", "F4", "G2"] {
            assert!(omega(t(s)).group().is_trivial());
        }
        assert_eq!(omega(t("E6")).order(), 3);
        assert_eq!(omega(t("E7")).order(), 2);
        assert_eq!(omega_prime(t("B5")).finite_type(), t("C5"));
    }

    #[test]
    fn b_and_c_actions() {
        let b = omega(t("B4"));
        let x = b.element_at_node(1).unwrap();
        assert_eq!(b.action(&x).images(), &[1, 0, 2, 3, 4]);
        let c = omega(t("C4"));
        let y = c.element_at_node(4).unwrap();
        assert_eq!(c.action(&y).images(), &[4, 3, 2, 1, 0]);
        assert_eq!(b.transfer(&x, &c).unwrap(), y);
    }

    #[test]
    fn underline_d() {
        assert_eq!(underline_subgroup(&omega(t("D4"))).unwrap().len(), 1);
        for n in 5..9 {
            let g = omega(t(&format!("D{n}")));
            let u = underline_subgroup(&g).unwrap();
            assert_eq!(u.len(), 2, "D{n}");
            let x = u.iter().find(|x| !g.is_identity(x)).unwrap();
            assert_eq!(g.node_tag(x), 1);
        }
        let g = omega(t("D6"));
        let x = g.element_at_node(1).unwrap();
        assert_eq!(g.fixed_nodes(&x), vec![2, 3, 4]);
        assert!(underline_subgroup(&omega(t("B4"))).is_err());
    }

    #[test]
    fn generator_route_matches_direct_route() {
        for s in ["A5", "B4", "C5", "D4", "D5", "D6", "E6", "E7"] {
            let g = omega(t(s));
            for x in g.elements() {
                assert_eq!(g.action(&x), &g.direct_action(&x).unwrap(), "{s} {x:?}");
            }
        }
    }

    #[test]
    fn pairing_is_perfect() {
        for s in ["A3", "B3", "C4", "D4", "D5", "E6", "E7", "G2"] {
            let p = omega_duality(t(s)).unwrap();
            assert!(p.is_nondegenerate(), "{s}");
        }
    }
}
