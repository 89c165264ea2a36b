//! Finite Weyl groups with a diagram automorphism: ordinary automorphisms,
//! the sharpness predicate, and generic degrees of classical types.

mod cyclo;
mod generic;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{
    bond_order, op_automorphism, root_system, Component, Family, FiniteType, NodePermutation, TypeExpr,
};

pub use cyclo::{cyclotomic, format_poly, CycloProduct, IntPoly};
pub use generic::{
    crosscheck_backends, generic_degree, generic_degree_with_bound, is_sharp_generic,
    is_sharp_generic_with_bound, labels, poincare_sum_rule, BackendReport, GenericDegreeRecord,
    IrrepLabel, Mismatch, DEFAULT_MAX_RANK,
};

/// A finite Weyl group (product of irreducible factors, nodes numbered
/// consecutively factor by factor in standard order) with a diagram
/// automorphism `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylPair {
    factors: Vec<FiniteType>,
    offsets: Vec<usize>,
    coxeter: Vec<Vec<u32>>,
    gamma: NodePermutation,
}

fn block_coxeter(factors: &[FiniteType]) -> (Vec<usize>, Vec<Vec<u32>>) {
    let n: usize = factors.iter().map(|t| t.rank()).sum();
    let mut m = vec![vec![2u32; n]; n];
    let mut offsets = Vec::new();
    let mut off = 0;
    for &t in factors {
        offsets.push(off);
        let r = root_system(t);
        for i in 0..t.rank() {
            for j in 0..t.rank() {
                m[off + i][off + j] = bond_order(r.gram(), i, j);
            }
        }
        off += t.rank();
    }
    (offsets, m)
}

impl WeylPair {
    pub fn new(expr: &TypeExpr, gamma: NodePermutation) -> Result<Self> {
        let factors = expr.factors().to_vec();
        let (offsets, coxeter) = block_coxeter(&factors);
        let n = coxeter.len();
        if gamma.len() != n {
            return Err(Error::InvalidArgument(format!("gamma acts on {} nodes, {expr} has {n}", gamma.len())));
        }
        let ok = (0..n).all(|i| (0..n).all(|j| coxeter[gamma.apply(i)][gamma.apply(j)] == coxeter[i][j]));
        if !ok {
            return Err(Error::InvalidArgument(format!("{gamma:?} is not an automorphism of {expr}")));
        }
        Ok(Self { factors, offsets, coxeter, gamma })
    }

    pub fn with_identity(expr: &TypeExpr) -> Self {
        Self::new(expr, NodePermutation::identity(expr.rank())).expect("identity is an automorphism")
    }

    /// `(t, op)` for an irreducible type.
    pub fn with_op(t: FiniteType) -> Self {
        Self::new(&TypeExpr::from_factors(vec![t]), op_automorphism(t)).expect("op is an automorphism")
    }

    /// The pair carried by typed components of a subdiagram together with an
    /// ambient node permutation stabilizing their union.
    pub fn from_components(components: &[Component], ambient: &NodePermutation) -> Result<Self> {
        let order: Vec<usize> = components.iter().flat_map(|c| c.nodes.iter().copied()).collect();
        let local = |s: usize| order.iter().position(|&x| x == s);
        let images = order
            .iter()
            .map(|&s| local(ambient.apply(s)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidArgument("permutation does not stabilize the subdiagram".into()))?;
        let gamma = NodePermutation::from_images(images).expect("restriction of a bijection");
        Self::new(&TypeExpr::from_factors(components.iter().map(|c| c.ty).collect()), gamma)
    }

    pub fn factors(&self) -> &[FiniteType] {
        &self.factors
    }

    pub fn expr(&self) -> TypeExpr {
        TypeExpr::from_factors(self.factors.clone())
    }

    pub fn gamma(&self) -> &NodePermutation {
        &self.gamma
    }

    pub fn rank(&self) -> usize {
        self.coxeter.len()
    }

    pub fn coxeter(&self, i: usize, j: usize) -> u32 {
        self.coxeter[i][j]
    }

    fn factor_of(&self, node: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= node).expect("node in range")
    }

    /// Whenever `s, s'` lie in one orbit, `m(s, s') <= 3`.
    pub fn is_ordinary(&self) -> bool {
        self.gamma.orbits().iter().all(|o| {
            o.iter().all(|&a| o.iter().all(|&b| matches!(self.coxeter[a][b], 1..=3)))
        })
    }
}

/// One factor of the decomposition into gamma-irreducible pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaFactor {
    /// Component indices in the order `c, gamma(c), gamma^2(c), ...`.
    pub components: Vec<usize>,
    pub ty: FiniteType,
    /// `gamma^k` restricted to the first component, `k` the orbit length.
    pub residual: NodePermutation,
    pub is_op: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismProfile {
    pub factors: Vec<GammaFactor>,
    /// Number of gamma-orbits on nodes.
    pub r: usize,
    /// Order of gamma.
    pub ord: usize,
}

/// Number of orbits of a permutation.
pub fn orbit_count(p: &NodePermutation) -> usize {
    p.orbits().len()
}

/// `r(op)` of an irreducible type.
pub fn r_op(t: FiniteType) -> usize {
    orbit_count(&op_automorphism(t))
}

pub fn automorphism_profile(p: &WeylPair) -> Result<AutomorphismProfile> {
    if !p.is_ordinary() {
        return Err(Error::NotOrdinary(format!("{:?} on {}", p.gamma, p.expr())));
    }
    let k = p.factors.len();
    let mut seen = vec![false; k];
    let mut factors = Vec::new();
    for c in 0..k {
        if seen[c] {
            continue;
        }
        let mut orbit = vec![c];
        seen[c] = true;
        loop {
            let last = *orbit.last().expect("nonempty");
            let next = p.factor_of(p.gamma.apply(p.offsets[last]));
            if next == c {
                break;
            }
            seen[next] = true;
            orbit.push(next);
        }
        let ty = p.factors[c];
        let off = p.offsets[c];
        let residual = NodePermutation::from_images(
            (0..ty.rank())
                .map(|i| {
                    let mut x = off + i;
                    for _ in 0..orbit.len() {
                        x = p.gamma.apply(x);
                    }
                    x - off
                })
                .collect(),
        )
        .expect("power of gamma preserves the component");
        let is_op = residual == op_automorphism(ty);
        factors.push(GammaFactor { components: orbit, ty, residual, is_op });
    }
    Ok(AutomorphismProfile { factors, r: orbit_count(&p.gamma), ord: p.gamma.order() })
}

fn odd_square_root(x: u64) -> Option<u64> {
    let t = (x as f64).sqrt().round() as u64;
    (t * t == x && t % 2 == 1).then_some(t)
}

fn square_root(x: u64) -> Option<u64> {
    let t = (x as f64).sqrt().round() as u64;
    (t * t == x).then_some(t)
}

/// Sharpness of an irreducible pair `(W, gamma)` by the classification list.
pub fn is_sharp_irreducible(t: FiniteType, gamma: &NodePermutation) -> bool {
    let op = op_automorphism(t);
    let n = t.rank() as u64;
    match t.weyl_name().family() {
        Family::E if n == 6 => true,
        Family::E | Family::F | Family::G => gamma.is_identity(),
        Family::A => *gamma == op && odd_square_root(8 * n + 9).is_some_and(|t| t >= 5),
        Family::B | Family::C => gamma.is_identity() && odd_square_root(4 * n + 1).is_some_and(|t| t >= 3),
        Family::D => {
            (n == 4 && gamma.order() == 3) || (*gamma == op && square_root(n).is_some_and(|m| m >= 2))
        }
    }
}

/// Classification backend: every gamma-irreducible factor reduces to a sharp
/// irreducible pair.
pub fn is_sharp(p: &WeylPair) -> Result<bool> {
    let prof = automorphism_profile(p)?;
    Ok(prof.factors.iter().all(|f| is_sharp_irreducible(f.ty, &f.residual)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> FiniteType {
        s.parse().unwrap()
    }

    fn pair(expr: &str, images: Vec<usize>) -> WeylPair {
        WeylPair::new(&expr.parse().unwrap(), NodePermutation::from_images(images).unwrap()).unwrap()
    }

    #[test]
    fn profiles() {
        let p = automorphism_profile(&WeylPair::with_op(t("A5"))).unwrap();
        assert_eq!((p.factors.len(), p.r, p.ord, p.factors[0].is_op), (1, 3, 2, true));
        let p = automorphism_profile(&pair("D4", vec![2, 1, 3, 0])).unwrap();
        assert_eq!((p.r, p.ord), (2, 3));
        let p = automorphism_profile(&pair("B2xB2", vec![2, 3, 0, 1])).unwrap();
        assert_eq!(p.factors.len(), 1);
        assert_eq!(p.factors[0].components, vec![0, 1]);
        assert!(p.factors[0].residual.is_identity());
    }

    #[test]
    fn non_ordinary_rejected() {
        assert!(!pair("B2", vec![1, 0]).is_ordinary());
        assert!(WeylPair::new(&"A3".parse().unwrap(), NodePermutation::from_images(vec![1, 0, 2]).unwrap()).is_err());
        let g2 = WeylPair::new(&"A1xA1".parse().unwrap(), NodePermutation::from_images(vec![1, 0]).unwrap()).unwrap();
        assert!(g2.is_ordinary());
        let f4 = pair("F4", vec![3, 2, 1, 0]);
        assert!(!f4.is_ordinary());
        assert!(matches!(automorphism_profile(&f4), Err(Error::NotOrdinary(_))));
    }

    #[test]
    fn spec_examples() {
        assert!(is_sharp(&WeylPair::with_op(t("A2"))).unwrap());
        assert!(is_sharp(&WeylPair::with_identity(&"B2".parse().unwrap())).unwrap());
        assert!(!is_sharp(&WeylPair::with_identity(&"A1".parse().unwrap())).unwrap());
        assert!(is_sharp(&WeylPair::with_identity(&"E6".parse().unwrap())).unwrap());
        assert!(is_sharp(&WeylPair::with_identity(&TypeExpr::trivial())).unwrap());
        assert!(is_sharp(&pair("B2xB2", vec![2, 3, 0, 1])).unwrap());
        assert!(!is_sharp(&WeylPair::with_op(t("A3"))).unwrap());
        assert!(is_sharp(&WeylPair::with_op(t("D9"))).unwrap());
        assert!(!is_sharp(&WeylPair::with_identity(&"D9".parse().unwrap())).unwrap());
    }

    #[test]
    fn r_of_op() {
        assert_eq!(r_op(t("A5")), 3);
        assert_eq!(r_op(t("A4")), 2);
        assert_eq!(r_op(t("D5")), 4);
        assert_eq!(r_op(t("D6")), 6);
        assert_eq!(r_op(t("E6")), 4);
    }
}
