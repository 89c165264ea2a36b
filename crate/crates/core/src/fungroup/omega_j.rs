use std::sync::Arc;

use crate::ablat::{Element, FinAbGroup, FinAbHom, IntMatrix, Quotient};
use crate::error::{Error, Result};
use crate::rootdata::{affine_diagram, root_system, Component, FiniteType};

use super::{omega_prime, OmegaGroup};

/// `Omega'(J)` for a maximal proper node subset `J` of `S`, with the maps
/// `a: Omega' -> Omega'(J)` and `b: prod_i Omega'_i -> Omega'(J)`.
///
/// `Omega'(J)` is realized on weights with integral values on the coroots of
/// `J`, written by those values, modulo the root lattice of `W`.
#[derive(Clone, Debug)]
pub struct OmegaOfJ {
    w: FiniteType,
    j: Vec<usize>,
    components: Vec<Component>,
    omega_prime: Arc<OmegaGroup>,
    component_groups: Vec<Arc<OmegaGroup>>,
    product: FinAbGroup,
    target: Quotient,
    map_a: FinAbHom,
    map_b: FinAbHom,
}

pub fn omega_of_j(w: FiniteType, j: &[usize]) -> Result<OmegaOfJ> {
    let d = affine_diagram(w);
    let n = w.rank();
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() != n || j.iter().any(|&s| s > n) {
        return Err(Error::InvalidArgument(format!(
            "J must be {n} distinct nodes of {w}^a, got {j:?}"
        )));
    }
    let components = d.subdiagram(&j);
    let pos = |s: usize| j.iter().position(|&x| x == s).expect("node of J");

    // coroots of J in simple-coroot coordinates
    let rs = root_system(w);
    let cartan = rs.cartan().to_vec();
    let gram = rs.gram();
    let coroots: Vec<Vec<i64>> = j
        .iter()
        .map(|&s| {
            let r = d.root_vector(s);
            let len = rs.norm(r);
            (0..n).map(|k| r[k] * gram[k][k] / len).collect()
        })
        .collect();
    // values of the simple roots of W on the coroots of J
    let rel: Vec<Vec<i64>> = (0..n)
        .map(|a| (0..n).map(|i| (0..n).map(|k| coroots[a][k] * cartan[i][k]).sum()).collect())
        .collect();
    let target = Quotient::new(&IntMatrix::from_rows(&rel))?;

    // Omega' is P/Q of W in fundamental weight coordinates, which is how the
    // group of the dual type is stored
    let prime = omega_prime(w);
    let a_images = prime
        .group()
        .generators()
        .iter()
        .map(|g| {
            let x = prime.quotient().lift(g);
            let y: Vec<num_bigint::BigInt> = coroots
                .iter()
                .map(|c| c.iter().zip(&x).map(|(&k, v)| v * k).sum())
                .collect();
            Ok(target.class_of(&y))
        })
        .collect::<Result<Vec<_>>>()?;
    let map_a = FinAbHom::from_generator_images(prime.group().clone(), target.group().clone(), a_images)?;

    let mut component_groups = Vec::new();
    let mut b_images = Vec::new();
    for c in &components {
        let local = root_system(c.ty);
        let local = local.cartan();
        let gram = d.gram();
        for (a, &s) in c.nodes.iter().enumerate() {
            for (b, &t) in c.nodes.iter().enumerate() {
                if local[a][b] * gram[t][t] != 2 * gram[s][t] {
                    return Err(Error::Classification(format!("component {} mistyped in {w}^a", c.ty)));
                }
            }
        }
        let prime_c = omega_prime(c.ty);
        for g in prime_c.group().generators() {
            let x = prime_c.quotient().lift(&g);
            let mut y = vec![num_bigint::BigInt::from(0); n];
            for (k, &s) in c.nodes.iter().enumerate() {
                y[pos(s)] = x[k].clone();
            }
            b_images.push(target.class_of(&y));
        }
        component_groups.push(prime_c);
    }
    let product =
        FinAbGroup::direct_product(&component_groups.iter().map(|g| g.group().clone()).collect::<Vec<_>>());
    let map_b = FinAbHom::from_generator_images(product.clone(), target.group().clone(), b_images)?;
    Ok(OmegaOfJ { w, j, components, omega_prime: prime, component_groups, product, target, map_a, map_b })
}

impl OmegaOfJ {
    pub fn finite_type(&self) -> FiniteType {
        self.w
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn omega_prime(&self) -> &OmegaGroup {
        &self.omega_prime
    }

    /// `Omega'_i` of each component, acting on its own dual affine diagram.
    pub fn component_groups(&self) -> &[Arc<OmegaGroup>] {
        &self.component_groups
    }

    pub fn product(&self) -> &FinAbGroup {
        &self.product
    }

    pub fn group(&self) -> &FinAbGroup {
        self.target.group()
    }

    pub fn map_a(&self) -> &FinAbHom {
        &self.map_a
    }

    pub fn map_b(&self) -> &FinAbHom {
        &self.map_b
    }

    /// Splits a product element into its component elements.
    pub fn split(&self, x: &[u64]) -> Vec<Element> {
        let mut rest = x;
        self.component_groups
            .iter()
            .map(|g| {
                let (head, tail) = rest.split_at(g.group().rank());
                rest = tail;
                head.to_vec()
            })
            .collect()
    }

    pub fn join(&self, parts: &[Element]) -> Element {
        parts.concat()
    }
}

/// `M_{J,omega}`: tuples of `prod_i Omega'_i` with `b`-image `a(omega)`.
pub fn m_set(o: &OmegaOfJ, omega: &[u64]) -> Result<Vec<Element>> {
    if !o.omega_prime.contains(omega) {
        return Err(Error::BadOmega(omega.to_vec()));
    }
    Ok(o.map_b.hom_fiber(&o.map_a.apply(omega)))
}
