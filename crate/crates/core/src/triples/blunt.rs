use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use super::omega_class::{omega_class, OmegaClass};
use super::params::blunt_params;
use super::sharp::is_strictly_blunt;
use crate::ablat::Element;
use crate::error::{Error, Result};
use crate::fungroup::{m_set, omega, omega_of_j, omega_prime, OmegaOfJ};
use crate::rootdata::{affine_diagram, components_type, Family, FiniteType, TypeExpr};

/// A blunt triple `(W, omega, [J])` with `J = S - {s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BluntTriple {
    pub w: FiniteType,
    pub omega: Element,
    pub omega_class: OmegaClass,
    /// Label of the closed-form list, e.g. `a5` or `g'`.
    pub case: String,
    /// Lexicographically least member of `[J]`.
    pub j: Vec<usize>,
    /// The node deleted from `S` to get `j`.
    pub deleted: usize,
    pub j_orbit: Vec<Vec<usize>>,
    pub w_j: TypeExpr,
    /// `c(s)` for the deleted node.
    pub mark: u32,
    pub m_star_count: usize,
    /// One element of `M*`, split over the components of `W_J`.
    pub witness: Vec<Element>,
    pub params: Option<(u64, u64)>,
}

/// `M` and `M*` for one maximal `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalJ {
    pub deleted: usize,
    pub j: Vec<usize>,
    pub w_j: TypeExpr,
    pub mark: u32,
    pub m_count: usize,
    pub m_star: Vec<Vec<Element>>,
}

static OMEGA_J: Lazy<Mutex<HashMap<(FiniteType, usize), Arc<OmegaOfJ>>>> = Lazy::new(Default::default);

/// `Omega'(S - {s})`, cached.
pub fn omega_of_deletion(w: FiniteType, s: usize) -> Result<Arc<OmegaOfJ>> {
    if let Some(o) = OMEGA_J.lock().expect("cache").get(&(w, s)) {
        return Ok(o.clone());
    }
    let j: Vec<usize> = (0..=w.rank()).filter(|&x| x != s).collect();
    let o = Arc::new(omega_of_j(w, &j)?);
    OMEGA_J.lock().expect("cache").insert((w, s), o.clone());
    Ok(o)
}

/// `M_{J,omega}` and its filtered part for `J = S - {s}`.
pub fn maximal_j(w: FiniteType, omega: &[u64], s: usize) -> Result<MaximalJ> {
    let g = omega_prime(w);
    if !g.contains(omega) {
        return Err(Error::BadOmega(omega.to_vec()));
    }
    let o = omega_of_deletion(w, s)?;
    let m = m_set(&o, omega)?;
    let mut m_star = Vec::new();
    for x in &m {
        let parts = o.split(x);
        let mut keep = true;
        for (c, p) in o.components().iter().zip(&parts) {
            if !is_strictly_blunt(c.ty, p)? {
                keep = false;
                break;
            }
        }
        if keep {
            m_star.push(parts);
        }
    }
    m_star.sort();
    Ok(MaximalJ {
        deleted: s,
        j: o.j().to_vec(),
        w_j: components_type(o.components()).sorted(),
        mark: affine_diagram(w).mark(s),
        m_count: m.len(),
        m_star,
    })
}

/// One entry per `Omega`-orbit of maximal `J`, ordered by deleted node.
pub fn maximal_j_report(w: FiniteType, omega: &[u64]) -> Result<Vec<MaximalJ>> {
    omega_orbit_reps(w).into_iter().map(|s| maximal_j(w, omega, s)).collect()
}

/// For each `Omega`-orbit of nodes, the node whose deletion gives the least `J`.
fn omega_orbit_reps(w: FiniteType) -> Vec<usize> {
    let mut reps: Vec<usize> =
        omega(w).node_orbits().iter().map(|o| *o.iter().max().expect("nonempty orbit")).collect();
    reps.sort_unstable();
    reps
}

fn exceptional_label(w: FiniteType, trivial: bool, w_j: &str) -> Option<&'static str> {
    let table: &[(&str, &str)] = match (w.family(), w.rank(), trivial) {
        (Family::E, 8, _) => &[
            ("E8", "a1"),
            ("E7xA1", "a2"),
            ("E6xA2", "a3"),
            ("D5xA3", "a4"),
            ("A4xA4", "a5"),
            ("D8", "a6"),
            ("A5xA2xA1", "a7"),
        ],
        (Family::E, 7, false) => &[("E7", "b1"), ("A5xA2", "b2")],
        (Family::E, 7, true) => &[("A3xA3xA1", "b'")],
        (Family::E, 6, false) => &[("E6", "c1"), ("A5xA1", "c2")],
        (Family::E, 6, true) => &[("A2xA2xA2", "c'")],
        (Family::F, _, _) => &[("F4", "d1"), ("C3xA1", "d2"), ("A2xA2", "d3"), ("A3xA1", "d4"), ("B4", "d5")],
        (Family::G, _, _) => &[("G2", "e1"), ("A1xA1", "e2"), ("A2", "e3")],
        _ => &[],
    };
    table.iter().find(|(k, _)| *k == w_j).map(|(_, v)| *v)
}

/// Blunt triples of `W` for `omega` in `Omega'`, ordered by deleted node.
pub fn enumerate_blunt(w: FiniteType, omega_el: &[u64]) -> Result<Vec<BluntTriple>> {
    let g = omega_prime(w);
    if !g.contains(omega_el) {
        return Err(Error::BadOmega(omega_el.to_vec()));
    }
    let class = omega_class(&g, omega_el);
    let own = omega(w);
    let mut out = Vec::new();
    for mj in maximal_j_report(w, omega_el)? {
        if mj.m_star.is_empty() {
            continue;
        }
        let (case, params) = match w.family() {
            Family::A => ("f".to_string(), None),
            Family::B | Family::C | Family::D => {
                let (case, p) = blunt_params(w, class, mj.deleted).ok_or_else(|| {
                    Error::Classification(format!("{w}^a: blunt {} has no parameters", mj.w_j))
                })?;
                (case.to_string(), Some(p))
            }
            _ => {
                let label = exceptional_label(w, class.is_trivial(), &mj.w_j.to_string()).ok_or_else(|| {
                    Error::Classification(format!("{w}^a: blunt {} is not in the list", mj.w_j))
                })?;
                (label.to_string(), None)
            }
        };
        out.push(BluntTriple {
            w,
            omega: omega_el.to_vec(),
            omega_class: class,
            case,
            j: mj.j.clone(),
            deleted: mj.deleted,
            j_orbit: own.set_orbit(&mj.j),
            w_j: mj.w_j,
            mark: mj.mark,
            m_star_count: mj.m_star.len(),
            witness: mj.m_star[0].clone(),
            params,
        });
    }
    Ok(out)
}

/// `(x, y)` of a classical blunt triple.
pub fn blunt_params_of(b: &BluntTriple) -> Result<(u64, u64)> {
    if !matches!(b.w.family(), Family::B | Family::C | Family::D) {
        return Err(Error::InvalidArgument(format!("{}^a has no parameters", b.w)));
    }
    blunt_params(b.w, b.omega_class, b.deleted)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Classification(format!("{}^a: {} does not invert to parameters", b.w, b.w_j)))
}
