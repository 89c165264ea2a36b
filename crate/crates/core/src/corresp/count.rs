use num_integer::Integer;
use serde::Serialize;

use crate::ablat::Element;
use crate::error::{Error, Result};
use crate::rootdata::{affine_diagram, FiniteType, TypeExpr};
use crate::triples::{maximal_j, maximal_j_report, omega_of_deletion};

/// Euler's totient.
pub fn phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiEntry {
    pub deleted: usize,
    pub w_j: TypeExpr,
    pub mark: u32,
    pub m_count: usize,
    pub m_star_count: usize,
    pub blunt: bool,
    pub phi_mark: u64,
    /// For blunt entries, `|M*| = phi(c(s))`; always true otherwise.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub w: FiniteType,
    pub omega: Element,
    pub entries: Vec<PhiEntry>,
    pub all_hold: bool,
}

/// `|M*_{J,omega}|` against `phi(m_[J])` for every maximal `J` up to `Omega`.
pub fn phi_count_report(w: FiniteType, omega: &[u64]) -> Result<PhiReport> {
    if affine_diagram(w).boc() < 3 {
        return Err(Error::InvalidArgument(format!("{w}^a has boc <= 2")));
    }
    let entries: Vec<PhiEntry> = maximal_j_report(w, omega)?
        .into_iter()
        .map(|m| {
            let blunt = !m.m_star.is_empty();
            let phi_mark = phi(m.mark as u64);
            PhiEntry {
                deleted: m.deleted,
                w_j: m.w_j,
                mark: m.mark,
                m_count: m.m_count,
                m_star_count: m.m_star.len(),
                blunt,
                phi_mark,
                holds: !blunt || m.m_star.len() as u64 == phi_mark,
            }
        })
        .collect();
    let all_hold = entries.iter().all(|e| e.holds);
    Ok(PhiReport { w, omega: omega.to_vec(), entries, all_hold })
}

/// Coordinates in which `b` becomes `(h_i) -> sum coeffs[i] * h_i` on cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rescaling {
    /// Component types, largest rank first.
    pub components: Vec<FiniteType>,
    pub moduli: Vec<u64>,
    pub target_modulus: u64,
    /// Generator of each component used as `1`.
    pub units: Vec<u64>,
    pub target_unit: u64,
    /// `M*` in the new coordinates, sorted.
    pub witnesses: Vec<Vec<u64>>,
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

/// Searches unit rescalings of the components of `S - {s}` (largest rank first)
/// and of `Omega'(J)` turning `b` into the weighted sum with `coeffs`.
pub fn rescaled_witnesses(w: FiniteType, omega: &[u64], s: usize, coeffs: &[u64]) -> Result<Option<Rescaling>> {
    let o = omega_of_deletion(w, s)?;
    let groups = o.component_groups();
    if coeffs.len() != groups.len() {
        return Err(Error::InvalidArgument(format!("{} coefficients for {} components", coeffs.len(), groups.len())));
    }
    let target = o.group().moduli().to_vec();
    let [big_n] = target[..] else {
        return Err(Error::InvalidArgument("Omega'(J) is not cyclic".into()));
    };
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(o.components()[i].ty.rank()));
    let mut moduli = Vec::new();
    let mut images = Vec::new();
    for &i in &order {
        let [n] = groups[i].group().moduli()[..] else {
            return Err(Error::InvalidArgument(format!("component {} has a non-cyclic group", o.components()[i].ty)));
        };
        let mut parts: Vec<Element> = groups.iter().map(|g| g.group().identity()).collect();
        parts[i] = vec![1];
        moduli.push(n);
        images.push(o.map_b().apply(&o.join(&parts))[0]);
    }
    let units = |m: u64| (1..m.max(2)).filter(move |u| u.gcd(&m) == 1 || m == 1);
    for v in units(big_n) {
        let mut chosen = Vec::new();
        for (k, (&n, &img)) in moduli.iter().zip(&images).enumerate() {
            let Some(u) = units(n).find(|u| (v * u % big_n * img) % big_n == coeffs[k] % big_n) else { break };
            chosen.push(u);
        }
        if chosen.len() != moduli.len() {
            continue;
        }
        let mut witnesses: Vec<Vec<u64>> = maximal_j(w, omega, s)?
            .m_star
            .iter()
            .map(|parts| {
                order
                    .iter()
                    .zip(&chosen)
                    .zip(&moduli)
                    .map(|((&i, &u), &n)| parts[i][0] * inverse_mod(u, n) % n)
                    .collect()
            })
            .collect();
        witnesses.sort();
        return Ok(Some(Rescaling {
            components: order.iter().map(|&i| o.components()[i].ty).collect(),
            moduli,
            target_modulus: big_n,
            units: chosen,
            target_unit: v,
            witnesses,
        }));
    }
    Ok(None)
}
