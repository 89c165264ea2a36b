//! Sharp and blunt triples, their strict versions and parameters.

mod blunt;
mod omega_class;
mod params;
mod sharp;

pub use blunt::{
    blunt_params_of, enumerate_blunt, maximal_j, maximal_j_report, omega_of_deletion, BluntTriple, MaximalJ,
};
pub use omega_class::{omega_class, OmegaClass};
pub use params::{blunt_params, sharp_params};
pub use sharp::{
    discrepancy, enumerate_sharp, is_strictly_blunt, is_strictly_sharp, isqrt_exact, sharp_group, strict_x,
    strictly_blunt_witness, Discrepancy, Mode, SharpTriple,
};

use serde::Serialize;

/// Either kind of triple, for `params_of`.
pub enum Triple<'a> {
    Sharp(&'a SharpTriple),
    Blunt(&'a BluntTriple),
}

/// `(t, r)` of a sharp triple or `(x, y)` of a blunt one.
pub fn params_of(t: Triple<'_>) -> crate::Result<(u64, u64)> {
    match t {
        Triple::Sharp(s) => sharp_params(s),
        Triple::Blunt(b) => blunt_params_of(b),
    }
}

/// Outcome of scanning the congruence equivalence used for case `i''`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma27Report {
    pub holds: bool,
    pub checked: u64,
    pub counterexample: Option<(u64, u64)>,
}

/// For `t` in `4N`, odd `r` and integral `n = (t^2+r^2-1)/8`:
/// `t/4 = n mod 2` iff `t+r = +-1 mod 8`.
pub fn lemma27_equivalence(t_max: u64, r_max: u64) -> Lemma27Report {
    let mut checked = 0;
    for t in (0..=t_max).step_by(4) {
        for r in (1..=r_max).step_by(2) {
            let s = t * t + r * r - 1;
            if s % 8 != 0 {
                continue;
            }
            checked += 1;
            let n = s / 8;
            let left = (t / 4) % 2 == n % 2;
            let right = matches!((t + r) % 8, 1 | 7);
            if left != right {
                return Lemma27Report { holds: false, checked, counterexample: Some((t, r)) };
            }
        }
    }
    Lemma27Report { holds: true, checked, counterexample: None }
}

#[cfg(test)]
mod tests;
