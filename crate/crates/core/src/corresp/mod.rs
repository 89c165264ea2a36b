//! The maps from blunt classes to sharp classes, the multisets `theta`, and
//! the counting checks built on them.

mod count;
mod embed;
mod param;

pub use count::{phi, phi_count_report, rescaled_witnesses, PhiEntry, PhiReport, Rescaling};
pub use embed::{class_order_embedding, ClassEmbedding, ClassImage};
pub use param::{check_f, f_inverse, f_param, FCheck, FImage, ParamCase, Side, ALL_CASES};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ablat::Element;
use crate::error::{Error, Result};
use crate::rootdata::{affine_diagram, Family, FiniteType};
use crate::triples::{enumerate_blunt, enumerate_sharp, is_strictly_blunt, is_strictly_sharp, BluntTriple, Mode, SharpTriple};

/// `iota([J])`, the sharp class a blunt class maps to.
pub fn iota(b: &BluntTriple) -> Result<SharpTriple> {
    let wp = b.w.dual();
    let xs = enumerate_sharp(wp, &b.omega, Mode::Normative)?;
    let d = affine_diagram(b.w);
    if d.boc() >= 3 || b.w.family() == Family::A {
        return match xs.as_slice() {
            [only] => Ok(only.clone()),
            _ => Err(Error::Classification(format!("{wp}^a has {} sharp classes, expected one", xs.len()))),
        };
    }
    let case = ParamCase::of_blunt(b)
        .ok_or_else(|| Error::Classification(format!("{}^a case {} has no parameter case", b.w, b.case)))?;
    let (x, y) = b.params.ok_or_else(|| Error::Classification("classical blunt triple without parameters".into()))?;
    let im = f_param(case, x, y)?;
    xs.into_iter().find(|s| s.params == Some((im.t, im.r))).ok_or_else(|| {
        Error::Classification(format!("{}^a ({x},{y}) maps to ({},{}) which is not sharp for {wp}^a", b.w, im.t, im.r))
    })
}

/// One element of `theta`, with an ordinal to tell repeated values apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaEntry {
    pub value: u32,
    /// 1 for the first occurrence of `value`, 2 for the second, ...
    pub tag: u32,
    /// Deleted node of the blunt class that produced this entry.
    pub deleted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaMultiset {
    Values { entries: Vec<ThetaEntry> },
    /// A single number, 1 or 2; which one is not determined.
    OneOrTwo,
}

impl ThetaMultiset {
    pub fn len(&self) -> usize {
        match self {
            ThetaMultiset::Values { entries } => entries.len(),
            ThetaMultiset::OneOrTwo => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted values, `None` when unresolved.
    pub fn sorted_values(&self) -> Option<Vec<u32>> {
        match self {
            ThetaMultiset::Values { entries } => {
                let mut v: Vec<u32> = entries.iter().map(|e| e.value).collect();
                v.sort_unstable();
                Some(v)
            }
            ThetaMultiset::OneOrTwo => None,
        }
    }
}

impl std::fmt::Display for ThetaMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaMultiset::Values { entries } => {
                let parts: Vec<String> = entries.iter().map(|e| e.value.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            ThetaMultiset::OneOrTwo => write!(f, "{{1 or 2}}"),
        }
    }
}

fn tag_entries(blunt: &[BluntTriple]) -> Vec<ThetaEntry> {
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    blunt
        .iter()
        .map(|b| {
            let tag = seen.entry(b.mark).or_insert(0);
            *tag += 1;
            ThetaEntry { value: b.mark, tag: *tag, deleted: b.deleted }
        })
        .collect()
}

/// `theta(W', omega)`.
pub fn theta(w_prime: FiniteType, omega: &[u64]) -> Result<ThetaMultiset> {
    let w = w_prime.dual();
    if affine_diagram(w).boc() <= 2 {
        crate::triples::sharp_group(w_prime)
            .contains(omega)
            .then_some(ThetaMultiset::OneOrTwo)
            .ok_or_else(|| Error::BadOmega(omega.to_vec()))
    } else {
        Ok(ThetaMultiset::Values { entries: tag_entries(&enumerate_blunt(w, omega)?) })
    }
}

/// One row of `iota~`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IotaTildeRow {
    pub blunt: BluntTriple,
    pub sharp: SharpTriple,
    /// `None` when `theta` is the unresolved singleton.
    pub m: Option<ThetaEntry>,
}

/// A blunt class whose `f`-image is not on the sharp list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unmapped {
    pub blunt: BluntTriple,
    pub case: ParamCase,
    pub image: FImage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IotaTilde {
    pub w: FiniteType,
    pub omega: Element,
    pub rows: Vec<IotaTildeRow>,
    pub unmapped: Vec<Unmapped>,
    pub x_size: usize,
    pub theta: ThetaMultiset,
    pub injective: bool,
    pub surjective: bool,
}

impl IotaTilde {
    pub fn is_bijective(&self) -> bool {
        self.unmapped.is_empty() && self.injective && self.surjective
    }
}

/// `[J] -> (iota[J], m_[J])` for all blunt classes of `(W, omega)`.
pub fn iota_tilde(w: FiniteType, omega: &[u64]) -> Result<IotaTilde> {
    let blunt = enumerate_blunt(w, omega)?;
    let xs = enumerate_sharp(w.dual(), omega, Mode::Normative)?;
    let theta = theta(w.dual(), omega)?;
    let tags = tag_entries(&blunt);
    let resolved = matches!(theta, ThetaMultiset::Values { .. });
    let mut rows = Vec::new();
    let mut unmapped = Vec::new();
    for (b, tag) in blunt.into_iter().zip(tags) {
        match iota(&b) {
            Ok(sharp) => rows.push(IotaTildeRow { blunt: b, sharp, m: resolved.then_some(tag) }),
            Err(Error::Classification(_)) if ParamCase::of_blunt(&b).is_some() => {
                let case = ParamCase::of_blunt(&b).expect("checked");
                let (x, y) = b.params.expect("classical");
                let image = f_param(case, x, y)?;
                unmapped.push(Unmapped { blunt: b, case, image });
            }
            Err(e) => return Err(e),
        }
    }
    let keys: Vec<(Vec<usize>, Option<(u32, u32)>)> =
        rows.iter().map(|r| (r.sharp.i.clone(), r.m.as_ref().map(|m| (m.value, m.tag)))).collect();
    let mut uniq = keys.clone();
    uniq.sort();
    uniq.dedup();
    let injective = uniq.len() == keys.len();
    let surjective = uniq.len() == xs.len() * theta.len();
    Ok(IotaTilde { w, omega: omega.to_vec(), rows, unmapped, x_size: xs.len(), theta, injective, surjective })
}

/// Every class of `X(W', omega)` is hit by some blunt class.
pub fn iota_surjective(w: FiniteType, omega: &[u64]) -> Result<bool> {
    let xs = enumerate_sharp(w.dual(), omega, Mode::Normative)?;
    let mut hit: Vec<Vec<usize>> = enumerate_blunt(w, omega)?.iter().filter_map(|b| iota(b).ok()).map(|s| s.i).collect();
    hit.sort();
    hit.dedup();
    Ok(hit.len() == xs.len())
}

/// For a strictly blunt `(W, omega)`: `[S_0]` is blunt and its image is strictly sharp.
/// `None` when the pair is not strictly blunt.
pub fn strict_compatibility(w: FiniteType, omega: &[u64]) -> Result<Option<bool>> {
    if !is_strictly_blunt(w, omega)? {
        return Ok(None);
    }
    let s0: Vec<usize> = (1..=w.rank()).collect();
    let blunt = enumerate_blunt(w, omega)?;
    let Some(b) = blunt.iter().find(|b| b.j_orbit.contains(&s0)) else {
        return Ok(Some(false));
    };
    Ok(Some(is_strictly_sharp(&iota(b)?)))
}

#[cfg(test)]
mod tests;
