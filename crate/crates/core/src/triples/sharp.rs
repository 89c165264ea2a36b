use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use super::omega_class::{omega_class, OmegaClass};
use crate::ablat::Element;
use crate::error::{Error, Result};
use crate::fungroup::{omega_prime, OmegaGroup};
use crate::rootdata::{components_type, Family, FiniteType, NodePermutation, TypeExpr};
use crate::sharpfin::{is_sharp, is_sharp_irreducible, WeylPair};

/// Which enumeration of sharp triples to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Generated from the closed-form list.
    Normative,
    /// Every subset passing the defining conditions.
    Literal,
}

/// A sharp triple `(W', omega, [I])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpTriple {
    pub w_prime: FiniteType,
    pub omega: Element,
    pub omega_class: OmegaClass,
    /// Block of the closed-form list this triple belongs to, if any.
    pub case: Option<String>,
    /// Lexicographically least member of the orbit `[I]`.
    pub i: Vec<usize>,
    /// `S' - I` for that member.
    pub removed: Vec<usize>,
    pub i_orbit: Vec<Vec<usize>>,
    pub w_prime_i: TypeExpr,
    pub params: Option<(u64, u64)>,
}

pub fn isqrt_exact(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(x)).then_some(r)
}

pub(crate) fn norm(f: Family, r: i64) -> TypeExpr {
    TypeExpr::normalize(f, r).expect("alias table covers ranks >= -1")
}

/// `Omega'` acting on the nodes of `W'` itself.
pub fn sharp_group(w_prime: FiniteType) -> Arc<OmegaGroup> {
    omega_prime(w_prime.dual())
}

struct Candidate {
    case: &'static str,
    removed: Vec<usize>,
    expected: TypeExpr,
    params: Option<(u64, u64)>,
}

/// All `(t, r)` with `t` in `t0 + step*N`, `r` odd `>= r0`, `t^2 + r^2 = total`.
fn pairs(total: u64, t0: u64, step: usize, r0: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for t in (t0..).step_by(step).take_while(|t| t * t <= total) {
        if let Some(r) = isqrt_exact(total - t * t) {
            if r >= r0 && r % 2 == 1 {
                out.push((t, r));
            }
        }
    }
    out
}

fn candidates(wp: FiniteType, g: &OmegaGroup, omega: &[u64]) -> Vec<Candidate> {
    let n = wp.rank() as u64;
    let nn = n as usize;
    let class = omega_class(g, omega);
    let trivial = class.is_trivial();
    let one = |case, removed: Vec<usize>, ty: FiniteType| Candidate {
        case,
        removed,
        expected: TypeExpr::from_factors(vec![ty]),
        params: None,
    };
    let e = |r| FiniteType::new(Family::E, r).expect("E");
    let d4 = FiniteType::new(Family::D, 4).expect("D4");
    let mut out = Vec::new();
    match (wp.family(), n) {
        (Family::E, 8) if trivial => out.push(one("a", vec![0], wp)),
        (Family::E, 7) if trivial => out.push(one("b'", vec![0], wp)),
        (Family::E, 7) => out.push(one("b", vec![0, 7], e(6))),
        (Family::E, 6) if trivial => out.push(one("c'", vec![0], wp)),
        (Family::E, 6) => out.push(one("c", vec![0, 1, 6], d4)),
        (Family::F, _) => out.push(one("d", vec![0], wp)),
        (Family::G, _) => out.push(one("e", vec![0], wp)),
        (Family::A, _) => {
            if g.group().is_generator(omega) {
                out.push(Candidate {
                    case: "f",
                    removed: (0..=nn).collect(),
                    expected: TypeExpr::trivial(),
                    params: None,
                });
            }
        }
        (Family::B, _) => {
            let (case, t0, r0) = if trivial { ("g", 0, 1) } else { ("g'", 2, 3) };
            for (t, r) in pairs(4 * n + 1, t0, 4, r0) {
                let a = t * t / 4;
                let removed = match a {
                    0 => vec![0],
                    1 => vec![0, 1],
                    a => vec![a as usize],
                };
                let expected = norm(Family::D, a as i64).product(&norm(Family::B, ((r * r - 1) / 4) as i64));
                out.push(Candidate { case, removed, expected, params: Some((t, r)) });
            }
        }
        (Family::C, _) if trivial => {
            for (t, r) in pairs(4 * n + 2, 1, 2, 1).into_iter().filter(|(t, r)| t >= r) {
                let a = (t * t - 1) / 4;
                let expected = norm(Family::B, a as i64).product(&norm(Family::B, ((r * r - 1) / 4) as i64));
                out.push(Candidate { case: "h", removed: vec![a as usize], expected, params: Some((t, r)) });
            }
        }
        (Family::C, _) => {
            for (t, r) in pairs(8 * n + 5, 2, 4, 3) {
                let a = (t * t - 4) / 16;
                let c = (r * r - 9) / 8;
                let removed: BTreeSet<usize> = [a as usize, (n - a) as usize].into();
                let expected = norm(Family::B, a as i64)
                    .product(&norm(Family::B, a as i64))
                    .product(&norm(Family::A, c as i64));
                out.push(Candidate { case: "h'", removed: removed.into_iter().collect(), expected, params: Some((t, r)) });
            }
        }
        (Family::D, _) => match class {
            OmegaClass::Trivial | OmegaClass::InUnderline => {
                let (case, t0) = if trivial { ("i", 0) } else { ("i'", 2) };
                for t in (t0..).step_by(4).take_while(|t| t * t <= 4 * n) {
                    let Some(r) = isqrt_exact(4 * n - t * t) else { continue };
                    if r > t || r % 4 != t0 {
                        continue;
                    }
                    let (a, b) = (t * t / 4, r * r / 4);
                    let removed = match b {
                        0 => vec![0],
                        1 => vec![nn - 1, nn],
                        _ => vec![a as usize],
                    };
                    let expected = norm(Family::D, a as i64).product(&norm(Family::D, b as i64));
                    out.push(Candidate { case, removed, expected, params: Some((t, r)) });
                }
            }
            _ => {
                for (t, r) in pairs(8 * n + 1, 0, 4, 1) {
                    if (t / 4) % 2 != n % 2 {
                        continue;
                    }
                    let a = t * t / 16;
                    let removed: Vec<usize> = match a {
                        0 => {
                            let mut v = vec![0, g.action(omega).apply(0)];
                            v.sort_unstable();
                            v
                        }
                        1 => vec![0, 1, nn - 1, nn],
                        a => {
                            let s: BTreeSet<usize> = [a as usize, nn - a as usize].into();
                            s.into_iter().collect()
                        }
                    };
                    let expected = norm(Family::D, a as i64)
                        .product(&norm(Family::D, a as i64))
                        .product(&norm(Family::A, ((r * r) as i64 - 9) / 8));
                    out.push(Candidate { case: "i''", removed, expected, params: Some((t, r)) });
                }
            }
        },
        _ => {}
    }
    out
}

fn check_omega(g: &OmegaGroup, omega: &[u64]) -> Result<()> {
    if g.contains(omega) {
        Ok(())
    } else {
        Err(Error::BadOmega(omega.to_vec()))
    }
}

/// Builds the triple for `I = S' - removed`, checking the defining conditions.
fn assemble(
    wp: FiniteType,
    g: &OmegaGroup,
    omega: &[u64],
    removed: &[usize],
    case: Option<String>,
    params: Option<(u64, u64)>,
) -> Result<Option<SharpTriple>> {
    let d = g.diagram();
    let i: Vec<usize> = d.nodes().filter(|s| !removed.contains(s)).collect();
    let action = g.action(omega);
    if !action.stabilizes(&i) {
        return Ok(None);
    }
    let orbit = g.set_orbit(&[removed[0]]).concat();
    if !removed.iter().all(|s| orbit.contains(s)) {
        return Ok(None);
    }
    let comps = d.subdiagram(&i);
    let pair = WeylPair::from_components(&comps, action)?;
    if !is_sharp(&pair).unwrap_or(false) {
        return Ok(None);
    }
    let i_orbit = g.set_orbit(&i);
    let rep = i_orbit[0].clone();
    let rep_removed: Vec<usize> = d.nodes().filter(|s| !rep.contains(s)).collect();
    Ok(Some(SharpTriple {
        w_prime: wp,
        omega: omega.to_vec(),
        omega_class: omega_class(g, omega),
        case,
        i: rep,
        removed: rep_removed,
        i_orbit,
        w_prime_i: components_type(&comps).sorted(),
        params,
    }))
}

fn normative(wp: FiniteType, omega: &[u64]) -> Result<Vec<SharpTriple>> {
    let g = sharp_group(wp);
    check_omega(&g, omega)?;
    let mut out = Vec::new();
    for c in candidates(wp, &g, omega) {
        let tr = assemble(wp, &g, omega, &c.removed, Some(c.case.to_string()), c.params)?.ok_or_else(|| {
            Error::Classification(format!("{wp}^a, omega {omega:?}: listed subset {:?} fails the definition", c.removed))
        })?;
        if tr.w_prime_i.weyl_form() != c.expected.weyl_form() {
            return Err(Error::Classification(format!(
                "{wp}^a case {}: components {} differ from {}",
                c.case, tr.w_prime_i, c.expected
            )));
        }
        out.push(tr);
    }
    out.sort_by(|a, b| a.i.cmp(&b.i));
    Ok(out)
}

/// Removed sets for the cycle `A_n^a`: unions of rotation orbits whose gaps
/// all carry a sharp chain.
fn cyclic_removals(n: usize, g: &OmegaGroup, omega: &[u64]) -> Vec<Vec<usize>> {
    let size = n + 1;
    let shift = g.action(omega).apply(0);
    // orbits of the rotation are the residues mod `period`
    let period = if shift == 0 { size } else { num_integer::gcd(shift, size) };
    let ok: Vec<bool> = (0..period)
        .map(|m| {
            m == 0 || {
                let a = FiniteType::new(Family::A, m).expect("A");
                is_sharp_irreducible(a, &NodePermutation::identity(m))
            }
        })
        .collect();
    fn extend(first: usize, last: usize, period: usize, ok: &[bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if ok[period - 1 - last + first] {
            out.push(chosen.clone());
        }
        for next in last + 1..period {
            if ok[next - last - 1] {
                chosen.push(next);
                extend(first, next, period, ok, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut residues = Vec::new();
    for first in 0..period {
        extend(first, first, period, &ok, &mut vec![first], &mut residues);
    }
    residues
        .into_iter()
        .map(|res| (0..size).filter(|s| res.contains(&(s % period))).collect())
        .collect()
}

fn literal(wp: FiniteType, omega: &[u64]) -> Result<Vec<SharpTriple>> {
    let g = sharp_group(wp);
    check_omega(&g, omega)?;
    let normative_cases: Vec<SharpTriple> = normative(wp, omega)?;
    let action = g.action(omega);
    let mut removals: Vec<Vec<usize>> = Vec::new();
    if wp.family() == Family::A {
        removals = cyclic_removals(wp.rank(), &g, omega);
    } else {
        for orbit in g.node_orbits() {
            let pieces: Vec<Vec<usize>> = {
                let mut seen = Vec::new();
                let mut out = Vec::new();
                for &s in &orbit {
                    if seen.contains(&s) {
                        continue;
                    }
                    let mut cyc = vec![s];
                    let mut x = action.apply(s);
                    while x != s {
                        cyc.push(x);
                        x = action.apply(x);
                    }
                    seen.extend(cyc.iter().copied());
                    out.push(cyc);
                }
                out
            };
            for mask in 1u32..(1 << pieces.len()) {
                let mut r: Vec<usize> =
                    (0..pieces.len()).filter(|k| mask >> k & 1 == 1).flat_map(|k| pieces[k].clone()).collect();
                r.sort_unstable();
                removals.push(r);
            }
        }
    }
    let mut out: Vec<SharpTriple> = Vec::new();
    for r in removals {
        if let Some(mut tr) = assemble(wp, &g, omega, &r, None, None)? {
            if out.iter().any(|o| o.i == tr.i) {
                continue;
            }
            if let Some(n) = normative_cases.iter().find(|n| n.i == tr.i) {
                tr.case = n.case.clone();
                tr.params = n.params;
            } else {
                tr.params = super::params::sharp_params_loose(&tr);
            }
            out.push(tr);
        }
    }
    out.sort_by(|a, b| a.i.cmp(&b.i));
    Ok(out)
}

/// Sharp triples of `W'` for one `omega` in `Omega'`.
pub fn enumerate_sharp(w_prime: FiniteType, omega: &[u64], mode: Mode) -> Result<Vec<SharpTriple>> {
    match mode {
        Mode::Normative => normative(w_prime, omega),
        Mode::Literal => literal(w_prime, omega),
    }
}

/// `S' - I` is a single orbit, and classical parameters are adjacent.
pub fn is_strictly_sharp(tr: &SharpTriple) -> bool {
    let g = sharp_group(tr.w_prime);
    let orbit = g.set_orbit(&[tr.removed[0]]).concat();
    if orbit != tr.removed {
        return false;
    }
    match tr.w_prime.family() {
        Family::B | Family::C | Family::D => tr.params.is_some_and(|(t, r)| t.abs_diff(r) <= 1),
        _ => true,
    }
}

type BluntKey = (FiniteType, Element);
static STRICT: Lazy<Mutex<HashMap<BluntKey, Option<SharpTriple>>>> = Lazy::new(Default::default);

/// The strictly sharp triple of the dual side, if any (unique when present).
pub fn strictly_blunt_witness(w: FiniteType, omega: &[u64]) -> Result<Option<SharpTriple>> {
    let key = (w, omega.to_vec());
    if let Some(v) = STRICT.lock().expect("cache").get(&key) {
        return Ok(v.clone());
    }
    let mut found: Vec<SharpTriple> =
        enumerate_sharp(w.dual(), omega, Mode::Normative)?.into_iter().filter(is_strictly_sharp).collect();
    if found.len() > 1 {
        return Err(Error::Classification(format!("{w}^a, omega {omega:?}: {} strictly sharp triples", found.len())));
    }
    let v = found.pop();
    STRICT.lock().expect("cache").insert(key, v.clone());
    Ok(v)
}

pub fn is_strictly_blunt(w: FiniteType, omega: &[u64]) -> Result<bool> {
    Ok(strictly_blunt_witness(w, omega)?.is_some())
}

/// The value `x` of the strictly sharp list for a classical strictly sharp triple.
pub fn strict_x(tr: &SharpTriple) -> Option<u64> {
    let (t, r) = tr.params?;
    match tr.case.as_deref()? {
        "h" | "i" | "i'" => Some(t),
        "g" | "g'" | "h'" | "i''" => Some(t + r),
        _ => None,
    }
}

/// Triples found by one enumeration mode and not the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub w_prime: FiniteType,
    pub omega: Element,
    pub omega_class: OmegaClass,
    pub literal_only: Vec<SharpTriple>,
    pub normative_only: Vec<SharpTriple>,
}

/// Compares the two modes for one `(W', omega)`; `None` when they agree.
pub fn discrepancy(w_prime: FiniteType, omega: &[u64]) -> Result<Option<Discrepancy>> {
    let lit = enumerate_sharp(w_prime, omega, Mode::Literal)?;
    let nor = enumerate_sharp(w_prime, omega, Mode::Normative)?;
    let literal_only: Vec<SharpTriple> = lit.iter().filter(|l| !nor.iter().any(|n| n.i == l.i)).cloned().collect();
    let normative_only: Vec<SharpTriple> = nor.iter().filter(|n| !lit.iter().any(|l| l.i == n.i)).cloned().collect();
    if literal_only.is_empty() && normative_only.is_empty() {
        return Ok(None);
    }
    Ok(Some(Discrepancy {
        w_prime,
        omega: omega.to_vec(),
        omega_class: omega_class(&sharp_group(w_prime), omega),
        literal_only,
        normative_only,
    }))
}
