//! Parsing of `--type`, `--rank` and `--omega`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use sharpblunt::ablat::Element;
use sharpblunt::fungroup::{omega_prime, underline_subgroup};
use sharpblunt::rootdata::{Family, FiniteType};
use sharpblunt::triples::{omega_class, OmegaClass};

/// A command-line error that maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// Valid ranks per family, printed with rank errors.
pub fn validity_table() -> String {
    let mut out = String::from("valid types:\n");
    for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        out.push_str(&format!("  {}  {}\n", f.letter(), f.valid_ranks()));
    }
    out
}

/// Inclusive rank range, written `5` or `2..20`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRange(pub RangeInclusive<usize>);

impl FromStr for RankRange {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| UsageError(format!("bad rank '{s}'")));
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return usage(format!("empty rank range '{s}'"));
                }
                Ok(RankRange(a..=b))
            }
            None => {
                let n = num(s)?;
                Ok(RankRange(n..=n))
            }
        }
    }
}

/// Expands `--type` and `--rank` into concrete types.
///
/// `--type` is either a full name (`E8`, `C5`) or a bare family letter, in
/// which case `--rank` is required.
pub fn resolve_types(ty: &str, rank: Option<&RankRange>, max_rank: usize) -> Result<Vec<FiniteType>, UsageError> {
    let ty = ty.trim();
    let mut chars = ty.chars();
    let Some(family) = chars.next().and_then(|c| Family::from_letter(c.to_ascii_uppercase())) else {
        return usage(format!("unknown type '{ty}'\n{}", validity_table()));
    };
    let rest: String = chars.collect();
    let ranks: Vec<usize> = match (rest.is_empty(), rank) {
        (false, None) => match rest.parse() {
            Ok(n) => vec![n],
            Err(_) => return usage(format!("unknown type '{ty}'\n{}", validity_table())),
        },
        (false, Some(_)) => return usage("give the rank either in --type or in --rank, not both"),
        (true, Some(r)) => r.0.clone().collect(),
        (true, None) => return usage(format!("--type {ty} needs --rank")),
    };
    if let Some(&n) = ranks.iter().find(|&&n| n > max_rank) {
        return usage(format!("rank {n} exceeds --max-rank {max_rank}"));
    }
    let mut out = Vec::new();
    for n in ranks {
        match FiniteType::new(family, n) {
            Ok(t) => out.push(t),
            // a range may run past the exceptional ranks or start below the
            // smallest valid one; a single rank must be valid
            Err(_) if rank.is_some_and(|r| r.0.start() != r.0.end()) => {}
            Err(_) => return usage(format!("{}{n} is not a valid type\n{}", family.letter(), validity_table())),
        }
    }
    if out.is_empty() {
        return usage(format!("no valid type in the given range\n{}", validity_table()));
    }
    Ok(out)
}

/// Which elements of `Omega'` a query runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaSelector {
    All,
    Trivial,
    Nontrivial,
    Generator,
    InUnderline,
    NotInUnderline,
    Index(usize),
}

impl FromStr for OmegaSelector {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        Ok(match s {
            "all" => OmegaSelector::All,
            "trivial" => OmegaSelector::Trivial,
            "nontrivial" => OmegaSelector::Nontrivial,
            "generator" => OmegaSelector::Generator,
            "in-underline" => OmegaSelector::InUnderline,
            "not-in-underline" => OmegaSelector::NotInUnderline,
            _ => match s.strip_prefix("index:").map(str::parse) {
                Some(Ok(k)) => OmegaSelector::Index(k),
                _ => {
                    return usage(format!(
                        "bad omega selector '{s}' (all, trivial, nontrivial, generator, in-underline, not-in-underline, index:k)"
                    ))
                }
            },
        })
    }
}

/// One selected `omega` with its canonical index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedOmega {
    pub index: usize,
    pub element: Element,
    pub class: OmegaClass,
}

/// Elements of `Omega'(w)` picked by `sel`, in canonical order.
///
/// `w` is the type whose fundamental group acts: `W` for blunt data, the
/// dual of `W'` for sharp data. Both name the same group.
pub fn select_omegas(w: FiniteType, sel: OmegaSelector) -> Result<Vec<SelectedOmega>, UsageError> {
    let g = omega_prime(w);
    let all: Vec<SelectedOmega> = g
        .elements()
        .into_iter()
        .enumerate()
        .map(|(index, element)| {
            let class = omega_class(&g, &element);
            SelectedOmega { index, element, class }
        })
        .collect();
    let is_d = w.family() == Family::D;
    let picked: Vec<SelectedOmega> = match sel {
        OmegaSelector::All => all,
        OmegaSelector::Trivial => all.into_iter().filter(|o| g.is_identity(&o.element)).collect(),
        OmegaSelector::Nontrivial => all.into_iter().filter(|o| !g.is_identity(&o.element)).collect(),
        OmegaSelector::Generator => {
            if !g.group().is_cyclic() {
                return usage(format!("Omega' of {w} is not cyclic; 'generator' does not apply"));
            }
            all.into_iter().filter(|o| g.group().is_generator(&o.element)).collect()
        }
        OmegaSelector::InUnderline | OmegaSelector::NotInUnderline if !is_d => {
            return usage(format!("the underline subgroup is defined for type D only, not {w}"));
        }
        OmegaSelector::InUnderline | OmegaSelector::NotInUnderline => {
            let un = underline_subgroup(&g).map_err(|e| UsageError(e.to_string()))?;
            let want = sel == OmegaSelector::InUnderline;
            all.into_iter().filter(|o| un.contains(&o.element) == want).collect()
        }
        OmegaSelector::Index(k) => {
            let n = all.len();
            match all.into_iter().nth(k) {
                Some(o) => vec![o],
                None => return usage(format!("index:{k} out of range, Omega' of {w} has {n} elements")),
            }
        }
    };
    Ok(picked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("2..20".parse::<RankRange>().unwrap().0, 2..=20);
        assert_eq!("7".parse::<RankRange>().unwrap().0, 7..=7);
        assert!("9..3".parse::<RankRange>().is_err());
        assert!("x".parse::<RankRange>().is_err());
    }

    #[test]
    fn types() {
        let v = resolve_types("C", Some(&"1..4".parse().unwrap()), 64).unwrap();
        assert_eq!(v.iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["C2", "C3", "C4"]);
        assert_eq!(resolve_types("E8", None, 64).unwrap().len(), 1);
        assert!(resolve_types("E9", None, 64).is_err());
        assert!(resolve_types("B", None, 64).is_err());
        assert!(resolve_types("A", Some(&"70".parse().unwrap()), 64).is_err());
    }

    #[test]
    fn selectors() {
        let a5: FiniteType = "A5".parse().unwrap();
        assert_eq!(select_omegas(a5, OmegaSelector::Generator).unwrap().len(), 2);
        assert_eq!(select_omegas(a5, OmegaSelector::All).unwrap().len(), 6);
        let d6: FiniteType = "D6".parse().unwrap();
        assert!(select_omegas(d6, OmegaSelector::Generator).is_err());
        assert_eq!(select_omegas(d6, OmegaSelector::InUnderline).unwrap().len(), 2);
        assert_eq!(select_omegas(d6, OmegaSelector::NotInUnderline).unwrap().len(), 2);
        assert!(select_omegas(a5, OmegaSelector::InUnderline).is_err());
        assert!(select_omegas(a5, OmegaSelector::Index(6)).is_err());
        assert!("index:x".parse::<OmegaSelector>().is_err());
    }
}
