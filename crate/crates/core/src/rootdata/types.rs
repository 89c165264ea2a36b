use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    /// Smallest canonical rank, or the only ranks allowed for exceptional families.
    pub fn valid_ranks(self) -> &'static str {
        match self {
            Family::A => "n >= 1",
            Family::B | Family::C => "n >= 2",
            Family::D => "n >= 4",
            Family::E => "n in {6, 7, 8}",
            Family::F => "n = 4",
            Family::G => "n = 2",
        }
    }
}

/// Irreducible finite root system type in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteType {
    family: Family,
    rank: usize,
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            let hint = match family.is_classical() {
                true => format!(
                    "not canonical; normalizes to {}",
                    TypeExpr::normalize(family, rank as i64)?
                ),
                false => format!("valid ranks for {}: {}", family.letter(), family.valid_ranks()),
            };
            Err(Error::InvalidType { given: format!("{}{}", family.letter(), rank), hint })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Type of the dual root system: `B_n <-> C_n`, all others fixed.
    pub fn dual(self) -> Self {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        Self { family, rank: self.rank }
    }

    /// Name of the Weyl group, which does not see the difference between B and C.
    pub fn weyl_name(self) -> Self {
        match self.family {
            Family::C => Self { family: Family::B, rank: self.rank },
            _ => self,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Connection index `|P/Q|`.
    pub fn connection_index(self) -> u64 {
        match self.family {
            Family::A => self.rank as u64 + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => [3, 2, 1][self.rank - 6],
            Family::F | Family::G => 1,
        }
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn degrees(self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => (1..n).map(|i| 2 * i).chain(std::iter::once(n)).collect(),
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl fmt::Debug for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FiniteType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_family_rank(s: &str) -> Option<(Family, i64)> {
    let s = s.trim();
    let mut chars = s.chars();
    let family = Family::from_letter(chars.next()?)?;
    let rest = chars.as_str().trim_start_matches('_');
    let rest = rest.strip_suffix("^a").unwrap_or(rest);
    Some((family, rest.parse().ok()?))
}

impl FromStr for FiniteType {
    type Err = Error;

    /// Accepts `E8`, `E_8`, `e8`, and an optional `^a` suffix.
    fn from_str(s: &str) -> Result<Self> {
        let (family, rank) = parse_family_rank(s).ok_or_else(|| Error::InvalidType {
            given: s.to_string(),
            hint: "expected a family letter A-G followed by a rank, e.g. E8 or C_4".into(),
        })?;
        if rank < 0 {
            return Err(Error::InvalidType { given: s.into(), hint: "negative rank".into() });
        }
        FiniteType::new(family, rank as usize)
    }
}

/// Product of irreducible types; the empty product is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TypeExpr(Vec<FiniteType>);

impl TypeExpr {
    pub fn trivial() -> Self {
        Self(Vec::new())
    }

    pub fn from_factors(factors: Vec<FiniteType>) -> Self {
        Self(factors)
    }

    /// Normalizes a possibly degenerate type symbol using the alias table
    /// `D0=D1=B0=A0=A-1={1}`, `D2=A1xA1`, `D3=A3`, `B1=C1=A1`.
    pub fn normalize(family: Family, rank: i64) -> Result<Self> {
        let a = |n: usize| FiniteType { family: Family::A, rank: n };
        let factors = match (family, rank) {
            (_, r) if r < -1 => {
                return Err(Error::InvalidType {
                    given: format!("{}{}", family.letter(), rank),
                    hint: "rank below -1".into(),
                })
            }
            (Family::A, r) if r <= 0 => vec![],
            (Family::B | Family::C | Family::D, r) if r <= 0 => vec![],
            (Family::D, 1) => vec![],
            (Family::B | Family::C, 1) => vec![a(1)],
            (Family::D, 2) => vec![a(1), a(1)],
            (Family::D, 3) => vec![a(3)],
            (f, r) => vec![FiniteType::new(f, r as usize)?],
        };
        Ok(Self(factors))
    }

    pub fn factors(&self) -> &[FiniteType] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank()).sum()
    }

    pub fn product(&self, other: &TypeExpr) -> TypeExpr {
        let mut f = self.0.clone();
        f.extend_from_slice(&other.0);
        Self(f)
    }

    /// Sorted factor list; two expressions with equal sorted forms are the same type.
    pub fn sorted(&self) -> TypeExpr {
        let mut f = self.0.clone();
        f.sort_by(|a, b| b.rank().cmp(&a.rank()).then(a.family().cmp(&b.family())));
        Self(f)
    }

    /// Weyl-group level form: C factors read as B, then sorted.
    pub fn weyl_form(&self) -> TypeExpr {
        Self(self.0.iter().map(|t| t.weyl_name()).collect()).sorted()
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TypeExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for TypeExpr {
    type Err = Error;

    /// Parses `1`, `E8`, `A4xA4`, `D_0xB_3` (aliases normalized).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut out = TypeExpr::trivial();
        for part in s.split(['x', 'X', '*']) {
            let (family, rank) = parse_family_rank(part).ok_or_else(|| Error::InvalidType {
                given: part.to_string(),
                hint: "expected factors like A4 joined by x".into(),
            })?;
            out = out.product(&TypeExpr::normalize(family, rank)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_normalize() {
        let n = |f, r| TypeExpr::normalize(f, r).unwrap().to_string();
        assert_eq!(n(Family::D, 0), "1");
        assert_eq!(n(Family::D, 1), "1");
        assert_eq!(n(Family::D, 2), "A1xA1");
        assert_eq!(n(Family::D, 3), "A3");
        assert_eq!(n(Family::B, 0), "1");
        assert_eq!(n(Family::B, 1), "A1");
        assert_eq!(n(Family::C, 1), "A1");
        assert_eq!(n(Family::A, 0), "1");
        assert_eq!(n(Family::A, -1), "1");
        assert_eq!(n(Family::D, 5), "D5");
    }

    #[test]
    fn normalization_is_idempotent() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for r in -1..8 {
                let e = TypeExpr::normalize(f, r).unwrap();
                let again: TypeExpr = e.to_string().parse().unwrap();
                assert_eq!(again, e);
            }
        }
    }

    #[test]
    fn non_canonical_rejected_with_hint() {
        let err = FiniteType::new(Family::D, 3).unwrap_err();
        match err {
            Error::InvalidType { hint, .. } => assert!(hint.contains("A3"), "{hint}"),
            _ => panic!(),
        }
        assert!("E9".parse::<FiniteType>().is_err());
        assert!("A0".parse::<FiniteType>().is_err());
    }

    #[test]
    fn parsing_forms() {
        assert_eq!("E_8".parse::<FiniteType>().unwrap().to_string(), "E8");
        assert_eq!("c4^a".parse::<FiniteType>().unwrap().to_string(), "C4");
        let e: TypeExpr = "A5xA2xA1".parse().unwrap();
        assert_eq!(e.rank(), 8);
    }

    #[test]
    fn dual_types() {
        let t = |s: &str| s.parse::<FiniteType>().unwrap();
        assert_eq!(t("B5").dual(), t("C5"));
        assert_eq!(t("C5").dual(), t("B5"));
        assert_eq!(t("D6").dual(), t("D6"));
        assert_eq!(t("E7").dual(), t("E7"));
    }
}
