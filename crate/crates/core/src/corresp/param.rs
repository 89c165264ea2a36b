use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::Family;
use crate::triples::BluntTriple;

/// The seven parameter cases of the bijection `f`, named as in the f-map
/// section: the blunt side is the first family, the sharp side its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamCase {
    /// `Y(B) -> X(C)`, `omega = 1`
    G,
    /// `Y(B) -> X(C)`, `omega != 1`
    GPrime,
    /// `Y(C) -> X(B)`, `omega = 1`
    H,
    /// `Y(C) -> X(B)`, `omega != 1`
    HPrime,
    I,
    IPrime,
    IDoublePrime,
}

pub const ALL_CASES: [ParamCase; 7] = [
    ParamCase::G,
    ParamCase::GPrime,
    ParamCase::H,
    ParamCase::HPrime,
    ParamCase::I,
    ParamCase::IPrime,
    ParamCase::IDoublePrime,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Greater,
    Less,
    NotApplicable,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Greater => ">",
            Side::Less => "<",
            Side::NotApplicable => "n/a",
        })
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn pm1_mod8(v: u64) -> bool {
    matches!(v % 8, 1 | 7)
}

impl ParamCase {
    pub fn label(self) -> &'static str {
        match self {
            ParamCase::G => "g",
            ParamCase::GPrime => "g'",
            ParamCase::H => "h",
            ParamCase::HPrime => "h'",
            ParamCase::I => "i",
            ParamCase::IPrime => "i'",
            ParamCase::IDoublePrime => "i''",
        }
    }

    pub fn blunt_family(self) -> Family {
        match self {
            ParamCase::G | ParamCase::GPrime => Family::B,
            ParamCase::H | ParamCase::HPrime => Family::C,
            _ => Family::D,
        }
    }

    /// The case a classical blunt triple falls in, from its list label.
    pub fn of_blunt(b: &BluntTriple) -> Option<ParamCase> {
        Some(match (b.w.family(), b.case.as_str()) {
            (Family::B, "h") => ParamCase::G,
            (Family::B, "h'") => ParamCase::GPrime,
            (Family::C, "g") => ParamCase::H,
            (Family::C, "g'") => ParamCase::HPrime,
            (Family::D, "i") => ParamCase::I,
            (Family::D, "i'") => ParamCase::IPrime,
            (Family::D, "i''") => ParamCase::IDoublePrime,
            _ => return None,
        })
    }

    /// `(x, y)` lies in `Y`. For the D cases `y = 0` is allowed, as in the blunt list.
    pub fn in_y(self, x: u64, y: u64) -> bool {
        let odd = |v: u64| v % 2 == 1;
        match self {
            ParamCase::G => x % 2 == 0 && odd(y),
            ParamCase::GPrime => pm1_mod8(x) && matches!(y % 8, 3 | 5),
            ParamCase::H => odd(x) && odd(y) && x >= y && ((x + y) % 8 == 0 || (x - y) % 8 == 0),
            ParamCase::HPrime => odd(x) && odd(y) && x >= y && ((x + y) % 8 == 4 || (x - y) % 8 == 4),
            ParamCase::I => x >= 2 && x % 2 == 0 && y % 2 == 0 && x >= y && x % 4 == y % 4,
            ParamCase::IPrime => x >= 2 && x % 2 == 0 && y % 2 == 0 && x >= y && x % 4 == (y + 2) % 4,
            ParamCase::IDoublePrime => pm1_mod8(x) && pm1_mod8(y) && x >= y,
        }
    }

    pub fn in_x(self, t: u64, r: u64) -> bool {
        let odd = |v: u64| v % 2 == 1;
        match self {
            ParamCase::G => odd(t) && odd(r) && t >= r,
            ParamCase::GPrime | ParamCase::HPrime => t % 4 == 2 && odd(r),
            ParamCase::H => t % 4 == 0 && odd(r),
            ParamCase::I => t % 4 == 0 && r % 4 == 0 && t >= r,
            ParamCase::IPrime => t % 4 == 2 && r % 4 == 2 && t >= r,
            ParamCase::IDoublePrime => t % 4 == 0 && odd(r) && pm1_mod8(t + r),
        }
    }

    /// Cases whose `X` set has no `t >= r` condition and use half-pairs.
    pub fn uses_half_pair(self) -> bool {
        matches!(self, ParamCase::GPrime | ParamCase::H | ParamCase::HPrime | ParamCase::IDoublePrime)
    }

    /// The side predicted by the congruence description of `Y_>` and `Y_<`.
    pub fn congruence_side(self, x: u64, y: u64) -> Option<Side> {
        let (sum, diff) = (x + y, x.abs_diff(y));
        let (m, want) = match self {
            ParamCase::GPrime => (4, 0),
            ParamCase::H | ParamCase::IDoublePrime => (8, 0),
            ParamCase::HPrime => (8, 4),
            _ => return None,
        };
        match (sum % m == want, diff % m == want) {
            (true, false) => Some(Side::Greater),
            (false, true) => Some(Side::Less),
            _ => None,
        }
    }
}

impl fmt::Display for ParamCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for ParamCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for ParamCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_CASES
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown case {s:?}, expected one of g g' h h' i i' i''")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FImage {
    pub t: u64,
    pub r: u64,
    pub side: Side,
}

/// The bijection `f: Y -> X` of one case.
pub fn f_param(case: ParamCase, x: u64, y: u64) -> Result<FImage> {
    if !case.in_y(x, y) {
        return Err(Error::InvalidArgument(format!("({x},{y}) is not in Y for case {case}")));
    }
    let (sum, diff) = (x + y, x.abs_diff(y));
    if !case.uses_half_pair() {
        let (t, r) = (sum, diff);
        if !case.in_x(t, r) {
            return Err(Error::Classification(format!("case {case}: f({x},{y}) = ({t},{r}) is not in X")));
        }
        return Ok(FImage { t, r, side: Side::NotApplicable });
    }
    if sum % 2 == 1 {
        return Err(Error::Classification(format!("case {case}: ({x},{y}) has odd sum")));
    }
    let a = (sum / 2, diff / 2);
    let b = (diff / 2, sum / 2);
    let (t, r) = match (case.in_x(a.0, a.1), case.in_x(b.0, b.1)) {
        (true, false) => a,
        (false, true) => b,
        (p, q) => {
            return Err(Error::Classification(format!(
                "case {case}: ({x},{y}) has {} admissible half-pairs",
                u8::from(p) + u8::from(q)
            )))
        }
    };
    let side = if t > r { Side::Greater } else { Side::Less };
    if case.congruence_side(x, y) != Some(side) {
        return Err(Error::Classification(format!(
            "case {case}: ({x},{y}) lands on side {side} but the congruence rule says {:?}",
            case.congruence_side(x, y)
        )));
    }
    Ok(FImage { t, r, side })
}

/// Inverse of `f` found by search over `Y` up to `bound`.
pub fn f_inverse(case: ParamCase, t: u64, r: u64, bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            if case.in_y(x, y) && f_param(case, x, y).is_ok_and(|im| (im.t, im.r) == (t, r)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Result of checking `f` on every `(x, y)` in `Y` with `x, y <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FCheck {
    pub case: ParamCase,
    pub bound: u64,
    pub checked: u64,
    pub injective: bool,
    /// Every `(t, r)` in `X` with `t + r <= bound` has a preimage.
    pub onto_window: bool,
    pub errors: Vec<String>,
}

pub fn check_f(case: ParamCase, bound: u64) -> FCheck {
    let mut images = std::collections::HashSet::new();
    let mut checked = 0;
    let mut injective = true;
    let mut errors = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            if !case.in_y(x, y) {
                continue;
            }
            checked += 1;
            match f_param(case, x, y) {
                Ok(im) => injective &= images.insert((im.t, im.r)),
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    // preimages have x + y <= t + r, so this window is complete
    let mut onto_window = true;
    for t in 0..=bound {
        for r in 0..=bound - t {
            // (0, 0) would mean rank 0
            if (t, r) != (0, 0) && case.in_x(t, r) && !images.contains(&(t, r)) {
                onto_window = false;
            }
        }
    }
    FCheck { case, bound, checked, injective, onto_window, errors }
}
