//! Closed-form lists, written down directly from the arithmetic descriptions.
//!
//! Nothing here touches the enumeration code; the harness compares the two.

use sharpblunt::rootdata::{Family, FiniteType, TypeExpr};
use sharpblunt::triples::OmegaClass;

fn ty(f: Family, r: i64) -> TypeExpr {
    TypeExpr::normalize(f, r).expect("closed-form ranks are at least -1")
}

fn prod(parts: &[TypeExpr]) -> TypeExpr {
    parts.iter().fold(TypeExpr::trivial(), |acc, p| acc.product(p)).weyl_form()
}

fn sq(x: u64) -> i64 {
    (x * x) as i64
}

/// Coarse position of `omega` used by the lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Where {
    Trivial,
    Nontrivial,
    /// Type D, fixes two or more nodes, not 1.
    InUnderline,
    /// Type D, fixes at most one node.
    OutsideUnderline,
    /// Type A, a generator of the cyclic group.
    Generator,
    /// Type A, anything else.
    NonGenerator,
}

impl Where {
    pub fn of(class: OmegaClass, group_order: u64) -> Self {
        match class {
            OmegaClass::Trivial => Where::Trivial,
            OmegaClass::Nontrivial => Where::Nontrivial,
            OmegaClass::InUnderline => Where::InUnderline,
            OmegaClass::OutsideUnderline => Where::OutsideUnderline,
            OmegaClass::Order(k) if k == group_order => Where::Generator,
            OmegaClass::Order(_) => Where::NonGenerator,
        }
    }

    fn trivial(self) -> bool {
        matches!(self, Where::Trivial)
    }
}

fn exceptional_sharp(wp: FiniteType, w: Where) -> Vec<&'static str> {
    match (wp.to_string().as_str(), w.trivial()) {
        ("E8", true) => vec!["E8"],
        ("E7", true) => vec!["E7"],
        ("E7", false) => vec!["E6"],
        ("E6", true) => vec!["E6"],
        ("E6", false) => vec!["D4"],
        ("F4", true) => vec!["F4"],
        ("G2", true) => vec!["G2"],
        _ => vec![],
    }
}

/// Sharp triples on `W'`: parameters (if classical) and `W'_I`, sorted.
pub fn sharp_list(wp: FiniteType, w: Where) -> Vec<(Option<(u64, u64)>, TypeExpr)> {
    let n = wp.rank() as u64;
    let mut out = Vec::new();
    let bound = 8 * n + 8;
    let mut each = |f: &mut dyn FnMut(u64, u64) -> Option<TypeExpr>| {
        for t in 0..bound {
            for r in 0..bound {
                if let Some(e) = f(t, r) {
                    out.push((Some((t, r)), e));
                }
            }
        }
    };
    use Family::*;
    match wp.family() {
        E | F | G => {
            return exceptional_sharp(wp, w).into_iter().map(|s| (None, s.parse::<TypeExpr>().unwrap().weyl_form())).collect()
        }
        A => return if w == Where::Generator { vec![(None, TypeExpr::trivial())] } else { vec![] },
        B => each(&mut |t, r| {
            let t_ok = if w.trivial() { t % 4 == 0 } else { t % 4 == 2 };
            let r_ok = r % 2 == 1 && (w.trivial() || r >= 3);
            (t_ok && r_ok && 4 * n == t * t + r * r - 1).then(|| prod(&[ty(D, sq(t) / 4), ty(B, (sq(r) - 1) / 4)]))
        }),
        C if w.trivial() => each(&mut |t, r| {
            (t >= r && t % 2 == 1 && r % 2 == 1 && 4 * n + 2 == t * t + r * r)
                .then(|| prod(&[ty(B, (sq(t) - 1) / 4), ty(B, (sq(r) - 1) / 4)]))
        }),
        C => each(&mut |t, r| {
            (t % 4 == 2 && r % 2 == 1 && r >= 3 && 8 * n + 5 == t * t + r * r).then(|| {
                let b = ty(B, (sq(t) - 4) / 16);
                prod(&[b.clone(), b, ty(A, (sq(r) - 9) / 8)])
            })
        }),
        D => match w {
            Where::Trivial | Where::InUnderline => {
                let m = if w.trivial() { 0 } else { 2 };
                each(&mut |t, r| {
                    (t >= r && t % 4 == m && r % 4 == m && 4 * n == t * t + r * r)
                        .then(|| prod(&[ty(D, sq(t) / 4), ty(D, sq(r) / 4)]))
                })
            }
            _ => each(&mut |t, r| {
                (t % 4 == 0 && r % 2 == 1 && 8 * n + 1 == t * t + r * r && (t / 4) % 2 == n % 2).then(|| {
                    let d = ty(D, sq(t) / 16);
                    prod(&[d.clone(), d, ty(A, (sq(r) - 9) / 8)])
                })
            }),
        },
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The strictly sharp triple on `W'`, if any: `x` (classical) and `W'_I`.
pub fn strictly_sharp_entry(wp: FiniteType, w: Where) -> Option<(Option<u64>, TypeExpr)> {
    use Family::*;
    let n = wp.rank() as u64;
    let half = |x: u64, up: bool| if up { (x + 1) / 2 } else { (x - 1) / 2 };
    let found = |cond: &dyn Fn(u64) -> bool| (0..=8 * n + 8).find(|&x| cond(x));
    match wp.family() {
        E | F | G => {
            let name = match (wp.to_string().as_str(), w.trivial()) {
                ("E8", true) => "E8",
                ("E7", false) => "E6",
                ("E6", false) => "D4",
                ("F4", true) => "F4",
                ("G2", true) => "G2",
                _ => return None,
            };
            Some((None, name.parse::<TypeExpr>().unwrap().weyl_form()))
        }
        A => (w == Where::Generator).then(|| (None, TypeExpr::trivial())),
        B => {
            let (lo, hi) = if w.trivial() { (1, 7) } else { (5, 3) };
            let x = found(&|x| (x % 8 == lo || x % 8 == hi) && 8 * n + 1 == x * x)?;
            // first residue: D from (x-1)/2, second: D from (x+1)/2
            let up = x % 8 == hi;
            let (d, b) = (half(x, up), half(x, !up));
            Some((Some(x), prod(&[ty(D, sq(d) / 4), ty(B, (sq(b) - 1) / 4)])))
        }
        C if w.trivial() => {
            let x = found(&|x| x % 2 == 1 && 2 * n + 1 == x * x)?;
            let b = ty(B, (sq(x) - 1) / 4);
            Some((Some(x), prod(&[b.clone(), b])))
        }
        C => {
            let x = found(&|x| matches!(x % 8, 3 | 5) && 16 * n + 9 == x * x)?;
            let up = x % 8 == 3;
            let b = ty(B, (sq(half(x, up)) - 4) / 16);
            Some((Some(x), prod(&[b.clone(), b, ty(A, (sq(half(x, !up)) - 9) / 8)])))
        }
        D => match w {
            Where::Trivial | Where::InUnderline => {
                let m = if w.trivial() { 0 } else { 2 };
                let x = found(&|x| x % 4 == m && 2 * n == x * x)?;
                let d = ty(D, sq(x) / 4);
                Some((Some(x), prod(&[d.clone(), d])))
            }
            _ => {
                let x = found(&|x| matches!(x % 8, 1 | 7) && 16 * n + 1 == x * x)?;
                let up = x % 8 == 7;
                let d = ty(D, sq(half(x, up)) / 16);
                Some((Some(x), prod(&[d.clone(), d, ty(A, (sq(half(x, !up)) - 9) / 8)])))
            }
        },
    }
}

const E8_BLUNT: [(&str, &str); 7] = [
    ("a1", "E8"),
    ("a2", "E7xA1"),
    ("a3", "E6xA2"),
    ("a4", "D5xA3"),
    ("a5", "A4xA4"),
    ("a6", "D8"),
    ("a7", "A5xA2xA1"),
];

fn exceptional_blunt(w: FiniteType, wh: Where) -> Vec<(&'static str, &'static str)> {
    match (w.to_string().as_str(), wh.trivial()) {
        ("E8", true) => E8_BLUNT.to_vec(),
        ("E7", false) => vec![("b1", "E7"), ("b2", "A5xA2")],
        ("E7", true) => vec![("b'", "A3xA3xA1")],
        ("E6", false) => vec![("c1", "E6"), ("c2", "A5xA1")],
        ("E6", true) => vec![("c'", "A2xA2xA2")],
        ("F4", true) => vec![("d1", "F4"), ("d2", "C3xA1"), ("d3", "A2xA2"), ("d4", "A3xA1"), ("d5", "B4")],
        ("G2", true) => vec![("e1", "G2"), ("e2", "A1xA1"), ("e3", "A2")],
        _ => vec![],
    }
}

/// Blunt triples on `W`: label, parameters (if classical) and `W_J`, sorted.
pub fn blunt_list(w: FiniteType, wh: Where) -> Vec<(String, Option<(u64, u64)>, TypeExpr)> {
    use Family::*;
    let n = w.rank() as u64;
    let mut out = Vec::new();
    let bound = 8 * n + 8;
    let mut each = |label: &str, f: &mut dyn FnMut(u64, u64) -> Option<TypeExpr>| {
        for x in 0..bound {
            for y in 0..bound {
                if let Some(e) = f(x, y) {
                    out.push((label.to_string(), Some((x, y)), e));
                }
            }
        }
    };
    match w.family() {
        E | F | G => {
            let mut v: Vec<_> = exceptional_blunt(w, wh)
                .into_iter()
                .map(|(l, s)| (l.to_string(), None, s.parse::<TypeExpr>().unwrap().weyl_form()))
                .collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            return v;
        }
        A => {
            return if wh == Where::Generator { vec![("f".into(), None, ty(A, n as i64).weyl_form())] } else { vec![] }
        }
        C => {
            let (m, label) = if wh.trivial() { (0, "g") } else { (4, "g'") };
            each(label, &mut |x, y| {
                let odd = x % 2 == 1 && y % 2 == 1;
                (x >= y && odd && 8 * n + 2 == x * x + y * y && ((x + y) % 8 == m || (x - y) % 8 == m))
                    .then(|| prod(&[ty(C, (sq(x) - 1) / 8), ty(C, (sq(y) - 1) / 8)]))
            })
        }
        B if wh.trivial() => each("h", &mut |x, y| {
            (x % 2 == 0 && y % 2 == 1 && 2 * n + 1 == x * x + y * y)
                .then(|| prod(&[ty(D, sq(x) / 2), ty(B, (sq(y) - 1) / 2)]))
        }),
        B => each("h'", &mut |x, y| {
            (matches!(x % 8, 1 | 7) && matches!(y % 8, 3 | 5) && 16 * n + 10 == x * x + y * y)
                .then(|| prod(&[ty(D, (sq(x) - 1) / 16), ty(B, (sq(y) - 9) / 16)]))
        }),
        D => match wh {
            Where::Trivial | Where::InUnderline => {
                let (m, label) = if wh.trivial() { (0, "i") } else { (2, "i'") };
                each(label, &mut |x, y| {
                    (x >= y && x % 2 == 0 && y % 2 == 0 && x % 4 == (y + m) % 4 && 2 * n == x * x + y * y)
                        .then(|| prod(&[ty(D, sq(x) / 2), ty(D, sq(y) / 2)]))
                })
            }
            _ => each("i''", &mut |x, y| {
                (x >= y && matches!(x % 8, 1 | 7) && matches!(y % 8, 1 | 7) && 16 * n + 2 == x * x + y * y)
                    .then(|| prod(&[ty(D, (sq(x) - 1) / 16), ty(D, (sq(y) - 1) / 16)]))
            }),
        },
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// `theta` values read off the marks of the blunt lists, sorted.
pub fn theta_values(wp: FiniteType, trivial: bool) -> Option<Vec<u32>> {
    let v: Vec<u32> = match (wp.to_string().as_str(), trivial) {
        ("E8", true) => vec![1, 2, 3, 4, 5, 6, 2],
        ("E7", true) => vec![4],
        ("E7", false) => vec![1, 3],
        ("E6", true) => vec![3],
        ("E6", false) => vec![1, 2],
        ("F4", true) => vec![1, 2, 3, 4, 2],
        ("G2", true) => vec![1, 2, 3],
        _ => return None,
    };
    let mut v = v;
    v.sort_unstable();
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> FiniteType {
        s.parse().unwrap()
    }

    #[test]
    fn small_entries() {
        let v = sharp_list(t("C4"), Where::Trivial);
        assert_eq!(v, vec![(Some((3, 3)), "B2xB2".parse::<TypeExpr>().unwrap())]);
        let v = blunt_list(t("C4"), Where::Trivial);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].1, Some((5, 3)));
        assert_eq!(strictly_sharp_entry(t("C4"), Where::Trivial).unwrap().0, Some(3));
        assert_eq!(strictly_sharp_entry(t("D8"), Where::Trivial).unwrap().0, Some(4));
        assert!(strictly_sharp_entry(t("D8"), Where::InUnderline).is_none());
        assert_eq!(blunt_list(t("E8"), Where::Trivial).len(), 7);
    }
}
