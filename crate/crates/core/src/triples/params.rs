use crate::error::{Error, Result};
use crate::rootdata::{Family, FiniteType, TypeExpr};

use super::omega_class::OmegaClass;
use super::sharp::{isqrt_exact, norm, SharpTriple};

/// Case label, parameters and expected `W'_I` read off a removed node set.
pub(crate) fn invert_sharp(
    wp: FiniteType,
    class: OmegaClass,
    removed: &[usize],
) -> Option<(&'static str, (u64, u64), TypeExpr)> {
    let n = wp.rank() as u64;
    let lo = *removed.first()? as u64;
    let sq = isqrt_exact;
    let d = |r: u64| norm(Family::D, r as i64);
    let b = |r: u64| norm(Family::B, r as i64);
    let a = |r: i64| norm(Family::A, r);
    match wp.family() {
        Family::B => {
            let a_ = match removed {
                [0] => 0,
                [0, 1] => 1,
                [s] if *s >= 2 => *s as u64,
                _ => return None,
            };
            let (t, r) = (sq(4 * a_)?, sq(4 * (n - a_) + 1)?);
            let case = if class.is_trivial() { "g" } else { "g'" };
            let ok = if class.is_trivial() { t % 4 == 0 } else { t % 4 == 2 };
            ok.then(|| (case, (t, r), d(a_).product(&b(n - a_))))
        }
        Family::C if class.is_trivial() => {
            let [s] = removed else { return None };
            let s = *s as u64;
            let (t, r) = (sq(4 * s + 1)?, sq(4 * (n - s) + 1)?);
            (t >= r).then(|| ("h", (t, r), b(s).product(&b(n - s))))
        }
        Family::C => {
            let (t, r) = (sq(16 * lo + 4)?, sq((8 * n + 5).checked_sub(16 * lo + 4)?)?);
            let want: Vec<usize> = if 2 * lo == n { vec![lo as usize] } else { vec![lo as usize, (n - lo) as usize] };
            let c = (r * r) as i64 / 8 - 1;
            (removed == want && t % 4 == 2).then(|| ("h'", (t, r), b(lo).product(&b(lo)).product(&a(c))))
        }
        Family::D => match class {
            OmegaClass::Trivial | OmegaClass::InUnderline => {
                let (a_, b_) = match removed {
                    [0] => (n, 0),
                    [x, y] if *x as u64 == n - 1 && *y as u64 == n => (n - 1, 1),
                    [s] => (*s as u64, n - *s as u64),
                    _ => return None,
                };
                let (t, r) = (sq(4 * a_)?, sq(4 * b_)?);
                let (case, m) = if class.is_trivial() { ("i", 0) } else { ("i'", 2) };
                (t >= r && t % 4 == m && r % 4 == m).then(|| (case, (t, r), d(a_).product(&d(b_))))
            }
            _ => {
                let a_ = match removed {
                    [0, _] => 0,
                    [0, 1, _, _] => 1,
                    [_] | [_, _] => lo,
                    _ => return None,
                };
                let t = sq(16 * a_)?;
                let r = sq((8 * n + 1).checked_sub(16 * a_)?)?;
                let ok = (t / 4) % 2 == n % 2 && r % 2 == 1;
                let c = (r * r) as i64 / 8 - 1;
                ok.then(|| ("i''", (t, r), d(a_).product(&d(a_)).product(&a(c))))
            }
        },
        _ => None,
    }
}

/// Parameters of a literal-mode triple, when it fits the closed-form shape.
pub(crate) fn sharp_params_loose(tr: &SharpTriple) -> Option<(u64, u64)> {
    let (_, p, expected) = invert_sharp(tr.w_prime, tr.omega_class, &tr.removed)?;
    (expected.weyl_form() == tr.w_prime_i.weyl_form()).then_some(p)
}

/// `(t, r)` of a classical sharp triple, recomputed from its node set.
pub fn sharp_params(tr: &SharpTriple) -> Result<(u64, u64)> {
    if !matches!(tr.w_prime.family(), Family::B | Family::C | Family::D) {
        return Err(Error::InvalidArgument(format!("{}^a has no parameters", tr.w_prime)));
    }
    sharp_params_loose(tr).ok_or_else(|| {
        Error::Classification(format!("{}^a: {} does not invert to parameters", tr.w_prime, tr.w_prime_i))
    })
}

/// `(x, y)` for the maximal `J = S - {s}` of a classical `W`, with the case label.
/// `None` when the ranks do not fit the closed form.
pub fn blunt_params(w: FiniteType, class: OmegaClass, s: usize) -> Option<(&'static str, (u64, u64))> {
    let n = w.rank() as u64;
    let s = s as u64;
    let sq = isqrt_exact;
    let (p, q) = (s.max(n - s), s.min(n - s));
    match w.family() {
        Family::C => {
            let (x, y) = (sq(8 * p + 1)?, sq(8 * q + 1)?);
            let m = if class.is_trivial() { 0 } else { 4 };
            let case = if class.is_trivial() { "g" } else { "g'" };
            ((x + y) % 8 == m || (x - y) % 8 == m).then_some((case, (x, y)))
        }
        Family::B => {
            let (dd, bb) = if s <= 1 { (0, n) } else { (s, n - s) };
            if class.is_trivial() {
                let (x, y) = (sq(2 * dd)?, sq(2 * bb + 1)?);
                Some(("h", (x, y)))
            } else {
                let (x, y) = (sq(16 * dd + 1)?, sq(16 * bb + 9)?);
                (matches!(x % 8, 1 | 7) && matches!(y % 8, 3 | 5)).then_some(("h'", (x, y)))
            }
        }
        Family::D => {
            let (p, q) = if s <= 1 || s >= n - 1 { (n, 0) } else { (p, q) };
            match class {
                OmegaClass::Trivial | OmegaClass::InUnderline => {
                    let (x, y) = (sq(2 * p)?, sq(2 * q)?);
                    let (case, m) = if class.is_trivial() { ("i", 0) } else { ("i'", 2) };
                    (x % 2 == 0 && y % 2 == 0 && (x + 4 - y % 4) % 4 == m).then_some((case, (x, y)))
                }
                _ => {
                    let (x, y) = (sq(16 * p + 1)?, sq(16 * q + 1)?);
                    (matches!(x % 8, 1 | 7) && matches!(y % 8, 1 | 7)).then_some(("i''", (x, y)))
                }
            }
        }
        _ => None,
    }
}
