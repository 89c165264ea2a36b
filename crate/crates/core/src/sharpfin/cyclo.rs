use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;

/// Polynomial in `q` with coefficients in `Z`, low degree first.
pub type IntPoly = Vec<BigInt>;

/// Rational multiple of a monomial times a product of cyclotomic
/// polynomials: `c * q^e * prod_d Phi_d^{m_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloProduct {
    coeff: BigRational,
    qpow: i64,
    phi: BTreeMap<u64, i64>,
}

fn divisors(k: u64) -> impl Iterator<Item = u64> {
    (1..=k).filter(move |d| k % d == 0)
}

static CYCLOTOMIC: Lazy<Mutex<BTreeMap<u64, IntPoly>>> = Lazy::new(Default::default);

/// Coefficients of `Phi_d`.
pub fn cyclotomic(d: u64) -> IntPoly {
    if let Some(p) = CYCLOTOMIC.lock().expect("cache").get(&d) {
        return p.clone();
    }
    let mut num: IntPoly = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in divisors(d).filter(|&e| e < d) {
        num = div_monic(&num, &cyclotomic(e));
    }
    CYCLOTOMIC.lock().expect("cache").insert(d, num.clone());
    num
}

fn div_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd].clone();
        for (k, b) in den.iter().enumerate() {
            rem[i + k] -= &c * b;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quo
}

pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl CycloProduct {
    pub fn one() -> Self {
        Self { coeff: BigRational::one(), qpow: 0, phi: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self { coeff: c, ..Self::one() }
    }

    pub fn q_pow(e: i64) -> Self {
        Self { qpow: e, ..Self::one() }
    }

    /// `q^k - 1` for `k >= 1`.
    pub fn q_minus_one(k: u64) -> Self {
        let mut p = Self::one();
        for d in divisors(k) {
            *p.phi.entry(d).or_default() += 1;
        }
        p
    }

    /// `q^k + 1` for `k >= 1`.
    pub fn q_plus_one(k: u64) -> Self {
        let mut p = Self::one();
        for d in divisors(2 * k).filter(|d| k % d != 0) {
            *p.phi.entry(d).or_default() += 1;
        }
        p
    }

    /// `q^a - q^b`, which must be nonzero.
    pub fn diff(a: u64, b: u64) -> Self {
        assert_ne!(a, b, "q^a - q^a vanishes");
        if a > b {
            Self::q_pow(b as i64).mul(&Self::q_minus_one(a - b))
        } else {
            Self::q_pow(a as i64)
                .mul(&Self::q_minus_one(b - a))
                .scale(&BigRational::from_integer((-1).into()))
        }
    }

    /// `q^a + q^b`.
    pub fn sum(a: u64, b: u64) -> Self {
        let lo = a.min(b);
        if a == b {
            return Self::q_pow(lo as i64).scale(&BigRational::from_integer(2.into()));
        }
        Self::q_pow(lo as i64).mul(&Self::q_plus_one(a.max(b) - lo))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut phi = self.phi.clone();
        for (&d, &m) in &other.phi {
            *phi.entry(d).or_default() += m;
        }
        phi.retain(|_, m| *m != 0);
        Self { coeff: &self.coeff * &other.coeff, qpow: self.qpow + other.qpow, phi }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.coeff.is_zero(), "division by zero");
        let mut phi = self.phi.clone();
        for (&d, &m) in &other.phi {
            *phi.entry(d).or_default() -= m;
        }
        phi.retain(|_, m| *m != 0);
        Self { coeff: &self.coeff / &other.coeff, qpow: self.qpow - other.qpow, phi }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeff: &self.coeff * c, ..self.clone() }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn q_exponent(&self) -> i64 {
        self.qpow
    }

    pub fn multiplicity(&self, d: u64) -> i64 {
        self.phi.get(&d).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.phi
    }

    pub fn is_polynomial(&self) -> bool {
        self.qpow >= 0 && self.phi.values().all(|&m| m >= 0)
    }

    /// Value at `q = 1`; requires no `Phi_1` factor.
    pub fn at_one(&self) -> BigRational {
        let mut v = self.coeff.clone();
        for (&d, &m) in &self.phi {
            assert!(d != 1, "vanishes at q = 1");
            if let Some(p) = prime_power_base(d) {
                let f = BigRational::from_integer(p.into());
                for _ in 0..m.abs() {
                    v = if m > 0 { v * &f } else { v / &f };
                }
            }
        }
        v
    }

    /// Expanded coefficients, scaled by the least denominator: `(N, N*D)`.
    pub fn expand(&self) -> (BigInt, IntPoly) {
        assert!(self.is_polynomial(), "not a polynomial");
        let mut p: IntPoly = vec![BigInt::zero(); self.qpow as usize];
        p.push(self.coeff.numer().clone());
        for (&d, &m) in &self.phi {
            let c = cyclotomic(d);
            for _ in 0..m {
                p = poly_mul(&p, &c);
            }
        }
        (self.coeff.denom().clone(), p)
    }

    pub fn degree(&self) -> i64 {
        self.qpow + self.phi.iter().map(|(&d, &m)| totient(d) as i64 * m).sum::<i64>()
    }
}

fn prime_power_base(d: u64) -> Option<u64> {
    let p = (2..=d).find(|p| d % p == 0)?;
    let mut x = d;
    while x % p == 0 {
        x /= p;
    }
    (x == 1).then_some(p)
}

fn totient(d: u64) -> u64 {
    (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count() as u64
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.coeff.to_string()];
        if self.qpow != 0 {
            parts.push(format!("q^{}", self.qpow));
        }
        for (d, m) in &self.phi {
            parts.push(if *m == 1 { format!("Phi{d}") } else { format!("Phi{d}^{m}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for CycloProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Renders an integer polynomial over a denominator, highest degree first.
pub fn format_poly(den: &BigInt, p: &IntPoly) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let a = c.abs();
        let body = match (i, a.is_one()) {
            (0, _) => a.to_string(),
            (1, true) => "q".into(),
            (1, false) => format!("{a}q"),
            (_, true) => format!("q^{i}"),
            (_, false) => format!("{a}q^{i}"),
        };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (sign, body)) in terms.iter().enumerate() {
        match (k, *sign) {
            (0, "-") => s.push('-'),
            (0, _) => {}
            (_, sg) => s.push_str(&format!(" {sg} ")),
        }
        s.push_str(body);
    }
    if den.is_one() {
        s
    } else {
        format!("({s})/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), ints(&[1, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn q_plus_one_expands() {
        let (n, p) = CycloProduct::q_plus_one(3).expand();
        assert!(n.is_one());
        assert_eq!(p, ints(&[1, 0, 0, 1]));
        let (_, p) = CycloProduct::sum(2, 2).expand();
        assert_eq!(p, ints(&[0, 0, 2]));
        let (_, p) = CycloProduct::diff(1, 4).expand();
        assert_eq!(p, ints(&[0, 1, 0, 0, -1]));
    }

    #[test]
    fn value_at_one() {
        // [4]_q! = 24 at q = 1
        let mut p = CycloProduct::one();
        for i in 1..=4 {
            p = p.mul(&CycloProduct::q_minus_one(i)).div(&CycloProduct::q_minus_one(1));
        }
        assert_eq!(p.at_one(), BigRational::from_integer(24.into()));
        assert_eq!(format_poly(&BigInt::one(), &ints(&[0, 1, -2])), "-2q^2 + q");
    }
}
