use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::cyclo::{CycloProduct, IntPoly};
use super::{is_sharp, r_op, WeylPair};
use crate::error::{Error, Result};
use crate::rootdata::{op_automorphism, Family, FiniteType, NodePermutation, TypeExpr};

pub const DEFAULT_MAX_RANK: usize = 12;

/// Label of an irreducible character of a classical Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IrrepLabel {
    /// Type `A_n`: a partition of `n + 1`.
    Partition(Vec<u32>),
    /// Types `B_n`, `C_n`: an ordered pair of partitions of total size `n`.
    BiPartition(Vec<u32>, Vec<u32>),
    /// Type `D_n`: an unordered pair, stored with `alpha >= beta`; `split`
    /// tells the two characters apart when `alpha == beta`.
    Unordered { alpha: Vec<u32>, beta: Vec<u32>, split: Option<u8> },
}

fn fmt_part(p: &[u32]) -> String {
    if p.is_empty() {
        return "-".into();
    }
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IrrepLabel::Partition(p) => write!(f, "{}", fmt_part(p)),
            IrrepLabel::BiPartition(a, b) => write!(f, "{}|{}", fmt_part(a), fmt_part(b)),
            IrrepLabel::Unordered { alpha, beta, split } => {
                write!(f, "{{{},{}}}", fmt_part(alpha), fmt_part(beta))?;
                match split {
                    Some(k) => write!(f, "{}", if *k == 0 { "+" } else { "-" }),
                    None => Ok(()),
                }
            }
        }
    }
}

/// Partitions of `n`, parts weakly decreasing, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn hooks(p: &[u32]) -> Vec<u64> {
    let conj = |j: u32| p.iter().filter(|&&x| x > j).count() as u64;
    let mut h = Vec::new();
    for (i, &row) in p.iter().enumerate() {
        for j in 0..row {
            h.push((row - j - 1) as u64 + conj(j) - i as u64 - 1 + 1);
        }
    }
    h
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// Number of standard tableaux of shape `p`.
pub fn tableaux_count(p: &[u32]) -> BigInt {
    let n: u64 = p.iter().map(|&x| x as u64).sum();
    factorial(n) / hooks(p).into_iter().fold(BigInt::one(), |a, h| a * h)
}

fn binom(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All labels of `Irr(W)` for a classical type, in a fixed order.
pub fn labels(t: FiniteType) -> Result<Vec<IrrepLabel>> {
    let n = t.rank() as u32;
    let bipartitions = || {
        (0..=n).rev().flat_map(move |k| {
            partitions(k).into_iter().flat_map(move |a| {
                partitions(n - k).into_iter().map(move |b| (a.clone(), b))
            })
        })
    };
    Ok(match t.family() {
        Family::A => partitions(n + 1).into_iter().map(IrrepLabel::Partition).collect(),
        Family::B | Family::C => bipartitions().map(|(a, b)| IrrepLabel::BiPartition(a, b)).collect(),
        Family::D => bipartitions()
            .filter(|(a, b)| a >= b)
            .flat_map(|(a, b)| {
                if a == b {
                    vec![
                        IrrepLabel::Unordered { alpha: a.clone(), beta: b.clone(), split: Some(0) },
                        IrrepLabel::Unordered { alpha: a, beta: b, split: Some(1) },
                    ]
                } else {
                    vec![IrrepLabel::Unordered { alpha: a, beta: b, split: None }]
                }
            })
            .collect(),
        _ => return Err(Error::InvalidArgument(format!("{t} is not classical"))),
    })
}

/// Increasing symbol row of length `len` built from a partition.
fn symbol_row(p: &[u32], len: usize) -> Vec<u64> {
    let mut padded: Vec<u64> = p.iter().map(|&x| x as u64).collect();
    padded.resize(len, 0);
    padded.reverse();
    padded.iter().enumerate().map(|(i, &x)| x + i as u64).collect()
}

fn interleaves(lo: &[u64], hi: &[u64]) -> bool {
    // lo_1 <= hi_1 <= lo_2 <= hi_2 <= ...
    let mut merged: Vec<u64> = Vec::new();
    for i in 0..lo.len().max(hi.len()) {
        merged.extend(lo.get(i));
        merged.extend(hi.get(i));
    }
    merged.windows(2).all(|w| w[0] <= w[1])
}

fn symbol_part(lam: &[u64], mu: &[u64]) -> CycloProduct {
    let mut d = CycloProduct::one();
    for row in [lam, mu] {
        for (i, &x) in row.iter().enumerate() {
            for &y in &row[i + 1..] {
                d = d.mul(&CycloProduct::diff(y, x));
            }
            for h in 1..=x {
                d = d.div(&CycloProduct::q_minus_one(2 * h));
            }
        }
    }
    for &x in lam {
        for &y in mu {
            d = d.mul(&CycloProduct::sum(x, y));
        }
    }
    let total = (lam.len() + mu.len()) as i64;
    let mut k = total - 2;
    let mut shift = 0;
    while k >= 2 {
        shift += k * (k - 1) / 2;
        k -= 2;
    }
    d.div(&CycloProduct::q_pow(shift))
}

fn two_pow(e: i64) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let mut v = BigRational::one();
    for _ in 0..e {
        v *= &two;
    }
    v
}

/// Generic degree of one irreducible character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericDegreeRecord {
    pub ty: FiniteType,
    pub label: IrrepLabel,
    pub degree: CycloProduct,
    /// Smallest positive integer clearing the denominators.
    #[serde(serialize_with = "crate::jsonint::big")]
    pub n: BigInt,
    /// Multiplicity of `q + 1`.
    pub z: u32,
    pub special: bool,
    #[serde(serialize_with = "crate::jsonint::big")]
    pub dim: BigInt,
}

impl GenericDegreeRecord {
    /// `(N, N * D)` with integer coefficients, low degree first.
    pub fn polynomial(&self) -> (BigInt, IntPoly) {
        self.degree.expand()
    }
}

pub fn generic_degree(t: FiniteType, label: &IrrepLabel) -> Result<GenericDegreeRecord> {
    generic_degree_with_bound(t, label, DEFAULT_MAX_RANK)
}

pub fn generic_degree_with_bound(t: FiniteType, label: &IrrepLabel, max_rank: usize) -> Result<GenericDegreeRecord> {
    if t.rank() > max_rank {
        return Err(Error::Capacity(format!("rank {} exceeds the generic-degree bound {max_rank}", t.rank())));
    }
    let n = t.rank() as u64;
    let size = |p: &[u32]| p.iter().map(|&x| x as u64).sum::<u64>();
    let bad = || Error::InvalidArgument(format!("label {label} does not belong to {t}"));
    let (degree, special, dim) = match (t.family(), label) {
        (Family::A, IrrepLabel::Partition(p)) => {
            if size(p) != n + 1 {
                return Err(bad());
            }
            let npow: u64 = p.iter().enumerate().map(|(i, &x)| i as u64 * x as u64).sum();
            let mut d = CycloProduct::q_pow(npow as i64);
            for i in 1..=n + 1 {
                d = d.mul(&CycloProduct::q_minus_one(i));
            }
            for h in hooks(p) {
                d = d.div(&CycloProduct::q_minus_one(h));
            }
            (d, true, tableaux_count(p))
        }
        (Family::B | Family::C, IrrepLabel::BiPartition(a, b)) => {
            if size(a) + size(b) != n {
                return Err(bad());
            }
            let m = a.len().saturating_sub(1).max(b.len());
            let (lam, mu) = (symbol_row(a, m + 1), symbol_row(b, m));
            let mut d = CycloProduct::constant(BigRational::one() / two_pow(m as i64));
            for i in 1..=n {
                d = d.mul(&CycloProduct::q_minus_one(2 * i));
            }
            d = d.mul(&symbol_part(&lam, &mu));
            let dim = binom(n, size(a)) * tableaux_count(a) * tableaux_count(b);
            (d, interleaves(&lam, &mu), dim)
        }
        (Family::D, IrrepLabel::Unordered { alpha, beta, split }) => {
            let degenerate = alpha == beta;
            if size(alpha) + size(beta) != n || alpha < beta || degenerate != split.is_some() {
                return Err(bad());
            }
            let m = alpha.len().max(beta.len()).max(1);
            let (lam, mu) = (symbol_row(alpha, m), symbol_row(beta, m));
            let mut d = CycloProduct::constant(BigRational::one() / two_pow(m as i64 - 1 + degenerate as i64));
            for i in 1..n {
                d = d.mul(&CycloProduct::q_minus_one(2 * i));
            }
            d = d.mul(&CycloProduct::q_minus_one(n));
            d = d.mul(&symbol_part(&lam, &mu));
            let mut dim = binom(n, size(alpha)) * tableaux_count(alpha) * tableaux_count(beta);
            if degenerate {
                dim /= 2;
            }
            (d, interleaves(&lam, &mu) || interleaves(&mu, &lam), dim)
        }
        _ => return Err(bad()),
    };
    if !degree.is_polynomial() || degree.at_one() != BigRational::from_integer(dim.clone()) {
        return Err(Error::Classification(format!("generic degree of {label} in {t} failed its q = 1 check")));
    }
    let z = degree.multiplicity(2) as u32;
    let n_e = degree.coeff().denom().clone();
    Ok(GenericDegreeRecord { ty: t, label: label.clone(), degree, n: n_e, z, special, dim })
}

/// Checks `sum_E dim(E) D_E = prod_i (q^{d_i} - 1) / (q - 1)`.
pub fn poincare_sum_rule(t: FiniteType) -> Result<bool> {
    let mut lhs: Vec<BigRational> = Vec::new();
    for l in labels(t)? {
        let rec = generic_degree_with_bound(t, &l, usize::MAX)?;
        let (den, p) = rec.polynomial();
        if lhs.len() < p.len() {
            lhs.resize(p.len(), BigRational::zero());
        }
        for (acc, c) in lhs.iter_mut().zip(&p) {
            *acc += BigRational::new(c * &rec.dim, den.clone());
        }
    }
    let mut rhs = CycloProduct::one();
    for d in t.degrees() {
        rhs = rhs.mul(&CycloProduct::q_minus_one(d)).div(&CycloProduct::q_minus_one(1));
    }
    let (den, p) = rhs.expand();
    let want: Vec<BigRational> = p.iter().map(|c| BigRational::new(c.clone(), den.clone())).collect();
    while lhs.last().is_some_and(|c| c.is_zero()) {
        lhs.pop();
    }
    Ok(lhs == want)
}

fn check_irreducible_classical(p: &WeylPair) -> Result<FiniteType> {
    match p.factors() {
        [t] if t.family().is_classical() => Ok(*t),
        _ => Err(Error::InvalidArgument(format!("{} is not an irreducible classical type", p.expr()))),
    }
}

pub fn is_sharp_generic(p: &WeylPair) -> Result<bool> {
    is_sharp_generic_with_bound(p, DEFAULT_MAX_RANK)
}

/// Generic-degree backend: a special character with `z = r(op)`, then
/// `gamma = op`, or `3 | N`, or `ord(gamma) = 3`.
pub fn is_sharp_generic_with_bound(p: &WeylPair, max_rank: usize) -> Result<bool> {
    let t = check_irreducible_classical(p)?;
    if !p.is_ordinary() {
        return Err(Error::NotOrdinary(format!("{:?} on {t}", p.gamma())));
    }
    let r = r_op(t) as u32;
    let mut found = Vec::new();
    for l in labels(t)? {
        let rec = generic_degree_with_bound(t, &l, max_rank)?;
        if rec.special && rec.z == r {
            found.push(rec);
        }
    }
    match found.as_slice() {
        [] => Ok(false),
        [e] => {
            let three = BigInt::from(3);
            Ok(*p.gamma() == op_automorphism(t)
                || (&e.n % &three).is_zero()
                || p.gamma().order() == 3)
        }
        _ => Err(Error::Classification(format!("{} special characters of {t} reach z = r(op)", found.len()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub ty: FiniteType,
    pub gamma: NodePermutation,
    pub classification: bool,
    pub generic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackendReport {
    pub max_rank: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Ranks with at least one sharp `(W, gamma)`, per family letter.
    pub sharp_ranks: BTreeMap<char, Vec<usize>>,
}

/// All diagram automorphisms of a classical type that are ordinary.
pub fn ordinary_automorphisms(t: FiniteType) -> Vec<NodePermutation> {
    let n = t.rank();
    let id = NodePermutation::identity(n);
    let mut out = vec![id.clone()];
    match t.family() {
        Family::A if n >= 2 => out.push(op_automorphism(t)),
        Family::D if n == 4 => {
            let outer = [0usize, 2, 3];
            for perm in [[0, 2, 1], [1, 0, 2], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
                let mut images: Vec<usize> = (0..4).collect();
                for (k, &src) in outer.iter().enumerate() {
                    images[src] = outer[perm[k]];
                }
                out.push(NodePermutation::from_images(images).expect("permutation"));
            }
        }
        Family::D => {
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(n - 2, n - 1);
            out.push(NodePermutation::from_images(images).expect("permutation"));
        }
        _ => {}
    }
    out
}

pub fn crosscheck_backends(max_rank: usize) -> Result<BackendReport> {
    let mut report = BackendReport { max_rank, pairs_checked: 0, mismatches: vec![], sharp_ranks: BTreeMap::new() };
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in 1..=max_rank {
            let Ok(t) = FiniteType::new(family, rank) else { continue };
            let expr = TypeExpr::from_factors(vec![t]);
            let mut any = false;
            for g in ordinary_automorphisms(t) {
                let p = WeylPair::new(&expr, g.clone())?;
                let a = is_sharp(&p)?;
                let b = is_sharp_generic_with_bound(&p, max_rank)?;
                report.pairs_checked += 1;
                any |= a;
                if a != b {
                    report.mismatches.push(Mismatch { ty: t, gamma: g, classification: a, generic: b });
                }
            }
            if any {
                report.sharp_ranks.entry(family.letter()).or_default().push(rank);
            }
        }
    }
    Ok(report)
}
