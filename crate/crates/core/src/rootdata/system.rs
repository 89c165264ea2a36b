use std::collections::{HashSet, VecDeque};

use super::types::{Family, FiniteType};
use crate::ablat::IntMatrix;

/// A root as integer coordinates in the basis of simple roots.
pub type Root = Vec<i64>;

/// Irreducible root system in simple-root coordinates with Bourbaki numbering
/// (stored 0-based: simple root `i` here is `alpha_{i+1}`).
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: FiniteType,
    /// Symmetrized form on simple roots; short roots have square length 2.
    gram: Vec<Vec<i64>>,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`
    cartan: Vec<Vec<i64>>,
    /// nonzero entries of each Cartan column, for cheap reflections
    links: Vec<Vec<(usize, i64)>>,
    positive: Vec<Root>,
    highest: Root,
}

/// Symmetrized Gram matrix of the simple roots.
fn gram_matrix(t: FiniteType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.family() {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 1..n {
                link(&mut g, i - 1, i, -1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                g[i][i] = 4;
            }
            g[n - 1][n - 1] = 2;
            for i in 1..n {
                link(&mut g, i - 1, i, -2);
            }
        }
        Family::C => {
            for i in 0..n - 1 {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 1..n - 1 {
                link(&mut g, i - 1, i, -1);
            }
            link(&mut g, n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 1..n - 1 {
                link(&mut g, i - 1, i, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            // 1-3-4-5-...-n with 2 attached to 4 (1-based)
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 3..n {
                link(&mut g, i - 1, i, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

pub(crate) fn dot(gram: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            s += a * gram[i][j] * b;
        }
    }
    s
}

/// Builds the root system by closing the simple roots under simple reflections.
pub fn build_root_system(t: FiniteType) -> RootSystem {
    let gram = gram_matrix(t);
    let n = t.rank();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
        .collect();

    let simple: Vec<Root> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    let mut seen: HashSet<Root> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simple.into_iter().collect();
    let mut all = Vec::new();
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let k: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
            if k == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[i] -= k;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
        all.push(beta);
    }
    let mut positive: Vec<Root> = all.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then(b.cmp(a))
    });
    let highest = positive.last().cloned().expect("nonempty");
    let links = (0..n)
        .map(|i| (0..n).filter(|&k| cartan[k][i] != 0).map(|k| (k, cartan[k][i])).collect())
        .collect();
    RootSystem { ty: t, gram, cartan, links, positive, highest }
}

impl RootSystem {
    pub fn finite_type(&self) -> FiniteType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.cartan)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let neg = self.positive.iter().map(|r| r.iter().map(|x| -x).collect());
        self.positive.iter().cloned().chain(neg).collect()
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest
    }

    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        dot(&self.gram, u, v)
    }

    pub fn norm(&self, u: &[i64]) -> i64 {
        self.inner(u, u)
    }

    pub fn long_norm(&self) -> i64 {
        self.gram.iter().enumerate().map(|(i, r)| r[i]).max().unwrap_or(2)
    }

    pub fn is_long(&self, u: &[i64]) -> bool {
        self.norm(u) == self.long_norm()
    }

    /// `<beta, alpha_i^vee>`
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        self.links[i].iter().map(|&(k, a)| beta[k] * a).sum()
    }

    /// Simple reflection `s_i` applied to a vector in root coordinates.
    pub fn reflect(&self, i: usize, beta: &mut [i64]) {
        let k = self.coroot_pairing(beta, i);
        beta[i] -= k;
    }

    pub fn is_dominant(&self, beta: &[i64]) -> bool {
        (0..self.rank()).all(|i| self.coroot_pairing(beta, i) >= 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    #[test]
    fn a2_closure() {
        let r = sys("A2");
        assert_eq!(r.roots().len(), 6);
        assert_eq!(r.highest_root(), &vec![1, 1]);
    }

    #[test]
    fn b3_closure() {
        let r = sys("B3");
        assert_eq!(r.roots().len(), 2 * 3 * 3);
        assert_eq!(r.highest_root(), &vec![1, 2, 2]);
        assert!(r.is_long(r.highest_root()));
    }

    #[test]
    fn e8_closure() {
        assert_eq!(sys("E8").roots().len(), 240);
    }

    #[test]
    fn standard_counts_and_invariants() {
        let mut types = vec![];
        for n in 1..=9 {
            types.push(format!("A{n}"));
        }
        for n in 2..=9 {
            types.push(format!("B{n}"));
            types.push(format!("C{n}"));
        }
        for n in 4..=9 {
            types.push(format!("D{n}"));
        }
        types.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
        for s in types {
            let r = sys(&s);
            let t = r.finite_type();
            assert_eq!(r.positive_roots().len(), t.positive_root_count(), "{s}");
            let theta = r.highest_root();
            assert!(r.is_long(theta) && r.is_dominant(theta), "{s}");
            let dominant_long: Vec<_> =
                r.roots().into_iter().filter(|b| r.is_long(b) && r.is_dominant(b)).collect();
            assert_eq!(dominant_long, vec![theta.clone()], "{s}");
            assert_eq!(
                r.cartan_matrix().determinant(),
                num_bigint::BigInt::from(t.connection_index()),
                "{s}"
            );
        }
    }
}
