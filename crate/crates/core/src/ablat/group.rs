use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use super::snf::smith_decompose;
use crate::error::{Error, Result};

/// An element of a finite abelian group, as reduced coordinates.
pub type Element = Vec<u64>;

/// Finite abelian group `Z/m_1 x ... x Z/m_k`.
///
/// Groups built from a quotient carry their invariant factors (`m_i | m_{i+1}`,
/// each `> 1`); direct products keep the factor coordinates of their pieces so
/// that tuples read the way they are written down by hand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    moduli: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self { moduli: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            Self { moduli: vec![n] }
        }
    }

    /// Canonical group from invariant factors; factors equal to 1 are dropped.
    pub fn from_invariant_factors(factors: &[u64]) -> Result<Self> {
        let moduli: Vec<u64> = factors.iter().copied().filter(|&d| d != 1).collect();
        if moduli.contains(&0) {
            return Err(Error::InfiniteQuotient);
        }
        if moduli.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(Self { moduli })
    }

    /// Direct product in factor coordinates (not reduced to invariant factors).
    pub fn direct_product(parts: &[FinAbGroup]) -> Self {
        Self { moduli: parts.iter().flat_map(|g| g.moduli.iter().copied()).collect() }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors().len() <= 1
    }

    /// Canonical invariant factors, whatever coordinates the group uses.
    pub fn invariant_factors(&self) -> Vec<u64> {
        if self.moduli.len() <= 1 {
            return self.moduli.clone();
        }
        let d: Vec<BigInt> = self.moduli.iter().map(|&m| BigInt::from(m)).collect();
        smith_decompose(&IntMatrix::diagonal(&d))
            .diagonal()
            .iter()
            .map(|x| x.to_u64().expect("factor fits"))
            .filter(|&x| x != 1)
            .collect()
    }

    pub fn identity(&self) -> Element {
        vec![0; self.moduli.len()]
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.moduli.len() && x.iter().zip(&self.moduli).all(|(a, m)| a < m)
    }

    pub fn reduce(&self, x: &[BigInt]) -> Element {
        x.iter()
            .zip(&self.moduli)
            .map(|(a, &m)| a.mod_floor(&BigInt::from(m)).to_u64().expect("reduced"))
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter().zip(y).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter().zip(&self.moduli).map(|(a, m)| (m - a) % m).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Element {
        x.iter().zip(&self.moduli).map(|(a, m)| (a * (k % m)) % m).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.moduli)
            .map(|(&a, &m)| m / a.gcd(&m))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn is_generator(&self, x: &[u64]) -> bool {
        self.is_cyclic() && self.element_order(x) == self.order()
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![Vec::with_capacity(self.moduli.len())];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |a| {
                        let mut e = prefix.clone();
                        e.push(a);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Index of an element in [`Self::elements`] order.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.moduli).fold(0, |acc, (&a, &m)| acc * m as usize + a as usize)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.moduli.len())
            .map(|i| {
                let mut e = self.identity();
                e[i] = 1;
                e
            })
            .collect()
    }
}

/// Homomorphism of finite abelian groups given by an integer matrix acting on
/// coordinate tuples. Construction certifies well-definedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    /// `columns[i]` is the image of the i-th source generator.
    columns: Vec<Element>,
}

impl FinAbHom {
    pub fn from_generator_images(
        source: FinAbGroup,
        target: FinAbGroup,
        columns: Vec<Element>,
    ) -> Result<Self> {
        if columns.len() != source.rank() || columns.iter().any(|c| !target.contains(c)) {
            return Err(Error::InvalidArgument("generator images do not match the groups".into()));
        }
        for (c, &m) in columns.iter().zip(source.moduli()) {
            if target.scale(m, c) != target.identity() {
                return Err(Error::NotWellDefined(format!(
                    "generator of order {m} sent to {c:?}, whose order does not divide {m}"
                )));
            }
        }
        Ok(Self { source, target, columns })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        Self { source: g.clone(), target: g.clone(), columns: g.generators() }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Element] {
        &self.columns
    }

    pub fn apply(&self, x: &[u64]) -> Element {
        let mut acc = self.target.identity();
        for (&k, col) in x.iter().zip(&self.columns) {
            if k != 0 {
                acc = self.target.add(&acc, &self.target.scale(k, col));
            }
        }
        acc
    }

    pub fn compose(&self, inner: &FinAbHom) -> Result<FinAbHom> {
        if inner.target != self.source {
            return Err(Error::InvalidArgument("composition of incompatible homomorphisms".into()));
        }
        let cols = inner.columns.iter().map(|c| self.apply(c)).collect();
        FinAbHom::from_generator_images(inner.source.clone(), self.target.clone(), cols)
    }

    pub fn kernel(&self) -> Vec<Element> {
        self.hom_fiber(&self.target.identity())
    }

    pub fn image(&self) -> Vec<Element> {
        let mut im: Vec<Element> = self.source.elements().iter().map(|x| self.apply(x)).collect();
        im.sort();
        im.dedup();
        im
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() as u64 == self.target.order()
    }

    /// Exact preimage of `t`, in lexicographic order.
    pub fn hom_fiber(&self, t: &[u64]) -> Vec<Element> {
        self.source.elements().into_iter().filter(|x| self.apply(x) == t).collect()
    }

    pub fn is_homomorphism(&self) -> bool {
        let els = self.source.elements();
        els.iter().all(|x| {
            els.iter().all(|y| {
                self.apply(&self.source.add(x, y)) == self.target.add(&self.apply(x), &self.apply(y))
            })
        })
    }
}

/// The quotient `Z^n / span(columns of relations)` together with the
/// coordinate maps to and from its invariant-factor form.
#[derive(Clone, Debug)]
pub struct Quotient {
    dim: usize,
    group: FinAbGroup,
    /// rows of `U` belonging to nontrivial invariant factors
    proj: Vec<Vec<BigInt>>,
    /// matching columns of `U^{-1}`: lifts of the generators to `Z^n`
    lifts: Vec<Vec<BigInt>>,
    relations: IntMatrix,
}

impl Quotient {
    /// Requires the relation columns to span a full-rank sublattice.
    pub fn new(relations: &IntMatrix) -> Result<Self> {
        let n = relations.rows();
        let s = smith_decompose(relations);
        let diag = s.diagonal();
        if diag.len() < n || diag.iter().any(|d| d.is_zero()) {
            return Err(Error::InfiniteQuotient);
        }
        let mut moduli = Vec::new();
        let mut proj = Vec::new();
        let mut lifts = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let dm = d.to_u64().ok_or(Error::Capacity("invariant factor exceeds u64".into()))?;
            moduli.push(dm);
            proj.push(s.u.row(i).iter().map(|x| x.mod_floor(d)).collect());
            lifts.push(s.u_inv.column(i));
        }
        Ok(Self {
            dim: n,
            group: FinAbGroup { moduli },
            proj,
            lifts,
            relations: relations.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn class_of(&self, v: &[BigInt]) -> Element {
        assert_eq!(v.len(), self.dim);
        let raw: Vec<BigInt> =
            self.proj.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
        self.group.reduce(&raw)
    }

    pub fn class_of_i64(&self, v: &[i64]) -> Element {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.class_of(&v)
    }

    /// A representative in `Z^n` of the given class.
    pub fn lift(&self, x: &[u64]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (&k, col) in x.iter().zip(&self.lifts) {
            if k != 0 {
                for (o, c) in out.iter_mut().zip(col) {
                    *o += c * k;
                }
            }
        }
        out
    }

    /// Homomorphism induced by the integer map `h: Z^n -> Z^m`, which must
    /// carry the relations of `self` into those of `target`.
    pub fn hom_to(&self, target: &Quotient, h: &IntMatrix) -> Result<FinAbHom> {
        if h.cols() != self.dim || h.rows() != target.dim {
            return Err(Error::InvalidArgument("map dimensions do not match the quotients".into()));
        }
        for j in 0..self.relations.cols() {
            let image = h.mul_vec(&self.relations.column(j));
            if target.class_of(&image) != target.group.identity() {
                return Err(Error::NotWellDefined(format!(
                    "relation {j} is not sent into the target relations"
                )));
            }
        }
        let cols = self.lifts.iter().map(|l| target.class_of(&h.mul_vec(l))).collect();
        FinAbHom::from_generator_images(self.group.clone(), target.group.clone(), cols)
    }
}

/// Direct product of quotients, with relations stacked block-diagonally.
pub fn block_quotient(parts: &[&IntMatrix]) -> Result<Quotient> {
    let n: usize = parts.iter().map(|m| m.rows()).sum();
    let c: usize = parts.iter().map(|m| m.cols()).sum();
    let mut rel = IntMatrix::zeros(n, c);
    let (mut r0, mut c0) = (0, 0);
    for m in parts {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                rel.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
        r0 += m.rows();
        c0 += m.cols();
    }
    Quotient::new(&rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_by_cartan_a2_is_z3() {
        let q = Quotient::new(&IntMatrix::from_rows(&[[2, -1], [-1, 2]])).unwrap();
        assert_eq!(q.group().moduli(), &[3]);
        let g = q.class_of_i64(&[1, 0]);
        assert_eq!(q.group().element_order(&g), 3);
        assert_eq!(q.class_of_i64(&[2, -1]), vec![0]);
        for x in q.group().elements() {
            assert_eq!(q.class_of(&q.lift(&x)), x);
        }
    }

    #[test]
    fn sum_map_fibers() {
        let src = FinAbGroup::direct_product(&[FinAbGroup::cyclic(5), FinAbGroup::cyclic(5)]);
        let h = FinAbHom::from_generator_images(src, FinAbGroup::cyclic(5), vec![vec![1], vec![1]])
            .unwrap();
        assert!(h.is_homomorphism());
        assert_eq!(h.hom_fiber(&[0]).len(), 5);
        assert!(h.is_surjective());
    }

    #[test]
    fn weighted_sum_fiber_counts_by_enumeration() {
        let src = FinAbGroup::direct_product(&[
            FinAbGroup::cyclic(6),
            FinAbGroup::cyclic(3),
            FinAbGroup::cyclic(2),
        ]);
        let h = FinAbHom::from_generator_images(
            src.clone(),
            FinAbGroup::cyclic(6),
            vec![vec![1], vec![2], vec![3]],
        )
        .unwrap();
        // oracle: brute force over the 36 tuples
        let brute = (0..6u64)
            .flat_map(|a| (0..3u64).flat_map(move |b| (0..2u64).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| (a + 2 * b + 3 * c) % 6 == 0)
            .count();
        assert_eq!(brute, 6);
        assert_eq!(h.hom_fiber(&[0]).len(), brute);
        assert_eq!(h.kernel().len(), 6);
    }

    #[test]
    fn fiber_outside_image_is_empty() {
        let h = FinAbHom::from_generator_images(
            FinAbGroup::cyclic(2),
            FinAbGroup::cyclic(4),
            vec![vec![2]],
        )
        .unwrap();
        assert!(h.hom_fiber(&[1]).is_empty());
        assert_eq!(h.hom_fiber(&[2]).len(), h.kernel().len());
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        let err = FinAbHom::from_generator_images(
            FinAbGroup::cyclic(2),
            FinAbGroup::cyclic(3),
            vec![vec![1]],
        );
        assert!(matches!(err, Err(Error::NotWellDefined(_))));
    }

    #[test]
    fn invariant_factors_of_products() {
        let g = FinAbGroup::direct_product(&[FinAbGroup::cyclic(6), FinAbGroup::cyclic(3), FinAbGroup::cyclic(2)]);
        assert_eq!(g.invariant_factors(), vec![6, 6]);
        assert!(!g.is_cyclic());
        assert!(FinAbGroup::direct_product(&[FinAbGroup::cyclic(2), FinAbGroup::cyclic(3)]).is_cyclic());
    }
}
