use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::group::{Element, FinAbGroup, FinAbHom, Quotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub type QMatrix = Vec<Vec<BigRational>>;

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
pub fn rational_inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_vec(m: &QMatrix, v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Full-rank lattice in `Q^n`, given by the columns of its basis matrix in a
/// fixed ambient chart.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: QMatrix,
    inverse: QMatrix,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_lattice(other).is_ok() && other.contains_lattice(self).is_ok()
    }
}

impl Lattice {
    pub fn from_rational_columns(basis: QMatrix) -> Result<Self> {
        let inverse = rational_inverse(&basis)
            .ok_or_else(|| Error::InvalidArgument("lattice basis is not of full rank".into()))?;
        Ok(Self { basis, inverse })
    }

    pub fn from_integer_columns(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidArgument("lattice basis must be square".into()));
        }
        let basis = (0..m.rows()).map(|i| m.row(i).iter().map(rat).collect()).collect();
        Self::from_rational_columns(basis)
    }

    pub fn standard(n: usize) -> Self {
        Self::from_integer_columns(&IntMatrix::identity(n)).expect("identity has full rank")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// Lattice of vectors pairing integrally with `self` under the standard form.
    pub fn dual(&self) -> Lattice {
        let n = self.dim();
        let basis = (0..n).map(|i| (0..n).map(|j| self.inverse[j][i].clone()).collect()).collect();
        let inverse = (0..n).map(|i| (0..n).map(|j| self.basis[j][i].clone()).collect()).collect();
        Lattice { basis, inverse }
    }

    pub fn coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        mat_vec(&self.inverse, v)
    }

    pub fn vector(&self, c: &[BigInt]) -> Vec<BigRational> {
        let c: Vec<BigRational> = c.iter().map(rat).collect();
        mat_vec(&self.basis, &c)
    }

    pub fn integral_coords(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        self.coords(v).into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.integral_coords(v).is_some()
    }

    /// `Ok` when `other` is a sublattice; otherwise names an offending basis vector.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<()> {
        for j in 0..other.dim() {
            let col: Vec<BigRational> = other.basis.iter().map(|r| r[j].clone()).collect();
            if !self.contains(&col) {
                return Err(Error::NotContained { index: j });
            }
        }
        Ok(())
    }

    /// Integer matrix expressing `other`'s basis in `self`'s coordinates.
    fn coords_of(&self, other: &Lattice) -> Result<IntMatrix> {
        self.contains_lattice(other)?;
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, other.dim());
        for j in 0..other.dim() {
            let col: Vec<BigRational> = other.basis.iter().map(|r| r[j].clone()).collect();
            for (i, x) in self.integral_coords(&col).expect("checked").into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn covolume(&self) -> BigRational {
        let n = self.dim();
        let mut a = self.basis.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            det *= a[col][col].clone();
            for r in col + 1..n {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        det.abs()
    }
}

/// `outer / inner` for a pair of full-rank lattices sharing a chart.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    outer: Lattice,
    inner: Lattice,
    quotient: Quotient,
}

impl LatticeQuotient {
    pub fn group(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn outer(&self) -> &Lattice {
        &self.outer
    }

    pub fn inner(&self) -> &Lattice {
        &self.inner
    }

    /// Class of an ambient vector lying in the outer lattice.
    pub fn project(&self, v: &[BigRational]) -> Result<Element> {
        let c = self
            .outer
            .integral_coords(v)
            .ok_or_else(|| Error::InvalidArgument("vector is not in the outer lattice".into()))?;
        Ok(self.quotient.class_of(&c))
    }

    /// Ambient representative of a class.
    pub fn lift(&self, x: &[u64]) -> Vec<BigRational> {
        self.outer.vector(&self.quotient.lift(x))
    }
}

pub fn lattice_quotient(outer: &Lattice, inner: &Lattice) -> Result<LatticeQuotient> {
    if outer.dim() != inner.dim() {
        return Err(Error::InvalidArgument("lattices of different rank".into()));
    }
    let rel = outer.coords_of(inner)?;
    let quotient = Quotient::new(&rel)?;
    Ok(LatticeQuotient { outer: outer.clone(), inner: inner.clone(), quotient })
}

/// Map `A1/B1 -> A2/B2` induced by the identity of the ambient space.
pub fn induced_hom(q1: &LatticeQuotient, q2: &LatticeQuotient) -> Result<FinAbHom> {
    let incompatible = |what: &str| Error::IncompatiblePairs(what.to_string());
    q2.inner.contains_lattice(&q1.inner).map_err(|_| incompatible("inner lattices are not nested"))?;
    let h = q2.outer.coords_of(&q1.outer).map_err(|_| incompatible("outer lattices are not nested"))?;
    q1.quotient.hom_to(&q2.quotient, &h)
}

/// Bilinear pairing `G x H -> Q/Z` between `P/Q` and `Q*/P*`.
#[derive(Clone, Debug)]
pub struct PairingTable {
    left: FinAbGroup,
    right: FinAbGroup,
    /// pairing of generator i of `left` with generator j of `right`, in `[0,1)`
    generators: Vec<Vec<BigRational>>,
}

fn frac(x: BigRational) -> BigRational {
    let f = x.floor();
    x - f
}

impl PairingTable {
    pub fn pair(&self, x: &[u64], y: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                if a != 0 && b != 0 {
                    acc += &self.generators[i][j] * BigRational::from_integer(BigInt::from(a * b));
                }
            }
        }
        frac(acc)
    }

    pub fn left(&self) -> &FinAbGroup {
        &self.left
    }

    pub fn right(&self) -> &FinAbGroup {
        &self.right
    }

    /// Both induced maps into the character groups are injective.
    pub fn is_nondegenerate(&self) -> bool {
        let ls = self.left.elements();
        let rs = self.right.elements();
        let left_ok = ls
            .iter()
            .filter(|x| x.iter().any(|&a| a != 0))
            .all(|x| rs.iter().any(|y| !self.pair(x, y).is_zero()));
        let right_ok = rs
            .iter()
            .filter(|y| y.iter().any(|&a| a != 0))
            .all(|y| ls.iter().any(|x| !self.pair(x, y).is_zero()));
        left_ok && right_ok && ls.len() == rs.len()
    }

    pub fn is_bilinear(&self) -> bool {
        let ls = self.left.elements();
        let rs = self.right.elements();
        ls.iter().all(|x| {
            ls.iter().all(|x2| {
                rs.iter().all(|y| {
                    self.pair(&self.left.add(x, x2), y) == frac(self.pair(x, y) + self.pair(x2, y))
                })
            })
        })
    }
}

/// Pairing between `outer/inner` and `inner*/outer*` induced by the standard form.
pub fn duality_pairing(g: &LatticeQuotient, h: &LatticeQuotient) -> Result<PairingTable> {
    if h.outer != g.inner.dual() || h.inner != g.outer.dual() {
        return Err(Error::NotDual);
    }
    let dot = |u: &[BigRational], v: &[BigRational]| -> BigRational {
        u.iter().zip(v).map(|(a, b)| a * b).sum()
    };
    let generators = g
        .group()
        .generators()
        .iter()
        .map(|x| {
            let u = g.lift(x);
            h.group().generators().iter().map(|y| frac(dot(&u, &h.lift(y)))).collect()
        })
        .collect();
    Ok(PairingTable { left: g.group().clone(), right: h.group().clone(), generators })
}

/// Index `[outer : inner]` from covolumes, independent of the quotient route.
pub fn index_by_covolume(outer: &Lattice, inner: &Lattice) -> BigInt {
    let r = inner.covolume() / outer.covolume();
    assert!(r.is_integer(), "covolume ratio of nested lattices is integral");
    r.to_integer()
}


#[cfg(test)]
mod tests {
    use super::*;

    fn cartan_a2() -> IntMatrix {
        IntMatrix::from_rows(&[[2, -1], [-1, 2]])
    }

    #[test]
    fn z2_mod_cartan_a2() {
        let q = lattice_quotient(&Lattice::standard(2), &Lattice::from_integer_columns(&cartan_a2()).unwrap())
            .unwrap();
        assert_eq!(q.group().moduli(), &[3]);
    }

    #[test]
    fn lattice_mod_itself_is_trivial() {
        let l = Lattice::from_integer_columns(&cartan_a2()).unwrap();
        assert!(lattice_quotient(&l, &l).unwrap().group().is_trivial());
    }

    #[test]
    fn containment_error_names_vector() {
        let half = Lattice::from_rational_columns(vec![
            vec![BigRational::new(1.into(), 2.into()), BigRational::zero()],
            vec![BigRational::zero(), BigRational::one()],
        ])
        .unwrap();
        let err = lattice_quotient(&Lattice::standard(2), &half).unwrap_err();
        assert!(matches!(err, Error::NotContained { index: 0 }));
    }

    #[test]
    fn equal_pairs_give_identity() {
        let q = lattice_quotient(&Lattice::standard(2), &Lattice::from_integer_columns(&cartan_a2()).unwrap())
            .unwrap();
        let h = induced_hom(&q, &q).unwrap();
        assert_eq!(h, FinAbHom::identity(q.group()));
    }

    #[test]
    fn a1_pairing_is_one_half() {
        let p = Lattice::standard(1);
        let q = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2]])).unwrap();
        let g = lattice_quotient(&p, &q).unwrap();
        let h = lattice_quotient(&q.dual(), &p.dual()).unwrap();
        let t = duality_pairing(&g, &h).unwrap();
        assert_eq!(t.pair(&[1], &[1]), BigRational::new(1.into(), 2.into()));
        assert!(t.is_nondegenerate());
    }

    #[test]
    fn non_dual_provenance_is_rejected() {
        let p = Lattice::standard(1);
        let q = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2]])).unwrap();
        let g = lattice_quotient(&p, &q).unwrap();
        assert!(matches!(duality_pairing(&g, &g), Err(Error::NotDual)));
    }
}
