//! Smith normal form over the integers.
//!
//! The elimination runs first in checked `i128` arithmetic and restarts in
//! `BigInt` the moment any intermediate value would overflow, so results are
//! always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
///
/// `u_inv` is carried along so that quotient maps can lift classes without a
/// separate inversion.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1, ..., d_min(r,c)`, all nonnegative.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }
}

trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn sub_mul(&self, q: &Self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn div_floor(&self, o: &Self) -> Self;
    fn divides(&self, o: &Self) -> bool;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn sub_mul(&self, q: &Self, o: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*o)?)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn divides(&self, o: &Self) -> bool {
        o % self == 0
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub_mul(&self, q: &Self, o: &Self) -> Option<Self> {
        Some(self - q * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn divides(&self, o: &Self) -> bool {
        Zero::is_zero(&(o % self))
    }
}

struct Work<T> {
    m: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

impl<T: Scalar> Work<T> {
    fn new(m: Vec<Vec<T>>, rows: usize, cols: usize) -> Self {
        Self { m, u: ident(rows), u_inv: ident(rows), v: ident(cols) }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.swap(a, b);
        self.u.swap(a, b);
        for row in &mut self.u_inv {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.m {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
    }

    /// row[t] <- row[t] - q * row[s]
    fn row_sub(&mut self, t: usize, s: usize, q: &T) -> Option<()> {
        for j in 0..self.m[t].len() {
            let x = self.m[t][j].sub_mul(q, &self.m[s][j])?;
            self.m[t][j] = x;
        }
        for j in 0..self.u[t].len() {
            let x = self.u[t][j].sub_mul(q, &self.u[s][j])?;
            self.u[t][j] = x;
        }
        // U_inv <- U_inv * E^{-1}: column s += q * column t
        let neg_q = q.neg()?;
        for row in &mut self.u_inv {
            let x = row[s].sub_mul(&neg_q, &row[t])?;
            row[s] = x;
        }
        Some(())
    }

    /// col[t] <- col[t] - q * col[s]
    fn col_sub(&mut self, t: usize, s: usize, q: &T) -> Option<()> {
        for row in &mut self.m {
            let x = row[t].sub_mul(q, &row[s])?;
            row[t] = x;
        }
        for row in &mut self.v {
            let x = row[t].sub_mul(q, &row[s])?;
            row[t] = x;
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for x in self.m[t].iter_mut().chain(self.u[t].iter_mut()) {
            *x = x.neg()?;
        }
        for row in &mut self.u_inv {
            row[t] = row[t].neg()?;
        }
        Some(())
    }

    fn run(&mut self) -> Option<()> {
        let rows = self.m.len();
        let cols = self.v.len();
        for t in 0..rows.min(cols) {
            loop {
                // smallest nonzero entry of the trailing block becomes the pivot
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = &self.m[i][j];
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&self.m[bi][bj])) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { return Some(()) };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                let mut clean = true;
                for i in t + 1..rows {
                    if !self.m[i][t].is_zero() {
                        let q = self.m[i][t].div_floor(&self.m[t][t]);
                        self.row_sub(i, t, &q)?;
                        clean &= self.m[i][t].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.m[t][j].is_zero() {
                        let q = self.m[t][j].div_floor(&self.m[t][t]);
                        self.col_sub(j, t, &q)?;
                        clean &= self.m[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility: fold an offending row into the pivot row and retry
                let pivot = self.m[t][t].clone();
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !pivot.divides(&self.m[i][j])));
                match offender {
                    Some(i) => {
                        let minus_one = T::one().neg()?;
                        self.row_sub(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.m[t][t].is_negative() {
                self.negate_row(t)?;
            }
        }
        Some(())
    }
}

fn to_matrix<T: Scalar + Into<BigInt>>(rows: Vec<Vec<T>>, nrows: usize, ncols: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(nrows, ncols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            out.set(i, j, x.into());
        }
    }
    out
}

/// Computes the Smith normal form of an arbitrary integer matrix.
pub fn smith_decompose(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let fast: Option<Vec<Vec<i128>>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| x.to_i128()).collect())
        .collect();
    if let Some(data) = fast.filter(|_| m.max_abs_bits() < 40) {
        let mut w = Work::new(data, rows, cols);
        if w.run().is_some() {
            return Smith {
                u: to_matrix(w.u, rows, rows),
                u_inv: to_matrix(w.u_inv, rows, rows),
                d: to_matrix(w.m, rows, cols),
                v: to_matrix(w.v, cols, cols),
            };
        }
    }
    let data = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut w = Work::new(data, rows, cols);
    w.run().expect("bigint elimination cannot overflow");
    Smith {
        u: to_matrix(w.u, rows, rows),
        u_inv: to_matrix(w.u_inv, rows, rows),
        d: to_matrix(w.m, rows, cols),
        v: to_matrix(w.v, cols, cols),
    }
}

#[cfg(test)]
mod tests {
    use super::{smith_decompose, IntMatrix, Smith};
    use num_bigint::BigInt;
    use num_traits::{One, Signed, ToPrimitive, Zero};
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_decompose(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{:?}", diag);
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert!(diag.iter().all(|d| !d.is_negative()));
        s
    }

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        check(m).diagonal().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn cartan_a2() {
        assert_eq!(diag_of(&IntMatrix::from_rows(&[[2, -1], [-1, 2]])), vec![1, 3]);
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(diag_of(&IntMatrix::identity(4)), vec![1, 1, 1, 1]);
    }

    #[test]
    fn cartan_d4_is_not_cyclic() {
        let d4 = IntMatrix::from_rows(&[
            [2, -1, 0, 0],
            [-1, 2, -1, -1],
            [0, -1, 2, 0],
            [0, -1, 0, 2],
        ]);
        assert_eq!(diag_of(&d4), vec![1, 1, 2, 2]);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2,3) is diagonal but not in normal form
        assert_eq!(diag_of(&IntMatrix::from_rows(&[[2, 0], [0, 3]])), vec![1, 6]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1_i64 << 50;
        let m = IntMatrix::from_rows(&[[big, big - 1], [big + 1, big]]);
        assert_eq!(diag_of(&m), vec![1, 1]);
    }

    #[test]
    fn rectangular() {
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12]]);
        assert_eq!(diag_of(&m), vec![2, 6]);
    }

    proptest! {
        #[test]
        fn random_matrices_decompose(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            check(&IntMatrix::from_rows(&data));
        }
    }
}
