//! Small dense matrices over any exact [`Scalar`] field.
//!
//! Everything here is sized for 2×2 and 4×4 work: group elements, the
//! symplectic form, Möbius numerators and denominators. Inversion is exact
//! Gauss-Jordan over the field; there is no pivot-size heuristic because
//! there is no rounding.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
}

/// Dense row-major matrix with entries in an exact field.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(c > 0 && rows.iter().all(|row| row.len() == c));
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Copy of the `h`×`w` block with upper-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols);
        let mut b = Self::zero(h, w);
        for r in 0..h {
            for c in 0..w {
                b.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        b
    }

    /// Assemble a square matrix from four equally sized blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        assert!(
            a.rows == n && a.cols == n && b.rows == n && b.cols == n
                && c.rows == n && c.cols == n && d.rows == n && d.cols == n
        );
        let mut m = Self::zero(2 * n, 2 * n);
        for r in 0..n {
            for col in 0..n {
                m.set(r, col, a.get(r, col).clone());
                m.set(r, col + n, b.get(r, col).clone());
                m.set(r + n, col, c.get(r, col).clone());
                m.set(r + n, col + n, d.get(r, col).clone());
            }
        }
        m
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::ShapeMismatch(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k).clone() * rhs.get(k, c).clone();
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(MatError::Singular)?;
            if pivot_row != col {
                for c in 0..n {
                    a.data.swap(pivot_row * n + c, col * n + c);
                    inv.data.swap(pivot_row * n + c, col * n + c);
                }
            }
            let pinv = a.get(col, col).invert().ok_or(MatError::Singular)?;
            for c in 0..n {
                a.set(col, c, a.get(col, c).clone() * pinv.clone());
                inv.set(col, c, inv.get(col, c).clone() * pinv.clone());
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in 0..n {
                    let va = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                    a.set(r, c, va);
                    let vi = inv.get(r, c).clone() - factor.clone() * inv.get(col, c).clone();
                    inv.set(r, c, vi);
                }
            }
        }
        Ok(inv)
    }

    /// Exact determinant by elimination.
    pub fn determinant(&self) -> Result<S, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !a.get(r, col).is_zero()) {
                Some(r) => r,
                None => return Ok(S::zero()),
            };
            if pivot_row != col {
                for c in 0..n {
                    a.data.swap(pivot_row * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = det * pivot.clone();
            let pinv = pivot.invert().expect("nonzero pivot");
            for r in (col + 1)..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone() * pinv.clone();
                for c in col..n {
                    let v = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S: fmt::Display> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<S: fmt::Display> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio, Rational};
    use proptest::prelude::*;

    type QMat = Mat<Rational>;

    #[test]
    fn identity_inverse() {
        let id = QMat::identity(4);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn diagonal_inverse() {
        let q = 3i64;
        let m = QMat::diagonal(vec![rat(1), ratio(1, q * q), rat(1), rat(q * q)]);
        let want = QMat::diagonal(vec![rat(1), rat(q * q), rat(1), ratio(1, q * q)]);
        assert_eq!(m.inverse().unwrap(), want);
    }

    #[test]
    fn singular_is_an_error() {
        let m = QMat::from_rows(vec![
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
        ]);
        assert_eq!(m.inverse(), Err(MatError::Singular));
        assert_eq!(m.determinant().unwrap(), rat(0));
    }

    #[test]
    fn determinant_of_permuted_diagonal() {
        let m = QMat::from_rows(vec![
            vec![rat(0), rat(2)],
            vec![rat(3), rat(0)],
        ]);
        assert_eq!(m.determinant().unwrap(), rat(-6));
    }

    #[test]
    fn block_roundtrip() {
        let m = QMat::from_rows(vec![
            vec![rat(1), rat(2), rat(3), rat(4)],
            vec![rat(5), rat(6), rat(7), rat(8)],
            vec![rat(9), rat(10), rat(11), rat(12)],
            vec![rat(13), rat(14), rat(15), rat(16)],
        ]);
        let a = m.block(0, 0, 2, 2);
        let b = m.block(0, 2, 2, 2);
        let c = m.block(2, 0, 2, 2);
        let d = m.block(2, 2, 2, 2);
        assert_eq!(QMat::from_blocks(&a, &b, &c, &d), m);
    }

    // Nonsingular by construction: P·L·U with unit-diagonal triangular parts.
    fn plu(perm: usize, l: [i64; 6], u: [i64; 6]) -> QMat {
        let n = 4;
        let mut lm = QMat::identity(n);
        let mut um = QMat::identity(n);
        let mut k = 0;
        for r in 0..n {
            for c in 0..r {
                lm.set(r, c, rat(l[k]));
                um.set(c, r, rat(u[k]));
                k += 1;
            }
        }
        let perms: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [3, 2, 1, 0], [2, 3, 0, 1]];
        let mut pm = QMat::zero(n, n);
        for (r, &c) in perms[perm % 4].iter().enumerate() {
            pm.set(r, c, rat(1));
        }
        &(&pm * &lm) * &um
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn inverse_roundtrip(
            perm in 0usize..4,
            l in proptest::array::uniform6(-3i64..=3),
            u in proptest::array::uniform6(-3i64..=3),
        ) {
            let m = plu(perm, l, u);
            let inv = m.inverse().unwrap();
            prop_assert_eq!(&m * &inv, QMat::identity(4));
            prop_assert_eq!(&inv * &m, QMat::identity(4));
        }
    }
}
