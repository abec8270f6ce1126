use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use super::scalar::{Scalar, C64};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// 1×1 matrix.
    pub fn scalar(value: T) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![value] }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    let prod = a.clone() * other.get(k, j).clone();
                    out.data[idx] = out.data[idx].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// Kronecker product `self ⊗ other`, with row index `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            self.get(i, j).clone() * other.get(k, l).clone()
        })
    }

    pub fn pow(&self, p: usize) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..p {
            out = &out * self;
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `tr(a) / rows`.
    pub fn normalized_trace(&self) -> T {
        let n = T::from_i64(self.rows as i64);
        self.trace() * n.inverse().unwrap_or_else(T::zero)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        match self.try_sub(other) {
            Ok(d) => d.max_abs(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }
}

impl Matrix<C64> {
    pub fn real(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| C64::new(x, 0.0)).collect()).collect())
    }
}

impl<'a, T: Scalar> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<'a, T: Scalar> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<'a, T: Scalar> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

/// Product of a sequence of square matrices of size `dim`; identity when empty.
pub fn product<'a, T: Scalar + 'a>(dim: usize, factors: impl IntoIterator<Item = &'a Matrix<T>>) -> Matrix<T> {
    let mut acc: Option<Matrix<T>> = None;
    for f in factors {
        acc = Some(match acc {
            None => f.clone(),
            Some(a) => &a * f,
        });
    }
    acc.unwrap_or_else(|| Matrix::identity(dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{rat, Rational};

    #[test]
    fn product_and_adjoint() {
        let a = Matrix::from_rows(vec![vec![C64::new(1.0, 1.0), C64::new(0.0, 2.0)], vec![C64::new(3.0, 0.0), C64::new(0.0, 0.0)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![C64::new(0.0, 1.0), C64::new(1.0, 0.0)], vec![C64::new(2.0, 0.0), C64::new(1.0, -1.0)]]).unwrap();
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]]).unwrap();
        let i2: Matrix<Rational> = Matrix::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(0, 2), rat(2, 1));
        assert_eq!(*k.get(1, 3), rat(2, 1));
        assert_eq!(*k.get(0, 3), rat(0, 1));
        assert_eq!(k.normalized_trace(), rat(5, 2));
    }

    #[test]
    fn shape_errors() {
        let a: Matrix<Rational> = Matrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(a.try_add(&Matrix::zeros(3, 2)).is_err());
        assert!(Matrix::from_rows(vec![vec![rat(1, 1)], vec![]]).is_err());
    }
}
