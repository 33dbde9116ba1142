use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Dense row-major matrix with fixed dimensions.
///
/// The default entry type is [`BigInt`]; the verification layer also uses
/// rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T = BigInt> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from a list of rows. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Panics if `(i, j)` is outside the matrix.
    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }

    pub fn try_get(&self, i: usize, j: usize) -> Option<&T> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub(crate) fn ensure_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Copies out the contiguous block starting at `(row_start, col_start)`.
    pub fn submatrix(
        &self,
        row_start: usize,
        row_count: usize,
        col_start: usize,
        col_count: usize,
    ) -> Result<Self> {
        let fits = |start: usize, count: usize, limit: usize| {
            start.checked_add(count).is_some_and(|end| end <= limit)
        };
        if !fits(row_start, row_count, self.rows) || !fits(col_start, col_count, self.cols) {
            return Err(Error::BlockOutOfRange {
                row_start,
                row_count,
                col_start,
                col_count,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Matrix::from_fn(row_count, col_count, |i, j| {
            self.get(row_start + i, col_start + j).clone()
        }))
    }

    /// `P A P^T`: entry `(i, j)` of the result is `A(perm[i], perm[j])`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self> {
        let n = self.ensure_square("permute_symmetric")?;
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                op: "permute_symmetric",
                left: self.dims(),
                right: (perm.len(), perm.len()),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(perm.to_vec()));
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| {
            self.get(perm[i], perm[j]).clone()
        }))
    }
}

impl<T: Zero + One + Clone> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::one(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                op: "hadamard",
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Kronecker product; block `(i, j)` of the result is `self(i, j) * other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (br, bc) = other.dims();
        Matrix::from_fn(self.rows * br, self.cols * bc, |i, j| {
            self.get(i / br, j / bc) * other.get(i % br, j % bc)
        })
    }
}

impl<T> Matrix<T>
where
    T: Zero + Clone + Send + Sync,
    for<'a> &'a T: Mul<&'a T, Output = T>,
    for<'a> T: Add<&'a T, Output = T>,
{
    /// Ordinary matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Execution::default())
    }

    pub fn mul_with(&self, other: &Self, exec: Execution) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.dims(),
                right: other.dims(),
            });
        }
        let rows = exec.map_range(self.rows, |i| {
            let lhs = self.row(i);
            let mut out = vec![T::zero(); other.cols];
            for (k, a) in lhs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    *o = std::mem::replace(o, T::zero()) + &(a * b);
                }
            }
            out
        });
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

impl Matrix<BigInt> {
    /// Integer matrix from machine-word rows; mostly for fixtures.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Largest absolute value of any entry; zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str(if i == 0 { "[" } else { ", [" })?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `n x n` identity matrix.
pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n)
}

/// Exact equality of dimensions and entries. Differing shapes compare unequal.
pub fn equal<T: PartialEq>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    a.dims() == b.dims() && a.entries() == b.entries()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_sizes() {
        assert_eq!(identity(1), m(&[&[1]]));
        assert_eq!(identity(3), m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let empty = identity(0);
        assert_eq!(empty.dims(), (0, 0));
        assert!(empty.entries().is_empty());
    }

    #[test]
    fn hadamard_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.hadamard(&identity(2)).unwrap(), m(&[&[1, 0], &[0, 4]]));
        assert_eq!(a.hadamard(&Matrix::ones(2, 2)).unwrap(), a);
    }

    #[test]
    fn hadamard_dimension_mismatch_names_shapes() {
        let err = Matrix::<BigInt>::zeros(2, 3)
            .hadamard(&Matrix::zeros(3, 2))
            .unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                left: (2, 3),
                right: (3, 2),
                ..
            }
        ));
        let msg = err.to_string();
        assert!(msg.contains("2x3") && msg.contains("3x2"), "{msg}");
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).transpose(), m(&[&[1, 3], &[2, 4]]));
        assert_eq!(identity(4).transpose(), identity(4));
        let r = m(&[&[1, 2, 3]]);
        assert_eq!(r.transpose().dims(), (3, 1));
        assert_eq!(r.transpose().transpose(), r);
    }

    #[test]
    fn kronecker_examples() {
        let b = m(&[&[2, 3], &[4, 5]]);
        assert_eq!(m(&[&[1]]).kronecker(&b), b);
        assert_eq!(identity(2).kronecker(&identity(3)), identity(6));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            identity(2).kronecker(&swap),
            m(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
        );
        let rect = m(&[&[1, 2, 3]]).kronecker(&m(&[&[1], &[-1]]));
        assert_eq!(rect, m(&[&[1, 2, 3], &[-1, -2, -3]]));
    }

    #[test]
    fn submatrix_bounds() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.submatrix(0, 2, 0, 3).unwrap(), a);
        assert_eq!(a.submatrix(1, 1, 1, 2).unwrap(), m(&[&[5, 6]]));
        assert_eq!(a.submatrix(2, 0, 3, 0).unwrap().dims(), (0, 0));
        assert!(matches!(
            a.submatrix(1, 2, 0, 1),
            Err(Error::BlockOutOfRange { .. })
        ));
        assert!(a.submatrix(0, 1, usize::MAX, 2).is_err());
    }

    #[test]
    fn equality_is_shape_aware() {
        let z23 = Matrix::<BigInt>::zeros(2, 3);
        let z32 = Matrix::<BigInt>::zeros(3, 2);
        assert!(!equal(&z23, &z32));
        assert!(equal(&z23, &z23.clone()));
        assert_ne!(Matrix::<BigInt>::zeros(0, 3), Matrix::zeros(3, 0));
    }

    #[test]
    fn product_and_shape_errors() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(a.mul_with(&b, exec).unwrap(), m(&[&[2, 1], &[4, 3]]));
        }
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
        assert_eq!(
            Matrix::<BigInt>::zeros(2, 0)
                .mul(&Matrix::zeros(0, 3))
                .unwrap(),
            Matrix::zeros(2, 3)
        );
        assert!(matches!(
            Matrix::from_vec(2, 2, vec![BigInt::zero(); 3]),
            Err(Error::ShapeMismatch { len: 3, .. })
        ));
        assert!(matches!(
            Matrix::from_i64_rows(&[vec![1, 2], vec![3]]),
            Err(Error::RaggedRow {
                row: 1,
                len: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn symmetric_permutation() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            a.permute_symmetric(&[1, 0]).unwrap(),
            m(&[&[4, 3], &[2, 1]])
        );
        assert!(a.permute_symmetric(&[0, 0]).is_err());
    }
}
