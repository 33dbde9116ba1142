//! Toeplitz blocks `F_k`, the block matrices `A_r` assembled from them, the
//! explicit rank-`r` factorization of `A_r`, and Kronecker composition.
//!
//! Indices are 0-based. `F_k(i, j)` depends only on `i - j`, so the base
//! does not change any block.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{binom, Matrix};

/// Shape of the leading `rows x cols` window of the infinite matrix `F_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FkSpec {
    pub k: i64,
    pub rows: usize,
    pub cols: usize,
}

impl FkSpec {
    pub fn new(k: i64, rows: usize, cols: usize) -> Self {
        FkSpec { k, rows, cols }
    }
}

fn signed(negative: bool, v: BigInt) -> BigInt {
    if negative {
        -v
    } else {
        v
    }
}

/// Entry `(i, j)` of `F_k`.
pub fn f_entry(k: i64, i: usize, j: usize) -> BigInt {
    let d = j as i64 - i as i64;
    if k > 0 {
        binom(k - 1, d - 1)
    } else if d > 0 {
        signed(d % 2 != 0, binom(-k - 1 + d, -k - 1))
    } else {
        // (-1)^(i-j-k) with i - j = -d >= 0
        signed((-d - k) % 2 != 0, binom(-d - 1, -k))
    }
}

/// `F_k` restricted to its first `rows` rows and `cols` columns.
///
/// Only the first row and first column are evaluated; every other entry is
/// copied along its diagonal.
pub fn f_matrix(spec: FkSpec) -> Matrix {
    let first_row: Vec<BigInt> = (0..spec.cols).map(|j| f_entry(spec.k, 0, j)).collect();
    let first_col: Vec<BigInt> = (0..spec.rows).map(|i| f_entry(spec.k, i, 0)).collect();
    Matrix::from_fn(spec.rows, spec.cols, |i, j| {
        if j >= i {
            first_row[j - i].clone()
        } else {
            first_col[i - j].clone()
        }
    })
}

/// `r (r + 1) / 2`, the side length of `A_r`.
pub fn a_size(r: usize) -> usize {
    r * (r + 1) / 2
}

/// First global row (and column) of block `b` in `A_r`. Block `b` spans
/// `r - b` rows.
pub fn block_offset(r: usize, b: usize) -> usize {
    debug_assert!(b <= r);
    (0..b).map(|a| r - a).sum()
}

/// Splits a global index of `A_r` into (block, offset within block).
pub fn block_position(r: usize, index: usize) -> Option<(usize, usize)> {
    let mut start = 0;
    for b in 0..r {
        let height = r - b;
        if index < start + height {
            return Some((b, index - start));
        }
        start += height;
    }
    None
}

fn check_rank_parameter(r: usize) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidRankParameter(r))
    } else {
        Ok(())
    }
}

/// The block matrix `A_r`: block row `b`, block column `c` holds
/// `F_{b-c}` cut to `(r - b) x (r - c)`.
pub fn build_a(r: usize) -> Result<Matrix> {
    check_rank_parameter(r)?;
    let blocks: Vec<Vec<Matrix>> = (0..r)
        .map(|b| {
            (0..r)
                .map(|c| f_matrix(FkSpec::new(b as i64 - c as i64, r - b, r - c)))
                .collect()
        })
        .collect();
    let position: Vec<(usize, usize)> = (0..a_size(r))
        .map(|g| block_position(r, g).expect("index inside A_r"))
        .collect();
    let n = a_size(r);
    Ok(Matrix::from_fn(n, n, |gi, gj| {
        let (b, i) = position[gi];
        let (c, j) = position[gj];
        blocks[b][c].get(i, j).clone()
    }))
}

/// `A_r = left * right` with inner dimension `r`.
///
/// `right` is the first `r` rows of `A_r`; row `i` of block `b` of `A_r`
/// equals `sum_t binom(b, t) * right[i + t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowRankCertificate {
    pub r: usize,
    pub left: Matrix,
    pub right: Matrix,
}

impl LowRankCertificate {
    pub fn product(&self) -> Matrix {
        self.left
            .mul(&self.right)
            .expect("certificate factors have matching inner dimension")
    }

    /// True when `left * right` reproduces `a` exactly.
    pub fn reproduces(&self, a: &Matrix) -> bool {
        self.left.cols() == self.right.rows()
            && self.left.rows() == a.rows()
            && self.right.cols() == a.cols()
            && &self.product() == a
    }

    /// The leading `r x r` block of `right`, a unit lower-triangular copy of
    /// `F_0` whose rank bounds `rank(A_r)` from below.
    pub fn leading_block(&self) -> Matrix {
        self.right
            .submatrix(0, self.r, 0, self.r)
            .expect("right factor has at least r columns")
    }
}

pub fn low_rank_certificate(r: usize) -> Result<LowRankCertificate> {
    let a = build_a(r)?;
    let right = a.submatrix(0, r, 0, a.cols())?;
    let left = Matrix::from_fn(a_size(r), r, |g, s| {
        let (b, i) = block_position(r, g).expect("index inside A_r");
        binom(b as i64, s as i64 - i as i64)
    });
    Ok(LowRankCertificate { r, left, right })
}

/// Kronecker product of two square matrices.
///
/// If both inputs are Hadamard factorizations of the identity then so is the
/// result, because `(A (x) B) o (A (x) B)^T = (A o A^T) (x) (B o B^T)`.
pub fn tensor_compose(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.ensure_square("tensor_compose")?;
    b.ensure_square("tensor_compose")?;
    Ok(a.kronecker(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank_exact;
    use num_traits::{One, Zero};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows).unwrap()
    }

    fn a3() -> Matrix {
        m(&[
            &[1, 0, 0, 1, -1, 1],
            &[-1, 1, 0, 0, 1, 0],
            &[1, -1, 1, -1, 0, 0],
            &[0, 1, 0, 1, 0, 1],
            &[0, 0, 1, -1, 1, 0],
            &[0, 1, 1, 0, 1, 1],
        ])
    }

    #[test]
    fn entries_match_displayed_blocks() {
        for i in 0..10 {
            assert_eq!(f_entry(0, i, i), BigInt::one());
        }
        assert_eq!(f_entry(1, 0, 1), BigInt::one());
        assert_eq!(f_entry(1, 0, 0), BigInt::zero());
        assert_eq!(f_entry(-1, 0, 0), BigInt::one());
        assert_eq!(f_entry(-1, 1, 0), BigInt::zero());
        assert_eq!(f_entry(-2, 0, 0), BigInt::one());
    }

    #[test]
    fn fk_windows() {
        assert_eq!(
            f_matrix(FkSpec::new(0, 3, 3)),
            m(&[&[1, 0, 0], &[-1, 1, 0], &[1, -1, 1]])
        );
        assert_eq!(f_matrix(FkSpec::new(3, 1, 4)), m(&[&[0, 1, 2, 1]]));
        assert_eq!(f_matrix(FkSpec::new(2, 1, 4)), m(&[&[0, 1, 1, 0]]));
        assert_eq!(f_matrix(FkSpec::new(-1, 2, 1)), m(&[&[1], &[0]]));
        assert_eq!(f_matrix(FkSpec::new(-4, 0, 5)).dims(), (0, 5));
        for k in 1..6 {
            let f = f_matrix(FkSpec::new(k, 7, 7));
            assert!((0..7).all(|i| f.get(i, 0).is_zero()));
        }
    }

    #[test]
    fn small_a_matrices() {
        assert_eq!(build_a(1).unwrap(), m(&[&[1]]));
        assert_eq!(
            build_a(2).unwrap(),
            m(&[&[1, 0, 1], &[-1, 1, 0], &[0, 1, 1]])
        );
        assert_eq!(build_a(3).unwrap(), a3());
        assert_eq!(build_a(0), Err(Error::InvalidRankParameter(0)));
    }

    #[test]
    fn block_indexing() {
        assert_eq!(block_offset(4, 0), 0);
        assert_eq!(block_offset(4, 2), 7);
        assert_eq!(block_offset(4, 4), 10);
        assert_eq!(block_position(4, 6), Some((1, 2)));
        assert_eq!(block_position(4, 7), Some((2, 0)));
        assert_eq!(block_position(4, 10), None);
    }

    #[test]
    fn certificates() {
        let c1 = low_rank_certificate(1).unwrap();
        assert_eq!(c1.left, m(&[&[1]]));
        assert_eq!(c1.right, m(&[&[1]]));

        let c2 = low_rank_certificate(2).unwrap();
        assert_eq!(c2.left.dims(), (3, 2));
        assert_eq!(c2.right.dims(), (2, 3));
        assert_eq!(c2.left.row(2), &[BigInt::one(), BigInt::one()]);
        assert!(c2.reproduces(&build_a(2).unwrap()));

        let c6 = low_rank_certificate(6).unwrap();
        assert!(c6.reproduces(&build_a(6).unwrap()));
        assert_eq!(rank_exact(&c6.leading_block()), 6);
        assert!(!c6.reproduces(&build_a(5).unwrap()));
        assert!(low_rank_certificate(0).is_err());
    }

    #[test]
    fn tensor_requires_square() {
        let a2 = build_a(2).unwrap();
        assert_eq!(tensor_compose(&m(&[&[1]]), &a2).unwrap(), a2);
        assert_eq!(
            tensor_compose(&Matrix::identity(2), &Matrix::identity(2)).unwrap(),
            Matrix::identity(4)
        );
        assert!(matches!(
            tensor_compose(&Matrix::zeros(2, 3), &a2),
            Err(Error::NotSquare {
                rows: 2,
                cols: 3,
                ..
            })
        ));
    }
}
