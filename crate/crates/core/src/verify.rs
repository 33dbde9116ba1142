//! Checks for Hadamard factorizations of the identity (HFIs), the strong
//! support property and fooling sets.
//!
//! Every check scans in row-major order and reports the first failure, so
//! reports are reproducible.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rank_exact, Matrix};
use crate::exec::Execution;

/// Entry types the checks run over: integers for generated matrices,
/// rationals for user input.
pub trait Entry: Zero + One + PartialEq + Clone + Send + Sync
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self>,
{
}

impl<T> Entry for T
where
    T: Zero + One + PartialEq + Clone + Send + Sync,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// `A(i,i) * A(i,i) != 1`.
    DiagonalProduct,
    /// `A(i,j) * A(j,i) != 0` for `i != j`.
    OffDiagonalProduct,
    /// Both `A(i,j)` and `A(j,i)` are zero.
    BothZero,
    /// Neither `A(i,j)` nor `A(j,i)` is zero.
    NeitherZero,
    /// The entry selected by pair `i` is zero.
    FoolingEntryZero,
    /// Pairs `i` and `j` have a nonzero cross product.
    FoolingCrossProduct,
}

impl ViolationKind {
    pub fn code(self) -> &'static str {
        match self {
            ViolationKind::DiagonalProduct => "diagonal_product_not_one",
            ViolationKind::OffDiagonalProduct => "off_diagonal_product_nonzero",
            ViolationKind::BothZero => "both_zero",
            ViolationKind::NeitherZero => "neither_zero",
            ViolationKind::FoolingEntryZero => "pair_entry_zero",
            ViolationKind::FoolingCrossProduct => "cross_product_nonzero",
        }
    }
}

/// First failing position. For matrix checks `(i, j)` is an entry; for
/// fooling-set checks `i` and `j` are positions in the pair list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.kind.code())
    }
}

/// `rank^2 >= n` for an HFI of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBound {
    pub rank: usize,
    /// Smallest rank any HFI of this size can have.
    pub sqrt_ceil: usize,
    pub holds: bool,
    /// `rank^2 < 2n`; an informal marker, the `A_r` family has `rank^2 = 2n - rank`.
    pub near_optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub size: usize,
    pub violation: Option<Violation>,
    pub rank_bound: Option<RankBound>,
}

impl VerifyReport {
    fn new(size: usize, violation: Option<Violation>) -> Self {
        VerifyReport {
            size,
            violation,
            rank_bound: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `A o A^T = I`: unit diagonal products, zero off-diagonal products.
pub fn is_hfi<T: Entry>(a: &Matrix<T>) -> Result<VerifyReport>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let n = a.ensure_square("is_hfi")?;
    let one = T::one();
    // (i, j) and (j, i) share a product, so row i only needs columns j >= i.
    let violation = Execution::default().find_map_first(n, |i| {
        (i..n).find_map(|j| {
            let p = a.get(i, j) * a.get(j, i);
            if i == j && p != one {
                Some(Violation {
                    i,
                    j,
                    kind: ViolationKind::DiagonalProduct,
                })
            } else if i != j && !p.is_zero() {
                Some(Violation {
                    i,
                    j,
                    kind: ViolationKind::OffDiagonalProduct,
                })
            } else {
                None
            }
        })
    });
    Ok(VerifyReport::new(n, violation))
}

/// Checks that exactly one of `A(i,j)`, `A(j,i)` is zero for every `i != j`.
pub fn strong_support<T: Entry>(a: &Matrix<T>) -> Result<VerifyReport>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let n = a.ensure_square("strong_support")?;
    let violation = Execution::default().find_map_first(n, |i| {
        (i + 1..n).find_map(|j| match (a.get(i, j).is_zero(), a.get(j, i).is_zero()) {
            (true, true) => Some(Violation {
                i,
                j,
                kind: ViolationKind::BothZero,
            }),
            (false, false) => Some(Violation {
                i,
                j,
                kind: ViolationKind::NeitherZero,
            }),
            _ => None,
        })
    });
    Ok(VerifyReport::new(n, violation))
}

/// Pairs `(row, column)` with no repeated row and no repeated column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoolingSet {
    pairs: Vec<(usize, usize)>,
}

impl FoolingSet {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut rows = HashSet::new();
        let mut cols = HashSet::new();
        for &(i, j) in &pairs {
            if !rows.insert(i) {
                return Err(Error::DuplicateIndex {
                    axis: "row",
                    index: i,
                });
            }
            if !cols.insert(j) {
                return Err(Error::DuplicateIndex {
                    axis: "column",
                    index: j,
                });
            }
        }
        Ok(FoolingSet { pairs })
    }

    /// `{(0,0), ..., (n-1,n-1)}`.
    pub fn diagonal(n: usize) -> Self {
        FoolingSet {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Checks `M(i_k, j_k) != 0` for every pair and
/// `M(i_k, j_l) * M(i_l, j_k) = 0` for every two distinct pairs.
pub fn fooling_verify<T: Entry>(m: &Matrix<T>, fs: &FoolingSet) -> Result<VerifyReport>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let (rows, cols) = m.dims();
    if let Some(&(row, col)) = fs.pairs().iter().find(|&&(i, j)| i >= rows || j >= cols) {
        return Err(Error::IndexOutOfRange {
            row,
            col,
            rows,
            cols,
        });
    }
    let pairs = fs.pairs();
    let entry_zero = pairs.iter().position(|&(i, j)| m.get(i, j).is_zero());
    let violation = match entry_zero {
        Some(k) => Some(Violation {
            i: k,
            j: k,
            kind: ViolationKind::FoolingEntryZero,
        }),
        None => Execution::default().find_map_first(pairs.len(), |k| {
            let (ik, jk) = pairs[k];
            (k + 1..pairs.len()).find_map(|l| {
                let (il, jl) = pairs[l];
                let p = m.get(ik, jl) * m.get(il, jk);
                (!p.is_zero()).then_some(Violation {
                    i: k,
                    j: l,
                    kind: ViolationKind::FoolingCrossProduct,
                })
            })
        }),
    };
    Ok(VerifyReport::new(fs.len(), violation))
}

/// The diagonal of an HFI, which is always a fooling set for it.
pub fn fooling_from_hfi<T: Entry>(a: &Matrix<T>) -> Result<FoolingSet>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let report = is_hfi(a)?;
    match report.violation {
        Some(v) => Err(Error::NotHfi(v)),
        None => Ok(FoolingSet::diagonal(report.size)),
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s > n {
        s -= 1;
    }
    while s * s < n {
        s += 1;
    }
    s
}

/// HFI report carrying the rank and the `rank^2 >= n` comparison.
pub fn rank_bound_report(a: &Matrix) -> Result<VerifyReport> {
    let mut report = is_hfi(a)?;
    if let Some(v) = report.violation {
        return Err(Error::NotHfi(v));
    }
    let n = report.size;
    let rank = rank_exact(a);
    report.rank_bound = Some(RankBound {
        rank,
        sqrt_ceil: ceil_sqrt(n),
        holds: rank * rank >= n,
        near_optimal: rank * rank < 2 * n,
    });
    Ok(report)
}
