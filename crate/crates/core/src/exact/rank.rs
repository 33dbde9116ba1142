//! Exact rank over the rationals and over prime fields.
//!
//! Both routines pick as pivot the first nonzero entry found scanning the
//! remaining block column by column, top to bottom, so results and
//! intermediate states are reproducible.

use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::Matrix;
use super::prime::PrimeModulus;
use crate::exec::Execution;

/// Below this many entries in the trailing block, row updates stay on the
/// calling thread.
const PARALLEL_MIN_ENTRIES: usize = 4096;

/// Ring operations needed by fraction-free elimination. `None` signals that
/// the result does not fit the representation.
trait BareissEntry: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    /// `(pivot * x - lead * y) / prev`, where the division is exact.
    fn step(pivot: &Self, x: &Self, lead: &Self, y: &Self, prev: &Self) -> Option<Self>;
    fn one() -> Self;
    fn zero() -> Self;
}

impl BareissEntry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn step(pivot: &i128, x: &i128, lead: &i128, y: &i128, prev: &i128) -> Option<i128> {
        let num = pivot.checked_mul(*x)?.checked_sub(lead.checked_mul(*y)?)?;
        debug_assert_eq!(num % prev, 0);
        Some(num / prev)
    }

    fn one() -> i128 {
        1
    }

    fn zero() -> i128 {
        0
    }
}

impl BareissEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn step(
        pivot: &BigInt,
        x: &BigInt,
        lead: &BigInt,
        y: &BigInt,
        prev: &BigInt,
    ) -> Option<BigInt> {
        let num = pivot * x - lead * y;
        let (q, r) = num.div_rem(prev);
        debug_assert!(Zero::is_zero(&r));
        Some(q)
    }

    fn one() -> BigInt {
        BigInt::from(1)
    }

    fn zero() -> BigInt {
        <BigInt as Zero>::zero()
    }
}

/// Finds the column-major first nonzero entry in `rows[r..]`, columns `col..`.
fn find_pivot<T>(
    rows: &[Vec<T>],
    r: usize,
    col: usize,
    is_zero: impl Fn(&T) -> bool,
) -> Option<(usize, usize)> {
    let ncols = rows.first().map_or(0, Vec::len);
    (col..ncols).find_map(|c| {
        (r..rows.len())
            .find(|&i| !is_zero(&rows[i][c]))
            .map(|i| (i, c))
    })
}

fn bareiss_rank<T: BareissEntry>(mut rows: Vec<Vec<T>>, exec: Execution) -> Option<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    let mut col = 0;
    while let Some((pi, pc)) = find_pivot(&rows, rank, col, T::is_zero) {
        rows.swap(rank, pi);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[pc];
        let overflow = AtomicBool::new(false);
        let update = |row: &mut Vec<T>| {
            let lead = row[pc].clone();
            for c in pc + 1..ncols {
                match T::step(pivot, &row[c], &lead, &pivot_row[c], &prev) {
                    Some(v) => row[c] = v,
                    None => {
                        overflow.store(true, Ordering::Relaxed);
                        return;
                    }
                }
            }
            // Columns left of the pivot are already zero below the pivot row.
            row[pc] = T::zero();
        };
        let work = tail.len() * (ncols - pc);
        if work >= PARALLEL_MIN_ENTRIES {
            exec.for_each_mut(tail, update);
        } else {
            tail.iter_mut().for_each(update);
        }
        if overflow.load(Ordering::Relaxed) {
            return None;
        }
        prev = pivot.clone();
        rank += 1;
        col = pc + 1;
    }
    Some(rank)
}

/// Rank over the rationals, computed exactly.
pub fn rank_exact(a: &Matrix) -> usize {
    rank_exact_with(a, Execution::default())
}

/// [`rank_exact`] with an explicit execution strategy.
///
/// Matrices whose entries fit in `i128` are eliminated with checked
/// machine arithmetic first; any overflow restarts the elimination on
/// arbitrary-precision integers.
pub fn rank_exact_with(a: &Matrix, exec: Execution) -> usize {
    let small: Option<Vec<Vec<i128>>> = a
        .row_iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect();
    if let Some(rank) = small.and_then(|rows| bareiss_rank(rows, exec)) {
        return rank;
    }
    rank_exact_bigint(a, exec)
}

/// Fraction-free elimination on arbitrary-precision integers only.
pub fn rank_exact_bigint(a: &Matrix, exec: Execution) -> usize {
    let rows = a.row_iter().map(<[BigInt]>::to_vec).collect();
    bareiss_rank(rows, exec).expect("BigInt elimination cannot overflow")
}

/// Rank of `a` reduced modulo `p`.
pub fn rank_mod(a: &Matrix, p: PrimeModulus) -> usize {
    let modulus = BigInt::from(p.get());
    let mut rows: Vec<Vec<u64>> = a
        .row_iter()
        .map(|r| {
            r.iter()
                .map(|v| v.mod_floor(&modulus).to_u64().expect("residue below p"))
                .collect()
        })
        .collect();
    let ncols = a.cols();
    let mut rank = 0;
    let mut col = 0;
    while let Some((pi, pc)) = find_pivot(&rows, rank, col, |v| *v == 0) {
        rows.swap(rank, pi);
        let inv = p.inv(rows[rank][pc]);
        for v in &mut rows[rank][pc..] {
            *v = p.mul(*v, inv);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail {
            let factor = row[pc];
            if factor == 0 {
                continue;
            }
            for c in pc..ncols {
                row[c] = p.sub(row[c], p.mul(factor, pivot_row[c]));
            }
        }
        rank += 1;
        col = pc + 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn basic_ranks() {
        assert_eq!(rank_exact(&Matrix::identity(5)), 5);
        assert_eq!(rank_exact(&Matrix::zeros(3, 4)), 0);
        assert_eq!(rank_exact(&Matrix::zeros(0, 4)), 0);
        assert_eq!(rank_exact(&Matrix::zeros(4, 0)), 0);
        assert_eq!(rank_exact(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_exact(&m(&[&[0, 0, 1], &[0, 0, 2], &[0, 1, 0]])), 2);
        assert_eq!(rank_exact(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = BigInt::from(10).pow(30);
        let a = Matrix::from_fn(3, 3, |i, j| {
            &big * BigInt::from((i * 3 + j) as i64 % 5 + 1) + BigInt::from(i as i64)
        });
        let exact = rank_exact_bigint(&a, Execution::Sequential);
        assert_eq!(rank_exact(&a), exact);
        assert_eq!(exact, 3);
        let b = Matrix::from_fn(2, 2, |_, _| big.clone() * big.clone());
        assert_eq!(rank_exact(&b), 1);
    }

    #[test]
    fn modular_ranks() {
        let p2 = PrimeModulus::new(2).unwrap();
        assert_eq!(rank_mod(&m(&[&[1, 1], &[1, 1]]), p2), 1);
        assert_eq!(rank_mod(&m(&[&[2, 0], &[0, 1]]), p2), 1);
        assert_eq!(rank_mod(&m(&[&[-1, 1], &[1, 1]]), p2), 1);
        assert_eq!(rank_exact(&m(&[&[-1, 1], &[1, 1]])), 2);
        for p in [2, 3, 5, 65537] {
            assert_eq!(
                rank_mod(&Matrix::identity(4), PrimeModulus::new(p).unwrap()),
                4
            );
        }
    }

    #[test]
    fn parallel_and_sequential_agree_on_large_input() {
        let a = Matrix::from_fn(80, 80, |i, j| {
            BigInt::from(((i * 7 + j * 13) % 11) as i64 - 5)
        });
        assert_eq!(
            rank_exact_bigint(&a, Execution::Sequential),
            rank_exact_bigint(&a, Execution::Parallel)
        );
    }
}
