//! Reference implementations that share no code with the library's
//! elimination or search paths.

#![allow(dead_code)]

use hadamard_fi::Matrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn small(m: &Matrix) -> Vec<Vec<i128>> {
    m.row_iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_i128().expect("small entry"))
                .collect()
        })
        .collect()
}

/// Laplace expansion along the first row.
pub fn det(a: &[Vec<i128>]) -> i128 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        n => (0..n)
            .filter(|&j| a[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with_last = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut all = subsets(n - 1, k);
    all.extend(with_last);
    all
}

/// Largest k with a nonsingular k x k minor.
pub fn brute_rank(m: &Matrix) -> usize {
    let a = small(m);
    let (rows, cols) = m.dims();
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| a[i][j]).collect())
                    .collect();
                if det(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// `A(i,j) A(j,i)` is 1 on the diagonal and 0 elsewhere.
pub fn naive_is_hfi(a: &[Vec<i128>]) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| a[i][j] * a[j][i] == i128::from(i == j)))
}

/// Minimum brute-force rank over every n x n matrix with entries in
/// `values` that is an HFI, with no pruning or normalization.
pub fn naive_min_rank(n: usize, values: &[i64]) -> (usize, u64) {
    let cells = n * n;
    let total = (values.len() as u64).pow(cells as u32);
    let mut best = usize::MAX;
    let mut count = 0;
    for mut index in 0..total {
        let mut a = vec![vec![0i128; n]; n];
        for c in 0..cells {
            a[c / n][c % n] = values[(index % values.len() as u64) as usize] as i128;
            index /= values.len() as u64;
        }
        if naive_is_hfi(&a) {
            count += 1;
            let m = Matrix::from_fn(n, n, |i, j| BigInt::from(a[i][j]));
            best = best.min(brute_rank(&m));
        }
    }
    (best, count)
}

pub fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64_rows(rows).unwrap()
}

pub fn a_displayed(r: usize) -> Matrix {
    match r {
        1 => m(&[&[1]]),
        2 => m(&[&[1, 0, 1], &[-1, 1, 0], &[0, 1, 1]]),
        3 => m(&[
            &[1, 0, 0, 1, -1, 1],
            &[-1, 1, 0, 0, 1, 0],
            &[1, -1, 1, -1, 0, 0],
            &[0, 1, 0, 1, 0, 1],
            &[0, 0, 1, -1, 1, 0],
            &[0, 1, 1, 0, 1, 1],
        ]),
        _ => panic!("only A_1..A_3 are displayed"),
    }
}

/// Extended Pascal table: upper index -1..=4 by row, lower index -1..=4 by column.
pub const PASCAL_TABLE: [[i64; 6]; 6] = [
    [0, 1, -1, 1, -1, 1],
    [0, 1, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0],
    [0, 1, 2, 1, 0, 0],
    [0, 1, 3, 3, 1, 0],
    [0, 1, 4, 6, 4, 1],
];
