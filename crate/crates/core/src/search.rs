//! Exhaustive search for minimum-rank HFIs in small restricted families:
//! boolean, nonnegative, sign and bounded-integer entries, dense or
//! circulant.
//!
//! Dense spaces fix the diagonal to `1`. Scaling rows by `-1` preserves
//! both the HFI property and the rank, so this loses no ranks. Off-diagonal
//! entries are chosen pairwise, `(A(i,j), A(j,i))` for `i < j`, and only
//! pairs with a zero product are generated; every dense candidate is
//! therefore an HFI. Circulant spaces enumerate every first row with a
//! nonzero leading entry and filter.
//!
//! Candidates are numbered in lexicographic order of their free entries.
//! Parallel runs split that range into contiguous chunks and merge chunk
//! results in index order, so the outcome does not depend on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{rank_exact_with, Matrix};
use crate::exec::Execution;

pub const DEFAULT_CEILING: u64 = 1_000_000_000;
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

/// Chunks per parallel search; more chunks than threads keeps the pool busy
/// when chunk costs differ.
const CHUNKS: u64 = 512;
/// Candidates between deadline checks.
const DEADLINE_STRIDE: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{0, 1}`
    Boolean,
    /// `{-1, 0, 1}`
    Signs,
    /// `[-B, B]`
    Bounded(u32),
    /// `[0, B]`
    NonNegative(u32),
}

impl Alphabet {
    /// Allowed values in ascending order.
    pub fn values(self) -> Vec<i64> {
        match self {
            Alphabet::Boolean => vec![0, 1],
            Alphabet::Signs => vec![-1, 0, 1],
            Alphabet::Bounded(b) => (-(b as i64)..=b as i64).collect(),
            Alphabet::NonNegative(b) => (0..=b as i64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Dense,
    Circulant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchSpace {
    n: usize,
    alphabet: Alphabet,
    structure: Structure,
}

impl SearchSpace {
    pub fn new(n: usize, alphabet: Alphabet, structure: Structure) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("matrix size must be at least 1".into()));
        }
        if let Alphabet::Bounded(0) | Alphabet::NonNegative(0) = alphabet {
            return Err(Error::InvalidSpace("entry bound must be at least 1".into()));
        }
        Ok(SearchSpace {
            n,
            alphabet,
            structure,
        })
    }

    pub fn dense(n: usize, alphabet: Alphabet) -> Result<Self> {
        Self::new(n, alphabet, Structure::Dense)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    /// Number of candidates the enumeration would visit, saturating.
    pub fn estimate(&self) -> u128 {
        let m = self.alphabet.values().len() as u128;
        let (base, exp) = match self.structure {
            Structure::Dense => (2 * m - 1, self.n * (self.n - 1) / 2),
            Structure::Circulant => (m, self.n),
        };
        (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest accepted [`SearchSpace::estimate`].
    pub ceiling: u64,
    /// Wall-clock limit; exceeding it returns a partial result.
    pub budget: Duration,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            ceiling: DEFAULT_CEILING,
            budget: DEFAULT_BUDGET,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub min_rank: usize,
    pub witness: Matrix,
    pub candidates_examined: u64,
    /// False when the time budget cut the enumeration short. A truncated
    /// search that found nothing reports the identity, which every space
    /// contains.
    pub exhausted: bool,
}

/// Mixed-radix description of a space: digit `p` ranges over `0..radix[p]`
/// and the first digit is most significant.
struct Layout {
    space: SearchSpace,
    values: Vec<i64>,
    radix: Vec<u64>,
    /// Dense only: zero-product pairs `(A(i,j), A(j,i))` in lexicographic order.
    pair_options: Vec<(i64, i64)>,
    /// Dense only: the `(i, j)`, `i < j`, each digit controls.
    pair_slots: Vec<(usize, usize)>,
    total: u64,
}

impl Layout {
    fn new(space: SearchSpace, ceiling: u64) -> Result<Self> {
        let estimate = space.estimate();
        if estimate > ceiling as u128 {
            return Err(Error::SearchTooLarge { estimate, ceiling });
        }
        let values = space.alphabet.values();
        let n = space.n;
        let mut layout = Layout {
            space,
            values,
            radix: Vec::new(),
            pair_options: Vec::new(),
            pair_slots: Vec::new(),
            total: 0,
        };
        match space.structure {
            Structure::Dense => {
                let v = &layout.values;
                layout.pair_options = v
                    .iter()
                    .flat_map(|&a| v.iter().map(move |&b| (a, b)))
                    .filter(|&(a, b)| a == 0 || b == 0)
                    .collect();
                layout.pair_slots = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect();
                layout.radix = vec![layout.pair_options.len() as u64; layout.pair_slots.len()];
            }
            Structure::Circulant => {
                let nonzero = layout.values.iter().filter(|&&v| v != 0).count() as u64;
                layout.radix = std::iter::once(nonzero)
                    .chain(std::iter::repeat_n(layout.values.len() as u64, n - 1))
                    .collect();
            }
        }
        layout.total = layout.radix.iter().product();
        Ok(layout)
    }

    fn digits(&self, mut index: u64) -> Vec<u64> {
        let mut d = vec![0; self.radix.len()];
        for p in (0..self.radix.len()).rev() {
            d[p] = index % self.radix[p];
            index /= self.radix[p];
        }
        d
    }

    /// Advances to the next index; false on wrap-around.
    fn increment(&self, d: &mut [u64]) -> bool {
        for p in (0..d.len()).rev() {
            d[p] += 1;
            if d[p] < self.radix[p] {
                return true;
            }
            d[p] = 0;
        }
        false
    }

    /// The matrix for a digit vector, or `None` if it is not an HFI.
    fn candidate(&self, d: &[u64]) -> Option<Matrix> {
        let n = self.space.n;
        match self.space.structure {
            Structure::Dense => {
                let mut a = vec![0i64; n * n];
                for i in 0..n {
                    a[i * n + i] = 1;
                }
                for (&(i, j), &digit) in self.pair_slots.iter().zip(d) {
                    let (x, y) = self.pair_options[digit as usize];
                    a[i * n + j] = x;
                    a[j * n + i] = y;
                }
                Some(to_matrix(n, &a))
            }
            Structure::Circulant => {
                let nonzero: Vec<i64> = self.values.iter().copied().filter(|&v| v != 0).collect();
                let mut c = Vec::with_capacity(n);
                c.push(nonzero[d[0] as usize]);
                c.extend(d[1..].iter().map(|&x| self.values[x as usize]));
                let hfi = c[0] * c[0] == 1 && (1..n).all(|s| c[s] * c[n - s] == 0);
                hfi.then(|| Matrix::from_fn(n, n, |i, j| BigInt::from(c[(j + n - i) % n])))
            }
        }
    }
}

fn to_matrix(n: usize, a: &[i64]) -> Matrix {
    Matrix::from_vec(n, n, a.iter().map(|&v| BigInt::from(v)).collect()).expect("n*n entries")
}

/// Streams every HFI in `space` in enumeration order.
pub struct HfiEnumerator {
    layout: Layout,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for HfiEnumerator {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        while !self.done {
            let m = self.layout.candidate(&self.digits);
            self.done = !self.layout.increment(&mut self.digits);
            if m.is_some() {
                return m;
            }
        }
        None
    }
}

pub fn enumerate_hfi(space: SearchSpace, ceiling: u64) -> Result<HfiEnumerator> {
    let layout = Layout::new(space, ceiling)?;
    let digits = vec![0; layout.radix.len()];
    Ok(HfiEnumerator {
        layout,
        digits,
        done: false,
    })
}

struct ChunkOutcome {
    /// (rank, candidate index, witness)
    best: Option<(usize, u64, Matrix)>,
    examined: u64,
    truncated: bool,
}

fn search_chunk(
    layout: &Layout,
    start: u64,
    end: u64,
    deadline: Instant,
    stop: &AtomicBool,
) -> ChunkOutcome {
    let mut out = ChunkOutcome {
        best: None,
        examined: 0,
        truncated: false,
    };
    if start >= end {
        return out;
    }
    let mut d = layout.digits(start);
    for index in start..end {
        if out.examined.is_multiple_of(DEADLINE_STRIDE)
            && (stop.load(Ordering::Relaxed) || Instant::now() >= deadline)
        {
            stop.store(true, Ordering::Relaxed);
            out.truncated = true;
            return out;
        }
        if let Some(m) = layout.candidate(&d) {
            let rank = rank_exact_with(&m, Execution::Sequential);
            if out.best.as_ref().is_none_or(|(r, _, _)| rank < *r) {
                out.best = Some((rank, index, m));
            }
        }
        out.examined += 1;
        layout.increment(&mut d);
    }
    out
}

/// Minimum rank over all HFIs in `space`; ties go to the earliest candidate.
pub fn min_rank_hfi(space: SearchSpace, options: &SearchOptions) -> Result<SearchResult> {
    let layout = Layout::new(space, options.ceiling)?;
    let deadline = Instant::now() + options.budget;
    let stop = AtomicBool::new(false);
    let chunks = CHUNKS.min(layout.total).max(1);
    let bound = |c: u64| (layout.total as u128 * c as u128 / chunks as u128) as u64;
    let outcomes = options.execution.map_range(chunks as usize, |c| {
        search_chunk(
            &layout,
            bound(c as u64),
            bound(c as u64 + 1),
            deadline,
            &stop,
        )
    });

    let mut best: Option<(usize, u64, Matrix)> = None;
    let mut examined = 0;
    let mut truncated = false;
    for o in outcomes {
        examined += o.examined;
        truncated |= o.truncated;
        if let Some(cand) = o.best {
            if best.as_ref().is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best = Some(cand);
            }
        }
    }
    let (min_rank, witness) = match best {
        Some((rank, _, m)) => (rank, m),
        None => (space.n, Matrix::identity(space.n)),
    };
    Ok(SearchResult {
        min_rank,
        witness,
        candidates_examined: examined,
        exhausted: !truncated,
    })
}

/// Integer circulant HFIs with first row in `[-bound, bound]^n`.
pub fn min_rank_circulant(n: usize, bound: u32, options: &SearchOptions) -> Result<SearchResult> {
    min_rank_hfi(
        SearchSpace::new(n, Alphabet::Bounded(bound), Structure::Circulant)?,
        options,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_hfi;

    fn opts(execution: Execution) -> SearchOptions {
        SearchOptions {
            execution,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn space_validation() {
        assert!(SearchSpace::dense(0, Alphabet::Boolean).is_err());
        assert!(SearchSpace::dense(3, Alphabet::Bounded(0)).is_err());
        assert!(SearchSpace::dense(3, Alphabet::NonNegative(0)).is_err());
        assert_eq!(
            SearchSpace::dense(4, Alphabet::Boolean).unwrap().estimate(),
            729
        );
        assert_eq!(
            SearchSpace::new(4, Alphabet::Bounded(1), Structure::Circulant)
                .unwrap()
                .estimate(),
            81
        );
        assert_eq!(
            SearchSpace::dense(60, Alphabet::Bounded(5))
                .unwrap()
                .estimate(),
            u128::MAX
        );
    }

    #[test]
    fn too_large_reports_estimate() {
        let space = SearchSpace::dense(8, Alphabet::Boolean).unwrap();
        let err = min_rank_hfi(space, &SearchOptions::default()).unwrap_err();
        assert_eq!(
            err,
            Error::SearchTooLarge {
                estimate: 3u128.pow(28),
                ceiling: DEFAULT_CEILING
            }
        );
        assert!(enumerate_hfi(SearchSpace::dense(3, Alphabet::Boolean).unwrap(), 26).is_err());
    }

    #[test]
    fn boolean_enumeration_counts() {
        let one: Vec<_> = enumerate_hfi(SearchSpace::dense(1, Alphabet::Boolean).unwrap(), 10)
            .unwrap()
            .collect();
        assert_eq!(one, vec![Matrix::identity(1)]);
        let two: Vec<_> = enumerate_hfi(SearchSpace::dense(2, Alphabet::Boolean).unwrap(), 10)
            .unwrap()
            .collect();
        assert_eq!(
            two,
            vec![
                Matrix::from_i64_rows(&[[1, 0], [0, 1]]).unwrap(),
                Matrix::from_i64_rows(&[[1, 0], [1, 1]]).unwrap(),
                Matrix::from_i64_rows(&[[1, 1], [0, 1]]).unwrap(),
            ]
        );
    }

    #[test]
    fn enumerated_matrices_are_hfis() {
        for space in [
            SearchSpace::dense(3, Alphabet::Signs).unwrap(),
            SearchSpace::new(5, Alphabet::Bounded(1), Structure::Circulant).unwrap(),
            SearchSpace::new(4, Alphabet::NonNegative(2), Structure::Circulant).unwrap(),
        ] {
            for m in enumerate_hfi(space, DEFAULT_CEILING).unwrap() {
                assert!(is_hfi(&m).unwrap().ok(), "{m:?}");
            }
        }
    }

    #[test]
    fn small_minimum_ranks() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let r1 = min_rank_hfi(
                SearchSpace::dense(1, Alphabet::Boolean).unwrap(),
                &opts(exec),
            )
            .unwrap();
            assert_eq!(
                (r1.min_rank, r1.candidates_examined, r1.exhausted),
                (1, 1, true)
            );
            assert_eq!(r1.witness, Matrix::identity(1));

            let r2 = min_rank_hfi(
                SearchSpace::dense(2, Alphabet::Boolean).unwrap(),
                &opts(exec),
            )
            .unwrap();
            assert_eq!(
                (r2.min_rank, r2.candidates_examined, r2.exhausted),
                (2, 3, true)
            );

            let c1 = min_rank_circulant(1, 1, &opts(exec)).unwrap();
            assert_eq!(c1.min_rank, 1);
            let c2 = min_rank_circulant(2, 1, &opts(exec)).unwrap();
            assert_eq!((c2.min_rank, c2.candidates_examined), (2, 6));
        }
    }

    #[test]
    fn zero_budget_truncates() {
        let space = SearchSpace::dense(4, Alphabet::Signs).unwrap();
        let options = SearchOptions {
            budget: Duration::ZERO,
            ..SearchOptions::default()
        };
        let r = min_rank_hfi(space, &options).unwrap();
        assert!(!r.exhausted);
        assert_eq!(r.candidates_examined, 0);
        assert_eq!(r.witness, Matrix::identity(4));
    }
}
