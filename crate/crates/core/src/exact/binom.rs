use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Binomial coefficient with an arbitrary integer upper index.
///
/// For `k >= 0` this is the falling factorial `n (n-1) ... (n-k+1) / k!`,
/// which is an integer for every integer `n` (e.g. `binom(-1, k) = (-1)^k`).
/// For `k < 0` it is zero.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let n = BigInt::from(n);
    let mut acc = BigInt::one();
    // After step i, acc == binom(n, i + 1), so each division is exact.
    for i in 0..k {
        acc *= &n - i;
        let (q, r) = acc.div_rem(&BigInt::from(i + 1));
        debug_assert!(r.is_zero());
        acc = q;
    }
    acc
}
