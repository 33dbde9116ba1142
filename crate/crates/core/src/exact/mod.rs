//! Exact integer matrix arithmetic, binomial coefficients and rank.

mod binom;
mod matrix;
mod prime;
mod rank;

pub use binom::binom;
pub use matrix::{equal, identity, Matrix};
pub use prime::PrimeModulus;
pub use rank::{rank_exact, rank_exact_bigint, rank_exact_with, rank_mod};
