//! Exact construction, verification and search for Hadamard factorizations
//! of the identity: square matrices `A` with `A o A^T = I`, where `o` is the
//! entrywise product.
//!
//! The [`construct`] module builds the block-Toeplitz family `A_r` of size
//! `r (r + 1) / 2` and rank `r`, together with an explicit rank
//! factorization. [`verify`] checks the defining properties and fooling
//! sets, [`search`] enumerates small restricted families, and [`cli`]
//! drives everything from the command line with exact text formats.

pub mod cli;
pub mod construct;
pub mod error;
pub mod exact;
pub mod exec;
pub mod io;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Matrix, PrimeModulus};
pub use exec::Execution;
