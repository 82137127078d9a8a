//! Universal words and universal cycles for permutations.
//!
//! The greedy generator starts from the increasing permutation of length
//! `n - 1` and repeatedly appends the smallest extension whose length-`n`
//! pattern has not been seen yet. The resulting word covers every
//! `n`-permutation exactly once; dropping its last `n - 1` letters and
//! reducing yields a universal cycle.
//!
//! Alongside the generator live a brute-force coverage checker, structural
//! checks on the generated words, the letter-reuse poset used to shrink the
//! alphabet, and the greedy "prefer smallest" de Bruijn construction with a
//! Lyndon-word cross-check.

pub mod alphabet;
pub mod cli;
pub mod debruijn;
mod error;
pub mod generator;
pub mod perm;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use generator::{derive_u_cycle, generate_u_word, scan_starts, GenerationResult, TraceStep};
pub use perm::{extend, reduce, windows, PermWord, ReducedPerm};
pub use verify::{check_u_cycle, check_u_word, CoverageReport};
