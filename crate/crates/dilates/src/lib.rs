//! Exact arithmetic for sharp sum-of-dilates growth constants.
//!
//! The crate computes the constant H(λ1,...,λk) attached to a tuple of
//! algebraic dilates (ideal-norm factor times the archimedean product over
//! all complex embeddings), analyses integer matrix families and recovers
//! the underlying dilate systems, enumerates exact sumsets and the extremal
//! construction, and implements the lattice-density calculus over flags of
//! sublattices together with its local and regularity variants.
//!
//! Start with the runnable programs under `examples/`; each one exercises a
//! major capability end to end.

pub mod error;
pub mod rat;

pub mod lattice;
pub mod matrix;
pub mod numfield;
pub mod poly;

pub mod cli;

pub use error::{Error, Result};

/// Deterministic RNG used by every randomized procedure in the crate.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
pub mod embed;
pub mod hconst;
pub mod matfam;
pub mod sumset;
pub mod density;
pub mod voxel;
pub mod config;
pub mod selftest;
pub mod textform;
