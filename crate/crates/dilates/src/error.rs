//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate resultant operand")]
    DegenerateResultant,
    #[error("lattice not full rank")]
    LatticeNotFullRank,
    #[error("not a sublattice")]
    NotASublattice,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index bound exceeded: {got} > cap {cap}")]
    IndexCapExceeded { got: u128, cap: u128 },
    #[error("memory cap exceeded: projected {got} > cap {cap}")]
    MemoryCapExceeded { got: u128, cap: u128 },
    #[error("repeated roots")]
    RepeatedRoots,
    #[error("root certification failed: achieved radius {achieved:e} > requested {requested:e}")]
    CertificationFailed { achieved: f64, requested: f64 },
    #[error("precision insufficient: needed {0} bits above cap")]
    PrecisionExhausted(u32),
    #[error("dilates generate proper subfield")]
    ProperSubfield,
    #[error("basis not multiplicatively closed")]
    BasisNotClosed,
    #[error("dilate does not map lattice into target")]
    LatticeNotMapped,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("non-squarefree integer: {0}")]
    NotSquarefree(i64),
    #[error("pre-commutativity unsupported: every member singular and no irreducibility certificate")]
    PreCommutingUnsupported,
    #[error("operation requires a pre-commuting family")]
    NotPreCommuting,
    #[error("operation requires an irreducible family")]
    NotIrreducible,
    #[error("irreducibility inconclusive")]
    Inconclusive,
    #[error("search space above cap")]
    SearchCapExceeded,
    #[error("non-tileable region: {0}")]
    NotTileable(String),
    #[error("divisibility failure: {0}")]
    Divisibility(String),
    #[error("ambiguous boundary points exceed 1% of the set")]
    TooManyAmbiguous,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("integer overflow in {0}; input exceeds supported scale")]
    Overflow(&'static str),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
