//! Matroid machinery for locally repairable codes (LRCs).
//!
//! The crate covers
//! - matroids given by independent sets, rank tables or lattices of cyclic
//!   flats ([`matroid`]),
//! - codes and the matroids they induce ([`code`]),
//! - the LRC parameters `(n, k, d, r, δ)` read off a matroid, the
//!   generalized Singleton bound and the structure conditions of optimal
//!   matroids ([`analysis`]),
//! - explicit matroid constructions from atoms and weighted graphs
//!   ([`constructions`]),
//! - lower bounds on the largest achievable minimum distance and the
//!   nullity redistribution procedure ([`bounds`]),
//! - an erasure-channel repair simulator ([`erasure`]),
//! - brute-force reference computations ([`oracle`]),
//! - canonical JSON documents ([`io`]).

pub mod analysis;
pub mod bounds;
pub mod code;
pub mod constructions;
pub mod erasure;
pub mod io;
pub mod matroid;
pub mod oracle;
pub mod subset;

pub use analysis::{LocalityCover, LrcParams};
pub use code::BlockCode;
pub use constructions::{AtomMatroid, AtomSpec, ConditionViolation, ConstructionGraph};
pub use matroid::{CyclicFlat, CyclicFlatLattice, Matroid, RankTable, Representation, SubsetFamily};
pub use subset::Subset;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set of size {n} exceeds the supported limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("rank table has {found} entries, expected {expected}")]
    MissingSubset { expected: usize, found: usize },
    #[error("{0}")]
    InvalidMatroid(matroid::AxiomViolation),
    #[error("{0} is not a cyclic flat")]
    NotInLattice(Subset),
    #[error("family of cyclic flats is not a lattice")]
    NotALattice,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("code is not almost affine: |C_X| is not a power of s for X = {witness}")]
    NotAlmostAffine { witness: Subset },
    #[error("minimum distance needs at least two codewords")]
    SingletonCode,
    #[error("matroid has rank zero")]
    RankZero,
    #[error("greatest cyclic flat is not the whole ground set")]
    TopNotE,
    #[error("matroid has no ({r}, {delta}) locality")]
    NoLocality { r: usize, delta: usize },
    #[error("invalid locality cover: {0}")]
    InvalidCover(String),
    #[error("locality chain stalled at {stalled_at} before reaching the ground set")]
    ChainStalled { stalled_at: Subset },
    #[error("construction conditions violated: {}", format_violations(.0))]
    ConditionViolated(Vec<ConditionViolation>),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no pair of intersecting atoms available to donate an element")]
    NoDonorPair,
    #[error("no atom has nullity above δ - 1")]
    NoExcessNullity,
    #[error("built matroid disagrees with its closed-form parameters: {0}")]
    FormulaMismatch(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

fn format_violations(v: &[ConditionViolation]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// `⌈a / b⌉` for non-negative integers.
pub fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}
