//! Exact computations around growth and conjugacy growth of finitely
//! generated groups: breadth-first ball enumeration with canonical-form
//! deduplication, conjugacy class counting by complete invariants or by a
//! bounded-conjugator oracle, a calculus of semigroup diagrams (diagram
//! groups), explicit witness families with exponentially many pairwise
//! non-conjugate elements, and least-squares growth model fitting.
//!
//! Group element arithmetic is generic over the integer scalar via
//! [`int::Int`]; the aliases at the crate root fix `i64` (fast, bounded)
//! and `BigInt` (unbounded) backends.

pub mod diagram;
pub mod engine;
pub mod fit;
pub mod groups;
pub mod int;
pub mod selftest;
pub mod word;

pub use engine::{Ball, EngineError, GrowthSeries, SeriesKind};
pub use word::{Alphabet, CyclicWord, Word, WordError};

use num_bigint::BigInt;

/// Version string embedded in every output file.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Heisenberg group with unbounded exponents.
pub type Heisenberg = groups::heisenberg::HeisenbergGroup<BigInt>;
/// Heisenberg group over `i64`; safe for radii far beyond desk scale.
pub type HeisenbergI64 = groups::heisenberg::HeisenbergGroup<i64>;

/// BS(1,n) with unbounded numerators.
pub type Bs1n = groups::bs1n::Bs1nGroup<BigInt>;
/// BS(1,n) over `i64`; numerators stay below `n^r * r` in the radius-r
/// ball, so this is exact for radii up to roughly 50 when n = 2.
pub type Bs1nI64 = groups::bs1n::Bs1nGroup<i64>;

/// BS(m,n) via Britton normal forms, unbounded syllable exponents.
pub type BsMn = groups::britton::BrittonGroup<BigInt>;
/// BS(m,n) over `i64` syllable exponents.
pub type BsMnI64 = groups::britton::BrittonGroup<i64>;

/// Permutational wreath-type group S_inf ⋊ Z.
pub type PermShift = groups::permshift::PermShiftGroup;

/// Free group of finite rank.
pub type FreeGroup = groups::free::FreeGroup;
