//! Polyplexes (fractional matchings) and hyperplane covers (fractional vertex
//! covers) of d-dimensional (0,1)-matrices, with exact rational arithmetic.
//!
//! A d-dimensional matrix of order n is the edge indicator of a d-partite
//! d-uniform hypergraph with parts of size n. A polyplex assigns nonnegative
//! weights to support cells so that every hyperplane (axis-aligned slice) sums
//! to at most 1; a hyperplane cover assigns nonnegative weights to hyperplanes
//! so that every support cell is covered with total weight at least 1. The two
//! optimization problems are linear-programming duals, and the crate decides
//! extremality questions about them exactly: no floating point anywhere.
//!
//! Modules:
//! - [`tensor`]: dense 0/1 tensors, hyperplane slicing, equivalence
//!   canonicalization, structural predicates;
//! - [`lp`]: exact rational primal simplex with Bland's rule;
//! - [`matching`]: optimal polyplexes, polydiagonals, integer diagonals,
//!   complementary slackness;
//! - [`covers`]: optimal hyperplane covers, induced matrices, deficiency,
//!   exact cover-uniqueness decision, structural necessary conditions;
//! - [`extremal`]: extremality and diagonal extremality decision procedures;
//! - [`constructions`]: generative constructions of extremal matrices and the
//!   Gale-Ryser existence test;
//! - [`search`]: enumeration sweeps and the conjecture-verification harness;
//! - [`fixtures`]: the checksummed corpus of small extremal matrices.

pub mod constructions;
pub mod covers;
mod error;
pub mod extremal;
pub mod fixtures;
pub mod lp;
pub mod matching;
pub mod rat;
pub mod search;
pub mod tensor;

pub use covers::CoverTable;
pub use error::Error;
pub use extremal::ExtremalityVerdict;
pub use lp::{LpProblem, LpSolution, LpStatus};
pub use matching::{Diagonal, Polyplex};
pub use rat::Rat;
pub use tensor::{BinaryTensor, Hyperplane, Index};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
