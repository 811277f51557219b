//! Majority list-colourings of digraphs.
//!
//! Given a digraph `G` and lists `L(v)` of at least `k ≥ 2` colours, [`solve`]
//! builds an `L`-colouring in which every vertex `v` shares its colour with at
//! most `2·d⁺(v)/k` of its out-neighbours.
//!
//! The construction walks the strongly connected components in sink-first
//! order ([`scc`]). Inside each non-trivial component it computes the
//! stationary vector `x` of the uniform random walk ([`stationary`]) and runs
//! a recolouring descent on the weighted count of monochromatic edges
//! ([`solver`]). Every move strictly lowers that potential, so the search
//! halts, and it only halts once no vertex exceeds the `2/k` bound.
//!
//! [`verifier`] checks outputs with pure integer arithmetic, [`oracle`] gives
//! exhaustive optima on small instances and [`generators`] builds regular
//! tournaments and seeded random ensembles.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod colouring;
pub mod digraph;
pub mod generators;
pub mod lists;
pub mod oracle;
pub mod scc;
pub mod solver;
pub mod stationary;
pub mod verifier;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use colouring::{Colour, Colouring};
pub use digraph::{Digraph, GraphError, Vertex};
pub use generators::{GenError, ListMode, Probability, Seed};
pub use lists::{ListAssignment, ListError};
pub use oracle::{oracle_min_max_f, OracleError, OracleResult, DEFAULT_BUDGET};
pub use scc::{scc_decompose, SccDecomposition};
pub use solver::{
    colour_component, f_value, g_score, potential, solve, ComponentStats, InitPolicy, SolveError,
    SolvePolicy, SolveReport,
};
pub use stationary::{
    stationary_vector, walk_matrix, Arithmetic, StationaryError, WalkMatrix, Weights,
};
pub use verifier::{verify, VerifyError, VerifyReport};

/// Builds the exact rational `numer/denom`.
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
