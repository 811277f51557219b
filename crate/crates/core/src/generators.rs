//! Regular tournaments and seeded random instances.
//!
//! All randomness comes from `ChaCha8Rng` (rand_chacha 0.3) seeded with
//! `seed_from_u64`, driven through rand 0.8's value-stable sampling routines.
//! Changing either crate version may change the pinned instances.

use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::colouring::Colour;
use crate::digraph::Digraph;
use crate::lists::ListAssignment;

/// Seed of the pinned PRNG.
pub type Seed = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("regular tournaments need an odd vertex count, got {0}")]
    NNotOdd(usize),
    #[error("regular tournaments need at least 3 vertices, got {0}")]
    TournamentTooSmall(usize),
    #[error("palette of {palette} colours cannot hold lists of size {k}")]
    PaletteTooSmall { k: usize, palette: usize },
    #[error("list size must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("probability {0}/{1} is not in [0, 1]")]
    InvalidProbability(u32, u32),
    #[error("a list assignment needs at least one vertex")]
    NoVertices,
}

/// A probability `numer/denom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    numer: u32,
    denom: u32,
}

impl Probability {
    pub fn new(numer: u32, denom: u32) -> Result<Self, GenError> {
        if denom == 0 || numer > denom {
            return Err(GenError::InvalidProbability(numer, denom));
        }
        Ok(Probability { numer, denom })
    }

    pub fn numer(self) -> u32 {
        self.numer
    }

    pub fn denom(self) -> u32 {
        self.denom
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListMode {
    /// Every list is `{1, …, k}`.
    Identical,
    /// Every list is a uniform `k`-subset of `{1, …, palette}`, sorted.
    Random,
}

/// Rotational tournament: `i → i + j (mod n)` for `j = 1, …, (n−1)/2`.
pub fn gen_regular_tournament(n: usize) -> Result<Digraph, GenError> {
    if n.is_multiple_of(2) {
        return Err(GenError::NNotOdd(n));
    }
    if n < 3 {
        return Err(GenError::TournamentTooSmall(n));
    }
    let half = (n - 1) / 2;
    let edges = (0..n).flat_map(|i| (1..=half).map(move |j| (i, (i + j) % n)));
    Ok(Digraph::from_edges(n, edges).expect("rotational tournament is simple"))
}

/// Each ordered pair `(u, v)`, `u ≠ v`, is an edge independently with
/// probability `p`. Pairs are drawn in lexicographic order.
pub fn gen_random_digraph(n: usize, p: Probability, seed: Seed) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_ratio(p.numer, p.denom) {
                edges.push((u, v));
            }
        }
    }
    Digraph::from_edges(n, edges).expect("sampled pairs are distinct")
}

/// A random digraph as in [`gen_random_digraph`] plus a Hamiltonian cycle
/// through a random permutation, so the result is strongly connected.
pub fn gen_random_strongly_connected(n: usize, p: Probability, seed: Seed) -> Digraph {
    let base = gen_random_digraph(n, p, seed);
    if n < 2 {
        return base;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let order = index::sample(&mut rng, n, n).into_vec();
    let mut edges: Vec<_> = base.edges().collect();
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        if !base.has_edge(u, v) {
            edges.push((u, v));
        }
    }
    Digraph::from_edges(n, edges).expect("cycle edges are added only when missing")
}

pub fn gen_lists(
    n: usize,
    k: usize,
    palette: usize,
    mode: ListMode,
    seed: Seed,
) -> Result<ListAssignment, GenError> {
    if k < 2 {
        return Err(GenError::KTooSmall(k));
    }
    if palette < k {
        return Err(GenError::PaletteTooSmall { k, palette });
    }
    if n == 0 {
        return Err(GenError::NoVertices);
    }
    let lists: Vec<Vec<Colour>> = match mode {
        ListMode::Identical => (0..n).map(|_| (1..=k as Colour).collect()).collect(),
        ListMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    let mut list: Vec<Colour> = index::sample(&mut rng, palette, k)
                        .into_iter()
                        .map(|i| i as Colour + 1)
                        .collect();
                    list.sort_unstable();
                    list
                })
                .collect()
        }
    };
    Ok(ListAssignment::new(lists).expect("generated lists have k ≥ 2 distinct colours"))
}
