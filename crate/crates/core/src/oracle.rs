//! Exhaustive minimum of `max_v f(v)` over all `L`-colourings.
//!
//! Depth-first over vertices `0..n`, colours tried in increasing order, so
//! the first optimum found is the lexicographically smallest one. A branch is
//! dropped once a vertex whose whole out-neighbourhood is coloured already
//! reaches the best value found so far.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::colouring::{Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::lists::ListAssignment;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {0} colourings exceeds the budget")]
    BudgetExceeded(u128),
    #[error("graph has {graph} vertices but {lists} lists were supplied")]
    SizeMismatch { graph: usize, lists: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub opt: BigRational,
    pub witness: Colouring,
    /// Complete colourings reached by the search.
    pub enumerated: u64,
}

/// `f = same / d` kept as a pair; `d = 0` counts as zero.
#[derive(Debug, Clone, Copy)]
struct Frac {
    same: u64,
    d: u64,
}

impl Frac {
    const ZERO: Frac = Frac { same: 0, d: 1 };
    const ABOVE_ONE: Frac = Frac { same: 2, d: 1 };

    fn ge(self, other: Frac) -> bool {
        self.same * other.d >= other.same * self.d
    }

    fn gt(self, other: Frac) -> bool {
        self.same * other.d > other.same * self.d
    }
}

/// Product of list sizes, saturating.
pub fn search_space(lists: &ListAssignment) -> u128 {
    lists
        .lists()
        .iter()
        .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128))
}

pub fn oracle_min_max_f(
    g: &Digraph,
    lists: &ListAssignment,
    budget: u128,
) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    if lists.len() != n {
        return Err(OracleError::SizeMismatch {
            graph: n,
            lists: lists.len(),
        });
    }
    let product = search_space(lists);
    if product > budget {
        return Err(OracleError::BudgetExceeded(product));
    }

    // Vertices whose f-value becomes known once vertex t is coloured.
    let mut settled_at: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in g.vertices() {
        let last = g.out_neighbours(v).iter().copied().fold(v, usize::max);
        settled_at[last].push(v);
    }
    let sorted_lists: Vec<Vec<Colour>> = lists
        .lists()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        })
        .collect();

    let mut search = Search {
        g,
        lists: &sorted_lists,
        settled_at: &settled_at,
        current: vec![0; n],
        best: Frac::ABOVE_ONE,
        witness: Vec::new(),
        enumerated: 0,
    };
    search.descend(0, Frac::ZERO);

    let best = search.best;
    Ok(OracleResult {
        opt: BigRational::new(BigInt::from(best.same), BigInt::from(best.d)),
        witness: Colouring::from_total(search.witness),
        enumerated: search.enumerated,
    })
}

struct Search<'a> {
    g: &'a Digraph,
    lists: &'a [Vec<Colour>],
    settled_at: &'a [Vec<Vertex>],
    current: Vec<Colour>,
    best: Frac,
    witness: Vec<Colour>,
    enumerated: u64,
}

impl Search<'_> {
    fn f(&self, v: Vertex) -> Frac {
        let outs = self.g.out_neighbours(v);
        if outs.is_empty() {
            return Frac::ZERO;
        }
        let own = self.current[v];
        let same = outs.iter().filter(|&&w| self.current[w] == own).count();
        Frac {
            same: same as u64,
            d: outs.len() as u64,
        }
    }

    fn descend(&mut self, t: usize, worst: Frac) {
        if t == self.lists.len() {
            self.enumerated += 1;
            if self.best.gt(worst) {
                self.best = worst;
                self.witness = self.current.clone();
            }
            return;
        }
        for i in 0..self.lists[t].len() {
            self.current[t] = self.lists[t][i];
            let mut local = worst;
            for &v in &self.settled_at[t] {
                let f = self.f(v);
                if f.gt(local) {
                    local = f;
                }
            }
            if local.ge(self.best) {
                continue;
            }
            self.descend(t + 1, local);
        }
    }
}
