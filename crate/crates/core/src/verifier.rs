//! Exact η-majority check.
//!
//! A vertex `v` violates `η = p/q` when `q·same(v) > p·d⁺(v)`. Counting is
//! done here from scratch; nothing is shared with the solver.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::colouring::Colouring;
use crate::digraph::{Digraph, Vertex};
use crate::lists::ListAssignment;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("vertex {0} is not coloured")]
    PartialColouring(Vertex),
    #[error("graph has {graph} vertices but {other} were supplied")]
    SizeMismatch { graph: usize, other: usize },
    #[error("eta must lie in [0, 1]")]
    EtaOutOfRange,
}

/// A vertex with too many same-coloured out-neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub vertex: Vertex,
    pub same: usize,
    pub out_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub achieved_eta: BigRational,
    /// Vertices whose colour is missing from their list.
    pub list_violations: Vec<Vertex>,
}

pub fn verify(
    g: &Digraph,
    c: &Colouring,
    eta: &BigRational,
    lists: Option<&ListAssignment>,
) -> Result<VerifyReport, VerifyError> {
    let n = g.vertex_count();
    if c.len() != n {
        return Err(VerifyError::SizeMismatch {
            graph: n,
            other: c.len(),
        });
    }
    if let Some(l) = lists {
        if l.len() != n {
            return Err(VerifyError::SizeMismatch {
                graph: n,
                other: l.len(),
            });
        }
    }
    if eta.numer() < &BigInt::zero() || eta.numer() > eta.denom() {
        return Err(VerifyError::EtaOutOfRange);
    }
    if let Some(v) = c.first_uncoloured() {
        return Err(VerifyError::PartialColouring(v));
    }

    let mut violations = Vec::new();
    let mut list_violations = Vec::new();
    let mut achieved_eta = BigRational::zero();
    for v in g.vertices() {
        let own = c.get(v);
        let same = g
            .out_neighbours(v)
            .iter()
            .filter(|&&w| c.get(w) == own)
            .count();
        let d = g.out_degree(v);
        if eta.denom() * BigInt::from(same) > eta.numer() * BigInt::from(d) {
            violations.push(Violation {
                vertex: v,
                same,
                out_degree: d,
            });
        }
        if d > 0 {
            let f = BigRational::new(BigInt::from(same), BigInt::from(d));
            if f > achieved_eta {
                achieved_eta = f;
            }
        }
        if let (Some(l), Some(col)) = (lists, own) {
            if !l.contains(v, col) {
                list_violations.push(v);
            }
        }
    }
    Ok(VerifyReport {
        ok: violations.is_empty() && list_violations.is_empty(),
        violations,
        achieved_eta,
        list_violations,
    })
}
