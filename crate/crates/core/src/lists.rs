//! Colour lists `L(v)`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::colouring::Colour;
use crate::digraph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("list of vertex {0} is empty")]
    EmptyList(Vertex),
    #[error("shortest list has {k} colours, at least 2 are required")]
    KTooSmall { k: usize },
    #[error("a list assignment needs at least one vertex")]
    NoVertices,
}

/// Per-vertex colour lists, duplicates removed, first-occurrence order kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Colour>>,
    k: usize,
}

impl ListAssignment {
    /// De-duplicates every list and records `k`, the length of the shortest one.
    pub fn new(lists: Vec<Vec<Colour>>) -> Result<Self, ListError> {
        if lists.is_empty() {
            return Err(ListError::NoVertices);
        }
        let mut deduped = Vec::with_capacity(lists.len());
        for (v, list) in lists.into_iter().enumerate() {
            if list.is_empty() {
                return Err(ListError::EmptyList(v));
            }
            let mut seen: Vec<Colour> = Vec::with_capacity(list.len());
            for c in list {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            deduped.push(seen);
        }
        let k = deduped.iter().map(Vec::len).min().unwrap_or(0);
        if k < 2 {
            return Err(ListError::KTooSmall { k });
        }
        Ok(ListAssignment { lists: deduped, k })
    }

    /// Every one of the `n` vertices gets the same list.
    pub fn uniform(n: usize, list: &[Colour]) -> Result<Self, ListError> {
        Self::new((0..n).map(|_| list.to_vec()).collect())
    }

    pub fn list(&self, v: Vertex) -> &[Colour] {
        &self.lists[v]
    }

    pub fn contains(&self, v: Vertex, colour: Colour) -> bool {
        self.lists[v].contains(&colour)
    }

    /// Minimum list size.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn lists(&self) -> &[Vec<Colour>] {
        &self.lists
    }
}
