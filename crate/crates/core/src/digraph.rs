//! Simple digraphs on the dense vertex set `0..n`.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Vertices are dense indices `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// A digraph without self-loops or parallel edges.
///
/// Both adjacency directions are kept sorted, so two digraphs built from the
/// same edge set compare equal regardless of edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Digraph {
    /// Validates `edges` (given as `(tail, head)`) and builds the digraph.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut m = 0;
        for (u, outs) in out_adj.iter_mut().enumerate() {
            outs.sort_unstable();
            if let Some(w) = outs.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u, w[0]));
            }
            m += outs.len();
        }
        for ins in &mut in_adj {
            ins.sort_unstable();
        }
        Ok(Digraph { out_adj, in_adj, m })
    }

    /// The digraph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// `N⁺(v)`, sorted ascending.
    pub fn out_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    /// `N⁻(v)`, sorted ascending.
    pub fn in_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    /// `d⁺_S(v) = |N⁺(v) ∩ S|`, where `in_subset[w]` marks membership of `w`.
    pub fn out_degree_within(&self, v: Vertex, in_subset: &[bool]) -> usize {
        self.out_adj[v].iter().filter(|&&w| in_subset[w]).count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// All edges in lexicographic `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Membership mask of length `n` for the given vertex set.
    pub fn mask(&self, subset: &[Vertex]) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_count()];
        for &v in subset {
            mask[v] = true;
        }
        mask
    }
}
