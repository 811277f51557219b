//! Strongly connected components in sink-first order.
//!
//! Components are numbered so that every edge between two components runs
//! from the later one to the earlier one. Colouring them left to right means
//! each component only looks at vertices that are already final.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::digraph::{Digraph, Vertex};

const UNVISITED: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<Vec<Vertex>>,
    component_of: Vec<usize>,
}

impl SccDecomposition {
    /// `S_1, …, S_r`, each sorted ascending.
    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_of[v]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Vertices of `S_1 ∪ … ∪ S_i` (the first `i` components).
    pub fn prefix_union(&self, i: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.components[..i].iter().flatten().copied()
    }
}

/// Tarjan's algorithm followed by a canonical ordering of the condensation.
///
/// Among all sink-first orders, the one returned always emits the ready
/// component with the smallest vertex first.
pub fn scc_decompose(g: &Digraph) -> SccDecomposition {
    let n = g.vertex_count();
    let raw = tarjan(g);

    let mut comp = vec![0usize; n];
    for (c, members) in raw.iter().enumerate() {
        for &v in members {
            comp[v] = c;
        }
    }

    // Condensation: successors counted once per distinct target component.
    let r = raw.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut pending = vec![0usize; r];
    let mut last_seen = vec![UNVISITED; r];
    for (c, members) in raw.iter().enumerate() {
        for &u in members {
            for &w in g.out_neighbours(u) {
                let d = comp[w];
                if d != c && last_seen[d] != c {
                    last_seen[d] = c;
                    pending[c] += 1;
                    preds[d].push(c);
                }
            }
        }
    }

    let min_vertex: Vec<Vertex> = raw.iter().map(|m| m[0]).collect();
    let mut ready: BinaryHeap<Reverse<(Vertex, usize)>> = (0..r)
        .filter(|&c| pending[c] == 0)
        .map(|c| Reverse((min_vertex[c], c)))
        .collect();

    let mut components = Vec::with_capacity(r);
    let mut component_of = vec![0usize; n];
    while let Some(Reverse((_, c))) = ready.pop() {
        let idx = components.len();
        for &v in &raw[c] {
            component_of[v] = idx;
        }
        components.push(raw[c].clone());
        for &p in &preds[c] {
            pending[p] -= 1;
            if pending[p] == 0 {
                ready.push(Reverse((min_vertex[p], p)));
            }
        }
    }
    debug_assert_eq!(components.len(), r);

    SccDecomposition {
        components,
        component_of,
    }
}

/// Iterative Tarjan; each returned component is sorted.
fn tarjan(g: &Digraph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<Vertex> = Vec::new();
    // (vertex, position of the next out-neighbour to scan)
    let mut call: Vec<(Vertex, usize)> = Vec::new();
    let mut next_index = 0;
    let mut out = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let outs = g.out_neighbours(v);
            if *pos < outs.len() {
                let w = outs[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                out.push(members);
            }
        }
    }
    out
}
