//! Potential-descent colouring of one component, and the sink-first sweep
//! over all components.
//!
//! Inside a component `S` with stationary weights `x`, the potential
//!
//! ```text
//! Φ(C) = Σ_{v ∈ S} x_v f_C(v) = Σ_{vw ∈ E, v ∈ S, C(v) = C(w)} x_v / d⁺(v)
//! ```
//!
//! changes by `g(i) − g(C(v))` when `v` is recoloured to `i`, where
//!
//! ```text
//! g(i) = x_v/d⁺(v) · #{w ∈ N⁺(v) : C(w) = i} + Σ_{u ∈ N⁻(v) ∩ S, C(u) = i} x_u/d⁺(u).
//! ```
//!
//! Summing over a list of `k` colours gives `Σ g(i) ≤ 2x_v`, while
//! `g(C(v)) ≥ x_v f(v)`. A vertex with `f(v) > 2/k` therefore always has a
//! strictly cheaper colour, and moving to it strictly lowers `Φ`. Since `Φ`
//! takes finitely many values the descent stops, and it stops exactly when no
//! vertex violates the bound.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::colouring::{Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::lists::ListAssignment;
use crate::scc::scc_decompose;
use crate::stationary::{
    stationary_vector, walk_matrix, Arithmetic, StationaryError, WeightValues, Weights,
};

/// Minimum decrease of `g` that counts as an improving move in float mode.
pub const FLOAT_IMPROVEMENT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {graph} vertices but {other} were supplied")]
    SizeMismatch { graph: usize, other: usize },
    #[error("vertex {0} is not coloured")]
    UncolouredVertex(Vertex),
    #[error("out-neighbour {neighbour} of vertex {vertex} is not coloured")]
    UncolouredNeighbour { vertex: Vertex, neighbour: Vertex },
    #[error("colour {colour} is not in the list of vertex {vertex}")]
    ColourNotInList { vertex: Vertex, colour: Colour },
    #[error("vertex {0} is not in the component")]
    NotInComponent(Vertex),
    #[error("component weights do not match the component")]
    WeightMismatch,
    #[error("step cap of {cap} recolourings exceeded")]
    StepCapExceeded { cap: usize },
    #[error("no improving recolouring for violator {vertex}")]
    NoImprovingMove { vertex: Vertex },
    #[error(transparent)]
    Stationary(#[from] StationaryError),
}

/// How a component's colours are seeded before the descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitPolicy {
    #[default]
    FirstEntry,
    SeededRandom,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolvePolicy {
    pub init: InitPolicy,
    pub seed: u64,
    pub arithmetic: Arithmetic,
    pub max_steps: Option<usize>,
    /// Record the potential after every move, plus the moves themselves.
    pub trace: bool,
}

/// What happened inside one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentStats {
    pub vertices: Vec<Vertex>,
    pub recolour_steps: usize,
    /// Potential after initialisation and after each move (traced runs of
    /// non-singleton components only). Float runs store the exact value of
    /// the float.
    pub potential_trace: Option<Vec<BigRational>>,
    /// Colours given to the component before the descent (traced runs).
    pub initial: Vec<(Vertex, Colour)>,
    /// Recolourings in order (traced runs).
    pub moves: Vec<(Vertex, Colour)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub k: usize,
    pub achieved_eta: BigRational,
    pub per_vertex_f: Vec<BigRational>,
    pub components: Vec<ComponentStats>,
}

impl SolveReport {
    /// The guaranteed bound `2/k`.
    pub fn eta_bound(&self) -> BigRational {
        BigRational::new(BigInt::from(2), BigInt::from(self.k))
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.vertices.len()).collect()
    }

    pub fn recolour_steps(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.recolour_steps).collect()
    }

    pub fn total_steps(&self) -> usize {
        self.components.iter().map(|c| c.recolour_steps).sum()
    }

    pub fn potential_traces(&self) -> Option<Vec<Vec<BigRational>>> {
        if self.components.iter().all(|c| c.potential_trace.is_none()) {
            return None;
        }
        Some(
            self.components
                .iter()
                .map(|c| c.potential_trace.clone().unwrap_or_default())
                .collect(),
        )
    }
}

fn coloured(c: &Colouring, v: Vertex) -> Result<Colour, SolveError> {
    c.get(v).ok_or(SolveError::UncolouredVertex(v))
}

/// Number of out-neighbours of `v` sharing its colour.
fn same_count(g: &Digraph, c: &Colouring, v: Vertex) -> Result<usize, SolveError> {
    let own = coloured(c, v)?;
    let mut same = 0;
    for &w in g.out_neighbours(v) {
        let cw = c.get(w).ok_or(SolveError::UncolouredNeighbour {
            vertex: v,
            neighbour: w,
        })?;
        if cw == own {
            same += 1;
        }
    }
    Ok(same)
}

/// `f_C(v)`: the fraction of out-neighbours of `v` sharing its colour; zero
/// when `v` has no out-neighbours.
pub fn f_value(g: &Digraph, c: &Colouring, v: Vertex) -> Result<BigRational, SolveError> {
    let same = same_count(g, c, v)?;
    let d = g.out_degree(v);
    if d == 0 {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(BigInt::from(same), BigInt::from(d)))
}

fn check_weights(component: &[Vertex], x: &Weights) -> Result<(), SolveError> {
    let mut sorted = component.to_vec();
    sorted.sort_unstable();
    if sorted != x.vertices() {
        return Err(SolveError::WeightMismatch);
    }
    Ok(())
}

/// `Σ_{v ∈ S} x_v f(v)`, evaluated through the monochromatic-edge sum.
pub fn potential(
    g: &Digraph,
    component: &[Vertex],
    c: &Colouring,
    x: &Weights,
) -> Result<BigRational, SolveError> {
    check_weights(component, x)?;
    let mut by_edges = BigRational::zero();
    for &v in component {
        let own = coloured(c, v)?;
        let xv = x.value(v).ok_or(SolveError::WeightMismatch)?;
        let share = xv / BigInt::from(g.out_degree(v).max(1));
        for &w in g.out_neighbours(v) {
            let cw = c.get(w).ok_or(SolveError::UncolouredNeighbour {
                vertex: v,
                neighbour: w,
            })?;
            if cw == own {
                by_edges += &share;
            }
        }
    }
    #[cfg(debug_assertions)]
    {
        let mut by_f = BigRational::zero();
        for &v in component {
            by_f += x.value(v).expect("checked above") * f_value(g, c, v)?;
        }
        debug_assert_eq!(by_edges, by_f);
    }
    Ok(by_edges)
}

/// `g(i)` for vertex `v` of component `S`: the part of the potential that
/// depends on `v` having colour `i`.
pub fn g_score(
    g: &Digraph,
    component: &[Vertex],
    c: &Colouring,
    lists: &ListAssignment,
    x: &Weights,
    v: Vertex,
    colour: Colour,
) -> Result<BigRational, SolveError> {
    check_weights(component, x)?;
    if !lists.contains(v, colour) {
        return Err(SolveError::ColourNotInList { vertex: v, colour });
    }
    let xv = x.value(v).ok_or(SolveError::NotInComponent(v))?;
    let mut score = BigRational::zero();
    let own_share = xv / BigInt::from(g.out_degree(v).max(1));
    for &w in g.out_neighbours(v) {
        let cw = c.get(w).ok_or(SolveError::UncolouredNeighbour {
            vertex: v,
            neighbour: w,
        })?;
        if cw == colour {
            score += &own_share;
        }
    }
    for &u in g.in_neighbours(v) {
        let Some(xu) = x.value(u) else { continue };
        if coloured(c, u)? == colour {
            score += xu / BigInt::from(g.out_degree(u));
        }
    }
    Ok(score)
}

/// Arithmetic behind the descent: scaled integers (exact) or `f64`.
trait Score: Clone + PartialOrd {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn times(&self, n: usize) -> Self;
    fn improves(candidate: &Self, current: &Self) -> bool;
}

impl Score for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn times(&self, n: usize) -> Self {
        self * BigInt::from(n)
    }
    fn improves(candidate: &Self, current: &Self) -> bool {
        candidate < current
    }
}

impl Score for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= *other;
    }
    fn times(&self, n: usize) -> Self {
        *self * n as f64
    }
    fn improves(candidate: &Self, current: &Self) -> bool {
        *candidate < *current - FLOAT_IMPROVEMENT_TOLERANCE
    }
}

fn is_violator(k: usize, same: usize, d: usize) -> bool {
    k * same > 2 * d
}

struct Descent<'a, W> {
    g: &'a Digraph,
    lists: &'a ListAssignment,
    in_component: Vec<bool>,
    /// `x_v / d⁺(v)` per global vertex (zero outside the component).
    share: Vec<W>,
    same: Vec<usize>,
    violators: BTreeSet<Vertex>,
    potential: W,
}

impl<W: Score> Descent<'_, W> {
    fn refresh(&mut self, v: Vertex) {
        if is_violator(self.lists.k(), self.same[v], self.g.out_degree(v)) {
            self.violators.insert(v);
        } else {
            self.violators.remove(&v);
        }
    }

    /// Scores `g(i)` for every colour of `L(v)`, in list order.
    fn scores(&self, c: &Colouring, v: Vertex) -> Vec<W> {
        let list = self.lists.list(v);
        let mut g = vec![W::zero(); list.len()];
        let position = |col: Option<Colour>| col.and_then(|col| list.iter().position(|&i| i == col));
        for &w in self.g.out_neighbours(v) {
            if let Some(p) = position(c.get(w)) {
                g[p].add_assign(&self.share[v]);
            }
        }
        for &u in self.g.in_neighbours(v) {
            if self.in_component[u] {
                if let Some(p) = position(c.get(u)) {
                    g[p].add_assign(&self.share[u]);
                }
            }
        }
        g
    }

    fn recolour(&mut self, c: &mut Colouring, v: Vertex, new: Colour, delta: &W, same_new: usize) {
        let old = c.get(v).expect("component vertex is coloured");
        c.set(v, new);
        self.potential.sub_assign(delta);
        self.same[v] = same_new;
        self.refresh(v);
        for i in 0..self.g.in_neighbours(v).len() {
            let u = self.g.in_neighbours(v)[i];
            if !self.in_component[u] {
                continue;
            }
            match c.get(u) {
                Some(cu) if cu == old => self.same[u] -= 1,
                Some(cu) if cu == new => self.same[u] += 1,
                _ => continue,
            }
            self.refresh(u);
        }
    }
}

/// Extends `c` to the component `S` so that every `v ∈ S` has
/// `k·same(v) ≤ 2·d⁺(v)`.
///
/// Every out-neighbour of `S` outside `S` must already be coloured. `weights`
/// are the component's stationary vector; when `None` they are computed with
/// `policy.arithmetic`. Singleton components skip the weights and take the
/// colour of `L(v)` least used among the out-neighbours (smallest colour on
/// ties).
pub fn colour_component(
    g: &Digraph,
    component: &[Vertex],
    c: &mut Colouring,
    lists: &ListAssignment,
    weights: Option<&Weights>,
    policy: &SolvePolicy,
) -> Result<ComponentStats, SolveError> {
    let n = g.vertex_count();
    if c.len() != n {
        return Err(SolveError::SizeMismatch {
            graph: n,
            other: c.len(),
        });
    }
    if lists.len() != n {
        return Err(SolveError::SizeMismatch {
            graph: n,
            other: lists.len(),
        });
    }
    let mut vertices = component.to_vec();
    vertices.sort_unstable();
    let in_component = g.mask(&vertices);
    for &v in &vertices {
        for &w in g.out_neighbours(v) {
            if !in_component[w] && c.get(w).is_none() {
                return Err(SolveError::UncolouredNeighbour {
                    vertex: v,
                    neighbour: w,
                });
            }
        }
    }

    if let [v] = vertices[..] {
        let colour = least_used_colour(g, c, lists, v);
        c.set(v, colour);
        return Ok(ComponentStats {
            vertices,
            recolour_steps: 0,
            potential_trace: None,
            initial: Vec::new(),
            moves: Vec::new(),
        });
    }

    let computed;
    let x = match weights {
        Some(x) => {
            check_weights(&vertices, x)?;
            x
        }
        None => {
            let a = walk_matrix(g, &vertices)?;
            computed = stationary_vector(&a, policy.arithmetic)?;
            &computed
        }
    };

    initialise(c, lists, &vertices, policy);
    let initial = if policy.trace {
        vertices
            .iter()
            .map(|&v| (v, c.get(v).expect("just initialised")))
            .collect()
    } else {
        Vec::new()
    };

    let (steps, trace, moves) = match x.values() {
        WeightValues::Exact(values) => {
            // Common denominator turns every share x_v/d⁺(v) into an integer.
            let shares: Vec<BigRational> = vertices
                .iter()
                .zip(values)
                .map(|(&v, xv)| xv / BigInt::from(g.out_degree(v)))
                .collect();
            let denom = shares
                .iter()
                .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
            let mut share = vec![<BigInt as Zero>::zero(); n];
            for (&v, s) in vertices.iter().zip(&shares) {
                share[v] = s.numer() * (&denom / s.denom());
            }
            let to_ratio = |p: &BigInt| BigRational::new(p.clone(), denom.clone());
            descend(g, lists, in_component, &vertices, c, share, policy, None, to_ratio)?
        }
        WeightValues::Float(values) => {
            let mut share = vec![0.0f64; n];
            for (&v, xv) in vertices.iter().zip(values) {
                share[v] = xv / g.out_degree(v) as f64;
            }
            let s = vertices.len();
            let cap = 10 * lists.k() * s * s;
            let to_ratio = |p: &f64| BigRational::from_float(*p).unwrap_or_else(BigRational::zero);
            descend(g, lists, in_component, &vertices, c, share, policy, Some(cap), to_ratio)?
        }
    };

    Ok(ComponentStats {
        vertices,
        recolour_steps: steps,
        potential_trace: trace,
        initial,
        moves,
    })
}

fn least_used_colour(g: &Digraph, c: &Colouring, lists: &ListAssignment, v: Vertex) -> Colour {
    let count = |i: Colour| {
        g.out_neighbours(v)
            .iter()
            .filter(|&&w| c.get(w) == Some(i))
            .count()
    };
    lists
        .list(v)
        .iter()
        .map(|&i| (count(i), i))
        .min()
        .map(|(_, i)| i)
        .expect("lists are nonempty")
}

fn initialise(c: &mut Colouring, lists: &ListAssignment, vertices: &[Vertex], policy: &SolvePolicy) {
    match policy.init {
        InitPolicy::FirstEntry => {
            for &v in vertices {
                c.set(v, lists.list(v)[0]);
            }
        }
        InitPolicy::SeededRandom => {
            // One stream per component, keyed by its smallest vertex.
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
            rng.set_stream(vertices[0] as u64);
            for &v in vertices {
                let list = lists.list(v);
                c.set(v, list[rng.gen_range(0..list.len())]);
            }
        }
    }
}

type DescentOutcome = (usize, Option<Vec<BigRational>>, Vec<(Vertex, Colour)>);

#[allow(clippy::too_many_arguments)]
fn descend<W: Score>(
    g: &Digraph,
    lists: &ListAssignment,
    in_component: Vec<bool>,
    vertices: &[Vertex],
    c: &mut Colouring,
    share: Vec<W>,
    policy: &SolvePolicy,
    mandatory_cap: Option<usize>,
    to_ratio: impl Fn(&W) -> BigRational,
) -> Result<DescentOutcome, SolveError> {
    let mut state = Descent {
        g,
        lists,
        in_component,
        same: vec![0; g.vertex_count()],
        violators: BTreeSet::new(),
        potential: W::zero(),
        share,
    };
    for &v in vertices {
        let same = same_count(g, c, v)?;
        state.same[v] = same;
        let mass = state.share[v].times(same);
        state.potential.add_assign(&mass);
        state.refresh(v);
    }

    let cap = match (policy.max_steps, mandatory_cap) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let mut trace = policy.trace.then(|| vec![to_ratio(&state.potential)]);
    let mut moves = Vec::new();
    let mut steps = 0;

    while let Some(&v) = state.violators.first() {
        if cap.is_some_and(|cap| steps >= cap) {
            return Err(SolveError::StepCapExceeded {
                cap: cap.unwrap_or_default(),
            });
        }
        let list = lists.list(v);
        let scores = state.scores(c, v);
        let current = c.get(v).expect("component vertex is coloured");
        let cur = list
            .iter()
            .position(|&i| i == current)
            .ok_or(SolveError::ColourNotInList {
                vertex: v,
                colour: current,
            })?;
        let mut best = cur;
        for p in 0..list.len() {
            let better = scores[p] < scores[best]
                || (scores[p] == scores[best] && list[p] < list[best]);
            if better {
                best = p;
            }
        }
        if !W::improves(&scores[best], &scores[cur]) {
            return Err(SolveError::NoImprovingMove { vertex: v });
        }
        let mut delta = scores[cur].clone();
        delta.sub_assign(&scores[best]);
        let new = list[best];
        let same_new = g
            .out_neighbours(v)
            .iter()
            .filter(|&&w| c.get(w) == Some(new))
            .count();
        state.recolour(c, v, new, &delta, same_new);
        steps += 1;
        if let Some(trace) = trace.as_mut() {
            trace.push(to_ratio(&state.potential));
            moves.push((v, new));
        }
    }
    Ok((steps, trace, moves))
}

/// Colours `G` component by component, sinks first.
///
/// The result is an `L`-colouring in which no vertex shares its colour with
/// more than `2/k` of its out-neighbours.
pub fn solve(
    g: &Digraph,
    lists: &ListAssignment,
    policy: &SolvePolicy,
) -> Result<(Colouring, SolveReport), SolveError> {
    let n = g.vertex_count();
    if lists.len() != n {
        return Err(SolveError::SizeMismatch {
            graph: n,
            other: lists.len(),
        });
    }
    let decomposition = scc_decompose(g);
    let mut c = Colouring::uncoloured(n);
    let mut components = Vec::with_capacity(decomposition.len());
    for component in decomposition.components() {
        components.push(colour_component(g, component, &mut c, lists, None, policy)?);
    }

    let per_vertex_f = g
        .vertices()
        .map(|v| f_value(g, &c, v))
        .collect::<Result<Vec<_>, _>>()?;
    let achieved_eta = per_vertex_f
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    let report = SolveReport {
        k: lists.k(),
        achieved_eta,
        per_vertex_f,
        components,
    };
    debug_assert!(report.achieved_eta <= report.eta_bound());
    Ok((c, report))
}
