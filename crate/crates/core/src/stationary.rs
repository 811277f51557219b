//! Uniform random walk on a strongly connected component and its stationary
//! vector.
//!
//! For a component `S` the walk matrix has `A[v][w] = 1/d⁺_S(v)` on every
//! internal edge `vw`. Its rows sum to one, and since `G[S]` is strongly
//! connected the transpose has a positive eigenvector `x` with eigenvalue 1,
//! unique once normalised to `Σx = 1`.
//!
//! Exact mode solves `(Aᵀ − I)x = 0, Σx = 1` over the integers with Bareiss
//! elimination, in the unknowns `x_u / d⁺_S(u)` so that all coefficients are
//! small. Float mode runs power iteration on the lazy walk `(Aᵀ + I)/2`,
//! which converges on periodic components as well.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::digraph::{Digraph, Vertex};

/// Iteration cap for float mode.
pub const FLOAT_MAX_ITERATIONS: usize = 1_000_000;
/// Float mode stops once successive iterates differ by at most this much.
pub const FLOAT_STEP_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StationaryError {
    #[error("component is not strongly connected")]
    NotStronglyConnected,
    #[error("component has a single vertex and no walk matrix")]
    SingletonComponent,
    #[error("component is empty")]
    EmptyComponent,
    #[error("vertex {0} appears twice in the component")]
    RepeatedVertex(Vertex),
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
}

/// Arithmetic used for the stationary vector and the descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Arithmetic {
    #[default]
    Rational,
    Float,
}

/// Sparse uniform-walk matrix of one component, in local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkMatrix {
    vertices: Vec<Vertex>,
    /// Internal out-neighbours of each local vertex (local indices).
    out_local: Vec<Vec<usize>>,
    /// Internal in-neighbours of each local vertex (local indices).
    in_local: Vec<Vec<usize>>,
}

impl WalkMatrix {
    /// Component vertices in ascending order; local index `i` is `vertices()[i]`.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `d⁺_S` of the local vertex `i`.
    pub fn row_degree(&self, i: usize) -> usize {
        self.out_local[i].len()
    }

    pub fn local_out(&self, i: usize) -> &[usize] {
        &self.out_local[i]
    }

    pub fn local_in(&self, i: usize) -> &[usize] {
        &self.in_local[i]
    }

    /// Nonzero entries `(column, A[i][column])` of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, BigRational)> + '_ {
        let d = BigInt::from(self.row_degree(i));
        self.out_local[i]
            .iter()
            .map(move |&j| (j, BigRational::new(BigInt::one(), d.clone())))
    }

    /// `(Aᵀx)_i` computed in exact arithmetic.
    pub fn transpose_apply(&self, x: &[BigRational], i: usize) -> BigRational {
        self.in_local[i]
            .iter()
            .map(|&u| &x[u] / BigInt::from(self.row_degree(u)))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    fn transpose_apply_f64(&self, x: &[f64], i: usize) -> f64 {
        self.in_local[i]
            .iter()
            .map(|&u| x[u] / self.row_degree(u) as f64)
            .sum()
    }
}

/// Stationary vector of a component, indexed like [`WalkMatrix::vertices`].
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    vertices: Vec<Vertex>,
    values: WeightValues,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightValues {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl Weights {
    /// Wraps caller-supplied exact weights; `vertices` must be sorted.
    pub fn exact(vertices: Vec<Vertex>, values: Vec<BigRational>) -> Self {
        assert_eq!(vertices.len(), values.len());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Weights {
            vertices,
            values: WeightValues::Exact(values),
        }
    }

    /// Wraps caller-supplied float weights; `vertices` must be sorted.
    pub fn float(vertices: Vec<Vertex>, values: Vec<f64>) -> Self {
        assert_eq!(vertices.len(), values.len());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Weights {
            vertices,
            values: WeightValues::Float(values),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn values(&self) -> &WeightValues {
        &self.values
    }

    pub fn as_exact(&self) -> Option<&[BigRational]> {
        match &self.values {
            WeightValues::Exact(x) => Some(x),
            WeightValues::Float(_) => None,
        }
    }

    pub fn as_float(&self) -> Option<&[f64]> {
        match &self.values {
            WeightValues::Float(x) => Some(x),
            WeightValues::Exact(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, WeightValues::Exact(_))
    }

    /// Local index of `v`, if `v` belongs to the component.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// `x_v` as an exact rational; float weights are converted exactly.
    pub fn value(&self, v: Vertex) -> Option<BigRational> {
        let i = self.position(v)?;
        Some(match &self.values {
            WeightValues::Exact(x) => x[i].clone(),
            WeightValues::Float(x) => BigRational::from_float(x[i])?,
        })
    }

    /// `c·x` for a positive rational `c`.
    pub fn scaled(&self, c: &BigRational) -> Weights {
        let values = match &self.values {
            WeightValues::Exact(x) => WeightValues::Exact(x.iter().map(|v| v * c).collect()),
            WeightValues::Float(x) => {
                let c = ratio_to_f64(c);
                WeightValues::Float(x.iter().map(|v| v * c).collect())
            }
        };
        Weights {
            vertices: self.vertices.clone(),
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Builds the walk matrix of `G[S]`.
///
/// `component` may be given in any order; it is sorted internally.
pub fn walk_matrix(g: &Digraph, component: &[Vertex]) -> Result<WalkMatrix, StationaryError> {
    let mut vertices = component.to_vec();
    vertices.sort_unstable();
    if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
        return Err(StationaryError::RepeatedVertex(w[0]));
    }
    match vertices.len() {
        0 => return Err(StationaryError::EmptyComponent),
        1 => return Err(StationaryError::SingletonComponent),
        _ => {}
    }

    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let s = vertices.len();
    let mut out_local = vec![Vec::new(); s];
    let mut in_local = vec![Vec::new(); s];
    for (i, &v) in vertices.iter().enumerate() {
        for &w in g.out_neighbours(v) {
            let j = local[w];
            if j != usize::MAX {
                out_local[i].push(j);
                in_local[j].push(i);
            }
        }
    }

    if !reaches_all(&out_local) || !reaches_all(&in_local) {
        return Err(StationaryError::NotStronglyConnected);
    }
    Ok(WalkMatrix {
        vertices,
        out_local,
        in_local,
    })
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == adj.len()
}

/// Positive `x` with `Aᵀx = x` and `Σx = 1`.
pub fn stationary_vector(
    matrix: &WalkMatrix,
    mode: Arithmetic,
) -> Result<Weights, StationaryError> {
    match mode {
        Arithmetic::Rational => Ok(Weights::exact(
            matrix.vertices.clone(),
            stationary_exact(matrix),
        )),
        Arithmetic::Float => Ok(Weights::float(
            matrix.vertices.clone(),
            stationary_float(matrix)?,
        )),
    }
}

fn stationary_exact(matrix: &WalkMatrix) -> Vec<BigRational> {
    let s = matrix.len();
    // In the unknowns y_u = x_u / d⁺_S(u) every coefficient is a small
    // integer. Row v: Σ_{u→v} y_u − d⁺_S(v)·y_v = 0. The last row is
    // redundant (rows of Aᵀ − I sum to zero) and becomes Σ d⁺_S(v)·y_v = 1.
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); s + 1]; s];
    for (v, row) in m.iter_mut().enumerate().take(s - 1) {
        for &u in matrix.local_in(v) {
            row[u] += 1;
        }
        row[v] -= matrix.row_degree(v);
    }
    for (v, entry) in m[s - 1].iter_mut().take(s).enumerate() {
        *entry = BigInt::from(matrix.row_degree(v));
    }
    m[s - 1][s] = BigInt::one();

    bareiss_forward(&mut m);

    // With D the last pivot (± det), D·y is integral; back-substitute on it.
    let det = m[s - 1][s - 1].clone();
    let mut z = vec![BigInt::zero(); s];
    for i in (0..s).rev() {
        let mut acc = &det * &m[i][s];
        for j in i + 1..s {
            acc -= &m[i][j] * &z[j];
        }
        debug_assert!((&acc % &m[i][i]).is_zero());
        z[i] = acc / &m[i][i];
    }
    let x: Vec<BigRational> = z
        .into_iter()
        .enumerate()
        .map(|(i, zi)| BigRational::new(zi * BigInt::from(matrix.row_degree(i)), det.clone()))
        .collect();
    debug_assert!(x.iter().all(Signed::is_positive));
    x
}

/// Fraction-free forward elimination on an augmented square system.
///
/// Leaves `m` upper triangular (in the square part); every division is exact.
/// Panics on a singular system.
fn bareiss_forward(m: &mut [Vec<BigInt>]) {
    let s = m.len();
    let width = s + 1;
    let mut prev = BigInt::one();
    for k in 0..s {
        let pivot = (k..s)
            .find(|&r| !m[r][k].is_zero())
            .expect("singular stationary system");
        m.swap(k, pivot);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = core::mem::take(&mut row[k]);
            for j in k + 1..width {
                let t = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                row[j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
}

fn stationary_float(matrix: &WalkMatrix) -> Result<Vec<f64>, StationaryError> {
    let s = matrix.len();
    let mut x = vec![1.0 / s as f64; s];
    let mut next = vec![0.0; s];
    for _ in 0..FLOAT_MAX_ITERATIONS {
        let mut step = 0.0f64;
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = 0.5 * (matrix.transpose_apply_f64(&x, i) + x[i]);
            step = step.max((*slot - x[i]).abs());
        }
        core::mem::swap(&mut x, &mut next);
        if step <= FLOAT_STEP_TOLERANCE {
            let total: f64 = x.iter().sum();
            for v in &mut x {
                *v /= total;
            }
            return Ok(x);
        }
    }
    Err(StationaryError::NoConvergence(FLOAT_MAX_ITERATIONS))
}

/// `‖Aᵀx − x‖∞` in floating point.
pub fn float_residual(matrix: &WalkMatrix, x: &[f64]) -> f64 {
    (0..matrix.len())
        .map(|i| (matrix.transpose_apply_f64(x, i) - x[i]).abs())
        .fold(0.0, f64::max)
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
