//! The seeded soundness ensemble: random digraphs with random lists, solved
//! and then checked by the verifier at `2/k`.

use std::time::{Duration, Instant};

use majority_core::generators::{gen_lists, gen_random_digraph, ListMode, Probability};
use majority_core::{
    solve, verify, BigInt, BigRational, Digraph, ListAssignment, SolveError, SolvePolicy,
};
use rayon::prelude::*;

pub const DEFAULT_SUITE_SIZE: usize = 1000;
pub const MAX_VERTICES: usize = 60;
pub const PROBABILITIES: [(u32, u32); 3] = [(1, 20), (1, 5), (1, 2)];
pub const K_RANGE: std::ops::RangeInclusive<usize> = 2..=8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instance {
    pub index: usize,
    pub n: usize,
    pub p: (u32, u32),
    pub k: usize,
    pub seed: u64,
}

impl Instance {
    pub fn graph(&self) -> Digraph {
        let p = Probability::new(self.p.0, self.p.1).expect("ensemble probabilities are valid");
        gen_random_digraph(self.n, p, self.seed)
    }

    /// Uniform `k`-subsets of a palette of `2k` colours.
    pub fn lists(&self) -> ListAssignment {
        gen_lists(self.n, self.k, 2 * self.k, ListMode::Random, self.seed.rotate_left(32))
            .expect("ensemble list parameters are valid")
    }
}

/// `count` instances covering `n ∈ [1, 60]`, every probability and every
/// `k ∈ [2, 8]`.
pub fn ensemble(count: usize, base_seed: u64) -> Vec<Instance> {
    let ks = K_RANGE.count();
    (0..count)
        .map(|i| Instance {
            index: i,
            n: 1 + (i * 7919 + (base_seed as usize % MAX_VERTICES)) % MAX_VERTICES,
            p: PROBABILITIES[i % PROBABILITIES.len()],
            k: *K_RANGE.start() + (i / PROBABILITIES.len()) % ks,
            seed: base_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub instance: Instance,
    pub result: Result<RunStats, SolveError>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub verified: bool,
    pub steps: usize,
    pub achieved_eta: BigRational,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(&self.result, Ok(stats) if stats.verified)
    }
}

pub fn run_instance(instance: Instance, policy: &SolvePolicy) -> Outcome {
    let start = Instant::now();
    let g = instance.graph();
    let lists = instance.lists();
    let result = solve(&g, &lists, policy).map(|(c, report)| {
        let bound = BigRational::new(BigInt::from(2), BigInt::from(lists.k()));
        let verified = verify(&g, &c, &bound, Some(&lists))
            .map(|r| r.ok)
            .unwrap_or(false);
        RunStats {
            verified,
            steps: report.total_steps(),
            achieved_eta: report.achieved_eta,
        }
    });
    Outcome {
        instance,
        result,
        elapsed: start.elapsed(),
    }
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub instances: usize,
    pub passed: usize,
    pub max_steps: usize,
    pub wall_time: Duration,
    pub outcomes: Vec<Outcome>,
}

/// Runs every instance, in parallel, and collects results in input order.
pub fn run_suite(instances: &[Instance], policy: &SolvePolicy) -> Summary {
    let start = Instant::now();
    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|&i| run_instance(i, policy))
        .collect();
    Summary {
        instances: outcomes.len(),
        passed: outcomes.iter().filter(|o| o.passed()).count(),
        max_steps: outcomes
            .iter()
            .filter_map(|o| o.result.as_ref().ok().map(|s| s.steps))
            .max()
            .unwrap_or(0),
        wall_time: start.elapsed(),
        outcomes,
    }
}

impl Summary {
    pub fn table(&self) -> String {
        format!(
            "{:<10} {:>6} {:>10} {:>12}\n{:<10} {:>6} {:>10} {:>12.3}\n",
            "instances",
            "pass",
            "max_steps",
            "wall_time_s",
            self.instances,
            self.passed,
            self.max_steps,
            self.wall_time.as_secs_f64()
        )
    }
}
