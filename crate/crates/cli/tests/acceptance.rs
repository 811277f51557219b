//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. Criteria run sequentially so the wall-clock
//! limits are measured without interference.

use std::time::{Duration, Instant};

use majority_cli::bench::{ensemble, run_suite, Instance, DEFAULT_SUITE_SIZE};
use majority_cli::formats::{
    parse_colouring, parse_graph, parse_lists, write_colouring, write_graph, write_lists,
};
use majority_cli::{run, ExitStatus};
use majority_core::generators::{
    gen_lists, gen_random_digraph, gen_random_strongly_connected, gen_regular_tournament,
    ListMode, Probability,
};
use majority_core::oracle::search_space;
use majority_core::stationary::float_residual;
use majority_core::{
    oracle_min_max_f, potential, ratio, solve, stationary_vector, verify, walk_matrix,
    Arithmetic, BigInt, BigRational, Colouring, Digraph, ListAssignment, SolvePolicy,
    SolveReport, DEFAULT_BUDGET,
};
use num_traits::{ToPrimitive, Zero};

const SOUNDNESS_TIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_K6_TIME_LIMIT: Duration = Duration::from_secs(5);
const FLOAT_RESIDUAL_TOL: f64 = 1e-12;
const MODE_AGREEMENT_TOL: f64 = 1e-9;
const STATIONARY_INSTANCES: usize = 200;
const ORACLE_INSTANCES: usize = 200;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn traced() -> SolvePolicy {
    SolvePolicy {
        trace: true,
        ..SolvePolicy::default()
    }
}

/// Replays each traced component from its initial colours and moves and
/// compares a from-scratch potential with the recorded one at every step.
/// Returns a description of the first discrepancy.
fn check_descent(
    g: &Digraph,
    lists: &ListAssignment,
    c: &Colouring,
    report: &SolveReport,
) -> Result<usize, String> {
    let bound = ratio(2, lists.k() as i64);
    let verified = verify(g, c, &bound, Some(lists)).map_err(|e| e.to_string())?;
    if !verified.ok {
        return Err(format!("{} violators remain", verified.violations.len()));
    }
    let mut done = Colouring::uncoloured(g.vertex_count());
    let mut steps_checked = 0;
    for stats in &report.components {
        if let Some(trace) = &stats.potential_trace {
            if trace.windows(2).any(|w| w[1] >= w[0]) {
                return Err("potential trace not strictly decreasing".into());
            }
            let a = walk_matrix(g, &stats.vertices).map_err(|e| e.to_string())?;
            let x = stationary_vector(&a, Arithmetic::Rational).map_err(|e| e.to_string())?;
            let mut replay = done.clone();
            for &(v, col) in &stats.initial {
                replay.set(v, col);
            }
            if trace.len() != stats.moves.len() + 1 {
                return Err("trace length does not match move count".into());
            }
            for (step, recorded) in trace.iter().enumerate() {
                if step > 0 {
                    let (v, col) = stats.moves[step - 1];
                    replay.set(v, col);
                }
                let scratch = potential(g, &stats.vertices, &replay, &x).map_err(|e| e.to_string())?;
                if scratch != *recorded {
                    return Err(format!("potential mismatch at step {step}"));
                }
                steps_checked += 1;
            }
            if stats.vertices.iter().any(|&v| replay.get(v) != c.get(v)) {
                return Err("replay does not reach the final colouring".into());
            }
        }
        for &v in &stats.vertices {
            done.set(v, c.get(v).expect("solver colours every vertex"));
        }
    }
    Ok(steps_checked)
}

fn tournament_instance(n: usize, k: u64) -> (Digraph, ListAssignment) {
    let g = gen_regular_tournament(n).unwrap();
    let l = ListAssignment::uniform(n, &(1..=k).collect::<Vec<_>>()).unwrap();
    (g, l)
}

fn criterion_1() -> Outcome {
    let instances = ensemble(DEFAULT_SUITE_SIZE, 0);
    let summary = run_suite(&instances, &SolvePolicy::default());
    let in_time = summary.wall_time < SOUNDNESS_TIME_LIMIT;
    outcome(
        summary.passed == summary.instances && summary.instances == 1000 && in_time,
        format!(
            "{}/{} verified at 2/k, max steps {}, {:.2}s (limit {}s)",
            summary.passed,
            summary.instances,
            summary.max_steps,
            summary.wall_time.as_secs_f64(),
            SOUNDNESS_TIME_LIMIT.as_secs()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut passed = true;
    let mut detail = Vec::new();
    for k in [2u64, 4, 6] {
        let (g, l) = tournament_instance(k as usize + 1, k);
        let start = Instant::now();
        let oracle = oracle_min_max_f(&g, &l, DEFAULT_BUDGET).unwrap();
        let elapsed = start.elapsed();
        let (_, report) = solve(&g, &l, &SolvePolicy::default()).unwrap();
        let bound = ratio(2, k as i64);
        let ok = oracle.opt == bound
            && report.achieved_eta == bound
            && (k != 6 || elapsed < ORACLE_K6_TIME_LIMIT);
        passed &= ok;
        detail.push(format!(
            "k={k}: opt={} solver={} ({} of {} colourings reached, {:.3}s)",
            oracle.opt,
            report.achieved_eta,
            oracle.enumerated,
            search_space(&l),
            elapsed.as_secs_f64()
        ));
    }
    outcome(passed, detail.join("; "))
}

fn criterion_3() -> Outcome {
    // Regression-pinned optima from exhaustive enumeration.
    let pinned = [(3u64, ratio(1, 2)), (5u64, ratio(1, 3))];
    let mut passed = true;
    let mut detail = Vec::new();
    for (k, expected) in pinned {
        let (g, l) = tournament_instance(k as usize + 2, k);
        let oracle = oracle_min_max_f(&g, &l, DEFAULT_BUDGET).unwrap();
        let (_, report) = solve(&g, &l, &SolvePolicy::default()).unwrap();
        let lower = ratio(2, k as i64 + 1);
        let upper = ratio(2, k as i64);
        let ok = lower <= oracle.opt
            && oracle.opt <= upper
            && oracle.opt == expected
            && report.achieved_eta <= upper;
        passed &= ok;
        detail.push(format!(
            "k={k}: {lower} <= opt={} <= {upper}, solver={}",
            oracle.opt, report.achieved_eta
        ));
    }
    outcome(passed, detail.join("; "))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut worst_residual = 0.0f64;
    let mut worst_gap = 0.0f64;
    for i in 0..STATIONARY_INSTANCES {
        let n = 2 + i % 39;
        let p = Probability::new(1 + (i % 5) as u32, 20).unwrap();
        let g = gen_random_strongly_connected(n, p, 1000 + i as u64);
        let all: Vec<usize> = g.vertices().collect();
        let a = walk_matrix(&g, &all).unwrap();
        let exact = stationary_vector(&a, Arithmetic::Rational).unwrap();
        let float = stationary_vector(&a, Arithmetic::Float).unwrap();
        let xs = exact.as_exact().unwrap();
        let xf = float.as_float().unwrap();

        // Residual straight from the digraph: Σ_{u→v} x_u / d⁺(u) − x_v.
        let residual_zero = g.vertices().all(|v| {
            let inflow = g
                .in_neighbours(v)
                .iter()
                .map(|&u| &xs[u] / BigInt::from(g.out_degree(u)))
                .fold(BigRational::zero(), |s, t| s + t);
            inflow == xs[v]
        });
        let positive = xs.iter().all(|x| x > &BigRational::zero());
        let normalised = xs.iter().fold(BigRational::zero(), |s, x| s + x) == ratio(1, 1);
        let residual = float_residual(&a, xf);
        let gap = xs
            .iter()
            .zip(xf)
            .map(|(e, f)| (e.to_f64().unwrap() - f).abs())
            .fold(0.0, f64::max);
        worst_residual = worst_residual.max(residual);
        worst_gap = worst_gap.max(gap);
        let float_ok = residual <= FLOAT_RESIDUAL_TOL
            && xf.iter().all(|&v| v > 0.0)
            && (xf.iter().sum::<f64>() - 1.0).abs() <= FLOAT_RESIDUAL_TOL;
        if !(residual_zero && positive && normalised && float_ok && gap <= MODE_AGREEMENT_TOL) {
            failures.push(i);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}/{} exact residual 0, positive, sum 1; max float residual {worst_residual:.2e}, max mode gap {worst_gap:.2e}; failures {failures:?}",
            STATIONARY_INSTANCES - failures.len(),
            STATIONARY_INSTANCES
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut runs: Vec<(Digraph, ListAssignment)> = ensemble(DEFAULT_SUITE_SIZE, 0)
        .iter()
        .map(|i: &Instance| (i.graph(), i.lists()))
        .collect();
    for k in [2u64, 4, 6] {
        runs.push(tournament_instance(k as usize + 1, k));
    }
    for k in [3u64, 5] {
        runs.push(tournament_instance(k as usize + 2, k));
    }
    let mut failures = Vec::new();
    let mut steps = 0;
    for (i, (g, l)) in runs.iter().enumerate() {
        let result = solve(g, l, &traced())
            .map_err(|e| e.to_string())
            .and_then(|(c, report)| check_descent(g, l, &c, &report));
        match result {
            Ok(s) => steps += s,
            Err(e) => failures.push(format!("run {i}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} traced solves, {steps} potentials recomputed exactly; failures {:?}",
            runs.len(),
            failures
        ),
    )
}

fn criterion_6() -> Outcome {
    let l_colours = [1u64, 2, 3];
    let mut failures = Vec::new();
    for i in 0..ORACLE_INSTANCES {
        let n = 1 + i % 5;
        let p = Probability::new((i % 4) as u32 + 1, 4).unwrap();
        let g = gen_random_digraph(n, p, 5000 + i as u64);
        let l = ListAssignment::uniform(n, &l_colours).unwrap();
        let oracle = oracle_min_max_f(&g, &l, DEFAULT_BUDGET).unwrap();
        let (c, report) = solve(&g, &l, &SolvePolicy::default()).unwrap();
        let ordered = oracle.opt <= report.achieved_eta && report.achieved_eta <= ratio(2, 3);
        let oracle_ok = verify(&g, &oracle.witness, &oracle.opt, Some(&l)).unwrap().ok;
        let solver_ok = verify(&g, &c, &report.achieved_eta, Some(&l)).unwrap().ok;
        if !(ordered && oracle_ok && solver_ok) {
            failures.push(i);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}/{ORACLE_INSTANCES} with opt <= solver <= 2/3 and both witnesses verified; failures {failures:?}",
            ORACLE_INSTANCES - failures.len()
        ),
    )
}

fn cli(args: &[&str]) -> (ExitStatus, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("majority").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, out)
}

/// gen → solve → verify in a fresh directory; returns every produced byte.
fn pipeline() -> Result<Vec<Vec<u8>>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (g, l, c) = (path("g.txt"), path("l.txt"), path("c.txt"));
    let steps: Vec<Vec<String>> = vec![
        vec!["gen", "random", "--n", "40", "--p", "1/5", "--seed", "42", "--out", &g],
        vec!["gen", "lists", "--n", "40", "--k", "3", "--palette", "6", "--mode", "random", "--seed", "7", "--out", &l],
        vec!["solve", "--graph", &g, "--lists", &l, "--init", "random", "--seed", "3", "--out", &c, "--report", "--trace"],
        vec!["verify", "--graph", &g, "--colouring", &c, "--eta", "2/3", "--lists", &l],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(String::from).collect())
    .collect();
    let mut produced = Vec::new();
    for args in &steps {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (status, out) = cli(&refs);
        if status != ExitStatus::Success {
            return Err(format!("{} exited with {status:?}", args[0]));
        }
        produced.push(out);
    }
    for file in [&g, &l, &c] {
        produced.push(std::fs::read(file).map_err(|e| e.to_string())?);
    }
    Ok(produced)
}

fn criterion_7() -> Outcome {
    let first = pipeline();
    let second = pipeline();
    let identical = matches!((&first, &second), (Ok(a), Ok(b)) if a == b);

    let mut round_trips = true;
    for seed in 0..50u64 {
        let n = 1 + seed as usize;
        let g = gen_random_digraph(n, Probability::new(1, 4).unwrap(), seed);
        let l = gen_lists(n, 3, 7, ListMode::Random, seed).unwrap();
        let (c, _) = solve(&g, &l, &SolvePolicy::default()).unwrap();
        let (gt, lt, ct) = (write_graph(&g), write_lists(&l), write_colouring(&c));
        round_trips &= parse_graph(&gt).as_ref() == Ok(&g)
            && parse_lists(&lt, n).as_ref() == Ok(&l)
            && parse_colouring(&ct, n).as_ref() == Ok(&c)
            && write_graph(&parse_graph(&gt).unwrap()) == gt
            && write_lists(&parse_lists(&lt, n).unwrap()) == lt
            && write_colouring(&parse_colouring(&ct, n).unwrap()) == ct;
    }
    outcome(
        identical && round_trips,
        format!(
            "pipeline byte-identical across runs: {identical} ({}); canonical format round trips: {round_trips}",
            first.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.clone())
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("1 soundness sweep", criterion_1),
        ("2 even tightness", criterion_2),
        ("3 odd lower bound", criterion_3),
        ("4 stationary exactness", criterion_4),
        ("5 descent and termination", criterion_5),
        ("6 oracle consistency", criterion_6),
        ("7 interface stability", criterion_7),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let result = check();
        println!(
            "[{}] criterion {name}: {}",
            if result.passed { "PASS" } else { "FAIL" },
            result.detail
        );
        if !result.passed {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
