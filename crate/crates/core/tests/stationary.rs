//! Stationary vectors checked against the defining identity, computed
//! straight from the digraph.

use majority_core::generators::{gen_random_strongly_connected, Probability};
use majority_core::stationary::float_residual;
use majority_core::{
    g_score, ratio, stationary_vector, walk_matrix, Arithmetic, BigInt, BigRational, Colouring,
    Digraph, ListAssignment, Weights,
};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn exact_residual_is_zero(g: &Digraph, x: &Weights) -> bool {
    let mask = g.mask(x.vertices());
    x.vertices().iter().all(|&v| {
        let inflow = g
            .in_neighbours(v)
            .iter()
            .filter(|&&u| mask[u])
            .map(|&u| x.value(u).unwrap() / BigInt::from(g.out_degree_within(u, &mask)))
            .fold(BigRational::zero(), |a, b| a + b);
        inflow == x.value(v).unwrap()
    })
}

fn check_component(g: &Digraph) {
    let all: Vec<usize> = g.vertices().collect();
    let a = walk_matrix(g, &all).unwrap();
    for i in 0..a.len() {
        let row_sum = a.row(i).fold(BigRational::zero(), |s, (_, e)| s + e);
        assert_eq!(row_sum, ratio(1, 1));
    }

    let exact = stationary_vector(&a, Arithmetic::Rational).unwrap();
    assert!(exact_residual_is_zero(g, &exact));
    let xs = exact.as_exact().unwrap();
    assert!(xs.iter().all(|v| v > &BigRational::zero()));
    assert_eq!(xs.iter().fold(BigRational::zero(), |s, v| s + v), ratio(1, 1));

    let float = stationary_vector(&a, Arithmetic::Float).unwrap();
    let xf = float.as_float().unwrap();
    assert!(float_residual(&a, xf) <= 1e-12);
    assert!(xf.iter().all(|&v| v > 0.0));
    assert!((xf.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    for (e, f) in xs.iter().zip(xf) {
        assert!((e.to_f64().unwrap() - f).abs() <= 1e-9);
    }
}

#[test]
fn chorded_triangle_hand_solution() {
    // x0 = x2, x1 = x0/2, x2 = x0/2 + x1, Σx = 1  ⇒  (2/5, 1/5, 2/5).
    let g = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
    let a = walk_matrix(&g, &[0, 1, 2]).unwrap();
    let x = stationary_vector(&a, Arithmetic::Rational).unwrap();
    assert_eq!(x.as_exact().unwrap(), &[ratio(2, 5), ratio(1, 5), ratio(2, 5)]);
    assert!(exact_residual_is_zero(&g, &x));
}

#[test]
fn regular_tournament_is_uniform() {
    let g = majority_core::generators::gen_regular_tournament(5).unwrap();
    let a = walk_matrix(&g, &[0, 1, 2, 3, 4]).unwrap();
    let x = stationary_vector(&a, Arithmetic::Rational).unwrap();
    assert_eq!(x.as_exact().unwrap(), &vec![ratio(1, 5); 5][..]);
}

#[test]
fn subset_of_larger_graph() {
    // Component {1, 2, 3} inside a graph with edges leaving it.
    let g = Digraph::from_edges(5, [(1, 2), (2, 3), (3, 1), (2, 1), (1, 0), (4, 1), (3, 4)])
        .unwrap();
    let a = walk_matrix(&g, &[3, 1, 2]).unwrap();
    let x = stationary_vector(&a, Arithmetic::Rational).unwrap();
    assert_eq!(x.vertices(), &[1, 2, 3]);
    assert!(exact_residual_is_zero(&g, &x));
}

#[test]
fn random_strongly_connected_sweep() {
    for seed in 0..60u64 {
        let n = 2 + (seed as usize * 7) % 39;
        let g = gen_random_strongly_connected(n, Probability::new(1, 1 + (seed % 8) as u32 * 4).unwrap(), seed);
        check_component(&g);
    }
}

/// Violator/colour pairs that strictly lower the potential.
fn improving_moves(
    g: &Digraph,
    comp: &[usize],
    c: &Colouring,
    l: &ListAssignment,
    x: &Weights,
) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for &v in comp {
        let cur = g_score(g, comp, c, l, x, v, c.get(v).unwrap()).unwrap();
        for &i in l.list(v) {
            if g_score(g, comp, c, l, x, v, i).unwrap() < cur {
                out.push((v, i));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_and_float_agree(n in 2usize..25, num in 0u32..10, seed: u64) {
        let g = gen_random_strongly_connected(n, Probability::new(num, 20).unwrap(), seed);
        check_component(&g);
    }

    #[test]
    fn improving_moves_invariant_under_scaling(
        n in 2usize..10,
        seed: u64,
        colours in proptest::collection::vec(1u64..4, 10),
        scale_num in 1i64..50,
        scale_den in 1i64..50,
    ) {
        let g = gen_random_strongly_connected(n, Probability::new(1, 3).unwrap(), seed);
        let comp: Vec<usize> = g.vertices().collect();
        let l = ListAssignment::uniform(n, &[1, 2, 3]).unwrap();
        let c = Colouring::from_total(colours[..n].to_vec());
        let a = walk_matrix(&g, &comp).unwrap();
        let x = stationary_vector(&a, Arithmetic::Rational).unwrap();
        let scaled = x.scaled(&ratio(scale_num, scale_den));
        prop_assert_eq!(
            improving_moves(&g, &comp, &c, &l, &x),
            improving_moves(&g, &comp, &c, &l, &scaled)
        );
    }
}
