use majority_cli::formats::*;
use majority_core::generators::{gen_lists, gen_random_digraph, ListMode, Probability};
use majority_core::Colouring;
use proptest::prelude::*;

proptest! {
    #[test]
    fn graph_round_trip(n in 0usize..25, num in 0u32..6, seed: u64) {
        let g = gen_random_digraph(n, Probability::new(num, 5).unwrap(), seed);
        let text = write_graph(&g);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(write_graph(&parsed), text);
    }

    #[test]
    fn lists_round_trip(n in 1usize..25, k in 2usize..6, extra in 0usize..5, seed: u64) {
        let l = gen_lists(n, k, k + extra, ListMode::Random, seed).unwrap();
        let text = write_lists(&l);
        prop_assert_eq!(parse_lists(&text, n).unwrap(), l);
    }

    #[test]
    fn colouring_round_trip(colours in proptest::collection::vec(proptest::option::of(0u64..1000), 0..30)) {
        let c = Colouring::from_partial(colours);
        let text = write_colouring(&c);
        let parsed = parse_colouring(&text, c.len()).unwrap();
        prop_assert_eq!(&parsed, &c);
        prop_assert_eq!(write_colouring(&parsed), text);
    }

    #[test]
    fn edge_lines_may_come_in_any_order(n in 2usize..15, seed: u64) {
        let g = gen_random_digraph(n, Probability::new(1, 3).unwrap(), seed);
        let mut lines: Vec<String> = g.edges().map(|(u, v)| format!("{u} {v}")).collect();
        lines.reverse();
        let text = format!("# reversed\n{} {}\n{}\n", n, g.edge_count(), lines.join("\n"));
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
