//! Property-based checks: the brute-force oracles against known values and
//! against each other, then the library against the oracles on randomized
//! instances.

mod support;

use proptest::prelude::*;
use support::*;
use tangles::graph::Graph;

fn named(n: usize, edges: &[(u32, u32)]) -> Graph {
    Graph::new(n, edges).unwrap()
}

fn k4() -> Graph {
    named(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

fn p4() -> Graph {
    named(4, &[(0, 1), (1, 2), (2, 3)])
}

fn c4() -> Graph {
    named(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
}

fn c5() -> Graph {
    named(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
}

fn star3() -> Graph {
    named(4, &[(0, 1), (0, 2), (0, 3)])
}

fn two_edges() -> Graph {
    named(4, &[(0, 1), (2, 3)])
}

// ---------------------------------------------------------------------------
// The oracles against published small-case values
// ---------------------------------------------------------------------------

#[test]
fn corpus_sizes_match_the_graph_isomorphism_counts() {
    let sizes: Vec<usize> = (1..=5).map(|n| graphs_up_to_iso(n).len()).collect();
    assert_eq!(sizes, vec![1, 2, 4, 11, 34]);
    assert_eq!(corpus(5).len(), 52);
}

#[test]
fn oracle_widths_match_known_values() {
    assert_eq!(brute_treewidth(&k4()), 3);
    assert_eq!(brute_treewidth(&p4()), 1);
    assert_eq!(brute_treewidth(&c5()), 2);
    assert_eq!(brute_treewidth(&named(3, &[])), 0);

    assert_eq!(brute_pathwidth(&p4()), 1);
    assert_eq!(brute_pathwidth(&k4()), 3);
    assert_eq!(brute_pathwidth(&star3()), 1);
    assert_eq!(brute_pathwidth(&c4()), 2);

    assert_eq!(brute_branchwidth(&k4()), 3);
    assert_eq!(brute_branchwidth(&p4()), 2);
    assert_eq!(brute_branchwidth(&star3()), 1);
    assert_eq!(brute_branchwidth(&two_edges()), 0);
    assert_eq!(brute_branchwidth(&c4()), 2);

    assert_eq!(brute_carving_width(&k4()), 4);
    assert_eq!(brute_carving_width(&c4()), 2);
    assert_eq!(brute_carving_width(&named(2, &[(0, 1)])), 1);
    assert_eq!(brute_carving_width(&named(3, &[(0, 1), (1, 2)])), 2);

    assert_eq!(brute_rank_width(&k4()), 1);
    assert_eq!(brute_rank_width(&c4()), 1);
    assert_eq!(brute_rank_width(&p4()), 1);
    assert_eq!(brute_rank_width(&c5()), 2);
}

// ---------------------------------------------------------------------------
// The oracles against each other, through classical theorems
// ---------------------------------------------------------------------------

/// Seymour–Thomas: the largest bramble order is exactly tree-width + 1.
#[test]
fn bramble_orders_track_treewidth_on_the_corpus() {
    for g in corpus(4) {
        assert_eq!(
            brute_bramble_order(&g) as i64,
            brute_treewidth(&g) + 1,
            "graph {:?}",
            g.edges()
        );
    }
    assert_eq!(brute_bramble_order(&c5()) as i64, 3);
    assert_eq!(brute_bramble_order(&k4()) as i64, 4);
}

/// Bienstock–Robertson–Seymour–Thomas: a blockage of order k−1 exists
/// exactly when the path-width is at least k−1.
#[test]
fn blockages_track_pathwidth_on_the_corpus() {
    for g in corpus(4) {
        let pw = brute_pathwidth(&g);
        for k in 1..=5u32 {
            assert_eq!(
                has_blockage(&g, k),
                pw >= k as i64 - 1,
                "graph {:?}, k={k}, pw={pw}",
                g.edges()
            );
        }
    }
    assert!(has_blockage(&c5(), 3));
    assert!(!has_blockage(&c5(), 4));
}

// ---------------------------------------------------------------------------
// The library against the oracles, on randomized instances
// ---------------------------------------------------------------------------

fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let count = pairs.len();
        proptest::collection::vec(any::<bool>(), count).prop_map(move |picks| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .zip(&picks)
                .filter(|&(_, &p)| p)
                .map(|(&e, _)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn library_treewidth_matches_the_elimination_oracle(g in arbitrary_graph(5)) {
        let lib = tangles::widths::treewidth(&g, 100_000).unwrap().value;
        prop_assert_eq!(lib, brute_treewidth(&g));
    }

    #[test]
    fn library_pathwidth_matches_the_layout_oracle(g in arbitrary_graph(5)) {
        let lib = tangles::widths::pathwidth(&g, 100_000).unwrap().value;
        prop_assert_eq!(lib, brute_pathwidth(&g));
    }

    #[test]
    fn library_branchwidth_matches_the_leaf_tree_oracle(g in arbitrary_graph(5)) {
        let lib = tangles::widths::branchwidth(&g, 100_000).unwrap().value;
        prop_assert_eq!(lib, brute_branchwidth(&g));
    }

    #[test]
    fn library_carving_width_matches_the_leaf_tree_oracle(g in arbitrary_graph(5)) {
        prop_assume!(g.n() >= 2);
        let lib = tangles::setsep::carving_width(&g, 100_000).unwrap().value;
        prop_assert_eq!(lib, brute_carving_width(&g));
    }

    #[test]
    fn library_rank_width_matches_the_leaf_tree_oracle(g in arbitrary_graph(5)) {
        prop_assume!(g.n() >= 2);
        let lib = tangles::setsep::rank_width(&g, 100_000).unwrap().value;
        prop_assert_eq!(lib, brute_rank_width(&g));
    }

    #[test]
    fn graph_json_round_trips(g in arbitrary_graph(6)) {
        let text = tangles::io::graph_to_json(&g);
        let back = tangles::io::graph_from_json(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }
}
