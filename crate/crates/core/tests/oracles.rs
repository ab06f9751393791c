mod common;

use common::*;
use forcing_core::io::{decode_graph6, encode_graph6};
use forcing_core::{
    apply_cycle, cycle_packing_number, enumerate_perfect_matchings, find_alternating_cycle, forcing_number,
    AlternatingCycle, Graph,
};
use proptest::prelude::*;

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for b in 1..n {
                for a in 0..b {
                    if it.next().unwrap() {
                        g.add_edge(a, b);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(20)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(decode_graph6(&text).unwrap(), g);
    }

    #[test]
    fn enumeration_matches_brute_force(g in arb_graph(10)) {
        let ours: Vec<Vec<(usize, usize)>> = enumerate_perfect_matchings(&g).unwrap().iter().map(pairs).collect();
        let mut ours = ours;
        ours.sort();
        let mut theirs = naive_matchings(&g);
        theirs.sort();
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn applying_a_cycle_twice_is_identity(seed in 0u64..10_000) {
        let (g, m) = random_instance(seed, 10);
        let m = to_matching(&g, &m);
        if let Some(c) = find_alternating_cycle(&g, &m).unwrap() {
            let other = apply_cycle(&g, &m, &c).unwrap();
            prop_assert_ne!(&other, &m);
            prop_assert_eq!(apply_cycle(&g, &other, &c).unwrap(), m);
        }
    }

    #[test]
    fn forcing_number_matches_subset_search(seed in 0u64..10_000) {
        let (g, m) = random_instance(seed, 8);
        let cert = forcing_number(&g, &to_matching(&g, &m)).unwrap();
        prop_assert_eq!(cert.optimum, naive_forcing_number(&g, &m));
        prop_assert_eq!(cert.witness_set.len(), cert.optimum);
    }
}

#[test]
fn alternating_cycle_detection_matches_dfs() {
    let mut with_cycle = 0;
    for seed in 0..300 {
        let (g, m) = random_instance(seed, 10);
        let pm = to_matching(&g, &m);
        let found = find_alternating_cycle(&g, &pm).unwrap();
        let all = naive_alternating_cycles(&g, &m);
        assert_eq!(found.is_some(), !all.is_empty(), "seed {seed}");
        with_cycle += usize::from(!all.is_empty());
        if let Some(c) = found {
            c.validate(&g, &pm).unwrap();
        }
        for seq in all {
            AlternatingCycle::new(&g, &pm, seq).unwrap();
        }
    }
    // Both outcomes must be exercised.
    assert!(with_cycle > 50 && with_cycle < 300, "{with_cycle}");
}

fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1);
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols);
            }
        }
    }
    g
}

/// Two hexagons sharing an edge: vertices 0..6 and 5,4,6..10 around.
fn naphthalene() -> Graph {
    Graph::from_edges(
        10,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (4, 6), (6, 7), (7, 8), (8, 9), (9, 5)],
    )
    .unwrap()
}

#[test]
fn plane_bipartite_forcing_equals_cycle_packing() {
    let graphs = [grid(2, 3), grid(2, 4), grid(3, 4), grid(4, 4), naphthalene()];
    for g in graphs {
        for m in enumerate_perfect_matchings(&g).unwrap() {
            let f = forcing_number(&g, &m).unwrap().optimum;
            assert_eq!(f, cycle_packing_number(&g, &m).unwrap());
            assert_eq!(f, naive_forcing_number(&g, &pairs(&m)));
        }
    }
}
