mod common;

use std::collections::BTreeSet;

use common::*;
use morphograph::flooding::{to_m_flooding, validate_flooding};
use morphograph::graph::Label;
use morphograph::steepness::*;
use morphograph::structure::{lowest_edge_filter, LowestMode};
use morphograph::FloodingGraph;
use proptest::prelude::*;

fn edge_pairs(p: &FloodingGraph) -> BTreeSet<(usize, usize)> {
    p.graph().edges().iter().copied().collect()
}

fn ids(f: &FloodingGraph, p: &FloodingGraph) -> BTreeSet<usize> {
    p.graph().edges_in(f.graph()).iter().collect()
}

#[test]
fn prune_matches_track_enumeration() {
    let mut r = rng(21);
    for _ in 0..300 {
        let f = flooding(&mut r, 10, 3);
        for k in 1..=5 {
            assert_eq!(ids(&f, &prune_k(&f, k).unwrap()), brute_prune(&f, k), "k={k}");
        }
    }
}

proptest! {
    #[test]
    fn prune_nesting_and_composition(f in arb_flooding(10, 4)) {
        for k in 1..5 {
            let a = prune_k(&f, k).unwrap();
            let b = prune_k(&f, k + 1).unwrap();
            prop_assert!(edge_pairs(&b).is_subset(&edge_pairs(&a)));
            for l in 1..5 {
                let twice = prune_k(&prune_k(&f, l).unwrap(), k).unwrap();
                prop_assert_eq!(edge_pairs(&twice), edge_pairs(&prune_k(&f, k.max(l)).unwrap()));
            }
        }
    }

    #[test]
    fn prune_keeps_a_pair_per_node(f in arb_flooding(12, 4), k in 1usize..6) {
        let p = prune_k(&f, k).unwrap();
        prop_assert!(validate_flooding(p.graph()).unwrap().is_valid());
        for i in 0..p.graph().node_count() {
            prop_assert!(p.graph().degree(i) > 0);
        }
    }

    #[test]
    fn zeta_equivalence(f in arb_flooding(12, 4), m in 0usize..6) {
        prop_assert_eq!(edge_pairs(&zeta_prune(&f, m).unwrap()), edge_pairs(&prune_k(&f, m + 1).unwrap()));
    }

    #[test]
    fn k2_is_lowest_neighbors_of_m_flooding(f in arb_flooding(12, 4)) {
        let m = to_m_flooding(&f).unwrap();
        let lowest: BTreeSet<usize> = lowest_edge_filter(&m.graph, LowestMode::LowestNodes).unwrap().iter().collect();
        prop_assert_eq!(ids(&f, &prune_k(&f, 2).unwrap()), lowest);
    }

    #[test]
    fn pruned_graphs_are_steep(f in arb_flooding(10, 4), k in 1usize..5) {
        prop_assert!(is_k_steep(&prune_k(&f, k).unwrap(), k).unwrap());
    }

    #[test]
    fn eroded_steep_graph_stays_flooding(f in arb_flooding(10, 4), k in 2usize..5) {
        let p = prune_k(&f, k).unwrap();
        let mut g = to_m_flooding(&p).unwrap().graph;
        for _ in 0..k {
            prop_assert!(validate_flooding(&g).unwrap().is_valid());
            g = erode_graph(&g).unwrap();
        }
    }

    #[test]
    fn zeta_step_definition(f in arb_flooding(10, 4)) {
        // after one step, each node's value is the lowest value it floods into
        let s0 = zeta_init(&f).unwrap();
        let s1 = zeta_step(&f, &s0).unwrap();
        let m = to_m_flooding(&f).unwrap();
        let w = m.graph.node_weights().unwrap();
        let g = f.graph();
        for i in 0..g.node_count() {
            let low = g.neighbors(i).iter().filter(|&&(j, _)| w[j] <= w[i]).map(|&(j, _)| w[j]).min().unwrap();
            prop_assert_eq!(s1.values[i], low);
            if m.minima.get(i) != Label::Unset { prop_assert_eq!(s1.values[i], morphograph::Weight::ZERO); }
        }
    }
}

#[test]
fn non_steep_branch_detected() {
    // node 0 floods both 1 (which then drops to 0) and 2 (which stalls at 3)
    use morphograph::flooding::flooding_from_nodes;
    use morphograph::weight::levels;
    let g = morphograph::WeightedGraph::new(6, [(0, 1), (0, 2), (1, 3), (2, 4), (4, 5)])
        .unwrap()
        .with_node_weights(levels(&[5, 4, 4, 0, 3, 1]))
        .unwrap();
    let f = flooding_from_nodes(&g).unwrap();
    assert!(is_k_steep(&f, 1).unwrap());
    assert!(!is_k_steep(&f, 3).unwrap());
    assert!(is_k_steep(&prune_k(&f, 3).unwrap(), 3).unwrap());
}

#[test]
fn non_steep_branch_at_depth_two() {
    // node 1 may flood to 0 (level 0) or to 2 (level 3): the second branch is not steep
    use morphograph::flooding::flooding_from_nodes;
    use morphograph::weight::levels;
    let g = morphograph::WeightedGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap().with_node_weights(levels(&[0, 4, 3, 0])).unwrap();
    let f = flooding_from_nodes(&g).unwrap();
    assert!(!is_k_steep(&f, 2).unwrap());
    let p = prune_k(&f, 2).unwrap();
    assert!(is_k_steep(&p, 2).unwrap());
    assert_eq!(p.graph().edge_count(), f.graph().edge_count() - 1);
}
