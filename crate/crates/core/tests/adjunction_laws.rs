mod common;

use common::*;
use morphograph::adjunction::*;
use morphograph::weight::levels;
use morphograph::{Weight, WeightedGraph};
use proptest::prelude::*;

fn fields(len: usize, vals: u32) -> impl Iterator<Item = Vec<Weight>> {
    let total = (vals as usize).pow(len as u32);
    (0..total).map(move |mut c| {
        (0..len)
            .map(|_| {
                let d = (c % vals as usize) as u32;
                c /= vals as usize;
                Weight::from(d)
            })
            .collect()
    })
}

fn leq(a: &[Weight], b: &[Weight]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Both adjunctions on every (node field, edge field) pair of `g`.
fn check_adjunctions(g: &WeightedGraph) -> usize {
    let mut violations = 0;
    for n in fields(g.node_count(), 3) {
        let up = dilate_nodes_to_edges(g, &n);
        let down = erode_nodes_to_edges(g, &n);
        for e in fields(g.edge_count(), 3) {
            if leq(&up, &e) != leq(&n, &erode_edges_to_nodes(g, &e)) {
                violations += 1;
            }
            if leq(&dilate_edges_to_nodes(g, &e), &n) != leq(&e, &down) {
                violations += 1;
            }
        }
    }
    violations
}

#[test]
fn adjunction_on_five_node_topologies() {
    let shapes: [&[(usize, usize)]; 3] = [
        &[(0, 1), (1, 2), (2, 3), (3, 4)],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
        &[(0, 1), (0, 2), (0, 3), (0, 4)],
    ];
    for s in shapes {
        let g = WeightedGraph::new(5, s.iter().copied()).unwrap();
        assert_eq!(check_adjunctions(&g), 0);
    }
    // with an isolated node
    let g = WeightedGraph::new(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(check_adjunctions(&g), 0);
}

proptest! {
    #[test]
    fn erosion_commutes_with_min(g in arb_edge_graph(10, 5), seed in any::<u64>()) {
        let other = edge_graph(&mut rng(seed), g.node_count(), g.node_count(), 5);
        // reuse the topology of g with a second random field
        let e1 = g.edge_weights().unwrap().to_vec();
        let e2: Vec<Weight> = (0..g.edge_count()).map(|k| other.edge_weights().unwrap()[k % other.edge_count().max(1)]).collect();
        let m: Vec<Weight> = e1.iter().zip(&e2).map(|(a, b)| *a.min(b)).collect();
        let lhs = erode_edges_to_nodes(&g, &m);
        let rhs: Vec<Weight> = erode_edges_to_nodes(&g, &e1).iter().zip(erode_edges_to_nodes(&g, &e2)).map(|(a, b)| *a.min(&b)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dilation_commutes_with_max(g in arb_node_graph(10, 5), seed in any::<u64>()) {
        let n1 = g.node_weights().unwrap().to_vec();
        let mut r = rng(seed);
        let n2 = levels(&(0..g.node_count()).map(|_| rand::Rng::gen_range(&mut r, 0..6)).collect::<Vec<_>>());
        let m: Vec<Weight> = n1.iter().zip(&n2).map(|(a, b)| *a.max(b)).collect();
        let lhs = dilate_nodes_to_edges(&g, &m);
        let rhs: Vec<Weight> = dilate_nodes_to_edges(&g, &n1).iter().zip(dilate_nodes_to_edges(&g, &n2)).map(|(a, b)| *a.max(&b)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn duality_through_complement(g in arb_node_graph(10, 50)) {
        let n = g.node_weights().unwrap();
        let c: Vec<Weight> = n.iter().map(|w| w.complement()).collect();
        let lhs = erode_nodes_to_edges(&g, &c);
        let rhs: Vec<Weight> = dilate_nodes_to_edges(&g, n).iter().map(|w| w.complement()).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pseudo_inverse_on_invariants(g in arb_edge_graph(12, 5)) {
        let e = opening_gamma_e(&g, g.edge_weights().unwrap());
        prop_assert_eq!(dilate_nodes_to_edges(&g, &erode_edges_to_nodes(&g, &e)), e);
    }

    #[test]
    fn invariant_families_closed(g in arb_edge_graph(10, 5), seed in any::<u64>()) {
        let mut r = rng(seed);
        let e1 = opening_gamma_e(&g, g.edge_weights().unwrap());
        let raw = levels(&(0..g.edge_count()).map(|_| rand::Rng::gen_range(&mut r, 0..6)).collect::<Vec<_>>());
        let e2 = opening_gamma_e(&g, &raw);
        let sup: Vec<Weight> = e1.iter().zip(&e2).map(|(a, b)| *a.max(b)).collect();
        prop_assert!(is_invariant(&g, &sup, Filter::GammaE));
        let n1 = closing_phi_n(&g, &erode_edges_to_nodes(&g, &e1));
        let n2 = closing_phi_n(&g, &dilate_edges_to_nodes(&g, &raw));
        let inf: Vec<Weight> = n1.iter().zip(&n2).map(|(a, b)| *a.min(b)).collect();
        prop_assert!(is_invariant(&g, &inf, Filter::PhiN));
    }

    #[test]
    fn opening_increasing(g in arb_edge_graph(10, 5)) {
        let e = g.edge_weights().unwrap();
        let lower: Vec<Weight> = e.iter().map(|w| Weight::from(w.as_level().unwrap().saturating_sub(1))).collect();
        prop_assert!(leq(&opening_gamma_e(&g, &lower), &opening_gamma_e(&g, e)));
    }
}
