//! Randomized properties: distance-matrix axioms, graph6 round trips, and
//! canonical-label invariance under relabeling.

use proptest::prelude::*;
use rand::prelude::*;
use rand::rngs::StdRng;

use dimdist::automorphism::canonical_form;
use dimdist::graph::{all_pairs_distances, Graph};
use dimdist::graph6;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(16)) {
        let line = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&line).unwrap(), g);
    }

    #[test]
    fn canonical_label_is_relabeling_invariant(g in arb_graph(8), keys in prop::collection::vec(any::<u64>(), 8)) {
        let n = g.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let mut perm = vec![0; n];
        for (rank, &i) in order.iter().enumerate() {
            perm[i] = rank;
        }
        prop_assert_eq!(canonical_form(&g.relabeled(&perm)), canonical_form(&g));
    }

    #[test]
    fn distance_matrix_axioms(g in arb_graph(10)) {
        let d = all_pairs_distances(&g);
        let n = g.n();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), Some(0));
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                prop_assert_eq!(d.get(u, v) == Some(1), g.has_edge(u, v));
                for w in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (d.get(u, w), d.get(u, v), d.get(v, w)) {
                        prop_assert!(a <= b + c, "triangle inequality at ({u},{v},{w})");
                    }
                }
            }
        }
        let disconnected = (0..n).any(|u| (0..n).any(|v| d.get(u, v).is_none()));
        prop_assert_eq!(disconnected, !g.is_connected());
    }
}

/// The volume knobs the randomized axioms run at: a thousand graphs per
/// order for the distance matrix, five hundred relabelings per test graph
/// for canonical stability.
#[test]
fn distance_axioms_high_volume() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in 1..=10usize {
        for _ in 0..1000 {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let d = all_pairs_distances(&g);
            for u in 0..n {
                assert_eq!(d.get(u, u), Some(0));
                for v in (u + 1)..n {
                    assert_eq!(d.get(u, v), d.get(v, u));
                    assert_eq!(d.get(u, v) == Some(1), g.has_edge(u, v));
                }
            }
            let unreachable = (0..n).any(|u| (0..n).any(|v| d.get(u, v).is_none()));
            assert_eq!(unreachable, !g.is_connected());
        }
    }
}

#[test]
fn canonical_stability_high_volume() {
    let mut rng = StdRng::seed_from_u64(0xcafe);
    let test_graphs: Vec<Graph> = vec![
        dimdist::graph::standard_family(&dimdist::graph::FamilyDescriptor::Cycle(6)).unwrap(),
        dimdist::graph::standard_family(&dimdist::graph::FamilyDescriptor::Kite).unwrap(),
        dimdist::graph::standard_family(&dimdist::graph::FamilyDescriptor::Wheel(5)).unwrap(),
        Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap(),
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap(),
    ];
    for g in &test_graphs {
        let base = canonical_form(g);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        for _ in 0..500 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.relabeled(&perm)), base);
        }
    }
}
