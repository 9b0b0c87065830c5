use proptest::prelude::*;

use staruniv::connectivity::{block_tree, independent_paths, local_connectivity};
use staruniv::containment::{contains_star, contains_topological, StarPattern};
use staruniv::graph::Graph;
use staruniv::io::GraphDoc;
use staruniv::reduction::{blowup, derive_gamma_star};
use staruniv::verify::{check_block_tree, check_path_family, check_star, check_topological};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(g in graph(10)) {
        let doc = GraphDoc::from_graph(&g);
        let back: GraphDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        prop_assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn path_families_are_valid_and_maximum(g in graph(8), u in 0usize..8, v in 0usize..8) {
        prop_assume!(u < g.n() && v < g.n() && u != v && !g.has_edge(u, v));
        let fam = independent_paths(&g, u, v, usize::MAX).unwrap();
        prop_assert!(check_path_family(&g, u, v, &fam.paths).is_ok());
        prop_assert_eq!(fam.paths.len(), local_connectivity(&g, u, v, usize::MAX).unwrap());
        prop_assert!(fam.paths.len() <= g.degree(u).min(g.degree(v)));
    }

    #[test]
    fn block_trees_validate(g in graph(10)) {
        let bt = block_tree(&g);
        prop_assert!(check_block_tree(&g, &bt.cutvertices, &bt.blocks).is_ok());
    }

    #[test]
    fn subdivision_is_a_topological_minor(g in graph(5)) {
        let h = g.subdivide_all(1);
        let emb = contains_topological(&h, &g);
        prop_assert!(emb.is_some());
        prop_assert!(check_topological(&h, &g, &emb.unwrap(), None, None).is_ok());
    }

    #[test]
    fn star_witnesses_validate(g in graph(9), legs in proptest::collection::vec(1usize..=3, 1..=4)) {
        let t = StarPattern::new(legs).unwrap();
        if let Some(w) = contains_star(&g, &t) {
            prop_assert!(check_star(&g, t.legs(), &w).is_ok());
        }
    }

    #[test]
    fn blowup_edges_survive_derivation(g in graph(6), copies in 1usize..=4) {
        let b = blowup(&g, copies).unwrap();
        let d = derive_gamma_star(&b.graph, copies).unwrap();
        for (u, v) in g.edges() {
            prop_assert!(d.has_edge(u, v));
        }
    }
}

#[test]
fn petersen_has_no_k5_subdivision_but_k4_is_inside() {
    let p = Graph::petersen();
    assert!(contains_topological(&p, &Graph::clique(5)).is_none());
    assert!(contains_topological(&p, &Graph::clique(4)).is_some());
}

#[test]
fn long_path_avoids_branching_stars() {
    let g = Graph::path(40);
    assert!(contains_star(&g, &StarPattern::parse("1,1,1").unwrap()).is_none());
    assert!(contains_star(&g, &StarPattern::parse("20,20").unwrap()).is_some());
}
