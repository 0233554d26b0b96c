use handelman::graph::{bit, random_graph, Graph, VertexSet, WeightedGraph};
use handelman::handelman::handelman_rank;
use handelman::stable::unweighted_stability_number;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (2..=max_n, 0u32..=10, any::<u64>())
        .prop_map(|(n, p, seed)| WeightedGraph::unit(random_graph(n, f64::from(p) / 10.0, seed).unwrap()))
}

fn rank(g: &WeightedGraph) -> usize {
    handelman_rank(g).unwrap().rank
}

fn alpha(g: &WeightedGraph) -> usize {
    unweighted_stability_number(g.graph())
}

fn with_clique(g: Graph, t: usize) -> WeightedGraph {
    let mut edges = g.edges();
    for i in 1..=t {
        for j in i + 1..=t {
            if !g.has_edge(i, j) {
                edges.push((i, j));
            }
        }
    }
    WeightedGraph::unit(Graph::from_edges(g.n(), edges).unwrap())
}

fn in_some_maximum_stable_set(g: &WeightedGraph, v: usize) -> bool {
    let (rest, _) = g.delete_closed_neighborhood(v).unwrap();
    alpha(&rest) + 1 == alpha(g)
}

fn prefix(t: usize) -> VertexSet {
    (1..=t).fold(0, |s, v| s | bit(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn node_deletion_laws(g in arb_graph(6), j in 1usize..=6) {
        let j = 1 + (j - 1) % g.n();
        let (h, _) = g.delete_node(j).unwrap();
        let (rg, rh) = (rank(&g), rank(&h));
        if alpha(&h) == alpha(&g) {
            prop_assert!(rh <= rg);
        } else {
            prop_assert_eq!(alpha(&h) + 1, alpha(&g));
            prop_assert!(rg <= rh);
        }
        if g.graph().degree(j) == 0 {
            prop_assert_eq!(rg, rh);
        }
        if g.graph().degree(j) == g.n() - 1 {
            prop_assert!(rg <= rh + 1);
        }
    }

    #[test]
    fn critical_edge_law(g in arb_graph(6), k in any::<prop::sample::Index>()) {
        let edges = g.graph().edges();
        prop_assume!(!edges.is_empty());
        let (i, j) = edges[k.index(edges.len())];
        let h = g.delete_edge(i, j).unwrap();
        if alpha(&h) == alpha(&g) + 1 {
            prop_assert!(rank(&h) <= rank(&g));
        }
    }

    #[test]
    fn clique_sum_laws(
        n1 in 1usize..=4,
        n2 in 1usize..=4,
        t in 0usize..=3,
        p1 in 0u32..=10,
        p2 in 0u32..=10,
        s1 in any::<u64>(),
        s2 in any::<u64>(),
    ) {
        prop_assume!(n1 + n2 + t <= 7);
        let (n1, n2) = (n1 + t, n2 + t);
        let g1 = with_clique(random_graph(n1, f64::from(p1) / 10.0, s1).unwrap(), t);
        let g2 = with_clique(random_graph(n2, f64::from(p2) / 10.0, s2).unwrap(), t);
        let shared: Vec<usize> = (1..=t).collect();
        let g = WeightedGraph::clique_sum(&g1, &g2, &shared, &shared).unwrap();
        let c0 = prefix(t);
        let (h1, _) = g1.delete_vertices(c0);
        let (h2, _) = g2.delete_vertices(c0);
        let (a, a1, a2) = (alpha(&g), alpha(&g1), alpha(&g2));
        let rg = rank(&g);
        let (r1, r2, rh1, rh2) = (rank(&g1), rank(&g2), rank(&h1), rank(&h2));
        if a == a1 + a2 {
            prop_assert!(rg <= r1.max(rh2).min(rh1.max(r2)));
            if t <= 3 {
                prop_assert!(rg <= r1.max(r2));
            }
        } else if a + 1 == a1 + a2 {
            let first = alpha(&g1) == alpha(&h1) + 1 && rg <= rh1.max(r2);
            let second = alpha(&g2) == alpha(&h2) + 1 && rg <= rh2.max(r1);
            prop_assert!(first || second);
        } else {
            prop_assert_eq!(a + 2, a1 + a2);
            let c1 = (1..=t).filter(|&v| in_some_maximum_stable_set(&g1, v)).fold(0, |s, v| s | bit(v));
            let (h1p, _) = g1.delete_vertices(c1);
            let (h2p, _) = g2.delete_vertices(c0 & !c1);
            prop_assert_eq!(alpha(&h1p) + 1, alpha(&g1));
            prop_assert_eq!(alpha(&h2p) + 1, alpha(&g2));
            prop_assert!(rg <= rank(&h1p).max(rank(&h2p)));
        }
    }
}
