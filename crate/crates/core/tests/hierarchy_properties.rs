use handelman::graph::{random_graph, random_rational_weights, Graph, WeightMode, WeightedGraph};
use handelman::handelman::graph_bound;
use handelman::hierarchies::{ls_operator_bound, sherali_adams_bound, zeta_by_expansion, zeta_closed_form};
use handelman::rational::{Bound, Q};
use handelman::stable::{fractional_stability, stability_number, unweighted_stability_number};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0u32..=10, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, f64::from(p) / 10.0, seed).unwrap())
}

fn weighted(g: Graph, seed: u64) -> WeightedGraph {
    let n = g.n();
    WeightedGraph::derived(g, random_rational_weights(n, seed), WeightMode::Max).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn lift_and_project_chain(g in arb_graph(6), seed in any::<u64>()) {
        let g = weighted(g, seed);
        let alpha = Bound::Finite(stability_number(&g));
        let ls = ls_operator_bound(&g).unwrap().value;
        prop_assert!(alpha <= ls);
        prop_assert!(ls <= Bound::Finite(fractional_stability(&g).unwrap()));
        for t in 1..=g.n().min(4) {
            let sa = sherali_adams_bound(&g, t).unwrap().value;
            let han = graph_bound(&g, t).unwrap().value;
            prop_assert!(alpha <= sa && sa <= han, "t = {}: {} <= {} <= {}", t, alpha, sa, han);
        }
    }

    #[test]
    fn zeta_expansion_matches_closed_form(g in arb_graph(8), t in 0usize..=6) {
        let alpha = unweighted_stability_number(&g) as u64;
        prop_assert_eq!(zeta_by_expansion(&g, t).unwrap(), zeta_closed_form(alpha, t).unwrap());
    }
}

#[test]
fn zeta_floor_recovers_stability_number() {
    for alpha in 1u64..=8 {
        for t in (alpha * alpha - 1) as usize..(alpha * alpha + 12) as usize {
            let z = zeta_closed_form(alpha, t).unwrap();
            let v = z.finite().expect("finite beyond alpha - 2");
            assert_eq!(v.floor(), Q::from_integer((alpha as i64).into()), "alpha {alpha}, t {t}: {v}");
        }
    }
}
