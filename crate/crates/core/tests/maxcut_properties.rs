use std::collections::BTreeMap;

use handelman::graph::{random_graph, WeightedGraph};
use handelman::maxcut::maxcut_handelman_bound;
use handelman::rational::{Bound, Q};
use handelman::stable::max_cut_value;
use proptest::prelude::*;

fn arb_signed(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (2..=max_n, 0u32..=10, any::<u64>(), prop::collection::vec(-5i64..=5, 21)).prop_map(|(n, p, seed, ws)| {
        let g = random_graph(n, f64::from(p) / 10.0, seed).unwrap();
        let ew: BTreeMap<_, _> = g.edges().into_iter().zip(ws).map(|(e, w)| (e, Q::from_integer(w.into()))).collect();
        WeightedGraph::custom(g.clone(), vec![Q::from_integer(1.into()); n], ew).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moment_bounds_decrease_to_max_cut(g in arb_signed(6)) {
        let mc = Bound::Finite(max_cut_value(&g).unwrap());
        let mut prev = Bound::Infinite;
        for t in 2..=g.n() {
            let v = maxcut_handelman_bound(&g, t).unwrap().value;
            prop_assert!(v <= prev);
            prop_assert!(mc <= v);
            prev = v;
        }
        prop_assert_eq!(prev, mc);
    }
}
