//! Exact combinatorial baselines: weighted stability number, its LP
//! relaxation, bounded-size clique covers, the defect and max-cut values.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph, VertexSet, WeightedGraph};
use crate::lp::{self, LinearProgram, Relation, Sense, SolveOptions, VarBound};
use crate::rational::{serde_q, Q};

pub const MAX_CUT_BRUTE_FORCE_VARS: usize = 24;

struct Search<'a> {
    g: &'a Graph,
    w: &'a [Q],
    best: Q,
    best_set: VertexSet,
}

impl Search<'_> {
    /// Sum over a greedy partition of `cand` into cliques of the heaviest
    /// weight in each clique.
    fn clique_cover_bound(&self, mut cand: VertexSet) -> Q {
        let mut bound = Q::zero();
        while cand != 0 {
            let v = cand.trailing_zeros() as usize + 1;
            let mut clique = bit(v);
            let mut common = self.g.neighbors(v) & cand;
            let mut heaviest = self.w[v - 1].clone();
            while common != 0 {
                let u = common.trailing_zeros() as usize + 1;
                clique |= bit(u);
                common &= self.g.neighbors(u);
                if self.w[u - 1] > heaviest {
                    heaviest = self.w[u - 1].clone();
                }
            }
            bound += heaviest;
            cand &= !clique;
        }
        bound
    }

    fn run(&mut self, cand: VertexSet, chosen: VertexSet, weight: Q) {
        if weight > self.best {
            self.best = weight.clone();
            self.best_set = chosen;
        }
        if cand == 0 || &weight + self.clique_cover_bound(cand) <= self.best {
            return;
        }
        let mut pivot = 0;
        let mut pivot_deg = 0;
        let mut isolated = 0;
        for v in members(cand) {
            let d = (self.g.neighbors(v) & cand).count_ones();
            if d == 0 {
                isolated |= bit(v);
            } else if d > pivot_deg {
                pivot = v;
                pivot_deg = d;
            }
        }
        if isolated != 0 {
            let extra: Q = members(isolated).map(|v| &self.w[v - 1]).sum();
            self.run(cand & !isolated, chosen | isolated, weight + extra);
            return;
        }
        let with = cand & !bit(pivot) & !self.g.neighbors(pivot);
        self.run(with, chosen | bit(pivot), &weight + &self.w[pivot - 1]);
        self.run(cand & !bit(pivot), chosen, weight);
    }
}

/// Maximum-weight stable set by branch and bound; returns `(α(G,w), S)`.
pub fn max_weight_stable_set(g: &WeightedGraph) -> (Q, VertexSet) {
    let mut s = Search {
        g: g.graph(),
        w: g.node_weights(),
        best: Q::zero(),
        best_set: 0,
    };
    s.run(g.graph().vertices(), 0, Q::zero());
    (s.best, s.best_set)
}

/// `α(G, w)`.
pub fn stability_number(g: &WeightedGraph) -> Q {
    max_weight_stable_set(g).0
}

/// Unweighted `α(G)`.
pub fn unweighted_stability_number(g: &Graph) -> usize {
    let (a, _) = max_weight_stable_set(&WeightedGraph::unit(g.clone()));
    a.to_integer().try_into().expect("small integer")
}

/// `ω(G)`.
pub fn clique_number(g: &Graph) -> usize {
    unweighted_stability_number(&g.complement())
}

fn solve_optimal(lp: &LinearProgram) -> Result<(Q, Vec<Q>)> {
    let sol = lp::solve_verified(lp, &SolveOptions::default())?;
    match (sol.objective, sol.values) {
        (Some(obj), Some(x)) => Ok((obj, x)),
        _ => Err(Error::UnexpectedStatus(sol.status.to_string())),
    }
}

/// `α*(G, w)`: max `w^T x` over `x >= 0`, `x_i + x_j <= 1` on edges.
pub fn fractional_stability(g: &WeightedGraph) -> Result<Q> {
    let mut lp = LinearProgram::new(Sense::Maximize);
    let x: Vec<usize> = (1..=g.n()).map(|i| lp.add_var(format!("x{i}"), VarBound::NonNegative)).collect();
    for (i, j) in g.graph().edges() {
        lp.add_constraint(format!("e{i}_{j}"), [(x[i - 1], Q::one()), (x[j - 1], Q::one())], Relation::Le, Q::one())?;
    }
    // keeps isolated vertices with zero weight bounded
    for i in 1..=g.n() {
        lp.add_constraint(format!("u{i}"), [(x[i - 1], Q::one())], Relation::Le, Q::one())?;
    }
    lp.set_objective(Sense::Maximize, (1..=g.n()).map(|i| (x[i - 1], g.weight(i).clone())))?;
    Ok(solve_optimal(&lp)?.0)
}

/// All cliques of size `1..=t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueList {
    pub t: usize,
    pub cliques: Vec<VertexSet>,
}

/// Cliques by recursive extension in ascending vertex order.
pub fn enumerate_cliques(g: &Graph, t: usize) -> Result<CliqueList> {
    if t == 0 {
        return Err(Error::InvalidParameter("clique size cap must be at least 1".into()));
    }
    fn extend(g: &Graph, clique: VertexSet, cand: VertexSet, size: usize, t: usize, out: &mut Vec<VertexSet>) {
        for v in members(cand) {
            let c = clique | bit(v);
            out.push(c);
            if size + 1 < t {
                let next = cand & g.neighbors(v) & !((bit(v) << 1) - 1);
                extend(g, c, next, size + 1, t, out);
            }
        }
    }
    let mut cliques = Vec::new();
    extend(g, 0, g.vertices(), 0, t, &mut cliques);
    Ok(CliqueList { t, cliques })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub clique: Vec<usize>,
    #[serde(with = "serde_q")]
    pub lambda: Q,
}

/// Optimal fractional cover by cliques of size at most `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    pub t: usize,
    pub value: Q,
    /// Cliques with positive multiplier.
    pub multipliers: Vec<(VertexSet, Q)>,
}

impl CliqueCover {
    pub fn entries(&self) -> Vec<CoverEntry> {
        self.multipliers
            .iter()
            .map(|(c, l)| CoverEntry {
                clique: members(*c).collect(),
                lambda: l.clone(),
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.entries())?)
    }
}

/// `ρ_t(G, w)`: min `Σ λ_C` over cliques `|C| <= t` with `Σ_{C ∋ i} λ_C >= w_i`.
pub fn fractional_clique_cover(g: &WeightedGraph, t: usize) -> Result<CliqueCover> {
    let list = enumerate_cliques(g.graph(), t)?;
    let mut lp = LinearProgram::new(Sense::Minimize);
    let vars: Vec<usize> = list
        .cliques
        .iter()
        .map(|&c| lp.add_var(format!("l{}", crate::graph::fmt_set(c)), VarBound::NonNegative))
        .collect();
    for i in 1..=g.n() {
        let row = list
            .cliques
            .iter()
            .zip(&vars)
            .filter(|(c, _)| *c & bit(i) != 0)
            .map(|(_, &v)| (v, Q::one()));
        lp.add_constraint(format!("cover{i}"), row, Relation::Ge, g.weight(i).clone())?;
    }
    lp.set_objective(Sense::Minimize, vars.iter().map(|&v| (v, Q::one())))?;
    let (value, x) = solve_optimal(&lp)?;
    let multipliers = list
        .cliques
        .iter()
        .zip(&vars)
        .filter(|(_, &v)| x[v].is_positive())
        .map(|(&c, &v)| (c, x[v].clone()))
        .collect();
    Ok(CliqueCover { t, value, multipliers })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub value: Q,
    /// False when some node weight is not an integer, in which case the
    /// value need not be integral.
    pub integer_weights: bool,
}

/// `2 (α*(G,w) - min{b, α*(G,w)})`.
pub fn defect(g: &WeightedGraph, b: &Q) -> Result<Defect> {
    let alpha_star = fractional_stability(g)?;
    let m = if b < &alpha_star { b.clone() } else { alpha_star.clone() };
    Ok(Defect {
        value: Q::from_integer(2.into()) * (alpha_star - m),
        integer_weights: g.has_integer_weights(),
    })
}

/// Total edge weight crossing the bipartition `(side, V \ side)`.
pub fn cut_weight(g: &WeightedGraph, side: VertexSet) -> Q {
    g.edge_weights()
        .iter()
        .filter(|(&(i, j), _)| ((side >> (i - 1)) ^ (side >> (j - 1))) & 1 == 1)
        .map(|(_, w)| w)
        .sum()
}

/// `mc(G, w)` by enumerating bipartitions (vertex `n` fixed on one side).
pub fn max_cut_value(g: &WeightedGraph) -> Result<Q> {
    let n = g.n();
    if n > MAX_CUT_BRUTE_FORCE_VARS {
        return Err(Error::TooLarge(format!(
            "max-cut enumeration over {n} vertices (limit {MAX_CUT_BRUTE_FORCE_VARS})"
        )));
    }
    if n == 0 {
        return Ok(Q::zero());
    }
    let edges: Vec<(u64, Q)> = g
        .edge_weights()
        .iter()
        .map(|(&(i, j), w)| (bit(i) | bit(j), w.clone()))
        .collect();
    let mut best = Q::zero();
    for side in 0..(1u64 << (n - 1)) {
        let v: Q = edges
            .iter()
            .filter(|(e, _)| (e & side).count_ones() == 1)
            .map(|(_, w)| w)
            .sum();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// `Σ_{ij ∈ E} |w_ij|`.
pub fn absolute_edge_weight(g: &WeightedGraph) -> Q {
    g.edge_weights().values().map(|w| w.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        circuit, complete, complete_bipartite, liptak_tuncel, clique_fan, odd_wheel, random_graph,
        random_rational_weights, WeightMode,
    };
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    fn unit(g: Result<Graph>) -> WeightedGraph {
        WeightedGraph::unit(g.unwrap())
    }

    fn brute_force_alpha(g: &WeightedGraph) -> Q {
        (0..(1u64 << g.n()))
            .filter(|&s| g.graph().is_stable(s))
            .map(|s| g.set_weight(s))
            .max()
            .unwrap()
    }

    #[test]
    fn stability_numbers_of_named_graphs() {
        assert_eq!(stability_number(&unit(circuit(5))), q(2));
        for n in 1..=6 {
            assert_eq!(stability_number(&unit(complete(n))), q(1));
        }
        for k in 2..=5 {
            assert_eq!(stability_number(&unit(liptak_tuncel(k))), q(k as i64));
        }
        assert_eq!(stability_number(&unit(Graph::empty(0))), q(0));
        let edgeless = WeightedGraph::derived(Graph::empty(3).unwrap(), vec![q(1), q(2), q(3)], WeightMode::Max).unwrap();
        assert_eq!(stability_number(&edgeless), q(6));
    }

    #[test]
    fn returned_set_is_stable_and_optimal() {
        let g = unit(odd_wheel(7));
        let (a, s) = max_weight_stable_set(&g);
        assert_eq!(a, q(3));
        assert!(g.graph().is_stable(s));
        assert_eq!(g.set_weight(s), a);
    }

    #[test]
    fn fractional_stability_numbers() {
        for n in [2usize, 3, 4] {
            assert_eq!(fractional_stability(&unit(circuit(2 * n + 1))).unwrap(), qf(2 * n as i64 + 1, 2));
        }
        let kab = unit(complete_bipartite(2, 3));
        assert_eq!(fractional_stability(&kab).unwrap(), stability_number(&kab));
        for k in 2..=5 {
            assert_eq!(fractional_stability(&unit(liptak_tuncel(k))).unwrap(), qf(3 * k as i64, 2));
        }
    }

    #[test]
    fn clique_enumeration() {
        let c5 = enumerate_cliques(&circuit(5).unwrap(), 3).unwrap();
        assert_eq!(c5.cliques.len(), 10);
        let k4 = enumerate_cliques(&complete(4).unwrap(), 4).unwrap();
        assert_eq!(k4.cliques.len(), 15);
        let mut sorted = k4.cliques.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 15);
        let e = enumerate_cliques(&Graph::empty(4).unwrap(), 2).unwrap();
        assert_eq!(e.cliques, vec![1, 2, 4, 8]);
        assert!(enumerate_cliques(&complete(2).unwrap(), 0).is_err());
    }

    #[test]
    fn clique_covers() {
        let fan = unit(clique_fan(2));
        assert_eq!(fractional_clique_cover(&fan, 2).unwrap().value, q(2));
        let g = WeightedGraph::derived(circuit(5).unwrap(), vec![q(1), q(2), q(3), qf(1, 2), q(1)], WeightMode::Max).unwrap();
        assert_eq!(fractional_clique_cover(&g, 1).unwrap().value, g.total_weight());
        let cover = fractional_clique_cover(&unit(circuit(5)), 2).unwrap();
        assert_eq!(cover.value, qf(5, 2));
        let json = cover.to_json().unwrap();
        let back: Vec<CoverEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cover.entries());
        assert!(json.contains("\"1/2\""));
    }

    #[test]
    fn defects() {
        let c5 = unit(circuit(5));
        assert_eq!(defect(&c5, &q(2)).unwrap().value, q(1));
        assert_eq!(defect(&c5, &q(3)).unwrap().value, q(0));
        for k in 2..=4 {
            assert_eq!(defect(&unit(liptak_tuncel(k)), &q(k as i64)).unwrap().value, q(k as i64));
        }
        let frac = WeightedGraph::derived(complete(2).unwrap(), vec![qf(1, 2), q(1)], WeightMode::Max).unwrap();
        assert!(!defect(&frac, &q(0)).unwrap().integer_weights);
    }

    #[test]
    fn max_cuts() {
        assert_eq!(max_cut_value(&unit(complete(4))).unwrap(), q(4));
        assert_eq!(max_cut_value(&unit(circuit(5))).unwrap(), q(4));
        assert_eq!(max_cut_value(&unit(Graph::empty(3))).unwrap(), q(0));
        assert!(max_cut_value(&unit(Graph::empty(25))).is_err());
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&complete(5).unwrap()), 5);
        assert_eq!(clique_number(&circuit(5).unwrap()), 2);
        assert_eq!(clique_number(&odd_wheel(5).unwrap()), 3);
    }

    /// Dual of the cover LP: max `w^T x` with `x(C) <= 1` for every clique.
    fn cover_dual(g: &WeightedGraph, t: usize) -> Q {
        let list = enumerate_cliques(g.graph(), t).unwrap();
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x: Vec<usize> = (1..=g.n()).map(|i| lp.add_var(format!("x{i}"), VarBound::NonNegative)).collect();
        for c in &list.cliques {
            lp.add_constraint("c", members(*c).map(|i| (x[i - 1], Q::one())), Relation::Le, Q::one()).unwrap();
        }
        lp.set_objective(Sense::Maximize, (1..=g.n()).map(|i| (x[i - 1], g.weight(i).clone()))).unwrap();
        lp::solve(&lp).unwrap().objective.unwrap()
    }

    fn arb_weighted(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (1..=max_n, any::<u64>(), 0.2f64..0.8).prop_map(|(n, seed, p)| {
            let g = random_graph(n, p, seed).unwrap();
            WeightedGraph::derived(g, random_rational_weights(n, seed.wrapping_add(1)), WeightMode::Max).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn branch_and_bound_matches_brute_force(g in arb_weighted(12)) {
            prop_assert_eq!(stability_number(&g), brute_force_alpha(&g));
        }

        #[test]
        fn cover_chain(g in arb_weighted(7)) {
            let alpha = stability_number(&g);
            let alpha_star = fractional_stability(&g).unwrap();
            let omega = clique_number(g.graph()).max(2);
            let mut prev = fractional_clique_cover(&g, 2).unwrap().value;
            prop_assert!(alpha <= alpha_star);
            prop_assert_eq!(&prev, &alpha_star);
            for t in 3..=omega.max(3) {
                let rho = fractional_clique_cover(&g, t).unwrap().value;
                prop_assert!(rho <= prev);
                prop_assert!(rho >= alpha);
                prev = rho;
            }
        }

        #[test]
        fn cover_lp_duality(g in arb_weighted(7), t in 1usize..5) {
            prop_assert_eq!(fractional_clique_cover(&g, t).unwrap().value, cover_dual(&g, t));
        }

        #[test]
        fn defect_is_nonnegative_and_integral_for_integer_weights(n in 2usize..8, seed in any::<u64>(), b in 0i64..6) {
            let g = random_graph(n, 0.5, seed).unwrap();
            let w = crate::graph::random_integer_weights(n, 1, 5, seed);
            let g = WeightedGraph::derived(g, w, WeightMode::Max).unwrap();
            let d = defect(&g, &q(b)).unwrap();
            prop_assert!(!d.value.is_negative());
            prop_assert!(d.value.is_integer());
        }
    }
}
