//! The fifteen numbered acceptance checks, run in one session that shares
//! instances and cached LP values between checks.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{
    circuit, clique_fan, complete, complete_bipartite, liptak_tuncel, odd_wheel, random_bipartite, random_graph,
    random_integer_weights, random_rational_weights, Graph, WeightMode, WeightedGraph,
};
use crate::handelman::{
    c5_certificate, error_bound_rhs, g2_certificate, graph_bound, handelman_bound, handelman_rank, rank_bounds,
    verify_certificate,
};
use crate::hierarchies::{kp_rank, ls_operator_bound, sherali_adams_bound, zeta_by_expansion, zeta_closed_form};
use crate::lp::verified_solve_count;
use crate::maxcut::{maxcut_handelman_bound, maxcut_objective_poly, maxcut_rank};
use crate::poly::{expand_basis_term, stable_set_poly, submasks, universe, SquareFreePoly};
use crate::rational::{q, qf, Bound, Q};
use crate::stable::{absolute_edge_weight, fractional_clique_cover, fractional_stability, max_cut_value, stability_number};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const CRITERIA: usize = 15;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub details: Vec<String>,
}

impl CriterionOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Default)]
struct Checks {
    passed: bool,
    details: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.passed &= ok;
        self.details.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, msg.into()));
    }
}

const TITLES: [&str; CRITERIA] = [
    "complete graphs K_2..K_6 have rank n",
    "odd circuits C_5, C_7 have rank 3, weighted ones at most 3",
    "complements of C_5 and C_7 have ranks 3 and 4",
    "order-2 bound equals rho_2 and the fractional stability number",
    "alpha <= p_han^(t) <= rho_t and p_han^(t) >= sum(w)/t for t = 2..4",
    "weighted bipartite graphs have rank at most 2",
    "clique fans of K_{t+1} copies have rank 2",
    "clique sums of two complete graphs",
    "G_2 rank and explicit certificates",
    "closed-form rank bounds on all ranked instances",
    "odd wheels and the isolated-node law",
    "copositive zeta: expansion equals closed form",
    "ls^(1) equals p_han^(3); sa^(t) <= p_han^(t)",
    "max-cut moment LP",
    "polynomial identities, LP re-substitution, error bound",
];

fn budget(id: usize) -> Option<Duration> {
    let secs = match id {
        1 => 30,
        2 => 60,
        3 => 120,
        4 => 60,
        8 => 120,
        12 => 60,
        14 => 180,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

struct Ranked {
    label: String,
    graph: WeightedGraph,
    rank: usize,
}

/// Shared state for one run of the checks.
pub struct Session {
    seed: u64,
    random_set: Vec<WeightedGraph>,
    han: HashMap<(usize, usize), Bound>,
    ranked: Vec<Ranked>,
}

fn sub_seed(seed: u64, tag: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(tag << 32).wrapping_add(k)
}

fn unit(g: Result<Graph>) -> Result<WeightedGraph> {
    Ok(WeightedGraph::unit(g?))
}

fn max_mode(g: Graph, w: Vec<Q>) -> Result<WeightedGraph> {
    WeightedGraph::derived(g, w, WeightMode::Max)
}

/// Twenty graphs on 5 to 8 vertices with random rational weights.
pub fn random_instances(seed: u64) -> Result<Vec<WeightedGraph>> {
    (0..20u64)
        .map(|k| {
            let n = 5 + (k % 4) as usize;
            let p = [0.3, 0.5, 0.7][(k % 3) as usize];
            let g = random_graph(n, p, sub_seed(seed, 1, k))?;
            max_mode(g, random_rational_weights(n, sub_seed(seed, 2, k)))
        })
        .collect()
}

/// Ten graphs on 4 to 7 vertices with nonzero integer edge weights in `-5..=5`.
pub fn signed_instances(seed: u64) -> Result<Vec<WeightedGraph>> {
    (0..10u64)
        .map(|k| {
            let n = 4 + (k % 4) as usize;
            let g = random_graph(n, 0.6, sub_seed(seed, 3, k))?;
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 4, k));
            let ew = g
                .edges()
                .into_iter()
                .map(|e| {
                    let mut w = 0;
                    while w == 0 {
                        w = rng.gen_range(-5..=5);
                    }
                    (e, q(w))
                })
                .collect();
            WeightedGraph::custom(g.clone(), vec![Q::one(); n], ew)
        })
        .collect()
}

/// One graph per isomorphism class on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permutations(&mut current, 0, &mut perms);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| pairs.iter().map(|&(i, j)| index(perm[i], perm[j])).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canonical = maps.iter().all(|map| {
            let image = (0..pairs.len())
                .filter(|&e| mask >> e & 1 == 1)
                .fold(0u32, |acc, e| acc | 1 << map[e]);
            image >= mask
        });
        if canonical {
            let edges = (0..pairs.len())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| (pairs[e].0 + 1, pairs[e].1 + 1));
            out.push(Graph::from_edges(n, edges).expect("valid edges"));
        }
    }
    out
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> SquareFreePoly {
    let n = rng.gen_range(1..=8usize);
    let terms = rng.gen_range(0..12);
    let all = universe(n);
    SquareFreePoly::from_terms(
        n,
        (0..terms).map(|_| (rng.gen::<u64>() & all, qf(rng.gen_range(-6..=6), rng.gen_range(1..=4)))),
    )
    .expect("terms inside the universe")
}

impl Session {
    pub fn new(seed: u64) -> Result<Self> {
        Ok(Session {
            seed,
            random_set: random_instances(seed)?,
            han: HashMap::new(),
            ranked: Vec::new(),
        })
    }

    /// Runs checks `ids` in order, calling `on_done` after each.
    pub fn run(&mut self, ids: &[usize], mut on_done: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
        let mut out = Vec::new();
        for &id in ids {
            let outcome = self.run_one(id);
            on_done(&outcome);
            out.push(outcome);
        }
        out
    }

    pub fn run_one(&mut self, id: usize) -> CriterionOutcome {
        let started = Instant::now();
        let mut checks = Checks {
            passed: true,
            details: Vec::new(),
        };
        let result = match id {
            1 => self.complete_graphs(&mut checks),
            2 => self.odd_circuits(&mut checks),
            3 => self.circuit_complements(&mut checks),
            4 => self.order_two(&mut checks),
            5 => self.sandwich(&mut checks),
            6 => self.bipartite(&mut checks),
            7 => self.clique_fans(&mut checks),
            8 => self.clique_sums(&mut checks),
            9 => self.g2(&mut checks),
            10 => self.rank_bound_check(&mut checks),
            11 => self.wheels(&mut checks),
            12 => self.zeta(&mut checks),
            13 => self.hierarchies(&mut checks),
            14 => self.max_cut(&mut checks),
            15 => self.properties(&mut checks),
            _ => {
                checks.check(false, format!("no criterion {id}"));
                Ok(())
            }
        };
        if let Err(e) = result {
            checks.check(false, format!("error: {e}"));
        }
        let elapsed = started.elapsed();
        if let Some(limit) = budget(id) {
            checks.check(
                elapsed <= limit,
                format!("runtime {:.1}s within {}s", elapsed.as_secs_f64(), limit.as_secs()),
            );
        }
        CriterionOutcome {
            id,
            title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
            passed: checks.passed,
            elapsed,
            details: checks.details,
        }
    }

    fn rank(&mut self, label: impl Into<String>, g: &WeightedGraph) -> Result<usize> {
        let rank = handelman_rank(g)?.rank;
        self.ranked.push(Ranked {
            label: label.into(),
            graph: g.clone(),
            rank,
        });
        Ok(rank)
    }

    fn random_bound(&mut self, k: usize, t: usize) -> Result<Bound> {
        if let Some(v) = self.han.get(&(k, t)) {
            return Ok(v.clone());
        }
        let v = graph_bound(&self.random_set[k], t)?.value;
        self.han.insert((k, t), v.clone());
        Ok(v)
    }

    fn random_rank(&mut self, k: usize) -> Result<usize> {
        let alpha = stability_number(&self.random_set[k]);
        for t in 1..=self.random_set[k].n() {
            if self.random_bound(k, t)?.equals(&alpha) {
                return Ok(t);
            }
        }
        unreachable!("order n is exact")
    }

    fn complete_graphs(&mut self, c: &mut Checks) -> Result<()> {
        for n in 2..=6 {
            let r = self.rank(format!("K_{n}"), &unit(complete(n))?)?;
            c.check(r == n, format!("K_{n}: rank {r}, expected {n}"));
        }
        Ok(())
    }

    fn odd_circuits(&mut self, c: &mut Checks) -> Result<()> {
        for n in [5, 7] {
            let r = self.rank(format!("C_{n}"), &unit(circuit(n))?)?;
            c.check(r == 3, format!("C_{n}: rank {r}, expected 3"));
            for k in 0..5 {
                let w = random_integer_weights(n, 1, 10, sub_seed(self.seed, 5, (n * 10 + k) as u64));
                let label = format!("C_{n} weights {}", fmt_weights(&w));
                let r = self.rank(label.clone(), &max_mode(circuit(n)?, w)?)?;
                c.check(r <= 3, format!("{label}: rank {r} <= 3"));
            }
        }
        Ok(())
    }

    fn circuit_complements(&mut self, c: &mut Checks) -> Result<()> {
        for (n, expected) in [(5, 3), (7, 4)] {
            let r = self.rank(format!("complement of C_{n}"), &unit(Ok(circuit(n)?.complement()))?)?;
            c.check(r == expected, format!("complement of C_{n}: rank {r}, expected {expected}"));
        }
        Ok(())
    }

    fn order_two(&mut self, c: &mut Checks) -> Result<()> {
        for k in 0..self.random_set.len() {
            let g = self.random_set[k].clone();
            let p2 = self.random_bound(k, 2)?;
            let rho2 = fractional_clique_cover(&g, 2)?.value;
            let fr = fractional_stability(&g)?;
            c.check(
                p2.equals(&rho2) && rho2 == fr,
                format!("random #{k} (n = {}): p_han^(2) = {p2}, rho_2 = {rho2}, alpha* = {fr}", g.n()),
            );
        }
        Ok(())
    }

    fn sandwich(&mut self, c: &mut Checks) -> Result<()> {
        for k in 0..self.random_set.len() {
            let g = self.random_set[k].clone();
            let alpha = stability_number(&g);
            for t in 2..=4 {
                let p = self.random_bound(k, t)?;
                let rho = fractional_clique_cover(&g, t)?.value;
                let low = g.total_weight() / Q::from_integer(t.into());
                let ok = Bound::Finite(alpha.clone()) <= p && p <= Bound::Finite(rho.clone()) && p >= Bound::Finite(low.clone());
                c.check(ok, format!("random #{k} t = {t}: {alpha} <= {p} <= {rho}, {p} >= {low}"));
            }
        }
        Ok(())
    }

    fn bipartite(&mut self, c: &mut Checks) -> Result<()> {
        for k in 0..10u64 {
            let a = 2 + (k % 4) as usize;
            let b = 2 + ((k / 2) % 4) as usize;
            let g = random_bipartite(a, b, 0.6, sub_seed(self.seed, 6, k))?;
            let g = max_mode(g, random_rational_weights(a + b, sub_seed(self.seed, 7, k)))?;
            let label = format!("bipartite #{k} ({a}+{b} vertices, {} edges)", g.graph().num_edges());
            let r = self.rank(label.clone(), &g)?;
            c.check(r <= 2, format!("{label}: rank {r} <= 2"));
        }
        Ok(())
    }

    fn clique_fans(&mut self, c: &mut Checks) -> Result<()> {
        for t in [2, 3] {
            let g = unit(clique_fan(t))?;
            let alpha = stability_number(&g);
            let rho2 = fractional_clique_cover(&g, 2)?.value;
            c.check(
                alpha == q(t as i64) && rho2 == q(t as i64),
                format!("fan t = {t}: alpha = {alpha}, rho_2 = {rho2}"),
            );
            let r = self.rank(format!("fan t = {t}"), &g)?;
            c.check(r == 2, format!("fan t = {t}: rank {r}, expected 2"));
        }
        Ok(())
    }

    fn clique_sums(&mut self, c: &mut Checks) -> Result<()> {
        for (n1, n2, t) in [(3, 3, 1), (3, 4, 2), (2, 5, 1), (4, 4, 3)] {
            let (g1, g2) = (unit(complete(n1))?, unit(complete(n2))?);
            let shared: Vec<usize> = (1..=t).collect();
            let g = WeightedGraph::clique_sum(&g1, &g2, &shared, &shared)?;
            let expected = (n1 + n2 - t).div_ceil(2).max(n2 - t);
            let r = self.rank(format!("K_{n1} + K_{n2} along K_{t}"), &g)?;
            c.check(r == expected, format!("K_{n1} + K_{n2} along K_{t}: rank {r}, expected {expected}"));
        }
        Ok(())
    }

    fn g2(&mut self, c: &mut Checks) -> Result<()> {
        let g = unit(liptak_tuncel(2))?;
        let r = self.rank("G_2", &g)?;
        c.check((3..=4).contains(&r), format!("G_2: rank {r} (between 3 and 4)"));
        let ok = verify_certificate(&g2_certificate(), &stable_set_poly(&g))?;
        c.check(ok, "G_2 certificate at lambda = 2, t = 4 verifies");
        let ok = verify_certificate(&c5_certificate(), &stable_set_poly(&unit(circuit(5))?))?;
        c.check(ok, "C_5 certificate at lambda = 2, t = 3 verifies");
        Ok(())
    }

    fn rank_bound_check(&mut self, c: &mut Checks) -> Result<()> {
        let mut instances: Vec<(String, WeightedGraph, usize)> = self
            .ranked
            .iter()
            .map(|r| (r.label.clone(), r.graph.clone(), r.rank))
            .collect();
        for k in 0..self.random_set.len() {
            let r = self.random_rank(k)?;
            instances.push((format!("random #{k}"), self.random_set[k].clone(), r));
        }
        c.check(!instances.is_empty(), format!("{} ranked instances", instances.len()));
        for (label, g, r) in instances {
            let b = rank_bounds(&g)?;
            let ok = b.lower <= r && b.upper1.is_none_or(|u| r <= u) && b.upper2.is_none_or(|u| r <= u);
            c.check(
                ok,
                format!("{label}: {} <= {r} <= {} / {}", b.lower, show(b.upper1), show(b.upper2)),
            );
        }
        Ok(())
    }

    fn wheels(&mut self, c: &mut Checks) -> Result<()> {
        for n in [5, 7] {
            let r = self.rank(format!("W_{n}"), &unit(odd_wheel(n))?)?;
            c.check(r <= 4, format!("W_{n}: rank {r} <= 4"));
        }
        let cw = handelman_rank(&unit(Ok(odd_wheel(5)?.complement()))?)?.rank;
        let cc = handelman_rank(&unit(Ok(circuit(5)?.complement()))?)?.rank;
        c.check(cw == cc, format!("complement of W_5: rank {cw}; complement of C_5: rank {cc}"));
        Ok(())
    }

    fn zeta(&mut self, c: &mut Checks) -> Result<()> {
        let graphs = [
            ("K_3", complete(3)?),
            ("C_5", circuit(5)?),
            ("K_{1,3}", complete_bipartite(1, 3)?),
            ("G_2", liptak_tuncel(2)?),
        ];
        for (name, g) in graphs {
            let alpha = crate::stable::unweighted_stability_number(&g) as u64;
            let top = 6.max((alpha * alpha).saturating_sub(2) as usize);
            let mut agree = true;
            for t in 0..=top {
                let e = zeta_by_expansion(&g, t)?;
                let f = zeta_closed_form(alpha, t)?;
                if e != f {
                    agree = false;
                    c.check(false, format!("{name} t = {t}: expansion {e}, closed form {f}"));
                }
                if t + 2 <= alpha as usize {
                    c.check(e.is_infinite(), format!("{name} t = {t} <= alpha - 2: zeta = {e}"));
                }
                if t as u64 + 2 == alpha * alpha {
                    c.check(e.equals(&q(alpha as i64 + 1)), format!("{name} t = alpha^2 - 2 = {t}: zeta = {e}"));
                }
            }
            c.check(agree, format!("{name}: expansion equals closed form for t = 0..{top}"));
            c.check(
                kp_rank(&g) as u64 == alpha * alpha - 1,
                format!("{name}: kp rank {}", kp_rank(&g)),
            );
        }
        Ok(())
    }

    fn hierarchies(&mut self, c: &mut Checks) -> Result<()> {
        let bases = [
            ("K_4", complete(4)?),
            ("W_5", odd_wheel(5)?),
            ("G_2", liptak_tuncel(2)?),
            ("G_3", liptak_tuncel(3)?),
        ];
        for (name, g) in bases {
            let mut instances = vec![(format!("{name} unweighted"), WeightedGraph::unit(g.clone()))];
            for k in 0..3u64 {
                let w = random_integer_weights(g.n(), 1, 5, sub_seed(self.seed, 8, k * 100 + g.n() as u64));
                instances.push((format!("{name} weights {}", fmt_weights(&w)), max_mode(g.clone(), w)?));
            }
            for (label, wg) in instances {
                let ls = ls_operator_bound(&wg)?.value;
                let han3 = graph_bound(&wg, 3)?.value;
                c.check(ls == han3, format!("{label}: ls^(1) = {ls}, p_han^(3) = {han3}"));
            }
        }
        for k in 0..self.random_set.len() {
            let g = self.random_set[k].clone();
            for t in 2..=4 {
                let sa = sherali_adams_bound(&g, t)?.value;
                let p = self.random_bound(k, t)?;
                c.check(sa <= p, format!("random #{k} t = {t}: sa = {sa} <= p_han = {p}"));
            }
        }
        Ok(())
    }

    fn max_cut(&mut self, c: &mut Checks) -> Result<()> {
        for (k, g) in signed_instances(self.seed)?.iter().enumerate() {
            let b2 = maxcut_handelman_bound(g, 2)?.value;
            let abs = absolute_edge_weight(g);
            let positive: Q = g.edge_weights().values().filter(|w| w.is_positive()).sum();
            c.check(
                b2.equals(&abs),
                format!(
                    "signed #{k} (n = {}, {} edges): order-2 bound {b2}, sum |w_ij| = {abs}, sum of positive w_ij = {positive}",
                    g.n(),
                    g.edge_weights().len()
                ),
            );
        }
        for (name, g) in [("C_5", circuit(5)?), ("C_7", circuit(7)?), ("K_4", complete(4)?)] {
            let g = WeightedGraph::unit(g);
            let b3 = maxcut_handelman_bound(&g, 3)?.value;
            let mc = max_cut_value(&g)?;
            c.check(b3.equals(&mc), format!("{name}: order-3 bound {b3}, max cut {mc}"));
        }
        for (n, expected) in [(3, 3), (4, 3), (5, 5)] {
            let r = maxcut_rank(&unit(complete(n))?)?.rank;
            c.check(r == expected, format!("K_{n}: max-cut rank {r}, expected {expected}"));
        }
        let mut compared = 0;
        let mut mismatches = 0;
        for n in 2..=6 {
            for g in graphs_up_to_isomorphism(n) {
                let g = WeightedGraph::unit(g);
                let p = maxcut_objective_poly(&g);
                for t in [2, 3].into_iter().filter(|&t| t <= n) {
                    let moment = maxcut_handelman_bound(&g, t)?.value;
                    let primal = handelman_bound(&p, t)?.value;
                    compared += 1;
                    if moment != primal {
                        mismatches += 1;
                        c.check(false, format!("{:?} t = {t}: moment {moment}, primal {primal}", g.graph().edges()));
                    }
                }
            }
        }
        c.check(
            mismatches == 0,
            format!("moment LP equals primal LP on {compared} (graph, t) pairs, all graphs on 2..6 vertices"),
        );
        Ok(())
    }

    fn properties(&mut self, c: &mut Checks) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(self.seed, 9, 0));
        let (mut unity, mut restrict, mut round_trip) = (0, 0, 0);
        for _ in 0..100 {
            let p = random_poly(&mut rng);
            let n = p.n();
            let t_set = rng.gen::<u64>() & universe(n);
            let mut total = SquareFreePoly::zero(n);
            for i_set in submasks(t_set) {
                total = &total + &expand_basis_term(n, t_set, i_set)?;
            }
            unity += usize::from(total == SquareFreePoly::constant(n, Q::one()));
            let mut all = true;
            for i in 1..=n {
                let xi = SquareFreePoly::monomial(n, 1 << (i - 1), Q::one());
                let rest = &SquareFreePoly::constant(n, Q::one()) - &xi;
                let back = &(&rest * &p.restrict(i, 0)?) + &(&xi * &p.restrict(i, 1)?);
                all &= back == p;
            }
            restrict += usize::from(all);
            let mut back = SquareFreePoly::zero(n);
            for (i_set, v) in p.point_expansion()? {
                back = &back + &expand_basis_term(n, universe(n), i_set)?.scale(&v);
            }
            round_trip += usize::from(back == p);
        }
        c.check(unity == 100, format!("partition of unity on {unity}/100 random polynomials"));
        c.check(restrict == 100, format!("restriction identity on {restrict}/100 random polynomials"));
        c.check(round_trip == 100, format!("point expansion round trip on {round_trip}/100 random polynomials (n <= 8)"));
        for k in 0..self.random_set.len() {
            let g = self.random_set[k].clone();
            let p = stable_set_poly(&g);
            let mut worst = String::new();
            let mut holds = true;
            for t in p.degree().max(1)..=g.n() {
                let lhs = self.random_bound(k, t)?;
                let (rhs, _) = error_bound_rhs(&p, t)?;
                if !matches!(lhs.finite(), Some(v) if v <= &rhs) {
                    holds = false;
                    worst = format!(" (t = {t}: {lhs} > {rhs})");
                }
            }
            c.check(holds, format!("random #{k}: error bound holds for t = {}..{}{worst}", p.degree().max(1), g.n()));
        }
        let solves = verified_solve_count();
        c.check(solves > 0, format!("{solves} LP solutions re-substituted exactly in this process"));
        Ok(())
    }
}

fn show(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

fn fmt_weights(w: &[Q]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Runs all checks with `seed`.
pub fn run_all(seed: u64, on_done: impl FnMut(&CriterionOutcome)) -> Result<Vec<CriterionOutcome>> {
    let mut session = Session::new(seed)?;
    let ids: Vec<usize> = (1..=CRITERIA).collect();
    Ok(session.run(&ids, on_done))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn instance_sets_are_deterministic() {
        let a = random_instances(7).unwrap();
        let b = random_instances(7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|g| (5..=8).contains(&g.n())));
        assert!(signed_instances(7).unwrap().iter().all(|g| g.edge_weights().values().all(|w| !w.is_zero())));
    }
}
