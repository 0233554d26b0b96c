//! Max-cut bounds from the hypercube Handelman hierarchy, computed through
//! the ±1 moment LP.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{bit, fmt_set, WeightedGraph};
use crate::handelman::{check_order, BoundReport, Method};
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense, SolveOptions, VarBound};
use crate::poly::{subsets_of_size, submasks, SquareFreePoly};
use crate::rational::{Bound, Q};
use crate::stable::max_cut_value;

/// `Σ d_i x_i - 2 Σ w_ij x_i x_j` with `d_i = Σ_{j : ij ∈ E} w_ij`; its
/// maximum over `{0,1}^n` is `mc(G, w)`.
pub fn maxcut_objective_poly(g: &WeightedGraph) -> SquareFreePoly {
    let mut p = SquareFreePoly::zero(g.n());
    let two = Q::from_integer(2.into());
    for (&(i, j), w) in g.edge_weights() {
        p.add_term(bit(i), w.clone());
        p.add_term(bit(j), w.clone());
        p.add_term(bit(i) | bit(j), -(w * &two));
    }
    p
}

/// Optimal pseudo-moments `y_S`, `1 <= |S| <= t` (`y_∅ = 1` implied).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector {
    pub t: usize,
    pub y: BTreeMap<u64, Q>,
}

/// Max `Σ w_ij (1 - y_ij) / 2` over `y` with
/// `Σ_{A ⊆ T} (-1)^{|A ∩ I|} y_A >= 0` for every `|T| = t`, `I ⊆ T`.
pub fn maxcut_handelman_bound(g: &WeightedGraph, t: usize) -> Result<BoundReport> {
    maxcut_handelman_bound_with(g, t, &SolveOptions::default()).map(|(r, _)| r)
}

pub fn maxcut_handelman_bound_with(
    g: &WeightedGraph,
    t: usize,
    opts: &SolveOptions,
) -> Result<(BoundReport, MomentVector)> {
    let started = Instant::now();
    let n = g.n();
    if t < 2 {
        return Err(Error::OrderOutOfRange { t, lo: 2, hi: n.max(2) });
    }
    check_order(n, t)?;
    let mut lp = LinearProgram::new(Sense::Maximize);
    let mut var: BTreeMap<u64, usize> = BTreeMap::new();
    for k in 1..=t {
        for s in subsets_of_size(n, k) {
            var.insert(s, lp.add_var(format!("y{}", fmt_set(s)), VarBound::Free));
        }
    }
    for t_set in subsets_of_size(n, t) {
        for i_set in submasks(t_set) {
            let row = submasks(t_set).filter(|&a| a != 0).map(|a| {
                let sign = if (a & i_set).count_ones() % 2 == 0 { Q::one() } else { -Q::one() };
                (var[&a], sign)
            });
            lp.add_constraint(
                format!("T{}_I{}", fmt_set(t_set), fmt_set(i_set)),
                row,
                Relation::Ge,
                -Q::one(),
            )?;
        }
    }
    let half = Q::new(1.into(), 2.into());
    let mut constant = Q::zero();
    let mut objective = Vec::new();
    for (&(i, j), w) in g.edge_weights() {
        constant += w * &half;
        objective.push((var[&(bit(i) | bit(j))], -(w * &half)));
    }
    lp.set_objective(Sense::Maximize, objective)?;
    let sol = lp::solve_verified(&lp, opts)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::UnexpectedStatus(sol.status.to_string()));
    }
    let x = sol.values.unwrap();
    let moments = MomentVector {
        t,
        y: var.iter().map(|(&s, &v)| (s, x[v].clone())).collect(),
    };
    let report = BoundReport {
        method: Method::MaxCutMoment,
        t,
        value: Bound::Finite(sol.objective.unwrap() + constant),
        certificate: None,
        elapsed: started.elapsed(),
    };
    Ok((report, moments))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxCutRank {
    pub rank: usize,
    pub max_cut: Q,
    /// Bounds for `t = 2..=rank`.
    pub trace: Vec<BoundReport>,
}

/// Smallest `t >= 2` whose moment bound equals `mc(G, w)`.
pub fn maxcut_rank(g: &WeightedGraph) -> Result<MaxCutRank> {
    maxcut_rank_with(g, &SolveOptions::default())
}

pub fn maxcut_rank_with(g: &WeightedGraph, opts: &SolveOptions) -> Result<MaxCutRank> {
    let max_cut = max_cut_value(g)?;
    let mut trace = Vec::new();
    for t in 2..=g.n() {
        let (report, _) = maxcut_handelman_bound_with(g, t, opts)?;
        let exact = report.value.equals(&max_cut);
        trace.push(report);
        if exact {
            return Ok(MaxCutRank { rank: t, max_cut, trace });
        }
    }
    Err(Error::InvalidParameter(format!(
        "max-cut rank needs at least 2 vertices with a tight order up to n = {}",
        g.n()
    )))
}
