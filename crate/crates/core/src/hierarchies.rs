//! Comparison bounds on `α(G, w)`: an LP variant of Sherali-Adams, the first
//! Lovász-Schrijver lift, and the copositive `ζ^(t)` parameter.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet, WeightedGraph};
use crate::handelman::{membership_model, solve_membership, BoundReport, Method};
use crate::lp::{self, LinearProgram, Relation, Sense, SolveOptions, VarBound};
use crate::poly::{subsets_of_size, SquareFreePoly};
use crate::rational::{Bound, Q};
use crate::stable::unweighted_stability_number;

pub const MAX_ZETA_VARS: usize = 10;
pub const MAX_ZETA_ORDER: usize = 8;

/// `sa^(t)(G, w) = min{λ : λ - w^T x ∈ H_t + <x_i x_j : ij ∈ E>_t}`, where
/// each edge product `x_i x_j x^S` with `|S| <= t - 2` gets its own free
/// multiplier.
pub fn sherali_adams_bound(g: &WeightedGraph, t: usize) -> Result<BoundReport> {
    sherali_adams_bound_with(g, t, &SolveOptions::default())
}

pub fn sherali_adams_bound_with(g: &WeightedGraph, t: usize, opts: &SolveOptions) -> Result<BoundReport> {
    let started = Instant::now();
    let n = g.n();
    let linear = SquareFreePoly::from_terms(n, (1..=n).map(|i| (bit(i), g.weight(i).clone())))?;
    let mut ideal: Vec<VertexSet> = Vec::new();
    for (i, j) in g.graph().edges() {
        let edge = bit(i) | bit(j);
        for k in 0..=t.saturating_sub(2) {
            if t < 2 {
                break;
            }
            for s in subsets_of_size(n, k) {
                if s & edge == 0 {
                    ideal.push(s | edge);
                }
            }
        }
    }
    let model = membership_model(&linear, t, &ideal)?;
    let mut report = solve_membership(&model, Method::SheraliAdams, t, opts, started)?;
    // the H_t part alone does not certify λ - w^T x
    report.certificate = None;
    Ok(report)
}

/// `ls^(1)(G, w)`: max `Σ w_i Y_{0i}` over symmetric `Y` indexed by
/// `{0} ∪ V` with `Y_00 = 1`, `Y_ii = Y_0i`, and `Y e_i`, `Y (e_0 - e_i)` in
/// the cone `{v : v >= 0, v_j + v_k <= v_0 for jk ∈ E}`.
pub fn ls_operator_bound(g: &WeightedGraph) -> Result<BoundReport> {
    ls_operator_bound_with(g, &SolveOptions::default())
}

pub fn ls_operator_bound_with(g: &WeightedGraph, opts: &SolveOptions) -> Result<BoundReport> {
    let started = Instant::now();
    let n = g.n();
    let edges = g.graph().edges();
    let mut lp = LinearProgram::new(Sense::Maximize);
    // y[a][b] for a <= b; None stands for the constant Y_00 = 1
    let mut y: Vec<Vec<Option<usize>>> = vec![vec![None; n + 1]; n + 1];
    for a in 0..=n {
        for b in a..=n {
            if a == 0 && b == 0 {
                continue;
            }
            if a == b {
                y[a][b] = y[0][a];
                continue;
            }
            let v = lp.add_var(format!("Y{a}_{b}"), VarBound::NonNegative);
            y[a][b] = Some(v);
            y[b][a] = Some(v);
        }
    }
    // entry (a, b) of Y as a linear form: (coefficients, constant)
    let entry = |a: usize, b: usize| -> (Vec<(usize, Q)>, Q) {
        match y[a][b] {
            Some(v) => (vec![(v, Q::one())], Q::zero()),
            None => (Vec::new(), Q::one()),
        }
    };
    let column = |i: usize, complement: bool| -> Vec<(Vec<(usize, Q)>, Q)> {
        (0..=n)
            .map(|a| {
                let (mut c, mut k) = entry(a, i);
                if complement {
                    let (c0, k0) = entry(a, 0);
                    c = c.into_iter().map(|(v, x)| (v, -x)).collect();
                    c.extend(c0);
                    k = k0 - k;
                }
                (c, k)
            })
            .collect()
    };
    for i in 1..=n {
        for complement in [false, true] {
            let v = column(i, complement);
            let tag = if complement { "c" } else { "y" };
            // v_0 >= 0 and v_j >= 0; the latter only bind for the complement columns
            for (a, (c, k)) in v.iter().enumerate() {
                if complement || a == 0 {
                    lp.add_constraint(format!("{tag}{i}_nn{a}"), c.clone(), Relation::Ge, -k.clone())?;
                }
            }
            for &(j, k) in &edges {
                let mut row = v[j].0.clone();
                row.extend(v[k].0.iter().cloned());
                row.extend(v[0].0.iter().map(|(x, c)| (*x, -c.clone())));
                let rhs = &v[0].1 - &v[j].1 - &v[k].1;
                lp.add_constraint(format!("{tag}{i}_e{j}_{k}"), row, Relation::Le, rhs)?;
            }
        }
    }
    lp.set_objective(Sense::Maximize, (1..=n).map(|i| (y[0][i].unwrap(), g.weight(i).clone())))?;
    let sol = lp::solve_verified(&lp, opts)?;
    let value = match sol.objective {
        Some(v) => Bound::Finite(v),
        None => return Err(Error::UnexpectedStatus(sol.status.to_string())),
    };
    Ok(BoundReport {
        method: Method::LsOperator,
        t: 1,
        value,
        certificate: None,
        elapsed: started.elapsed(),
    })
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `ζ^(t) = C(t+2, 2) / (C(u, 2) α + u v)` with `t + 2 = u α + v`,
/// `0 <= v < α`; infinite when the denominator vanishes.
pub fn zeta_closed_form(alpha: u64, t: usize) -> Result<Bound> {
    if alpha == 0 {
        return Err(Error::InvalidParameter("ζ needs α >= 1".into()));
    }
    let d = t as u64 + 2;
    let (u, v) = (d / alpha, d % alpha);
    let den = binom(u, 2) * alpha + u * v;
    if den == 0 {
        return Ok(Bound::Infinite);
    }
    Ok(Bound::Finite(Q::new(binom(d, 2).into(), den.into())))
}

/// Exponent vectors of total degree `d` in `n` variables.
fn compositions(n: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k as u8);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Multinomial `d! / Π β_i!`, the coefficient of `x^β` in `σ^d`.
fn multinomial(beta: &[u8]) -> BigUint {
    let d: usize = beta.iter().map(|&b| b as usize).sum();
    beta.iter().fold(factorial(d), |acc, &b| acc / factorial(b as usize))
}

/// `ζ^(t)` from the coefficients of `σ^{t+2}` and `q σ^t`, where
/// `σ = Σ x_i` and `q = x^T (I + A) x`: the maximum over monomials of
/// `coef(σ^{t+2}) / coef(q σ^t)`, infinite if some monomial of `σ^{t+2}` is
/// missing from `q σ^t`.
pub fn zeta_by_expansion(g: &Graph, t: usize) -> Result<Bound> {
    let n = g.n();
    if n > MAX_ZETA_VARS || t > MAX_ZETA_ORDER {
        return Err(Error::TooLarge(format!(
            "ζ expansion with n = {n}, t = {t} (limits n <= {MAX_ZETA_VARS}, t <= {MAX_ZETA_ORDER})"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("ζ needs at least one vertex".into()));
    }
    let low: HashMap<Vec<u8>, BigUint> = compositions(n, t)
        .into_iter()
        .map(|b| {
            let m = multinomial(&b);
            (b, m)
        })
        .collect();
    let edges = g.edges();
    let mut best: Option<Q> = None;
    for beta in compositions(n, t + 2) {
        let b_coef = multinomial(&beta);
        let mut a_coef = BigUint::zero();
        let mut shifted = beta.clone();
        for i in 0..n {
            if beta[i] >= 2 {
                shifted[i] -= 2;
                a_coef += &low[&shifted];
                shifted[i] += 2;
            }
        }
        for &(i, j) in &edges {
            let (i, j) = (i - 1, j - 1);
            if beta[i] >= 1 && beta[j] >= 1 {
                shifted[i] -= 1;
                shifted[j] -= 1;
                a_coef += &low[&shifted] * 2u32;
                shifted[i] += 1;
                shifted[j] += 1;
            }
        }
        if a_coef.is_zero() {
            return Ok(Bound::Infinite);
        }
        let ratio = Q::new(b_coef.into(), a_coef.into());
        if best.as_ref().is_none_or(|b| &ratio > b) {
            best = Some(ratio);
        }
    }
    Ok(Bound::Finite(best.expect("at least one monomial")))
}

/// `α(G)^2 - 1`.
pub fn kp_rank(g: &Graph) -> usize {
    let a = unweighted_stability_number(g);
    (a * a).saturating_sub(1)
}
