//! Handelman bounds on the hypercube: the membership LP for `λ - p ∈ H_t`,
//! the order-`t` bound, the rank of a weighted graph, certificates and the
//! closed-form rank and error bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, set_of, VertexSet, WeightedGraph};
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense, SolveOptions, VarBound};
use crate::poly::{binomial, binomial_q, expand_basis_term, stable_set_poly, subsets_of_size, submasks, universe, SquareFreePoly};
use crate::rational::{serde_q, Bound, Q};
use crate::stable::{fractional_stability, stability_number, unweighted_stability_number};

/// Orders with more than this many `c_{T,I}` columns are refused.
pub const MAX_BASIS_COLUMNS: u128 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Handelman,
    SheraliAdams,
    LsOperator,
    MaxCutMoment,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Handelman => "handelman",
            Method::SheraliAdams => "sherali-adams",
            Method::LsOperator => "ls1",
            Method::MaxCutMoment => "maxcut-moment",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub method: Method,
    pub t: usize,
    /// `Infinite` when no `λ` admits a certificate at this order.
    pub value: Bound,
    pub certificate: Option<HandelmanCertificate>,
    pub elapsed: Duration,
}

/// One product `c · x^I (1 - x)^{T \ I}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub t_set: VertexSet,
    pub i_set: VertexSet,
    pub c: Q,
}

impl CertificateTerm {
    /// `c * x1*x3*(1-x2)`
    pub fn product_form(&self) -> String {
        let mut factors: Vec<String> = members(self.i_set).map(|v| format!("x{v}")).collect();
        factors.extend(members(self.t_set & !self.i_set).map(|v| format!("(1-x{v})")));
        if factors.is_empty() {
            return self.c.to_string();
        }
        format!("{} * {}", self.c, factors.join("*"))
    }
}

/// `λ - p = Σ c_{T,I} x^I (1 - x)^{T \ I}` with every `|T| = t`, `c > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandelmanCertificate {
    pub lambda: Q,
    pub t: usize,
    pub terms: Vec<CertificateTerm>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(rename = "T")]
    t_set: Vec<usize>,
    #[serde(rename = "I")]
    i_set: Vec<usize>,
    #[serde(with = "serde_q")]
    c: Q,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    #[serde(with = "serde_q")]
    lambda: Q,
    t: usize,
    terms: Vec<TermJson>,
}

fn checked_set(vs: &[usize]) -> Result<VertexSet> {
    if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > crate::graph::MAX_VERTICES) {
        return Err(Error::InvalidParameter(format!("vertex {v} out of range in certificate")));
    }
    let s = set_of(vs);
    if s.count_ones() as usize != vs.len() {
        return Err(Error::InvalidParameter("repeated vertex in certificate term".into()));
    }
    Ok(s)
}

impl HandelmanCertificate {
    pub fn to_json(&self) -> Result<String> {
        let doc = CertificateJson {
            lambda: self.lambda.clone(),
            t: self.t,
            terms: self
                .terms
                .iter()
                .map(|term| TermJson {
                    t_set: members(term.t_set).collect(),
                    i_set: members(term.i_set).collect(),
                    c: term.c.clone(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CertificateJson = serde_json::from_str(text)?;
        let terms = doc
            .terms
            .into_iter()
            .map(|term| {
                Ok(CertificateTerm {
                    t_set: checked_set(&term.t_set)?,
                    i_set: checked_set(&term.i_set)?,
                    c: term.c,
                })
            })
            .collect::<Result<_>>()?;
        Ok(HandelmanCertificate {
            lambda: doc.lambda,
            t: doc.t,
            terms,
        })
    }

    /// Lifts every term to `|T| = t` with the identity
    /// `x^I(1-x)^{T\I} = x^{I+k}(1-x)^{T\I} + x^I(1-x)^{T\I+k}`,
    /// taking `k` as the smallest vertex of `1..=n` outside `T`, and merges
    /// equal products.
    pub fn elevated(lambda: Q, t: usize, n: usize, terms: &[(Vec<usize>, Vec<usize>, Q)]) -> Result<Self> {
        if t > n {
            return Err(Error::OrderOutOfRange { t, lo: 1, hi: n });
        }
        let all = universe(n);
        let mut merged: BTreeMap<(VertexSet, VertexSet), Q> = BTreeMap::new();
        let mut stack: Vec<(VertexSet, VertexSet, Q)> = Vec::new();
        for (ts, is, c) in terms {
            let (ts, is) = (checked_set(ts)?, checked_set(is)?);
            if is & !ts != 0 || ts & !all != 0 || ts.count_ones() as usize > t {
                return Err(Error::InvalidParameter(format!(
                    "term over {} cannot be lifted to order {t}",
                    crate::graph::fmt_set(ts)
                )));
            }
            stack.push((ts, is, c.clone()));
        }
        while let Some((ts, is, c)) = stack.pop() {
            if ts.count_ones() as usize == t {
                *merged.entry((ts, is)).or_insert_with(Q::zero) += c;
                continue;
            }
            let k = bit((all & !ts).trailing_zeros() as usize + 1);
            stack.push((ts | k, is | k, c.clone()));
            stack.push((ts | k, is, c));
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((t_set, i_set), c)| CertificateTerm { t_set, i_set, c })
            .collect();
        Ok(HandelmanCertificate { lambda, t, terms })
    }

    /// `Σ c_{T,I} x^I (1 - x)^{T \ I}` in `n` variables.
    pub fn expand(&self, n: usize) -> Result<SquareFreePoly> {
        let mut total = SquareFreePoly::zero(n);
        for term in &self.terms {
            total = &total + &expand_basis_term(n, term.t_set, term.i_set)?.scale(&term.c);
        }
        Ok(total)
    }

    pub fn product_form(&self) -> Vec<String> {
        self.terms.iter().map(CertificateTerm::product_form).collect()
    }
}

/// True iff every multiplier is positive, every `|T| = t`, and the terms
/// expand exactly to `cert.lambda - p`.
pub fn verify_certificate(cert: &HandelmanCertificate, p: &SquareFreePoly) -> Result<bool> {
    let all = universe(p.n());
    for term in &cert.terms {
        if term.t_set & !all != 0 {
            return Err(Error::InvalidParameter(format!(
                "certificate term {} uses variables beyond x{}",
                crate::graph::fmt_set(term.t_set),
                p.n()
            )));
        }
        if term.i_set & !term.t_set != 0 {
            return Ok(false);
        }
        if !term.c.is_positive() || term.t_set.count_ones() as usize != cert.t {
            return Ok(false);
        }
    }
    let target = &SquareFreePoly::constant(p.n(), cert.lambda.clone()) - p;
    Ok(cert.expand(p.n())? == target)
}

/// Coefficient-matching LP for `λ - p ∈ H_t + span(free monomials)`.
pub(crate) struct MembershipModel {
    pub lp: LinearProgram,
    pub lambda: usize,
    /// `(T, I, var)` for every basis column.
    pub basis: Vec<(VertexSet, VertexSet, usize)>,
}

pub(crate) fn check_order(n: usize, t: usize) -> Result<()> {
    if t < 1 || t > n {
        return Err(Error::OrderOutOfRange { t, lo: 1, hi: n });
    }
    let columns = binomial(n, t) << t;
    if columns > MAX_BASIS_COLUMNS {
        return Err(Error::TooLarge(format!(
            "order {t} on {n} variables needs {columns} basis columns (limit {MAX_BASIS_COLUMNS})"
        )));
    }
    Ok(())
}

/// Rows: every monomial of size at most `t` and every monomial of `p`.
/// `free_monomials` each receive one free column with coefficient 1.
pub(crate) fn membership_model(p: &SquareFreePoly, t: usize, free_monomials: &[VertexSet]) -> Result<MembershipModel> {
    let n = p.n();
    check_order(n, t)?;
    let mut lp = LinearProgram::new(Sense::Minimize);
    let lambda = lp.add_var("lambda", VarBound::Free);
    let mut rows: BTreeMap<VertexSet, Vec<(usize, Q)>> = BTreeMap::new();
    for k in 0..=t {
        for s in subsets_of_size(n, k) {
            rows.insert(s, Vec::new());
        }
    }
    for (s, _) in p.terms() {
        rows.entry(s).or_default();
    }
    rows.get_mut(&0).unwrap().push((lambda, -Q::one()));
    let mut basis = Vec::new();
    for t_set in subsets_of_size(n, t) {
        for i_set in submasks(t_set) {
            let var = lp.add_var(
                format!("c_{}_{}", crate::graph::fmt_set(t_set), crate::graph::fmt_set(i_set)),
                VarBound::NonNegative,
            );
            basis.push((t_set, i_set, var));
            for j in submasks(t_set & !i_set) {
                let sign = if j.count_ones() % 2 == 0 { Q::one() } else { -Q::one() };
                rows.get_mut(&(i_set | j)).unwrap().push((var, sign));
            }
        }
    }
    for &m in free_monomials {
        let var = lp.add_var(format!("u_{}", crate::graph::fmt_set(m)), VarBound::Free);
        rows.entry(m).or_default().push((var, Q::one()));
    }
    for (s, coeffs) in rows {
        lp.add_constraint(format!("m{}", crate::graph::fmt_set(s)), coeffs, Relation::Eq, -p.coeff(s))?;
    }
    lp.set_objective(Sense::Minimize, [(lambda, Q::one())])?;
    Ok(MembershipModel { lp, lambda, basis })
}

pub(crate) fn solve_membership(
    model: &MembershipModel,
    method: Method,
    t: usize,
    opts: &SolveOptions,
    started: Instant,
) -> Result<BoundReport> {
    let sol = lp::solve_verified(&model.lp, opts)?;
    let (value, certificate) = match sol.status {
        LpStatus::Infeasible => (Bound::Infinite, None),
        LpStatus::Unbounded => return Err(Error::UnexpectedStatus("UNBOUNDED".into())),
        LpStatus::Optimal => {
            let x = sol.values.as_ref().unwrap();
            let lambda = x[model.lambda].clone();
            let terms = model
                .basis
                .iter()
                .filter(|(_, _, v)| x[*v].is_positive())
                .map(|&(t_set, i_set, v)| CertificateTerm {
                    t_set,
                    i_set,
                    c: x[v].clone(),
                })
                .collect();
            let cert = HandelmanCertificate {
                lambda: lambda.clone(),
                t,
                terms,
            };
            (Bound::Finite(lambda), Some(cert))
        }
    };
    Ok(BoundReport {
        method,
        t,
        value,
        certificate,
        elapsed: started.elapsed(),
    })
}

/// `p_han^(t) = inf{λ : λ - p ∈ H_t}`.
pub fn handelman_bound(p: &SquareFreePoly, t: usize) -> Result<BoundReport> {
    handelman_bound_with(p, t, &SolveOptions::default())
}

pub fn handelman_bound_with(p: &SquareFreePoly, t: usize, opts: &SolveOptions) -> Result<BoundReport> {
    let started = Instant::now();
    let model = membership_model(p, t, &[])?;
    solve_membership(&model, Method::Handelman, t, opts, started)
}

/// `p_han^(t)(G, w)`.
pub fn graph_bound(g: &WeightedGraph, t: usize) -> Result<BoundReport> {
    handelman_bound(&stable_set_poly(g), t)
}

pub fn graph_bound_with(g: &WeightedGraph, t: usize, opts: &SolveOptions) -> Result<BoundReport> {
    handelman_bound_with(&stable_set_poly(g), t, opts)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankResult {
    pub rank: usize,
    pub alpha: Q,
    /// `p_han^(t)` for `t = 1..=rank`.
    pub trace: Vec<BoundReport>,
}

/// Smallest `t` with `p_han^(t)(G, w) = α(G, w)`. The graph on zero
/// vertices has rank 0.
pub fn handelman_rank(g: &WeightedGraph) -> Result<RankResult> {
    handelman_rank_with(g, &SolveOptions::default())
}

pub fn handelman_rank_with(g: &WeightedGraph, opts: &SolveOptions) -> Result<RankResult> {
    let alpha = stability_number(g);
    let p = stable_set_poly(g);
    let mut trace = Vec::new();
    for t in 1..=g.n() {
        let report = handelman_bound_with(&p, t, opts)?;
        let exact = report.value.equals(&alpha);
        trace.push(report);
        if exact {
            return Ok(RankResult { rank: t, alpha, trace });
        }
    }
    if g.n() == 0 {
        return Ok(RankResult { rank: 0, alpha, trace });
    }
    Err(Error::UnexpectedStatus(format!(
        "order {} bound differs from the stability number",
        g.n()
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBounds {
    /// `⌈Σ w_i / α(G, w)⌉`
    pub lower: usize,
    /// `n - α(G) + 1`, only when every edge weight is at least the larger
    /// endpoint weight.
    pub upper1: Option<usize>,
    /// `2 (α*(G,w) - α(G,w)) + 2`, additionally requiring integer weights.
    pub upper2: Option<usize>,
}

pub fn rank_bounds(g: &WeightedGraph) -> Result<RankBounds> {
    let alpha = stability_number(g);
    let lower = if alpha.is_zero() {
        usize::from(g.n() > 0)
    } else {
        crate::rational::ceil_to_usize(&(g.total_weight() / &alpha))
    };
    let dominated = g.edges_dominate_max_weight();
    let upper1 = dominated.then(|| g.n() - unweighted_stability_number(g.graph()) + 1);
    let upper2 = if dominated && g.has_integer_weights() {
        let gap = fractional_stability(g)? - &alpha;
        let v = (gap * Q::from_integer(2.into()) + Q::from_integer(2.into())).floor();
        Some(v.to_integer().try_into().expect("small rank bound"))
    } else {
        None
    };
    Ok(RankBounds { lower, upper1, upper2 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorBoundCheck {
    pub lhs: Bound,
    pub rhs: Q,
    pub p_max: Q,
    pub holds: bool,
}

/// `λ_J = (C(n-1,t-1) - C(n-|J|,t-|J|)) / C(n-1,t-1)`.
pub fn lambda_j(n: usize, t: usize, j: usize) -> Q {
    let base = binomial_q(n - 1, t - 1);
    (&base - binomial_q(n - j, t - j)) / base
}

/// Maximum of `p` over `{0,1}^n`.
pub fn hypercube_max(p: &SquareFreePoly) -> Result<Q> {
    Ok(p.point_expansion()?.into_iter().map(|(_, v)| v).max().unwrap())
}

/// `(n/t) p_max + Σ_{|J|>=2, p_J>0} p_J λ_J`, together with `p_max`.
pub fn error_bound_rhs(p: &SquareFreePoly, t: usize) -> Result<(Q, Q)> {
    let n = p.n();
    let lo = p.degree().max(1);
    if t < lo || t > n {
        return Err(Error::OrderOutOfRange { t, lo, hi: n });
    }
    if !p.constant_term().is_zero() {
        return Err(Error::InvalidParameter("the polynomial must vanish at 0".into()));
    }
    let p_max = hypercube_max(p)?;
    let mut rhs = Q::from_integer(n.into()) / Q::from_integer(t.into()) * &p_max;
    for (s, c) in p.terms() {
        let j = s.count_ones() as usize;
        if j >= 2 && c.is_positive() {
            rhs += c * lambda_j(n, t, j);
        }
    }
    Ok((rhs, p_max))
}

/// Compares `p_han^(t)` with [`error_bound_rhs`].
pub fn error_bound_check(p: &SquareFreePoly, t: usize) -> Result<ErrorBoundCheck> {
    let (rhs, p_max) = error_bound_rhs(p, t)?;
    let lhs = handelman_bound(p, t)?.value;
    let holds = matches!(lhs.finite(), Some(v) if v <= &rhs);
    Ok(ErrorBoundCheck { lhs, rhs, p_max, holds })
}

fn clique_block(set: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, Q)> {
    // 1 - Σ x_i + Σ_{i<j} x_i x_j on the clique `set`
    let t_set = set_of(set);
    submasks(t_set)
        .filter_map(|i_set| {
            let k = i_set.count_ones() as i64;
            let c = (k - 1) * (k - 2) / 2;
            (c > 0).then(|| (set.to_vec(), members(i_set).collect(), Q::from_integer(c.into())))
        })
        .collect()
}

fn pair_block(i: usize, a: usize, b: usize) -> Vec<(Vec<usize>, Vec<usize>, Q)> {
    // x_i (1 - x_a)(1 - x_b) + (1 - x_i) x_a x_b
    vec![
        (vec![i, a, b], vec![i], Q::one()),
        (vec![i, a, b], vec![a, b], Q::one()),
    ]
}

/// Order-3 certificate of `2 - p_{C_5}` built from the triangles
/// `{1,2,3}`, `{1,4,5}` and a correction on `1, {3,4}`.
pub fn c5_certificate() -> HandelmanCertificate {
    let mut terms = clique_block(&[1, 2, 3]);
    terms.extend(clique_block(&[1, 4, 5]));
    terms.extend(pair_block(1, 3, 4));
    HandelmanCertificate::elevated(Q::from_integer(2.into()), 3, 5, &terms).expect("static certificate")
}

/// Order-4 certificate of `2 - p_{G_2}` built from the cliques `{1,2,3,4}`,
/// `{4,5,6}` and a correction on `4, {3,6}`, lifted to order 4.
pub fn g2_certificate() -> HandelmanCertificate {
    let mut terms = clique_block(&[1, 2, 3, 4]);
    terms.extend(clique_block(&[4, 5, 6]));
    terms.extend(pair_block(4, 3, 6));
    HandelmanCertificate::elevated(Q::from_integer(2.into()), 4, 6, &terms).expect("static certificate")
}
