//! Exact rational linear programming.
//!
//! Models are built with [`LinearProgram`] and solved by a two-phase primal
//! simplex on a dense rational tableau ([`solve`]). Every arithmetic step is
//! exact, so an `Optimal` status comes with a primal assignment that satisfies
//! the constraints with exact equality and attains the reported objective.

mod rat;
mod simplex;

use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::time::Instant;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

pub use simplex::solve_with;

/// Models with more nonzero constraint coefficients than this are rejected.
pub const MAX_NONZEROS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    /// `x >= 0`
    NonNegative,
    /// `-inf < x < inf`
    Free,
}

#[derive(Clone, Debug)]
pub struct Variable {
    pub name: String,
    pub bound: VarBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    /// Sparse row: `(variable index, coefficient)`, indices strictly increasing.
    pub coeffs: Vec<(usize, Q)>,
    pub relation: Relation,
    pub rhs: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    vars: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, Q)>,
    sense: Sense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "OPTIMAL",
            LpStatus::Infeasible => "INFEASIBLE",
            LpStatus::Unbounded => "UNBOUNDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Present iff `status == Optimal`.
    pub objective: Option<Q>,
    /// Present iff `status == Optimal`; one value per model variable.
    pub values: Option<Vec<Q>>,
    pub pivots: usize,
}

impl LpSolution {
    pub(crate) fn without_point(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            objective: None,
            values: None,
            pivots,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Abort with [`Error::Timeout`] once this instant has passed.
    pub deadline: Option<Instant>,
}

impl Default for LinearProgram {
    fn default() -> Self {
        Self::new(Sense::Minimize)
    }
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            vars: Vec::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            sense,
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, bound: VarBound) -> usize {
        self.vars.push(Variable {
            name: name.into(),
            bound,
        });
        self.vars.len() - 1
    }

    /// Adds a row. Coefficients on the same variable are merged and zeros
    /// dropped; unknown variable indices are rejected.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        coeffs: impl IntoIterator<Item = (usize, Q)>,
        relation: Relation,
        rhs: Q,
    ) -> Result<usize> {
        let coeffs = self.normalize_row(coeffs)?;
        self.constraints.push(Constraint {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        });
        Ok(self.constraints.len() - 1)
    }

    pub fn set_objective(&mut self, sense: Sense, coeffs: impl IntoIterator<Item = (usize, Q)>) -> Result<()> {
        self.objective = self.normalize_row(coeffs)?;
        self.sense = sense;
        Ok(())
    }

    fn normalize_row(&self, coeffs: impl IntoIterator<Item = (usize, Q)>) -> Result<Vec<(usize, Q)>> {
        let mut row: Vec<(usize, Q)> = coeffs.into_iter().collect();
        if let Some(&(j, _)) = row.iter().find(|(j, _)| *j >= self.vars.len()) {
            return Err(Error::MalformedModel(format!(
                "variable index {j} but only {} variables",
                self.vars.len()
            )));
        }
        row.sort_by_key(|(j, _)| *j);
        let mut merged: Vec<(usize, Q)> = Vec::with_capacity(row.len());
        for (j, c) in row {
            match merged.last_mut() {
                Some((k, acc)) if *k == j => *acc += c,
                _ => merged.push((j, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(merged)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, Q)] {
        &self.objective
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.constraints.iter().map(|c| c.coeffs.len()).sum()
    }

    pub fn objective_value(&self, x: &[Q]) -> Q {
        self.objective.iter().map(|(j, c)| c * &x[*j]).sum()
    }

    /// Human-readable LP-text dump with exact `p/q` coefficients.
    pub fn to_lp_text(&self) -> String {
        let mut out = String::new();
        let term_list = |row: &[(usize, Q)]| -> String {
            if row.is_empty() {
                return "0".to_string();
            }
            let mut s = String::new();
            for (k, (j, c)) in row.iter().enumerate() {
                let name = &self.vars[*j].name;
                if k == 0 {
                    if c.is_negative() {
                        let _ = write!(s, "- {} {}", -c, name);
                    } else {
                        let _ = write!(s, "{c} {name}");
                    }
                } else if c.is_negative() {
                    let _ = write!(s, " - {} {}", -c, name);
                } else {
                    let _ = write!(s, " + {c} {name}");
                }
            }
            s
        };
        out.push_str(match self.sense {
            Sense::Minimize => "minimize\n",
            Sense::Maximize => "maximize\n",
        });
        let _ = writeln!(out, "  obj: {}", term_list(&self.objective));
        out.push_str("subject to\n");
        for c in &self.constraints {
            let _ = writeln!(out, "  {}: {} {} {}", c.name, term_list(&c.coeffs), c.relation, c.rhs);
        }
        out.push_str("bounds\n");
        for v in &self.vars {
            match v.bound {
                VarBound::NonNegative => {
                    let _ = writeln!(out, "  {} >= 0", v.name);
                }
                VarBound::Free => {
                    let _ = writeln!(out, "  {} free", v.name);
                }
            }
        }
        out.push_str("end\n");
        out
    }
}

/// Solves with default options.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    solve_with(lp, &SolveOptions::default())
}

static VERIFIED_SOLVES: AtomicUsize = AtomicUsize::new(0);

/// Solves and re-substitutes the result with [`verify_solution`]; a failed
/// check is reported as an error instead of a solution.
pub fn solve_verified(lp: &LinearProgram, opts: &SolveOptions) -> Result<LpSolution> {
    let sol = solve_with(lp, opts)?;
    if !verify_solution(lp, &sol) {
        return Err(Error::MalformedModel("optimal point failed re-substitution".into()));
    }
    VERIFIED_SOLVES.fetch_add(1, AtomicOrdering::Relaxed);
    Ok(sol)
}

/// Number of solves that passed re-substitution in this process.
pub fn verified_solve_count() -> usize {
    VERIFIED_SOLVES.load(AtomicOrdering::Relaxed)
}

/// Independent re-substitution check of an optimal solution: bounds, every
/// row, and the reported objective, all compared exactly.
pub fn verify_solution(lp: &LinearProgram, sol: &LpSolution) -> bool {
    let (Some(x), Some(obj)) = (&sol.values, &sol.objective) else {
        return sol.status != LpStatus::Optimal;
    };
    if sol.status != LpStatus::Optimal || x.len() != lp.vars.len() {
        return false;
    }
    for (v, val) in lp.vars.iter().zip(x) {
        if v.bound == VarBound::NonNegative && val.is_negative() {
            return false;
        }
    }
    for c in &lp.constraints {
        let lhs: Q = c.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
        let ok = match c.relation {
            Relation::Eq => lhs == c.rhs,
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
        };
        if !ok {
            return false;
        }
    }
    &lp.objective_value(x) == obj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn single_var(sense: Sense) -> (LinearProgram, usize) {
        let mut lp = LinearProgram::new(sense);
        let x = lp.add_var("x", VarBound::NonNegative);
        (lp, x)
    }

    #[test]
    fn bounded_maximum() {
        let (mut lp, x) = single_var(Sense::Maximize);
        lp.add_constraint("cap", [(x, q(1))], Relation::Le, q(3)).unwrap();
        lp.set_objective(Sense::Maximize, [(x, q(1))]).unwrap();
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, Some(q(3)));
        assert!(verify_solution(&lp, &sol));
    }

    #[test]
    fn unbounded_maximum() {
        let (mut lp, x) = single_var(Sense::Maximize);
        lp.set_objective(Sense::Maximize, [(x, q(1))]).unwrap();
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn infeasible_model() {
        let (mut lp, x) = single_var(Sense::Maximize);
        lp.add_constraint("neg", [(x, q(1))], Relation::Le, q(-1)).unwrap();
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert!(sol.objective.is_none() && sol.values.is_none());
    }

    #[test]
    fn free_variables_and_equalities() {
        // min y  s.t.  y - x = -7/2,  x + y >= 1,  x <= 10 ; y free
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var("x", VarBound::NonNegative);
        let y = lp.add_var("y", VarBound::Free);
        lp.add_constraint("e", [(y, q(1)), (x, q(-1))], Relation::Eq, qf(-7, 2)).unwrap();
        lp.add_constraint("g", [(x, q(1)), (y, q(1))], Relation::Ge, q(1)).unwrap();
        lp.add_constraint("u", [(x, q(1))], Relation::Le, q(10)).unwrap();
        lp.set_objective(Sense::Minimize, [(y, q(1))]).unwrap();
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.objective, Some(qf(-5, 4)));
        assert!(verify_solution(&lp, &sol));
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let a = lp.add_var("a", VarBound::NonNegative);
        let b = lp.add_var("b", VarBound::NonNegative);
        lp.add_constraint("r1", [(a, q(1)), (b, q(1))], Relation::Eq, q(2)).unwrap();
        lp.add_constraint("r2", [(a, q(2)), (b, q(2))], Relation::Eq, q(4)).unwrap();
        lp.set_objective(Sense::Maximize, [(a, q(3)), (b, q(1))]).unwrap();
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.objective, Some(q(6)));
        assert!(verify_solution(&lp, &sol));
    }

    #[test]
    fn rejects_unknown_variable() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        assert!(lp.add_constraint("bad", [(3, q(1))], Relation::Le, q(0)).is_err());
    }

    #[test]
    fn merges_duplicate_coefficients() {
        let (mut lp, x) = single_var(Sense::Maximize);
        lp.add_constraint("dup", [(x, q(1)), (x, q(1)), (x, q(-2))], Relation::Le, q(0)).unwrap();
        assert!(lp.constraints()[0].coeffs.is_empty());
    }

    #[test]
    fn deterministic_solutions() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let v: Vec<usize> = (0..4).map(|i| lp.add_var(format!("v{i}"), VarBound::NonNegative)).collect();
        // degenerate ties: every pair sums to at most 1
        for i in 0..4 {
            for j in i + 1..4 {
                lp.add_constraint(format!("p{i}{j}"), [(v[i], q(1)), (v[j], q(1))], Relation::Le, q(1)).unwrap();
            }
        }
        lp.set_objective(Sense::Maximize, v.iter().map(|&j| (j, q(1)))).unwrap();
        let a = solve(&lp).unwrap();
        let b = solve(&lp).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.objective, Some(q(2)));
    }

    #[test]
    fn lp_text_dump_uses_exact_rationals() {
        let (mut lp, x) = single_var(Sense::Maximize);
        lp.add_constraint("cap", [(x, qf(3, 2))], Relation::Le, qf(1, 3)).unwrap();
        lp.set_objective(Sense::Maximize, [(x, q(-1))]).unwrap();
        let text = lp.to_lp_text();
        assert!(text.contains("cap: 3/2 x <= 1/3"));
        assert!(text.contains("obj: - 1 x"));
    }
}
