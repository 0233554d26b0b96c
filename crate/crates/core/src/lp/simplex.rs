//! Two-phase primal simplex over a dense exact tableau.
//!
//! Entering columns follow Dantzig's most-negative reduced cost until a run of
//! degenerate pivots is observed; from then on Bland's smallest-index rule is
//! used until the objective strictly improves again. Leaving rows always use
//! the minimum ratio with Bland's smallest-basic-index tie-break. Bland's rule
//! on every degenerate stretch rules out cycling, so the method terminates.

use std::cmp::Ordering;
use std::time::Instant;

use num_traits::Zero;

use super::rat::Rat;
use super::{LinearProgram, LpSolution, LpStatus, Relation, Sense, SolveOptions, VarBound, MAX_NONZEROS};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Degenerate pivots tolerated under Dantzig's rule before switching to Bland.
const DEGENERATE_STREAK: usize = 8;

struct Tableau {
    /// `rows[i][..ncols]` are constraint coefficients, `rows[i][ncols]` the rhs.
    rows: Vec<Vec<Rat>>,
    /// Reduced costs; `obj[ncols]` holds minus the current objective value.
    obj: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
    /// Columns allowed to enter the basis.
    enterable: usize,
    pivots: usize,
    deadline: Option<Instant>,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        if !inv.is_one() {
            for &j in &nz {
                pivot_row[j] = pivot_row[j].mul(&inv);
            }
        }
        let eliminate = |row: &mut Vec<Rat>| {
            if row[e].is_zero() {
                return;
            }
            let f = row[e].clone();
            for &j in &nz {
                row[j] = row[j].sub_mul(&f, &pivot_row[j]);
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = e;
        self.pivots += 1;
    }

    fn choose_entering(&self, bland: bool) -> Option<usize> {
        let candidates = (0..self.enterable).filter(|&j| self.obj[j].is_negative());
        if bland {
            return candidates.into_iter().next();
        }
        let mut best: Option<usize> = None;
        for j in candidates {
            match best {
                Some(b) if self.obj[j].cmp(&self.obj[b]) != Ordering::Less => {}
                _ => best = Some(j),
            }
        }
        best
    }

    fn choose_leaving(&self, e: usize) -> Option<usize> {
        let mut best: Option<(usize, Rat)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[e];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(i).div(a);
            let better = match &best {
                None => true,
                Some((k, r)) => match ratio.cmp(r) {
                    Ordering::Less => true,
                    Ordering::Equal => self.basis[i] < self.basis[*k],
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self) -> Result<Outcome> {
        let mut streak = 0usize;
        loop {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::Timeout);
                }
            }
            let bland = streak >= DEGENERATE_STREAK;
            let Some(e) = self.choose_entering(bland) else {
                return Ok(Outcome::Optimal);
            };
            let Some(r) = self.choose_leaving(e) else {
                return Ok(Outcome::Unbounded);
            };
            if self.rhs(r).is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(r, e);
        }
    }

    /// Resets the objective row to reduced costs of `costs` for the current basis.
    fn price(&mut self, costs: &[Rat]) {
        let mut obj: Vec<Rat> = costs.to_vec();
        obj.resize(self.ncols + 1, Rat::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &obj[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    obj[j] = obj[j].sub_mul(cb, a);
                }
            }
        }
        self.obj = obj;
    }
}

/// Column layout of the standard-form problem.
struct Layout {
    /// `(positive column, optional negative column)` per model variable.
    var_cols: Vec<(usize, Option<usize>)>,
    structural: usize,
}

pub fn solve_with(lp: &LinearProgram, opts: &SolveOptions) -> Result<LpSolution> {
    let nnz = lp.nonzeros();
    if nnz > MAX_NONZEROS {
        return Err(Error::TooLarge(format!(
            "{nnz} nonzero coefficients exceeds the limit of {MAX_NONZEROS}"
        )));
    }

    let mut var_cols = Vec::with_capacity(lp.vars.len());
    let mut next = 0usize;
    for v in &lp.vars {
        match v.bound {
            VarBound::NonNegative => {
                var_cols.push((next, None));
                next += 1;
            }
            VarBound::Free => {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
    }
    let layout = Layout {
        var_cols,
        structural: next,
    };

    // Orient every row so its right-hand side is nonnegative.
    struct Row {
        coeffs: Vec<(usize, Rat)>,
        relation: Relation,
        rhs: Rat,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let flip = c.rhs < Q::zero();
        let sign = |x: Rat| if flip { x.neg() } else { x };
        let mut coeffs = Vec::with_capacity(c.coeffs.len() * 2);
        for (j, a) in &c.coeffs {
            let a = sign(Rat::from_q(a));
            let (pos, neg) = layout.var_cols[*j];
            if let Some(neg) = neg {
                coeffs.push((neg, a.neg()));
            }
            coeffs.push((pos, a));
        }
        let relation = match (c.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        rows.push(Row {
            coeffs,
            relation,
            rhs: sign(Rat::from_q(&c.rhs)),
        });
    }

    let slack_count = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let first_artificial = layout.structural + slack_count;
    let ncols = first_artificial + artificial_count;

    let m = rows.len();
    let mut dense = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut slack, mut art) = (layout.structural, first_artificial);
    for row in &rows {
        let mut d = vec![Rat::zero(); ncols + 1];
        for (j, a) in &row.coeffs {
            d[*j] = d[*j].add(a);
        }
        d[ncols] = row.rhs.clone();
        match row.relation {
            Relation::Le => {
                d[slack] = Rat::Small(1, 1);
                basis.push(slack);
                slack += 1;
            }
            Relation::Ge => {
                d[slack] = Rat::Small(-1, 1);
                slack += 1;
                d[art] = Rat::Small(1, 1);
                basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                d[art] = Rat::Small(1, 1);
                basis.push(art);
                art += 1;
            }
        }
        dense.push(d);
    }

    let mut tab = Tableau {
        rows: dense,
        obj: Vec::new(),
        basis,
        ncols,
        enterable: first_artificial,
        pivots: 0,
        deadline: opts.deadline,
    };

    if artificial_count > 0 {
        let mut phase1 = vec![Rat::zero(); ncols];
        for c in phase1.iter_mut().skip(first_artificial) {
            *c = Rat::Small(1, 1);
        }
        tab.price(&phase1);
        tab.run()?;
        if !tab.obj[ncols].is_zero() {
            return Ok(LpSolution::without_point(LpStatus::Infeasible, tab.pivots));
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in tab.rows.iter_mut() {
            let rhs = row[ncols].clone();
            row.truncate(first_artificial);
            row.push(rhs);
        }
        tab.ncols = first_artificial;
    }

    let mut costs = vec![Rat::zero(); tab.ncols];
    for (j, c) in &lp.objective {
        let c = match lp.sense {
            Sense::Minimize => Rat::from_q(c),
            Sense::Maximize => Rat::from_q(c).neg(),
        };
        let (pos, neg) = layout.var_cols[*j];
        if let Some(neg) = neg {
            costs[neg] = c.neg();
        }
        costs[pos] = c;
    }
    tab.price(&costs);
    if let Outcome::Unbounded = tab.run()? {
        return Ok(LpSolution::without_point(LpStatus::Unbounded, tab.pivots));
    }

    let mut col_values = vec![Q::zero(); tab.ncols];
    for (i, &b) in tab.basis.iter().enumerate() {
        col_values[b] = tab.rhs(i).to_q();
    }
    let values: Vec<Q> = layout
        .var_cols
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => &col_values[pos] - &col_values[neg],
            None => col_values[pos].clone(),
        })
        .collect();
    let objective = lp.objective_value(&values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective: Some(objective),
        values: Some(values),
        pivots: tab.pivots,
    })
}
