//! Dense primal simplex with Bland's anti-cycling rule and phase-1
//! feasibility via artificial variables.
//!
//! Every linear program in this crate has at most a few hundred variables
//! and constraints, so a full-tableau method with recomputed reduced costs is
//! plenty. Variables are implicitly nonnegative (they are probabilities or
//! convex weights); inequality rows receive slack variables internally.
//! Constraint rows are scaled to unit 2-norm before solving.

use crate::error::{Error, Result};
use crate::tol::TOL_FEAS;

/// A linear program over nonnegative variables: maximize `objective · x`
/// subject to `equalities` (rows `a·x = b`) and `inequalities` (`a·x <= b`).
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub equalities: Vec<(Vec<f64>, f64)>,
    pub inequalities: Vec<(Vec<f64>, f64)>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![0.0; num_vars],
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn push_eq(&mut self, row: Vec<f64>, rhs: f64) {
        assert_eq!(row.len(), self.num_vars, "constraint row length");
        self.equalities.push((row, rhs));
    }

    pub fn push_le(&mut self, row: Vec<f64>, rhs: f64) {
        assert_eq!(row.len(), self.num_vars, "constraint row length");
        self.inequalities.push((row, rhs));
    }
}

/// Solver outcome.
#[derive(Debug, Clone)]
pub enum LpSolution {
    Optimal {
        value: f64,
        x: Vec<f64>,
        /// Dual multipliers per original row (equalities first), in the
        /// original row scaling.
        duals: Vec<f64>,
    },
    /// Phase 1 could not reach zero: `farkas` is a separating functional y
    /// with y·A_j <= 0 for every column j but y·b = gap > 0.
    Infeasible { farkas: Vec<f64>, gap: f64 },
    Unbounded,
}

struct Tableau {
    /// rows[i] holds the coefficients over all columns followed by the rhs.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Structural + slack column count; columns at or past this index are
    /// artificial and never enter the basis.
    n_total: usize,
}

const PIVOT_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 200_000;

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars;
    let n_slack = lp.inequalities.len();
    let m = lp.equalities.len() + lp.inequalities.len();
    let n_total = n + n_slack;

    // Assemble scaled rows: structural | slack | artificial | rhs.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut scale = Vec::with_capacity(m);
    let all_rows = lp
        .equalities
        .iter()
        .map(|(r, b)| (r.clone(), *b, None))
        .chain(
            lp.inequalities
                .iter()
                .enumerate()
                .map(|(i, (r, b))| (r.clone(), *b, Some(i))),
        );
    for (k, (row, rhs, slack_idx)) in all_rows.enumerate() {
        let mut full = row;
        full.resize(n_total, 0.0);
        if let Some(i) = slack_idx {
            full[n + i] = 1.0;
        }
        let norm = full.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
        let sign = if rhs < 0.0 { -1.0 } else { 1.0 };
        let factor = sign / norm;
        let mut scaled: Vec<f64> = full.iter().map(|v| v * factor).collect();
        let mut art = vec![0.0; m];
        art[k] = 1.0;
        scaled.extend(art);
        scaled.push(rhs * factor);
        rows.push(scaled);
        scale.push(factor);
    }

    let mut t = Tableau {
        rows,
        basis: (0..m).map(|k| n_total + k).collect(),
        n_total,
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1_costs = vec![0.0; n_total + m];
    for c in phase1_costs.iter_mut().skip(n_total) {
        *c = 1.0;
    }
    run_simplex(&mut t, &phase1_costs, false)?;
    let infeas: f64 = t
        .rows
        .iter()
        .enumerate()
        .filter(|(i, _)| t.basis[*i] >= n_total)
        .map(|(_, row)| row[row.len() - 1].max(0.0))
        .sum();
    if infeas > TOL_FEAS {
        // Phase-1 duals: y_k = 1 - reduced_cost(artificial_k), back in the
        // original row scaling.
        let mut farkas = vec![0.0; m];
        for k in 0..m {
            let rc = reduced_cost(&t, &phase1_costs, n_total + k);
            farkas[k] = (1.0 - rc) * scale[k];
        }
        return Ok(LpSolution::Infeasible { farkas, gap: infeas });
    }

    drive_out_artificials(&mut t);

    // Phase 2: minimize the negated objective; artificial columns are barred
    // from entering but keep carrying the basis inverse for the duals.
    let mut phase2_costs = vec![0.0; n_total + m];
    for (j, c) in lp.objective.iter().enumerate() {
        phase2_costs[j] = -c;
    }
    if run_simplex(&mut t, &phase2_costs, true)? {
        return Ok(LpSolution::Unbounded);
    }

    let mut x = vec![0.0; n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i].last().copied().unwrap_or(0.0).max(0.0);
        }
    }
    let value: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    // Duals in the maximization convention (y·a_j >= c_j), read off the
    // artificial columns which carry the basis inverse; rows dropped as
    // redundant end up with an all-zero column and hence a zero dual.
    let mut duals = vec![0.0; m];
    for (k, dual) in duals.iter_mut().enumerate() {
        let rc = reduced_cost(&t, &phase2_costs, n_total + k);
        *dual = rc * scale[k];
    }
    Ok(LpSolution::Optimal { value, x, duals })
}

fn reduced_cost(t: &Tableau, costs: &[f64], col: usize) -> f64 {
    let mut rc = costs[col];
    for (i, row) in t.rows.iter().enumerate() {
        let cb = costs[t.basis[i]];
        if cb != 0.0 {
            rc -= cb * row[col];
        }
    }
    rc
}

/// Bland's rule iterations until optimality (returns false) or unboundedness
/// (returns true; only reported when `detect_unbounded`).
fn run_simplex(t: &mut Tableau, costs: &[f64], detect_unbounded: bool) -> Result<bool> {
    let n_cols = t.rows.first().map(|r| r.len() - 1).unwrap_or(0);
    if t.rows.is_empty() {
        return Ok(false);
    }
    for _ in 0..MAX_ITERS {
        // Entering: smallest structural/slack index with negative reduced cost.
        let mut entering = None;
        for j in 0..n_cols {
            if j >= t.n_total {
                break;
            }
            if t.basis.contains(&j) {
                continue;
            }
            if reduced_cost(t, costs, j) < -TOL_FEAS {
                entering = Some(j);
                break;
            }
        }
        let entering = match entering {
            Some(j) => j,
            None => return Ok(false),
        };
        // Ratio test with Bland tie-breaking on the leaving basis index.
        let rhs_col = t.rows[0].len() - 1;
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.rows.iter().enumerate() {
            let a = row[entering];
            if a > PIVOT_TOL {
                let ratio = row[rhs_col].max(0.0) / a;
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < lr - 1e-12
                            || ((ratio - lr).abs() <= 1e-12 && t.basis[i] < t.basis[li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (leave_row, _) = match leave {
            Some(l) => l,
            None => {
                if detect_unbounded {
                    return Ok(true);
                }
                return Err(Error::Infeasible("phase-1 column with no positive pivot".into()));
            }
        };
        pivot(t, leave_row, entering);
    }
    Err(Error::Infeasible("simplex iteration limit reached".into()))
}

fn pivot(t: &mut Tableau, row: usize, col: usize) {
    let n_cols = t.rows[row].len();
    let p = t.rows[row][col];
    for v in t.rows[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t.rows[row].clone();
    for (i, r) in t.rows.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f != 0.0 {
            for j in 0..n_cols {
                r[j] -= f * pivot_row[j];
            }
            r[col] = 0.0;
        }
    }
    t.basis[row] = col;
}

/// After phase 1, replace basic artificials by structural or slack columns
/// where possible; rows that cannot pivot are redundant and are removed.
fn drive_out_artificials(t: &mut Tableau) {
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= t.n_total {
            let mut pivot_col = None;
            for j in 0..t.n_total {
                if t.rows[i][j].abs() > PIVOT_TOL && !t.basis.contains(&j) {
                    pivot_col = Some(j);
                    break;
                }
            }
            match pivot_col {
                Some(j) => {
                    pivot(t, i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximize_on_a_simplex() {
        // max x0 + 2 x1 s.t. x0 + x1 = 1 -> value 2 at (0, 1).
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 2.0];
        lp.push_eq(vec![1.0, 1.0], 1.0);
        match solve(&lp).unwrap() {
            LpSolution::Optimal { value, x, .. } => {
                assert!((value - 2.0).abs() < 1e-12);
                assert!((x[1] - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inequality_rows_get_slacks() {
        // max x0 + x1 s.t. x0 <= 0.3, x1 <= 0.4 -> 0.7.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.push_le(vec![1.0, 0.0], 0.3);
        lp.push_le(vec![0.0, 1.0], 0.4);
        match solve(&lp).unwrap() {
            LpSolution::Optimal { value, .. } => assert!((value - 0.7).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility_with_certificate() {
        // x0 = 1 and x0 = 2 cannot both hold.
        let mut lp = LinearProgram::new(1);
        lp.push_eq(vec![1.0], 1.0);
        lp.push_eq(vec![1.0], 2.0);
        match solve(&lp).unwrap() {
            LpSolution::Infeasible { farkas, gap } => {
                assert!(gap > 1e-6);
                // y·b > 0 while y·A <= 0 for the single column.
                let yb = farkas[0] * 1.0 + farkas[1] * 2.0;
                let ya = farkas[0] + farkas[1];
                assert!(yb > 1e-9, "yb = {yb}");
                assert!(ya <= 1e-9, "ya = {ya}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 0.0];
        lp.push_le(vec![0.0, 1.0], 1.0);
        assert!(matches!(solve(&lp).unwrap(), LpSolution::Unbounded));
    }

    #[test]
    fn degenerate_redundant_rows_are_handled() {
        // Duplicate constraints should not break phase 1.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.push_eq(vec![1.0, 1.0], 1.0);
        lp.push_eq(vec![1.0, 1.0], 1.0);
        lp.push_eq(vec![2.0, 2.0], 2.0);
        match solve(&lp).unwrap() {
            LpSolution::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duals_certify_optimality_on_equalities() {
        // max 3x0 + x1, x0 + x1 = 1: optimum 3, dual y = 3 (y·a_j >= c_j).
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![3.0, 1.0];
        lp.push_eq(vec![1.0, 1.0], 1.0);
        match solve(&lp).unwrap() {
            LpSolution::Optimal { value, duals, .. } => {
                assert!((value - 3.0).abs() < 1e-12);
                assert!((duals[0] - 3.0).abs() < 1e-9, "dual {duals:?}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
