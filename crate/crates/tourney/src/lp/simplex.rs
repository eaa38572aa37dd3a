//! Two-phase primal simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! basic variable among ratio ties), which rules out cycling, so every solve
//! terminates with an exact optimal basic solution, `Infeasible`, or
//! `Unbounded`.

use num_traits::{One, Signed, Zero};

use super::{LinearProgram, Rational, Relation, Sense};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { solution: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<Rational>, Rational)> {
        match self {
            LpOutcome::Optimal { solution, value } => Some((solution, value)),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    cost_rhs: Rational,
}

impl Tableau {
    fn num_cols(&self) -> usize {
        self.cost.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        self.rhs[r] /= &piv;
        for r2 in 0..self.rows.len() {
            if r2 == r {
                continue;
            }
            let factor = self.rows[r2][c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.num_cols() {
                let delta = &factor * &self.rows[r][j];
                self.rows[r2][j] -= delta;
            }
            let delta = &factor * &self.rhs[r];
            self.rhs[r2] -= delta;
        }
        let factor = self.cost[c].clone();
        if !factor.is_zero() {
            for j in 0..self.num_cols() {
                let delta = &factor * &self.rows[r][j];
                self.cost[j] -= delta;
            }
            let delta = &factor * &self.rhs[r];
            self.cost_rhs -= delta;
        }
        self.basis[r] = c;
    }

    /// Installs a fresh cost row and cancels the basic columns.
    fn set_cost(&mut self, mut cost: Vec<Rational>) {
        cost.resize(self.num_cols(), Rational::zero());
        self.cost = cost;
        self.cost_rhs = Rational::zero();
        for r in 0..self.rows.len() {
            let factor = self.cost[self.basis[r]].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.num_cols() {
                let delta = &factor * &self.rows[r][j];
                self.cost[j] -= delta;
            }
            let delta = &factor * &self.rhs[r];
            self.cost_rhs -= delta;
        }
    }

    /// Runs Bland iterations on columns `0..col_limit`. Returns false if an
    /// unbounded ray is found.
    fn bland(&mut self, col_limit: usize) -> bool {
        loop {
            let entering = (0..col_limit).find(|&c| self.cost[c].is_negative());
            let c = match entering {
                Some(c) => c,
                None => return true,
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &self.rows[r][c];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Current objective value of the installed cost row.
    fn objective(&self) -> Rational {
        -self.cost_rhs.clone()
    }
}

/// Solves the program exactly. Infeasible and unbounded are legitimate
/// outcomes, not failures.
pub fn simplex_solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();
    // Free variables are split into a difference of two nonnegative columns.
    let mut col_of = Vec::with_capacity(n);
    let mut neg_col_of = vec![None; n];
    let mut n_struct = 0usize;
    for j in 0..n {
        col_of.push(n_struct);
        n_struct += 1;
        if !lp.nonneg[j] {
            neg_col_of[j] = Some(n_struct);
            n_struct += 1;
        }
    }

    let m = lp.num_rows();
    let expand = |row: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n_struct];
        for j in 0..n {
            out[col_of[j]] = row[j].clone();
            if let Some(nc) = neg_col_of[j] {
                out[nc] = -row[j].clone();
            }
        }
        out
    };

    // Count extra columns: slack/surplus per inequality, artificial for
    // Ge/Eq rows (after sign normalization).
    let mut norm_rows = Vec::with_capacity(m);
    for r in 0..m {
        let mut coeffs = expand(&lp.matrix[r]);
        let mut rel = lp.relations[r];
        let mut rhs = lp.rhs[r].clone();
        if rhs.is_negative() {
            for v in coeffs.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
            rel = match rel {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
                Relation::Eq => Relation::Eq,
            };
        }
        norm_rows.push((coeffs, rel, rhs));
    }

    let n_slack = norm_rows
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Eq)
        .count();
    let n_art = norm_rows
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Le)
        .count();
    let art_start = n_struct + n_slack;
    let total = art_start + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack_idx = n_struct;
    let mut art_idx = art_start;
    for (coeffs, rel, b) in norm_rows {
        let mut row = coeffs;
        row.resize(total, Rational::zero());
        match rel {
            Relation::Le => {
                row[slack_idx] = Rational::one();
                basis.push(slack_idx);
                slack_idx += 1;
            }
            Relation::Ge => {
                row[slack_idx] = -Rational::one();
                slack_idx += 1;
                row[art_idx] = Rational::one();
                basis.push(art_idx);
                art_idx += 1;
            }
            Relation::Eq => {
                row[art_idx] = Rational::one();
                basis.push(art_idx);
                art_idx += 1;
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        cost: vec![Rational::zero(); total],
        cost_rhs: Rational::zero(),
    };

    // Phase 1: drive the artificials to zero.
    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); total];
        for c in art_start..total {
            phase1[c] = Rational::one();
        }
        tab.set_cost(phase1);
        let bounded = tab.bland(total);
        debug_assert!(bounded, "phase 1 is bounded below by zero");
        if tab.objective().is_positive() {
            return LpOutcome::Infeasible;
        }
        // Pivot remaining artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art_start {
                debug_assert!(tab.rhs[r].is_zero());
                match (0..art_start).find(|&c| !tab.rows[r][c].is_zero()) {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        tab.rows.remove(r);
                        tab.rhs.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for row in tab.rows.iter_mut() {
            row.truncate(art_start);
        }
        tab.cost.truncate(art_start);
    }

    // Phase 2.
    let minimize = lp.sense == Sense::Minimize;
    let mut cost: Vec<Rational> = vec![Rational::zero(); art_start];
    for j in 0..n {
        let c = if minimize {
            lp.objective[j].clone()
        } else {
            -lp.objective[j].clone()
        };
        cost[col_of[j]] = c.clone();
        if let Some(nc) = neg_col_of[j] {
            cost[nc] = -c;
        }
    }
    tab.set_cost(cost);
    if !tab.bland(art_start) {
        return LpOutcome::Unbounded;
    }

    let mut expanded = vec![Rational::zero(); art_start];
    for (r, &b) in tab.basis.iter().enumerate() {
        expanded[b] = tab.rhs[r].clone();
    }
    let mut solution = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = expanded[col_of[j]].clone();
        if let Some(nc) = neg_col_of[j] {
            v -= &expanded[nc];
        }
        solution.push(v);
    }
    let value = lp.objective_value(&solution);
    LpOutcome::Optimal { solution, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{rat, rat_int};

    fn min_lp(objective: Vec<Rational>) -> LinearProgram {
        LinearProgram::new(objective, Sense::Minimize)
    }

    #[test]
    fn single_variable_bound() {
        // min x subject to x >= 1/2.
        let mut lp = min_lp(vec![rat_int(1)]);
        lp.push_row(vec![rat_int(1)], Relation::Ge, rat(1, 2));
        let (x, v) = simplex_solve(&lp).optimal().unwrap();
        assert_eq!(x, vec![rat(1, 2)]);
        assert_eq!(v, rat(1, 2));
    }

    #[test]
    fn two_variable_cover() {
        // min x + y subject to x + y >= 1.
        let mut lp = min_lp(vec![rat_int(1), rat_int(1)]);
        lp.push_row(vec![rat_int(1), rat_int(1)], Relation::Ge, rat_int(1));
        let (_, v) = simplex_solve(&lp).optimal().unwrap();
        assert_eq!(v, rat_int(1));
    }

    #[test]
    fn detects_infeasible() {
        // x <= 1 and x >= 2.
        let mut lp = min_lp(vec![rat_int(1)]);
        lp.push_row(vec![rat_int(1)], Relation::Le, rat_int(1));
        lp.push_row(vec![rat_int(1)], Relation::Ge, rat_int(2));
        assert_eq!(simplex_solve(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::new(vec![rat_int(1)], Sense::Maximize);
        lp.push_row(vec![rat_int(1)], Relation::Ge, rat_int(1));
        assert_eq!(simplex_solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn maximization_and_le_rows() {
        // max 3x + 2y subject to x + y <= 4, x <= 2.
        let mut lp = LinearProgram::new(vec![rat_int(3), rat_int(2)], Sense::Maximize);
        lp.push_row(vec![rat_int(1), rat_int(1)], Relation::Le, rat_int(4));
        lp.push_row(vec![rat_int(1), rat_int(0)], Relation::Le, rat_int(2));
        let (x, v) = simplex_solve(&lp).optimal().unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(2)]);
        assert_eq!(v, rat_int(10));
    }

    #[test]
    fn equality_rows_and_free_variables() {
        // min |style| encoding: x free, minimize x subject to x = -3.
        let mut lp = min_lp(vec![rat_int(1)]);
        lp.nonneg = vec![false];
        lp.push_row(vec![rat_int(1)], Relation::Eq, rat_int(-3));
        let (x, v) = simplex_solve(&lp).optimal().unwrap();
        assert_eq!(x, vec![rat_int(-3)]);
        assert_eq!(v, rat_int(-3));
    }

    #[test]
    fn negative_rhs_normalization() {
        // min x + y subject to -x - y <= -2  (i.e. x + y >= 2).
        let mut lp = min_lp(vec![rat_int(1), rat_int(1)]);
        lp.push_row(vec![rat_int(-1), rat_int(-1)], Relation::Le, rat_int(-2));
        let (_, v) = simplex_solve(&lp).optimal().unwrap();
        assert_eq!(v, rat_int(2));
    }

    #[test]
    fn degenerate_rows_are_dropped() {
        // Duplicate equality rows produce a redundant artificial row.
        let mut lp = min_lp(vec![rat_int(1), rat_int(1)]);
        lp.push_row(vec![rat_int(1), rat_int(1)], Relation::Eq, rat_int(1));
        lp.push_row(vec![rat_int(1), rat_int(1)], Relation::Eq, rat_int(1));
        let (x, v) = simplex_solve(&lp).optimal().unwrap();
        assert_eq!(v, rat_int(1));
        assert!(lp.satisfied_by(&x));
    }
}
