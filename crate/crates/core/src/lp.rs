//! Exact rational linear programming.
//!
//! A dense two-phase primal simplex over arbitrary-precision rationals.
//! Bland's pivoting rule is used throughout, which guarantees termination
//! (no cycling) and makes every answer deterministic for a fixed input.
//! There is no presolve and no scaling: values stay exact end to end.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::Rat;

/// Constraint sense of one row.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Optimization goal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Goal {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint row has {got} coefficients, expected {expected}")]
    RowWidth { expected: usize, got: usize },

    #[error("variable index {0} out of range")]
    BadVariable(usize),

    #[error("expected an optimal basic solution, got {0:?}")]
    NotOptimal(LpStatus),

    #[error("optimal face is unbounded in the probed variable")]
    UnboundedFace,
}

/// A linear program over variables `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    objective: Vec<Rat>,
    rows: Vec<Vec<Rat>>,
    senses: Vec<Sense>,
    rhs: Vec<Rat>,
}

/// A solved linear program. When the status is not [`LpStatus::Optimal`] the
/// remaining fields are empty/zero.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// One value per structural variable; satisfies every constraint exactly.
    pub values: Vec<Rat>,
    pub objective_value: Rat,
    /// Basic columns of the standard-form expansion, ascending. Their
    /// submatrix is nonsingular: the solution is a vertex.
    pub basis: Vec<usize>,
    /// One shadow price per constraint row, for the problem as stated.
    pub duals: Vec<Rat>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective_value: Rat::zero(),
            basis: Vec::new(),
            duals: Vec::new(),
        }
    }
}

/// Kind of a standard-form column.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColKind {
    Structural,
    /// Slack or surplus.
    Slack,
    Artificial,
}

/// The standard-form expansion `Mx' = rhs, x' >= 0` that the solver pivots
/// on: rows normalized to nonnegative right-hand sides, slack/surplus columns
/// for inequalities, artificial columns where no slack can start basic.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub matrix: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
    pub num_structural: usize,
    pub col_kind: Vec<ColKind>,
    /// Per row: the column that starts basic for it (slack or artificial).
    pub row_identity: Vec<usize>,
    /// Per row: whether the row was negated to make its rhs nonnegative.
    pub row_negated: Vec<bool>,
}

impl StandardForm {
    pub fn total_cols(&self) -> usize {
        self.col_kind.len()
    }
}

impl LpProblem {
    pub fn new(objective: Vec<Rat>) -> Self {
        LpProblem {
            objective,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn push_row(&mut self, coeffs: Vec<Rat>, sense: Sense, rhs: Rat) -> Result<(), LpError> {
        if coeffs.len() != self.objective.len() {
            return Err(LpError::RowWidth {
                expected: self.objective.len(),
                got: coeffs.len(),
            });
        }
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[Rat] {
        &self.objective
    }

    /// The same constraints under a different objective.
    pub fn with_objective(&self, objective: Vec<Rat>) -> Result<LpProblem, LpError> {
        if objective.len() != self.objective.len() {
            return Err(LpError::RowWidth {
                expected: self.objective.len(),
                got: objective.len(),
            });
        }
        Ok(LpProblem {
            objective,
            rows: self.rows.clone(),
            senses: self.senses.clone(),
            rhs: self.rhs.clone(),
        })
    }

    /// Builds the standard-form expansion. Deterministic: slack columns come
    /// first (one per inequality row, in row order), then artificial columns.
    pub fn standard_form(&self) -> StandardForm {
        let m = self.rows.len();
        let n = self.objective.len();
        let mut negated = vec![false; m];
        let mut senses = self.senses.clone();
        for r in 0..m {
            if self.rhs[r].is_negative() {
                negated[r] = true;
                senses[r] = match senses[r] {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
        }
        let num_slack = senses.iter().filter(|s| **s != Sense::Eq).count();
        let num_artificial = senses.iter().filter(|s| **s != Sense::Le).count();
        let total = n + num_slack + num_artificial;

        let mut matrix = vec![vec![Rat::zero(); total]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut col_kind = vec![ColKind::Structural; n];
        col_kind.extend(std::iter::repeat(ColKind::Slack).take(num_slack));
        col_kind.extend(std::iter::repeat(ColKind::Artificial).take(num_artificial));
        let mut row_identity = vec![0usize; m];

        let mut slack_at = n;
        let mut art_at = n + num_slack;
        for r in 0..m {
            for c in 0..n {
                matrix[r][c] = if negated[r] {
                    -self.rows[r][c].clone()
                } else {
                    self.rows[r][c].clone()
                };
            }
            rhs.push(if negated[r] {
                -self.rhs[r].clone()
            } else {
                self.rhs[r].clone()
            });
            match senses[r] {
                Sense::Le => {
                    matrix[r][slack_at] = Rat::one();
                    row_identity[r] = slack_at;
                    slack_at += 1;
                }
                Sense::Ge => {
                    matrix[r][slack_at] = -Rat::one();
                    slack_at += 1;
                    matrix[r][art_at] = Rat::one();
                    row_identity[r] = art_at;
                    art_at += 1;
                }
                Sense::Eq => {
                    matrix[r][art_at] = Rat::one();
                    row_identity[r] = art_at;
                    art_at += 1;
                }
            }
        }
        StandardForm {
            matrix,
            rhs,
            num_structural: n,
            col_kind,
            row_identity,
            row_negated: negated,
        }
    }

    /// Solves the program exactly. Statuses other than `Optimal` are reported
    /// in the solution, not as errors.
    pub fn solve(&self, goal: Goal) -> Result<LpSolution, LpError> {
        let sf = self.standard_form();
        let mut costs: Vec<Rat> = vec![Rat::zero(); sf.total_cols()];
        for (j, c) in self.objective.iter().enumerate() {
            costs[j] = match goal {
                Goal::Maximize => c.clone(),
                Goal::Minimize => -c.clone(),
            };
        }
        let mut tab = Tableau::new(&sf);

        if sf.col_kind.iter().any(|k| *k == ColKind::Artificial) {
            // phase 1: maximize minus the sum of artificials
            let phase1: Vec<Rat> = sf
                .col_kind
                .iter()
                .map(|k| {
                    if *k == ColKind::Artificial {
                        -Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            tab.load_costs(&phase1, &[]);
            tab.run();
            if tab.obj_val.is_negative() {
                return Ok(LpSolution::non_optimal(LpStatus::Infeasible));
            }
            tab.drive_out_artificials(&sf);
        }

        let banned: Vec<usize> = sf
            .col_kind
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == ColKind::Artificial)
            .map(|(j, _)| j)
            .collect();
        tab.load_costs(&costs, &banned);
        if tab.run() == Outcome::Unbounded {
            return Ok(LpSolution::non_optimal(LpStatus::Unbounded));
        }

        let mut values = vec![Rat::zero(); sf.num_structural];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < sf.num_structural {
                values[b] = tab.rhs[r].clone();
            }
        }
        let sign = |x: Rat| match goal {
            Goal::Maximize => x,
            Goal::Minimize => -x,
        };
        let duals = (0..self.rows.len())
            .map(|r| {
                let y = tab.zrow[sf.row_identity[r]].clone();
                sign(if sf.row_negated[r] { -y } else { y })
            })
            .collect();
        let mut basis = tab.basis.clone();
        basis.sort_unstable();
        Ok(LpSolution {
            status: LpStatus::Optimal,
            values,
            objective_value: sign(tab.obj_val.clone()),
            basis,
            duals,
        })
    }

    /// Exact range of one variable over the optimal face: re-solves with the
    /// objective pinned to its optimum, then minimizes and maximizes `var`.
    pub fn probe_optimal_face(&self, goal: Goal, var: usize) -> Result<(Rat, Rat), LpError> {
        if var >= self.num_vars() {
            return Err(LpError::BadVariable(var));
        }
        let base = self.solve(goal)?;
        if !base.is_optimal() {
            return Err(LpError::NotOptimal(base.status));
        }
        let mut face = self.clone();
        face.push_row(self.objective.clone(), Sense::Eq, base.objective_value)?;
        let mut unit = vec![Rat::zero(); self.num_vars()];
        unit[var] = Rat::one();
        face.objective = unit;

        let lo = face.solve(Goal::Minimize)?;
        let hi = face.solve(Goal::Maximize)?;
        if !lo.is_optimal() || !hi.is_optimal() {
            return Err(LpError::UnboundedFace);
        }
        Ok((lo.objective_value, hi.objective_value))
    }
}

#[derive(PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

/// Dense simplex tableau: `rows` holds `B^{-1} A`, `rhs` holds `B^{-1} b`,
/// `zrow[j]` holds `z_j - c_j` for the current costs (optimal when all
/// nonnegative, maximizing).
struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    zrow: Vec<Rat>,
    obj_val: Rat,
    basis: Vec<usize>,
    costs: Vec<Rat>,
    enterable: Vec<bool>,
}

impl Tableau {
    fn new(sf: &StandardForm) -> Self {
        Tableau {
            rows: sf.matrix.clone(),
            rhs: sf.rhs.clone(),
            zrow: vec![Rat::zero(); sf.total_cols()],
            obj_val: Rat::zero(),
            basis: sf.row_identity.clone(),
            costs: vec![Rat::zero(); sf.total_cols()],
            enterable: vec![true; sf.total_cols()],
        }
    }

    /// Installs a cost vector and recomputes the reduced-cost row for the
    /// current basis. `banned` columns may never enter.
    fn load_costs(&mut self, costs: &[Rat], banned: &[usize]) {
        self.costs = costs.to_vec();
        self.enterable = vec![true; costs.len()];
        for &j in banned {
            self.enterable[j] = false;
        }
        for j in 0..costs.len() {
            let mut z = Rat::zero();
            for (r, row) in self.rows.iter().enumerate() {
                if !row[j].is_zero() && !self.costs[self.basis[r]].is_zero() {
                    z += &self.costs[self.basis[r]] * &row[j];
                }
            }
            self.zrow[j] = z - &self.costs[j];
        }
        self.obj_val = Rat::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            if !self.costs[b].is_zero() {
                self.obj_val += &self.costs[b] * &self.rhs[r];
            }
        }
    }

    /// Bland's rule: entering column is the lowest-index enterable column
    /// with negative reduced cost; leaving row breaks ratio ties by the
    /// lowest basic column id.
    fn run(&mut self) -> Outcome {
        loop {
            let Some(enter) = (0..self.zrow.len())
                .find(|&j| self.enterable[j] && self.zrow[j].is_negative())
            else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][enter].is_positive() {
                    let ratio = &self.rhs[r] / &self.rows[r][enter];
                    match &leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, best)) => {
                            if ratio < *best
                                || (ratio == *best && self.basis[r] < self.basis[*lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((leave, _)) = leave else {
                return Outcome::Unbounded;
            };
            self.pivot(leave, enter);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        if !piv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &piv;
                }
            }
            self.rhs[r] /= &piv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let factor = self.rows[i][j].clone();
            for (c, p) in pivot_row.iter().enumerate() {
                if !p.is_zero() {
                    let delta = &factor * p;
                    self.rows[i][c] -= delta;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.zrow[j].is_zero() {
            let factor = self.zrow[j].clone();
            for (c, p) in pivot_row.iter().enumerate() {
                if !p.is_zero() {
                    let delta = &factor * p;
                    self.zrow[c] -= delta;
                }
            }
            self.obj_val -= &factor * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = j;
    }

    /// After phase 1, pivot basic artificials out wherever a nonzero
    /// non-artificial coefficient exists in their row. Rows that stay with a
    /// basic artificial are redundant and inert: every non-artificial entry
    /// is zero, so later pivots cannot touch them.
    fn drive_out_artificials(&mut self, sf: &StandardForm) {
        for r in 0..self.rows.len() {
            if sf.col_kind[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            debug_assert!(self.rhs[r].is_zero());
            let col = (0..sf.total_cols())
                .find(|&j| sf.col_kind[j] != ColKind::Artificial && !self.rows[r][j].is_zero());
            if let Some(j) = col {
                self.pivot(r, j);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn simple(obj: &[i64], rows: &[(&[i64], Sense, i64)]) -> LpProblem {
        let mut p = LpProblem::new(obj.iter().map(|&c| rint(c)).collect());
        for (coeffs, sense, rhs) in rows {
            p.push_row(coeffs.iter().map(|&c| rint(c)).collect(), *sense, rint(*rhs))
                .unwrap();
        }
        p
    }

    #[test]
    fn max_x_up_to_one() {
        let p = simple(&[1], &[(&[1], Sense::Le, 1)]);
        let s = p.solve(Goal::Maximize).unwrap();
        assert!(s.is_optimal());
        assert_eq!(s.values, vec![rint(1)]);
        assert_eq!(s.objective_value, rint(1));
        assert_eq!(s.duals, vec![rint(1)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = simple(&[1], &[(&[1], Sense::Le, -1)]);
        assert_eq!(p.solve(Goal::Maximize).unwrap().status, LpStatus::Infeasible);

        let p = simple(&[1], &[(&[-1], Sense::Le, 1)]);
        assert_eq!(p.solve(Goal::Maximize).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equalities_and_ge_rows() {
        // min x + y  s.t.  x + y >= 2, x - y = 1  ->  x = 3/2, y = 1/2
        let p = simple(
            &[1, 1],
            &[(&[1, 1], Sense::Ge, 2), (&[1, -1], Sense::Eq, 1)],
        );
        let s = p.solve(Goal::Minimize).unwrap();
        assert!(s.is_optimal());
        assert_eq!(s.values, vec![rat(3, 2), rat(1, 2)]);
        assert_eq!(s.objective_value, rint(2));
    }

    #[test]
    fn exact_fractions_survive() {
        // max x + y  s.t. 3x + y <= 1, x + 3y <= 1  ->  x = y = 1/4
        let p = simple(&[1, 1], &[(&[3, 1], Sense::Le, 1), (&[1, 3], Sense::Le, 1)]);
        let s = p.solve(Goal::Maximize).unwrap();
        assert_eq!(s.values, vec![rat(1, 4), rat(1, 4)]);
        assert_eq!(s.objective_value, rat(1, 2));
        assert_eq!(s.duals, vec![rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn klee_minty_terminates() {
        // 3-variable Klee-Minty cube; Bland's rule must terminate.
        let p = simple(
            &[4, 2, 1],
            &[
                (&[1, 0, 0], Sense::Le, 5),
                (&[4, 1, 0], Sense::Le, 25),
                (&[8, 4, 1], Sense::Le, 125),
            ],
        );
        let s = p.solve(Goal::Maximize).unwrap();
        assert!(s.is_optimal());
        assert_eq!(s.objective_value, rint(125));
    }

    #[test]
    fn degenerate_redundant_rows() {
        // duplicated equality rows leave an inert artificial basic at zero
        let p = simple(
            &[1, 1],
            &[
                (&[1, 1], Sense::Eq, 1),
                (&[1, 1], Sense::Eq, 1),
                (&[2, 2], Sense::Eq, 2),
            ],
        );
        let s = p.solve(Goal::Maximize).unwrap();
        assert!(s.is_optimal());
        assert_eq!(s.objective_value, rint(1));
    }

    #[test]
    fn probe_examples() {
        // unique optimum: probing returns a point
        let p = simple(&[1, 2], &[(&[1, 1], Sense::Le, 1)]);
        let (lo, hi) = p.probe_optimal_face(Goal::Maximize, 1).unwrap();
        assert_eq!((lo.clone(), hi.clone()), (rint(1), rint(1)));

        // degenerate face: max x + y s.t. x + y <= 1, probe x over [0, 1]
        let p = simple(&[1, 1], &[(&[1, 1], Sense::Le, 1)]);
        let (lo, hi) = p.probe_optimal_face(Goal::Maximize, 0).unwrap();
        assert_eq!((lo, hi), (rint(0), rint(1)));
    }

    #[test]
    fn probe_rejects_non_optimal_base() {
        let p = simple(&[1], &[(&[-1], Sense::Le, 1)]);
        assert_eq!(
            p.probe_optimal_face(Goal::Maximize, 0),
            Err(LpError::NotOptimal(LpStatus::Unbounded))
        );
    }

    #[test]
    fn duals_match_explicit_dual_problem() {
        // max c.x s.t. Ax <= b  vs  min b.y s.t. A^T y >= c
        let a = [[3i64, 1], [1, 4], [2, 2]];
        let b = [7i64, 9, 6];
        let c = [5i64, 4];
        let p = simple(
            &c,
            &[
                (&a[0], Sense::Le, b[0]),
                (&a[1], Sense::Le, b[1]),
                (&a[2], Sense::Le, b[2]),
            ],
        );
        let primal = p.solve(Goal::Maximize).unwrap();

        let mut dual = LpProblem::new(b.iter().map(|&x| rint(x)).collect());
        for j in 0..2 {
            dual.push_row(
                (0..3).map(|i| rint(a[i][j])).collect(),
                Sense::Ge,
                rint(c[j]),
            )
            .unwrap();
        }
        let ds = dual.solve(Goal::Minimize).unwrap();
        assert_eq!(primal.objective_value, ds.objective_value);
        // the extracted shadow prices are a feasible dual optimum
        let dual_obj: Rat = primal
            .duals
            .iter()
            .zip(b.iter())
            .map(|(y, &bi)| y * rint(bi))
            .sum();
        assert_eq!(dual_obj, primal.objective_value);
    }
}
