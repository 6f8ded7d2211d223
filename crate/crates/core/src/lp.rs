//! A small dense two-phase simplex over an exact ordered field.
//!
//! Variables are nonnegative. Pivoting follows Bland's rule, so the method
//! terminates without any tolerance handling. Problem sizes here are tiny
//! (eight variables, a few dozen rows), so the tableau is rebuilt for every
//! objective rather than warm-started.

use crate::scalar::ExactField;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
struct Constraint<T> {
    coeffs: Vec<T>,
    rel: Relation,
    rhs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal(T),
    Unbounded,
    Infeasible,
}

/// `x >= 0` subject to linear rows.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    n_vars: usize,
    constraints: Vec<Constraint<T>>,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    n_cols: usize,
}

impl<T: ExactField> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.n_cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost . x` from the current basic feasible solution.
    /// Returns `None` when unbounded.
    fn run(&mut self, cost: &[T], allowed: &[bool]) -> Option<T> {
        loop {
            let entering = (0..self.n_cols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let z: T = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(T::zero(), |acc, (r, &b)| acc + cost[b].clone() * r[j].clone());
                cost[j].clone() - z > T::zero()
            });
            let Some(col) = entering else {
                let value = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, &b)| acc + cost[b].clone() * self.rhs(i).clone());
                return Some(value);
            };

            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if *a <= T::zero() {
                    continue;
                }
                let ratio = self.rhs(i).clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave?;
            self.pivot(row, col);
        }
    }
}

impl<T: ExactField> LinearProgram<T> {
    pub fn new(n_vars: usize) -> Self {
        Self { n_vars, constraints: Vec::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn add(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) {
        assert_eq!(coeffs.len(), self.n_vars, "constraint width");
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn maximize(&self, objective: &[T]) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.n_vars, "objective width");
        let Some(mut tab) = self.phase_one() else {
            return LpOutcome::Infeasible;
        };
        let n_struct = tab.n_cols;
        let mut cost = vec![T::zero(); n_struct];
        cost[..self.n_vars].clone_from_slice(objective);
        let allowed = vec![true; n_struct];
        match tab.run(&cost, &allowed) {
            Some(v) => LpOutcome::Optimal(v),
            None => LpOutcome::Unbounded,
        }
    }

    pub fn minimize(&self, objective: &[T]) -> LpOutcome<T> {
        let neg: Vec<T> = objective.iter().map(|c| -c.clone()).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal(v) => LpOutcome::Optimal(-v),
            other => other,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.phase_one().is_some()
    }

    /// Finds a basic feasible solution and returns a tableau over the
    /// structural and slack columns only (artificials removed).
    fn phase_one(&self) -> Option<Tableau<T>> {
        // Normalize to nonnegative right-hand sides.
        let normalized: Vec<Constraint<T>> = self
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < T::zero() {
                    Constraint {
                        coeffs: c.coeffs.iter().map(|x| -x.clone()).collect(),
                        rel: match c.rel {
                            Relation::Le => Relation::Ge,
                            Relation::Ge => Relation::Le,
                            Relation::Eq => Relation::Eq,
                        },
                        rhs: -c.rhs.clone(),
                    }
                } else {
                    c.clone()
                }
            })
            .collect();

        let m = normalized.len();
        let n_slack = normalized.iter().filter(|c| c.rel != Relation::Eq).count();
        let n_art = normalized.iter().filter(|c| c.rel != Relation::Le).count();
        let first_art = self.n_vars + n_slack;
        let total = first_art + n_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = self.n_vars;
        let mut art = first_art;
        for c in &normalized {
            let mut row = vec![T::zero(); total + 1];
            row[..self.n_vars].clone_from_slice(&c.coeffs);
            row[total] = c.rhs.clone();
            match c.rel {
                Relation::Le => {
                    row[slack] = T::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -T::one();
                    slack += 1;
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        debug_assert!(slack == first_art && art == total);

        let mut tab = Tableau { rows, basis, n_cols: total };
        if n_art > 0 {
            let mut cost = vec![T::zero(); total];
            for c in cost.iter_mut().skip(first_art) {
                *c = -T::one();
            }
            let allowed = vec![true; total];
            let value = tab.run(&cost, &allowed).expect("phase one is bounded");
            if value < T::zero() {
                return None;
            }
            // Drive zero-level artificials out of the basis, dropping redundant rows.
            let mut i = 0;
            while i < tab.rows.len() {
                if tab.basis[i] >= first_art {
                    match (0..first_art).find(|&j| !tab.rows[i][j].is_zero()) {
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
        }
        // Strip artificial columns.
        for r in tab.rows.iter_mut() {
            let rhs = r[total].clone();
            r.truncate(first_art);
            r.push(rhs);
        }
        tab.n_cols = first_art;
        Some(tab)
    }
}
