//! Dense two-phase simplex over exact rationals with Bland's rule.

use num::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coefs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize c·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(vars: usize) -> LinearProgram {
        LinearProgram {
            vars,
            ..LinearProgram::default()
        }
    }

    pub fn add(&mut self, coefs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coefs, relation, rhs });
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced cost of column `c` under `cost`.
    fn reduced(&self, cost: &[Rational], c: usize) -> Rational {
        let mut z = cost[c].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[r][c].is_zero() {
                z -= &cost[b] * &self.rows[r][c];
            }
        }
        z
    }

    /// Runs simplex on `cost` over the columns `allowed`; `false` when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering =
                (0..self.cols).find(|&c| allowed[c] && !self.basis.contains(&c) && self.reduced(cost, c).is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
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
}

/// Solves the program exactly.
pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.vars;
    let m = lp.constraints.len();
    // columns: structural, one slack or surplus per inequality, one artificial per row
    let slack_count = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let art0 = n + slack_count;
    let cols = art0 + m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n;
    for (r, con) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols + 1];
        for (j, a) in &con.coefs {
            row[*j] += a;
        }
        row[cols] = con.rhs.clone();
        match con.relation {
            Relation::Le => {
                row[slack] = Rational::from_integer(1.into());
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = Rational::from_integer((-1).into());
                slack += 1;
            }
            Relation::Eq => {}
        }
        if row[cols].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + r] = Rational::from_integer(1.into());
        rows.push(row);
        basis.push(art0 + r);
    }
    let mut t = Tableau { rows, basis, cols };

    let mut phase1 = vec![Rational::zero(); cols];
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::from_integer(1.into());
    }
    let all = vec![true; cols];
    t.optimize(&phase1, &all);
    let infeasibility: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= art0)
        .map(|(r, _)| t.rhs(r).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis; rows where that is impossible are redundant
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= art0 {
            match (0..art0).find(|&c| !t.rows[r][c].is_zero()) {
                Some(c) => t.pivot(r, c),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost = vec![Rational::zero(); cols];
    for (j, c) in &lp.objective {
        cost[*j] += c;
    }
    let structural: Vec<bool> = (0..cols).map(|c| c < art0).collect();
    if !t.optimize(&cost, &structural) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(r).clone();
        }
    }
    let value = lp.objective.iter().map(|(j, c)| c * &x[*j]).sum();
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn small_optimum() {
        // min -x - y, x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, qi(-1)), (1, qi(-1))];
        lp.add(vec![(0, qi(1)), (1, qi(2))], Relation::Le, qi(4));
        lp.add(vec![(0, qi(3)), (1, qi(1))], Relation::Le, qi(6));
        assert_eq!(
            solve(&lp),
            LpOutcome::Optimal {
                x: vec![q(8, 5), q(6, 5)],
                value: q(-14, 5)
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![(0, qi(1))], Relation::Ge, qi(2));
        lp.add(vec![(0, qi(1))], Relation::Le, qi(1));
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![(0, qi(-1))];
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, qi(1))];
        lp.add(vec![(0, qi(1)), (1, qi(1))], Relation::Eq, qi(1));
        lp.add(vec![(0, qi(2)), (1, qi(2))], Relation::Eq, qi(2));
        assert_eq!(
            solve(&lp),
            LpOutcome::Optimal {
                x: vec![qi(0), qi(1)],
                value: qi(0)
            }
        );
    }
}
