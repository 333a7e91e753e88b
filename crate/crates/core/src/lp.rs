//! Exact linear programming: two-phase dense simplex over rationals with
//! Bland's anti-cycling rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

/// `maximize objective . x` subject to the constraints; variables are
/// nonnegative unless flagged free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    n_vars: usize,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
    free: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> LinearProgram {
        LinearProgram {
            n_vars,
            objective: vec![BigRational::zero(); n_vars],
            constraints: Vec::new(),
            free: vec![false; n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn maximize(&mut self, objective: Vec<BigRational>) {
        assert_eq!(objective.len(), self.n_vars);
        self.objective = objective;
    }

    pub fn minimize(&mut self, objective: Vec<BigRational>) {
        self.maximize(objective.into_iter().map(|c| -c).collect());
    }

    pub fn set_free(&mut self, j: usize) {
        self.free[j] = true;
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, rel: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    /// Solves the program exactly. For `minimize` the reported value is the
    /// maximum of the negated objective; callers negate back.
    pub fn solve(&self) -> LpOutcome {
        // Column layout: split originals (x+ then x- for free vars), then
        // slack/surplus columns, then artificials.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n_vars);
        let mut ncols = 0;
        for j in 0..self.n_vars {
            let pos = ncols;
            ncols += 1;
            let neg = if self.free[j] {
                ncols += 1;
                Some(pos + 1)
            } else {
                None
            };
            col_of.push((pos, neg));
        }
        let n_struct = ncols;

        let mut rows: Vec<(Vec<BigRational>, Relation, BigRational)> = Vec::new();
        for c in &self.constraints {
            let mut row = vec![BigRational::zero(); n_struct];
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (p, n) = col_of[j];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a.clone();
                }
            }
            let (mut rel, mut rhs) = (c.rel, c.rhs.clone());
            if rhs.is_negative() {
                for a in row.iter_mut() {
                    *a = -a.clone();
                }
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push((row, rel, rhs));
        }

        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let total = n_struct + n_slack + n_art;
        let art_start = n_struct + n_slack;

        let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut si, mut ai) = (n_struct, art_start);
        for (row, rel, rhs) in rows {
            let mut full = row;
            full.resize(total + 1, BigRational::zero());
            match rel {
                Relation::Le => {
                    full[si] = BigRational::one();
                    basis.push(si);
                    si += 1;
                }
                Relation::Ge => {
                    full[si] = -BigRational::one();
                    si += 1;
                    full[ai] = BigRational::one();
                    basis.push(ai);
                    ai += 1;
                }
                Relation::Eq => {
                    full[ai] = BigRational::one();
                    basis.push(ai);
                    ai += 1;
                }
            }
            full[total] = rhs;
            t.push(full);
        }

        let mut tab = Tableau {
            t,
            basis,
            allowed: vec![true; total],
        };

        if n_art > 0 {
            let mut cost = vec![BigRational::zero(); total];
            for c in cost.iter_mut().skip(art_start) {
                *c = -BigRational::one();
            }
            tab.run(&cost).expect("phase one is bounded");
            let infeas: BigRational = tab
                .basis
                .iter()
                .zip(&tab.t)
                .filter(|(b, _)| **b >= art_start)
                .map(|(_, r)| r[total].clone())
                .sum();
            if infeas.is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis; drop redundant rows.
            let mut r = 0;
            while r < tab.t.len() {
                if tab.basis[r] >= art_start {
                    match (0..art_start).find(|&j| !tab.t[r][j].is_zero()) {
                        Some(j) => {
                            tab.pivot(r, j);
                            r += 1;
                        }
                        None => {
                            tab.t.remove(r);
                            tab.basis.remove(r);
                        }
                    }
                } else {
                    r += 1;
                }
            }
            for a in tab.allowed.iter_mut().skip(art_start) {
                *a = false;
            }
        }

        let mut cost = vec![BigRational::zero(); total];
        for (j, c) in self.objective.iter().enumerate() {
            let (p, n) = col_of[j];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }
        if tab.run(&cost).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut vals = vec![BigRational::zero(); total];
        for (r, &b) in tab.basis.iter().enumerate() {
            vals[b] = tab.t[r][total].clone();
        }
        let x: Vec<BigRational> = col_of
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &vals[p] - &vals[n],
                None => vals[p].clone(),
            })
            .collect();
        let value = self
            .objective
            .iter()
            .zip(&x)
            .map(|(c, v)| c * v)
            .sum();
        LpOutcome::Optimal { value, x }
    }
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    allowed: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` from the current basic feasible solution.
    fn run(&mut self, cost: &[BigRational]) -> Result<(), ()> {
        let total = cost.len();
        loop {
            // Reduced cost r_j = c_j - sum_i c_{B_i} t_ij; enter the first positive one.
            let entering = (0..total).find(|&j| {
                if !self.allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.t.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[total] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_maximization() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let mut lp = LinearProgram::new(2);
        lp.maximize(vec![rat(3), rat(2)]);
        lp.add(vec![rat(1), rat(1)], Relation::Le, rat(4));
        lp.add(vec![rat(1), rat(3)], Relation::Le, rat(6));
        lp.add(vec![rat(1), rat(0)], Relation::Le, rat(3));
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(11));
                assert_eq!(x, vec![rat(3), rat(1)]);
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn cusp_weight_program() {
        // min w0 + w1 s.t. 2 w0 >= 1, 3 w1 >= 1
        let mut lp = LinearProgram::new(2);
        lp.minimize(vec![rat(1), rat(1)]);
        lp.add(vec![rat(2), rat(0)], Relation::Ge, rat(1));
        lp.add(vec![rat(0), rat(3)], Relation::Ge, rat(1));
        let LpOutcome::Optimal { value, x } = lp.solve() else {
            panic!()
        };
        assert_eq!(-value, r(5, 6));
        assert_eq!(x, vec![r(1, 2), r(1, 3)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![rat(1)], Relation::Ge, rat(2));
        lp.add(vec![rat(1)], Relation::Le, rat(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.maximize(vec![rat(1)]);
        lp.add(vec![rat(1)], Relation::Ge, rat(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // max -x subject to x = -5/2 with x free
        let mut lp = LinearProgram::new(1);
        lp.set_free(0);
        lp.maximize(vec![rat(-1)]);
        lp.add(vec![rat(2)], Relation::Eq, rat(-5));
        assert_eq!(lp.solve().value(), Some(&r(5, 2)));

        // redundant equalities
        let mut lp = LinearProgram::new(2);
        lp.maximize(vec![rat(1), rat(0)]);
        lp.add(vec![rat(1), rat(1)], Relation::Eq, rat(1));
        lp.add(vec![rat(2), rat(2)], Relation::Eq, rat(2));
        assert_eq!(lp.solve().value(), Some(&rat(1)));
    }

    #[test]
    fn degenerate_program_terminates() {
        // A classic cycling example under the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(4);
        lp.maximize(vec![r(3, 4), rat(-150), r(1, 50), rat(-6)]);
        lp.add(vec![r(1, 4), rat(-60), r(-1, 25), rat(9)], Relation::Le, rat(0));
        lp.add(vec![r(1, 2), rat(-90), r(-1, 50), rat(3)], Relation::Le, rat(0));
        lp.add(vec![rat(0), rat(0), rat(1), rat(0)], Relation::Le, rat(1));
        assert_eq!(lp.solve().value(), Some(&r(1, 20)));
    }
}
