//! Dense two-phase simplex over the rationals with Bland's rule.
//!
//! Solves `min c·x` subject to linear constraints and `x ≥ 0`. Bland's rule
//! rules out cycling, and exact arithmetic rules out tolerance issues.

use num::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    /// Minimised.
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), num_vars);
        LinearProgram {
            num_vars,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let rhs = self.width;
        let mut obj = vec![Rational::zero(); rhs + 1];
        obj[..cost.len()].clone_from_slice(cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (v, t) in obj.iter_mut().zip(&self.rows[i]) {
                *v -= &cb * t;
            }
        }
        self.obj = obj;
    }

    /// Runs Bland pivots over columns `< allowed`. Returns false if unbounded.
    fn optimise(&mut self, allowed: usize) -> bool {
        let rhs = self.width;
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][rhs] / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    // normalise to nonnegative right-hand sides
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() {
                let rel = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.coeffs.iter().map(|v| -v).collect(), rel, -c.rhs.clone())
            } else {
                (c.coeffs.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();
    let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let num_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let art_start = n + num_slack;
    let width = art_start + num_art;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        obj: Vec::new(),
        basis: Vec::with_capacity(m),
        width,
    };
    let (mut s, mut a) = (n, art_start);
    for (coeffs, rel, rhs) in rows {
        let mut row = vec![Rational::zero(); width + 1];
        row[..n].clone_from_slice(&coeffs);
        row[width] = rhs;
        match rel {
            Relation::Le => {
                row[s] = Rational::from_integer(1.into());
                t.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = Rational::from_integer((-1).into());
                s += 1;
                row[a] = Rational::from_integer(1.into());
                t.basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                row[a] = Rational::from_integer(1.into());
                t.basis.push(a);
                a += 1;
            }
        }
        t.rows.push(row);
    }

    if num_art > 0 {
        let mut phase1 = vec![Rational::zero(); width];
        for v in phase1[art_start..].iter_mut() {
            *v = Rational::from_integer(1.into());
        }
        t.set_objective(&phase1);
        t.optimise(width);
        if !t.obj[width].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
    t.set_objective(&lp.objective);
    if !t.optimise(art_start) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][width].clone();
        }
    }
    let value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximisation() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let mut lp = LinearProgram::new(2, v(&[-3, -5]));
        lp.add(v(&[1, 0]), Relation::Le, int(4));
        lp.add(v(&[0, 2]), Relation::Le, int(12));
        lp.add(v(&[3, 2]), Relation::Le, int(18));
        assert_eq!(
            solve(&lp),
            LpOutcome::Optimal {
                x: v(&[2, 6]),
                value: int(-36)
            }
        );
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y s.t. x + 2y = 3, x ≥ 1/2 → x = 1/2, y = 5/4
        let mut lp = LinearProgram::new(2, v(&[1, 1]));
        lp.add(v(&[1, 2]), Relation::Eq, int(3));
        lp.add(v(&[1, 0]), Relation::Ge, frac(1, 2));
        match solve(&lp) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![frac(1, 2), frac(5, 4)]);
                assert_eq!(value, frac(7, 4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1, v(&[1]));
        lp.add(v(&[1]), Relation::Le, int(1));
        lp.add(v(&[1]), Relation::Ge, int(2));
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(1, v(&[-1]));
        lp.add(v(&[1]), Relation::Ge, int(0));
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_and_degeneracy() {
        let mut lp = LinearProgram::new(2, v(&[1, -1]));
        lp.add(v(&[1, 1]), Relation::Eq, int(2));
        lp.add(v(&[2, 2]), Relation::Eq, int(4));
        lp.add(v(&[1, -1]), Relation::Le, int(0));
        lp.add(v(&[0, 1]), Relation::Le, int(2));
        match solve(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(-2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_normalised() {
        // min x s.t. -x ≤ -3
        let mut lp = LinearProgram::new(1, v(&[1]));
        lp.add(v(&[-1]), Relation::Le, int(-3));
        match solve(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(3)),
            other => panic!("{other:?}"),
        }
    }
}
