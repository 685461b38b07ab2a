//! Exact two-phase simplex over ℚ with Bland's rule.
//!
//! Variables are free; each is split into a difference of nonnegative parts.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
                self.rhs[i] -= &f * &prhs;
            }
        }
        self.basis[r] = c;
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().zip(&self.rhs).map(|(&b, v)| &cost[b] * v).sum()
    }

    /// Runs simplex on `cost` over columns `< allowed`; false when unbounded.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational =
                    &cost[j] - self.basis.iter().enumerate().map(|(i, &b)| &cost[b] * &self.rows[i][j]).sum::<Rational>();
                reduced.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Minimises `objective · z` over free `z` subject to `constraints`.
pub fn minimize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let h = objective.len();
    let m = constraints.len();
    let slacks: Vec<usize> = constraints.iter().filter(|c| c.rel != Relation::Eq).map(|_| 1).collect();
    let ns = slacks.len();
    let ncols = 2 * h + ns + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut slack_at = 2 * h;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), h, "constraint length");
        let mut row = vec![Rational::zero(); ncols];
        for k in 0..h {
            row[k] = c.coeffs[k].clone();
            row[h + k] = -c.coeffs[k].clone();
        }
        match c.rel {
            Relation::Le => {
                row[slack_at] = Rational::from_integer(1.into());
                slack_at += 1;
            }
            Relation::Ge => {
                row[slack_at] = Rational::from_integer((-1).into());
                slack_at += 1;
            }
            Relation::Eq => {}
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        row[2 * h + ns + i] = Rational::from_integer(1.into());
        rows.push(row);
        rhs.push(b);
    }
    let art0 = 2 * h + ns;
    let mut t = Tableau { rows, rhs, basis: (art0..ncols).collect() };
    let mut phase1 = vec![Rational::zero(); ncols];
    for x in phase1.iter_mut().skip(art0) {
        *x = Rational::from_integer(1.into());
    }
    t.run(&phase1, ncols);
    if !t.objective(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }
    for r in 0..m {
        if t.basis[r] >= art0 {
            if let Some(c) = (0..art0).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }
    let mut cost = vec![Rational::zero(); ncols];
    for k in 0..h {
        cost[k] = objective[k].clone();
        cost[h + k] = -objective[k].clone();
    }
    if !t.run(&cost, art0) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        x[b] = t.rhs[i].clone();
    }
    let point: Vec<Rational> = (0..h).map(|k| &x[k] - &x[h + k]).collect();
    LpOutcome::Optimal { value: t.objective(&cost), point }
}
