//! Exact rational linear programming (two-phase dense simplex, Bland's rule).

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

/// Minimize `objective · x` subject to the rows; variables are nonnegative unless
/// marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub nvars: usize,
    pub free: Vec<bool>,
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, Cmp, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram {
            nvars,
            free: vec![false; nvars],
            objective: vec![Rational::zero(); nvars],
            rows: Vec::new(),
        }
    }

    pub fn all_free(nvars: usize) -> Self {
        LinearProgram {
            free: vec![true; nvars],
            ..Self::new(nvars)
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, cmp: Cmp, rhs: Rational) {
        assert_eq!(coeffs.len(), self.nvars);
        self.rows.push((coeffs, cmp, rhs));
    }

    pub fn solve(&self) -> LpResult {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    /// Structural column(s) for each original variable: (positive, optional negative).
    map: Vec<(usize, Option<usize>)>,
    artificial_start: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut map = Vec::with_capacity(lp.nvars);
        let mut col = 0;
        for &f in &lp.free {
            if f {
                map.push((col, Some(col + 1)));
                col += 2;
            } else {
                map.push((col, None));
                col += 1;
            }
        }
        let structural = col;
        let nslack = lp.rows.iter().filter(|r| r.1 != Cmp::Eq).count();
        let nart = lp
            .rows
            .iter()
            .filter(|(_, c, b)| match c {
                Cmp::Le => b.is_negative(),
                Cmp::Ge => !b.is_negative(),
                Cmp::Eq => true,
            })
            .count();
        let artificial_start = structural + nslack;
        let ncols = artificial_start + nart;
        let mut t = Vec::with_capacity(lp.rows.len());
        let mut basis = Vec::with_capacity(lp.rows.len());
        let (mut s, mut a) = (structural, artificial_start);
        for (coeffs, cmp, rhs) in &lp.rows {
            let mut row = vec![Rational::zero(); ncols + 1];
            for (v, c) in coeffs.iter().enumerate() {
                let (p, n) = map[v];
                row[p] = c.clone();
                if let Some(n) = n {
                    row[n] = -c;
                }
            }
            let slack_col = match cmp {
                Cmp::Eq => None,
                Cmp::Le => Some((s, Rational::one())),
                Cmp::Ge => Some((s, -Rational::one())),
            };
            if slack_col.is_some() {
                s += 1;
            }
            if let Some((c, v)) = &slack_col {
                row[*c] = v.clone();
            }
            row[ncols] = rhs.clone();
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
            match slack_col {
                Some((c, _)) if row[c].is_positive() => basis.push(c),
                _ => {
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
            }
            t.push(row);
        }
        Tableau {
            t,
            basis,
            ncols,
            map,
            artificial_start,
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpResult {
        let mut phase1 = vec![Rational::zero(); self.ncols];
        for c in phase1.iter_mut().skip(self.artificial_start) {
            *c = Rational::one();
        }
        let all = vec![true; self.ncols];
        self.optimize(&phase1, &all);
        if self.value(&phase1).is_positive() {
            return LpResult::Infeasible;
        }
        self.drive_out_artificials();
        let mut cost = vec![Rational::zero(); self.ncols];
        for (v, c) in lp.objective.iter().enumerate() {
            let (p, n) = self.map[v];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c;
            }
        }
        let allowed: Vec<bool> = (0..self.ncols).map(|j| j < self.artificial_start).collect();
        if !self.optimize(&cost, &allowed) {
            return LpResult::Unbounded;
        }
        let mut col_val = vec![Rational::zero(); self.ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            col_val[b] = self.t[r][self.ncols].clone();
        }
        let x: Vec<Rational> = self
            .map
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_val[p] - &col_val[n],
                None => col_val[p].clone(),
            })
            .collect();
        let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        LpResult::Optimal { x, value }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(r, &b)| &cost[b] * &self.t[r][self.ncols])
            .sum()
    }

    /// Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[r][j].is_zero() {
                        rc -= &cost[b] * &self.t[r][j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.t.len() {
                if self.t[r][j].is_positive() {
                    let ratio = &self.t[r][self.ncols] / &self.t[r][j];
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => {
                            ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.t[r][j].recip();
        for v in self.t[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = j;
    }

    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.t.len() {
            if self.basis[r] >= self.artificial_start {
                match (0..self.artificial_start).find(|&j| !self.t[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        // redundant row
                        self.t.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}
