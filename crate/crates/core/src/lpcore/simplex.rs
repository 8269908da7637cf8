//! Dense two-phase simplex over the rationals for problems in the form
//! `max c·z  s.t.  A z = b, z >= 0, b >= 0`, using Bland's rule throughout.

use num_traits::{Signed, Zero};

use crate::exactmath::Rational;

pub(crate) enum StandardOutcome {
    Infeasible,
    Optimal(Vec<Rational>),
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

pub(crate) struct StandardProblem {
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub ncols: usize,
    /// Per row, a column that is a unit vector with +1 in that row, usable as
    /// an initial basic variable.
    pub unit_hint: Vec<Option<usize>>,
}

struct Tableau {
    // m rows of width `width + 1`; the last entry is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
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
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over the columns `< allowed`.
    fn run(&mut self, obj: &[Rational], allowed: usize) -> Step {
        let rhs = self.width;
        loop {
            let mut in_basis = vec![false; self.width];
            for &b in &self.basis {
                in_basis[b] = true;
            }
            let entering = (0..allowed).find(|&j| {
                if in_basis[j] {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (row, &b) in self.t.iter().zip(&self.basis) {
                    if !obj[b].is_zero() && !row[j].is_zero() {
                        rc -= &obj[b] * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return Step::Unbounded(j),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); n];
        for (row, &b) in self.t.iter().zip(&self.basis) {
            if b < n {
                z[b] = row[self.width].clone();
            }
        }
        z
    }
}

pub(crate) fn solve_standard(
    p: StandardProblem,
    objective: Option<&[Rational]>,
) -> StandardOutcome {
    let m = p.rows.len();
    let n = p.ncols;
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| p.unit_hint[i].is_none()).collect();
    let width = n + artificial_rows.len();
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = n;
    for (i, (row, b)) in p.rows.into_iter().zip(p.rhs).enumerate() {
        let mut r = row;
        r.resize(width, Rational::zero());
        match p.unit_hint[i] {
            Some(c) => basis.push(c),
            None => {
                r[next_art] = Rational::from_integer(1.into());
                basis.push(next_art);
                next_art += 1;
            }
        }
        r.push(b);
        t.push(r);
    }
    let mut tab = Tableau { t, basis, width };

    if !artificial_rows.is_empty() {
        let mut phase1 = vec![Rational::zero(); width];
        for x in phase1.iter_mut().skip(n) {
            *x = Rational::from_integer((-1).into());
        }
        // Phase 1 is bounded above by zero, so it always terminates optimally.
        let _ = tab.run(&phase1, width);
        let infeasible = tab
            .t
            .iter()
            .zip(&tab.basis)
            .any(|(row, &b)| b >= n && !row[width].is_zero());
        if infeasible {
            return StandardOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= n {
                match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let Some(c) = objective else {
        return StandardOutcome::Optimal(tab.solution(n));
    };
    let mut obj = c.to_vec();
    obj.resize(width, Rational::zero());
    match tab.run(&obj, n) {
        Step::Optimal => StandardOutcome::Optimal(tab.solution(n)),
        Step::Unbounded(j) => {
            let mut ray = vec![Rational::zero(); n];
            ray[j] = Rational::from_integer(1.into());
            for (row, &b) in tab.t.iter().zip(&tab.basis) {
                if b < n {
                    ray[b] = -row[j].clone();
                }
            }
            StandardOutcome::Unbounded {
                point: tab.solution(n),
                ray,
            }
        }
    }
}
