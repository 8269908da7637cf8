//! Exact linear programming with verifiable outcomes, plus the convex-hull
//! subroutines built on it.
//!
//! Variables are free unless marked nonnegative. Every outcome can be checked
//! by re-substitution: assignments satisfy all constraints, infeasibility comes
//! with Farkas multipliers, unboundedness with an improving ray.

mod hull;
mod simplex;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{dot, Rational};
use simplex::{solve_standard, StandardOutcome, StandardProblem};

pub use hull::{
    flat_hull_intersection, flat_meets_hull, hull_intersection_point, hulls_intersect, HullMeeting,
    SeparationResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub variables: usize,
    /// Variables constrained to be `>= 0`; all others are free.
    pub nonnegative: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Objective>,
}

impl LpInstance {
    pub fn new(variables: usize) -> Self {
        Self {
            variables,
            nonnegative: vec![false; variables],
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn set_nonnegative(&mut self, var: usize) -> &mut Self {
        self.nonnegative[var] = true;
        self
    }

    pub fn constrain(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn maximize(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.objective = Some(Objective {
            coeffs,
            sense: Sense::Maximize,
        });
        self
    }

    pub fn minimize(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.objective = Some(Objective {
            coeffs,
            sense: Sense::Minimize,
        });
        self
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.variables
            && self
                .nonnegative
                .iter()
                .zip(x)
                .all(|(&nn, v)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| c.holds(x))
    }

    pub fn objective_value(&self, x: &[Rational]) -> Option<Rational> {
        self.objective.as_ref().map(|o| dot(&o.coeffs, x))
    }

    fn validate(&self) -> Result<()> {
        if self.nonnegative.len() != self.variables {
            return Err(Error::MalformedInstance(
                "sign vector length differs from variable count".into(),
            ));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.variables {
                return Err(Error::MalformedInstance(format!(
                    "constraint {i} has {} coefficients, expected {}",
                    c.coeffs.len(),
                    self.variables
                )));
            }
        }
        if let Some(o) = &self.objective {
            if o.coeffs.len() != self.variables {
                return Err(Error::MalformedInstance(
                    "objective length differs from variable count".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Multipliers proving infeasibility.
///
/// Each constraint is read in `<=` orientation (`>=` rows negated). Multipliers
/// of inequality rows are nonnegative, those of equality rows are free. The
/// combined row has zero coefficients on free variables and nonnegative ones
/// on nonnegative variables, while the combined right-hand side is `-1`: the
/// contradiction `0 <= (combined row)·x <= -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    /// Combined `(row, rhs)` in `<=` orientation.
    pub fn combine(&self, inst: &LpInstance) -> (Vec<Rational>, Rational) {
        let mut row = vec![Rational::zero(); inst.variables];
        let mut rhs = Rational::zero();
        for (c, y) in inst.constraints.iter().zip(&self.multipliers) {
            let y = if c.relation == Relation::Ge {
                -y.clone()
            } else {
                y.clone()
            };
            for (r, a) in row.iter_mut().zip(&c.coeffs) {
                *r += &y * a;
            }
            rhs += &y * &c.rhs;
        }
        (row, rhs)
    }

    pub fn verify(&self, inst: &LpInstance) -> bool {
        if self.multipliers.len() != inst.constraints.len() {
            return false;
        }
        let signs_ok = inst
            .constraints
            .iter()
            .zip(&self.multipliers)
            .all(|(c, y)| c.relation == Relation::Eq || !y.is_negative());
        let (row, rhs) = self.combine(inst);
        let row_ok =
            row.iter()
                .zip(&inst.nonnegative)
                .all(|(a, &nn)| if nn { !a.is_negative() } else { a.is_zero() });
        signs_ok && row_ok && rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Optimal {
        assignment: Vec<Rational>,
        value: Rational,
    },
    Infeasible(FarkasCertificate),
    Unbounded {
        assignment: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn assignment(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Optimal { assignment, .. } | LpOutcome::Unbounded { assignment, .. } => {
                Some(assignment)
            }
            LpOutcome::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible(_))
    }
}

// Column layout of the standard form: each free variable is split into a
// positive and a negative part, nonnegative variables keep one column, and
// every inequality row gets a slack.
struct Layout {
    pos: Vec<usize>,
    neg: Vec<Option<usize>>,
    ncols: usize,
}

fn to_standard(inst: &LpInstance) -> (StandardProblem, Layout) {
    let mut pos = Vec::with_capacity(inst.variables);
    let mut neg = Vec::with_capacity(inst.variables);
    let mut next = 0;
    for &nn in &inst.nonnegative {
        pos.push(next);
        next += 1;
        if nn {
            neg.push(None);
        } else {
            neg.push(Some(next));
            next += 1;
        }
    }
    let slack_start = next;
    let nslack = inst
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let ncols = slack_start + nslack;
    let mut rows = Vec::with_capacity(inst.constraints.len());
    let mut rhs = Vec::with_capacity(inst.constraints.len());
    let mut unit_hint = Vec::with_capacity(inst.constraints.len());
    let mut slack = slack_start;
    for c in &inst.constraints {
        let mut row = vec![Rational::zero(); ncols];
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            row[pos[j]] = a.clone();
            if let Some(nj) = neg[j] {
                row[nj] = -a.clone();
            }
        }
        let mut b = c.rhs.clone();
        let mut slack_col = None;
        match c.relation {
            Relation::Le => {
                row[slack] = Rational::one();
                slack_col = Some(slack);
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack_col = Some(slack);
                slack += 1;
            }
            Relation::Eq => {}
        }
        let flip = b.is_negative() || (c.relation == Relation::Ge && b.is_zero());
        if flip {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        let hint = slack_col.filter(|&s| row[s].is_one());
        rows.push(row);
        rhs.push(b);
        unit_hint.push(hint);
    }
    (
        StandardProblem {
            rows,
            rhs,
            ncols,
            unit_hint,
        },
        Layout { pos, neg, ncols },
    )
}

fn recover(layout: &Layout, z: &[Rational]) -> Vec<Rational> {
    layout
        .pos
        .iter()
        .zip(&layout.neg)
        .map(|(&p, n)| match n {
            Some(n) => &z[p] - &z[*n],
            None => z[p].clone(),
        })
        .collect()
}

/// Solves `inst` exactly with a deterministic Bland-rule simplex.
pub fn lp_solve(inst: &LpInstance) -> Result<LpOutcome> {
    inst.validate()?;
    let (problem, layout) = to_standard(inst);
    let objective = inst.objective.as_ref().map(|o| {
        let mut c = vec![Rational::zero(); layout.ncols];
        for (j, a) in o.coeffs.iter().enumerate() {
            let a = if o.sense == Sense::Minimize {
                -a.clone()
            } else {
                a.clone()
            };
            if let Some(nj) = layout.neg[j] {
                c[nj] = -a.clone();
            }
            c[layout.pos[j]] = a;
        }
        c
    });
    let outcome = match solve_standard(problem, objective.as_deref()) {
        StandardOutcome::Infeasible => LpOutcome::Infeasible(farkas(inst)?),
        StandardOutcome::Optimal(z) => {
            let x = recover(&layout, &z);
            match inst.objective_value(&x) {
                Some(value) => LpOutcome::Optimal {
                    assignment: x,
                    value,
                },
                None => LpOutcome::Feasible(x),
            }
        }
        StandardOutcome::Unbounded { point, ray } => LpOutcome::Unbounded {
            assignment: recover(&layout, &point),
            ray: recover(&layout, &ray),
        },
    };
    debug_assert!(match &outcome {
        LpOutcome::Infeasible(c) => c.verify(inst),
        other => inst.is_satisfied_by(other.assignment().unwrap()),
    });
    Ok(outcome)
}

/// Feasibility only: the assignment, or `None` if infeasible. Skips the
/// certificate computation.
pub fn lp_feasible_point(inst: &LpInstance) -> Result<Option<Vec<Rational>>> {
    inst.validate()?;
    let (problem, layout) = to_standard(inst);
    Ok(match solve_standard(problem, None) {
        StandardOutcome::Optimal(z) => Some(recover(&layout, &z)),
        _ => None,
    })
}

// Solves the alternative system whose solutions are exactly the Farkas
// certificates; it is feasible whenever the primal is infeasible.
fn farkas(inst: &LpInstance) -> Result<FarkasCertificate> {
    let m = inst.constraints.len();
    let mut alt = LpInstance::new(m);
    let oriented: Vec<(Vec<Rational>, Rational)> = inst
        .constraints
        .iter()
        .map(|c| {
            if c.relation == Relation::Ge {
                (
                    c.coeffs.iter().map(|a| -a.clone()).collect(),
                    -c.rhs.clone(),
                )
            } else {
                (c.coeffs.clone(), c.rhs.clone())
            }
        })
        .collect();
    for (i, c) in inst.constraints.iter().enumerate() {
        if c.relation != Relation::Eq {
            alt.set_nonnegative(i);
        }
    }
    for j in 0..inst.variables {
        let col: Vec<Rational> = oriented.iter().map(|(row, _)| row[j].clone()).collect();
        let rel = if inst.nonnegative[j] {
            Relation::Ge
        } else {
            Relation::Eq
        };
        alt.constrain(col, rel, Rational::zero());
    }
    alt.constrain(
        oriented.iter().map(|(_, b)| b.clone()).collect(),
        Relation::Eq,
        -Rational::one(),
    );
    let y = lp_feasible_point(&alt)?
        .ok_or_else(|| Error::Internal("Farkas alternative system is infeasible".into()))?;
    let cert = FarkasCertificate { multipliers: y };
    if !cert.verify(inst) {
        return Err(Error::Internal(
            "Farkas certificate failed re-verification".into(),
        ));
    }
    Ok(cert)
}
