//! From flat transversals of `m` sets ending in `{0}` to hyperplane
//! transversals.
//!
//! An `(m-2)`-flat meets the sets iff some choice of one point from each of
//! the first `m - 1` sets is linearly dependent (the origin is always
//! chosen). Repaired mode maps the points linearly into `R^{m-1}`, where the
//! same question is a hyperplane question; a linear map never destroys a
//! dependence, so it suffices that no independent choice becomes dependent.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::linalg::{rank, rref};
use crate::exactmath::{Point, PointFamily, Rational};

/// Most point choices the repaired projection is checked against.
pub const PROJECTION_BUDGET: u128 = 1 << 16;

const PROJECTION_ATTEMPTS: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum LiftMode {
    #[default]
    Repaired,
    Paper,
}

impl LiftMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftMode::Repaired => "repaired",
            LiftMode::Paper => "paper",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftGuarantee {
    /// `m = D + 1`: the input already is a hyperplane question.
    Identity,
    /// Coordinates in a basis of the span of all points.
    Exact,
    /// A projection checked on every point choice.
    Verified,
    /// A projection that could not be checked within the budget.
    Unverified,
    /// Padding points that are collinear; answers may flip from no to yes.
    NotPreserving,
}

impl LiftGuarantee {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftGuarantee::Identity => "identity",
            LiftGuarantee::Exact => "exact",
            LiftGuarantee::Verified => "verified",
            LiftGuarantee::Unverified => "unverified",
            LiftGuarantee::NotPreserving => "not-answer-preserving",
        }
    }

    pub fn preserves_answers(self) -> bool {
        matches!(
            self,
            LiftGuarantee::Identity | LiftGuarantee::Exact | LiftGuarantee::Verified
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifted {
    pub family: PointFamily,
    pub guarantee: LiftGuarantee,
}

pub fn flattrans_to_hyptrans(family: &PointFamily, mode: LiftMode) -> Result<Lifted> {
    let d = family.dimension();
    let m = family.len();
    let origin = vec![Rational::zero(); d];
    if family.set(m - 1) != [origin] {
        return Err(Error::PreconditionViolated(
            "the last set must be exactly {0}".into(),
        ));
    }
    if m < 2 || m > d + 1 {
        return Err(Error::PreconditionViolated(format!(
            "need 2 <= m <= D + 1 sets, got m = {m} in dimension {d}"
        )));
    }
    if m == d + 1 {
        return Ok(Lifted {
            family: family.clone(),
            guarantee: LiftGuarantee::Identity,
        });
    }
    match mode {
        LiftMode::Paper => paper(family),
        LiftMode::Repaired => repaired(family),
    }
}

fn paper(family: &PointFamily) -> Result<Lifted> {
    let d = family.dimension();
    let m = family.len();
    let pad = |p: &Point| -> Point {
        let mut q = p.clone();
        q.resize(d + 2, Rational::zero());
        q
    };
    let mut sets: Vec<Vec<Point>> = family.sets()[..m - 1]
        .iter()
        .map(|s| s.iter().map(pad).collect())
        .collect();
    for i in m..=d + 2 {
        let mut s = vec![Rational::zero(); d + 2];
        s[d] = Rational::one();
        s[d + 1] = Rational::from_integer(i.into());
        sets.push(vec![s]);
    }
    sets.push(vec![vec![Rational::zero(); d + 2]]);
    Ok(Lifted {
        family: PointFamily::new(d + 2, sets)?,
        guarantee: LiftGuarantee::NotPreserving,
    })
}

fn repaired(family: &PointFamily) -> Result<Lifted> {
    let m = family.len();
    let target = m - 1;
    let sources = &family.sets()[..m - 1];
    let mut basis: Vec<Vec<Rational>> = sources.iter().flatten().cloned().collect();
    let pivots = rref(&mut basis);
    // Points lie in the row space, so their pivot entries are their
    // coordinates in the reduced basis.
    let coords: Vec<Vec<Point>> = sources
        .iter()
        .map(|s| {
            s.iter()
                .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
                .collect()
        })
        .collect();
    let r = pivots.len();
    let build = |map: &dyn Fn(&Point) -> Point, guarantee| -> Result<Lifted> {
        let mut sets: Vec<Vec<Point>> =
            coords.iter().map(|s| s.iter().map(map).collect()).collect();
        sets.push(vec![vec![Rational::zero(); target]]);
        Ok(Lifted {
            family: PointFamily::new(target, sets)?,
            guarantee,
        })
    };
    if r <= target {
        let pad = |p: &Point| {
            let mut q = p.clone();
            q.resize(target, Rational::zero());
            q
        };
        return build(&pad, LiftGuarantee::Exact);
    }
    let choices = coords
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128));
    let checkable = choices.is_some_and(|c| c <= PROJECTION_BUDGET);
    for attempt in 0..PROJECTION_ATTEMPTS {
        let proj = projection(target, r, attempt);
        let apply = |p: &Point| -> Point {
            proj.iter()
                .map(|row| row.iter().zip(p).map(|(a, x)| a * x).sum())
                .collect()
        };
        if !checkable {
            return build(&apply, LiftGuarantee::Unverified);
        }
        if keeps_independent_choices(&coords, target, &apply) {
            return build(&apply, LiftGuarantee::Verified);
        }
    }
    Err(Error::Internal(
        "no projection preserved every independent choice".into(),
    ))
}

// Vandermonde rows from the first power on; a row of ones would send every
// point with coordinate sum zero to zero. Shifting or scaling the nodes keeps
// the row space, so attempts bend them quadratically instead.
fn projection(rows: usize, cols: usize, attempt: u64) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let j = j as u64;
                    let node = 1 + j + attempt * j * j;
                    Rational::from_integer(num_bigint::BigInt::from(node).pow(i as u32 + 1))
                })
                .collect()
        })
        .collect()
}

fn keeps_independent_choices(
    coords: &[Vec<Point>],
    target: usize,
    apply: &dyn Fn(&Point) -> Point,
) -> bool {
    let mapped: Vec<Vec<Point>> = coords
        .iter()
        .map(|s| s.iter().map(apply).collect())
        .collect();
    let mut idx = vec![0usize; coords.len()];
    loop {
        let before: Vec<Point> = idx
            .iter()
            .enumerate()
            .map(|(s, &j)| coords[s][j].clone())
            .collect();
        if rank(&before) == target {
            let after: Vec<Point> = idx
                .iter()
                .enumerate()
                .map(|(s, &j)| mapped[s][j].clone())
                .collect();
            if rank(&after) < target {
                return false;
            }
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < coords[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
