//! Approximate MaxHyp for point inputs.
//!
//! With `k` points in `R^D` and `f(k) = log2 k / log2 log2 k`:
//! few points lie on one hyperplane; when `f(k) < D` any `D` points already
//! give a hyperplane with `D` incidences; otherwise the points are cut into
//! groups of about `f(k)` and every hyperplane spanned inside a group is tried.

use crate::error::{Error, Result};
use crate::exactmath::{affine_rank, common_dimension, hyperplane_through, Hyperplane, Point};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproxCase {
    AllPoints,
    AnyDPoints,
    Grouped,
}

impl ApproxCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ApproxCase::AllPoints => "all-points",
            ApproxCase::AnyDPoints => "any-d-points",
            ApproxCase::Grouped => "grouped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxReport {
    pub hyperplane: Hyperplane,
    /// Incidences with multiplicity.
    pub count: usize,
    pub case: ApproxCase,
    pub fk: f64,
    /// Nominal group size; only set in the grouped case.
    pub group_size: Option<usize>,
    /// Hyperplanes examined.
    pub candidates: u64,
}

/// Base-2, and 1 for `k <= 4` where the inner logarithm is at most 1.
pub fn f_of_k(k: usize) -> f64 {
    if k <= 4 {
        return 1.0;
    }
    let l = (k as f64).log2();
    l / l.log2()
}

/// Consecutive index ranges of size `g`; a tail shorter than `d` joins the
/// previous group.
pub fn groups(k: usize, g: usize, d: usize) -> Vec<std::ops::Range<usize>> {
    let mut out: Vec<std::ops::Range<usize>> =
        (0..k).step_by(g).map(|s| s..(s + g).min(k)).collect();
    if out.len() > 1 && out.last().is_some_and(|r| r.len() < d) {
        let tail = out.pop().unwrap();
        out.last_mut().unwrap().end = tail.end;
    }
    out
}

pub fn approx_maxhyp(points: &[Point], dimension: usize) -> Result<ApproxReport> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let found = common_dimension(points)?;
    if found != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            found,
        });
    }
    let k = points.len();
    let fk = f_of_k(k);
    if k <= dimension {
        return Ok(ApproxReport {
            hyperplane: hyperplane_through(points, dimension)?,
            count: k,
            case: ApproxCase::AllPoints,
            fk,
            group_size: None,
            candidates: 1,
        });
    }
    if fk < dimension as f64 {
        let hyperplane = hyperplane_through(&points[..dimension], dimension)?;
        return Ok(ApproxReport {
            count: hyperplane.count(points),
            hyperplane,
            case: ApproxCase::AnyDPoints,
            fk,
            group_size: None,
            candidates: 1,
        });
    }
    let g = fk.ceil() as usize;
    let per_group = par::map_ordered(groups(k, g, dimension), |r| {
        best_in_group(points, &points[r], dimension)
    });
    let mut best: Option<(usize, Hyperplane)> = None;
    let mut candidates = 0;
    for (b, n) in per_group {
        candidates += n;
        if let Some((c, h)) = b {
            if best
                .as_ref()
                .is_none_or(|(bc, bh)| c > *bc || (c == *bc && h < *bh))
            {
                best = Some((c, h));
            }
        }
    }
    let (count, hyperplane) =
        best.ok_or_else(|| Error::Internal("group without a candidate".into()))?;
    Ok(ApproxReport {
        hyperplane,
        count,
        case: ApproxCase::Grouped,
        fk,
        group_size: Some(g),
        candidates,
    })
}

fn best_in_group(all: &[Point], group: &[Point], d: usize) -> (Option<(usize, Hyperplane)>, u64) {
    let mut best: Option<(usize, Hyperplane)> = None;
    let mut n = 0u64;
    let mut consider = |h: Hyperplane| {
        n += 1;
        let c = h.count(all);
        if best
            .as_ref()
            .is_none_or(|(bc, bh)| c > *bc || (c == *bc && h < *bh))
        {
            best = Some((c, h));
        }
    };
    // With rank exactly d - 1 some d-subset already spans the same hyperplane.
    if affine_rank(group).is_ok_and(|r| r + 1 < d) {
        consider(hyperplane_through(group, d).expect("rank checked"));
    }
    let m = group.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let subset: Vec<Point> = idx.iter().map(|&i| group[i].clone()).collect();
        if affine_rank(&subset).ok() == Some(d - 1) {
            consider(hyperplane_through(&subset, d).expect("rank checked"));
        }
        let Some(pos) = (0..d).rev().find(|&p| idx[p] < m - (d - p)) else {
            break;
        };
        idx[pos] += 1;
        for t in pos + 1..d {
            idx[t] = idx[t - 1] + 1;
        }
    }
    (best, n)
}
