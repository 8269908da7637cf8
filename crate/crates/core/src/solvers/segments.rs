//! Hyperplane transversals of closed segment families.
//!
//! A hyperplane `a·x = a0` meets `[P, Q]` iff `a·P - a0` and `a·Q - a0` have
//! opposite weak signs, so each segment contributes one of two linear
//! orientation patterns. The search fixes `a_j = 1` for some coordinate `j`
//! (negating a solution flips every orientation, so the sign of `a_j` is
//! free) and walks orientations depth-first, pruning with exact LP
//! feasibility. A child reuses its parent's LP solution when that already
//! satisfies the new pattern.

use crate::error::{Error, Result};
use crate::exactmath::{Hyperplane, Point, Rational};
use crate::lpcore::{lp_feasible_point, Constraint, LpInstance, Relation};
use crate::par;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentFamily {
    dimension: usize,
    segments: Vec<(Point, Point)>,
}

impl SegmentFamily {
    pub fn new(dimension: usize, segments: Vec<(Point, Point)>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::MalformedInstance(
                "dimension must be at least 1".into(),
            ));
        }
        for (p, q) in &segments {
            for x in [p, q] {
                if x.len() != dimension {
                    return Err(Error::DimensionMismatch {
                        expected: dimension,
                        found: x.len(),
                    });
                }
            }
        }
        Ok(Self {
            dimension,
            segments,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn segments(&self) -> &[(Point, Point)] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn is_transversal(&self, h: &Hyperplane) -> bool {
        h.dimension() == self.dimension && self.segments.iter().all(|(p, q)| h.meets_segment(p, q))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SegmentStats {
    pub nodes: u64,
    pub lps: u64,
}

pub fn segment_hyperplane_transversal(family: &SegmentFamily) -> Result<Option<Hyperplane>> {
    Ok(segment_hyperplane_transversal_with_stats(family)?.0)
}

/// The first hyperplane found in the order (pivot coordinate, orientation
/// pattern), in canonical form.
pub fn segment_hyperplane_transversal_with_stats(
    family: &SegmentFamily,
) -> Result<(Option<Hyperplane>, SegmentStats)> {
    let d = family.dimension;
    let mut base = Vec::new();
    let mut open = Vec::new();
    for (p, q) in &family.segments {
        if p == q {
            base.push(Constraint {
                coeffs: row(p, 1),
                relation: Relation::Eq,
                rhs: Rational::zero(),
            });
        } else {
            open.push((p, q));
        }
    }
    let results = par::map_ordered((0..d).collect(), |j| {
        let mut inst = LpInstance::new(d + 1);
        inst.constraints = base.clone();
        let mut pin = vec![Rational::zero(); d + 1];
        pin[j] = Rational::one();
        inst.constrain(pin, Relation::Eq, Rational::one());
        let mut stats = SegmentStats::default();
        let found = Walk { open: &open }.run(inst, &mut stats);
        (found, stats)
    });
    let mut total = SegmentStats::default();
    let mut answer = None;
    for (r, s) in results {
        total.nodes += s.nodes;
        total.lps += s.lps;
        if answer.is_none() {
            answer = r.transpose()?;
        }
    }
    let answer = answer.map(|x: Vec<Rational>| {
        let h =
            Hyperplane::new(x[..d].to_vec(), x[d].clone()).expect("pinned coordinate is nonzero");
        h.canonical()
    });
    if let Some(h) = &answer {
        if !family.is_transversal(h) {
            return Err(Error::Internal(
                "segment transversal failed re-verification".into(),
            ));
        }
    }
    Ok((answer, total))
}

// Coefficients of `sign * (a·p - a0)` over the variables (a, a0).
fn row(p: &[Rational], sign: i64) -> Vec<Rational> {
    let s = Rational::from_integer(sign.into());
    let mut r: Vec<Rational> = p.iter().map(|x| x * &s).collect();
    r.push(-s);
    r
}

struct Walk<'a> {
    open: &'a [(&'a Point, &'a Point)],
}

impl Walk<'_> {
    fn run(&self, inst: LpInstance, stats: &mut SegmentStats) -> Option<Result<Vec<Rational>>> {
        stats.lps += 1;
        match lp_feasible_point(&inst) {
            Err(e) => Some(Err(e)),
            Ok(None) => None,
            Ok(Some(x)) => self.dfs(inst, x, 0, stats),
        }
    }

    fn dfs(
        &self,
        mut inst: LpInstance,
        x: Vec<Rational>,
        depth: usize,
        stats: &mut SegmentStats,
    ) -> Option<Result<Vec<Rational>>> {
        stats.nodes += 1;
        let Some((p, q)) = self.open.get(depth) else {
            return Some(Ok(x));
        };
        let n = inst.constraints.len();
        for sign in [1, -1] {
            inst.constraints.truncate(n);
            inst.constraints.push(Constraint {
                coeffs: row(p, sign),
                relation: Relation::Ge,
                rhs: Rational::zero(),
            });
            inst.constraints.push(Constraint {
                coeffs: row(q, -sign),
                relation: Relation::Ge,
                rhs: Rational::zero(),
            });
            let child = if inst.constraints[n..].iter().all(|c| c.holds(&x)) {
                x.clone()
            } else {
                stats.lps += 1;
                match lp_feasible_point(&inst) {
                    Err(e) => return Some(Err(e)),
                    Ok(None) => continue,
                    Ok(Some(y)) => y,
                }
            };
            if let Some(found) = self.dfs(inst.clone(), child, depth + 1, stats) {
                return Some(found);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_point, ratio};

    fn segs(d: usize, s: &[(&[i64], &[i64])]) -> SegmentFamily {
        SegmentFamily::new(
            d,
            s.iter()
                .map(|(p, q)| (int_point(p), int_point(q)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn parallel_segments_share_a_line() {
        let f = segs(
            2,
            &[(&[0, 0], &[1, 0]), (&[0, 1], &[1, 1]), (&[0, 2], &[1, 2])],
        );
        let h = segment_hyperplane_transversal(&f).unwrap().unwrap();
        assert!(f.is_transversal(&h));
        assert!(h.is_canonical());
    }

    #[test]
    fn three_points_in_general_position_have_none() {
        let f = segs(
            2,
            &[(&[0, 0], &[0, 0]), (&[1, 0], &[1, 0]), (&[0, 1], &[0, 1])],
        );
        assert_eq!(segment_hyperplane_transversal(&f).unwrap(), None);
    }

    #[test]
    fn tiny_segments_near_a_triangle_have_none() {
        let f = SegmentFamily::new(
            2,
            vec![
                (int_point(&[0, 0]), vec![ratio(1, 10), ratio(0, 1)]),
                (int_point(&[1, 0]), vec![ratio(1, 1), ratio(1, 10)]),
                (int_point(&[0, 1]), vec![ratio(1, 10), ratio(1, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(segment_hyperplane_transversal(&f).unwrap(), None);
    }

    #[test]
    fn empty_family_has_a_transversal() {
        let f = SegmentFamily::new(3, vec![]).unwrap();
        assert!(segment_hyperplane_transversal(&f).unwrap().is_some());
    }

    #[test]
    fn vertical_line_through_degenerate_and_open_segments() {
        let f = segs(
            2,
            &[(&[2, 0], &[2, 0]), (&[2, 5], &[2, 5]), (&[0, 1], &[3, 1])],
        );
        let h = segment_hyperplane_transversal(&f).unwrap().unwrap();
        assert_eq!(h, Hyperplane::new(int_point(&[1, 0]), ratio(2, 1)).unwrap());
    }
}
