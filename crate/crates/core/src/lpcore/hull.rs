use num_traits::{One, Signed, Zero};

use super::{lp_feasible_point, lp_solve, LpInstance, LpOutcome, Relation};
use crate::error::{Error, Result};
use crate::exactmath::{combination, common_dimension, Flat, Hyperplane, Point, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationResult {
    Intersecting {
        point: Point,
        weights_a: Vec<Rational>,
        weights_b: Vec<Rational>,
    },
    /// `normal·p - offset >= margin` on side A and `<= -margin` on side B.
    Separated {
        hyperplane: Hyperplane,
        margin: Rational,
    },
}

impl SeparationResult {
    pub fn is_intersecting(&self) -> bool {
        matches!(self, SeparationResult::Intersecting { .. })
    }
}

fn check_sides(a: &[Point], b: &[Point]) -> Result<usize> {
    let da = common_dimension(a)?;
    let db = common_dimension(b)?;
    if da != db {
        return Err(Error::DimensionMismatch {
            expected: da,
            found: db,
        });
    }
    Ok(da)
}

/// Decides whether `conv(a)` and `conv(b)` meet. Disjoint hulls come with the
/// maximum-margin separator under the box normalization `-1 <= normal_j <= 1`.
pub fn hulls_intersect(a: &[Point], b: &[Point]) -> Result<SeparationResult> {
    let dim = check_sides(a, b)?;
    if let Some((point, weights_a, weights_b)) = hull_intersection_point(a, b)? {
        return Ok(SeparationResult::Intersecting {
            point,
            weights_a,
            weights_b,
        });
    }

    // Variables: normal (dim), offset, margin.
    let nv = dim + 2;
    let mut sep = LpInstance::new(nv);
    for p in a {
        let mut row: Vec<Rational> = p.clone();
        row.push(-Rational::one());
        row.push(-Rational::one());
        sep.constrain(row, Relation::Ge, Rational::zero());
    }
    for q in b {
        let mut row: Vec<Rational> = q.clone();
        row.push(-Rational::one());
        row.push(Rational::one());
        sep.constrain(row, Relation::Le, Rational::zero());
    }
    for j in 0..dim {
        let mut e = vec![Rational::zero(); nv];
        e[j] = Rational::one();
        sep.constrain(e.clone(), Relation::Le, Rational::one());
        sep.constrain(e, Relation::Ge, -Rational::one());
    }
    let mut obj = vec![Rational::zero(); nv];
    obj[dim + 1] = Rational::one();
    sep.maximize(obj);
    match lp_solve(&sep)? {
        LpOutcome::Optimal { assignment, value } if value.is_positive() => {
            let hyperplane = Hyperplane::new(assignment[..dim].to_vec(), assignment[dim].clone())?;
            Ok(SeparationResult::Separated {
                hyperplane,
                margin: value,
            })
        }
        other => Err(Error::Internal(format!(
            "disjoint hulls without a positive-margin separator: {other:?}"
        ))),
    }
}

/// Common point with the convex weights on side A and on side B.
pub type HullMeeting = (Point, Vec<Rational>, Vec<Rational>);

/// A common point of `conv(a)` and `conv(b)` with convex weights on each
/// side, or `None` when the hulls are disjoint. Skips the separator LP.
pub fn hull_intersection_point(a: &[Point], b: &[Point]) -> Result<Option<HullMeeting>> {
    let dim = check_sides(a, b)?;
    let (na, nb) = (a.len(), b.len());

    // Convex weights λ over A and μ over B with Σλa = Σμb.
    let mut lp = LpInstance::new(na + nb);
    for v in 0..na + nb {
        lp.set_nonnegative(v);
    }
    let ones = |range: std::ops::Range<usize>| -> Vec<Rational> {
        (0..na + nb)
            .map(|v| {
                if range.contains(&v) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    lp.constrain(ones(0..na), Relation::Eq, Rational::one());
    lp.constrain(ones(na..na + nb), Relation::Eq, Rational::one());
    for x in 0..dim {
        let row = a
            .iter()
            .map(|p| p[x].clone())
            .chain(b.iter().map(|q| -q[x].clone()))
            .collect();
        lp.constrain(row, Relation::Eq, Rational::zero());
    }
    Ok(lp_feasible_point(&lp)?.map(|w| {
        let (wa, wb) = w.split_at(na);
        (combination(a, wa, dim), wa.to_vec(), wb.to_vec())
    }))
}

/// A point of `flat ∩ conv(set)` together with the convex weights over `set`
/// that produce it. Vertices already on the flat are preferred, first one wins.
pub fn flat_hull_intersection(
    flat: &Flat,
    set: &[Point],
) -> Result<Option<(Point, Vec<Rational>)>> {
    let dim = common_dimension(set)?;
    if dim != flat.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: flat.ambient_dim(),
            found: dim,
        });
    }
    for (i, p) in set.iter().enumerate() {
        if flat.contains(p)? {
            let mut w = vec![Rational::zero(); set.len()];
            w[i] = Rational::one();
            return Ok(Some((p.clone(), w)));
        }
    }
    // Variables: convex weights over the set, then free flat coordinates.
    let n = set.len();
    let m = flat.dim();
    let mut lp = LpInstance::new(n + m);
    for v in 0..n {
        lp.set_nonnegative(v);
    }
    let mut sum = vec![Rational::one(); n];
    sum.resize(n + m, Rational::zero());
    lp.constrain(sum, Relation::Eq, Rational::one());
    for x in 0..dim {
        let row = set
            .iter()
            .map(|p| p[x].clone())
            .chain(flat.basis().iter().map(|b| -b[x].clone()))
            .collect();
        lp.constrain(row, Relation::Eq, flat.base()[x].clone());
    }
    Ok(lp_feasible_point(&lp)?.map(|w| {
        let weights = w[..n].to_vec();
        (combination(set, &weights, dim), weights)
    }))
}

pub fn flat_meets_hull(flat: &Flat, set: &[Point]) -> Result<Option<Point>> {
    Ok(flat_hull_intersection(flat, set)?.map(|(p, _)| p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{flat_from_points, int_point, is_convex_weights, rat, ratio};

    #[test]
    fn separated_points_on_a_line() {
        let r = hulls_intersect(&[int_point(&[0])], &[int_point(&[1])]).unwrap();
        let SeparationResult::Separated { hyperplane, margin } = r else {
            panic!("expected separation");
        };
        assert_eq!(margin, ratio(1, 2));
        let expected = Hyperplane::new(vec![rat(1)], ratio(1, 2)).unwrap();
        assert!(hyperplane.same_set(&expected));
        assert!(hyperplane.evaluate(&int_point(&[0])) >= margin);
        assert!(hyperplane.evaluate(&int_point(&[1])) <= -margin);
    }

    #[test]
    fn segment_contains_point() {
        let r = hulls_intersect(&[int_point(&[0]), int_point(&[2])], &[int_point(&[1])]).unwrap();
        assert_eq!(
            r,
            SeparationResult::Intersecting {
                point: int_point(&[1]),
                weights_a: vec![ratio(1, 2), ratio(1, 2)],
                weights_b: vec![rat(1)],
            }
        );
    }

    #[test]
    fn triangle_contains_interior_point() {
        let tri = [int_point(&[0, 0]), int_point(&[2, 0]), int_point(&[0, 2])];
        let q = vec![ratio(1, 2), ratio(1, 2)];
        let SeparationResult::Intersecting {
            point,
            weights_a,
            weights_b,
        } = hulls_intersect(&tri, std::slice::from_ref(&q)).unwrap()
        else {
            panic!("expected intersection");
        };
        assert_eq!(point, q);
        assert!(is_convex_weights(&weights_a));
        assert_eq!(weights_b, vec![rat(1)]);
        assert_eq!(combination(&tri, &weights_a, 2), q);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(
            hulls_intersect(&[], &[int_point(&[1])]),
            Err(Error::EmptyInput)
        );
        assert!(matches!(
            hulls_intersect(&[int_point(&[1])], &[int_point(&[1, 2])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn flat_meets_hull_examples() {
        let axis = flat_from_points(&[int_point(&[0, 0]), int_point(&[1, 0])]).unwrap();
        let seg = [int_point(&[1, -1]), int_point(&[1, 1])];
        assert_eq!(
            flat_meets_hull(&axis, &seg).unwrap(),
            Some(int_point(&[1, 0]))
        );
        let above = [int_point(&[0, 1]), int_point(&[1, 2])];
        assert_eq!(flat_meets_hull(&axis, &above).unwrap(), None);
        let plane = flat_from_points(&[int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[0, 1])])
            .unwrap();
        let s = [int_point(&[7, 3]), int_point(&[-1, 4])];
        assert_eq!(
            flat_meets_hull(&plane, &s).unwrap(),
            Some(int_point(&[7, 3]))
        );
        assert!(flat_meets_hull(&plane, &[]).is_err());
    }
}
