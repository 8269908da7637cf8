//! Exact MaxHyp: the hyperplane containing the most input points.
//!
//! A point set of affine rank at most `D - 1` lies on one hyperplane.
//! Otherwise an optimal hyperplane can be turned about its points until it
//! is spanned by `D` affinely independent input points, so enumerating
//! `D`-subsets suffices.

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::exactmath::{affine_rank, common_dimension, hyperplane_through, Hyperplane, Point};
use crate::par;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxHypReport {
    pub hyperplane: Hyperplane,
    pub count: usize,
    /// Spanning subsets examined.
    pub candidates: u64,
}

/// Ties go to the smallest canonical hyperplane.
pub fn maxhyp_exact(points: &[Point], dimension: usize) -> Result<MaxHypReport> {
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
    if affine_rank(points)? < dimension {
        let hyperplane = hyperplane_through(points, dimension)?;
        return Ok(MaxHypReport {
            hyperplane,
            count: points.len(),
            candidates: 1,
        });
    }
    if let Some(report) = int_points(points).and_then(|pts| maxhyp_int(&pts, dimension)) {
        return Ok(report);
    }
    maxhyp_rational(points, dimension)
}

fn maxhyp_rational(points: &[Point], dimension: usize) -> Result<MaxHypReport> {
    let n = points.len();
    let per_first = par::map_range(n, |first| best_with_first(points, dimension, first));
    let mut best = None;
    let mut candidates = 0;
    for (b, e) in per_first {
        candidates += e;
        if let Some((c, h)) = b {
            if better(c, &h, &best) {
                best = Some((c, h));
            }
        }
    }
    let (count, hyperplane) = best.ok_or_else(|| Error::Internal("no spanning subset".into()))?;
    Ok(MaxHypReport {
        hyperplane,
        count,
        candidates,
    })
}

// Best hyperplane over D-subsets whose smallest index is `first`.
fn best_with_first(
    points: &[Point],
    dimension: usize,
    first: usize,
) -> (Option<(usize, Hyperplane)>, u64) {
    let n = points.len();
    let mut best: Option<(usize, Hyperplane)> = None;
    let mut examined = 0u64;
    if first + dimension > n {
        return (best, examined);
    }
    let mut idx: Vec<usize> = (first..first + dimension).collect();
    loop {
        let subset: Vec<Point> = idx.iter().map(|&i| points[i].clone()).collect();
        if affine_rank(&subset).ok() == Some(dimension - 1) {
            examined += 1;
            let h = hyperplane_through(&subset, dimension).expect("rank checked");
            let c = h.count(points);
            if better(c, &h, &best) {
                best = Some((c, h));
            }
        }
        // Next combination with idx[0] held fixed.
        let mut pos = dimension;
        loop {
            if pos <= 1 {
                return (best, examined);
            }
            pos -= 1;
            if idx[pos] < n - (dimension - pos) {
                idx[pos] += 1;
                for t in pos + 1..dimension {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

// Machine-integer path for integer inputs. Every operation is checked and
// any overflow abandons it for the rational path, so answers are identical.

const INT_LIMIT: i64 = 1 << 20;

fn int_points(points: &[Point]) -> Option<Vec<Vec<i128>>> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    let v = x.to_integer();
                    (x.is_integer() && v.abs() <= BigInt::from(INT_LIMIT)).then(|| v.to_i128())?
                })
                .collect()
        })
        .collect()
}

/// Integer normal and offset, primitive with a positive leading entry.
type IntPlane = (Vec<i128>, i128);

fn maxhyp_int(points: &[Vec<i128>], dimension: usize) -> Option<MaxHypReport> {
    let per_first = par::map_range(points.len(), |first| {
        int_best_with_first(points, dimension, first)
    });
    let mut count = 0;
    let mut ties: Vec<IntPlane> = Vec::new();
    let mut candidates = 0;
    for r in per_first {
        let (c, t, e) = r?;
        candidates += e;
        if c > count {
            count = c;
            ties = t;
        } else if c == count {
            ties.extend(t);
        }
    }
    ties.sort_unstable();
    ties.dedup();
    let hyperplane = ties
        .into_iter()
        .map(|(n, c)| {
            let n = n
                .into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect();
            Hyperplane::new(n, Rational::from_integer(c.into()))
                .expect("nonzero normal")
                .canonical()
        })
        .min()?;
    Some(MaxHypReport {
        hyperplane,
        count,
        candidates,
    })
}

fn int_best_with_first(
    points: &[Vec<i128>],
    d: usize,
    first: usize,
) -> Option<(usize, Vec<IntPlane>, u64)> {
    let n = points.len();
    let mut best = 0;
    let mut ties = Vec::new();
    let mut examined = 0u64;
    if first + d > n {
        return Some((best, ties, examined));
    }
    let mut idx: Vec<usize> = (first..first + d).collect();
    loop {
        if let Some(h) = int_plane(points, &idx)? {
            examined += 1;
            let mut c = 0;
            for p in points {
                c += usize::from(int_dot(&h.0, p)? == h.1);
            }
            if c > best {
                best = c;
                ties.clear();
            }
            if c == best {
                ties.push(h);
            }
        }
        let mut pos = d;
        loop {
            if pos <= 1 {
                return Some((best, ties, examined));
            }
            pos -= 1;
            if idx[pos] < n - (d - pos) {
                idx[pos] += 1;
                for t in pos + 1..d {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn int_dot(a: &[i128], b: &[i128]) -> Option<i128> {
    a.iter()
        .zip(b)
        .try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
}

/// Hyperplane through the indexed points by cofactors; `Some(None)` when they
/// do not span one, `None` on overflow.
fn int_plane(points: &[Vec<i128>], idx: &[usize]) -> Option<Option<IntPlane>> {
    let d = idx.len();
    let base = &points[idx[0]];
    let diffs: Vec<Vec<i128>> = idx[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(x, b)| x - b).collect())
        .collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<i128>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| *x)
                    .collect()
            })
            .collect();
        let det = bareiss(minor)?;
        normal.push(if j % 2 == 0 { det } else { det.checked_neg()? });
    }
    let Some(lead) = normal.iter().copied().find(|x| *x != 0) else {
        return Some(None);
    };
    let g = normal.iter().fold(0i128, |g, x| gcd(g, *x));
    let g = if lead < 0 { -g } else { g };
    for x in normal.iter_mut() {
        *x /= g;
    }
    let offset = int_dot(&normal, base)?;
    Some(Some((normal, offset)))
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Fraction-free elimination; every division is exact.
fn bareiss(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Some(0);
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(if n == 0 { 1 } else { sign * m[n - 1][n - 1] })
}

fn better(c: usize, h: &Hyperplane, best: &Option<(usize, Hyperplane)>) -> bool {
    match best {
        None => true,
        Some((bc, bh)) => c > *bc || (c == *bc && h < bh),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_point, rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn integer_path_matches_rational_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..150 {
            let d = rng.gen_range(1..=4usize);
            let k = rng.gen_range(d + 1..=14);
            let span = rng.gen_range(1..=4);
            let pts: Vec<Point> = (0..k)
                .map(|_| {
                    (0..d)
                        .map(|_| rng.gen_range(-span..=span))
                        .collect::<Vec<i64>>()
                })
                .map(|p| int_point(&p))
                .collect();
            if affine_rank(&pts).unwrap() < d {
                continue;
            }
            let fast = maxhyp_int(&int_points(&pts).unwrap(), d).unwrap();
            assert_eq!(fast, maxhyp_rational(&pts, d).unwrap(), "{pts:?}");
        }
    }

    #[test]
    fn huge_coordinates_fall_back() {
        let big = Rational::from_integer(BigInt::from(1) << 80);
        let pts = vec![
            vec![big.clone(), rat(0)],
            vec![rat(0), big],
            vec![rat(1), rat(1)],
        ];
        assert!(int_points(&pts).is_none());
        assert_eq!(maxhyp_exact(&pts, 2).unwrap().count, 2);
    }

    #[test]
    fn collinear_majority_in_the_plane() {
        let pts: Vec<Point> = [[0, 0], [1, 1], [2, 2], [3, 3], [0, 5], [5, 0]]
            .iter()
            .map(|p| int_point(p))
            .collect();
        let r = maxhyp_exact(&pts, 2).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(
            r.hyperplane,
            Hyperplane::new(int_point(&[1, -1]), ratio(0, 1)).unwrap()
        );
    }

    #[test]
    fn low_rank_input_lies_on_one_hyperplane() {
        let pts = vec![int_point(&[1, 2, 3]), int_point(&[2, 4, 6])];
        let r = maxhyp_exact(&pts, 3).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.candidates, 1);
    }

    #[test]
    fn ties_go_to_smallest_canonical() {
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|p| int_point(p))
            .collect();
        let r = maxhyp_exact(&pts, 2).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.candidates, 6);
        let mut all: Vec<Hyperplane> = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                all.push(hyperplane_through(&[pts[i].clone(), pts[j].clone()], 2).unwrap());
            }
        }
        assert_eq!(&r.hyperplane, all.iter().min().unwrap());
    }

    #[test]
    fn one_dimensional_input() {
        let pts: Vec<Point> = [[3], [1], [3], [2]].iter().map(|p| int_point(p)).collect();
        let r = maxhyp_exact(&pts, 1).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(
            r.hyperplane,
            Hyperplane::new(int_point(&[1]), ratio(3, 1)).unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(maxhyp_exact(&[], 2), Err(Error::EmptyInput));
        assert!(maxhyp_exact(&[int_point(&[1, 2])], 3).is_err());
    }
}
