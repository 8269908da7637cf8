//! Exact rational vectors, affine rank and dependence, flats and hyperplanes.

mod flat;
pub mod linalg;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use flat::{flat_contains, flat_from_points, hyperplane_through, Flat, Hyperplane};

pub type Rational = num_rational::BigRational;
pub type Point = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| rat(c)).collect()
}

/// Parses `"p"` or `"p/q"` (optional sign, `q != 0`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Integer string for integral values, `"p/q"` in lowest terms otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_scaled(acc: &mut [Rational], v: &[Rational], s: &Rational) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

/// `Σ w_i p_i`.
pub fn combination(points: &[Point], weights: &[Rational], dim: usize) -> Point {
    let mut acc = vec![Rational::zero(); dim];
    for (p, w) in points.iter().zip(weights) {
        add_scaled(&mut acc, p, w);
    }
    acc
}

/// Nonnegative weights summing to one.
pub fn is_convex_weights(w: &[Rational]) -> bool {
    !w.is_empty() && w.iter().all(|x| !x.is_negative()) && w.iter().sum::<Rational>().is_one()
}

pub fn homogenize(p: &[Rational]) -> Vec<Rational> {
    let mut h = p.to_vec();
    h.push(Rational::one());
    h
}

pub(crate) fn common_dimension(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
    }
    Ok(dim)
}

/// Dimension of the affine hull: the linear rank of `p_i - p_1`.
pub fn affine_rank(points: &[Point]) -> Result<usize> {
    common_dimension(points)?;
    let base = &points[0];
    let diffs: Vec<_> = points[1..].iter().map(|p| sub(p, base)).collect();
    Ok(linalg::rank(&diffs))
}

/// Nonzero weights with `Σλ = 0` and `Σλ p = 0`, scaled so the first nonzero
/// weight is `+1`, or `None` when the points are affinely independent.
pub fn affine_dependence(points: &[Point]) -> Result<Option<Vec<Rational>>> {
    let dim = common_dimension(points)?;
    let n = points.len();
    // One row per coordinate plus the all-ones row; one column per point.
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|x| points.iter().map(|p| p[x].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); n]);
    let Some(mut lambda) = linalg::nullspace(&rows, n).into_iter().next() else {
        return Ok(None);
    };
    normalize_leading(&mut lambda);
    Ok(Some(lambda))
}

/// Scales so that the first nonzero entry is `+1`.
pub(crate) fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
}

/// Ambient dimension plus an ordered list of finite point sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFamily {
    dimension: usize,
    sets: Vec<Vec<Point>>,
}

impl PointFamily {
    pub fn new(dimension: usize, sets: Vec<Vec<Point>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::MalformedInstance(
                "dimension must be at least 1".into(),
            ));
        }
        if sets.is_empty() {
            return Err(Error::MalformedInstance("family has no sets".into()));
        }
        for p in sets.iter().flatten() {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.len(),
                });
            }
        }
        Ok(Self { dimension, sets })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(dimension: usize, sets: &[&[&[i64]]]) -> Result<Self> {
        Self::new(
            dimension,
            sets.iter()
                .map(|s| s.iter().map(|p| int_point(p)).collect())
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn sets(&self) -> &[Vec<Point>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[Point] {
        &self.sets[i]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn first_empty_set(&self) -> Option<usize> {
        self.sets.iter().position(Vec::is_empty)
    }

    pub fn into_sets(self) -> Vec<Vec<Point>> {
        self.sets
    }
}
