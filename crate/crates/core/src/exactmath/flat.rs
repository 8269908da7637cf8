use std::fmt;

use num_traits::{Signed, Zero};

use super::linalg::{self, EchelonBasis};
use super::{common_dimension, dot, format_rational, normalize_leading, sub, Point, Rational};
use crate::error::{Error, Result};

/// Affine subspace `base + span(basis)` with linearly independent `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    base: Point,
    basis: Vec<Vec<Rational>>,
}

impl Flat {
    pub fn new(base: Point, basis: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = base.len();
        let mut echelon = EchelonBasis::new();
        for v in &basis {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if !echelon.insert(v) {
                return Err(Error::DependentBasis);
            }
        }
        Ok(Self { base, basis })
    }

    pub fn point(base: Point) -> Self {
        Self {
            base,
            basis: Vec::new(),
        }
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Coefficients `c` with `base + Σ c_j basis_j = p`, if `p` lies on the flat.
    pub fn coordinates(&self, p: &[Rational]) -> Result<Option<Vec<Rational>>> {
        self.check_dim(p)?;
        let rhs = sub(p, &self.base);
        let rows: Vec<Vec<Rational>> = (0..self.ambient_dim())
            .map(|x| self.basis.iter().map(|b| b[x].clone()).collect())
            .collect();
        Ok(linalg::solve(&rows, &rhs, self.dim()))
    }

    /// `base + Σ c_j basis_j`.
    pub fn at(&self, coords: &[Rational]) -> Point {
        let mut p = self.base.clone();
        for (b, c) in self.basis.iter().zip(coords) {
            super::add_scaled(&mut p, b, c);
        }
        p
    }

    pub fn contains(&self, p: &[Rational]) -> Result<bool> {
        self.check_dim(p)?;
        let mut e = EchelonBasis::new();
        for b in &self.basis {
            e.insert(b);
        }
        Ok(e.contains(&sub(p, &self.base)))
    }

    fn check_dim(&self, p: &[Rational]) -> Result<()> {
        if p.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.len(),
            });
        }
        Ok(())
    }
}

/// Affine hull of `points`: base is the first point, basis the nonzero rows of
/// the reduced echelon form of the differences.
pub fn flat_from_points(points: &[Point]) -> Result<Flat> {
    common_dimension(points)?;
    let base = points[0].clone();
    let mut diffs: Vec<_> = points[1..].iter().map(|p| sub(p, &base)).collect();
    linalg::rref(&mut diffs);
    Ok(Flat { base, basis: diffs })
}

pub fn flat_contains(flat: &Flat, point: &[Rational]) -> Result<bool> {
    flat.contains(point)
}

/// The set `{x : normal · x = offset}` with a nonzero normal.
///
/// Field order makes the derived `Ord` compare normals first, then offsets;
/// that is the tie-break order used for canonical hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    /// Keeps the given orientation; use [`Hyperplane::canonical`] to compare sets.
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::MalformedInstance("hyperplane normal is zero".into()));
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dimension(&self) -> usize {
        self.normal.len()
    }

    /// Rescaled so the first nonzero normal entry is `+1`.
    pub fn canonical(&self) -> Self {
        let lead = self
            .normal
            .iter()
            .find(|x| !x.is_zero())
            .expect("normal is nonzero")
            .clone();
        Self {
            normal: self.normal.iter().map(|x| x / &lead).collect(),
            offset: &self.offset / &lead,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.normal
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| *x == Rational::from_integer(1.into()))
    }

    /// Signed value `normal · p - offset`.
    pub fn evaluate(&self, p: &[Rational]) -> Rational {
        dot(&self.normal, p) - &self.offset
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.evaluate(p).is_zero()
    }

    /// Closed segment `[p, q]` meets the hyperplane.
    pub fn meets_segment(&self, p: &[Rational], q: &[Rational]) -> bool {
        let a = self.evaluate(p);
        let b = self.evaluate(q);
        !(a.is_positive() && b.is_positive() || a.is_negative() && b.is_negative())
    }

    /// Incidences with multiplicity.
    pub fn count(&self, points: &[Point]) -> usize {
        points.iter().filter(|p| self.contains(p)).count()
    }

    pub fn same_set(&self, other: &Hyperplane) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .normal
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("{}*x{}", format_rational(a), i + 1))
            .collect();
        write!(
            f,
            "{} = {}",
            terms.join(" + "),
            format_rational(&self.offset)
        )
    }
}

/// Canonical hyperplane containing `points` in `R^dimension`.
///
/// The normal is the first vector of the null-space basis of the difference
/// matrix (smallest free coordinate set to one), which is the unique normal
/// up to scale when the points span a hyperplane.
pub fn hyperplane_through(points: &[Point], dimension: usize) -> Result<Hyperplane> {
    let dim = common_dimension(points)?;
    if dim != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            found: dim,
        });
    }
    let base = &points[0];
    let diffs: Vec<_> = points[1..].iter().map(|p| sub(p, base)).collect();
    let mut normal = linalg::nullspace(&diffs, dimension)
        .into_iter()
        .next()
        .ok_or(Error::RankTooHigh)?;
    normalize_leading(&mut normal);
    let offset = dot(&normal, base);
    Ok(Hyperplane { normal, offset })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_point, rat};

    #[test]
    fn flat_from_points_examples() {
        let f = flat_from_points(&[int_point(&[0, 0]), int_point(&[2, 2])]).unwrap();
        assert_eq!(f.base(), &int_point(&[0, 0]));
        assert_eq!(f.basis(), &[int_point(&[1, 1])]);

        let f = flat_from_points(&[int_point(&[1, 1])]).unwrap();
        assert_eq!(f.dim(), 0);
        assert_eq!(f.base(), &int_point(&[1, 1]));

        let f = flat_from_points(&[int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[0, 1])])
            .unwrap();
        assert_eq!(f.dim(), 2);
        assert!(flat_from_points(&[]).is_err());
    }

    #[test]
    fn flat_contains_examples() {
        let line = flat_from_points(&[int_point(&[0, 0]), int_point(&[1, 1])]).unwrap();
        assert!(flat_contains(&line, &int_point(&[5, 5])).unwrap());
        assert!(!flat_contains(&line, &int_point(&[1, 0])).unwrap());
        let p = Flat::point(int_point(&[2, 3]));
        assert!(flat_contains(&p, &int_point(&[2, 3])).unwrap());
        assert!(flat_contains(&p, &int_point(&[2])).is_err());
    }

    #[test]
    fn flat_rejects_dependent_basis() {
        let r = Flat::new(
            int_point(&[0, 0]),
            vec![int_point(&[1, 1]), int_point(&[2, 2])],
        );
        assert_eq!(r, Err(Error::DependentBasis));
    }

    #[test]
    fn coordinates_round_trip() {
        let f = flat_from_points(&[
            int_point(&[1, 0, 0]),
            int_point(&[1, 2, 0]),
            int_point(&[3, 0, 4]),
        ])
        .unwrap();
        let q = int_point(&[4, 3, 6]);
        let c = f.coordinates(&q).unwrap().unwrap();
        assert_eq!(f.at(&c), q);
        assert_eq!(f.coordinates(&int_point(&[0, 0, 0])).unwrap(), None);
    }

    #[test]
    fn hyperplane_through_examples() {
        // The unique line through (0,0) and (1,1) is x1 - x2 = 0.
        let h = hyperplane_through(&[int_point(&[0, 0]), int_point(&[1, 1])], 2).unwrap();
        assert_eq!(h.normal(), &[rat(1), rat(-1)]);
        assert_eq!(h.offset(), &rat(0));

        let h = hyperplane_through(&[int_point(&[0, 0, 0])], 3).unwrap();
        assert_eq!(h.normal(), &[rat(1), rat(0), rat(0)]);
        assert_eq!(h.offset(), &rat(0));

        let r = hyperplane_through(
            &[int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[0, 1])],
            2,
        );
        assert_eq!(r, Err(Error::RankTooHigh));
    }

    #[test]
    fn canonical_form_is_subset_independent() {
        let pts = [
            int_point(&[1, 0, 2]),
            int_point(&[0, 3, 1]),
            int_point(&[2, 1, 0]),
            int_point(&[1, 4, -1]),
        ];
        // pts[3] = pts[1] + pts[2] - pts[0] lies on the plane through the others.
        let a = hyperplane_through(&pts[..3], 3).unwrap();
        let b = hyperplane_through(&pts[1..], 3).unwrap();
        assert_eq!(a, b);
        assert!(a.is_canonical());
        assert_eq!(a.count(&pts), 4);
    }

    #[test]
    fn segment_meeting_is_closed() {
        let h = Hyperplane::new(vec![rat(0), rat(1)], rat(0)).unwrap();
        assert!(h.meets_segment(&int_point(&[0, -1]), &int_point(&[0, 1])));
        assert!(h.meets_segment(&int_point(&[0, 0]), &int_point(&[0, 1])));
        assert!(!h.meets_segment(&int_point(&[0, 1]), &int_point(&[5, 2])));
    }
}
