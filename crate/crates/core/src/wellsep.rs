//! Well-separation of families of finite point sets.
//!
//! Sets `S_1..S_k` are well-separated when, for every proper split `I`, the
//! hulls of `∪_{i∈I} S_i` and of the remaining points are disjoint. That fails
//! exactly when some flat of dimension at most `k - 2` meets every hull; this
//! module decides the property by checking each split with an LP and converts
//! between the two kinds of certificate.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    affine_dependence, combination, common_dimension, flat_from_points, Flat, Point, PointFamily,
    Rational,
};
use crate::lpcore::{flat_hull_intersection, hull_intersection_point};
use crate::par;

/// A proper split of the sets plus a point in both side hulls.
///
/// `weights[i][j]` is the weight of point `j` of set `i`; weights over the
/// sets in `side` sum to 1, as do the weights over the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPartition {
    /// Sorted set indices of `I`.
    pub side: Vec<usize>,
    pub point: Point,
    pub weights: Vec<Vec<Rational>>,
}

impl WitnessPartition {
    pub fn complement(&self, k: usize) -> Vec<usize> {
        (0..k).filter(|i| !self.side.contains(i)).collect()
    }

    pub fn in_side(&self, i: usize) -> bool {
        self.side.binary_search(&i).is_ok()
    }

    /// Checks shape, properness, nonnegativity and exact reproduction of
    /// `point` from both sides.
    pub fn verify(&self, family: &PointFamily) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidWitness(m.to_string()));
        let k = family.len();
        if self.side.is_empty() || self.side.len() >= k {
            return bad("split is not proper");
        }
        if self.side.windows(2).any(|w| w[0] >= w[1]) || self.side[self.side.len() - 1] >= k {
            return bad("split indices must be sorted, distinct and in range");
        }
        if self.point.len() != family.dimension() {
            return bad("point has the wrong dimension");
        }
        if self.weights.len() != k
            || self
                .weights
                .iter()
                .zip(family.sets())
                .any(|(w, s)| w.len() != s.len())
        {
            return bad("weights do not match the family shape");
        }
        if self.weights.iter().flatten().any(Signed::is_negative) {
            return bad("negative weight");
        }
        for on_side in [true, false] {
            let sets: Vec<usize> = (0..k).filter(|&i| self.in_side(i) == on_side).collect();
            let total: Rational = sets.iter().flat_map(|&i| &self.weights[i]).sum();
            if total != Rational::from_integer(1.into()) {
                return bad("side weights do not sum to 1");
            }
            if side_point(family, &self.weights, &sets) != self.point {
                return bad("weights do not reproduce the point");
            }
        }
        Ok(())
    }

    // Relabel so that set 0 is on side I.
    fn canonicalize(mut self, k: usize) -> Self {
        if !self.in_side(0) {
            self.side = self.complement(k);
        }
        self
    }
}

fn side_point(family: &PointFamily, weights: &[Vec<Rational>], sets: &[usize]) -> Point {
    let mut acc = vec![Rational::zero(); family.dimension()];
    for &i in sets {
        let p = combination(family.set(i), &weights[i], family.dimension());
        for (a, x) in acc.iter_mut().zip(p) {
            *a += x;
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WellSepResult {
    WellSeparated,
    NotWellSeparated {
        witness: WitnessPartition,
        certificate: Flat,
    },
}

impl WellSepResult {
    pub fn is_well_separated(&self) -> bool {
        matches!(self, WellSepResult::WellSeparated)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WellSepStats {
    /// Splits up to and including the reported one, in canonical order.
    pub splits_checked: u64,
    /// The point-count shortcut decided the instance.
    pub shortcut: bool,
}

/// Two sides of an affine dependence with a common point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadonPartition {
    /// Indices with negative dependence weight.
    pub i: Vec<usize>,
    /// Indices with positive dependence weight.
    pub j: Vec<usize>,
    pub point: Point,
    pub weights_i: Vec<Rational>,
    pub weights_j: Vec<Rational>,
}

pub fn radon_partition(points: &[Point]) -> Result<RadonPartition> {
    let dim = common_dimension(points)?;
    if points.len() < dim + 2 {
        return Err(Error::TooFewPoints {
            needed: dim + 2,
            found: points.len(),
        });
    }
    let lambda = affine_dependence(points)?
        .ok_or_else(|| Error::Internal("no dependence among D+2 points".into()))?;
    let (i, j) = sign_split(&lambda);
    let weights_i = normalized(&lambda, &i);
    let weights_j = normalized(&lambda, &j);
    let pick = |idx: &[usize]| idx.iter().map(|&t| points[t].clone()).collect::<Vec<_>>();
    let point = combination(&pick(&i), &weights_i, dim);
    debug_assert_eq!(point, combination(&pick(&j), &weights_j, dim));
    Ok(RadonPartition {
        i,
        j,
        point,
        weights_i,
        weights_j,
    })
}

fn sign_split(lambda: &[Rational]) -> (Vec<usize>, Vec<usize>) {
    let neg = (0..lambda.len())
        .filter(|&t| lambda[t].is_negative())
        .collect();
    let pos = (0..lambda.len())
        .filter(|&t| lambda[t].is_positive())
        .collect();
    (neg, pos)
}

fn normalized(lambda: &[Rational], idx: &[usize]) -> Vec<Rational> {
    let total: Rational = idx.iter().map(|&t| lambda[t].abs()).sum();
    idx.iter().map(|&t| lambda[t].abs() / &total).collect()
}

pub fn is_well_separated(family: &PointFamily) -> Result<WellSepResult> {
    Ok(is_well_separated_with_stats(family)?.0)
}

pub fn is_well_separated_with_stats(family: &PointFamily) -> Result<(WellSepResult, WellSepStats)> {
    if let Some(i) = family.first_empty_set() {
        return Err(Error::EmptySet(i));
    }
    let k = family.len();
    let d = family.dimension();
    if k >= d + 2 {
        let firsts: Vec<Point> = family.sets().iter().map(|s| s[0].clone()).collect();
        let radon = radon_partition(&firsts)?;
        let mut weights: Vec<Vec<Rational>> = family
            .sets()
            .iter()
            .map(|s| vec![Rational::zero(); s.len()])
            .collect();
        for (t, w) in radon
            .i
            .iter()
            .zip(&radon.weights_i)
            .chain(radon.j.iter().zip(&radon.weights_j))
        {
            weights[*t][0] = w.clone();
        }
        let witness = WitnessPartition {
            side: radon.i,
            point: radon.point,
            weights,
        }
        .canonicalize(k);
        let certificate = flat_certificate_from_witness(family, &witness)?;
        let stats = WellSepStats {
            splits_checked: 0,
            shortcut: true,
        };
        return Ok((
            WellSepResult::NotWellSeparated {
                witness,
                certificate,
            },
            stats,
        ));
    }
    if k < 2 {
        return Ok((WellSepResult::WellSeparated, WellSepStats::default()));
    }
    // Splits containing set 0, by increasing bit code, full set excluded.
    let splits: Vec<u64> = (0..(1u64 << (k - 1)) - 1).map(|t| 1 | (t << 1)).collect();
    let total = splits.len() as u64;
    let found = par::find_map_first(splits.into_iter().enumerate().collect(), |(pos, mask)| {
        check_split(family, mask)
            .transpose()
            .map(|r| r.map(|w| (pos, w)))
    });
    match found.transpose()? {
        None => Ok((
            WellSepResult::WellSeparated,
            WellSepStats {
                splits_checked: total,
                shortcut: false,
            },
        )),
        Some((pos, witness)) => {
            let certificate = flat_certificate_from_witness(family, &witness)?;
            Ok((
                WellSepResult::NotWellSeparated {
                    witness,
                    certificate,
                },
                WellSepStats {
                    splits_checked: pos as u64 + 1,
                    shortcut: false,
                },
            ))
        }
    }
}

fn check_split(family: &PointFamily, mask: u64) -> Result<Option<WitnessPartition>> {
    let k = family.len();
    let in_side = |i: usize| mask >> i & 1 == 1;
    let gather = |side: bool| -> Vec<Point> {
        (0..k)
            .filter(|&i| in_side(i) == side)
            .flat_map(|i| family.set(i).iter().cloned())
            .collect()
    };
    let Some((point, wa, wb)) = hull_intersection_point(&gather(true), &gather(false))? else {
        return Ok(None);
    };
    let (mut ia, mut ib) = (wa.into_iter(), wb.into_iter());
    let weights = (0..k)
        .map(|i| {
            let src = if in_side(i) { &mut ia } else { &mut ib };
            src.by_ref().take(family.set(i).len()).collect()
        })
        .collect();
    Ok(Some(WitnessPartition {
        side: (0..k).filter(|&i| in_side(i)).collect(),
        point,
        weights,
    }))
}

/// A flat of dimension at most `k - 2` meeting every hull: the affine hull of
/// one representative per set. Sets carrying weight are represented by their
/// weighted average, the rest by their first point.
pub fn flat_certificate_from_witness(
    family: &PointFamily,
    witness: &WitnessPartition,
) -> Result<Flat> {
    witness.verify(family)?;
    let d = family.dimension();
    let reps: Vec<Point> = family
        .sets()
        .iter()
        .zip(&witness.weights)
        .map(|(set, w)| {
            let total: Rational = w.iter().sum();
            if total.is_zero() {
                set[0].clone()
            } else {
                let scaled: Vec<Rational> = w.iter().map(|x| x / &total).collect();
                combination(set, &scaled, d)
            }
        })
        .collect();
    let flat = flat_from_points(&reps)?;
    let k = family.len();
    if flat.dim() + 2 > k {
        return Err(Error::Internal(format!(
            "certificate flat has dimension {} for {k} sets",
            flat.dim()
        )));
    }
    if !flat.contains(&witness.point)? {
        return Err(Error::Internal(
            "certificate flat misses the witness point".into(),
        ));
    }
    Ok(flat)
}

/// Recovers a split with intersecting hulls from a flat of dimension at most
/// `k - 2` that meets every hull.
pub fn witness_from_flat(family: &PointFamily, flat: &Flat) -> Result<WitnessPartition> {
    let k = family.len();
    if k < 2 || flat.dim() + 2 > k {
        return Err(Error::PreconditionViolated(format!(
            "flat of dimension {} cannot certify {k} sets",
            flat.dim()
        )));
    }
    if let Some(i) = family.first_empty_set() {
        return Err(Error::EmptySet(i));
    }
    let mut hits = Vec::with_capacity(k);
    let mut coords = Vec::with_capacity(k);
    for (i, set) in family.sets().iter().enumerate() {
        let (p, w) = flat_hull_intersection(flat, set)?.ok_or(Error::FlatMissesSet(i))?;
        coords.push(
            flat.coordinates(&p)?
                .ok_or_else(|| Error::Internal("intersection point off the flat".into()))?,
        );
        hits.push((p, w));
    }
    let radon = radon_partition(&coords)?;
    let mut weights: Vec<Vec<Rational>> = family
        .sets()
        .iter()
        .map(|s| vec![Rational::zero(); s.len()])
        .collect();
    for (t, r) in radon
        .i
        .iter()
        .zip(&radon.weights_i)
        .chain(radon.j.iter().zip(&radon.weights_j))
    {
        weights[*t] = hits[*t].1.iter().map(|w| w * r).collect();
    }
    let hit_points: Vec<Point> = radon.i.iter().map(|&t| hits[t].0.clone()).collect();
    let point = combination(&hit_points, &radon.weights_i, family.dimension());
    let witness = WitnessPartition {
        side: radon.i,
        point,
        weights,
    }
    .canonicalize(k);
    witness.verify(family)?;
    Ok(witness)
}
