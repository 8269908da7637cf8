//! From two-point families containing `{0}` to segment families.
//!
//! Each set `{A, B}` yields its own segment `[A, B]` and a gadget segment
//! `[αA, βB]` with `α = -1`, `β = 2`. A hyperplane through the origin meets
//! both only if it contains `A` or `B`: it meets `[A, B]` when `a·A` and `a·B`
//! have opposite weak signs and `[−A, 2B]` when they have equal weak signs.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{Point, PointFamily, Rational};
use crate::solvers::SegmentFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SegmentMode {
    /// Gadgets in the original space: `2k + 1` segments in `R^D`.
    #[default]
    Planar,
    /// Gadgets lifted along a private unit coordinate each: `2k + 1`
    /// segments in `R^{D+k}`. Not answer-preserving in general.
    Paper,
}

impl SegmentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentMode::Planar => "planar",
            SegmentMode::Paper => "paper",
        }
    }
}

const ALPHA: i64 = -1;
const BETA: i64 = 2;

pub fn twopoint_to_segments(family: &PointFamily, mode: SegmentMode) -> Result<SegmentFamily> {
    let d = family.dimension();
    let k = family.len();
    if let Some(i) = family.first_empty_set() {
        return Err(Error::EmptySet(i));
    }
    if let Some(i) = family.sets().iter().position(|s| s.len() > 2) {
        return Err(Error::SetTooLarge(i));
    }
    let origin = vec![Rational::zero(); d];
    if !family.sets().iter().any(|s| s.len() == 1 && s[0] == origin) {
        return Err(Error::NoOriginSet);
    }
    let (alpha, beta) = (
        Rational::from_integer(ALPHA.into()),
        Rational::from_integer(BETA.into()),
    );
    let scale = |p: &Point, s: &Rational| -> Point { p.iter().map(|x| x * s).collect() };
    let extra = match mode {
        SegmentMode::Planar => 0,
        SegmentMode::Paper => k,
    };
    let lift = |p: Point, unit: Option<usize>| -> Point {
        let mut q = p;
        q.resize(d + extra, Rational::zero());
        if let Some(i) = unit {
            q[d + i] = Rational::one();
        }
        q
    };
    let mut segments = Vec::with_capacity(2 * k + 1);
    for (i, set) in family.sets().iter().enumerate() {
        let a = &set[0];
        let b = set.get(1).unwrap_or(a);
        let unit = (mode == SegmentMode::Paper).then_some(i);
        segments.push((lift(a.clone(), None), lift(b.clone(), None)));
        segments.push((lift(scale(a, &alpha), unit), lift(scale(b, &beta), unit)));
    }
    let o = lift(origin, None);
    segments.push((o.clone(), o));
    SegmentFamily::new(d + extra, segments)
}
