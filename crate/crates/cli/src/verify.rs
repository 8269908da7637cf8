//! Independent re-checking of emitted certificates, clause by clause.

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use transversal::exactmath::combination;
use transversal::lpcore::flat_meets_hull;
use transversal::{Point, PointFamily, Rational};

use crate::doc::{self, Instance, Loaded};
use crate::InputError;

pub type Clause = (&'static str, Result<(), String>);

fn check(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// Accepts a bare certificate or a whole result document.
pub fn certificate_of(v: &Value) -> &Value {
    v.get("certificate").unwrap_or(v)
}

pub fn verify(loaded: &Loaded, cert: &Value) -> Result<Vec<Clause>, InputError> {
    let cert = certificate_of(cert);
    if let Instance::Segments { .. } = loaded.instance {
        let family = doc::segment_family(&loaded.instance)?;
        let Some(h) = cert.get("hyperplane") else {
            return Ok(Vec::new());
        };
        let h = doc::parse_hyperplane(h)?;
        let bad = family
            .segments()
            .iter()
            .position(|(p, q)| !h.meets_segment(p, q));
        return Ok(vec![
            (
                "dimension",
                check(h.dimension() == family.dimension(), || {
                    "hyperplane lives in another space".into()
                }),
            ),
            (
                "segments",
                check(bad.is_none(), || {
                    format!("misses segment {}", bad.unwrap_or(0))
                }),
            ),
        ]);
    }
    let (family, file_target) = doc::point_family(&loaded.instance)?;
    if cert.get("witness").is_some() {
        return witness_clauses(&family, cert);
    }
    if cert.get("chosen").is_some() {
        let target = match cert.get("target") {
            Some(t) => Some(
                t.as_u64()
                    .ok_or_else(|| InputError("certificate target must be a number".into()))?
                    as usize,
            ),
            None => file_target,
        }
        .unwrap_or(family.dimension() - 1);
        return transversal_clauses(&family, cert, target);
    }
    if let (Some(h), Some(count)) = (cert.get("hyperplane"), cert.get("count")) {
        let h = doc::parse_hyperplane(h)?;
        let count = count
            .as_u64()
            .ok_or_else(|| InputError("count must be a number".into()))?
            as usize;
        let points: Vec<Point> = family.sets().iter().flatten().cloned().collect();
        let actual = h.count(&points);
        return Ok(vec![(
            "count",
            check(actual == count, || {
                format!("claimed {count}, recount gives {actual}")
            }),
        )]);
    }
    Ok(Vec::new())
}

fn transversal_clauses(
    family: &PointFamily,
    cert: &Value,
    target: usize,
) -> Result<Vec<Clause>, InputError> {
    let flat = doc::parse_flat(
        cert.get("flat")
            .ok_or_else(|| InputError("certificate has no flat".into()))?,
    )?;
    let chosen: Vec<usize> = serde_json::from_value(cert["chosen"].clone())
        .map_err(|_| InputError("chosen must be a list of indices".into()))?;
    let mut out = vec![
        (
            "target",
            check(target <= family.dimension(), || {
                format!("target {target} exceeds the dimension")
            }),
        ),
        (
            "dimension",
            check(
                flat.ambient_dim() == family.dimension() && flat.dim() <= target,
                || format!("flat dimension {} exceeds target {target}", flat.dim()),
            ),
        ),
    ];
    let shape_ok = chosen.len() == family.len()
        && chosen
            .iter()
            .enumerate()
            .all(|(i, &j)| j < family.set(i).len());
    out.push((
        "chosen",
        check(shape_ok, || "one in-range index per set required".into()),
    ));
    if shape_ok && flat.ambient_dim() == family.dimension() {
        let miss =
            (0..family.len()).find(|&i| !flat.contains(&family.set(i)[chosen[i]]).unwrap_or(false));
        out.push((
            "membership",
            check(miss.is_none(), || {
                format!("chosen point of set {} is off the flat", miss.unwrap_or(0))
            }),
        ));
    }
    Ok(out)
}

fn witness_clauses(family: &PointFamily, cert: &Value) -> Result<Vec<Clause>, InputError> {
    let k = family.len();
    let d = family.dimension();
    let w = &cert["witness"];
    let side: Vec<usize> = serde_json::from_value(w["I"].clone())
        .map_err(|_| InputError("witness I must be a list of indices".into()))?;
    let point = doc::parse_vector(&w["point"], "witness point")?;
    let weights_obj = w["weights"]
        .as_object()
        .ok_or_else(|| InputError("witness weights must be an object".into()))?;
    let mut weights: Vec<Vec<Rational>> = family
        .sets()
        .iter()
        .map(|s| vec![Rational::zero(); s.len()])
        .collect();
    let mut shape_ok = true;
    for (key, v) in weights_obj {
        let i: usize = key
            .parse()
            .map_err(|_| InputError(format!("bad set index {key:?}")))?;
        let ws = doc::parse_vector(v, "witness weights")?;
        if i < k && ws.len() == family.set(i).len() {
            weights[i] = ws;
        } else {
            shape_ok = false;
        }
    }
    let mut out = Vec::new();
    let proper = !side.is_empty() && side.len() < k && side.iter().all(|&i| i < k) && {
        let mut s = side.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == side.len()
    };
    out.push((
        "split",
        check(proper, || {
            "I must be a proper nonempty subset of the sets".into()
        }),
    ));
    out.push((
        "weights",
        check(shape_ok && point.len() == d, || {
            "weights or point do not match the family".into()
        }),
    ));
    if proper && shape_ok && point.len() == d {
        let sides: [Vec<usize>; 2] = [side.clone(), (0..k).filter(|i| !side.contains(i)).collect()];
        let nonneg = weights.iter().flatten().all(|x| !x.is_negative());
        let sums_ok = sides
            .iter()
            .all(|s| s.iter().flat_map(|&i| &weights[i]).sum::<Rational>() == Rational::one());
        out.push((
            "convexity",
            check(nonneg && sums_ok, || {
                "weights must be nonnegative and sum to 1 per side".into()
            }),
        ));
        let reproduces = sides.iter().all(|s| {
            let mut acc = vec![Rational::zero(); d];
            for &i in s {
                for (a, x) in acc
                    .iter_mut()
                    .zip(combination(family.set(i), &weights[i], d))
                {
                    *a += x;
                }
            }
            acc == point
        });
        out.push((
            "reproduction",
            check(reproduces, || "weights do not reproduce the point".into()),
        ));
    }
    if let Some(f) = cert.get("flat") {
        let flat = doc::parse_flat(f)?;
        out.push((
            "dimension",
            check(k >= 2 && flat.dim() + 2 <= k, || {
                format!(
                    "flat dimension {} exceeds k-2 = {}",
                    flat.dim(),
                    k as i64 - 2
                )
            }),
        ));
        let mut miss = None;
        for (i, s) in family.sets().iter().enumerate() {
            if flat_meets_hull(&flat, s)?.is_none() {
                miss = Some(i);
                break;
            }
        }
        out.push((
            "hulls",
            check(miss.is_none(), || {
                format!("flat misses the hull of set {}", miss.unwrap_or(0))
            }),
        ));
    }
    Ok(out)
}
