use serde_json::{json, Map, Value};

use transversal::approx::approx_maxhyp;
use transversal::reductions::{
    binpacking_to_equal, clique_to_flattrans, equalbin_to_flattrans, flattrans_to_hyptrans,
    has_clique, solve_equalbin, solve_subsetsum, subsetsum_to_hyptrans, twopoint_to_segments,
    Equalized, LiftMode, SegmentMode,
};
use transversal::solvers::{
    finite_flat_transversal_with_stats, maxhyp_exact, segment_hyperplane_transversal_with_stats,
};
use transversal::wellsep::{is_well_separated_with_stats, WellSepResult};
use transversal::Point;

use crate::doc::{self, Instance, Loaded};
use crate::{InputError, MaxhypMode, Reduction};

fn answer(yes: bool) -> &'static str {
    if yes {
        "yes"
    } else {
        "no"
    }
}

fn result(command: &str, loaded: &Loaded) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("input".into(), doc::input_echo(loaded));
    m
}

pub fn transversal(
    loaded: &Loaded,
    target: Option<usize>,
    hyperplane: bool,
) -> Result<Value, InputError> {
    let mut out = result("transversal", loaded);
    if let Instance::Segments { .. } = loaded.instance {
        let family = doc::segment_family(&loaded.instance)?;
        if target.is_some_and(|t| t + 1 != family.dimension()) {
            return Err(InputError(
                "segment families support only hyperplane transversals".into(),
            ));
        }
        let (found, stats) = segment_hyperplane_transversal_with_stats(&family)?;
        out.insert("target".into(), json!(family.dimension() - 1));
        out.insert("answer".into(), json!(answer(found.is_some())));
        if let Some(h) = found {
            out.insert(
                "certificate".into(),
                json!({ "answer": "yes", "hyperplane": doc::hyperplane(&h) }),
            );
        }
        out.insert(
            "statistics".into(),
            json!({ "nodes": stats.nodes, "lps": stats.lps }),
        );
        return Ok(Value::Object(out));
    }
    let (family, file_target) = doc::point_family(&loaded.instance)?;
    let m = if hyperplane {
        family.dimension() - 1
    } else {
        target.or(file_target).ok_or_else(|| {
            InputError("give --target, --hyperplane, or a \"target\" field".into())
        })?
    };
    let (found, stats) = finite_flat_transversal_with_stats(&family, m)?;
    out.insert("target".into(), json!(m));
    out.insert("answer".into(), json!(answer(found.is_some())));
    if let Some(cert) = found {
        out.insert(
            "certificate".into(),
            json!({
                "answer": "yes",
                "target": m,
                "flat": doc::flat(&cert.flat),
                "chosen": cert.chosen,
            }),
        );
    }
    out.insert(
        "statistics".into(),
        json!({ "nodes": stats.nodes, "searches": stats.searches }),
    );
    Ok(Value::Object(out))
}

pub fn wellsep(loaded: &Loaded) -> Result<Value, InputError> {
    let (family, _) = doc::point_family(&loaded.instance)?;
    let (r, stats) = is_well_separated_with_stats(&family)?;
    let mut out = result("wellsep", loaded);
    out.insert("answer".into(), json!(answer(r.is_well_separated())));
    if let WellSepResult::NotWellSeparated {
        witness,
        certificate,
    } = r
    {
        let weights: Map<String, Value> = witness
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| (i.to_string(), doc::vector(w)))
            .collect();
        out.insert(
            "certificate".into(),
            json!({
                "answer": "no",
                "flat": doc::flat(&certificate),
                "witness": {
                    "I": witness.side,
                    "point": doc::vector(&witness.point),
                    "weights": weights,
                },
            }),
        );
    }
    out.insert(
        "statistics".into(),
        json!({ "splits_checked": stats.splits_checked, "shortcut": stats.shortcut }),
    );
    Ok(Value::Object(out))
}

pub fn maxhyp(loaded: &Loaded, mode: MaxhypMode) -> Result<Value, InputError> {
    let (family, _) = doc::point_family(&loaded.instance)?;
    if let Some(i) = family.sets().iter().position(|s| s.len() != 1) {
        return Err(InputError(format!(
            "maxhyp needs singleton sets; set {i} has {} points",
            family.set(i).len()
        )));
    }
    let points: Vec<Point> = family.sets().iter().map(|s| s[0].clone()).collect();
    let mut out = result("maxhyp", loaded);
    match mode {
        MaxhypMode::Exact => {
            let r = maxhyp_exact(&points, family.dimension())?;
            out.insert("mode".into(), json!("exact"));
            out.insert("count".into(), json!(r.count));
            out.insert(
                "certificate".into(),
                json!({ "hyperplane": doc::hyperplane(&r.hyperplane), "count": r.count }),
            );
            out.insert("statistics".into(), json!({ "candidates": r.candidates }));
        }
        MaxhypMode::Approx => {
            let r = approx_maxhyp(&points, family.dimension())?;
            out.insert("mode".into(), json!("approx"));
            out.insert("count".into(), json!(r.count));
            out.insert("case".into(), json!(r.case.as_str()));
            out.insert("fk".into(), json!(r.fk));
            if let Some(g) = r.group_size {
                out.insert("group_size".into(), json!(g));
            }
            out.insert(
                "certificate".into(),
                json!({ "hyperplane": doc::hyperplane(&r.hyperplane), "count": r.count }),
            );
            out.insert("statistics".into(), json!({ "candidates": r.candidates }));
        }
    }
    Ok(Value::Object(out))
}

/// Returns the document and a one-line shape summary.
pub fn reduce(
    loaded: &Loaded,
    reduction: Reduction,
    mode: Option<&str>,
    k: Option<usize>,
) -> Result<(Value, String), InputError> {
    let mut origin = Map::new();
    origin.insert("reduction".into(), json!(reduction.as_str()));
    origin.insert("source_kind".into(), json!(loaded.instance.kind()));
    origin.insert("source_sha256".into(), json!(loaded.sha256));
    let no_mode = |m: Option<&str>| match m {
        None => Ok(()),
        Some(m) => Err(InputError(format!(
            "--mode {m} does not apply to {}",
            reduction.as_str()
        ))),
    };
    let points_out =
        |family: &transversal::PointFamily, target: usize, origin: Map<String, Value>| {
            let summary = format!(
                "{} sets in R^{}, target {}",
                family.len(),
                family.dimension(),
                target
            );
            (
                doc::points_document(family, Some(target), Some(Value::Object(origin))),
                summary,
            )
        };
    match reduction {
        Reduction::Subsetsum => {
            no_mode(mode)?;
            let family = subsetsum_to_hyptrans(&doc::subsetsum(&loaded.instance)?)?;
            let d = family.dimension();
            Ok(points_out(&family, d - 1, origin))
        }
        Reduction::Binpacking | Reduction::Equalbin => {
            no_mode(mode)?;
            let inst = doc::binpacking(&loaded.instance)?;
            let equal = if reduction == Reduction::Binpacking {
                match binpacking_to_equal(&inst) {
                    Equalized::Equal(e) => {
                        origin.insert(
                            "padding".into(),
                            json!(e.weights.len() - inst.weights.len()),
                        );
                        e
                    }
                    Equalized::TriviallyNo => {
                        origin.insert(
                            "note".into(),
                            json!("total weight or an item exceeds the capacity"),
                        );
                        let doc = json!({ "kind": "trivially-no", "origin": origin });
                        return Ok((doc, "trivially no: nothing to construct".into()));
                    }
                }
            } else {
                inst
            };
            let (family, target) = equalbin_to_flattrans(&equal)?;
            Ok(points_out(&family, target, origin))
        }
        Reduction::FlattransLift => {
            let mode = match mode.unwrap_or("repaired") {
                "repaired" => LiftMode::Repaired,
                "paper" => LiftMode::Paper,
                other => {
                    return Err(InputError(format!(
                        "unknown lift mode {other:?} (repaired|paper)"
                    )))
                }
            };
            let (family, _) = doc::point_family(&loaded.instance)?;
            let lifted = flattrans_to_hyptrans(&family, mode)?;
            origin.insert("mode".into(), json!(mode.as_str()));
            origin.insert("guarantee".into(), json!(lifted.guarantee.as_str()));
            if !lifted.guarantee.preserves_answers() {
                origin.insert(
                    "warning".into(),
                    json!(match lifted.guarantee {
                        transversal::reductions::LiftGuarantee::NotPreserving =>
                            "paper mode is not answer-preserving: the padding points are collinear",
                        _ => "projection not checked: too many point choices",
                    }),
                );
            }
            let d = lifted.family.dimension();
            Ok(points_out(&lifted.family, d - 1, origin))
        }
        Reduction::Segments => {
            let mode = match mode.unwrap_or("planar") {
                "planar" => SegmentMode::Planar,
                "paper" => SegmentMode::Paper,
                other => {
                    return Err(InputError(format!(
                        "unknown segment mode {other:?} (planar|paper)"
                    )))
                }
            };
            let (family, _) = doc::point_family(&loaded.instance)?;
            let segs = twopoint_to_segments(&family, mode)?;
            origin.insert("mode".into(), json!(mode.as_str()));
            if mode == SegmentMode::Paper {
                origin.insert(
                    "warning".into(),
                    json!("paper mode is not answer-preserving: lifted gadgets admit extra transversals"),
                );
            }
            let summary = format!("{} segments in R^{}", segs.len(), segs.dimension());
            Ok((
                doc::segments_document(&segs, Some(Value::Object(origin))),
                summary,
            ))
        }
        Reduction::Clique => {
            no_mode(mode)?;
            let (g, file_k) = doc::graph(&loaded.instance)?;
            let k = k
                .or(file_k)
                .ok_or_else(|| InputError("give --k or a \"k\" field".into()))?;
            origin.insert("k".into(), json!(k));
            let (family, target) = clique_to_flattrans(&g, k)?;
            Ok(points_out(&family, target, origin))
        }
    }
}

pub fn oracle(loaded: &Loaded, mode: Option<&str>, k: Option<usize>) -> Result<Value, InputError> {
    let mut out = result("oracle", loaded);
    match &loaded.instance {
        Instance::Subsetsum { .. } => {
            let found = solve_subsetsum(&doc::subsetsum(&loaded.instance)?)?;
            out.insert("problem".into(), json!("subsetsum"));
            out.insert("answer".into(), json!(answer(found.is_some())));
            if let Some(s) = found {
                out.insert("certificate".into(), json!({ "subset": s }));
            }
        }
        Instance::Binpacking { .. } => {
            let inst = doc::binpacking(&loaded.instance)?;
            let found = match mode.unwrap_or("packing") {
                "equal" => solve_equalbin(&inst)?,
                "packing" => match binpacking_to_equal(&inst) {
                    Equalized::TriviallyNo => None,
                    Equalized::Equal(e) => solve_equalbin(&e)?.map(|mut a| {
                        a.truncate(inst.weights.len());
                        a
                    }),
                },
                other => {
                    return Err(InputError(format!(
                        "unknown bin packing mode {other:?} (packing|equal)"
                    )))
                }
            };
            out.insert("problem".into(), json!("binpacking"));
            out.insert("answer".into(), json!(answer(found.is_some())));
            if let Some(a) = found {
                out.insert("certificate".into(), json!({ "assignment": a }));
            }
        }
        Instance::Graph { .. } => {
            let (g, file_k) = doc::graph(&loaded.instance)?;
            let k = k
                .or(file_k)
                .ok_or_else(|| InputError("give --k or a \"k\" field".into()))?;
            let found = has_clique(&g, k)?;
            out.insert("problem".into(), json!("clique"));
            out.insert("k".into(), json!(k));
            out.insert("answer".into(), json!(answer(found.is_some())));
            if let Some(c) = found {
                out.insert("certificate".into(), json!({ "clique": c }));
            }
        }
        other => {
            return Err(InputError(format!(
                "no oracle for {} instances",
                other.kind()
            )))
        }
    }
    Ok(Value::Object(out))
}
