//! m-flat transversals of finite families.
//!
//! An m-flat meets every finite set iff some choice of one point per set has
//! affine rank at most `m`, i.e. the homogenized choice vectors `(p, 1)` have
//! linear rank at most `m + 1`. The search is a depth-first walk over choices
//! with two lower bounds on that rank:
//!
//! * the rank of the homogenized vectors already chosen;
//! * the rank of the *known rows*: a coordinate row is known once every
//!   unchosen set is constant on it, and known rows are rows of the final
//!   matrix whatever the remaining choices are.
//!
//! Sets are picked dynamically (singletons first, then sets that close the
//! most nearly-known row), so the walk finds *some* certificate quickly. The
//! lexicographically first certificate is then recovered by fixing sets in
//! index order, testing smaller point indices with restricted searches.

use crate::error::{Error, Result};
use crate::exactmath::linalg::EchelonBasis;
use crate::exactmath::{flat_from_points, homogenize, Flat, Point, PointFamily, Rational};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalCertificate {
    /// One point index per set.
    pub chosen: Vec<usize>,
    /// Affine hull of the chosen points.
    pub flat: Flat,
}

impl TransversalCertificate {
    pub fn points(&self, family: &PointFamily) -> Vec<Point> {
        self.chosen
            .iter()
            .enumerate()
            .map(|(i, &j)| family.set(i)[j].clone())
            .collect()
    }

    /// Flat dimension at most `target` and every chosen point on the flat.
    pub fn verify(&self, family: &PointFamily, target: usize) -> bool {
        self.chosen.len() == family.len()
            && self.flat.dim() <= target
            && self.flat.ambient_dim() == family.dimension()
            && self.chosen.iter().enumerate().all(|(i, &j)| {
                j < family.set(i).len() && self.flat.contains(&family.set(i)[j]).unwrap_or(false)
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial choices visited over all searches.
    pub nodes: u64,
    /// Searches run (one decision plus the lexicographic refinements).
    pub searches: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.searches += o.searches;
    }
}

pub fn finite_flat_transversal(
    family: &PointFamily,
    target: usize,
) -> Result<Option<TransversalCertificate>> {
    Ok(finite_flat_transversal_with_stats(family, target)?.0)
}

pub fn hyperplane_transversal_points(
    family: &PointFamily,
) -> Result<Option<TransversalCertificate>> {
    finite_flat_transversal(family, family.dimension() - 1)
}

pub fn finite_flat_transversal_with_stats(
    family: &PointFamily,
    target: usize,
) -> Result<(Option<TransversalCertificate>, SearchStats)> {
    let dimension = family.dimension();
    if target > dimension {
        return Err(Error::BadTarget { target, dimension });
    }
    let mut stats = SearchStats::default();
    if family.first_empty_set().is_some() {
        return Ok((None, stats));
    }
    let k = family.len();
    let chosen = if k <= target + 1 {
        Some(vec![0; k])
    } else {
        let hom: Vec<Vec<Vec<Rational>>> = family
            .sets()
            .iter()
            .map(|s| s.iter().map(|p| homogenize(p)).collect())
            .collect();
        lex_first(&hom, target + 1, &mut stats)
    };
    let Some(chosen) = chosen else {
        return Ok((None, stats));
    };
    let points: Vec<Point> = chosen
        .iter()
        .enumerate()
        .map(|(i, &j)| family.set(i)[j].clone())
        .collect();
    let flat = flat_from_points(&points)?;
    let cert = TransversalCertificate { chosen, flat };
    if !cert.verify(family, target) {
        return Err(Error::Internal(
            "transversal certificate failed re-verification".into(),
        ));
    }
    Ok((Some(cert), stats))
}

fn lex_first(
    hom: &[Vec<Vec<Rational>>],
    limit: usize,
    stats: &mut SearchStats,
) -> Option<Vec<usize>> {
    let full: Vec<Vec<usize>> = hom.iter().map(|s| (0..s.len()).collect()).collect();
    let (found, s) = decide(hom, full.clone(), limit, true);
    *stats += s;
    let mut best = found?;
    let mut domains = full;
    for i in 0..hom.len() {
        let smaller: Vec<usize> = domains[i]
            .iter()
            .copied()
            .filter(|&j| j < best[i])
            .collect();
        let results = par::map_ordered(smaller, |j| {
            let mut d = domains.clone();
            d[i] = vec![j];
            decide(hom, d, limit, false)
        });
        let mut improved = None;
        for (r, s) in results {
            *stats += s;
            if improved.is_none() {
                improved = r;
            }
        }
        if let Some(c) = improved {
            best = c;
        }
        domains[i] = vec![best[i]];
    }
    Some(best)
}

/// Any choice within `domains` whose homogenized rank is at most `limit`.
/// With `fan_out`, the children of the first branching set run in parallel.
fn decide(
    hom: &[Vec<Vec<Rational>>],
    domains: Vec<Vec<usize>>,
    limit: usize,
    fan_out: bool,
) -> (Option<Vec<usize>>, SearchStats) {
    let search = Search::new(hom, domains, limit);
    let mut stats = SearchStats {
        nodes: 0,
        searches: 1,
    };
    let Some(mut state) = search.initial_state() else {
        return (None, stats);
    };
    if !fan_out {
        let r = search.dfs(&mut state);
        stats.nodes += state.nodes;
        return (r, stats);
    }
    // Settle forced singletons, then split on the first branching set.
    loop {
        match search.pick(&state) {
            None => {
                stats.nodes += state.nodes;
                return (Some(state.choice()), stats);
            }
            Some(s) if search.domains[s].len() == 1 => {
                let idx = search.domains[s][0];
                if !search.push(&mut state, s, idx) {
                    stats.nodes += state.nodes;
                    return (None, stats);
                }
            }
            Some(s) => {
                stats.nodes += state.nodes;
                state.nodes = 0;
                let results = par::map_ordered(search.domains[s].clone(), |idx| {
                    let mut st = state.clone();
                    let r = if search.push(&mut st, s, idx) {
                        search.dfs(&mut st)
                    } else {
                        None
                    };
                    (r, st.nodes)
                });
                let mut found = None;
                for (r, n) in results {
                    stats.nodes += n;
                    if found.is_none() {
                        found = r;
                    }
                }
                return (found, stats);
            }
        }
    }
}

struct Search<'a> {
    hom: &'a [Vec<Vec<Rational>>],
    domains: Vec<Vec<usize>>,
    limit: usize,
    rows: usize,
    /// `varies[s][r]`: set `s` takes more than one value on row `r` within its domain.
    varies: Vec<Vec<bool>>,
}

#[derive(Clone)]
struct State {
    chosen: Vec<Option<usize>>,
    varying: Vec<usize>,
    cols: EchelonBasis,
    known_rows: EchelonBasis,
    nodes: u64,
}

impl State {
    fn choice(&self) -> Vec<usize> {
        self.chosen
            .iter()
            .map(|c| c.expect("complete choice"))
            .collect()
    }
}

// Undo record for one push.
struct Frame {
    set: usize,
    cols_len: usize,
    rows_len: usize,
}

impl<'a> Search<'a> {
    fn new(hom: &'a [Vec<Vec<Rational>>], domains: Vec<Vec<usize>>, limit: usize) -> Self {
        let rows = hom[0][0].len();
        let varies = hom
            .iter()
            .zip(&domains)
            .map(|(set, dom)| {
                (0..rows)
                    .map(|r| dom.iter().any(|&j| set[j][r] != set[dom[0]][r]))
                    .collect()
            })
            .collect();
        Self {
            hom,
            domains,
            limit,
            rows,
            varies,
        }
    }

    fn initial_state(&self) -> Option<State> {
        let k = self.hom.len();
        let mut varying = vec![0; self.rows];
        for v in &self.varies {
            for (c, &b) in varying.iter_mut().zip(v) {
                *c += usize::from(b);
            }
        }
        let mut st = State {
            chosen: vec![None; k],
            varying,
            cols: EchelonBasis::new(),
            known_rows: EchelonBasis::new(),
            nodes: 0,
        };
        for r in 0..self.rows {
            if st.varying[r] == 0 {
                let row = self.row_vector(&st, r);
                st.known_rows.insert(&row);
            }
        }
        (st.known_rows.len() <= self.limit).then_some(st)
    }

    fn row_vector(&self, st: &State, r: usize) -> Vec<Rational> {
        (0..self.hom.len())
            .map(|s| {
                let j = st.chosen[s].unwrap_or(self.domains[s][0]);
                self.hom[s][j][r].clone()
            })
            .collect()
    }

    fn pick(&self, st: &State) -> Option<usize> {
        let open = |s: &usize| st.chosen[*s].is_none();
        let k = self.hom.len();
        if let Some(s) = (0..k).filter(open).find(|&s| self.domains[s].len() == 1) {
            return Some(s);
        }
        let row = (0..self.rows)
            .filter(|&r| st.varying[r] > 0)
            .min_by_key(|&r| (st.varying[r], r));
        match row {
            Some(r) => (0..k)
                .filter(open)
                .filter(|&s| self.varies[s][r])
                .min_by_key(|&s| (self.domains[s].len(), s)),
            None => (0..k).find(open),
        }
    }

    /// Chooses point `idx` for set `s`; returns `false` (with state restored)
    /// when a rank bound is exceeded.
    fn push(&self, st: &mut State, s: usize, idx: usize) -> bool {
        self.push_frame(st, s, idx).is_some()
    }

    fn push_frame(&self, st: &mut State, s: usize, idx: usize) -> Option<Frame> {
        st.nodes += 1;
        let frame = Frame {
            set: s,
            cols_len: st.cols.len(),
            rows_len: st.known_rows.len(),
        };
        st.chosen[s] = Some(idx);
        for r in 0..self.rows {
            if self.varies[s][r] {
                st.varying[r] -= 1;
            }
        }
        let mut ok = !st.cols.insert(&self.hom[s][idx]) || st.cols.len() <= self.limit;
        if ok {
            for r in 0..self.rows {
                if self.varies[s][r] && st.varying[r] == 0 {
                    let row = self.row_vector(st, r);
                    st.known_rows.insert(&row);
                    if st.known_rows.len() > self.limit {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            Some(frame)
        } else {
            self.pop(st, frame);
            None
        }
    }

    fn pop(&self, st: &mut State, f: Frame) {
        st.chosen[f.set] = None;
        for r in 0..self.rows {
            if self.varies[f.set][r] {
                st.varying[r] += 1;
            }
        }
        st.cols.truncate(f.cols_len);
        st.known_rows.truncate(f.rows_len);
    }

    fn dfs(&self, st: &mut State) -> Option<Vec<usize>> {
        let Some(s) = self.pick(st) else {
            return Some(st.choice());
        };
        for &idx in &self.domains[s] {
            if let Some(frame) = self.push_frame(st, s, idx) {
                if let Some(found) = self.dfs(st) {
                    return Some(found);
                }
                self.pop(st, frame);
            }
        }
        None
    }
}
