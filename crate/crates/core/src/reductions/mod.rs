//! Instance generators for the hardness reductions, and brute-force oracles
//! for the source problems.

mod lifting;
mod oracles;
mod segments;

pub use lifting::{flattrans_to_hyptrans, LiftGuarantee, LiftMode, Lifted, PROJECTION_BUDGET};
pub use oracles::{has_clique, solve_equalbin, solve_subsetsum, ORACLE_BUDGET};
pub use segments::{twopoint_to_segments, SegmentMode};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{Point, PointFamily, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    pub a: Vec<i64>,
    pub b: i64,
}

impl SubsetSumInstance {
    pub fn new(a: Vec<i64>, b: i64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::MalformedInstance(
                "subset sum needs at least one number".into(),
            ));
        }
        Ok(Self { a, b })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingInstance {
    pub weights: Vec<u64>,
    pub bins: u64,
    pub capacity: u64,
}

impl BinPackingInstance {
    pub fn new(weights: Vec<u64>, bins: u64, capacity: u64) -> Result<Self> {
        if bins == 0 || capacity == 0 {
            return Err(Error::MalformedInstance(
                "bins and capacity must be positive".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::MalformedInstance("weights must be positive".into()));
        }
        Ok(Self {
            weights,
            bins,
            capacity,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equalized {
    Equal(BinPackingInstance),
    TriviallyNo,
}

/// Undirected simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges may be given in either orientation; they are stored sorted with
    /// `i < j`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == j {
                return Err(Error::MalformedInstance(format!("self-loop at vertex {i}")));
            }
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::MalformedInstance(format!(
                    "edge {{{i},{j}}} outside 1..={n}"
                )));
            }
            out.push((i.min(j), i.max(j)));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInstance("duplicate edge".into()));
        }
        Ok(Self { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i.min(j), i.max(j))).is_ok()
    }
}

fn zero(d: usize) -> Point {
    vec![Rational::zero(); d]
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// `n + 2` sets in `R^{n+1}`: `{v_i, w_i}` per number, then `{u}` and `{0}`.
pub fn subsetsum_to_hyptrans(inst: &SubsetSumInstance) -> Result<PointFamily> {
    let n = inst.a.len();
    let d = n + 1;
    let mut sets = Vec::with_capacity(n + 2);
    for (i, &ai) in inst.a.iter().enumerate() {
        let mut w = zero(d);
        w[i + 1] = Rational::one();
        let mut v = w.clone();
        v[0] = int(ai);
        sets.push(vec![v, w]);
    }
    let mut u = vec![int(-1); d];
    u[0] = int(-inst.b);
    sets.push(vec![u]);
    sets.push(vec![zero(d)]);
    PointFamily::new(d, sets)
}

/// Pads with unit items so the bins must be filled exactly.
pub fn binpacking_to_equal(inst: &BinPackingInstance) -> Equalized {
    let total: u128 = inst.weights.iter().map(|&w| u128::from(w)).sum();
    let room = u128::from(inst.bins) * u128::from(inst.capacity);
    if total > room || inst.weights.iter().any(|&w| w > inst.capacity) {
        return Equalized::TriviallyNo;
    }
    let mut weights = inst.weights.clone();
    weights.extend(std::iter::repeat_n(1, (room - total) as usize));
    Equalized::Equal(BinPackingInstance {
        weights,
        bins: inst.bins,
        capacity: inst.capacity,
    })
}

/// `kn + 2` sets in `R^{k+n+kn}` and the target flat dimension `kn`.
pub fn equalbin_to_flattrans(inst: &BinPackingInstance) -> Result<(PointFamily, usize)> {
    let n = inst.weights.len();
    let k =
        usize::try_from(inst.bins).map_err(|_| Error::MalformedInstance("too many bins".into()))?;
    if n == 0 {
        return Err(Error::MalformedInstance(
            "bin packing needs at least one item".into(),
        ));
    }
    let d = k + n + k * n;
    let mut sets = Vec::with_capacity(k * n + 2);
    for (i, &w) in inst.weights.iter().enumerate() {
        for j in 0..k {
            let mut u = zero(d);
            u[k + n + i * k + j] = Rational::one();
            let mut v = u.clone();
            v[j] = Rational::from_integer(w.into());
            v[k + i] = Rational::one();
            sets.push(vec![v, u]);
        }
    }
    let mut c = vec![int(-1); d];
    for x in c.iter_mut().take(k) {
        *x = -Rational::from_integer(inst.capacity.into());
    }
    sets.push(vec![c]);
    sets.push(vec![zero(d)]);
    Ok((PointFamily::new(d, sets)?, k * n))
}

/// Gadget coordinates (0-based) for the clique construction.
struct CliqueLayout {
    k: usize,
}

impl CliqueLayout {
    fn encoding(&self, alpha: usize, beta: usize) -> usize {
        alpha * self.k + beta
    }
    fn row(&self, alpha: usize) -> usize {
        self.k * self.k + alpha
    }
    fn col(&self, beta: usize) -> usize {
        self.k * self.k + self.k + beta
    }
    fn left(&self, alpha: usize) -> usize {
        self.k * self.k + 2 * self.k + alpha
    }
    fn right(&self, beta: usize) -> usize {
        self.k * self.k + 3 * self.k + beta
    }
    fn dimension(&self) -> usize {
        self.k * self.k + 4 * self.k
    }
}

/// `k² + 2k + 2` sets in `R^{k²+4k}` and the target flat dimension `k² + 2k`.
///
/// Sets are ordered: encoding gadgets row by row, row gadgets, column
/// gadgets, `{0}`, `{p_1}`. Vertex `i` of the graph is encoded by `k^i`.
pub fn clique_to_flattrans(g: &Graph, k: usize) -> Result<(PointFamily, usize)> {
    let n = g.n();
    if k < 2 || k > n {
        return Err(Error::BadK { k, n });
    }
    let lay = CliqueLayout { k };
    let d = lay.dimension();
    let kb = BigInt::from(k);
    let pow = |e: usize| Rational::from_integer(Pow::pow(&kb, e));
    let unit = |gadget: usize| {
        let mut p = zero(d);
        p[gadget] = Rational::one();
        p
    };
    // Both orientations of every edge, lexicographic.
    let mut tuples: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .flat_map(|&(i, j)| [(i, j), (j, i)])
        .collect();
    tuples.sort_unstable();

    let mut sets = Vec::with_capacity(k * k + 2 * k + 2);
    for alpha in 0..k {
        for beta in 0..k {
            let gadget = lay.encoding(alpha, beta);
            let set = if alpha == beta {
                (1..=n)
                    .map(|i| {
                        let mut p = unit(gadget);
                        p[lay.left(alpha)] = pow(i);
                        p[lay.right(alpha)] = pow(i);
                        p
                    })
                    .collect()
            } else {
                tuples
                    .iter()
                    .map(|&(i, j)| {
                        let mut p = unit(gadget);
                        p[lay.left(alpha)] = pow(i);
                        p[lay.right(beta)] = pow(j);
                        p
                    })
                    .collect()
            };
            sets.push(set);
        }
    }
    for alpha in 0..k {
        sets.push(
            (1..=n)
                .map(|i| {
                    let mut p = unit(lay.row(alpha));
                    p[lay.left(alpha)] = -pow(i + 1);
                    p
                })
                .collect(),
        );
    }
    for beta in 0..k {
        sets.push(
            (1..=n)
                .map(|j| {
                    let mut p = unit(lay.col(beta));
                    p[lay.right(beta)] = -pow(j + 1);
                    p
                })
                .collect(),
        );
    }
    sets.push(vec![zero(d)]);
    let target = k * k + 2 * k;
    let mut p1 = zero(d);
    for x in p1.iter_mut().take(target) {
        *x = int(-1);
    }
    sets.push(vec![p1]);
    Ok((PointFamily::new(d, sets)?, target))
}
