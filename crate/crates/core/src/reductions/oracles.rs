//! Exhaustive solvers for the source problems. They share no code with the
//! geometric side so that agreement between the two is meaningful.

use super::{BinPackingInstance, Graph, SubsetSumInstance};
use crate::error::{Error, Result};

/// Largest search space any oracle will walk.
pub const ORACLE_BUDGET: u128 = 1 << 24;

fn check_budget(what: &str, size: u128) -> Result<()> {
    if size > ORACLE_BUDGET {
        return Err(Error::BudgetExceeded(format!("{what}: {size} candidates")));
    }
    Ok(())
}

/// First subset (0-based indices) in increasing bitmask order whose sum is
/// `b`. The empty subset counts.
pub fn solve_subsetsum(inst: &SubsetSumInstance) -> Result<Option<Vec<usize>>> {
    let n = inst.a.len();
    if n >= 128 {
        return Err(Error::BudgetExceeded(format!(
            "subset sum over {n} numbers"
        )));
    }
    check_budget("subset sum", 1u128 << n)?;
    let target = i128::from(inst.b);
    for mask in 0u64..1 << n {
        let sum: i128 = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i128::from(inst.a[i]))
            .sum();
        if sum == target {
            return Ok(Some((0..n).filter(|i| mask >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// First assignment (bin per item, 0-based, item 0 most significant) that
/// fills every bin to exactly the capacity.
pub fn solve_equalbin(inst: &BinPackingInstance) -> Result<Option<Vec<usize>>> {
    let n = inst.weights.len();
    let k = inst.bins as usize;
    let size = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(k as u128));
    check_budget("bin packing", size.unwrap_or(u128::MAX))?;
    let mut assign = vec![0usize; n];
    let mut load = vec![0u64; k];
    fn rec(i: usize, inst: &BinPackingInstance, assign: &mut [usize], load: &mut [u64]) -> bool {
        if i == assign.len() {
            return load.iter().all(|&l| l == inst.capacity);
        }
        for j in 0..load.len() {
            assign[i] = j;
            load[j] += inst.weights[i];
            let ok = rec(i + 1, inst, assign, load);
            load[j] -= inst.weights[i];
            if ok {
                return true;
            }
        }
        false
    }
    Ok(rec(0, inst, &mut assign, &mut load).then_some(assign))
}

/// First `k`-clique (1-based vertices) in lexicographic order.
pub fn has_clique(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if k > n {
        return Ok(None);
    }
    let mut size = 1u128;
    for t in 0..k as u128 {
        size = size * (n as u128 - t) / (t + 1);
    }
    check_budget("clique", size)?;
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut pick: Vec<usize> = (1..=k).collect();
    loop {
        if pick
            .iter()
            .enumerate()
            .all(|(a, &u)| pick[a + 1..].iter().all(|&v| g.adjacent(u, v)))
        {
            return Ok(Some(pick));
        }
        let Some(pos) = (0..k).rev().find(|&p| pick[p] < n - (k - 1 - p)) else {
            return Ok(None);
        };
        pick[pos] += 1;
        for t in pos + 1..k {
            pick[t] = pick[t - 1] + 1;
        }
    }
}
