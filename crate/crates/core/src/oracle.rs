//! Exact broadcast independence number of a small tree by exhaustive search.
//!
//! For a fixed set `T` of broadcast vertices the independence condition
//! `d(u, v) > max(f(u), f(v))` splits into one upper bound per vertex, so the
//! best broadcast supported on `T` gives each `v` in `T` the value
//! `min(ecc(v), min_{u in T, u != v} d(u, v) - 1)`. `T` is feasible iff all of
//! these are positive. The search maximizes the total over all non-empty `T`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{metrics, BroadcastAssignment, DistanceTable, Tree, Vertex};

/// Largest tree the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("tree has {0} vertices; the exact oracle is capped at {ORACLE_MAX_VERTICES}")]
    TooLarge(usize),
    #[error("tree has {0} vertices; the exact oracle needs at least 2")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub beta_b: u64,
    pub witness: BroadcastAssignment,
    /// Complete candidate supports evaluated.
    pub explored: u64,
}

const FAR: u8 = u8::MAX;

struct Search {
    n: usize,
    dist: Vec<[u8; ORACLE_MAX_VERTICES]>,
    ecc: Vec<u8>,
    allowed: u32,
    best_value: u64,
    best_mask: u32,
    explored: u64,
}

/// `a` precedes `b` when their sorted vertex lists compare lexicographically.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let v = diff.trailing_zeros();
    let above = if v >= 31 { 0 } else { !((1u32 << (v + 1)) - 1) };
    if a & (1 << v) != 0 {
        // `a` continues with v; `b` continues with something larger, or stops.
        b & above != 0
    } else {
        a & above == 0
    }
}

impl Search {
    fn value(&self, v: usize, nearest: u8) -> u64 {
        u64::from(self.ecc[v].min(nearest.saturating_sub(1)))
    }

    fn dfs(
        &mut self,
        i: usize,
        chosen: u32,
        nearest: &[u8; ORACLE_MAX_VERTICES],
        to_chosen: &[u8; ORACLE_MAX_VERTICES],
    ) {
        let current: u64 = (0..self.n)
            .filter(|&v| chosen & (1 << v) != 0)
            .map(|v| self.value(v, nearest[v]))
            .sum();
        // Adding vertices only lowers existing values, and a newcomer u is
        // capped by its distance to the current support.
        let optimistic: u64 = (i..self.n)
            .filter(|&u| self.allowed & (1 << u) != 0 && to_chosen[u] >= 2)
            .map(|u| self.value(u, to_chosen[u]))
            .sum();
        if current + optimistic < self.best_value {
            return;
        }
        if i == self.n {
            if chosen != 0 {
                self.explored += 1;
                if current > self.best_value
                    || (current == self.best_value && lex_less(chosen, self.best_mask))
                {
                    self.best_value = current;
                    self.best_mask = chosen;
                }
            }
            return;
        }
        if self.allowed & (1 << i) != 0 && to_chosen[i] >= 2 {
            let mut nearest2 = *nearest;
            let mut to_chosen2 = *to_chosen;
            let row = self.dist[i];
            for v in 0..self.n {
                if chosen & (1 << v) != 0 {
                    nearest2[v] = nearest2[v].min(row[v]);
                }
                to_chosen2[v] = to_chosen2[v].min(row[v]);
            }
            nearest2[i] = to_chosen[i];
            self.dfs(i + 1, chosen | (1 << i), &nearest2, &to_chosen2);
        }
        self.dfs(i + 1, chosen, nearest, to_chosen);
    }
}

fn check_size(tree: &Tree) -> Result<(), OracleError> {
    match tree.n() {
        n if n > ORACLE_MAX_VERTICES => Err(OracleError::TooLarge(n)),
        n if n < 2 => Err(OracleError::TooSmall(n)),
        _ => Ok(()),
    }
}

fn witness(table: &DistanceTable, mask: u32) -> BroadcastAssignment {
    let n = table.n();
    let mut f = BroadcastAssignment::zeros(n);
    for v in (0..n).filter(|&v| mask & (1 << v) != 0) {
        let nearest = (0..n)
            .filter(|&u| u != v && mask & (1 << u) != 0)
            .map(|u| table.dist(u, v))
            .min()
            .unwrap_or(u32::MAX);
        f.set(v, u64::from(table.ecc(v).min(nearest.saturating_sub(1))));
    }
    f
}

/// Best independent broadcast whose broadcast vertices avoid `excluded`.
pub fn exact_beta_b_excluding(
    tree: &Tree,
    excluded: &[Vertex],
) -> Result<OracleResult, OracleError> {
    check_size(tree)?;
    let n = tree.n();
    let table = metrics(tree);
    let mut dist = vec![[FAR; ORACLE_MAX_VERTICES]; n];
    for (u, row) in dist.iter_mut().enumerate() {
        for (v, d) in row.iter_mut().enumerate().take(n) {
            *d = table.dist(u, v) as u8;
        }
    }
    let mut allowed: u32 = (1u32 << n) - 1;
    for &v in excluded {
        allowed &= !(1 << v);
    }
    let mut search = Search {
        n,
        dist,
        ecc: (0..n).map(|v| table.ecc(v) as u8).collect(),
        allowed,
        best_value: 0,
        best_mask: 0,
        explored: 0,
    };
    search.dfs(
        0,
        0,
        &[FAR; ORACLE_MAX_VERTICES],
        &[FAR; ORACLE_MAX_VERTICES],
    );
    Ok(OracleResult {
        beta_b: search.best_value,
        witness: witness(&table, search.best_mask),
        explored: search.explored,
    })
}

/// Maximum cost of an independent broadcast on `tree` (at most 24 vertices).
pub fn exact_beta_b(tree: &Tree) -> Result<OracleResult, OracleError> {
    exact_beta_b_excluding(tree, &[])
}

/// Same answer as [`exact_beta_b`] by plain enumeration of every vertex
/// subset, without pruning. Exponential in `n`; for cross-checks only.
pub fn exact_beta_b_plain(tree: &Tree) -> Result<OracleResult, OracleError> {
    check_size(tree)?;
    let n = tree.n();
    let table = metrics(tree);
    let mut best_value = 0u64;
    let mut best_mask = 0u32;
    let mut explored = 0u64;
    'subsets: for mask in 1u32..(1u32 << n) {
        let mut total = 0u64;
        for v in (0..n).filter(|&v| mask & (1 << v) != 0) {
            let nearest = (0..n)
                .filter(|&u| u != v && mask & (1 << u) != 0)
                .map(|u| table.dist(u, v))
                .min()
                .unwrap_or(u32::MAX);
            let value = table.ecc(v).min(nearest.saturating_sub(1));
            if value == 0 {
                continue 'subsets;
            }
            total += u64::from(value);
        }
        explored += 1;
        if total > best_value || (total == best_value && lex_less(mask, best_mask)) {
            best_value = total;
            best_mask = mask;
        }
    }
    Ok(OracleResult {
        beta_b: best_value,
        witness: witness(&table, best_mask),
        explored,
    })
}

/// `|A| * (diam - 1)` for a greedily grown set `A` of pairwise antipodal
/// vertices (always at least two of them).
pub fn lower_bound_antipodal(tree: &Tree) -> u64 {
    if tree.n() < 2 {
        return 0;
    }
    let table = metrics(tree);
    let diam = table.diameter();
    let peripheral: Vec<Vertex> = (0..tree.n()).filter(|&v| table.ecc(v) == diam).collect();
    let best = peripheral
        .iter()
        .map(|&seed| {
            let mut set = vec![seed];
            for &v in &peripheral {
                if set.iter().all(|&u| table.dist(u, v) == diam) {
                    set.push(v);
                }
            }
            set.len()
        })
        .max()
        .unwrap_or(0);
    best as u64 * u64::from(diam - 1)
}

/// Vertices adjacent to a leaf.
pub fn support_vertices(tree: &Tree) -> Vec<Vertex> {
    (0..tree.n())
        .filter(|&v| !tree.is_leaf(v) && tree.neighbors(v).iter().any(|&w| tree.is_leaf(w)))
        .collect()
}
