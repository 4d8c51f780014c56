//! Seeded random lobster specs and exhaustive enumeration of small ones.
//!
//! Randomness comes from `ChaCha8Rng` (rand_chacha), which is portable across
//! platforms, so a seed always reproduces the same stream of specs.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lobster::{orientation, CensusKey, LobsterSpec, SubtreeSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("empty range for {0}")]
    EmptyRange(&'static str),
    #[error("{0} must be at least {1}")]
    RangeFloor(&'static str, u32),
    #[error("the smallest admissible spec has {min} vertices, above the cap of {max_vertices}")]
    Unsatisfiable { min: usize, max_vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed: u64,
    pub k_range: RangeInclusive<usize>,
    /// Depth-2 branches per S2 subtree.
    pub branch_count_range: RangeInclusive<u32>,
    /// 2-leaves per depth-2 branch.
    pub leaf_count_range: RangeInclusive<u32>,
    /// 1-leaves per S1 subtree.
    pub s1_leaf_range: RangeInclusive<u32>,
    pub max_vertices: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            k_range: 0..=4,
            branch_count_range: 2..=4,
            leaf_count_range: 1..=4,
            s1_leaf_range: 2..=4,
            max_vertices: 22,
        }
    }
}

impl GenParams {
    fn check(&self) -> Result<(), GenError> {
        if self.k_range.is_empty() {
            return Err(GenError::EmptyRange("k_range"));
        }
        if self.branch_count_range.is_empty() {
            return Err(GenError::EmptyRange("branch_count_range"));
        }
        if self.leaf_count_range.is_empty() {
            return Err(GenError::EmptyRange("leaf_count_range"));
        }
        if self.s1_leaf_range.is_empty() {
            return Err(GenError::EmptyRange("s1_leaf_range"));
        }
        if *self.branch_count_range.start() < 2 {
            return Err(GenError::RangeFloor("branch_count_range", 2));
        }
        if *self.leaf_count_range.start() < 1 {
            return Err(GenError::RangeFloor("leaf_count_range", 1));
        }
        if *self.s1_leaf_range.start() < 2 {
            return Err(GenError::RangeFloor("s1_leaf_range", 2));
        }
        let min = self.min_vertices();
        if min > self.max_vertices {
            return Err(GenError::Unsatisfiable {
                min,
                max_vertices: self.max_vertices,
            });
        }
        Ok(())
    }

    /// Size of the smallest spec the ranges allow.
    pub fn min_vertices(&self) -> usize {
        let b = *self.branch_count_range.start() as usize;
        let c = *self.leaf_count_range.start() as usize;
        let smallest_s2 = 1 + b * (1 + c);
        let smallest_s1 = 1 + *self.s1_leaf_range.start() as usize;
        let k = *self.k_range.start();
        match k {
            0 => smallest_s2,
            _ => 2 * smallest_s2 + (k - 1) * smallest_s1.min(smallest_s2),
        }
    }
}

/// Infinite deterministic stream of random specs.
pub struct RandomInstances {
    params: GenParams,
    rng: ChaCha8Rng,
}

impl RandomInstances {
    pub fn new(params: GenParams) -> Result<Self, GenError> {
        params.check()?;
        Ok(RandomInstances {
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            params,
        })
    }

    fn s2(&mut self) -> SubtreeSpec {
        let b = self.rng.gen_range(self.params.branch_count_range.clone());
        SubtreeSpec::S2 {
            branches: (0..b)
                .map(|_| self.rng.gen_range(self.params.leaf_count_range.clone()))
                .collect(),
        }
    }

    fn draw(&mut self) -> LobsterSpec {
        let k = self.rng.gen_range(self.params.k_range.clone());
        let subtrees = (0..=k)
            .map(|i| {
                if i == 0 || i == k || self.rng.gen_bool(0.5) {
                    self.s2()
                } else {
                    SubtreeSpec::S1 {
                        leaves: self.rng.gen_range(self.params.s1_leaf_range.clone()),
                    }
                }
            })
            .collect();
        LobsterSpec { subtrees }
    }
}

impl Iterator for RandomInstances {
    type Item = LobsterSpec;

    fn next(&mut self) -> Option<LobsterSpec> {
        loop {
            let spec = self.draw();
            if spec.vertex_count() <= self.params.max_vertices {
                return Some(spec);
            }
        }
    }
}

/// First spec of the stream for `params`.
pub fn random_instance(params: &GenParams) -> Result<LobsterSpec, GenError> {
    Ok(RandomInstances::new(params.clone())?
        .next()
        .expect("the stream is infinite"))
}

/// Deterministic instance with roughly `target` vertices, alternating
/// subtree shapes so that every type shows up.
pub fn instance_of_size(target: usize, seed: u64) -> LobsterSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subtrees = vec![SubtreeSpec::S2 {
        branches: vec![3, 3],
    }];
    let mut size = subtrees[0].vertex_count();
    while size + 7 < target {
        let next = match rng.gen_range(0..4) {
            0 => SubtreeSpec::S1 {
                leaves: rng.gen_range(2..=4),
            },
            1 => SubtreeSpec::S2 {
                branches: (0..rng.gen_range(2..=4))
                    .map(|_| rng.gen_range(1..=5))
                    .collect(),
            },
            2 => SubtreeSpec::S2 {
                branches: vec![3, 4],
            },
            _ => SubtreeSpec::S1 { leaves: 2 },
        };
        size += next.vertex_count();
        subtrees.push(next);
    }
    subtrees.push(SubtreeSpec::S2 {
        branches: vec![3, 3],
    });
    LobsterSpec { subtrees }
}

/// The building blocks enumeration draws from. Each S2 entry is a sorted
/// branch multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub s1_leaves: Vec<u32>,
    pub s2_branches: Vec<Vec<u32>>,
}

impl Catalog {
    /// S1 sizes `2..=max_branches` and every multiset of `2..=max_branches`
    /// branch sizes drawn from `1..=max_leaves`.
    pub fn bounded(max_branches: u32, max_leaves: u32) -> Catalog {
        let mut s2 = Vec::new();
        for b in 2..=max_branches {
            multisets(b as usize, 1, max_leaves, &mut Vec::new(), &mut s2);
        }
        Catalog {
            s1_leaves: (2..=max_branches).collect(),
            s2_branches: s2,
        }
    }

    /// Catalog entries in enumeration order: S1 by size, then S2 multisets
    /// by branch count and lexicographically.
    fn entries(&self) -> Vec<SubtreeSpec> {
        let mut s1: Vec<u32> = self.s1_leaves.clone();
        s1.sort_unstable();
        s1.dedup();
        let mut s2: Vec<Vec<u32>> = self
            .s2_branches
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        s2.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        s2.dedup();
        s1.into_iter()
            .map(|leaves| SubtreeSpec::S1 { leaves })
            .chain(s2.into_iter().map(|branches| SubtreeSpec::S2 { branches }))
            .collect()
    }
}

fn multisets(len: usize, min: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    for c in min..=max {
        prefix.push(c);
        multisets(len, c, max, prefix, out);
        prefix.pop();
    }
}

/// Every valid spec over `catalog` with at most `max_vertices` vertices and
/// spine length at most `k_max`, one per reversal class (the canonical
/// orientation). Ordered by `k`, then lexicographically by catalog position.
pub fn enumerate_small(
    max_vertices: usize,
    k_max: usize,
    catalog: &Catalog,
) -> impl Iterator<Item = LobsterSpec> {
    let entries = catalog.entries();
    let keys: Vec<CensusKey> = entries.iter().map(SubtreeSpec::census_key).collect();
    let mut out = Vec::new();
    for k in 0..=k_max {
        let mut chosen = Vec::with_capacity(k + 1);
        extend(
            &entries,
            &keys,
            k + 1,
            max_vertices,
            &mut chosen,
            0,
            &mut out,
        );
    }
    out.into_iter()
}

fn extend(
    entries: &[SubtreeSpec],
    keys: &[CensusKey],
    len: usize,
    budget: usize,
    chosen: &mut Vec<usize>,
    used: usize,
    out: &mut Vec<LobsterSpec>,
) {
    if chosen.len() == len {
        let seq: Vec<&CensusKey> = chosen.iter().map(|&i| &keys[i]).collect();
        if orientation(&seq) != Ordering::Greater {
            out.push(LobsterSpec {
                subtrees: chosen.iter().map(|&i| entries[i].clone()).collect(),
            });
        }
        return;
    }
    let at_end = chosen.is_empty() || chosen.len() == len - 1;
    for (i, e) in entries.iter().enumerate() {
        if at_end && !e.is_s2() {
            continue;
        }
        let size = e.vertex_count();
        if used + size > budget {
            continue;
        }
        chosen.push(i);
        extend(entries, keys, len, budget, chosen, used + size, out);
        chosen.pop();
    }
}
