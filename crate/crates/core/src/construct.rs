//! Explicit optimal independent broadcast, built in four stages.
//!
//! Stage one puts 2 on every 2-only-leaf and 1 on every other leaf. Stage
//! two moves each small depth-2 branch (at most two leaves) to a single
//! leaf valued 3. Stage three does the same for every `Xc` subtree. Stage
//! four walks the selected runs: their `Fa` roots get 1, and their `Xb` and
//! `Xc` members are lowered so they stop blocking the spine.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beta_star::{beta_star, BetaStarError};
use crate::classify::{classify_all, select_runs, SpineRun, SubtreeType};
use crate::lobster::{DepthClass, LobsterStructure, SpineSubtree};
use crate::tree::{
    eccentricities, is_broadcast_sparse, is_independent_sparse, BroadcastAssignment,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("expected a spine of length 0, got {0}")]
    WrongLength(usize),
    #[error("stage {stage} fails {predicate}")]
    VerificationFailure { stage: usize, predicate: String },
    #[error(transparent)]
    BetaStar(#[from] BetaStarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    /// `f1..f4`, or the single direct assignment when `k = 0`.
    pub stages: Vec<BroadcastAssignment>,
    pub costs: Vec<u64>,
    pub final_cost: u64,
}

impl ConstructionTrace {
    pub fn final_stage(&self) -> &BroadcastAssignment {
        self.stages.last().expect("at least one stage")
    }
}

fn small_branches(s: &SpineSubtree) -> impl Iterator<Item = &crate::lobster::Branch> {
    s.branches
        .iter()
        .filter(|b| b.depth == 2 && b.leaves.len() <= 2)
}

/// Puts `value` on the first leaf of `leaves` and 0 on its sisters.
fn concentrate(f: &mut BroadcastAssignment, leaves: &[usize], value: u64) {
    let (first, sisters) = leaves.split_first().expect("non-empty branch");
    f.set(*first, value);
    for &l in sisters {
        f.set(l, 0);
    }
}

/// Direct construction for a single spine vertex.
pub fn construct_k0(
    structure: &LobsterStructure,
    types: &[SubtreeType],
) -> Result<BroadcastAssignment, ConstructError> {
    if structure.k() != 0 {
        return Err(ConstructError::WrongLength(structure.k()));
    }
    let mut f = BroadcastAssignment::zeros(structure.n());
    let s = &structure.subtrees()[0];
    for b in &s.branches {
        if b.leaves.len() <= 2 {
            concentrate(&mut f, &b.leaves, 3);
        } else {
            b.leaves.iter().for_each(|&l| f.set(l, 1));
        }
    }
    if types[0] == SubtreeType::Fa {
        f.set(s.root, 1);
    }
    Ok(f)
}

pub fn step1(structure: &LobsterStructure) -> BroadcastAssignment {
    let mut f = BroadcastAssignment::zeros(structure.n());
    for b in structure.subtrees().iter().flat_map(|s| &s.branches) {
        let only = b.depth == 2 && b.leaves.len() == 1;
        for &l in &b.leaves {
            f.set(l, if only { 2 } else { 1 });
        }
    }
    f
}

pub fn step2(structure: &LobsterStructure, f1: &BroadcastAssignment) -> BroadcastAssignment {
    let mut f = f1.clone();
    for s in structure.subtrees() {
        if s.depth_class == DepthClass::S2 {
            for b in small_branches(s) {
                concentrate(&mut f, &b.leaves, 3);
            }
        }
    }
    f
}

fn xc_leaves(s: &SpineSubtree) -> Vec<usize> {
    s.leaves().collect()
}

pub fn step3(
    structure: &LobsterStructure,
    types: &[SubtreeType],
    f2: &BroadcastAssignment,
) -> BroadcastAssignment {
    let mut f = f2.clone();
    for (s, _) in structure
        .subtrees()
        .iter()
        .zip(types)
        .filter(|(_, &t)| t == SubtreeType::Xc)
    {
        concentrate(&mut f, &xc_leaves(s), 3);
    }
    f
}

pub fn step4(
    structure: &LobsterStructure,
    types: &[SubtreeType],
    sequences: &[SpineRun],
    f3: &BroadcastAssignment,
) -> BroadcastAssignment {
    let mut f = f3.clone();
    let subs = structure.subtrees();
    for seq in sequences {
        for i in seq.a_positions() {
            f.set(subs[i].root, 1);
        }
        for i in seq.x_positions() {
            match types[i] {
                SubtreeType::Xb => {
                    let b = small_branches(&subs[i])
                        .next()
                        .expect("Xb has one small branch");
                    concentrate(&mut f, &b.leaves, 2);
                }
                SubtreeType::Xc => xc_leaves(&subs[i]).into_iter().for_each(|l| f.set(l, 1)),
                _ => {}
            }
        }
    }
    f
}

/// Largest `e` such that the subtree holds a 1-leaf valued `e + 1` or a
/// 2-leaf valued `e + 2`.
pub fn exceed_by(s: &SpineSubtree, f: &BroadcastAssignment) -> u64 {
    s.branches
        .iter()
        .flat_map(|b| {
            b.leaves
                .iter()
                .map(move |&l| f.get(l).saturating_sub(u64::from(b.depth)))
        })
        .max()
        .unwrap_or(0)
}

/// Runs every stage, checks each one, and checks the final cost against
/// the closed form.
pub fn construct(structure: &LobsterStructure) -> Result<ConstructionTrace, ConstructError> {
    let report = beta_star(structure)?;
    let types = classify_all(structure).map_err(BetaStarError::from)?;
    let stages = if structure.k() == 0 {
        vec![construct_k0(structure, &types)?]
    } else {
        let sequences = select_runs(&types);
        let f1 = step1(structure);
        let f2 = step2(structure, &f1);
        let f3 = step3(structure, &types, &f2);
        let f4 = step4(structure, &types, &sequences, &f3);
        vec![f1, f2, f3, f4]
    };

    let ecc = eccentricities(structure.tree());
    for (i, f) in stages.iter().enumerate() {
        let stage = i + 1;
        if !is_broadcast_sparse(structure.tree(), &ecc, f) {
            return Err(ConstructError::VerificationFailure {
                stage,
                predicate: "is_broadcast".into(),
            });
        }
        if !is_independent_sparse(structure.tree(), f) {
            return Err(ConstructError::VerificationFailure {
                stage,
                predicate: "is_independent".into(),
            });
        }
    }
    let costs: Vec<u64> = stages.iter().map(BroadcastAssignment::cost).collect();
    if costs.windows(2).any(|w| w[0] > w[1]) {
        return Err(ConstructError::VerificationFailure {
            stage: costs.windows(2).position(|w| w[0] > w[1]).unwrap() + 2,
            predicate: "non-decreasing cost".into(),
        });
    }
    let final_cost = *costs.last().expect("at least one stage");
    if final_cost != report.beta_star {
        return Err(ConstructError::VerificationFailure {
            stage: stages.len(),
            predicate: format!(
                "cost {final_cost} equal to closed form {}",
                report.beta_star
            ),
        });
    }
    Ok(ConstructionTrace {
        stages,
        costs,
        final_cost,
    })
}
