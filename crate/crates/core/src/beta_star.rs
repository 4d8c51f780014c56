//! Closed-form broadcast independence number of a locally uniform
//! 2-lobster, computed from the leaf census in one pass.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify_all, select_runs, SpineRun, SubtreeType};
use crate::lobster::{DepthClass, LobsterError, LobsterStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BetaStarError {
    #[error(transparent)]
    Lobster(#[from] LobsterError),
    #[error("summand total {nu_sum} differs from per-subtree total {per_subtree_sum}")]
    DecompositionMismatch { nu_sum: u64, per_subtree_sum: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nus {
    pub nu1: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu4: u64,
}

impl Nus {
    pub fn total(&self) -> u64 {
        self.nu1 + self.nu2 + self.nu3 + self.nu4
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaStarReport {
    pub nu1: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu4: u64,
    pub beta_star: u64,
    pub per_subtree: Vec<u64>,
    pub types: Vec<SubtreeType>,
    pub sequences: Vec<SpineRun>,
}

/// `nu1`: leaves, 2-only-leaves counted twice. `nu2`: depth-2 branches with
/// at most two leaves. `nu3`: `Xc` subtrees. `nu4`: run values.
pub fn compute_nus(
    structure: &LobsterStructure,
    types: &[SubtreeType],
    sequences: &[SpineRun],
) -> Nus {
    let nu1 =
        structure.lambda1_total() + structure.lambda2_total() + structure.lambda2_star_total();
    let nu2 = structure
        .subtrees()
        .iter()
        .filter(|s| s.depth_class == DepthClass::S2)
        .map(|s| u64::from(s.alpha2_star))
        .sum();
    let nu3 = types.iter().filter(|&&t| t == SubtreeType::Xc).count() as u64;
    let nu4 = sequences.iter().map(SpineRun::value).sum();
    Nus { nu1, nu2, nu3, nu4 }
}

/// The value each spine-subtree carries in the optimal construction.
pub fn per_subtree_values(
    structure: &LobsterStructure,
    types: &[SubtreeType],
    sequences: &[SpineRun],
) -> Vec<u64> {
    let len = types.len();
    let mut a_role = vec![false; len];
    let mut x_role = vec![false; len];
    for seq in sequences {
        seq.a_positions().for_each(|i| a_role[i] = true);
        seq.x_positions().for_each(|i| x_role[i] = true);
    }
    structure
        .subtrees()
        .iter()
        .zip(types)
        .enumerate()
        .map(|(i, (s, &t))| {
            let deep = u64::from(s.lambda2) + u64::from(s.lambda2_star) + u64::from(s.alpha2_star);
            match t {
                SubtreeType::G | SubtreeType::Xa => u64::from(s.lambda1),
                SubtreeType::Xb => deep - u64::from(x_role[i]),
                SubtreeType::Xc => 3 - u64::from(x_role[i]),
                SubtreeType::Yc => deep,
                SubtreeType::Fa => u64::from(s.lambda2) + u64::from(a_role[i]),
            }
        })
        .collect()
}

/// Full report, after checking that both decompositions agree.
pub fn beta_star(structure: &LobsterStructure) -> Result<BetaStarReport, BetaStarError> {
    let types = classify_all(structure)?;
    let sequences = select_runs(&types);
    let nus = compute_nus(structure, &types, &sequences);
    let per_subtree = per_subtree_values(structure, &types, &sequences);
    let per_subtree_sum: u64 = per_subtree.iter().sum();
    if per_subtree_sum != nus.total() {
        return Err(BetaStarError::DecompositionMismatch {
            nu_sum: nus.total(),
            per_subtree_sum,
        });
    }
    Ok(BetaStarReport {
        nu1: nus.nu1,
        nu2: nus.nu2,
        nu3: nus.nu3,
        nu4: nus.nu4,
        beta_star: nus.total(),
        per_subtree,
        types,
        sequences,
    })
}

impl BetaStarReport {
    pub fn nus(&self) -> Nus {
        Nus {
            nu1: self.nu1,
            nu2: self.nu2,
            nu3: self.nu3,
            nu4: self.nu4,
        }
    }
}
