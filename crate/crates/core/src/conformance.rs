//! Differential check of the closed form against the exact oracle.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beta_star::{beta_star, BetaStarError, BetaStarReport};
use crate::construct::{construct, ConstructError, ConstructionTrace};
use crate::lobster::{build_tree_from_spec, validate, LobsterError, LobsterSpec, LobsterStructure};
use crate::oracle::{exact_beta_b, OracleError, OracleResult};
use crate::tree::BroadcastAssignment;

/// Anything that maps a lobster to a claimed broadcast independence number.
pub type Formula = fn(&LobsterStructure) -> Result<u64, BetaStarError>;

pub fn closed_form(structure: &LobsterStructure) -> Result<u64, BetaStarError> {
    beta_star(structure).map(|r| r.beta_star)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConformanceError {
    #[error("{spec}: {source}")]
    Lobster { spec: String, source: LobsterError },
    #[error("{spec}: {source}")]
    Formula { spec: String, source: BetaStarError },
    #[error("{spec}: {source}")]
    Construct {
        spec: String,
        source: ConstructError,
    },
    #[error("{spec}: {source}")]
    Oracle { spec: String, source: OracleError },
}

impl ConformanceError {
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            ConformanceError::Oracle {
                source: OracleError::TooLarge(_),
                ..
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub spec: LobsterSpec,
    pub beta_star: u64,
    pub beta_b: u64,
    pub witness: BroadcastAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub instances_run: usize,
    pub mismatches: Vec<Mismatch>,
    /// Wall time; left out of the JSON so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Everything computed for one instance.
#[derive(Debug, Clone)]
pub struct InstanceCheck {
    pub structure: LobsterStructure,
    pub report: BetaStarReport,
    pub trace: ConstructionTrace,
    pub claimed: u64,
    pub oracle: OracleResult,
}

/// Build, validate, classify, evaluate, construct (verified) and solve
/// exactly one spec.
pub fn check_instance(
    spec: &LobsterSpec,
    formula: Formula,
) -> Result<InstanceCheck, ConformanceError> {
    let label = || spec.to_string();
    let structure = build_tree_from_spec(spec).map_err(|source| ConformanceError::Lobster {
        spec: label(),
        source,
    })?;
    validate(&structure).map_err(|source| ConformanceError::Lobster {
        spec: label(),
        source,
    })?;
    let report = beta_star(&structure).map_err(|source| ConformanceError::Formula {
        spec: label(),
        source,
    })?;
    let trace = construct(&structure).map_err(|source| ConformanceError::Construct {
        spec: label(),
        source,
    })?;
    let claimed = formula(&structure).map_err(|source| ConformanceError::Formula {
        spec: label(),
        source,
    })?;
    let oracle = exact_beta_b(structure.tree()).map_err(|source| ConformanceError::Oracle {
        spec: label(),
        source,
    })?;
    Ok(InstanceCheck {
        structure,
        report,
        trace,
        claimed,
        oracle,
    })
}

/// Runs every spec on `jobs` threads (0 picks the rayon default). Results
/// are reported in input order, and the first error in input order wins.
pub fn run_conformance(
    specs: &[LobsterSpec],
    formula: Formula,
    jobs: usize,
) -> Result<ConformanceReport, ConformanceError> {
    run_with(specs, formula, jobs, |_, _| {})
}

/// Like [`run_conformance`], also handing each successful check to
/// `inspect` (which runs on worker threads).
pub fn run_with<F>(
    specs: &[LobsterSpec],
    formula: Formula,
    jobs: usize,
    inspect: F,
) -> Result<ConformanceReport, ConformanceError>
where
    F: Fn(&LobsterSpec, &InstanceCheck) + Sync,
{
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let outcomes: Vec<Result<Option<Mismatch>, ConformanceError>> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let check = check_instance(spec, formula)?;
                inspect(spec, &check);
                Ok((check.claimed != check.oracle.beta_b).then(|| Mismatch {
                    spec: spec.clone(),
                    beta_star: check.claimed,
                    beta_b: check.oracle.beta_b,
                    witness: check.oracle.witness.clone(),
                }))
            })
            .collect()
    });
    let mut mismatches = Vec::new();
    for outcome in outcomes {
        if let Some(m) = outcome? {
            mismatches.push(m);
        }
    }
    Ok(ConformanceReport {
        instances_run: specs.len(),
        mismatches,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::{enumerate_small, Catalog};

    fn off_by_one(structure: &LobsterStructure) -> Result<u64, BetaStarError> {
        closed_form(structure).map(|b| if structure.k() >= 1 { b + 1 } else { b })
    }

    fn small_specs() -> Vec<LobsterSpec> {
        enumerate_small(14, 2, &Catalog::bounded(3, 3)).collect()
    }

    #[test]
    fn small_instances_agree() {
        let specs = small_specs();
        assert!(specs.len() > 20);
        let report = run_conformance(&specs, closed_form, 2).unwrap();
        assert_eq!(report.instances_run, specs.len());
        assert!(report.passed(), "{:?}", report.mismatches);
    }

    #[test]
    fn corrupted_formula_is_caught() {
        let specs = small_specs();
        let report = run_conformance(&specs, off_by_one, 2).unwrap();
        let expected = specs.iter().filter(|s| s.k() >= 1).count();
        assert!(expected > 0);
        assert_eq!(report.mismatches.len(), expected);
        // Input order is kept.
        let order: Vec<&LobsterSpec> = specs.iter().filter(|s| s.k() >= 1).collect();
        assert!(report
            .mismatches
            .iter()
            .zip(order)
            .all(|(m, s)| &m.spec == s));
    }

    #[test]
    fn oversized_instance_is_a_resource_cap() {
        let spec = LobsterSpec::from_json(r#"{"subtrees":[{"type":"S2","branches":[4,4,4,4,4]}]}"#)
            .unwrap();
        let err = run_conformance(&[spec], closed_form, 1).unwrap_err();
        assert!(err.is_resource_cap());
    }

    #[test]
    fn parallel_and_serial_reports_match() {
        let specs = small_specs();
        let a = run_conformance(&specs, off_by_one, 1).unwrap();
        let b = run_conformance(&specs, off_by_one, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
