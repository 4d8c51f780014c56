//! `lobcast`: command-line front end for lobster-core.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 validation failure,
//! 3 conformance mismatch, 4 resource cap.

mod input;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lobster_core::beta_star::{beta_star, BetaStarError};
use lobster_core::classify::{classify_all, select_runs};
use lobster_core::conformance::{closed_form, run_conformance, ConformanceError, Formula};
use lobster_core::construct::construct;
use lobster_core::dot::to_dot;
use lobster_core::genlab::{
    enumerate_small, instance_of_size, Catalog, GenParams, RandomInstances,
};
use lobster_core::lobster::{
    build_tree_from_spec, validate, validate_locally_uniform, validate_two_lobster,
    LobsterStructure,
};
use lobster_core::oracle::{exact_beta_b, OracleError, ORACLE_MAX_VERTICES};
use lobster_core::tree::{
    eccentricities, is_broadcast_sparse, is_dominating_sparse, is_independent_sparse,
};
use serde::Serialize;
use serde_json::json;

use input::{parse_assignment, parse_instance, read_source, Instance};

const VALIDATION: u8 = 2;
const MISMATCH: u8 = 3;
const RESOURCE_CAP: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lobcast",
    version,
    about = "Broadcast independence of locally uniform 2-lobsters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for `gen` and `conformance --source fuzz`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Vertex cap for generated and enumerated instances (default 20),
    /// or a lower oracle cap for `oracle`.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,

    /// Worker threads for `conformance`; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input is a locally uniform 2-lobster.
    Validate { input: PathBuf },
    /// Type of every spine-subtree and the selected runs.
    Classify { input: PathBuf },
    /// Closed-form broadcast independence number with its summands.
    Compute { input: PathBuf },
    /// Optimal independent broadcast, or an intermediate stage.
    Construct {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        stage: Option<u8>,
    },
    /// Re-check an assignment: broadcast, independence, domination, cost.
    Verify {
        input: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Exact value by exhaustive search (small trees only).
    Oracle { input: PathBuf },
    /// Compare the closed form with the exact search over many instances.
    Conformance {
        #[arg(long, value_enum, default_value_t = Source::Enumerate)]
        source: Source,
        /// Instances to draw with `--source fuzz`.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        max_branches: u32,
        #[arg(long, default_value_t = 4)]
        max_leaves: u32,
        /// Add one to the closed form for k >= 1 (checks that the harness
        /// notices a wrong formula).
        #[arg(long)]
        perturb: bool,
    },
    /// Random specs as JSON lines.
    Gen {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
    /// Every spec within the bounds, one per reversal pair, as JSON lines.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        max_branches: u32,
        #[arg(long, default_value_t = 4)]
        max_leaves: u32,
    },
    /// Time the closed form on generated instances of the given sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
    /// Graphviz rendering, optionally labelled with an assignment or a stage.
    ExportDot {
        input: PathBuf,
        #[arg(long, conflicts_with = "stage")]
        assignment: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        stage: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Enumerate,
    Fuzz,
}

/// Text for stdout and the exit status to finish with.
struct Emit {
    text: String,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl ToString) -> Self {
        Failure {
            code: VALIDATION,
            message: message.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 1,
            message: format!("{e:#}"),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::TooLarge(_) => RESOURCE_CAP,
            OracleError::TooSmall(_) => VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Emit, Failure>;

fn ok(text: String) -> Outcome {
    Ok(Emit { text, code: 0 })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = read_source(path)?;
    parse_instance(&text).map_err(Failure::validation)
}

/// A validated locally uniform 2-lobster.
fn lobster(path: &Path) -> Result<LobsterStructure, Failure> {
    let instance = load(path)?;
    let l = instance.structure().map_err(Failure::validation)?;
    validate(&l).map_err(Failure::validation)?;
    Ok(l)
}

fn beta_error(e: BetaStarError) -> Failure {
    Failure {
        code: if matches!(e, BetaStarError::Lobster(_)) {
            VALIDATION
        } else {
            1
        },
        message: e.to_string(),
    }
}

fn cmd_validate(path: &Path) -> Outcome {
    let instance = load(path)?;
    let l = match instance.structure() {
        Ok(l) => l,
        Err(e) => {
            let text = to_json(&json!({ "ok": false, "error": e.to_string() }));
            return Ok(Emit {
                text,
                code: VALIDATION,
            });
        }
    };
    let uniform = validate_locally_uniform(&l);
    let two = validate_two_lobster(&l);
    let valid = uniform.ok && two.ok;
    // Violations are spine-subtree indices.
    let text = to_json(&json!({
        "ok": valid,
        "n": l.n(),
        "k": l.k(),
        "spec": l.to_spec(),
        "not_locally_uniform": uniform.violations,
        "not_two_lobster": two.violations,
    }));
    Ok(Emit {
        text,
        code: if valid { 0 } else { VALIDATION },
    })
}

fn cmd_classify(path: &Path) -> Outcome {
    let l = lobster(path)?;
    let types = classify_all(&l).map_err(Failure::validation)?;
    let sequences = select_runs(&types);
    ok(to_json(&json!({ "types": types, "sequences": sequences })))
}

fn cmd_compute(path: &Path) -> Outcome {
    let instance = load(path)?;
    let refused = match instance.structure() {
        Ok(l) => match validate(&l) {
            Ok(()) => return ok(to_json(&beta_star(&l).map_err(beta_error)?)),
            Err(e) => e,
        },
        Err(e) => e,
    };
    // Outside the formula's class: fall back to the exact search when it fits.
    let tree = instance.tree().map_err(Failure::validation)?;
    if tree.n() > ORACLE_MAX_VERTICES {
        return Err(Failure::validation(format!(
            "{refused}; too large for the exact search"
        )));
    }
    let r = exact_beta_b(&tree)?;
    ok(to_json(&json!({
        "formula_applies": false,
        "reason": refused.to_string(),
        "beta_b": r.beta_b,
        "witness": r.witness,
    })))
}

fn by_vertex(values: &[u64]) -> BTreeMap<usize, u64> {
    values.iter().copied().enumerate().collect()
}

fn cmd_construct(path: &Path, stage: Option<u8>) -> Outcome {
    let l = lobster(path)?;
    let trace = construct(&l).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    let index = match stage {
        // k = 0 has a single direct stage.
        Some(s) => (usize::from(s) - 1).min(trace.stages.len() - 1),
        None => trace.stages.len() - 1,
    };
    let f = &trace.stages[index];
    ok(to_json(&json!({
        "stage": index + 1,
        "cost": f.cost(),
        "stage_costs": trace.costs,
        "assignment": by_vertex(f.values()),
    })))
}

fn cmd_verify(path: &Path, assignment: &Path) -> Outcome {
    let instance = load(path)?;
    let tree = instance.tree().map_err(Failure::validation)?;
    let f = parse_assignment(&read_source(assignment)?, tree.n()).map_err(Failure::validation)?;
    let ecc = eccentricities(&tree);
    let broadcast = is_broadcast_sparse(&tree, &ecc, &f);
    let independent = is_independent_sparse(&tree, &f);
    let dominating = is_dominating_sparse(&tree, &f);
    let optimum = instance
        .structure()
        .ok()
        .filter(|l| validate(l).is_ok())
        .and_then(|l| beta_star(&l).ok())
        .map(|r| r.beta_star);
    let text = to_json(&json!({
        "broadcast": broadcast,
        "independent": independent,
        "dominating": dominating,
        "cost": f.cost(),
        "beta_star": optimum,
        "optimal": optimum.map(|b| b == f.cost()),
    }));
    Ok(Emit {
        text,
        code: if broadcast && independent {
            0
        } else {
            VALIDATION
        },
    })
}

fn cmd_oracle(path: &Path, cap: Option<usize>) -> Outcome {
    let tree = load(path)?.tree().map_err(Failure::validation)?;
    if let Some(cap) = cap {
        if tree.n() > cap {
            return Err(Failure {
                code: RESOURCE_CAP,
                message: format!("tree has {} vertices; cap is {cap}", tree.n()),
            });
        }
    }
    let r = exact_beta_b(&tree)?;
    ok(to_json(
        &json!({ "beta_b": r.beta_b, "witness": r.witness }),
    ))
}

fn perturbed(structure: &LobsterStructure) -> Result<u64, BetaStarError> {
    closed_form(structure).map(|b| if structure.k() >= 1 { b + 1 } else { b })
}

struct ConformanceArgs {
    source: Source,
    count: usize,
    k_max: usize,
    max_branches: u32,
    max_leaves: u32,
    perturb: bool,
}

fn cmd_conformance(cli: &Cli, args: ConformanceArgs) -> Outcome {
    let max_vertices = cli.max_vertices.unwrap_or(20);
    let specs: Vec<_> = match args.source {
        Source::Enumerate => enumerate_small(
            max_vertices,
            args.k_max,
            &Catalog::bounded(args.max_branches, args.max_leaves),
        )
        .collect(),
        Source::Fuzz => RandomInstances::new(GenParams {
            seed: cli.seed,
            k_range: 0..=args.k_max,
            max_vertices,
            ..GenParams::default()
        })
        .map_err(Failure::validation)?
        .take(args.count)
        .collect(),
    };
    if let Some(big) = specs
        .iter()
        .find(|s| s.vertex_count() > ORACLE_MAX_VERTICES)
    {
        return Err(Failure {
            code: RESOURCE_CAP,
            message: format!(
                "{big} has {} vertices; the exact oracle is capped at {ORACLE_MAX_VERTICES}",
                big.vertex_count()
            ),
        });
    }
    let formula: Formula = if args.perturb { perturbed } else { closed_form };
    let report =
        run_conformance(&specs, formula, cli.jobs).map_err(|e: ConformanceError| Failure {
            code: if e.is_resource_cap() { RESOURCE_CAP } else { 1 },
            message: e.to_string(),
        })?;
    eprintln!(
        "{} instances in {:.2}s",
        report.instances_run,
        report.elapsed.as_secs_f64()
    );
    Ok(Emit {
        text: to_json(&report),
        code: if report.passed() { 0 } else { MISMATCH },
    })
}

fn json_lines<T: Serialize>(items: impl Iterator<Item = T>) -> String {
    items
        .map(|s| serde_json::to_string(&s).expect("serializable") + "\n")
        .collect()
}

fn cmd_gen(cli: &Cli, count: usize, k_max: usize) -> Outcome {
    let params = GenParams {
        seed: cli.seed,
        k_range: 0..=k_max,
        max_vertices: cli.max_vertices.unwrap_or(20),
        ..GenParams::default()
    };
    let stream = RandomInstances::new(params).map_err(Failure::validation)?;
    ok(json_lines(stream.take(count)))
}

fn cmd_bench(sizes: &[usize], repeats: usize, seed: u64) -> Outcome {
    let mut rows = Vec::new();
    for &target in sizes {
        let l =
            build_tree_from_spec(&instance_of_size(target, seed)).map_err(Failure::validation)?;
        let mut times: Vec<f64> = (0..repeats.max(1))
            .map(|_| {
                let start = Instant::now();
                std::hint::black_box(beta_star(&l).expect("generated instances are valid"));
                start.elapsed().as_secs_f64()
            })
            .collect();
        times.sort_by(f64::total_cmp);
        rows.push(json!({
            "n": l.n(),
            "seconds": times[times.len() / 2],
            "min_seconds": times[0],
            "max_seconds": times[times.len() - 1],
        }));
    }
    ok(to_json(
        &json!({ "seed": seed, "repeats": repeats.max(1), "runs": rows }),
    ))
}

fn cmd_export_dot(path: &Path, assignment: Option<&PathBuf>, stage: Option<u8>) -> Outcome {
    let instance = load(path)?;
    let tree = instance.tree().map_err(Failure::validation)?;
    let structure = instance.structure().ok();
    let spine = structure
        .as_ref()
        .map(|l| l.spine().to_vec())
        .unwrap_or_default();
    let f = match (assignment, stage) {
        (Some(file), _) => {
            Some(parse_assignment(&read_source(file)?, tree.n()).map_err(Failure::validation)?)
        }
        (None, Some(s)) => {
            let l = lobster(path)?;
            let trace = construct(&l).map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?;
            let index = (usize::from(s) - 1).min(trace.stages.len() - 1);
            Some(trace.stages[index].clone())
        }
        (None, None) => None,
    };
    ok(to_dot(&tree, &spine, f.as_ref()))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { input } => cmd_validate(input),
        Command::Classify { input } => cmd_classify(input),
        Command::Compute { input } => cmd_compute(input),
        Command::Construct { input, stage } => cmd_construct(input, *stage),
        Command::Verify { input, assignment } => cmd_verify(input, assignment),
        Command::Oracle { input } => cmd_oracle(input, cli.max_vertices),
        Command::Conformance {
            source,
            count,
            k_max,
            max_branches,
            max_leaves,
            perturb,
        } => cmd_conformance(
            cli,
            ConformanceArgs {
                source: *source,
                count: *count,
                k_max: *k_max,
                max_branches: *max_branches,
                max_leaves: *max_leaves,
                perturb: *perturb,
            },
        ),
        Command::Gen { count, k_max } => cmd_gen(cli, *count, *k_max),
        Command::Enumerate {
            k_max,
            max_branches,
            max_leaves,
        } => ok(json_lines(enumerate_small(
            cli.max_vertices.unwrap_or(20),
            *k_max,
            &Catalog::bounded(*max_branches, *max_leaves),
        ))),
        Command::Bench { sizes, repeats } => cmd_bench(sizes, *repeats, cli.seed),
        Command::ExportDot {
            input,
            assignment,
            stage,
        } => cmd_export_dot(input, assignment.as_ref(), *stage),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(emit) => {
            print!("{}", emit.text);
            ExitCode::from(emit.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
