use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use lobster_core::lobster::{
    build_tree_from_spec, recognize_lobster, LobsterError, LobsterSpec, LobsterStructure,
};
use lobster_core::tree::{BroadcastAssignment, Tree, TreeError};
use serde::Deserialize;

/// A parsed instance: a spec in JSON, or a raw tree in edge-list form.
pub enum Instance {
    Spec(LobsterSpec),
    Edges(Tree),
}

pub enum ParseError {
    Json(serde_json::Error),
    Tree(TreeError),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Json(e) => write!(f, "bad spec JSON: {e}"),
            ParseError::Tree(e) => write!(f, "bad edge list: {e}"),
        }
    }
}

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// JSON when the first non-blank character is `{`, edge list otherwise.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    if text.trim_start().starts_with('{') {
        LobsterSpec::from_json(text)
            .map(Instance::Spec)
            .map_err(ParseError::Json)
    } else {
        Tree::parse_edge_list(text)
            .map(Instance::Edges)
            .map_err(ParseError::Tree)
    }
}

impl Instance {
    pub fn tree(&self) -> Result<Tree, LobsterError> {
        match self {
            Instance::Spec(spec) => build_tree_from_spec(spec).map(|l| l.tree().clone()),
            Instance::Edges(tree) => Ok(tree.clone()),
        }
    }

    /// The lobster structure, before any uniformity check.
    pub fn structure(&self) -> Result<LobsterStructure, LobsterError> {
        match self {
            Instance::Spec(spec) => build_tree_from_spec(spec),
            Instance::Edges(tree) => recognize_lobster(tree.clone()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AssignmentText {
    List(Vec<u64>),
    Map(std::collections::BTreeMap<String, u64>),
    Wrapped { assignment: Box<AssignmentText> },
}

/// Accepts a JSON array of values, a `{"vertex": value}` object (missing
/// vertices are 0), or either one under an `assignment` key, as printed by
/// `construct`.
pub fn parse_assignment(text: &str, n: usize) -> Result<BroadcastAssignment> {
    let parsed: AssignmentText = serde_json::from_str(text).context("bad assignment JSON")?;
    to_assignment(parsed, n)
}

fn to_assignment(parsed: AssignmentText, n: usize) -> Result<BroadcastAssignment> {
    match parsed {
        AssignmentText::List(values) => {
            anyhow::ensure!(
                values.len() == n,
                "assignment has {} values for {n} vertices",
                values.len()
            );
            Ok(BroadcastAssignment::from_values(values))
        }
        AssignmentText::Map(map) => {
            let mut f = BroadcastAssignment::zeros(n);
            for (key, value) in map {
                let v: usize = key
                    .parse()
                    .with_context(|| format!("bad vertex id {key:?}"))?;
                anyhow::ensure!(v < n, "vertex {v} out of range for {n} vertices");
                f.set(v, value);
            }
            Ok(f)
        }
        AssignmentText::Wrapped { assignment } => to_assignment(*assignment, n),
    }
}
