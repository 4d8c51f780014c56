//! Lobster recognition, spine-subtree decomposition and leaf census.
//!
//! A lobster is a tree whose leaf-stripped remainder is a caterpillar; the
//! spine is what is left after stripping leaves twice. Every non-spine
//! vertex is then within distance two of the spine, so each spine vertex
//! `v_i` owns a spine-subtree made of branches: a single 1-leaf (depth 1)
//! or a middle vertex carrying one or more 2-leaves (depth 2).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{Tree, TreeError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LobsterError {
    #[error("tree has {0} vertices; a locally uniform 2-lobster needs at least 5")]
    TooSmall(usize),
    #[error("stripping leaves twice leaves no spine")]
    EmptySpine,
    #[error("not a lobster: {0}")]
    NotALobster(String),
    #[error("invalid lobster spec at {path}: {message}")]
    SpecViolation { path: String, message: String },
    #[error("spine-subtrees {0:?} mix branch depths")]
    NotLocallyUniform(Vec<usize>),
    #[error("spine-subtrees {0:?} have fewer than two branches")]
    NotTwoLobster(Vec<usize>),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn violation(path: impl Into<String>, message: impl Into<String>) -> LobsterError {
    LobsterError::SpecViolation {
        path: path.into(),
        message: message.into(),
    }
}

/// JSON description of a locally uniform lobster, one entry per spine vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LobsterSpec {
    pub subtrees: Vec<SubtreeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SubtreeSpec {
    /// `leaves` depth-1 branches, each a single 1-leaf.
    S1 { leaves: u32 },
    /// One depth-2 branch per entry, carrying that many 2-leaves.
    S2 { branches: Vec<u32> },
}

impl SubtreeSpec {
    /// Vertices of the subtree, spine vertex included.
    pub fn vertex_count(&self) -> usize {
        match self {
            SubtreeSpec::S1 { leaves } => 1 + *leaves as usize,
            SubtreeSpec::S2 { branches } => {
                1 + branches.iter().map(|&c| 1 + c as usize).sum::<usize>()
            }
        }
    }

    pub fn is_s2(&self) -> bool {
        matches!(self, SubtreeSpec::S2 { .. })
    }

    /// Ordering key shared by spine orientation and enumeration dedup.
    pub fn census_key(&self) -> CensusKey {
        match self {
            SubtreeSpec::S1 { leaves } => CensusKey(1, vec![*leaves]),
            SubtreeSpec::S2 { branches } => {
                let mut b = branches.clone();
                b.sort_unstable();
                CensusKey(2, b)
            }
        }
    }

    fn sorted(&self) -> SubtreeSpec {
        match self {
            SubtreeSpec::S1 { leaves } => SubtreeSpec::S1 { leaves: *leaves },
            SubtreeSpec::S2 { branches } => {
                let mut b = branches.clone();
                b.sort_unstable();
                SubtreeSpec::S2 { branches: b }
            }
        }
    }
}

impl fmt::Display for SubtreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubtreeSpec::S1 { leaves } => write!(f, "S1:{leaves}"),
            SubtreeSpec::S2 { branches } => {
                let parts: Vec<String> = branches.iter().map(u32::to_string).collect();
                write!(f, "S2:[{}]", parts.join(","))
            }
        }
    }
}

/// Depth class tag (1 or 2, or 3 for a non-uniform subtree) followed by
/// the sorted branch profile.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CensusKey(pub u8, pub Vec<u32>);

/// Lexicographic comparison of a census sequence against its reversal.
/// `Greater` means the reversed orientation is the canonical one.
pub fn orientation<T: Ord>(keys: &[T]) -> Ordering {
    keys.iter().cmp(keys.iter().rev())
}

impl LobsterSpec {
    pub fn vertex_count(&self) -> usize {
        self.subtrees.iter().map(SubtreeSpec::vertex_count).sum()
    }

    /// Spine length `k` (number of spine edges).
    pub fn k(&self) -> usize {
        self.subtrees.len().saturating_sub(1)
    }

    pub fn reversed(&self) -> LobsterSpec {
        LobsterSpec {
            subtrees: self.subtrees.iter().rev().cloned().collect(),
        }
    }

    /// Branches sorted and the spine oriented to its lexicographically
    /// smaller census.
    pub fn canonical(&self) -> LobsterSpec {
        let sorted = LobsterSpec {
            subtrees: self.subtrees.iter().map(SubtreeSpec::sorted).collect(),
        };
        let keys: Vec<CensusKey> = sorted
            .subtrees
            .iter()
            .map(SubtreeSpec::census_key)
            .collect();
        if orientation(&keys) == Ordering::Greater {
            sorted.reversed()
        } else {
            sorted
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn check(&self) -> Result<(), LobsterError> {
        if self.subtrees.is_empty() {
            return Err(violation(
                "subtrees",
                "at least one spine-subtree is required",
            ));
        }
        let last = self.subtrees.len() - 1;
        for (i, s) in self.subtrees.iter().enumerate() {
            match s {
                SubtreeSpec::S1 { leaves } => {
                    if i == 0 || i == last {
                        return Err(violation(
                            format!("subtrees[{i}].type"),
                            "the end spine-subtrees must be S2",
                        ));
                    }
                    if *leaves < 2 {
                        return Err(violation(
                            format!("subtrees[{i}].leaves"),
                            "an S1 subtree needs at least two leaves",
                        ));
                    }
                }
                SubtreeSpec::S2 { branches } => {
                    if branches.len() < 2 {
                        return Err(violation(
                            format!("subtrees[{i}].branches"),
                            "an S2 subtree needs at least two branches",
                        ));
                    }
                    if let Some(j) = branches.iter().position(|&c| c == 0) {
                        return Err(violation(
                            format!("subtrees[{i}].branches[{j}]"),
                            "a depth-2 branch needs at least one leaf",
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LobsterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.subtrees.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DepthClass {
    S1,
    S2,
    /// Branches of both depths; only produced by recognition of a
    /// non-uniform lobster.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    /// The non-spine neighbour of the spine vertex.
    pub attach: Vertex,
    pub depth: u8,
    /// The branch leaves: `[attach]` at depth 1, the 2-leaves at depth 2.
    pub leaves: Vec<Vertex>,
}

impl Branch {
    pub fn two_leaf_count(&self) -> u32 {
        if self.depth == 2 {
            self.leaves.len() as u32
        } else {
            0
        }
    }

    fn sort_key(&self) -> (u8, u32, Vertex) {
        (self.depth, self.two_leaf_count(), self.attach)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineSubtree {
    pub index: usize,
    pub root: Vertex,
    pub branches: Vec<Branch>,
    pub depth_class: DepthClass,
    pub lambda1: u32,
    pub lambda2: u32,
    pub lambda2_star: u32,
    pub alpha2_star: u32,
}

impl SpineSubtree {
    fn new(index: usize, root: Vertex, mut branches: Vec<Branch>) -> Self {
        branches.sort_by_key(Branch::sort_key);
        for b in &mut branches {
            b.leaves.sort_unstable();
        }
        let depth1 = branches.iter().filter(|b| b.depth == 1).count();
        let depth_class = if depth1 == branches.len() {
            DepthClass::S1
        } else if depth1 == 0 {
            DepthClass::S2
        } else {
            DepthClass::Mixed
        };
        let deep = || branches.iter().filter(|b| b.depth == 2);
        SpineSubtree {
            index,
            root,
            depth_class,
            lambda1: depth1 as u32,
            lambda2: deep().map(Branch::two_leaf_count).sum(),
            lambda2_star: deep().filter(|b| b.two_leaf_count() == 1).count() as u32,
            alpha2_star: deep().filter(|b| b.two_leaf_count() <= 2).count() as u32,
            branches,
        }
    }

    pub fn branch_count(&self) -> u32 {
        self.branches.len() as u32
    }

    /// Vertices of the subtree, spine vertex included.
    pub fn vertex_count(&self) -> usize {
        1 + self
            .branches
            .iter()
            .map(|b| if b.depth == 2 { 1 + b.leaves.len() } else { 1 })
            .sum::<usize>()
    }

    pub fn census_key(&self) -> CensusKey {
        let mut profile: Vec<u32> = self.branches.iter().map(Branch::two_leaf_count).collect();
        profile.sort_unstable();
        match self.depth_class {
            DepthClass::S1 => CensusKey(1, vec![self.lambda1]),
            DepthClass::S2 => CensusKey(2, profile),
            DepthClass::Mixed => CensusKey(3, profile),
        }
    }

    pub fn to_spec(&self) -> Option<SubtreeSpec> {
        match self.depth_class {
            DepthClass::S1 => Some(SubtreeSpec::S1 {
                leaves: self.lambda1,
            }),
            DepthClass::S2 => Some(SubtreeSpec::S2 {
                branches: self.branches.iter().map(Branch::two_leaf_count).collect(),
            }),
            DepthClass::Mixed => None,
        }
    }

    /// Leaves of the subtree: 1-leaves and 2-leaves.
    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.branches.iter().flat_map(|b| b.leaves.iter().copied())
    }
}

/// A lobster split into its spine and spine-subtrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LobsterStructure {
    tree: Tree,
    spine: Vec<Vertex>,
    subtrees: Vec<SpineSubtree>,
}

impl LobsterStructure {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn spine(&self) -> &[Vertex] {
        &self.spine
    }

    pub fn subtrees(&self) -> &[SpineSubtree] {
        &self.subtrees
    }

    pub fn k(&self) -> usize {
        self.spine.len() - 1
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn lambda1_total(&self) -> u64 {
        self.subtrees.iter().map(|s| u64::from(s.lambda1)).sum()
    }

    pub fn lambda2_total(&self) -> u64 {
        self.subtrees.iter().map(|s| u64::from(s.lambda2)).sum()
    }

    pub fn lambda2_star_total(&self) -> u64 {
        self.subtrees
            .iter()
            .map(|s| u64::from(s.lambda2_star))
            .sum()
    }

    /// Same lobster with the spine read backwards.
    pub fn reversed(&self) -> LobsterStructure {
        let k = self.k();
        LobsterStructure {
            tree: self.tree.clone(),
            spine: self.spine.iter().rev().copied().collect(),
            subtrees: self
                .subtrees
                .iter()
                .rev()
                .cloned()
                .map(|mut s| {
                    s.index = k - s.index;
                    s
                })
                .collect(),
        }
    }

    /// The spec describing this lobster, or `None` for a non-uniform one.
    pub fn to_spec(&self) -> Option<LobsterSpec> {
        self.subtrees
            .iter()
            .map(SpineSubtree::to_spec)
            .collect::<Option<Vec<_>>>()
            .map(|subtrees| LobsterSpec { subtrees })
    }

    fn census_keys(&self) -> Vec<CensusKey> {
        self.subtrees.iter().map(SpineSubtree::census_key).collect()
    }

    fn canonicalize(self) -> LobsterStructure {
        if orientation(&self.census_keys()) == Ordering::Greater {
            self.reversed()
        } else {
            self
        }
    }
}

/// Splits `tree` into spine and spine-subtrees. The spine is oriented to
/// its lexicographically smaller census sequence.
pub fn recognize_lobster(tree: Tree) -> Result<LobsterStructure, LobsterError> {
    let n = tree.n();
    if n < 5 {
        return Err(LobsterError::TooSmall(n));
    }
    let is_leaf: Vec<bool> = (0..n).map(|v| tree.is_leaf(v)).collect();
    // Degree inside the once-stripped tree.
    let inner_degree: Vec<usize> = (0..n)
        .map(|v| {
            if is_leaf[v] {
                0
            } else {
                tree.neighbors(v).iter().filter(|&&w| !is_leaf[w]).count()
            }
        })
        .collect();
    let on_spine: Vec<bool> = (0..n)
        .map(|v| !is_leaf[v] && inner_degree[v] >= 2)
        .collect();
    let spine_count = on_spine.iter().filter(|&&s| s).count();
    if spine_count == 0 {
        return Err(LobsterError::EmptySpine);
    }
    let spine_degree = |v: Vertex| tree.neighbors(v).iter().filter(|&&w| on_spine[w]).count();
    if let Some(v) = (0..n).find(|&v| on_spine[v] && spine_degree(v) > 2) {
        return Err(LobsterError::NotALobster(format!(
            "vertex {v} has {} neighbours on the twice-stripped tree",
            spine_degree(v)
        )));
    }

    let start = (0..n)
        .find(|&v| on_spine[v] && spine_degree(v) <= 1)
        .expect("a finite subtree of a tree with max degree 2 has an end");
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = tree
        .neighbors(cur)
        .iter()
        .find(|&&w| on_spine[w] && w != prev)
    {
        spine.push(next);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(spine.len(), spine_count);

    let mut subtrees = Vec::with_capacity(spine.len());
    for (i, &root) in spine.iter().enumerate() {
        let mut branches = Vec::new();
        for &w in tree.neighbors(root) {
            if on_spine[w] {
                continue;
            }
            if is_leaf[w] {
                branches.push(Branch {
                    attach: w,
                    depth: 1,
                    leaves: vec![w],
                });
                continue;
            }
            let leaves: Vec<Vertex> = tree
                .neighbors(w)
                .iter()
                .copied()
                .filter(|&x| x != root)
                .collect();
            if let Some(&x) = leaves.iter().find(|&&x| !is_leaf[x]) {
                return Err(LobsterError::NotALobster(format!(
                    "vertex {x} is more than two steps from the spine"
                )));
            }
            branches.push(Branch {
                attach: w,
                depth: 2,
                leaves,
            });
        }
        subtrees.push(SpineSubtree::new(i, root, branches));
    }

    Ok(LobsterStructure {
        tree,
        spine,
        subtrees,
    }
    .canonicalize())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub ok: bool,
    /// Indices of the offending spine-subtrees.
    pub violations: Vec<usize>,
}

impl Validation {
    fn from_violations(violations: Vec<usize>) -> Self {
        Validation {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// All branches of every spine-subtree share one depth.
pub fn validate_locally_uniform(structure: &LobsterStructure) -> Validation {
    Validation::from_violations(
        structure
            .subtrees
            .iter()
            .filter(|s| s.depth_class == DepthClass::Mixed)
            .map(|s| s.index)
            .collect(),
    )
}

/// Every spine-subtree has at least two branches.
pub fn validate_two_lobster(structure: &LobsterStructure) -> Validation {
    Validation::from_violations(
        structure
            .subtrees
            .iter()
            .filter(|s| s.branch_count() < 2)
            .map(|s| s.index)
            .collect(),
    )
}

/// Both validators, as an error.
pub fn validate(structure: &LobsterStructure) -> Result<(), LobsterError> {
    let uniform = validate_locally_uniform(structure);
    if !uniform.ok {
        return Err(LobsterError::NotLocallyUniform(uniform.violations));
    }
    let two = validate_two_lobster(structure);
    if !two.ok {
        return Err(LobsterError::NotTwoLobster(two.violations));
    }
    Ok(())
}

/// Materializes `spec`. Spine vertices come first (`0..=k`), then each
/// subtree's branches in the given order, a middle vertex before its leaves.
/// The spine keeps the order of the spec.
pub fn build_tree_from_spec(spec: &LobsterSpec) -> Result<LobsterStructure, LobsterError> {
    spec.check()?;
    let spine: Vec<Vertex> = (0..spec.subtrees.len()).collect();
    let n = spec.vertex_count();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(n - 1);
    edges.extend(spine.windows(2).map(|w| (w[0], w[1])));
    let mut next = spine.len();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut subtrees = Vec::with_capacity(spine.len());
    for (i, s) in spec.subtrees.iter().enumerate() {
        let mut branches = Vec::new();
        match s {
            SubtreeSpec::S1 { leaves } => {
                for _ in 0..*leaves {
                    let leaf = fresh();
                    edges.push((i, leaf));
                    branches.push(Branch {
                        attach: leaf,
                        depth: 1,
                        leaves: vec![leaf],
                    });
                }
            }
            SubtreeSpec::S2 { branches: counts } => {
                for &c in counts {
                    let middle = fresh();
                    edges.push((i, middle));
                    let leaves: Vec<Vertex> = (0..c).map(|_| fresh()).collect();
                    edges.extend(leaves.iter().map(|&l| (middle, l)));
                    branches.push(Branch {
                        attach: middle,
                        depth: 2,
                        leaves,
                    });
                }
            }
        }
        subtrees.push(SpineSubtree::new(i, i, branches));
    }
    let tree = Tree::from_edges(n, edges)?;
    Ok(LobsterStructure {
        tree,
        spine,
        subtrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::metrics;

    fn s1(leaves: u32) -> SubtreeSpec {
        SubtreeSpec::S1 { leaves }
    }

    fn s2(branches: &[u32]) -> SubtreeSpec {
        SubtreeSpec::S2 {
            branches: branches.to_vec(),
        }
    }

    fn spec(subtrees: Vec<SubtreeSpec>) -> LobsterSpec {
        LobsterSpec { subtrees }
    }

    #[test]
    fn p5_is_the_smallest_instance() {
        let p5 = Tree::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let l = recognize_lobster(p5).unwrap();
        assert_eq!(l.k(), 0);
        assert_eq!(l.spine(), &[2]);
        let s = &l.subtrees()[0];
        assert_eq!(s.depth_class, DepthClass::S2);
        assert_eq!(s.census_key(), CensusKey(2, vec![1, 1]));
        assert_eq!(
            (s.lambda1, s.lambda2, s.lambda2_star, s.alpha2_star),
            (0, 2, 2, 2)
        );

        let built = build_tree_from_spec(&spec(vec![s2(&[1, 1])])).unwrap();
        assert_eq!(built.tree().edges(), &[(0, 1), (0, 3), (1, 2), (3, 4)],);
        assert!(validate_two_lobster(&built).ok);
    }

    #[test]
    fn degenerate_trees_are_rejected() {
        let star = Tree::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        assert_eq!(recognize_lobster(star), Err(LobsterError::EmptySpine));
        let p4 = Tree::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(recognize_lobster(p4), Err(LobsterError::TooSmall(4)));
        // Spider with three legs of length 3.
        let spider = Tree::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 4),
                (4, 5),
                (5, 6),
                (0, 7),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        assert!(matches!(
            recognize_lobster(spider),
            Err(LobsterError::NotALobster(_))
        ));
        // Long paths are lobsters whose inner spine vertices have no branches.
        let p7 = Tree::from_edges(7, (1..7).map(|v| (v - 1, v))).unwrap();
        assert_eq!(recognize_lobster(p7).unwrap().k(), 2);
    }

    #[test]
    fn spec_built_sizes() {
        let l = build_tree_from_spec(&spec(vec![s2(&[3, 3]), s1(2), s2(&[3, 3])])).unwrap();
        assert_eq!(l.n(), 21);
        assert_eq!(l.k(), 2);
        assert_eq!(metrics(l.tree()).diameter(), 6);
    }

    #[test]
    fn spec_violations_name_the_field() {
        let err = build_tree_from_spec(&spec(vec![s1(2)])).unwrap_err();
        assert_eq!(
            err,
            LobsterError::SpecViolation {
                path: "subtrees[0].type".into(),
                message: "the end spine-subtrees must be S2".into()
            }
        );
        let err = build_tree_from_spec(&spec(vec![s2(&[1, 1]), s1(1), s2(&[1, 1])])).unwrap_err();
        assert!(
            matches!(err, LobsterError::SpecViolation { path, .. } if path == "subtrees[1].leaves")
        );
        let err = build_tree_from_spec(&spec(vec![s2(&[1, 0])])).unwrap_err();
        assert!(
            matches!(err, LobsterError::SpecViolation { path, .. } if path == "subtrees[0].branches[1]")
        );
        let err = build_tree_from_spec(&spec(vec![s2(&[4])])).unwrap_err();
        assert!(
            matches!(err, LobsterError::SpecViolation { path, .. } if path == "subtrees[0].branches")
        );
        assert!(build_tree_from_spec(&spec(vec![])).is_err());
    }

    #[test]
    fn mixed_depths_are_reported() {
        // Spine 0-1; vertex 0 has a 1-leaf and a depth-2 branch, vertex 1
        // has two depth-2 branches.
        let t = Tree::from_edges(
            10,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (3, 4),
                (1, 5),
                (5, 6),
                (1, 7),
                (7, 8),
                (7, 9),
            ],
        )
        .unwrap();
        let l = recognize_lobster(t).unwrap();
        let v = validate_locally_uniform(&l);
        assert!(!v.ok);
        let mixed = l.subtrees().iter().find(|s| s.root == 0).unwrap().index;
        assert_eq!(v.violations, vec![mixed]);
        assert!(matches!(
            validate(&l),
            Err(LobsterError::NotLocallyUniform(_))
        ));
        assert_eq!(l.to_spec(), None);
    }

    #[test]
    fn single_branch_subtree_breaks_two_lobster() {
        // Spine 0-1-2; the middle vertex has one 1-leaf.
        let t = Tree::from_edges(
            12,
            [
                (0, 1),
                (1, 2),
                (1, 3),
                (0, 4),
                (4, 5),
                (0, 6),
                (6, 7),
                (2, 8),
                (8, 9),
                (2, 10),
                (10, 11),
            ],
        )
        .unwrap();
        let l = recognize_lobster(t).unwrap();
        assert!(validate_locally_uniform(&l).ok);
        let v = validate_two_lobster(&l);
        assert_eq!(v.violations, vec![1]);
        assert!(matches!(validate(&l), Err(LobsterError::NotTwoLobster(_))));
    }

    #[test]
    fn uniform_k0_with_big_branches() {
        let l = build_tree_from_spec(&spec(vec![s2(&[3, 3])])).unwrap();
        assert!(validate_locally_uniform(&l).ok);
        assert_eq!(l.subtrees()[0].alpha2_star, 0);
    }

    #[test]
    fn branches_are_sorted_canonically() {
        let l = build_tree_from_spec(&spec(vec![s2(&[3, 1, 2])])).unwrap();
        let counts: Vec<u32> = l.subtrees()[0]
            .branches
            .iter()
            .map(Branch::two_leaf_count)
            .collect();
        assert_eq!(counts, vec![1, 2, 3]);
    }

    #[test]
    fn canonical_orientation() {
        let a = spec(vec![s2(&[2, 1]), s1(3), s2(&[1, 1])]);
        let c = a.canonical();
        assert_eq!(c, spec(vec![s2(&[1, 1]), s1(3), s2(&[1, 2])]));
        assert_eq!(c.canonical(), c);
        assert_eq!(a.reversed().canonical(), c);
    }

    #[test]
    fn spec_json_schema() {
        let text = r#"{"subtrees":[{"type":"S2","branches":[1,2]},{"type":"S1","leaves":3},{"type":"S2","branches":[1,1]}]}"#;
        let s = LobsterSpec::from_json(text).unwrap();
        assert_eq!(s, spec(vec![s2(&[1, 2]), s1(3), s2(&[1, 1])]));
        assert_eq!(s.to_json(), text);
        assert_eq!(s.to_string(), "[S2:[1,2], S1:3, S2:[1,1]]");
    }
}
