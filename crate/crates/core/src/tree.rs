//! Trees on dense vertex ids, hop metrics and broadcast predicates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("expected {expected} edges for {n} vertices, got {got}")]
    EdgeCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} is not reachable from vertex 0")]
    Disconnected(Vertex),
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected tree with canonical (min, max)-sorted edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
}

impl Tree {
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut normalized: Vec<(Vertex, Vertex)> = Vec::with_capacity(n - 1);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        if normalized.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                n,
                expected: n - 1,
                got: normalized.len(),
            });
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let tree = Tree {
            edges: normalized,
            adjacency,
        };
        // n - 1 edges plus connectivity rules out cycles.
        let dist = bfs_distances(&tree, 0);
        if let Some(v) = dist.iter().position(|&d| d == UNREACHABLE) {
            return Err(TreeError::Disconnected(v));
        }
        Ok(tree)
    }

    /// Parses the edge-list text format: a line with `n`, then `n - 1`
    /// lines `u v`. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, TreeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(TreeError::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = first.parse().map_err(|_| TreeError::Parse {
            line,
            message: format!("bad vertex count {first:?}"),
        })?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let mut parts = l.split_whitespace();
            let mut next = || -> Result<Vertex, TreeError> {
                let tok = parts.next().ok_or(TreeError::Parse {
                    line,
                    message: "expected two vertex ids".into(),
                })?;
                tok.parse().map_err(|_| TreeError::Parse {
                    line,
                    message: format!("bad vertex id {tok:?}"),
                })
            };
            let (u, v) = (next()?, next()?);
            if parts.next().is_some() {
                return Err(TreeError::Parse {
                    line,
                    message: "trailing tokens".into(),
                });
            }
            edges.push((u, v));
        }
        Tree::from_edges(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.adjacency[v].len() == 1
    }

    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).filter(|&v| self.is_leaf(v))
    }
}

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// Hop distance from `source` to every vertex.
pub fn bfs_distances(tree: &Tree, source: Vertex) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; tree.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in tree.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs distances, eccentricities and diameter.
///
/// Quadratic in memory; meant for oracle-sized trees. Use [`eccentricities`]
/// and [`is_independent_sparse`] on large instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
    ecc: Vec<u32>,
    diameter: u32,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn ecc(&self, v: Vertex) -> u32 {
        self.ecc[v]
    }

    pub fn eccentricities(&self) -> &[u32] {
        &self.ecc
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }
}

pub fn metrics(tree: &Tree) -> DistanceTable {
    let n = tree.n();
    let mut dist = Vec::with_capacity(n * n);
    let mut ecc = Vec::with_capacity(n);
    for s in 0..n {
        let row = bfs_distances(tree, s);
        ecc.push(row.iter().copied().max().unwrap_or(0));
        dist.extend(row);
    }
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    DistanceTable {
        n,
        dist,
        ecc,
        diameter,
    }
}

/// Eccentricities in linear time: in a tree every vertex is farthest from
/// one of the two ends of any diametral path.
pub fn eccentricities(tree: &Tree) -> Vec<u32> {
    let from_zero = bfs_distances(tree, 0);
    let a = argmax(&from_zero);
    let from_a = bfs_distances(tree, a);
    let b = argmax(&from_a);
    let from_b = bfs_distances(tree, b);
    from_a
        .iter()
        .zip(&from_b)
        .map(|(&x, &y)| x.max(y))
        .collect()
}

fn argmax(values: &[u32]) -> Vertex {
    values
        .iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// A broadcast candidate: one non-negative value per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BroadcastAssignment {
    values: Vec<u64>,
}

impl BroadcastAssignment {
    pub fn zeros(n: usize) -> Self {
        BroadcastAssignment { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<u64>) -> Self {
        BroadcastAssignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: Vertex) -> u64 {
        self.values[v]
    }

    pub fn set(&mut self, v: Vertex, value: u64) {
        self.values[v] = value;
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Vertices with a positive value, in increasing order.
    pub fn broadcast_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f > 0)
            .map(|(v, _)| v)
    }

    pub fn cost(&self) -> u64 {
        self.values.iter().sum()
    }
}

impl fmt::Display for BroadcastAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.broadcast_vertices() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}:{}", self.values[v])?;
            first = false;
        }
        Ok(())
    }
}

pub fn cost(f: &BroadcastAssignment) -> u64 {
    f.cost()
}

/// Every value is bounded by the vertex eccentricity.
pub fn is_broadcast(tree: &Tree, table: &DistanceTable, f: &BroadcastAssignment) -> bool {
    f.len() == tree.n() && (0..tree.n()).all(|v| f.get(v) <= u64::from(table.ecc(v)))
}

/// Each pair of broadcast vertices is farther apart than the larger value.
pub fn is_independent(_tree: &Tree, table: &DistanceTable, f: &BroadcastAssignment) -> bool {
    let support: Vec<Vertex> = f.broadcast_vertices().collect();
    support.iter().enumerate().all(|(i, &u)| {
        support[i + 1..]
            .iter()
            .all(|&v| u64::from(table.dist(u, v)) > f.get(u).max(f.get(v)))
    })
}

pub fn is_dominating(tree: &Tree, table: &DistanceTable, f: &BroadcastAssignment) -> bool {
    let support: Vec<Vertex> = f.broadcast_vertices().collect();
    (0..tree.n()).all(|x| {
        support
            .iter()
            .any(|&u| u64::from(table.dist(u, x)) <= f.get(u))
    })
}

/// [`is_broadcast`] without a distance table.
pub fn is_broadcast_sparse(tree: &Tree, ecc: &[u32], f: &BroadcastAssignment) -> bool {
    f.len() == tree.n()
        && ecc.len() == tree.n()
        && (0..tree.n()).all(|v| f.get(v) <= u64::from(ecc[v]))
}

/// [`is_independent`] by bounded BFS from every broadcast vertex: `u` and `v`
/// clash iff one lies inside the ball of the other.
pub fn is_independent_sparse(tree: &Tree, f: &BroadcastAssignment) -> bool {
    let mut stamp = vec![usize::MAX; tree.n()];
    let mut depth = vec![0u64; tree.n()];
    let mut queue = VecDeque::new();
    for u in f.broadcast_vertices() {
        let radius = f.get(u);
        stamp[u] = u;
        depth[u] = 0;
        queue.clear();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x != u && f.get(x) > 0 {
                return false;
            }
            if depth[x] == radius {
                continue;
            }
            for &w in tree.neighbors(x) {
                if stamp[w] != u {
                    stamp[w] = u;
                    depth[w] = depth[x] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    true
}

/// [`is_dominating`] by a multi-source pass that tracks the best remaining
/// broadcast range reaching each vertex.
pub fn is_dominating_sparse(tree: &Tree, f: &BroadcastAssignment) -> bool {
    let n = tree.n();
    // reach[x] = max over broadcast u of f(u) - d(u, x), when non-negative.
    let mut reach: Vec<i64> = vec![-1; n];
    let mut order: BTreeSet<(std::cmp::Reverse<i64>, Vertex)> = BTreeSet::new();
    for u in f.broadcast_vertices() {
        reach[u] = f.get(u) as i64;
        order.insert((std::cmp::Reverse(reach[u]), u));
    }
    while let Some((std::cmp::Reverse(r), x)) = order.pop_first() {
        if r != reach[x] || r == 0 {
            continue;
        }
        for &w in tree.neighbors(x) {
            if reach[w] < r - 1 {
                reach[w] = r - 1;
                order.insert((std::cmp::Reverse(r - 1), w));
            }
        }
    }
    reach.iter().all(|&r| r >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    fn star(leaves: usize) -> Tree {
        Tree::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    fn assignment(n: usize, pairs: &[(Vertex, u64)]) -> BroadcastAssignment {
        let mut f = BroadcastAssignment::zeros(n);
        for &(v, x) in pairs {
            f.set(v, x);
        }
        f
    }

    #[test]
    fn bfs_on_path_and_star() {
        assert_eq!(bfs_distances(&path(5), 0), vec![0, 1, 2, 3, 4]);
        assert_eq!(bfs_distances(&star(3), 1), vec![1, 0, 2, 2]);
        let t = path(7);
        for s in 0..7 {
            assert_eq!(bfs_distances(&t, s)[s], 0);
        }
    }

    #[test]
    fn diameters() {
        assert_eq!(metrics(&path(5)).diameter(), 4);
        let m = metrics(&star(3));
        assert_eq!(m.diameter(), 2);
        assert_eq!(m.ecc(0), 1);
    }

    #[test]
    fn linear_eccentricities_match_table() {
        let t =
            Tree::from_edges(8, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 6), (2, 7)]).unwrap();
        assert_eq!(eccentricities(&t), metrics(&t).eccentricities());
    }

    #[test]
    fn rejects_malformed_edge_sets() {
        assert_eq!(Tree::from_edges(0, []), Err(TreeError::Empty));
        assert!(matches!(
            Tree::from_edges(3, [(0, 1)]),
            Err(TreeError::EdgeCount { .. })
        ));
        assert_eq!(Tree::from_edges(2, [(1, 1)]), Err(TreeError::SelfLoop(1)));
        assert_eq!(
            Tree::from_edges(3, [(0, 1), (1, 0)]),
            Err(TreeError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Tree::from_edges(4, [(0, 1), (1, 2), (2, 0)]),
            Err(TreeError::Disconnected(3))
        );
        assert!(matches!(
            Tree::from_edges(2, [(0, 5)]),
            Err(TreeError::VertexOutOfRange(..))
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let t = Tree::parse_edge_list("4\n# star\n0 1\n2 0\n\n0 3\n").unwrap();
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(Tree::parse_edge_list(&t.to_edge_list()).unwrap(), t);
        assert!(matches!(
            Tree::parse_edge_list("3\n0 1\n1 x\n"),
            Err(TreeError::Parse { line: 3, .. })
        ));
        assert!(Tree::parse_edge_list("").is_err());
    }

    #[test]
    fn costs() {
        assert_eq!(cost(&BroadcastAssignment::zeros(5)), 0);
        assert_eq!(cost(&assignment(5, &[(0, 3), (4, 3)])), 6);
    }

    #[test]
    fn broadcast_bounds() {
        let t = path(5);
        let m = metrics(&t);
        assert!(is_broadcast(&t, &m, &assignment(5, &[(0, 4)])));
        assert!(!is_broadcast(&t, &m, &assignment(5, &[(2, 3)])));
        assert!(is_broadcast(&t, &m, &BroadcastAssignment::zeros(5)));
        assert!(!is_broadcast(&t, &m, &BroadcastAssignment::zeros(4)));
    }

    #[test]
    fn independence() {
        let t = path(5);
        let m = metrics(&t);
        assert!(is_independent(&t, &m, &assignment(5, &[(0, 3), (4, 3)])));
        let t4 = path(4);
        let m4 = metrics(&t4);
        assert!(!is_independent(&t4, &m4, &assignment(4, &[(0, 2), (3, 3)])));
        assert!(is_independent(&t, &m, &assignment(5, &[(2, 2)])));
    }

    #[test]
    fn domination() {
        let t = path(5);
        let m = metrics(&t);
        assert!(is_dominating(&t, &m, &assignment(5, &[(0, 3), (4, 3)])));
        assert!(!is_dominating(&t, &m, &assignment(5, &[(0, 1)])));
        for v in 0..5 {
            let f = assignment(5, &[(v, u64::from(m.ecc(v)))]);
            assert!(is_dominating(&t, &m, &f));
        }
    }

    #[test]
    fn sparse_predicates_agree_on_small_cases() {
        let t = path(5);
        let m = metrics(&t);
        let cases = [
            assignment(5, &[(0, 3), (4, 3)]),
            assignment(5, &[(0, 4), (4, 1)]),
            assignment(5, &[(0, 1)]),
            assignment(5, &[(1, 1), (3, 1)]),
            assignment(5, &[(0, 1), (2, 1), (4, 1)]),
        ];
        for f in &cases {
            assert_eq!(
                is_independent(&t, &m, f),
                is_independent_sparse(&t, f),
                "{f}"
            );
            assert_eq!(is_dominating(&t, &m, f), is_dominating_sparse(&t, f), "{f}");
        }
    }
}
