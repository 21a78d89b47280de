//! Regular covers from voltage assignments over table groups.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Partition};
use crate::groups::GroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoltageError {
    #[error("edge {{{0}, {1}}} has no voltage")]
    MissingEdgeVoltage(usize, usize),
    #[error("edge {{{0}, {1}}} is assigned twice")]
    DuplicateEdgeVoltage(usize, usize),
    #[error("{{{0}, {1}}} is not an edge of the base graph")]
    NotAnEdge(usize, usize),
    #[error("unknown group element {0:?}")]
    UnknownGroupElement(String),
    #[error("voltage on ({0}, {1}) is not the inverse of the voltage on ({1}, {0})")]
    Antisymmetry(usize, usize),
    #[error("walk step {0} does not follow an edge")]
    NotAWalk(usize),
    #[error("base graph is disconnected")]
    DisconnectedBase,
    #[error("not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("malformed voltage table at line {line}: {reason}")]
    MalformedTable { line: usize, reason: String },
}

/// A base graph with a group element on every arc, the reverse arc carrying
/// the inverse. Values are stored on the orientation `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageAssignment {
    base: Graph,
    group: GroupTable,
    edges: Vec<(usize, usize)>,
    voltage: Vec<usize>,
}

impl VoltageAssignment {
    /// Takes one arc per edge in either orientation; the reverse arc gets the
    /// inverse.
    pub fn new(
        base: Graph,
        group: GroupTable,
        assignment: &[((usize, usize), usize)],
    ) -> Result<VoltageAssignment, VoltageError> {
        let edges: Vec<(usize, usize)> = base.edges().collect();
        let mut voltage: Vec<Option<usize>> = vec![None; edges.len()];
        for &((u, v), x) in assignment {
            if x >= group.order() {
                return Err(VoltageError::UnknownGroupElement(x.to_string()));
            }
            let (key, val) = if u < v { ((u, v), x) } else { ((v, u), group.inv(x)) };
            let i = edges.binary_search(&key).map_err(|_| VoltageError::NotAnEdge(u, v))?;
            if voltage[i].replace(val).is_some() {
                return Err(VoltageError::DuplicateEdgeVoltage(key.0, key.1));
            }
        }
        let voltage = voltage
            .iter()
            .zip(&edges)
            .map(|(x, &(u, v))| x.ok_or(VoltageError::MissingEdgeVoltage(u, v)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VoltageAssignment { base, group, edges, voltage })
    }

    /// As [`VoltageAssignment::new`] with elements written as words such as
    /// `ba^-1`.
    pub fn from_words(
        base: Graph,
        group: GroupTable,
        assignment: &[((usize, usize), &str)],
    ) -> Result<VoltageAssignment, VoltageError> {
        let parsed = assignment
            .iter()
            .map(|&(arc, w)| {
                group
                    .parse(w)
                    .map(|x| (arc, x))
                    .map_err(|_| VoltageError::UnknownGroupElement(w.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        VoltageAssignment::new(base, group, &parsed)
    }

    /// Evaluates `rule` on both arcs of every edge and rejects the result
    /// unless the two values are mutually inverse.
    pub fn from_arc_rule(
        base: Graph,
        group: GroupTable,
        mut rule: impl FnMut(usize, usize) -> usize,
    ) -> Result<VoltageAssignment, VoltageError> {
        let mut assignment = Vec::with_capacity(base.edge_count());
        for (u, v) in base.edges() {
            let (f, b) = (rule(u, v), rule(v, u));
            if f >= group.order() || b >= group.order() {
                return Err(VoltageError::UnknownGroupElement(f.max(b).to_string()));
            }
            if group.inv(f) != b {
                return Err(VoltageError::Antisymmetry(u, v));
            }
            assignment.push(((u, v), f));
        }
        VoltageAssignment::new(base, group, &assignment)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// Voltage on the arc `(u, v)`.
    pub fn arc_voltage(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        let i = self.edges.binary_search(&key).ok()?;
        let x = self.voltage[i];
        Some(if u < v { x } else { self.group.inv(x) })
    }

    /// Edges `u < v` with their voltages.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().copied().zip(self.voltage.iter().copied())
    }

    /// The derived cover and its fibre partition. Vertex `(v, g)` has index
    /// `v·|N| + g` and is adjacent to `(w, g·ψ(v, w))`.
    pub fn cover(&self) -> (Graph, Partition) {
        let m = self.group.order();
        let n = self.base.order();
        let mut edges = Vec::with_capacity(self.edges.len() * m);
        for (&(u, v), &x) in self.edges.iter().zip(&self.voltage) {
            for g in 0..m {
                edges.push((u * m + g, v * m + self.group.mul(g, x)));
            }
        }
        let graph = Graph::new(n * m, &edges).expect("cover edges are in range and loop-free");
        let fibres = (0..n).map(|v| (v * m..(v + 1) * m).collect()).collect();
        let partition = Partition::new(n * m, fibres).expect("fibres partition the cover");
        (graph, partition)
    }

    /// Product of arc voltages along `walk`, left to right.
    pub fn walk_voltage(&self, walk: &[usize]) -> Result<usize, VoltageError> {
        let mut acc = self.group.identity();
        for (i, w) in walk.windows(2).enumerate() {
            let x = self.arc_voltage(w[0], w[1]).ok_or(VoltageError::NotAWalk(i))?;
            acc = self.group.mul(acc, x);
        }
        Ok(acc)
    }

    /// Whether the cover is connected, decided by the subgroup generated by
    /// the voltages of the fundamental cycles of a breadth-first tree.
    pub fn cover_connected(&self) -> Result<bool, VoltageError> {
        let n = self.base.order();
        if n == 0 || !self.base.is_connected() {
            return Err(VoltageError::DisconnectedBase);
        }
        let potential = self.tree_potential(&bfs_tree(&self.base, 0))?;
        let gr = &self.group;
        let cycles: Vec<usize> = self
            .entries()
            .map(|((u, v), x)| gr.mul(gr.mul(potential[u], x), gr.inv(potential[v])))
            .filter(|&c| c != gr.identity())
            .collect();
        Ok(gr.subgroup_closure(&cycles).len() == gr.order())
    }

    /// Gauge-equivalent assignment with identity voltage on every arc of
    /// `tree`.
    pub fn reduce(&self, tree: &[(usize, usize)]) -> Result<VoltageAssignment, VoltageError> {
        let potential = self.tree_potential(tree)?;
        let gr = &self.group;
        let voltage = self
            .entries()
            .map(|((u, v), x)| gr.mul(gr.mul(potential[u], x), gr.inv(potential[v])))
            .collect();
        Ok(VoltageAssignment { voltage, ..self.clone() })
    }

    /// Conjugates every voltage by `k`.
    pub fn conjugate(&self, k: usize) -> VoltageAssignment {
        let voltage = self.voltage.iter().map(|&x| self.group.conjugate(x, k)).collect();
        VoltageAssignment { voltage, ..self.clone() }
    }

    /// Product of voltages along the tree path from vertex 0 to each vertex.
    fn tree_potential(&self, tree: &[(usize, usize)]) -> Result<Vec<usize>, VoltageError> {
        let n = self.base.order();
        if n == 0 {
            return Err(VoltageError::NotASpanningTree("empty base graph".into()));
        }
        if tree.len() + 1 != n {
            return Err(VoltageError::NotASpanningTree(format!(
                "{} edges for {} vertices",
                tree.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in tree {
            if u >= n || v >= n || !self.base.has_edge(u, v) {
                return Err(VoltageError::NotASpanningTree(format!("{{{u}, {v}}} is not a base edge")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut potential = vec![usize::MAX; n];
        potential[0] = self.group.identity();
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if potential[v] == usize::MAX {
                    let x = self.arc_voltage(u, v).expect("tree edge is a base edge");
                    potential[v] = self.group.mul(potential[u], x);
                    queue.push_back(v);
                }
            }
        }
        if potential.contains(&usize::MAX) {
            return Err(VoltageError::NotASpanningTree("does not reach every vertex".into()));
        }
        Ok(potential)
    }

    /// One line `u v element` per edge `u < v`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for ((u, v), x) in self.entries() {
            let _ = writeln!(s, "{u} {v} {}", self.group.name(x));
        }
        s
    }

    /// Inverse of [`VoltageAssignment::to_text`]; blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_text(base: Graph, group: GroupTable, text: &str) -> Result<VoltageAssignment, VoltageError> {
        let mut assignment = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| VoltageError::MalformedTable { line: i + 1, reason: reason.into() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v, w] = parts[..] else {
                return Err(bad("expected `u v element`"));
            };
            let u: usize = u.parse().map_err(|_| bad("bad vertex"))?;
            let v: usize = v.parse().map_err(|_| bad("bad vertex"))?;
            let x = group.parse(w).map_err(|_| VoltageError::UnknownGroupElement(w.to_string()))?;
            assignment.push(((u, v), x));
        }
        VoltageAssignment::new(base, group, &assignment)
    }
}

/// Edges of a breadth-first spanning tree of the component of `root`.
pub fn bfs_tree(g: &Graph, root: usize) -> Vec<(usize, usize)> {
    let mut seen = vec![false; g.order()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                tree.push((u, v));
                queue.push_back(v);
            }
        }
    }
    tree
}
