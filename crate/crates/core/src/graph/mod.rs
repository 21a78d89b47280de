//! Simple undirected graphs, vertex partitions, quotients and covers.
//!
//! A [`Graph`] is immutable once built. Vertices are the dense range
//! `0..n`; adjacency is kept both as sorted neighbour lists and as a packed
//! bit matrix so that membership tests are constant time.

pub(crate) mod graph6;

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::groups::Perm;

pub use graph6::{from_graph6, to_graph6, GRAPH6_MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("graph on {0} vertices exceeds the graph6 limit")]
    TooLarge(usize),
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedEncoding { offset: usize, reason: String },
    #[error("permutation of degree {perm} cannot relabel a graph on {n} vertices")]
    DegreeMismatch { perm: usize, n: usize },
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::IndexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            let (wu, bu) = (u * words + v / 64, v % 64);
            if bits[wu] >> bu & 1 == 1 {
                continue;
            }
            bits[wu] |= 1 << bu;
            bits[v * words + u / 64] |= 1 << (u % 64);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj, words, bits })
    }

    /// Builds a graph from a symmetric predicate evaluated on all pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("pairs are in range and loop-free")
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, &[]).expect("no edges")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Common valency if the graph is regular. The empty graph on zero
    /// vertices reports `None`.
    pub fn regular_valency(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == first).then_some(first)
    }

    /// Returns the graph with vertex `v` renamed to `perm(v)`.
    pub fn relabel(&self, perm: &Perm) -> Result<Graph, GraphError> {
        if perm.degree() != self.n {
            return Err(GraphError::DegreeMismatch { perm: perm.degree(), n: self.n });
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm.image(u), perm.image(v))).collect();
        Graph::new(self.n, &edges)
    }

    /// Whether `perm` maps edges onto edges.
    pub fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.degree() == self.n
            && self.edges().all(|(u, v)| self.has_edge(perm.image(u), perm.image(v)))
    }

    /// Complement: plain, or restricted to the cross pairs of a bipartition.
    pub fn complement(&self, mode: &ComplementMode) -> Result<Graph, GraphError> {
        match mode {
            ComplementMode::Plain => Ok(Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))),
            ComplementMode::Bipartite(left, right) => {
                let side = validate_bipartition(self, left, right)?;
                Ok(Graph::from_fn(self.n, |u, v| side[u] != side[v] && !self.has_edge(u, v)))
            }
        }
    }

    /// Vertices `(v, i)` numbered `2v + i`; `(u, i) ~ (v, 1 - i)` whenever `u ~ v`.
    pub fn standard_double_cover(&self) -> Graph {
        let mut edges = Vec::with_capacity(2 * self.edge_count());
        for (u, v) in self.edges() {
            edges.push((2 * u, 2 * v + 1));
            edges.push((2 * u + 1, 2 * v));
        }
        Graph::new(2 * self.n, &edges).expect("valid by construction")
    }

    /// Quotient graph: one vertex per block, distinct blocks adjacent iff
    /// some edge joins them. Edges inside a block are dropped.
    pub fn quotient(&self, p: &Partition) -> Result<Graph, GraphError> {
        p.check_order(self.n)?;
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            let (a, b) = (p.block_of(u), p.block_of(v));
            if a != b {
                edges.push((a, b));
            }
        }
        Graph::new(p.len(), &edges)
    }

    /// True iff no block contains an edge and every vertex has exactly one
    /// neighbour in each block adjacent to its own.
    pub fn is_cover(&self, p: &Partition) -> Result<bool, GraphError> {
        p.check_order(self.n)?;
        let q = self.quotient(p)?;
        let mut seen = vec![0usize; p.len()];
        for x in 0..self.n {
            let bx = p.block_of(x);
            for &y in self.neighbors(x) {
                let by = p.block_of(y);
                if by == bx {
                    return Ok(false);
                }
                seen[by] += 1;
            }
            let ok = q.neighbors(bx).iter().all(|&b| seen[b] == 1);
            for &y in self.neighbors(x) {
                seen[p.block_of(y)] = 0;
            }
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Breadth-first distances from `root`; `usize::MAX` marks unreachable.
    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Two-colouring with colour 0 on the least vertex of each component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        let left = (0..self.n).filter(|&v| colour[v] == 0).collect();
        let right = (0..self.n).filter(|&v| colour[v] == 1).collect();
        Some((left, right))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Largest eccentricity, `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for v in 0..self.n {
            let d = self.distances_from(v);
            let ecc = *d.iter().max()?;
            if ecc == usize::MAX {
                return None;
            }
            diam = diam.max(ecc);
        }
        Some(diam)
    }

    pub fn structural_summary(&self) -> StructuralSummary {
        StructuralSummary {
            order: self.n,
            edges: self.edge_count(),
            connected: self.is_connected(),
            bipartition: self.bipartition(),
            girth: self.girth(),
            diameter: self.diameter(),
            regular_valency: self.regular_valency(),
            degree_sequence: self.degree_sequence(),
        }
    }

    /// Strongly regular parameters `(n, k, lambda, mu)` if the graph is
    /// strongly regular, checked from common-neighbour counts.
    pub fn srg_parameters(&self) -> Option<(usize, usize, usize, usize)> {
        let k = self.regular_valency()?;
        let mut lambda = None;
        let mut mu = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let common = self.common_neighbors(u, v);
                let slot = if self.has_edge(u, v) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(common),
                    Some(c) if c != common => return None,
                    _ => {}
                }
            }
        }
        Some((self.n, k, lambda.unwrap_or(0), mu.unwrap_or(0)))
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        let (ru, rv) = (self.row(u), self.row(v));
        ru.iter().zip(rv).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Graphviz rendering with integer node ids.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// How [`Graph::complement`] treats vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplementMode {
    Plain,
    /// Complement only between the two given halves; no edges inside a half.
    Bipartite(Vec<usize>, Vec<usize>),
}

fn validate_bipartition(g: &Graph, left: &[usize], right: &[usize]) -> Result<Vec<u8>, GraphError> {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    for (s, half) in [(0u8, left), (1u8, right)] {
        for &v in half {
            if v >= n {
                return Err(GraphError::InvalidBipartition(format!("vertex {v} out of range")));
            }
            if side[v] != u8::MAX {
                return Err(GraphError::InvalidBipartition(format!("vertex {v} listed twice")));
            }
            side[v] = s;
        }
    }
    if let Some(v) = side.iter().position(|&s| s == u8::MAX) {
        return Err(GraphError::InvalidBipartition(format!("vertex {v} missing")));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(GraphError::InvalidBipartition(format!("edge {u}-{v} inside a half")));
    }
    Ok(side)
}

/// A partition of `0..n` into non-empty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(GraphError::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} out of range")));
                }
                if block_of[v] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        Partition::new(n, (0..n).map(|v| vec![v]).collect()).expect("valid")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    fn check_order(&self, n: usize) -> Result<(), GraphError> {
        if self.block_of.len() != n {
            return Err(GraphError::InvalidPartition(format!(
                "partition of {} points applied to a graph on {n} vertices",
                self.block_of.len()
            )));
        }
        Ok(())
    }
}

/// Aggregate structural facts about a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralSummary {
    pub order: usize,
    pub edges: usize,
    pub connected: bool,
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    /// `None` encodes infinite girth (a forest).
    pub girth: Option<usize>,
    /// `None` encodes infinite diameter (disconnected).
    pub diameter: Option<usize>,
    pub regular_valency: Option<usize>,
    pub degree_sequence: Vec<usize>,
}

impl StructuralSummary {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}
