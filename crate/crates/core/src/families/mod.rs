//! Constructors for the graph families of the bicirculant census.
//!
//! Every constructor fixes its vertex numbering, documented per function,
//! so serialized outputs are reproducible.

mod covers;
mod dispatch;
mod geometry;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::FieldError;
use crate::graph::{Graph, GraphError, Partition};
use crate::groups::{GroupError, GroupTable, Perm};
use crate::voltage::{VoltageAssignment, VoltageError};

pub use covers::{
    at_cover, matching_cover, matching_cover_with_primitive, sporadic, x1_cover, AtVariant, Sporadic,
};
pub use dispatch::{build, FAMILY_VOCABULARY};
pub use geometry::{
    gdd_incidence, hadamard11, paley_bipartite, projective_incidence, IncidenceVariant, PaleyVariant,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("connection set contains the identity")]
    IdentityInConnection,
    #[error("connection set is not closed under inverses")]
    NotInverseClosed,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameter(msg.into())
}

/// Family identifiers; [`FamilyId::name`] gives the CLI spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Cycle,
    Complete,
    Kmn,
    KnnMinus,
    Multipartite,
    Gp,
    Hamming,
    FoldedCube,
    Pg,
    PgPrime,
    H11,
    H11Prime,
    Paley2p,
    Paley2pr,
    X1,
    Kq2d,
    Atd,
    Atq,
    Sporadic,
    Gdd,
    Bc,
    Cayley,
    Graph6,
}

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Cycle => "cycle",
            FamilyId::Complete => "complete",
            FamilyId::Kmn => "kmn",
            FamilyId::KnnMinus => "knn-minus",
            FamilyId::Multipartite => "multipartite",
            FamilyId::Gp => "gp",
            FamilyId::Hamming => "hamming",
            FamilyId::FoldedCube => "folded-cube",
            FamilyId::Pg => "pg",
            FamilyId::PgPrime => "pg-prime",
            FamilyId::H11 => "h11",
            FamilyId::H11Prime => "h11-prime",
            FamilyId::Paley2p => "paley2p",
            FamilyId::Paley2pr => "paley2pr",
            FamilyId::X1 => "x1",
            FamilyId::Kq2d => "kq2d",
            FamilyId::Atd => "atd",
            FamilyId::Atq => "atq",
            FamilyId::Sporadic => "sporadic",
            FamilyId::Gdd => "gdd",
            FamilyId::Bc => "bc",
            FamilyId::Cayley => "cayley",
            FamilyId::Graph6 => "graph6",
        }
    }
}

/// A constructed graph with its provenance.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub family: FamilyId,
    /// Parameters exactly as accepted by [`build`].
    pub params: Vec<String>,
    /// Human-readable name, e.g. `GP(10,3)` or `Petersen`.
    pub label: String,
    pub graph: Graph,
    /// Fixed-point-free automorphism with two cycles of equal length.
    pub witness: Option<Perm>,
    /// Voltage data for covers.
    pub voltage: Option<VoltageAssignment>,
}

impl FamilyInstance {
    fn new(family: FamilyId, params: Vec<String>, label: String, graph: Graph) -> FamilyInstance {
        FamilyInstance { family, params, label, graph, witness: None, voltage: None }
    }

    /// Attaches a witness after checking it.
    fn with_witness(mut self, w: Perm) -> FamilyInstance {
        assert!(
            self.graph.is_automorphism(&w) && w.is_two_equal_cycles(),
            "constructor witness for {} is invalid",
            self.label
        );
        self.witness = Some(w);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FamilyInstance {
        self.label = label.into();
        self
    }

    /// The command-line spelling, e.g. `gp 10 3`.
    pub fn spec(&self) -> String {
        std::iter::once(self.family.name().to_string())
            .chain(self.params.iter().cloned())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A graph given directly in graph6.
pub fn graph6_input(s: &str) -> Result<FamilyInstance, FamilyError> {
    let g = crate::graph::from_graph6(s.trim())?;
    Ok(FamilyInstance::new(FamilyId::Graph6, vec![s.trim().to_string()], "input".to_string(), g))
}

fn strs(xs: &[usize]) -> Vec<String> {
    xs.iter().map(usize::to_string).collect()
}

/// Rotation `i ↦ i+1` inside each of the consecutive blocks of length `len`
/// starting at the given offsets.
fn block_rotation(n: usize, offsets: &[usize], len: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for &o in offsets {
        for i in 0..len {
            images[o + i] = o + (i + 1) % len;
        }
    }
    Perm::from_images(images).expect("rotation of disjoint blocks")
}

/// `C_n` on `0..n`, `i ~ i+1`. For even `n ≥ 4` the witness is rotation by 2.
pub fn cycle(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n ≥ 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let fi = FamilyInstance::new(FamilyId::Cycle, strs(&[n]), format!("C_{n}"), Graph::new(n, &edges)?);
    if n.is_multiple_of(2) {
        let w = Perm::from_images((0..n).map(|i| (i + 2) % n).collect()).expect("rotation");
        return Ok(fi.with_witness(w));
    }
    Ok(fi)
}

/// `K_n`. For even `n ≥ 4` the witness rotates `0..n/2` and `n/2..n`.
pub fn complete(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 2 {
        return Err(invalid(format!("complete graph needs n ≥ 2, got {n}")));
    }
    let fi = FamilyInstance::new(FamilyId::Complete, strs(&[n]), format!("K_{n}"), Graph::from_fn(n, |_, _| true));
    if n.is_multiple_of(2) && n >= 4 {
        return Ok(fi.with_witness(block_rotation(n, &[0, n / 2], n / 2)));
    }
    Ok(fi)
}

/// `K_{m,n}` with sides `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 1 || n < 1 {
        return Err(invalid("complete bipartite graph needs m, n ≥ 1"));
    }
    let g = Graph::from_fn(m + n, |u, v| (u < m) != (v < m));
    let fi = FamilyInstance::new(FamilyId::Kmn, strs(&[m, n]), format!("K_{{{m},{n}}}"), g);
    if m == n && n >= 2 {
        return Ok(fi.with_witness(block_rotation(2 * n, &[0, n], n)));
    }
    Ok(fi)
}

/// `K_{n,n} − nK_2`: `i` and `i' = n+i` for `i < n`, with `i ~ j'` iff `i ≠ j`.
pub fn knn_minus_matching(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 3 {
        return Err(invalid(format!("K_{{n,n}} minus a matching needs n ≥ 3, got {n}")));
    }
    let g = Graph::from_fn(2 * n, |u, v| (u < n) != (v < n) && u % n != v % n);
    let fi = FamilyInstance::new(FamilyId::KnnMinus, strs(&[n]), format!("K_{{{n},{n}}}-{n}K_2"), g);
    Ok(fi.with_witness(block_rotation(2 * n, &[0, n], n)))
}

/// `K_{m[b]}`: vertex `v` lies in part `v / b`.
pub fn multipartite(m: usize, b: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 2 || b < 1 {
        return Err(invalid("complete multipartite graph needs m ≥ 2, b ≥ 1"));
    }
    let g = Graph::from_fn(m * b, |u, v| u / b != v / b);
    Ok(FamilyInstance::new(FamilyId::Multipartite, strs(&[m, b]), format!("K_{{{m}[{b}]}}"), g))
}

/// `GP(n, r)`: `u_i = i`, `v_i = n+i`; `u_i ~ u_{i+1}`, `u_i ~ v_i`,
/// `v_i ~ v_{i+r}`.
pub fn generalized_petersen(n: usize, r: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 3 || r < 1 || 2 * r >= n {
        return Err(invalid(format!("GP(n,r) needs n ≥ 3 and 1 ≤ r < n/2, got ({n},{r})")));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + r) % n));
    }
    let fi = FamilyInstance::new(FamilyId::Gp, strs(&[n, r]), format!("GP({n},{r})"), Graph::new(2 * n, &edges)?);
    Ok(fi.with_witness(block_rotation(2 * n, &[0, n], n)))
}

/// `H(d, r)`: the tuple `(x_0, ..., x_{d-1})` has index `Σ x_i r^i`.
pub fn hamming(d: usize, r: usize) -> Result<FamilyInstance, FamilyError> {
    if d < 2 || r < 2 {
        return Err(invalid(format!("H(d,r) needs d, r ≥ 2, got ({d},{r})")));
    }
    let n = r.checked_pow(d as u32).filter(|&n| n <= 1 << 16).ok_or_else(|| invalid("H(d,r) too large"))?;
    let g = hamming_graph(d, r, n);
    Ok(FamilyInstance::new(FamilyId::Hamming, strs(&[d, r]), format!("H({d},{r})"), g))
}

fn hamming_graph(d: usize, r: usize, n: usize) -> Graph {
    let mut edges = Vec::new();
    for x in 0..n {
        let mut place = 1;
        for _ in 0..d {
            let digit = (x / place) % r;
            for c in digit + 1..r {
                edges.push((x, x + (c - digit) * place));
            }
            place *= r;
        }
    }
    Graph::new(n, &edges).expect("hamming edges")
}

/// Folded `d`-cube: the quotient of `H(d, 2)` by antipodal pairs
/// `{x, x ⊕ (2^d − 1)}`; the pair with `x < 2^{d−1}` is vertex `x`.
pub fn folded_cube(d: usize) -> Result<FamilyInstance, FamilyError> {
    if !(3..=16).contains(&d) {
        return Err(invalid(format!("folded cube needs 3 ≤ d ≤ 16, got {d}")));
    }
    let n = 1usize << d;
    let mask = n - 1;
    let cube = hamming_graph(d, 2, n);
    let blocks = (0..n / 2).map(|x| vec![x, x ^ mask]).collect();
    let g = cube.quotient(&Partition::new(n, blocks)?)?;
    Ok(FamilyInstance::new(FamilyId::FoldedCube, strs(&[d]), format!("folded {d}-cube"), g))
}

/// `BC_n[S]`: `h_0 = h`, `h_1 = n+h`; `h_0 ~ (h+m)_1` for `m ∈ S`.
pub fn bi_cayley_cyclic(n: usize, connection: &[usize]) -> Result<FamilyInstance, FamilyError> {
    if n < 1 {
        return Err(invalid("bi-Cayley graph needs n ≥ 1"));
    }
    let mut conn: Vec<usize> = connection.iter().map(|&m| m % n).collect();
    conn.sort_unstable();
    conn.dedup();
    let mut edges = Vec::new();
    for h in 0..n {
        for &m in &conn {
            edges.push((h, n + (h + m) % n));
        }
    }
    let mut params = vec![n.to_string()];
    params.push(conn.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    let label = format!("BC_{n}[{{{}}}]", params[1]);
    let fi = FamilyInstance::new(FamilyId::Bc, params, label, Graph::new(2 * n, &edges)?);
    if n >= 2 {
        return Ok(fi.with_witness(block_rotation(2 * n, &[0, n], n)));
    }
    Ok(fi)
}

/// `Cay(T, S)` on the element indices of `group`, with `g ~ s·g`.
pub fn cayley(group: &GroupTable, connection: &[usize]) -> Result<FamilyInstance, FamilyError> {
    let m = group.order();
    if connection.iter().any(|&s| s >= m) {
        return Err(invalid("connection element out of range"));
    }
    if connection.contains(&group.identity()) {
        return Err(FamilyError::IdentityInConnection);
    }
    if connection.iter().any(|&s| !connection.contains(&group.inv(s))) {
        return Err(FamilyError::NotInverseClosed);
    }
    let mut edges = Vec::new();
    for g in 0..m {
        for &s in connection {
            edges.push((g, group.mul(s, g)));
        }
    }
    let names: Vec<&str> = connection.iter().map(|&s| group.name(s)).collect();
    let label = format!("Cay({:?},{{{}}})", group.kind(), names.join(","));
    let mut params = vec![group_spec(group)];
    params.extend(names.iter().map(|s| s.to_string()));
    Ok(FamilyInstance::new(FamilyId::Cayley, params, label, Graph::new(m, &edges)?))
}

fn group_spec(group: &GroupTable) -> String {
    use crate::groups::GroupKind;
    match group.kind() {
        GroupKind::Cyclic(n) => format!("Z{n}"),
        GroupKind::Dihedral(n) => format!("D{n}"),
        GroupKind::Quaternion(n) => format!("Q{n}"),
        GroupKind::Custom => "custom".into(),
    }
}

/// A cover built from `va`, labelled and with its voltage data attached.
fn from_voltage(family: FamilyId, params: Vec<String>, label: String, va: VoltageAssignment) -> FamilyInstance {
    let (graph, _) = va.cover();
    let mut fi = FamilyInstance::new(family, params, label, graph);
    fi.voltage = Some(va);
    fi
}
