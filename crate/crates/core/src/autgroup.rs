//! Automorphism groups, canonical forms and isomorphism testing by
//! partition refinement with individualization and backtracking.

use std::collections::VecDeque;

use crate::graph::{graph6, Graph};
use crate::groups::{Perm, PermGroup};

/// Canonical relabeling of a graph and the graph6 string it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Sends each input vertex to its canonical index.
    pub labeling: Perm,
    pub graph6: String,
}

/// Generators of the full automorphism group.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let s = Search::run(g, false);
    s.group()
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    Search::run(g, true).canonical()
}

/// Automorphism group and canonical form from a single search.
pub fn analyze(g: &Graph) -> (PermGroup, CanonicalForm) {
    let s = Search::run(g, true);
    (s.group(), s.canonical())
}

/// A vertex bijection `a → b` carrying edges onto edges, if one exists.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Option<Perm> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (mut da, mut db) = (a.degree_sequence(), b.degree_sequence());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let (ca, cb) = (canonical_form(a), canonical_form(b));
    if ca.graph6 != cb.graph6 {
        return None;
    }
    let back = cb.labeling.inverse();
    let map = ca.labeling.then(&back);
    debug_assert!(a.edges().all(|(u, v)| b.has_edge(map.image(u), map.image(v))));
    a.edges().all(|(u, v)| b.has_edge(map.image(u), map.image(v))).then_some(map)
}

/// Ordered partition of the vertex set. Cells are contiguous ranges of
/// `lab`; `start[p]` is the first position of the cell holding position `p`
/// and `end[s]` closes the cell starting at `s`.
#[derive(Clone)]
struct Part {
    lab: Vec<usize>,
    pos: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    cells: usize,
}

impl Part {
    /// Cells of equal degree, in increasing degree order.
    fn by_degree(g: &Graph) -> Part {
        let n = g.order();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (g.degree(v), v));
        let mut p = Part { pos: vec![0; n], start: vec![0; n], end: vec![0; n], lab, cells: 0 };
        let mut s = 0;
        for i in 0..n {
            p.pos[p.lab[i]] = i;
            if i > 0 && g.degree(p.lab[i]) != g.degree(p.lab[i - 1]) {
                p.end[s] = i;
                p.cells += 1;
                s = i;
            }
            p.start[i] = s;
        }
        if n > 0 {
            p.end[s] = n;
            p.cells += 1;
        }
        p
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn discrete(&self) -> bool {
        self.cells == self.n()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s = self.end[s];
        }
        out
    }

    /// First smallest non-singleton cell.
    fn target(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.n() {
            let size = self.end[s] - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
            s = self.end[s];
        }
        best.map(|(s, _)| s)
    }

    fn individualize(&mut self, v: usize, g: &Graph, trace: &mut Trace) {
        let c = self.start[self.pos[v]];
        let e = self.end[c];
        let (pv, first) = (self.pos[v], self.lab[c]);
        self.lab.swap(pv, c);
        self.pos[first] = pv;
        self.pos[v] = c;
        for p in c + 1..e {
            self.start[p] = c + 1;
        }
        self.end[c] = c + 1;
        self.end[c + 1] = e;
        self.cells += 1;
        self.refine(g, vec![c], trace);
    }

    /// Splits cells by neighbour counts into each splitter until the
    /// partition is equitable.
    fn refine(&mut self, g: &Graph, splitters: Vec<usize>, trace: &mut Trace) {
        let n = self.n();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for s in splitters {
            if !queued[s] {
                queued[s] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0usize; n];
        let mut hit: Vec<usize> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        let mut cell: Vec<(usize, usize)> = Vec::new();
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.discrete() {
                break;
            }
            for p in w..self.end[w] {
                for &u in g.neighbors(self.lab[p]) {
                    if count[u] == 0 {
                        hit.push(u);
                    }
                    count[u] += 1;
                }
            }
            touched.clear();
            touched.extend(hit.iter().map(|&u| self.start[self.pos[u]]));
            touched.sort_unstable();
            touched.dedup();
            trace.mix(w as u64);
            for &c in &touched {
                let e = self.end[c];
                if e - c == 1 {
                    continue;
                }
                cell.clear();
                cell.extend(self.lab[c..e].iter().map(|&v| (count[v], v)));
                cell.sort_unstable_by_key(|&(k, _)| k);
                if cell[0].0 == cell[cell.len() - 1].0 {
                    continue;
                }
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut f = c;
                for (i, &(k, v)) in cell.iter().enumerate() {
                    let p = c + i;
                    self.lab[p] = v;
                    self.pos[v] = p;
                    if i > 0 && k != cell[i - 1].0 {
                        frags.push((f, p));
                        f = p;
                    }
                }
                frags.push((f, e));
                for &(fs, fe) in &frags {
                    for p in fs..fe {
                        self.start[p] = fs;
                    }
                    self.end[fs] = fe;
                    trace.mix(((fs as u64) << 32) ^ (count[self.lab[fs]] as u64));
                }
                self.cells += frags.len() - 1;
                if queued[c] {
                    for &(fs, _) in &frags[1..] {
                        queued[fs] = true;
                        queue.push_back(fs);
                    }
                } else {
                    let mut largest = 0;
                    for (i, &(fs, fe)) in frags.iter().enumerate() {
                        if fe - fs > frags[largest].1 - frags[largest].0 {
                            largest = i;
                        }
                    }
                    for (i, &(fs, _)) in frags.iter().enumerate() {
                        if i != largest {
                            queued[fs] = true;
                            queue.push_back(fs);
                        }
                    }
                }
            }
            for &u in &hit {
                count[u] = 0;
            }
            hit.clear();
        }
        trace.mix(self.cells as u64);
    }
}

/// Order-sensitive digest of refinement events; equal for nodes related by
/// an automorphism.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct Trace(u64);

impl Trace {
    fn mix(&mut self, x: u64) {
        self.0 = (self.0 ^ x).wrapping_mul(0x0100_0000_01b3).rotate_left(17) ^ 0x9e37_79b9;
    }
}

struct Leaf {
    lab: Vec<usize>,
    path: Vec<usize>,
    cert: Vec<u8>,
}

struct Search<'g> {
    g: &'g Graph,
    canonical: bool,
    first: Option<Leaf>,
    /// Traces along the first path, by depth.
    first_trace: Vec<Trace>,
    best: Option<Leaf>,
    gens: Vec<Perm>,
}

impl<'g> Search<'g> {
    fn run(g: &'g Graph, canonical: bool) -> Search<'g> {
        let mut s = Search {
            g,
            canonical,
            first: None,
            first_trace: Vec::new(),
            best: None,
            gens: Vec::new(),
        };
        let mut root = Part::by_degree(g);
        let mut trace = Trace::default();
        let starts = root.cell_starts();
        root.refine(g, starts, &mut trace);
        s.first_trace.push(trace);
        let mut path = Vec::new();
        s.node(&root, trace, &mut path, true);
        s
    }

    fn group(&self) -> PermGroup {
        let n = self.g.order();
        let hint = self.first.as_ref().map(|l| l.path.clone()).unwrap_or_default();
        PermGroup::with_base_hint(n, self.gens.clone(), hint).expect("generators have degree n")
    }

    fn canonical(&self) -> CanonicalForm {
        let best = self.best.as_ref().expect("search visits at least one leaf");
        let mut images = vec![0; best.lab.len()];
        for (i, &v) in best.lab.iter().enumerate() {
            images[v] = i;
        }
        let graph6 = String::from_utf8(best.cert.clone()).expect("graph6 is ASCII");
        CanonicalForm { labeling: Perm::from_images(images).expect("leaf is a bijection"), graph6 }
    }

    /// Explores the subtree at `part`. Returns `Some(d)` to unwind to the
    /// node at depth `d`.
    fn node(&mut self, part: &Part, trace: Trace, path: &mut Vec<usize>, on_first: bool) -> Option<usize> {
        let depth = path.len();
        if on_first && self.first_trace.len() <= depth {
            self.first_trace.push(trace);
        }
        let Some(t) = part.target() else {
            return self.leaf(part, path);
        };
        let mut cands: Vec<usize> = part.lab[t..part.end[t]].to_vec();
        cands.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_of: Vec<usize> = Vec::new();
        let mut seen_gens = usize::MAX;
        for (i, &v) in cands.iter().enumerate() {
            if seen_gens != self.gens.len() {
                orbit_of = self.stabilizer_orbits(path);
                seen_gens = self.gens.len();
            }
            if explored.iter().any(|&w| orbit_of[w] == orbit_of[v]) {
                continue;
            }
            explored.push(v);
            let mut child = part.clone();
            let mut ct = trace;
            child.individualize(v, self.g, &mut ct);
            let child_first = on_first && i == 0;
            if !self.canonical && !child_first {
                if let Some(ft) = self.first_trace.get(depth + 1) {
                    if *ft != ct {
                        continue;
                    }
                }
            }
            path.push(v);
            let back = self.node(&child, ct, path, child_first);
            path.pop();
            if let Some(d) = back {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Part, path: &[usize]) -> Option<usize> {
        let cert = certificate(self.g, &part.lab);
        let leaf = Leaf { lab: part.lab.clone(), path: path.to_vec(), cert };
        let Some(first) = &self.first else {
            self.best = Some(Leaf { lab: leaf.lab.clone(), path: leaf.path.clone(), cert: leaf.cert.clone() });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let d = common_prefix(&leaf.path, &first.path);
            self.add_generator(&leaf.lab, &first.lab.clone());
            return Some(d);
        }
        if self.canonical {
            let best = self.best.as_ref().expect("best set with first");
            if leaf.cert == best.cert {
                let d = common_prefix(&leaf.path, &best.path);
                let target = best.lab.clone();
                self.add_generator(&leaf.lab, &target);
                return Some(d);
            }
            if leaf.cert < best.cert {
                self.best = Some(leaf);
            }
        }
        None
    }

    fn add_generator(&mut self, from: &[usize], to: &[usize]) {
        let mut images = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            images[a] = b;
        }
        let p = Perm::from_images(images).expect("leaves are bijections");
        debug_assert!(self.g.is_automorphism(&p));
        if !p.is_identity() && !self.gens.contains(&p) {
            self.gens.push(p);
        }
    }

    /// Orbit representative of each vertex under the found generators that
    /// fix `prefix` pointwise.
    fn stabilizer_orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.gens {
            if prefix.iter().any(|&x| g.image(x) != x) {
                continue;
            }
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g.image(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// graph6 bytes of the graph relabeled so that `lab[i]` becomes `i`.
fn certificate(g: &Graph, lab: &[usize]) -> Vec<u8> {
    let n = lab.len();
    let mut out = graph6::size_prefix(n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for &li in &lab[..j] {
            acc = (acc << 1) | g.has_edge(li, lab[j]) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}
