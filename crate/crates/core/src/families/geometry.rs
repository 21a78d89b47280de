use std::collections::HashMap;

use super::{invalid, FamilyError, FamilyId, FamilyInstance};
use crate::gf::{is_prime, FieldElem, FieldSpec};
use crate::graph::{ComplementMode, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceVariant {
    B,
    BPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaleyVariant {
    /// `G(2p, r)`
    G2p,
    /// `G(2, p, r)`
    G2pr,
}

/// All vectors of `GF(q)^d`, lexicographic in element indices with the
/// first coordinate most significant.
fn vectors(f: &FieldSpec, d: usize) -> Vec<Vec<FieldElem>> {
    let q = f.order() as usize;
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![FieldElem::ZERO; d];
            for c in v.iter_mut().rev() {
                *c = FieldElem((k % q) as u32);
                k /= q;
            }
            v
        })
        .collect()
}

/// Nonzero vectors whose first nonzero coordinate is 1, in [`vectors`] order.
fn projective_points(f: &FieldSpec, d: usize) -> Vec<Vec<FieldElem>> {
    vectors(f, d)
        .into_iter()
        .filter(|v| v.iter().find(|x| x.0 != 0) == Some(&f.one()))
        .collect()
}

/// `B(PG(d−1, q))` and its bipartite complement. Points are the normalized
/// vectors `x` (vertices `0..m`); hyperplanes are `{y : a·y = 0}` for
/// normalized `a` (vertices `m..2m`). `B` joins `x` and `a` when `a·x = 0`.
pub fn projective_incidence(d: usize, q: u64, variant: IncidenceVariant) -> Result<FamilyInstance, FamilyError> {
    if d < 3 {
        return Err(invalid(format!("PG incidence graph needs d ≥ 3, got {d}")));
    }
    let f = FieldSpec::new(q).map_err(|_| invalid(format!("{q} is not a prime power")))?;
    if (q as usize).pow(d as u32) > 1 << 16 {
        return Err(invalid("PG incidence graph too large"));
    }
    let pts = projective_points(&f, d);
    let m = pts.len();
    let mut edges = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        for (j, a) in pts.iter().enumerate() {
            let incident = f.dot(a, x) == f.zero();
            if incident == (variant == IncidenceVariant::B) {
                edges.push((i, m + j));
            }
        }
    }
    let (family, label) = match variant {
        IncidenceVariant::B => (FamilyId::Pg, format!("B(PG({},{q}))", d - 1)),
        IncidenceVariant::BPrime => (FamilyId::PgPrime, format!("B'(PG({},{q}))", d - 1)),
    };
    let params = vec![d.to_string(), q.to_string()];
    Ok(FamilyInstance::new(family, params, label, Graph::new(2 * m, &edges)?))
}

/// `B'(H(11))` joins `n ∈ Z_11` (vertex `n`) to the block `R + i` (vertex
/// `11 + i`) when `n ∉ R + i`, with `R` the nonzero squares mod 11; `B(H(11))`
/// is its bipartite complement.
pub fn hadamard11(variant: IncidenceVariant) -> Result<FamilyInstance, FamilyError> {
    const R: [usize; 5] = [1, 3, 4, 5, 9];
    let prime = Graph::from_fn(22, |u, v| {
        let (n, i) = if u < 11 { (u, v) } else { (v, u) };
        if (n < 11) == (i < 11) {
            return false;
        }
        let i = i - 11;
        !R.contains(&((n + 11 - i) % 11))
    });
    let halves = ((0..11).collect(), (11..22).collect());
    let (family, label, g) = match variant {
        IncidenceVariant::BPrime => (FamilyId::H11Prime, "B'(H(11))", prime),
        IncidenceVariant::B => (FamilyId::H11, "B(H(11))", prime.complement(&ComplementMode::Bipartite(halves.0, halves.1))?),
    };
    Ok(FamilyInstance::new(family, Vec::new(), label.to_string(), g))
}

/// `G(2p, r)` and `G(2, p, r)` on `x ∈ Z_p` (vertex `x`) and `x'` (vertex
/// `p + x`), with `L` the subgroup of order `r` in `Z_p^*`. `G(2p, r)` has
/// edges `{x, y'}`; `G(2, p, r)` has `{x, y}`, `{x', y}`, `{x, y'}`,
/// `{x', y'}`; always for `y − x ∈ L`.
pub fn paley_bipartite(p: u64, r: u64, variant: PaleyVariant) -> Result<FamilyInstance, FamilyError> {
    if p < 3 || !is_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    if r == 0 || !(p - 1).is_multiple_of(r) {
        return Err(invalid(format!("{r} does not divide {}", p - 1)));
    }
    if variant == PaleyVariant::G2pr && r % 2 == 1 {
        return Err(invalid("G(2,p,r) is defined only for even r"));
    }
    let pu = p as usize;
    let f = FieldSpec::new(p)?;
    let step = (p - 1) / r;
    let l: Vec<usize> = (0..r).map(|k| f.theta_pow(k * step).index()).collect();
    let mut edges = Vec::new();
    for x in 0..pu {
        for &s in &l {
            let y = (x + s) % pu;
            edges.push((x, pu + y));
            if variant == PaleyVariant::G2pr {
                edges.push((x, y));
                edges.push((pu + x, y));
                edges.push((pu + x, pu + y));
            }
        }
    }
    let (family, label) = match variant {
        PaleyVariant::G2p => (FamilyId::Paley2p, format!("G({},{r})", 2 * p)),
        PaleyVariant::G2pr => (FamilyId::Paley2pr, format!("G(2,{p},{r})")),
    };
    let fi = FamilyInstance::new(family, vec![p.to_string(), r.to_string()], label, Graph::new(2 * pu, &edges)?);
    Ok(fi.with_witness(super::block_rotation(2 * pu, &[0, pu], pu)))
}

/// `Γ(d, q, r)`: points are nonzero `x ∈ GF(q)^d` and blocks the affine
/// hyperplanes `{y : a·y = 1}` for nonzero `a`, both taken modulo the scalar
/// subgroup `N = ⟨θ^r⟩` of order `(q − 1)/r`. Classes are numbered in
/// [`vectors`] order of their first member; points come first. A point class
/// `[x]` and block class `[a]` are adjacent when `a·x ∈ N`.
pub fn gdd_incidence(d: usize, q: u64, r: u64) -> Result<FamilyInstance, FamilyError> {
    if d < 2 {
        return Err(invalid(format!("Γ(d,q,r) needs d ≥ 2, got {d}")));
    }
    let f = FieldSpec::new(q).map_err(|_| invalid(format!("{q} is not a prime power")))?;
    if r == 0 || !(q - 1).is_multiple_of(r) {
        return Err(invalid(format!("{r} does not divide {}", q - 1)));
    }
    if (q as usize).pow(d as u32) > 1 << 16 {
        return Err(invalid("Γ(d,q,r) too large"));
    }
    let n_size = (q - 1) / r;
    let scalars: Vec<FieldElem> = (0..n_size).map(|k| f.theta_pow(k * r)).collect();
    let mut in_n = vec![false; q as usize];
    for s in &scalars {
        in_n[s.index()] = true;
    }
    let mut class_of: HashMap<Vec<FieldElem>, usize> = HashMap::new();
    let mut reps: Vec<Vec<FieldElem>> = Vec::new();
    for v in vectors(&f, d).into_iter().skip(1) {
        if class_of.contains_key(&v) {
            continue;
        }
        let id = reps.len();
        for &s in &scalars {
            class_of.insert(v.iter().map(|&c| f.mul(s, c)).collect(), id);
        }
        reps.push(v);
    }
    let m = reps.len();
    let mut edges = Vec::new();
    for (i, x) in reps.iter().enumerate() {
        for (j, a) in reps.iter().enumerate() {
            if in_n[f.dot(a, x).index()] {
                edges.push((i, m + j));
            }
        }
    }
    let params = vec![d.to_string(), q.to_string(), r.to_string()];
    let g = Graph::new(2 * m, &edges)?;
    Ok(FamilyInstance::new(FamilyId::Gdd, params, format!("Γ({d},{q},{r})"), g))
}
