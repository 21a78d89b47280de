//! Permutations, permutation groups and small multiplication-table groups.

mod chain;
mod perm;
mod table;

use std::collections::HashSet;

use thiserror::Error;

pub use chain::{Elements, PermGroup};
pub use perm::Perm;
pub use table::{GroupKind, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group order exceeds the enumeration budget {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("seed point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse group element {0:?}")]
    UnknownElement(String),
    #[error("table violates the group axioms: {0}")]
    NotAGroup(String),
}

/// Orbit of an ordered tuple of points under the group generated by `gens`,
/// acting coordinatewise. The seed comes first; the rest follow in
/// breadth-first discovery order.
pub fn orbit_closure(
    degree: usize,
    gens: &[Perm],
    seed: &[usize],
) -> Result<Vec<Vec<usize>>, GroupError> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch(degree, g.degree()));
    }
    if let Some(&point) = seed.iter().find(|&&x| x >= degree) {
        return Err(GroupError::PointOutOfRange { point, degree });
    }
    let mut index: HashSet<Vec<usize>> = HashSet::new();
    let mut orbit = vec![seed.to_vec()];
    index.insert(seed.to_vec());
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let img: Vec<usize> = orbit[i].iter().map(|&x| g.image(x)).collect();
            if index.insert(img.clone()) {
                orbit.push(img);
            }
        }
        i += 1;
    }
    Ok(orbit)
}

/// Number of tuples in the orbit of `seed`, with tuples packed as `u64`
/// keys in base `degree`. Requires `degree^len(seed)` to fit in 64 bits.
pub(crate) fn orbit_size_packed(degree: usize, gens: &[Perm], seed: &[usize]) -> usize {
    let k = seed.len();
    let n = degree as u64;
    let pack = |t: &[usize]| t.iter().fold(0u64, |acc, &x| acc * n + x as u64);
    let mut seen = HashSet::new();
    let mut frontier = vec![seed.to_vec()];
    seen.insert(pack(seed));
    let mut buf = vec![0usize; k];
    while let Some(t) = frontier.pop() {
        for g in gens {
            for (b, &x) in buf.iter_mut().zip(&t) {
                *b = g.image(x);
            }
            if seen.insert(pack(&buf)) {
                frontier.push(buf.clone());
            }
        }
    }
    seen.len()
}

/// Point orbits, each sorted, listed by least element.
pub(crate) fn point_orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.image(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        by_root[r].push(x);
    }
    by_root.into_iter().filter(|o| !o.is_empty()).collect()
}
