//! s-arc counts, transitivity and bicirculant / circulant witnesses.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::autgroup::automorphism_group;
use crate::graph::Graph;
use crate::groups::{orbit_size_packed, Perm, PermGroup};

/// Default number of group elements a witness search may examine.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Number of `s`-arcs for `s ≤ 2`: vertices, ordered arcs, or
/// non-backtracking paths `(u, v, w)`.
pub fn count_s_arcs(g: &Graph, s: u32) -> u64 {
    match s {
        0 => g.order() as u64,
        1 => (0..g.order()).map(|v| g.degree(v) as u64).sum(),
        2 => {
            let mut total = 0;
            for v in 0..g.order() {
                for &u in g.neighbors(v) {
                    total += g.neighbors(v).iter().filter(|&&w| w != u).count() as u64;
                }
            }
            total
        }
        _ => panic!("s-arcs are counted only for s ≤ 2"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransitivityProfile {
    pub vertex: bool,
    pub arc: bool,
    pub two_arc: bool,
}

/// Transitivity of `aut` on vertices, arcs and 2-arcs, each tested by the
/// orbit of the least such object. Each flag requires the previous ones.
pub fn transitivity_profile(g: &Graph, aut: &PermGroup) -> TransitivityProfile {
    let n = g.order();
    let gens = aut.generators();
    let vertex = n > 0 && orbit_size_packed(n, gens, &[0]) == n;
    let arc = vertex
        && g.edge_count() > 0
        && orbit_size_packed(n, gens, &[0, g.neighbors(0)[0]]) as u64 == count_s_arcs(g, 1);
    let two_arc = arc && {
        let v = g.neighbors(0)[0];
        match g.neighbors(v).iter().find(|&&w| w != 0) {
            Some(&w) => orbit_size_packed(n, gens, &[0, v, w]) as u64 == count_s_arcs(g, 2),
            None => false,
        }
    };
    TransitivityProfile { vertex, arc, two_arc }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Perm),
    /// Established by examining every automorphism.
    No,
    /// The budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub verdict: Verdict,
    pub search_budget_used: u64,
}

impl WitnessResult {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&Perm> {
        match &self.verdict {
            Verdict::Yes(p) => Some(p),
            _ => None,
        }
    }

    pub fn verdict_name(&self) -> &'static str {
        match self.verdict {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

impl Serialize for WitnessResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WitnessResult", 3)?;
        st.serialize_field("verdict", self.verdict_name())?;
        st.serialize_field("witness", &self.witness().map(Perm::to_string))?;
        st.serialize_field("search_budget_used", &self.search_budget_used)?;
        st.end()
    }
}

/// Searches for an automorphism with no fixed points and exactly two cycles
/// of equal length.
pub fn bicirculant_witness(g: &Graph, budget: u64) -> WitnessResult {
    bicirculant_witness_with(g, &automorphism_group(g), None, budget)
}

/// As [`bicirculant_witness`] with a precomputed group and an optional
/// candidate tried first.
pub fn bicirculant_witness_with(g: &Graph, aut: &PermGroup, hint: Option<&Perm>, budget: u64) -> WitnessResult {
    let n = g.order();
    if n < 2 || n % 2 == 1 {
        return WitnessResult { verdict: Verdict::No, search_budget_used: 0 };
    }
    search(g, aut, hint, budget, Perm::is_two_equal_cycles)
}

/// Searches for an automorphism that is a single cycle through all vertices.
pub fn circulant_witness(g: &Graph, budget: u64) -> WitnessResult {
    circulant_witness_with(g, &automorphism_group(g), None, budget)
}

pub fn circulant_witness_with(g: &Graph, aut: &PermGroup, hint: Option<&Perm>, budget: u64) -> WitnessResult {
    if g.order() == 0 {
        return WitnessResult { verdict: Verdict::No, search_budget_used: 0 };
    }
    search(g, aut, hint, budget, Perm::is_full_cycle)
}

/// Tries `hint`, then every element of `aut` in base-image order when the
/// group fits in the budget; otherwise draws `budget` uniform elements from
/// a fixed-seed generator and answers `Unknown` if none qualifies.
fn search(g: &Graph, aut: &PermGroup, hint: Option<&Perm>, budget: u64, want: fn(&Perm) -> bool) -> WitnessResult {
    let accept = |p: &Perm| want(p) && g.is_automorphism(p);
    if let Some(h) = hint {
        if accept(h) {
            return WitnessResult { verdict: Verdict::Yes(h.clone()), search_budget_used: 0 };
        }
    }
    let mut used = 0;
    if aut.order() <= BigUint::from(budget) {
        let elements = aut.enumerate_elements(budget).expect("order checked against budget");
        for p in elements {
            used += 1;
            if accept(&p) {
                return WitnessResult { verdict: Verdict::Yes(p), search_budget_used: used };
            }
        }
        return WitnessResult { verdict: Verdict::No, search_budget_used: used };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6269_6369 ^ g.order() as u64);
    while used < budget {
        used += 1;
        let p = aut.random_element(&mut rng);
        if accept(&p) {
            return WitnessResult { verdict: Verdict::Yes(p), search_budget_used: used };
        }
    }
    WitnessResult { verdict: Verdict::Unknown, search_budget_used: used }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &e).unwrap()
    }

    #[test]
    fn arc_counts() {
        assert_eq!(count_s_arcs(&cycle(4), 2), 8);
        assert_eq!(count_s_arcs(&petersen(), 2), 60);
        assert_eq!(count_s_arcs(&Graph::from_fn(4, |_, _| true), 1), 12);
        assert_eq!(count_s_arcs(&petersen(), 0), 10);
    }

    #[test]
    fn profiles() {
        let p = petersen();
        let t = transitivity_profile(&p, &automorphism_group(&p));
        assert_eq!(t, TransitivityProfile { vertex: true, arc: true, two_arc: true });
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = transitivity_profile(&star, &automorphism_group(&star));
        assert!(!t.vertex && !t.arc && !t.two_arc);
        // a perfect matching has arcs but no 2-arcs
        let m = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let t = transitivity_profile(&m, &automorphism_group(&m));
        assert!(t.vertex && t.arc && !t.two_arc);
        let e = Graph::empty(3);
        let t = transitivity_profile(&e, &automorphism_group(&e));
        assert!(t.vertex && !t.arc);
    }

    #[test]
    fn witnesses() {
        let p = petersen();
        let w = bicirculant_witness(&p, DEFAULT_BUDGET);
        assert_eq!(w.witness().unwrap().cycle_type(), vec![5, 5]);
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let w = bicirculant_witness(&path, DEFAULT_BUDGET);
        assert_eq!(w.witness().unwrap().to_string(), "(0 3)(1 2)");
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let w = bicirculant_witness(&star, DEFAULT_BUDGET);
        assert_eq!(w.verdict, Verdict::No);
        assert_eq!(w.search_budget_used, 6);
        assert!(circulant_witness(&cycle(6), DEFAULT_BUDGET).is_yes());
        let w = circulant_witness(&p, DEFAULT_BUDGET);
        assert_eq!((w.verdict.clone(), w.search_budget_used), (Verdict::No, 120));
        let k44 = Graph::from_fn(8, |u, v| (u < 4) != (v < 4));
        assert!(circulant_witness(&k44, DEFAULT_BUDGET).is_yes());
        assert_eq!(bicirculant_witness(&cycle(5), DEFAULT_BUDGET).verdict, Verdict::No);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let k12 = Graph::from_fn(12, |_, _| true);
        let aut = automorphism_group(&k12);
        let r = search(&k12, &aut, None, 10, |_| false);
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.search_budget_used, 10);
    }

    #[test]
    fn serializes_cycle_notation() {
        let w = bicirculant_witness(&cycle(4), DEFAULT_BUDGET);
        let json = serde_json::to_string(&w).unwrap();
        assert!(json.contains("\"verdict\":\"yes\""), "{json}");
        assert!(json.contains("\"witness\":\"("), "{json}");
    }
}
