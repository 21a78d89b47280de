//! Deterministic Schreier–Sims.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::{GroupError, Perm};

/// One level of a stabilizer chain: the basic orbit of `point` under the
/// generators that fix all earlier base points, with coset representatives.
#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps `point` to `x`; its inverse is kept alongside.
    transversal: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut l = Level { point, gens: Vec::new(), orbit: Vec::new(), transversal: Vec::new() };
        l.rebuild(degree);
        l
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        let id = Perm::identity(degree);
        self.transversal[self.point] = Some((id.clone(), id));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            i += 1;
            for g in &self.gens {
                let y = g.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().expect("orbit point").0.then(g);
                    let ui = u.inverse();
                    self.transversal[y] = Some((u, ui));
                    self.orbit.push(y);
                }
            }
        }
    }

    fn rep(&self, x: usize) -> Option<&(Perm, Perm)> {
        self.transversal[x].as_ref()
    }
}

/// Base and strong generating set.
#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn build(degree: usize, gens: &[Perm], base_hint: &[usize]) -> StabChain {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        for &b in base_hint {
            if b < degree && !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                let moved = (0..degree).find(|&x| g.image(x) != x).expect("non-identity");
                base.push(moved);
            }
        }
        let mut chain = StabChain { degree, levels: Vec::new() };
        for (i, &b) in base.iter().enumerate() {
            let mut level = Level::new(b, degree);
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            level.rebuild(degree);
            chain.levels.push(level);
        }
        chain.complete();
        chain.levels.retain(|l| l.orbit.len() > 1 || !l.gens.is_empty());
        chain
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.point);
            match level.rep(beta) {
                Some((_, inv)) => h = h.then(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let n = self.degree;
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                let u_beta = self.levels[lvl].rep(beta).expect("orbit point").0.clone();
                for s in &gens {
                    let image = s.image(beta);
                    let u_img_inv = &self.levels[lvl].rep(image).expect("closed orbit").1;
                    let schreier = u_beta.then(s).then(u_img_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, stop) = self.sift(&schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        let moved = (0..n).find(|&x| residue.image(x) != x).expect("non-identity");
                        self.levels.push(Level::new(moved, n));
                    }
                    for l in lvl + 1..=stop {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild(n);
                    }
                    i = stop + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub(crate) fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub(crate) fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub(crate) fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Uniformly random element as a product of random coset representatives.
    pub(crate) fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(&level.rep(x).expect("orbit point").0);
        }
        g
    }
}

/// A permutation group given by generators. The stabilizer chain is built
/// on first use and cached.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    base_hint: Vec<usize>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_hint: self.base_hint.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, GroupError> {
        PermGroup::with_base_hint(degree, generators, Vec::new())
    }

    /// As [`PermGroup::new`], preferring the given points first in the base.
    pub fn with_base_hint(
        degree: usize,
        generators: Vec<Perm>,
        base_hint: Vec<usize>,
    ) -> Result<PermGroup, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
        Ok(PermGroup { degree, generators, base_hint, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &self.base_hint))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The order if it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().basic_orbit_lengths()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain().strong_generators()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        self.chain().random_element(rng)
    }

    /// Every element exactly once, in lexicographic order of base images,
    /// provided the group order does not exceed `budget`.
    pub fn enumerate_elements(&self, budget: u64) -> Result<Elements<'_>, GroupError> {
        let order = self.order();
        if order > BigUint::from(budget) {
            return Err(GroupError::BudgetExceeded { budget });
        }
        Ok(Elements::new(self.chain()))
    }

    /// Orbits on points as sorted lists, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        super::point_orbits(self.degree, &self.generators)
    }
}

/// Iterator over all elements of a group, produced by depth-first search
/// over the coset representatives of each stabilizer chain level.
pub struct Elements<'a> {
    chain: &'a StabChain,
    /// For each level, candidates sorted by the resulting base image.
    stack: Vec<(Vec<Perm>, usize)>,
    /// `prefix[i]` is the partial product after choosing levels `< i`.
    prefix: Vec<Perm>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabChain) -> Elements<'a> {
        let mut e = Elements {
            chain,
            stack: Vec::new(),
            prefix: vec![Perm::identity(chain.degree)],
            done: false,
        };
        if chain.levels.is_empty() {
            e.stack.clear();
        } else {
            e.push_level();
        }
        e
    }

    /// Candidates for the next level given the current prefix product.
    fn push_level(&mut self) {
        let depth = self.stack.len();
        let level = &self.chain.levels[depth];
        let suffix = self.prefix.last().expect("prefix");
        let mut cands: Vec<(usize, Perm)> = level
            .orbit
            .iter()
            .map(|&x| {
                let t = &level.rep(x).expect("orbit point").0;
                let g = t.then(suffix);
                (g.image(level.point), g)
            })
            .collect();
        cands.sort_by_key(|(img, _)| *img);
        let perms: Vec<Perm> = cands.into_iter().map(|(_, g)| g).rev().collect();
        self.stack.push((perms, 0));
    }
}

impl Iterator for Elements<'_> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        if self.chain.levels.is_empty() {
            self.done = true;
            return Some(Perm::identity(self.chain.degree));
        }
        loop {
            let depth = self.stack.len();
            let (cands, _) = self.stack.last_mut()?;
            match cands.pop() {
                None => {
                    self.stack.pop();
                    self.prefix.pop();
                    if self.stack.is_empty() {
                        self.done = true;
                        return None;
                    }
                }
                Some(g) => {
                    if depth == self.chain.levels.len() {
                        return Some(g);
                    }
                    self.prefix.push(g);
                    self.push_level();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Closure of the generators under multiplication.
    fn naive_closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
        let mut set = HashSet::from([Perm::identity(n)]);
        let mut frontier = vec![Perm::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn symmetric_group_orders() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(naive_closure(4, s4.generators()).len(), 24);
        assert_eq!(s4.order_u64(), Some(24));
        let c7 = PermGroup::new(7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]])]).unwrap();
        assert_eq!(c7.order_u64(), Some(7));
        let s12 = PermGroup::new(
            12,
            vec![cyc(12, &[&[0, 1]]), cyc(12, &[&(0..12).collect::<Vec<_>>()])],
        )
        .unwrap();
        assert_eq!(s12.order_u64(), Some(479_001_600));
        assert!(matches!(
            s12.enumerate_elements(1000),
            Err(GroupError::BudgetExceeded { budget: 1000 })
        ));
    }

    #[test]
    fn membership() {
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
        assert!(a5.contains(&cyc(5, &[&[0, 1], &[2, 3]])));
        assert!(!a5.contains(&cyc(5, &[&[0, 1]])));
    }

    #[test]
    fn enumeration_matches_closure() {
        let cases: Vec<(usize, Vec<Perm>)> = vec![
            (3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]),
            (6, vec![cyc(6, &[&[0, 1, 2], &[3, 4, 5]]), cyc(6, &[&[0, 3]])]),
            (7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]), cyc(7, &[&[1, 2, 4], &[3, 6, 5]])]),
            (7, vec![cyc(7, &[&[0, 1]]), cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]])]),
        ];
        for (n, gens) in cases {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let closure = naive_closure(n, &gens);
            assert_eq!(g.order_u64(), Some(closure.len() as u64));
            let listed: Vec<Perm> = g.enumerate_elements(10_000).unwrap().collect();
            assert_eq!(listed.len(), closure.len());
            let as_set: HashSet<Perm> = listed.iter().cloned().collect();
            assert_eq!(as_set, closure);
            // lexicographic in base images
            let base = g.base();
            let keys: Vec<Vec<usize>> =
                listed.iter().map(|p| base.iter().map(|&b| p.image(b)).collect()).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn trivial_group_enumerates_identity() {
        let g = PermGroup::trivial(4);
        assert_eq!(g.order_u64(), Some(1));
        let all: Vec<Perm> = g.enumerate_elements(1).unwrap().collect();
        assert_eq!(all, vec![Perm::identity(4)]);
    }

    #[test]
    fn degree_checks() {
        assert!(matches!(
            PermGroup::new(3, vec![Perm::identity(4)]),
            Err(GroupError::DegreeMismatch(3, 4))
        ));
    }
}
