use std::fmt;

use super::GroupError;

/// A permutation of `0..n`, stored by images.
///
/// Permutations act on the right: `a.compose(&b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(GroupError::NotBijection);
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths (fixed points included) in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles().iter().fold(1u128, |acc, c| {
            let l = c.len() as u128;
            acc / gcd(acc, l) * l
        })
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    /// True iff the permutation has exactly two cycles, of equal length, and
    /// no fixed points.
    pub fn is_two_equal_cycles(&self) -> bool {
        let n = self.degree();
        if n < 2 || n % 2 == 1 {
            return false;
        }
        let half = n / 2;
        let len0 = self.cycle_len(0);
        if len0 != half || half == 1 && self.images[0] == 0 {
            return false;
        }
        let other = (0..n).find(|&x| !self.in_cycle_of(0, x, half)).expect("two cycles");
        self.cycle_len(other) == half && half > 1
    }

    /// True iff the permutation is a single cycle through every point.
    pub fn is_full_cycle(&self) -> bool {
        self.degree() > 0 && self.cycle_len(0) == self.degree()
    }

    fn cycle_len(&self, s: usize) -> usize {
        let mut x = self.images[s];
        let mut len = 1;
        while x != s {
            x = self.images[x];
            len += 1;
        }
        len
    }

    fn in_cycle_of(&self, s: usize, target: usize, len: usize) -> bool {
        let mut x = s;
        for _ in 0..len {
            if x == target {
                return true;
            }
            x = self.images[x];
        }
        false
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Perm {
    /// Disjoint-cycle notation without fixed points; the identity prints `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self)
    }
}
