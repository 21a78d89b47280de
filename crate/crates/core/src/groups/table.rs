use std::fmt::Write as _;

use super::GroupError;

/// Which presentation a table was built from. Orders follow the convention
/// that `Dihedral(m)` and `Quaternion(m)` have exactly `m` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Custom,
}

/// A finite group stored as a full multiplication table.
///
/// For the dihedral and quaternion groups of order `2n` the element `a^i b^j`
/// (`0 ≤ i < n`, `j ∈ {0,1}`) has index `i + n·j`; for `Z_n` the element `k`
/// has index `k`. In the quaternion group the generators are also available
/// as `u = a`, `v = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    kind: GroupKind,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    names: Vec<String>,
    generators: Vec<(String, usize)>,
}

impl GroupTable {
    pub fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("cyclic group needs n ≥ 1".into()));
        }
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let names = (0..n).map(|k| k.to_string()).collect();
        let gens = vec![("a".to_string(), 1 % n)];
        GroupTable::build(GroupKind::Cyclic(n), n, mul, names, gens)
    }

    /// `D_m = ⟨a,b | a^{m/2} = b² = (ba)² = 1⟩` of order `m`.
    pub fn dihedral(m: usize) -> Result<GroupTable, GroupError> {
        if m < 2 || m % 2 == 1 {
            return Err(GroupError::InvalidParameter(format!(
                "dihedral group order must be even and at least 2, got {m}"
            )));
        }
        let n = m / 2;
        let mut mul = vec![0; m * m];
        for x in 0..m {
            let (i, j) = (x % n, x / n);
            for y in 0..m {
                let (k, l) = (y % n, y / n);
                let e = if j == 0 { i + k } else { i + n - k };
                mul[x * m + y] = e % n + n * ((j + l) % 2);
            }
        }
        let names = (0..m).map(|x| word_name(x % n, x / n)).collect();
        let gens = vec![("a".to_string(), 1 % n), ("b".to_string(), n)];
        GroupTable::build(GroupKind::Dihedral(m), m, mul, names, gens)
    }

    /// `Q_m = ⟨u,v | u^{m/2} = 1, v² = u^{m/4}, v⁻¹uv = u⁻¹⟩` of order `m`.
    pub fn quaternion(m: usize) -> Result<GroupTable, GroupError> {
        if m < 4 || !m.is_multiple_of(4) {
            return Err(GroupError::InvalidParameter(format!(
                "generalized quaternion group order must be a multiple of 4, got {m}"
            )));
        }
        let n = m / 2;
        let mut mul = vec![0; m * m];
        for x in 0..m {
            let (i, j) = (x % n, x / n);
            for y in 0..m {
                let (k, l) = (y % n, y / n);
                let mut e = if j == 0 { i + k } else { i + n - k };
                if j + l == 2 {
                    e += n / 2;
                }
                mul[x * m + y] = e % n + n * ((j + l) % 2);
            }
        }
        let names = (0..m).map(|x| word_name(x % n, x / n)).collect();
        let gens = vec![
            ("a".to_string(), 1 % n),
            ("b".to_string(), n),
            ("u".to_string(), 1 % n),
            ("v".to_string(), n),
        ];
        GroupTable::build(GroupKind::Quaternion(m), m, mul, names, gens)
    }

    /// Builds a table from raw data, checking the group axioms.
    pub fn from_table(order: usize, mul: Vec<usize>, names: Vec<String>) -> Result<GroupTable, GroupError> {
        GroupTable::build(GroupKind::Custom, order, mul, names, Vec::new())
    }

    fn build(
        kind: GroupKind,
        order: usize,
        mul: Vec<usize>,
        names: Vec<String>,
        generators: Vec<(String, usize)>,
    ) -> Result<GroupTable, GroupError> {
        let m = order;
        if m == 0 || mul.len() != m * m || names.len() != m {
            return Err(GroupError::NotAGroup("table dimensions".into()));
        }
        if mul.iter().any(|&x| x >= m) {
            return Err(GroupError::NotAGroup("entry out of range".into()));
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| mul[e * m + x] == x && mul[x * m + e] == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        let mut inv = vec![0; m];
        for x in 0..m {
            inv[x] = (0..m)
                .find(|&y| mul[x * m + y] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {x} has no inverse")))?;
        }
        for x in 0..m {
            for y in 0..m {
                let xy = mul[x * m + y];
                for z in 0..m {
                    if mul[xy * m + z] != mul[x * m + mul[y * m + z]] {
                        return Err(GroupError::NotAGroup(format!("({x}·{y})·{z} ≠ {x}·({y}·{z})")));
                    }
                }
            }
        }
        Ok(GroupTable { kind, order, mul, inv, identity, names, generators })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `k⁻¹ x k`.
    pub fn conjugate(&self, x: usize, k: usize) -> usize {
        self.mul(self.mul(self.inv(k), x), k)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().find(|(n, _)| n == name).map(|&(_, g)| g)
    }

    /// Parses an element: a product of generator powers such as `ba^-1`,
    /// `a^2b` or `1`; for cyclic groups a plain residue such as `3` is also
    /// accepted.
    pub fn parse(&self, word: &str) -> Result<usize, GroupError> {
        let bad = || GroupError::UnknownElement(word.to_string());
        let w: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
        if w.is_empty() {
            return Err(bad());
        }
        if w.iter().all(|c| c.is_ascii_digit() || *c == '-') {
            let k: i64 = w.iter().collect::<String>().parse().map_err(|_| bad())?;
            return match self.kind {
                GroupKind::Cyclic(n) => Ok(k.rem_euclid(n as i64) as usize),
                _ if k == 1 => Ok(self.identity),
                _ => Err(bad()),
            };
        }
        let mut acc = self.identity;
        let mut i = 0;
        while i < w.len() {
            let g = match w[i] {
                'e' => self.identity,
                c => self.generator(&c.to_string()).ok_or_else(bad)?,
            };
            i += 1;
            let mut exp = 1i64;
            if i < w.len() && w[i] == '^' {
                i += 1;
                let start = i;
                if i < w.len() && w[i] == '-' {
                    i += 1;
                }
                while i < w.len() && w[i].is_ascii_digit() {
                    i += 1;
                }
                exp = w[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            }
            acc = self.mul(acc, self.pow(g, exp));
        }
        Ok(acc)
    }

    /// The subgroup generated by `gens`, as a sorted list of indices.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Plain-text multiplication table: a header of element names, then one
    /// row per element.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {:?} order {}", self.kind, self.order);
        let _ = writeln!(s, "*\t{}", self.names.join("\t"));
        for x in 0..self.order {
            let row: Vec<&str> = (0..self.order).map(|y| self.name(self.mul(x, y))).collect();
            let _ = writeln!(s, "{}\t{}", self.names[x], row.join("\t"));
        }
        s
    }
}

fn word_name(i: usize, j: usize) -> String {
    let mut s = match i {
        0 => String::new(),
        1 => "a".to_string(),
        _ => format!("a^{i}"),
    };
    if j == 1 {
        s.push('b');
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}
