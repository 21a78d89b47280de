//! Finite fields GF(p^l) with a fixed primitive element.
//!
//! Elements are stored as indices in `0..q`. The index of the coefficient
//! vector `(a_0, a_1, ..., a_{l-1})` (element `a_0 + a_1 X + ...`) is the
//! base-`p` number with `a_0` as the most significant digit, so index order
//! is lexicographic order on coefficient vectors compared low degree first.
//! For a prime field this is simply the residue `0..p`.
//!
//! The modulus is the least monic irreducible polynomial of degree `l` and
//! `theta` the least element of multiplicative order `q - 1`, both in that
//! ordering.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    ZeroArgument,
    #[error("{0} is not a primitive element")]
    NotPrimitive(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Returns `(p, l)` with `q = p^l`, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d) || d * d > q).map(|d| if q.is_multiple_of(d) { d } else { q })?;
    let mut rest = q;
    let mut l = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        l += 1;
    }
    (rest == 1).then_some((p, l))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    l: u32,
    q: u32,
    /// Monic modulus, coefficients low degree first (length `l + 1`).
    modulus: Vec<u32>,
    theta: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    digits: Vec<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) modulus {:?} theta {}", self.q, self.modulus, self.format(self.theta))
    }
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<FieldSpec, FieldError> {
        let (p, l) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > u32::MAX as u64 / 2 {
            return Err(FieldError::NotPrimePower(q));
        }
        let (p, q) = (p as u32, q as u32);
        let digits: Vec<Vec<u32>> = (0..q).map(|i| to_digits(i, p, l)).collect();
        let modulus = if l == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, l)
        };
        let mut spec = FieldSpec {
            p,
            l,
            q,
            modulus,
            theta: FieldElem(0),
            exp: Vec::new(),
            log: Vec::new(),
            digits,
        };
        let one = spec.one();
        let theta = (1..q)
            .map(FieldElem)
            .find(|&t| spec.slow_order(t) == q - 1)
            .unwrap_or(one);
        spec.theta = theta;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = one;
        for k in 0..q - 1 {
            exp.push(x.0);
            log[x.index()] = k;
            x = spec.slow_mul(x, theta);
        }
        spec.exp = exp;
        spec.log = log;
        Ok(spec)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.l
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn theta(&self) -> FieldElem {
        self.theta
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_coeffs(&[1])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    /// Coefficients `a_0, ..., a_{l-1}`.
    pub fn coeffs(&self, a: FieldElem) -> &[u32] {
        &self.digits[a.index()]
    }

    /// Element from low-degree-first coefficients (missing ones are zero).
    pub fn from_coeffs(&self, c: &[u32]) -> FieldElem {
        let mut idx = 0;
        for i in 0..self.l as usize {
            idx = idx * self.p + c.get(i).map_or(0, |x| x % self.p);
        }
        FieldElem(idx)
    }

    /// The image of an integer under `Z -> GF(q)`.
    pub fn from_int(&self, k: i64) -> FieldElem {
        self.from_coeffs(&[k.rem_euclid(self.p as i64) as u32])
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.l == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let c: Vec<u32> = x.iter().zip(y).map(|(s, t)| (s + t) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.l == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let c: Vec<u32> = self.coeffs(a).iter().map(|s| (self.p - s) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let k = (self.log[a.index()] + self.log[b.index()]) % (self.q - 1);
        FieldElem(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let k = (self.q - 1 - self.log[a.index()]) % (self.q - 1);
        Ok(FieldElem(self.exp[k as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let k = (self.log[a.index()] as u64 * e) % (self.q as u64 - 1);
        FieldElem(self.exp[k as usize])
    }

    /// `theta^h`, exponent taken modulo `q - 1`.
    pub fn theta_pow(&self, h: u64) -> FieldElem {
        FieldElem(self.exp[(h % (self.q as u64 - 1)) as usize])
    }

    /// Least `h >= 0` with `theta^h = x`.
    pub fn dlog(&self, x: FieldElem) -> Result<u32, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::ZeroArgument);
        }
        Ok(self.log[x.index()])
    }

    /// Discrete logarithm relative to another primitive element `base`.
    pub fn dlog_base(&self, base: FieldElem, x: FieldElem) -> Result<u32, FieldError> {
        let e = self.dlog(base)? as u64;
        let m = self.q as u64 - 1;
        let inv = mod_inverse(e, m).ok_or(FieldError::NotPrimitive(base.0))?;
        Ok(((self.dlog(x)? as u64 * inv) % m) as u32)
    }

    pub fn multiplicative_order(&self, a: FieldElem) -> Result<u32, FieldError> {
        let k = self.dlog(a)?;
        Ok((self.q - 1) / gcd(k as u64, self.q as u64 - 1) as u32)
    }

    pub fn is_primitive(&self, a: FieldElem) -> bool {
        self.multiplicative_order(a).is_ok_and(|o| o == self.q - 1)
    }

    /// The set of non-zero squares, sorted.
    pub fn nonzero_squares(&self) -> Vec<FieldElem> {
        let mut s: Vec<FieldElem> = self.nonzero().map(|x| self.mul(x, x)).collect();
        s.sort();
        s.dedup();
        s
    }

    pub fn is_nonzero_square(&self, a: FieldElem) -> bool {
        a.0 != 0 && (self.p == 2 || self.log[a.index()].is_multiple_of(2))
    }

    /// Dot product of two vectors over the field.
    pub fn dot(&self, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
        a.iter().zip(b).fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Coefficient tuple rendering, e.g. `(1,2)`; prime fields print the residue.
    pub fn format(&self, a: FieldElem) -> String {
        if self.l == 1 {
            return a.0.to_string();
        }
        let parts: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }

    fn slow_mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let c = poly_mulmod(self.coeffs(a), self.coeffs(b), &self.modulus, self.p);
        self.from_coeffs(&c)
    }

    fn slow_order(&self, a: FieldElem) -> u32 {
        let one = self.one();
        let mut x = a;
        let mut k = 1;
        while x != one {
            x = self.slow_mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}

fn to_digits(mut idx: u32, p: u32, l: u32) -> Vec<u32> {
    let mut d = vec![0; l as usize];
    for i in (0..l as usize).rev() {
        d[i] = idx % p;
        idx /= p;
    }
    d
}

/// Product of two polynomials (low degree first) reduced by a monic modulus.
fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (deg..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let t = &mut prod[k - deg + i];
            *t = (*t + (p as u64 - c) * mi as u64) % p as u64;
        }
    }
    prod.truncate(deg);
    prod.resize(deg, 0);
    prod.into_iter().map(|x| x as u32).collect()
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm] as u64, p as u64).expect("non-zero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p as u64;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let t = &mut r[top - dm + i];
                *t = (*t + (p as u64 - c) * mi as u64 % p as u64) % p as u64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Least monic irreducible of degree `l` over GF(p), low-degree-first order.
fn least_irreducible(p: u32, l: u32) -> Vec<u32> {
    let count = (p as u64).pow(l) as u32;
    for idx in 0..count {
        let mut m = to_digits(idx, p, l);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32) as u32;
        for idx in 0..count {
            let mut f = to_digits(idx, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}
