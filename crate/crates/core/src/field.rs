//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` is the residue modulo the field modulus.
//! Multiplication and addition go through discrete-log and Zech-log tables built
//! once per field, so every operation is a handful of table lookups.

use std::fmt;

use thiserror::Error;

/// Largest field size for which lookup tables are built.
pub const MAX_FIELD_SIZE: u32 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{k} exceeds the supported maximum {max}")]
    TooLarge { p: u32, k: usize, max: u32 },
    #[error("modulus must have {expected} coefficients (low to high), got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus {0} is reducible over GF(p)")]
    ReducibleModulus(String),
    #[error("coefficient {value} out of range for p = {p}")]
    CoefficientRange { value: u32, p: u32 },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    Mismatch,
}

/// Parameters of a finite field: characteristic, degree, and defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub k: usize,
    /// Monic modulus, coefficients low to high, length `k + 1`.
    pub modulus: Vec<u32>,
}

/// An element of a [`Field`]. Only meaningful together with the field that created it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Integer code of the element (base-p digits are the coefficients in `t`).
    pub fn code(self) -> u32 {
        self.0
    }
}

const NO_LOG: u32 = u32::MAX;

/// A finite field GF(p^k) with precomputed log tables.
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// exp[i] = g^i for i in 0..2(q-1), g a primitive element.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i), NO_LOG when 1 + g^i = 0.
    zech: Vec<u32>,
    t: Fe,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.spec.p, self.spec.k, self.spec.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Conway polynomials for p in {2, 3, 5} and k <= 6, low to high.
fn default_modulus_table(p: u32, k: usize) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, k) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (3, 6) => &[2, 2, 1, 0, 2, 0, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (5, 5) => &[3, 4, 0, 0, 0, 1],
        (5, 6) => &[2, 0, 1, 4, 1, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

// Dense polynomials over GF(p) as coefficient vectors, low to high. Only used
// for modulus validation and table construction.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn gfp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * b[i] as u64) % p as u64) as u32;
        }
        r = trim(r);
        if dr == 0 {
            break;
        }
    }
    r
}

/// Irreducibility by trial division against every monic polynomial of degree at most k/2.
pub fn is_irreducible_mod_p(modulus: &[u32], p: u32) -> bool {
    let m = trim(modulus.to_vec());
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = vec![0u32; d + 1];
            let mut c = code;
            for slot in div.iter_mut().take(d) {
                *slot = (c % p as u64) as u32;
                c /= p as u64;
            }
            div[d] = 1;
            let r = gfp_rem(&m, &div, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

fn format_gfp_poly(m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl FieldSpec {
    /// Validates `p` prime, `modulus` monic of degree `k` and irreducible.
    pub fn new(p: u32, k: usize, modulus: Option<Vec<u32>>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(FieldError::TooLarge { p, k, max: MAX_FIELD_SIZE });
        }
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(p, k),
        };
        if modulus.len() != k + 1 {
            return Err(FieldError::ModulusLength { expected: k + 1, got: modulus.len() });
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::CoefficientRange { value: c, p });
        }
        if modulus[k] != 1 {
            return Err(FieldError::ModulusNotMonic);
        }
        if k > 1 && !is_irreducible_mod_p(&modulus, p) {
            return Err(FieldError::ReducibleModulus(format_gfp_poly(&modulus)));
        }
        Ok(FieldSpec { p, k, modulus })
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.k as u32)
    }
}

/// Table entry when present, otherwise the lexicographically first monic irreducible.
pub fn default_modulus(p: u32, k: usize) -> Vec<u32> {
    if let Some(m) = default_modulus_table(p, k) {
        return m;
    }
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k as u32);
    for code in 0..count {
        let mut m = vec![0u32; k + 1];
        let mut c = code;
        for slot in m.iter_mut().take(k) {
            *slot = (c % p as u64) as u32;
            c /= p as u64;
        }
        m[k] = 1;
        if is_irreducible_mod_p(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let p = spec.p;
        let k = spec.k;
        let q = spec.size();
        let decode = |a: u32| -> Vec<u32> {
            let mut v = vec![0u32; k];
            let mut c = a;
            for slot in v.iter_mut() {
                *slot = c % p;
                c /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        // schoolbook product reduced by the monic modulus
        let slow_mul = |a: u32, b: u32| -> u32 {
            let (va, vb) = (decode(a), decode(b));
            let mut prod = vec![0u64; 2 * k];
            for i in 0..k {
                for j in 0..k {
                    prod[i + j] = (prod[i + j] + va[i] as u64 * vb[j] as u64) % p as u64;
                }
            }
            for d in (k..2 * k - 1).rev() {
                let c = prod[d];
                if c != 0 {
                    prod[d] = 0;
                    for (i, &m) in spec.modulus.iter().enumerate().take(k) {
                        let idx = d - k + i;
                        prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
                    }
                }
            }
            let v: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
            encode(&v)
        };
        let t = if k == 1 { (p - spec.modulus[0] % p) % p } else { p };
        let order = q - 1;
        let factors = prime_factors(order.max(1));
        let slow_pow = |a: u32, mut e: u32| -> u32 {
            let mut r = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };
        let is_generator = |g: u32| g != 0 && factors.iter().all(|&r| order == 1 || slow_pow(g, order / r) != 1);
        let g = if is_generator(t) {
            t
        } else {
            (1..q).find(|&g| is_generator(g)).expect("multiplicative group is cyclic")
        };
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = slow_mul(cur, g);
        }
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }
        let add_one = |a: u32| -> u32 {
            let mut v = decode(a);
            v[0] = (v[0] + 1) % p;
            encode(&v)
        };
        let zech = (0..order)
            .map(|i| {
                let s = add_one(exp[i as usize]);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        Field { spec, q, exp, log, zech, t: Fe(t) }
    }

    /// Convenience constructor with the default modulus.
    pub fn gf(p: u32, k: usize) -> Result<Field, FieldError> {
        Ok(Field::new(FieldSpec::new(p, k, None)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> usize {
        self.spec.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The class of `t` modulo the field modulus.
    pub fn t(&self) -> Fe {
        self.t
    }

    /// All elements in code order, starting with 0.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn from_int(&self, v: i64) -> Fe {
        let p = self.spec.p as i64;
        Fe(v.rem_euclid(p) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, FieldError> {
        if coeffs.len() > self.spec.k {
            return Err(FieldError::CoefficientCount { expected: self.spec.k, got: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.spec.p) {
            return Err(FieldError::CoefficientRange { value: c, p: self.spec.p });
        }
        Ok(Fe(coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.spec.p + c)))
    }

    /// Coefficients of 1, t, ..., t^{k-1}.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = vec![0u32; self.spec.k];
        let mut c = a.0;
        for slot in v.iter_mut() {
            *slot = c % self.spec.p;
            c /= self.spec.p;
        }
        v
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.spec.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.spec.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.q - 1) / 2;
        Fe(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        let la = self.log[a.0 as usize];
        Ok(Fe(self.exp[((order - la) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let order = (self.q - 1) as u64;
        let la = self.log[a.0 as usize] as u64;
        Fe(self.exp[((la * (e % order)) % order) as usize])
    }

    /// a^p.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.spec.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Result<u32, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        let la = self.log[a.0 as usize];
        Ok(order / gcd(order, la))
    }

    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.spec.p
    }

    /// Membership of `a` in GF(p)(gen), decided by linear algebra over GF(p) on
    /// the span of 1, gen, ..., gen^{k-1}.
    pub fn in_subfield_generated_by(&self, a: Fe, gen: Fe) -> bool {
        let p = self.spec.p;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut pw = Fe::ONE;
        for _ in 0..self.spec.k {
            rows.push(self.coeffs(pw));
            pw = self.mul(pw, gen);
        }
        let base = gfp_rank(rows.clone(), p);
        rows.push(self.coeffs(a));
        gfp_rank(rows, p) == base
    }

    /// Smallest d dividing k with a^{p^d} = a, i.e. the degree of GF(p)(a) over GF(p).
    pub fn degree_of(&self, a: Fe) -> usize {
        let k = self.spec.k;
        (1..=k)
            .filter(|d| k.is_multiple_of(*d))
            .find(|&d| {
                let mut x = a;
                for _ in 0..d {
                    x = self.frobenius(x);
                }
                x == a
            })
            .unwrap_or(k)
    }

    /// Elements of the subfield GF(p^d), d | k, in code order.
    pub fn subfield_elements(&self, d: usize) -> Vec<Fe> {
        self.elements()
            .filter(|&a| {
                let mut x = a;
                for _ in 0..d {
                    x = self.frobenius(x);
                }
                x == a
            })
            .collect()
    }

    /// Renders the element as a polynomial in `t` (integers for prime-subfield values).
    pub fn format(&self, a: Fe) -> String {
        format_gfp_poly(&self.coeffs(a))
    }

    /// True when the rendering of `a` has more than one summand.
    pub fn needs_parens(&self, a: Fe) -> bool {
        self.coeffs(a).iter().filter(|&&c| c != 0).count() > 1
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn gfp_rank(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod_p(rows[rank][c], p) as u64;
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] as u64 * inv % p as u64;
                for j in 0..cols {
                    let sub = f * rows[rank][j] as u64 % p as u64;
                    rows[r][j] = ((rows[r][j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap())
    }

    // Extended Euclid over GF(2)[t] as an independent inverse oracle.
    fn euclid_inverse_gf2(a: Vec<u32>, m: Vec<u32>) -> Vec<u32> {
        fn mul(a: &[u32], b: &[u32]) -> Vec<u32> {
            let mut r = vec![0; a.len() + b.len()];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    r[i + j] ^= x & y;
                }
            }
            trim(r)
        }
        fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
            let n = a.len().max(b.len());
            trim((0..n).map(|i| a.get(i).unwrap_or(&0) ^ b.get(i).unwrap_or(&0)).collect())
        }
        fn divrem(a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
            let mut r = trim(a.to_vec());
            let b = trim(b.to_vec());
            let mut q = vec![0; r.len()];
            while r.len() >= b.len() && !(r.len() == 1 && r[0] == 0) {
                let s = r.len() - b.len();
                q[s] = 1;
                let mut shifted = vec![0; s];
                shifted.extend_from_slice(&b);
                r = add(&r, &shifted);
            }
            (trim(q), r)
        }
        let (mut r0, mut r1) = (m.clone(), trim(a));
        let (mut s0, mut s1) = (vec![0], vec![1]);
        while !(r1.len() == 1 && r1[0] == 0) {
            let (q, r) = divrem(&r0, &r1);
            let s = add(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        divrem(&s0, &m).1
    }

    #[test]
    fn gf4_inverse_matches_euclid() {
        let f = gf4();
        let t = f.t();
        let inv = f.inv(t).unwrap();
        let oracle = euclid_inverse_gf2(vec![0, 1], vec![1, 1, 1]);
        assert_eq!(f.coeffs(inv), vec![oracle[0], *oracle.get(1).unwrap_or(&0)]);
        assert_eq!(inv, f.add(t, Fe::ONE));
    }

    #[test]
    fn gf4_t_squared() {
        let f = gf4();
        let t = f.t();
        assert_eq!(f.mul(t, t), f.add(t, Fe::ONE));
    }

    #[test]
    fn identities() {
        let f = Field::gf(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, Fe::ZERO), a);
            assert_eq!(f.mul(a, Fe::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            }
        }
        assert_eq!(f.inv(Fe::ZERO), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn prime_subfield_membership() {
        let f = gf4();
        assert!(f.in_prime_subfield(Fe::ONE));
        assert!(f.in_prime_subfield(Fe::ZERO));
        assert!(!f.in_prime_subfield(f.t()));
        let a = f.add(f.t(), Fe::ONE);
        assert!(f.in_prime_subfield(f.mul(f.from_int(2), a)));
    }

    #[test]
    fn subfield_generated_by() {
        let f = Field::gf(2, 6).unwrap();
        let g = f.t();
        let alpha = f.pow(g, 21);
        let beta = f.pow(g, 9);
        assert_eq!(f.degree_of(alpha), 2);
        assert_eq!(f.degree_of(beta), 3);
        // power-span enumeration oracle: GF(2)(alpha) = {0, 1, alpha, alpha^2}
        let mut span: Vec<Fe> = vec![Fe::ZERO];
        let mut x = Fe::ONE;
        for _ in 0..64 {
            if !span.contains(&x) {
                span.push(x);
            }
            x = f.mul(x, alpha);
        }
        let closed: std::collections::BTreeSet<Fe> =
            span.iter().flat_map(|&a| span.iter().map(move |&b| (a, b))).map(|(a, b)| f.add(a, b)).collect();
        assert_eq!(closed.len(), 4);
        assert!(!closed.contains(&beta));
        assert!(!f.in_subfield_generated_by(beta, alpha));
        assert!(f.in_subfield_generated_by(f.pow(alpha, 3), alpha));
        assert!(f.in_subfield_generated_by(f.add(alpha, Fe::ONE), alpha));
        // gen = 0 reduces to the prime field
        assert!(f.in_subfield_generated_by(Fe::ONE, Fe::ZERO));
        assert!(!f.in_subfield_generated_by(alpha, Fe::ZERO));
        for a in f.elements() {
            assert!(f.in_subfield_generated_by(a, g));
        }
    }

    #[test]
    fn default_moduli_are_irreducible_and_primitive() {
        for p in [2u32, 3, 5] {
            for k in 1..=6 {
                let spec = FieldSpec::new(p, k, None).unwrap();
                let f = Field::new(spec);
                let t = f.t();
                assert_eq!(f.order(t).unwrap(), f.size() - 1, "t not primitive for GF({p}^{k})");
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(FieldError::NotPrime(4)));
        assert!(matches!(FieldSpec::new(2, 2, Some(vec![1, 0, 1])), Err(FieldError::ReducibleModulus(_))));
        assert_eq!(FieldSpec::new(2, 2, Some(vec![1, 1, 0])), Err(FieldError::ModulusNotMonic));
        assert!(matches!(FieldSpec::new(2, 2, Some(vec![1, 1])), Err(FieldError::ModulusLength { .. })));
        assert!(matches!(FieldSpec::new(2, 30, None), Err(FieldError::TooLarge { .. })));
        // k = 1 accepts the trivial modulus
        let f = Field::new(FieldSpec::new(5, 1, Some(vec![0, 1])).unwrap());
        assert_eq!(f.t(), Fe::ZERO);
        assert_eq!(f.mul(f.from_int(2), f.from_int(3)), Fe::ONE);
    }

    #[test]
    fn frobenius_exhaustive_small_fields() {
        for (p, k) in [(2u32, 1usize), (2, 3), (2, 6), (3, 2), (5, 1)] {
            let f = Field::gf(p, k).unwrap();
            let elems: Vec<Fe> = f.elements().collect();
            for &a in &elems {
                for &b in &elems {
                    let lhs = f.pow(f.add(a, b), p as u64);
                    let rhs = f.add(f.pow(a, p as u64), f.pow(b, p as u64));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn formatting() {
        let f = Field::gf(3, 2).unwrap();
        assert_eq!(f.format(Fe::ZERO), "0");
        assert_eq!(f.format(f.from_int(2)), "2");
        assert_eq!(f.format(f.t()), "t");
        assert_eq!(f.format(f.add(f.t(), f.from_int(2))), "t + 2");
        assert!(f.needs_parens(f.add(f.t(), Fe::ONE)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field() -> Field {
            Field::gf(3, 5).unwrap()
        }

        proptest! {
            #[test]
            fn frobenius_is_additive(a in 0u32..243, b in 0u32..243) {
                let f = field();
                let (a, b) = (Fe(a), Fe(b));
                prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }

            #[test]
            fn order_divides_group_order(a in 1u32..243) {
                let f = field();
                let o = f.order(Fe(a)).unwrap();
                prop_assert_eq!((f.size() - 1) % o, 0);
                prop_assert_eq!(f.pow(Fe(a), o as u64), Fe::ONE);
            }

            #[test]
            fn distributive(a in 0u32..243, b in 0u32..243, c in 0u32..243) {
                let f = field();
                let (a, b, c) = (Fe(a), Fe(b), Fe(c));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }
}
