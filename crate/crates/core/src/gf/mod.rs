//! Arithmetic in GF(p^m).
//!
//! A field is described by a [`FieldSpec`]: the characteristic `p`, the
//! extension degree `m` and a monic irreducible modulus of degree `m` over
//! GF(p). Elements are plain `u32` indices in `[0, q)`; the base-`p` digits of
//! an index are the coefficients of the element's polynomial representative,
//! lowest degree first. Index 0 is zero and index 1 is one.
//!
//! The hot paths (matrix elimination, minor enumeration) work on raw indices
//! through the methods on [`FieldSpec`]. [`FieldElement`] is a thin checked
//! wrapper for callers that want operator syntax and field-mismatch detection.
//!
//! Construction is canonical: [`FieldSpec::new`] always picks the monic
//! irreducible modulus whose lower coefficients, read as a base-`p` number
//! (constant term as the least significant digit), are smallest. For GF(8)
//! that is `x^3 + x + 1`.

mod element;
pub mod poly;
pub mod primes;

pub use element::FieldElement;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest field order handled at desk scale.
pub const MAX_ORDER: u64 = 1 << 20;

/// Largest field for which a full addition table is cached.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the supported maximum {max}")]
    TooLarge { p: u32, m: u32, max: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    BadModulus(Vec<u32>),
    #[error("element {value} is outside GF({q})")]
    OutOfRange { value: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields: GF({left}) and GF({right})")]
    FieldMismatch { left: u32, right: u32 },
}

struct Tables {
    /// `exp[i] = g^i` for a fixed primitive element `g`, stored twice over so
    /// that `exp[log a + log b]` never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// Only built for proper extensions; prime fields use direct modular arithmetic.
    tables: Option<Tables>,
}

/// A finite field GF(p^m) with a fixed modulus. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl FieldSpec {
    /// Builds GF(p^m) with the canonical (smallest-index) irreducible modulus.
    pub fn new(p: u32, m: u32) -> Result<Self, GfError> {
        check_order(p, m)?;
        let modulus = canonical_modulus(p, m);
        Ok(Self::build(p, m, modulus))
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self, GfError> {
        let (p, m) = primes::prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Self::new(p, m)
    }

    /// Builds GF(p^m) with an explicit modulus (ascending coefficients,
    /// length `m + 1`, monic, irreducible).
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, GfError> {
        check_order(p, m)?;
        let valid = modulus.len() == m as usize + 1
            && modulus.iter().all(|&c| c < p)
            && modulus[m as usize] == 1
            && (m == 1 || poly::is_irreducible_mod_p(&modulus, p));
        if !valid {
            return Err(GfError::BadModulus(modulus));
        }
        Ok(Self::build(p, m, modulus))
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(m);
        let tables = (m > 1).then(|| build_tables(p, m, q, &modulus));
        FieldSpec {
            inner: Arc::new(Inner {
                p,
                m,
                q,
                modulus,
                tables,
            }),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field order `p^m`.
    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    #[inline]
    pub fn contains(&self, a: u32) -> bool {
        a < self.inner.q
    }

    /// All elements in index order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.q
    }

    /// Wraps an index as a checked element.
    pub fn element(&self, value: u32) -> Result<FieldElement<'_>, GfError> {
        FieldElement::new(self, value)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q() && b < self.q());
        match &self.inner.tables {
            None => {
                let s = a + b;
                if s >= self.inner.p {
                    s - self.inner.p
                } else {
                    s
                }
            }
            Some(_) if self.inner.p == 2 => a ^ b,
            Some(t) => match &t.add {
                Some(table) => table[(a * self.inner.q + b) as usize],
                None => digitwise_add(self.inner.p, a, b),
            },
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.inner.tables {
            None => {
                if a == 0 {
                    0
                } else {
                    self.inner.p - a
                }
            }
            Some(t) => t.neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q() && b < self.q());
        match &self.inner.tables {
            None => ((a as u64 * b as u64) % self.inner.p as u64) as u32,
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.inner.tables {
            None => inv_mod(a, self.inner.p),
            Some(t) => {
                let order = self.inner.q - 1;
                t.exp[((order - t.log[a as usize]) % order) as usize]
            }
        })
    }

    /// Multiplicative inverse.
    ///
    /// Panics on zero; use [`FieldSpec::checked_inv`] when the argument may vanish.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Base-`p` digits of an element index, lowest degree first.
    pub fn to_digits(&self, a: u32) -> Vec<u32> {
        digits(a, self.inner.p, self.inner.m)
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.inner.p + d)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        match &self.inner.tables {
            Some(t) => t.exp[1],
            None => find_primitive(self.inner.q, |a, b| self.mul(a, b)),
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            write!(f, "GF({})", self.q())
        } else {
            write!(f, "GF({}^{}, modulus={:?})", self.p(), self.m(), self.modulus())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldSpecRepr {
            p: self.p(),
            m: self.m(),
            modulus: self.modulus().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FieldSpecRepr::deserialize(deserializer)?;
        FieldSpec::with_modulus(repr.p, repr.m, repr.modulus).map_err(serde::de::Error::custom)
    }
}

fn check_order(p: u32, m: u32) -> Result<(), GfError> {
    if !primes::is_prime(p as u64) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    match (p as u64).checked_pow(m) {
        Some(q) if q <= MAX_ORDER => Ok(()),
        _ => Err(GfError::TooLarge {
            p,
            m,
            max: MAX_ORDER,
        }),
    }
}

fn digits(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(a % p);
        a /= p;
    }
    out
}

fn digitwise_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn digitwise_neg(p: u32, mut a: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

/// Smallest monic irreducible of degree `m` under the index ordering.
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.pow(m);
    (0..count)
        .map(|v| {
            let mut coeffs = digits(v, p, m);
            coeffs.push(1);
            coeffs
        })
        .find(|c| poly::is_irreducible_mod_p(c, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// Multiplies two element indices as polynomials modulo `modulus`. Slow; only
/// used while building the log tables.
fn slow_mul(p: u32, m: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let m = m as usize;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (m..prod.len()).rev() {
        let lead = prod[deg];
        if lead == 0 {
            continue;
        }
        // x^m = -(modulus[0] + ... + modulus[m-1] x^{m-1})
        for (i, &c) in modulus[..m].iter().enumerate() {
            let sub = lead * c as u64 % p as u64;
            prod[deg - m + i] = (prod[deg - m + i] + p as u64 - sub) % p as u64;
        }
        prod[deg] = 0;
    }
    prod[..m]
        .iter()
        .rev()
        .fold(0, |acc, &d| acc * p + d as u32)
}

fn find_primitive(q: u32, mul: impl Fn(u32, u32) -> u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let order = (q - 1) as u64;
    let factors = primes::prime_factors(order);
    let pow = |a: u32, mut e: u64| {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow(g, order / f) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> Tables {
    let g = find_primitive(q, |a, b| slow_mul(p, m, modulus, a, b));
    let order = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * order];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..order {
        exp[i] = x;
        log[x as usize] = i as u32;
        x = slow_mul(p, m, modulus, x, g);
    }
    for i in order..2 * order {
        exp[i] = exp[i - order];
    }
    let neg = (0..q).map(|a| digitwise_neg(p, a)).collect();
    let add = (p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
        let mut table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                table[(a * q + b) as usize] = digitwise_add(p, a, b);
            }
        }
        table
    });
    Tables { exp, log, neg, add }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every monic cubic over GF(2), irreducibility decided by root search.
    fn irreducible_cubics_gf2() -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for v in 0..8u32 {
            let c = vec![v & 1, (v >> 1) & 1, (v >> 2) & 1, 1];
            let has_root = (0..2u32).any(|x| {
                c.iter()
                    .enumerate()
                    .map(|(i, &ci)| ci * x.pow(i as u32))
                    .sum::<u32>()
                    % 2
                    == 0
            });
            if !has_root {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn prime_field_basics() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(FieldSpec::new(2, 1).unwrap().elements().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
        for a in f.elements() {
            for b in f.elements() {
                assert!(f.contains(f.mul(a, b)));
            }
        }
    }

    #[test]
    fn gf8_modulus_is_smallest_index() {
        let cubics = irreducible_cubics_gf2();
        assert_eq!(cubics, vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]]);
        let f = FieldSpec::new(2, 3).unwrap();
        assert_eq!(f.modulus(), cubics[0].as_slice());
    }

    #[test]
    fn deterministic_construction() {
        for (p, m) in [(3, 2), (5, 2), (2, 4), (3, 3)] {
            let a = FieldSpec::new(p, m).unwrap();
            let b = FieldSpec::new(p, m).unwrap();
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(FieldSpec::new(2, 21), Err(GfError::TooLarge { .. })));
        assert!(FieldSpec::with_modulus(2, 2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(2, 2, vec![1, 1, 1]).is_ok());
        assert_eq!(FieldSpec::of_order(6).unwrap_err(), GfError::NotPrimePower(6));
    }

    #[test]
    fn fermat_and_inverses() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64] {
            let f = FieldSpec::of_order(q).unwrap();
            for a in 1..f.q() {
                assert_eq!(f.pow(a, q - 1), 1, "GF({q}) a={a}");
                let ai = f.inv(a);
                assert_eq!(f.mul(a, ai), 1);
                assert_eq!(f.inv(ai), a);
            }
            assert_eq!(f.checked_inv(0), None);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::of_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FieldSpec::of_order(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, q - 1, "GF({q})");
        }
    }

    #[test]
    fn large_extension_field_without_add_table() {
        let f = FieldSpec::new(3, 6).unwrap();
        assert_eq!(f.q(), 729);
        let a = 400;
        let b = 517;
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.mul(f.div(a, b), b), a);
    }

    #[test]
    fn serde_round_trip() {
        let f = FieldSpec::new(3, 2).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"p":3,"m":2,"modulus":[1,0,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
