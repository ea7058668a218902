//! Arithmetic in GF(p^m) for prime powers up to 4096.
//!
//! An element is encoded as an integer in `[0, q)`: the value `sum(c_i p^i)`
//! stands for the polynomial-basis element `sum(c_i a^i)`, where `a` is a
//! root of the canonical irreducible polynomial for `(p, m)`. The canonical
//! polynomial is the monic irreducible of degree `m` whose non-leading
//! coefficient word, read as an integer base `p`, is smallest. This keeps
//! every encoding reproducible across runs and machines.
//!
//! Multiplication, inversion and powers go through log/antilog tables over a
//! fixed primitive element. Tables are built once per `(p, m)` and shared
//! behind an `Arc`; fields are immutable afterwards and safe to send across
//! threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Hard limit on the field order: element encodings are 16-bit and the
/// log/antilog tables are sized for this.
pub const MAX_FIELD_ORDER: u32 = 4096;

/// An element of some GF(q), encoded as an integer in `[0, q)`.
///
/// `0` is the additive identity and `1` the multiplicative identity in every
/// field. The encoding is only meaningful relative to a [`Field`]; mixing
/// elements of different fields is a caller bug.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete GF(p^m) with its canonical irreducible polynomial and
/// multiplication tables.
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients of the canonical monic irreducible, ascending degree,
    /// length m+1. For m = 1 this is `x` itself and is never consulted.
    irr: Vec<u16>,
    /// exp[i] = g^i for a primitive g, doubled so mul never reduces mod q-1.
    exp: Vec<u16>,
    /// log[v] for v in [1, q).
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for Field {}

type Registry = Mutex<HashMap<(u32, u32), Arc<Field>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The canonical GF(p^m). Identical inputs always produce the same
    /// tables and the same irreducible polynomial.
    pub fn new(p: u32, m: u32) -> Result<Arc<Field>> {
        if let Some(f) = registry().lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let built = Arc::new(Field::build(p, m)?);
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry((p, m)).or_insert(built).clone())
    }

    /// Resolve a prime power q to its canonical field.
    pub fn from_order(q: u32) -> Result<Arc<Field>> {
        if q < 2 {
            return Err(Error::NotPrimePower(q as u64));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut m = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q as u64));
        }
        Field::new(p, m)
    }

    fn build(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParameter(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = checked_pow(p, m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::CapExceeded {
                what: "field order",
                needed: (p as u128).pow(m),
                cap: MAX_FIELD_ORDER as u128,
            })?;
        let irr = canonical_irreducible(p, m);
        let (exp, log) = build_tables(p, m, q, &irr);
        Ok(Field {
            p,
            m,
            q,
            irr: irr.iter().map(|&c| c as u16).collect(),
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Canonical irreducible polynomial, coefficients ascending, length m+1.
    pub fn irreducible(&self) -> &[u16] {
        &self.irr
    }

    /// The element with the given encoding. Panics if `v >= q`.
    #[inline]
    pub fn elem(&self, v: u32) -> FieldElem {
        assert!(v < self.q, "encoding {} out of range for GF({})", v, self.q);
        FieldElem(v as u16)
    }

    /// All q elements in increasing encoding order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q as u16).map(FieldElem)
    }

    pub fn same_field(&self, other: &Field) -> bool {
        self.p == other.p && self.m == other.m
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.m == 1 {
            return FieldElem(((a.0 as u32 + b.0 as u32) % self.p) as u16);
        }
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((x + y) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0 as u32;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out as u16)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let idx = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElem(self.exp[idx])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { q: self.q });
        }
        let idx = (self.q as usize - 1) - self.log[a.0 as usize] as usize;
        Ok(FieldElem(self.exp[idx]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let period = (self.q - 1) as u128;
        let idx = (self.log[a.0 as usize] as u128 * e as u128) % period;
        FieldElem(self.exp[idx as usize])
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u32, m: u32) -> Option<u32> {
    let mut acc = 1u64;
    for _ in 0..m {
        acc = acc.checked_mul(p as u64)?;
        if acc > u32::MAX as u64 {
            return None;
        }
    }
    Some(acc as u32)
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The monic irreducible of degree m over GF(p) with the smallest
/// non-leading coefficient word (read as an integer base p). Coefficients
/// ascending, length m+1, leading coefficient 1.
fn canonical_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    if m == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(m as u32);
    for word in 0..total {
        let mut f = decode_base(word, p, m);
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of degree {m} exists over GF({p})")
}

fn decode_base(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut() {
        *slot = (v % p as u64) as u32;
        v /= p as u64;
    }
    out
}

fn poly_degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of f mod g over GF(p); g must be monic.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let dg = poly_degree(g).expect("nonzero divisor");
    let mut rem = f.to_vec();
    let mut i = rem.len();
    while i > dg {
        i -= 1;
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for j in 0..dg {
            let sub = (c * g[j]) % p;
            rem[i - dg + j] = (rem[i - dg + j] + p - sub) % p;
        }
    }
    rem.truncate(dg);
    rem
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = match poly_degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if f[0] == 0 && deg > 1 {
        return false; // divisible by x
    }
    for d in 1..=deg / 2 {
        let total = (p as u64).pow(d as u32);
        for word in 0..total {
            let mut g = decode_base(word, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Table-free multiplication used only while the tables are being built.
fn mul_slow(a: u32, b: u32, p: u32, m: usize, irr: &[u32]) -> u32 {
    if m == 1 {
        return (a * b) % p;
    }
    let da = decode_base(a as u64, p, m);
    let db = decode_base(b as u64, p, m);
    let mut prod = vec![0u32; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce: x^i = x^{i-m} * (-irr_0 - ... - irr_{m-1} x^{m-1}) for i >= m
    for i in (m..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..m {
            let sub = (c * irr[j]) % p;
            prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
        }
    }
    let mut out = 0u32;
    for i in (0..m).rev() {
        out = out * p + prod[i];
    }
    out
}

fn pow_slow(a: u32, mut e: u64, p: u32, m: usize, irr: &[u32]) -> u32 {
    let mut base = a;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(acc, base, p, m, irr);
        }
        base = mul_slow(base, base, p, m, irr);
        e >>= 1;
    }
    acc
}

fn build_tables(p: u32, m: u32, q: u32, irr: &[u32]) -> (Vec<u16>, Vec<u16>) {
    let m = m as usize;
    let order = (q - 1) as u64;
    let factors = distinct_prime_factors(q - 1);
    let gen = (1..q)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| pow_slow(g, order / f as u64, p, m, irr) != 1)
        })
        .expect("GF(q)* is cyclic");

    let mut exp = vec![0u16; 2 * (q as usize - 1)];
    let mut log = vec![0u16; q as usize];
    let mut acc = 1u32;
    for (i, slot) in exp.iter_mut().take(q as usize - 1).enumerate() {
        *slot = acc as u16;
        log[acc as usize] = i as u16;
        acc = mul_slow(acc, gen, p, m, irr);
    }
    debug_assert_eq!(acc, 1, "primitive element order must be q-1");
    for i in (q as usize - 1)..exp.len() {
        exp[i] = exp[i - (q as usize - 1)];
    }
    (exp, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_irreducibles_match_sieve() {
        assert_eq!(Field::new(2, 1).unwrap().irreducible(), &[0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().irreducible(), &[1, 1, 1]); // x^2+x+1
        assert_eq!(Field::new(3, 2).unwrap().irreducible(), &[1, 0, 1]); // x^2+1

        // independent re-derivation for GF(9): a monic quadratic over GF(3)
        // is irreducible iff it has no root, and the smallest coefficient
        // word passing that test must match the library's choice
        let mut first = None;
        for word in 0..9u64 {
            let mut f = decode_base(word, 3, 2);
            f.push(1);
            let has_root = (0..3).any(|r| (f[0] + f[1] * r + f[2] * r * r).is_multiple_of(3));
            if !has_root {
                first = Some(word);
                break;
            }
        }
        assert_eq!(first, Some(1)); // coefficients (1, 0): x^2 + 1
        let lib = Field::new(3, 2).unwrap();
        let word = lib.irreducible()[0] as u64 + 3 * lib.irreducible()[1] as u64;
        assert_eq!(word, first.unwrap());
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.add(FieldElem::ONE, FieldElem::ONE), FieldElem::ZERO);

        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.mul(f3.elem(2), f3.elem(2)), FieldElem::ONE);

        let f4 = Field::new(2, 2).unwrap();
        // alpha * alpha = alpha + 1 under x^2+x+1
        assert_eq!(f4.mul(f4.elem(2), f4.elem(2)), f4.elem(3));

        let f9 = Field::new(3, 2).unwrap();
        // alpha^2 = -1 = 2 under x^2+1
        assert_eq!(f9.mul(f9.elem(3), f9.elem(3)), f9.elem(2));
    }

    #[test]
    fn enumerate_all_elements() {
        let f4 = Field::new(2, 2).unwrap();
        let vals: Vec<u32> = f4.elements().map(|e| e.value()).collect();
        assert_eq!(vals, vec![0, 1, 2, 3]);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.elements().count(), 3);
        assert!(f3.elements().next().unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(6, 2), Err(Error::NotPrime(6))));
        assert!(matches!(Field::new(2, 13), Err(Error::CapExceeded { .. })));
        assert!(Field::from_order(12).is_err());
        assert!(Field::from_order(1).is_err());
        assert_eq!(Field::from_order(49).unwrap().p(), 7);
        assert_eq!(Field::from_order(49).unwrap().extension_degree(), 2);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f5 = Field::new(5, 1).unwrap();
        assert!(f5.inv(FieldElem::ZERO).is_err());
        assert!(f5.div(f5.elem(3), FieldElem::ZERO).is_err());
        assert_eq!(f5.div(f5.elem(3), f5.elem(4)).unwrap(), f5.elem(2)); // 3 * 4^{-1} = 3 * 4 = 12 = 2
    }

    #[test]
    fn pow_conventions() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.pow(FieldElem::ZERO, 0), FieldElem::ONE);
        assert_eq!(f7.pow(FieldElem::ZERO, 5), FieldElem::ZERO);
        assert_eq!(f7.pow(f7.elem(3), 6), FieldElem::ONE); // Fermat
        assert_eq!(f7.pow(f7.elem(3), 2), f7.elem(2));
    }

    /// Field axioms by exhaustion for every order up to 16.
    #[test]
    fn axioms_by_exhaustion() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::from_order(q).unwrap();
            let elems: Vec<FieldElem> = f.elements().collect();
            for &a in &elems {
                assert_eq!(f.add(a, FieldElem::ZERO), a);
                assert_eq!(f.mul(a, FieldElem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn registry_returns_shared_instances() {
        let a = Field::new(3, 2).unwrap();
        let b = Field::new(3, 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
