//! The base field `F_q = F_{p^e}` with elements encoded as integer codes.
//!
//! An element of `F_{p^e}` is a residue class of a polynomial of degree `< e`
//! over `F_p`; its code is the little-endian base-`p` integer formed by the
//! coefficients, so codes run over `0..q` and `0`, `1` are the additive and
//! multiplicative identities.

use crate::error::{LabError, Result};
use crate::numtheory::{is_prime, mul_mod, pow_mod};
use crate::poly;
use std::fmt;
use std::sync::Arc;

/// Fields up to this size with `e > 1` get precomputed operation tables.
const TABLE_LIMIT: u64 = 256;

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

struct FieldInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus over `F_p`, little-endian, length `e + 1`; empty for prime fields.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field `F_q`. Cheap to clone; clones share the same context.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldInner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())?;
        if self.e() > 1 {
            write!(f, "[mod {:?}]", self.0.modulus)?;
        }
        Ok(())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p(), self.e())
    }
}

/// Builds `F_{p^e}` with the canonical modulus: the least monic irreducible
/// polynomial of degree `e` over `F_p` in code order.
pub fn build_field(p: u64, e: u32) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(LabError::NotPrime(p));
    }
    if e == 0 {
        return Err(LabError::BadArgs("extension degree must be at least 1".into()));
    }
    match p.checked_pow(e) {
        Some(q) if q < 1 << 63 => {}
        _ => return Err(LabError::SizeExceeded(format!("{p}^{e} >= 2^63"))),
    }
    let prime = FieldCtx::prime(p)?;
    if e == 1 {
        return Ok(prime);
    }
    let modulus = poly::least_irreducible(&prime, e as usize, false)?
        .ok_or(LabError::NotIrreducible)?;
    FieldCtx::with_modulus(p, modulus.coeffs().to_vec())
}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(LabError::NotPrime(p));
        }
        if p >= 1 << 63 {
            return Err(LabError::SizeExceeded(format!("{p} >= 2^63")));
        }
        Ok(FieldCtx(Arc::new(FieldInner { p, e: 1, q: p, modulus: Vec::new(), tables: None })))
    }

    /// `F_p[x]/(modulus)`. The modulus must be monic and irreducible over `F_p`.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let prime = FieldCtx::prime(p)?;
        let f = poly::Poly::new(&prime, modulus.clone())?;
        let e = match f.degree() {
            Some(d) if d >= 1 => d as u32,
            _ => return Err(LabError::NotIrreducible),
        };
        if !f.is_monic() {
            return Err(LabError::NotMonic);
        }
        if e == 1 {
            return Ok(prime);
        }
        if !poly::is_irreducible(&f)? {
            return Err(LabError::NotIrreducible);
        }
        let q = match p.checked_pow(e) {
            Some(q) if q < 1 << 63 => q,
            _ => return Err(LabError::SizeExceeded(format!("{p}^{e} >= 2^63"))),
        };
        let mut inner = FieldInner { p, e, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }
    /// Modulus coefficients over `F_p`; empty for a prime field.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn contains(&self, a: u64) -> bool {
        a < self.0.q
    }

    pub fn check(&self, a: u64) -> Result<u64> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(LabError::ContextMismatch)
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a + b;
            if s >= inner.p { s - inner.p } else { s }
        } else if let Some(t) = &inner.tables {
            t.add[(a * inner.q + b) as usize] as u64
        } else {
            digitwise(inner, a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let inner = &*self.0;
        if inner.e == 1 {
            if a == 0 { 0 } else { inner.p - a }
        } else {
            digitwise(inner, 0, a, |x, y, p| (x + p - y) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if inner.e == 1 {
            if a >= b { a - b } else { a + inner.p - b }
        } else if inner.p == 2 {
            a ^ b
        } else {
            digitwise(inner, a, b, |x, y, p| (x + p - y) % p)
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if inner.e == 1 {
            if inner.p == 2 { a & b } else { mul_mod(a, b, inner.p) }
        } else if let Some(t) = &inner.tables {
            t.mul[(a * inner.q + b) as usize] as u64
        } else {
            ext_mul(inner, a, b)
        }
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(LabError::DivisionByZero);
        }
        let inner = &*self.0;
        Ok(if inner.e == 1 {
            pow_mod(a, inner.p - 2, inner.p)
        } else if let Some(t) = &inner.tables {
            t.inv[a as usize] as u64
        } else {
            self.pow(a, inner.q - 2)
        })
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `a^(p^r)`.
    pub fn frobenius(&self, a: u64, r: u32) -> u64 {
        let mut x = a;
        for _ in 0..(r % self.e()) {
            x = self.pow(x, self.p());
        }
        x
    }

    /// Base-`p` digits of a code, little-endian, exactly `e` of them.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.p();
        (0..self.e())
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p() + d % self.p())
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.q()
    }

    /// Nonzero elements.
    pub fn units(&self) -> std::ops::Range<u64> {
        1..self.q()
    }
}

fn digitwise(inner: &FieldInner, a: u64, b: u64, op: impl Fn(u64, u64, u64) -> u64) -> u64 {
    let p = inner.p;
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..inner.e {
        out += op(a % p, b % p, p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn ext_mul(inner: &FieldInner, a: u64, b: u64) -> u64 {
    let p = inner.p;
    let e = inner.e as usize;
    let split = |mut x: u64| -> Vec<u64> {
        (0..e)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let (da, db) = (split(a), split(b));
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    let m = &inner.modulus;
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate().take(e) {
            let t = mul_mod(c, mi, p);
            let idx = k - e + i;
            prod[idx] = (prod[idx] + p - t) % p;
        }
        prod[k] = 0;
    }
    prod[..e].iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn build_tables(inner: &FieldInner) -> Tables {
    let q = inner.q as usize;
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut inv = vec![0u8; q];
    for a in 0..q as u64 {
        for b in 0..q as u64 {
            let i = (a as usize) * q + b as usize;
            add[i] = digitwise(inner, a, b, |x, y, p| (x + y) % p) as u8;
            let m = ext_mul(inner, a, b);
            mul[i] = m as u8;
            if m == 1 {
                inv[a as usize] = b as u8;
            }
        }
    }
    Tables { add, mul, inv }
}
