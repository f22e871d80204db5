//! Dense univariate polynomials over a [`FieldCtx`].
//!
//! Coefficients are stored little-endian with no trailing zeros; the zero
//! polynomial has no coefficients and no degree ([`Poly::degree`] returns
//! `None`). Monic polynomials of degree `k` are addressed by the rank of
//! their lower coefficients read as a base-`q` integer, which is also the
//! order every scan in this module follows.

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::FieldCtx;
use crate::numtheory::{big_pow, order_by_exponent_dropping, prime_divisors};
use crate::par;
use crate::tower::{FieldElement, TowerCtx};
use num_bigint::BigUint;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<u64>,
}

/// Exact closed form or exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleFilter {
    All,
    PrimitiveOnly,
    IrreducibleNonprimitive,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &FieldCtx, coeffs: Vec<u64>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: &FieldCtx, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldCtx) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &FieldCtx, c: u64) -> Self {
        Self::from_raw(field, vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: &FieldCtx) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    /// Polynomial whose coefficients are the base-`q` digits of `code`.
    pub fn from_code(field: &FieldCtx, mut code: u64) -> Self {
        let q = field.q();
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push(code % q);
            code /= q;
        }
        Poly { field: field.clone(), coeffs }
    }

    /// The monic polynomial of degree `k` with lower coefficients given by the
    /// base-`q` digits of `rank`.
    pub fn monic_from_rank(field: &FieldCtx, k: usize, mut rank: u64) -> Self {
        let q = field.q();
        let mut coeffs = Vec::with_capacity(k + 1);
        for _ in 0..k {
            coeffs.push(rank % q);
            rank /= q;
        }
        coeffs.push(1);
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(LabError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_raw(f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_raw(f, c)
    }

    pub fn neg(&self) -> Poly {
        let c = self.coeffs.iter().map(|&a| self.field.neg(a)).collect();
        Self::from_raw(&self.field, c)
    }

    pub fn scale(&self, s: u64) -> Poly {
        let c = self.coeffs.iter().map(|&a| self.field.mul(a, s)).collect();
        Self::from_raw(&self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_raw(f, out)
    }

    /// Quotient and remainder; the remainder has degree below the divisor's.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(LabError::DivisionByZero)?;
        let f = &self.field;
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], inv_lead);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Scalar multiple with leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other).rem(modulus)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Literal form: comma-separated coefficient codes, constant term first.
    pub fn to_literal(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Monic greatest common divisor by Euclid's algorithm.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(LabError::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// `x^(q^k) mod f` for `k = 0..=kmax`, built by repeated `q`-th powering.
fn frobenius_powers_of_x(f: &Poly, kmax: usize) -> Result<Vec<Poly>> {
    let q = f.field.q();
    let mut out = Vec::with_capacity(kmax + 1);
    let mut h = Poly::x(&f.field).rem(f)?;
    out.push(h.clone());
    for _ in 0..kmax {
        h = h.pow_mod(q, f)?;
        out.push(h.clone());
    }
    Ok(out)
}

/// Rabin's test: `f` of degree `k` is irreducible iff `x^(q^k) = x mod f` and
/// `gcd(x^(q^(k/r)) - x, f) = 1` for every prime `r | k`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let k = match f.degree() {
        Some(k) if k >= 1 => k,
        _ => return Err(LabError::DegreeZero),
    };
    if k == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let x = Poly::x(&f.field);
    let pows = frobenius_powers_of_x(&f, k)?;
    if pows[k] != x.rem(&f)? {
        return Ok(false);
    }
    for r in prime_divisors(k as u64, u64::MAX)? {
        let h = pows[k / r as usize].sub(&x);
        if !gcd(&h, &f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `q^k - 1` for a degree-`k` polynomial, if it fits below `2^63`.
fn group_exponent(field: &FieldCtx, k: usize) -> Result<u64> {
    match field.q().checked_pow(k as u32) {
        Some(v) if v < 1 << 63 => Ok(v - 1),
        _ => Err(LabError::SizeExceeded(format!("{}^{k} >= 2^63", field.q()))),
    }
}

/// Irreducible with `x mod f` of multiplicative order `q^k - 1`.
pub fn is_primitive(f: &Poly, cfg: &LabConfig) -> Result<bool> {
    if !is_irreducible(f)? {
        return Ok(false);
    }
    let f = f.monic();
    if f.coeff(0) == 0 {
        // f = x: the class of x is zero
        return Ok(false);
    }
    let k = f.degree().unwrap();
    let n = group_exponent(&f.field, k)?;
    let x = Poly::x(&f.field);
    let mut err = None;
    let order = order_by_exponent_dropping(n, cfg.factor_bound, |e| match x.pow_mod(e, &f) {
        Ok(p) => p.is_one(),
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(order == n)
}

/// Number of monic polynomials of degree `k`, as a scan size.
fn monic_count(field: &FieldCtx, k: usize, cfg: &LabConfig) -> Result<u64> {
    cfg.check_scan(&big_pow(field.q(), k as u64))
}

/// The least monic irreducible (or primitive) polynomial of degree `k` in
/// rank order, or `None` if none exists among the candidates.
pub fn least_irreducible(field: &FieldCtx, k: usize, primitive: bool) -> Result<Option<Poly>> {
    let cfg = LabConfig::default();
    let total = field.q().checked_pow(k as u32).unwrap_or(u64::MAX);
    for rank in 0..total {
        let f = Poly::monic_from_rank(field, k, rank);
        let ok = if primitive { is_primitive(&f, &cfg)? } else { is_irreducible(&f)? };
        if ok {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// All monic degree-`k` polynomials passing `filter`, in rank order.
pub fn find_irreducibles(field: &FieldCtx, k: usize, filter: IrreducibleFilter, cfg: &LabConfig) -> Result<Vec<Poly>> {
    if k == 0 {
        return Err(LabError::DegreeZero);
    }
    let total = monic_count(field, k, cfg)?;
    let found = par::collect_chunks(cfg.exec, total, |range| {
        range
            .filter_map(|rank| {
                let f = Poly::monic_from_rank(field, k, rank);
                let keep = match filter {
                    IrreducibleFilter::All => is_irreducible(&f),
                    IrreducibleFilter::PrimitiveOnly => is_primitive(&f, cfg),
                    IrreducibleFilter::IrreducibleNonprimitive => {
                        is_irreducible(&f).and_then(|irr| Ok(irr && !is_primitive(&f, cfg)?))
                    }
                };
                match keep {
                    Ok(true) => Some(Ok(f)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .collect()
    });
    found.into_iter().collect()
}

/// Distinct monic irreducible factors with multiplicities, found by trial
/// division with monic candidates of increasing degree.
pub fn factor(f: &Poly, cfg: &LabConfig) -> Result<Vec<(Poly, u32)>> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(LabError::DegreeZero),
    };
    let field = f.field.clone();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut scanned = 0u64;
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 1 {
        if 2 * k > rest.degree().unwrap() {
            out.push((rest.clone(), 1));
            break;
        }
        let total = field
            .q()
            .checked_pow(k as u32)
            .filter(|&t| t <= cfg.scan_bound.saturating_sub(scanned))
            .ok_or_else(|| LabError::FactorSearchExceeded(format!("degree {deg} over {:?}", field)))?;
        scanned += total;
        for rank in 0..total {
            let g = Poly::monic_from_rank(&field, k, rank);
            let mut mult = 0;
            loop {
                let (quo, r) = rest.div_rem(&g)?;
                if !r.is_zero() {
                    break;
                }
                rest = quo;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Number of polynomials of degree below `deg f` that are coprime to `f`.
///
/// The closed form is `q^k * prod (1 - q^(-k_i))` over the distinct irreducible
/// factor degrees `k_i`, evaluated as `q^(k - sum k_i) * prod (q^(k_i) - 1)`.
pub fn q_totient(f: &Poly, method: Method, cfg: &LabConfig) -> Result<BigUint> {
    let k = match f.degree() {
        Some(k) if k >= 1 => k,
        _ => return Err(LabError::DegreeZero),
    };
    if !f.is_monic() {
        return Err(LabError::NotMonic);
    }
    let q = f.field.q();
    match method {
        Method::Closed => {
            let factors = factor(f, cfg)?;
            let sum: usize = factors.iter().map(|(g, _)| g.degree().unwrap()).sum();
            let mut acc = big_pow(q, (k - sum) as u64);
            for (g, _) in &factors {
                acc *= big_pow(q, g.degree().unwrap() as u64) - 1u32;
            }
            Ok(acc)
        }
        Method::Brute => {
            let total = cfg.check_scan(&big_pow(q, k as u64))?;
            let field = f.field.clone();
            let n = par::count(cfg.exec, total, |code| {
                code != 0 && gcd(&Poly::from_code(&field, code), f).map(|g| g.is_one()).unwrap_or(false)
            });
            Ok(BigUint::from(n))
        }
    }
}

/// `nu(N1, N2)`: ordered pairs `(f1, f2)` of coprime nonzero polynomials with
/// `deg f1 < N1`, `f2` monic and `deg f2 < N2`.
pub fn coprime_pair_count(n1: u32, n2: u32, field: &FieldCtx, method: Method, cfg: &LabConfig) -> Result<BigUint> {
    if n2 == 0 {
        return Err(LabError::BadArgs("N2 must be at least 1".into()));
    }
    if n1 < n2 {
        return Err(LabError::BoundOrder { n1, n2 });
    }
    let q = field.q();
    match method {
        Method::Closed => Ok(big_pow(q, (n1 + n2 - 1) as u64) - 1u32),
        Method::Brute => {
            let firsts = cfg.check_scan(&(big_pow(q, n1 as u64) - 1u32))?;
            let monics: Vec<Poly> = (0..n2 as usize)
                .flat_map(|d| (0..q.pow(d as u32)).map(move |r| (d, r)))
                .map(|(d, r)| Poly::monic_from_rank(field, d, r))
                .collect();
            cfg.check_scan(&(BigUint::from(firsts) * monics.len()))?;
            let n = par::sum_chunks(cfg.exec, firsts, |range| {
                let mut c = 0;
                for code in range {
                    let f1 = Poly::from_code(field, code + 1);
                    c += monics.iter().filter(|f2| gcd(&f1, f2).map(|g| g.is_one()).unwrap_or(false)).count() as u64;
                }
                c
            });
            Ok(BigUint::from(n))
        }
    }
}

/// Checks `(q^N1 - 1)(q^N2 - 1)/(q - 1) = sum_{0<=d<N2} q^d nu(N1-d, N2-d)`
/// with `nu` taken from the closed form.
pub fn coprime_recursion_holds(q: u64, n1: u32, n2: u32) -> bool {
    let lhs = (big_pow(q, n1 as u64) - 1u32) * (big_pow(q, n2 as u64) - 1u32) / (q - 1);
    let rhs: BigUint = (0..n2)
        .map(|d| big_pow(q, d as u64) * (big_pow(q, (n1 - d + n2 - d - 1) as u64) - 1u32))
        .sum();
    lhs == rhs
}

/// Monic least-degree polynomial over the base field annihilating `beta`,
/// read off from the first linear dependency among `1, beta, beta^2, ...`.
pub fn minimal_polynomial(tower: &TowerCtx, beta: &FieldElement) -> Result<Poly> {
    tower.check(beta)?;
    let base = tower.base();
    let d = tower.degree();
    // Each row is coords(beta^i) augmented with a unit vector tracking the combination.
    let width = d + d + 1;
    let mut reduced: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot column, row)
    let mut power = tower.one();
    for i in 0..=d {
        let mut row = vec![0u64; width];
        row[..d].copy_from_slice(power.coords());
        row[d + i] = 1;
        for (pc, prow) in &reduced {
            let c = row[*pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(prow) {
                    *x = base.sub(*x, base.mul(c, y));
                }
            }
        }
        match (0..d).find(|&c| row[c] != 0) {
            Some(pc) => {
                let inv = base.inv(row[pc])?;
                for x in row.iter_mut() {
                    *x = base.mul(*x, inv);
                }
                reduced.push((pc, row));
            }
            None => {
                let combo = row[d..d + i + 1].to_vec();
                return Ok(Poly::from_raw(base, combo).monic());
            }
        }
        power = tower.mul(&power, beta)?;
    }
    unreachable!("d + 1 vectors in a d-dimensional space are dependent")
}

/// Order of a nonzero polynomial in `(F_q[x]/f)^*` when `f` is irreducible.
pub fn order_mod_irreducible(g: &Poly, f: &Poly, cfg: &LabConfig) -> Result<u64> {
    let k = f.degree().ok_or(LabError::DegreeZero)?;
    let n = group_exponent(&f.field, k)?;
    let g = g.rem(f)?;
    if g.is_zero() {
        return Err(LabError::ZeroElement);
    }
    let mut err = None;
    let order = order_by_exponent_dropping(n, cfg.factor_bound, |e| match g.pow_mod(e, f) {
        Ok(p) => p.is_one(),
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(order),
    }
}

/// All monic polynomials of degree `k` over `field`, in rank order.
pub fn monic_polys(field: &FieldCtx, k: usize, cfg: &LabConfig) -> Result<Vec<Poly>> {
    let total = monic_count(field, k, cfg)?;
    Ok((0..total).map(|r| Poly::monic_from_rank(field, k, r)).collect())
}
