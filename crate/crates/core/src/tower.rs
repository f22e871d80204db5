//! Extensions `F_{q^d} = F_q[x]/(f)` of a base field, with elements stored as
//! coordinate vectors over the power basis `1, alpha, ..., alpha^(d-1)`.

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::FieldCtx;
use crate::linalg::MatrixFq;
use crate::numtheory::order_by_exponent_dropping;
use crate::poly::{self, Poly};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

struct TowerInner {
    base: FieldCtx,
    d: usize,
    defining: Poly,
    size: u64,
}

/// The extension `F_{q^d}` together with its distinguished generator `alpha`,
/// the class of the indeterminate.
#[derive(Clone)]
pub struct TowerCtx(Arc<TowerInner>);

impl PartialEq for TowerCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.defining == other.0.defining
    }
}
impl Eq for TowerCtx {}

impl fmt::Debug for TowerCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod ({})", self.0.base.q(), self.0.d, self.0.defining)
    }
}

#[derive(Clone)]
pub struct FieldElement {
    tower: TowerCtx,
    coords: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.tower == other.tower
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl FieldElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
    pub fn tower(&self) -> &TowerCtx {
        &self.tower
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Arithmetic operations accepted by [`TowerCtx::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow,
    Frobenius,
}

/// Second operand of [`TowerCtx::arith`]: an element or an exponent.
#[derive(Debug, Clone)]
pub enum Operand {
    Elem(FieldElement),
    Exp(u64),
    None,
}

/// Builds `F_{q^d}` over `base`.
///
/// Without an explicit defining polynomial the least monic irreducible one of
/// degree `d` in rank order is used, or with `prefer_primitive` the least
/// primitive one.
pub fn build_extension(base: &FieldCtx, d: usize, defining: Option<Poly>, prefer_primitive: bool) -> Result<TowerCtx> {
    if d == 0 {
        return Err(LabError::BadArgs("extension degree must be at least 1".into()));
    }
    let size = match base.q().checked_pow(d as u32) {
        Some(s) if s < 1 << 63 => s,
        _ => return Err(LabError::SizeExceeded(format!("{}^{d} >= 2^63", base.q()))),
    };
    let defining = match defining {
        Some(f) => {
            if f.field() != base {
                return Err(LabError::ContextMismatch);
            }
            if f.degree() != Some(d) {
                return Err(LabError::BadArgs(format!("defining polynomial {f} does not have degree {d}")));
            }
            if !f.is_monic() {
                return Err(LabError::NotMonic);
            }
            if !poly::is_irreducible(&f)? {
                return Err(LabError::NotIrreducible);
            }
            f
        }
        None => {
            let found = if prefer_primitive { poly::least_irreducible(base, d, true)? } else { None };
            match found {
                Some(f) => f,
                None => poly::least_irreducible(base, d, false)?.ok_or(LabError::NotIrreducible)?,
            }
        }
    };
    Ok(TowerCtx(Arc::new(TowerInner { base: base.clone(), d, defining, size })))
}

impl TowerCtx {
    pub fn base(&self) -> &FieldCtx {
        &self.0.base
    }
    pub fn degree(&self) -> usize {
        self.0.d
    }
    pub fn defining_poly(&self) -> &Poly {
        &self.0.defining
    }
    /// Number of elements, `q^d`.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    fn elem(&self, coords: Vec<u64>) -> FieldElement {
        FieldElement { tower: self.clone(), coords }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(vec![0; self.degree()])
    }
    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }
    /// Embeds a base-field code.
    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        self.elem(v)
    }

    /// The class of the indeterminate.
    pub fn alpha(&self) -> FieldElement {
        let d = self.degree();
        if d == 1 {
            // x = -f_0 modulo the linear defining polynomial x + f_0
            let f0 = self.0.defining.coeff(0);
            return self.from_base(self.base().neg(f0));
        }
        let mut v = vec![0; d];
        v[1] = 1;
        self.elem(v)
    }

    /// `alpha^i` for `i < d` is the `i`-th unit vector.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut v = vec![0; self.degree()];
        v[i] = 1;
        self.elem(v)
    }

    pub fn from_coords(&self, coords: Vec<u64>) -> Result<FieldElement> {
        if coords.len() != self.degree() || coords.iter().any(|&c| !self.base().contains(c)) {
            return Err(LabError::ContextMismatch);
        }
        Ok(self.elem(coords))
    }

    pub fn coords_of(&self, e: &FieldElement) -> Result<Vec<u64>> {
        self.check(e)?;
        Ok(e.coords.clone())
    }

    pub fn check(&self, e: &FieldElement) -> Result<()> {
        if e.tower == *self {
            Ok(())
        } else {
            Err(LabError::ContextMismatch)
        }
    }

    /// Element whose coordinates are the base-`q` digits of `index`.
    pub fn element_at(&self, mut index: u64) -> FieldElement {
        let q = self.base().q();
        let coords = (0..self.degree())
            .map(|_| {
                let c = index % q;
                index /= q;
                c
            })
            .collect();
        self.elem(coords)
    }

    pub fn index_of(&self, e: &FieldElement) -> u64 {
        let q = self.base().q();
        e.coords.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let f = self.base();
        Ok(self.elem(a.coords.iter().zip(&b.coords).map(|(&x, &y)| f.add(x, y)).collect()))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let f = self.base();
        Ok(self.elem(a.coords.iter().zip(&b.coords).map(|(&x, &y)| f.sub(x, y)).collect()))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let f = self.base();
        Ok(self.elem(a.coords.iter().map(|&x| f.neg(x)).collect()))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem(self.mul_coords(&a.coords, &b.coords)))
    }

    /// Product of two coordinate vectors reduced by the defining polynomial.
    pub(crate) fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.base();
        let d = self.degree();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = f.add(prod[i + j], f.mul(x, y));
                }
            }
        }
        let m = self.0.defining.coeffs();
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                prod[k - d + i] = f.sub(prod[k - d + i], f.mul(c, m[i]));
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> Result<FieldElement> {
        self.check(a)?;
        let mut base = a.coords.clone();
        let mut acc = self.one().coords;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_coords(&base, &base);
            }
        }
        Ok(self.elem(acc))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(LabError::DivisionByZero);
        }
        self.pow(a, self.size() - 2)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b)?;
        self.mul(a, &inv)
    }

    /// `a^(p^r)` with `p` the characteristic.
    pub fn frobenius(&self, a: &FieldElement, r: u64) -> Result<FieldElement> {
        self.check(a)?;
        let total_degree = self.base().e() as u64 * self.degree() as u64;
        let mut x = a.clone();
        for _ in 0..(r % total_degree) {
            x = self.pow(&x, self.base().p())?;
        }
        Ok(x)
    }

    /// `a^(q^r)` with `q` the base-field size.
    pub fn base_frobenius(&self, a: &FieldElement, r: u64) -> Result<FieldElement> {
        self.frobenius(a, r * self.base().e() as u64)
    }

    /// Single entry point over [`ArithOp`].
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: &Operand) -> Result<FieldElement> {
        let elem = || match b {
            Operand::Elem(e) => Ok(e),
            _ => Err(LabError::BadArgs(format!("{op:?} needs an element operand"))),
        };
        let exp = || match b {
            Operand::Exp(k) => Ok(*k),
            _ => Err(LabError::BadArgs(format!("{op:?} needs an exponent"))),
        };
        match op {
            ArithOp::Add => self.add(a, elem()?),
            ArithOp::Sub => self.sub(a, elem()?),
            ArithOp::Mul => self.mul(a, elem()?),
            ArithOp::Div => self.div(a, elem()?),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow => self.pow(a, exp()?),
            ArithOp::Frobenius => self.frobenius(a, exp()?),
        }
    }

    /// True iff `beta` generates `F_{q^d}` over the base field, i.e. its
    /// minimal polynomial has degree `d`.
    pub fn generates(&self, beta: &FieldElement) -> Result<bool> {
        Ok(poly::minimal_polynomial(self, beta)?.degree() == Some(self.degree()))
    }

    /// Order of `beta` in the multiplicative group of order `q^d - 1`.
    pub fn multiplicative_order(&self, beta: &FieldElement, cfg: &LabConfig) -> Result<u64> {
        self.check(beta)?;
        if beta.is_zero() {
            return Err(LabError::ZeroElement);
        }
        let one = self.one();
        order_by_exponent_dropping(self.size() - 1, cfg.factor_bound, |k| {
            self.pow(beta, k).map(|x| x == one).unwrap_or(false)
        })
    }

    /// Matrix of `x -> beta * x` acting on coordinate rows from the right:
    /// row `i` holds the coordinates of `beta * alpha^i`.
    pub fn mul_matrix(&self, beta: &FieldElement) -> Result<MatrixFq> {
        self.check(beta)?;
        let d = self.degree();
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            let mut e = vec![0u64; d];
            e[i] = 1;
            data.extend(self.mul_coords(&beta.coords, &e));
        }
        Ok(MatrixFq::from_raw(self.base(), d, d, data))
    }
}
