//! Exact linear algebra over `F_q`.
//!
//! Vectors are rows of base-field codes and matrices act on them from the
//! right (`v -> v M`), the convention used for state updates and subspace
//! images throughout the crate.

pub mod gf2;
pub mod subspace;

pub use subspace::{gaussian_binomial, SubspaceBasis, SubspaceSpace};

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::FieldCtx;
use crate::numtheory::{big_pow, order_by_exponent_dropping};
use crate::par;
use crate::poly::{self, Method, Poly};
use num_bigint::BigUint;
use std::fmt;
use std::hash::{Hash, Hasher};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_literal())
    }
}

impl MatrixFq {
    pub fn new(field: &FieldCtx, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LabError::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for &c in &data {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, rows, cols, data))
    }

    pub(crate) fn from_raw(field: &FieldCtx, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        MatrixFq { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &FieldCtx, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LabError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        Self::from_raw(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The matrix whose row-major entries are the base-`q` digits of `index`,
    /// first entry most significant.
    pub fn from_index(field: &FieldCtx, rows: usize, cols: usize, mut index: u64) -> Self {
        let q = field.q();
        let mut data = vec![0u64; rows * cols];
        for slot in data.iter_mut().rev() {
            *slot = index % q;
            index /= q;
        }
        Self::from_raw(field, rows, cols, data)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u64] {
        &self.data
    }
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    /// Rows separated by `;`, entries by `,`.
    pub fn to_literal(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// `v M` for a row vector `v` of length `rows`.
    pub fn mul_row(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0u64; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(c, m));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field {
            return Err(LabError::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(LabError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            data.extend(other.mul_row(self.row(i)));
        }
        Ok(Self::from_raw(&self.field, self.rows, other.cols, data))
    }

    pub fn add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return Err(LabError::ShapeMismatch("matrix addition".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self::from_raw(f, self.rows, self.cols, data))
    }

    pub fn scale(&self, s: u64) -> MatrixFq {
        let data = self.data.iter().map(|&a| self.field.mul(a, s)).collect();
        Self::from_raw(&self.field, self.rows, self.cols, data)
    }

    pub fn pow(&self, mut exp: u64) -> Result<MatrixFq> {
        if !self.is_square() {
            return Err(LabError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form by Gauss-Jordan elimination with leftmost
    /// pivots, and the rank.
    pub fn rref(&self) -> (MatrixFq, usize) {
        let mut m = self.clone();
        let rank = rref_in_place(&self.field, &mut m.data, self.rows, self.cols);
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rank_in_place(&self.field, &mut data, self.rows, self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Monic characteristic polynomial `det(x I - M)`, via reduction to upper
    /// Hessenberg form by similarity transformations.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(LabError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else { continue };
            if piv != j + 1 {
                for c in 0..n {
                    h.swap(at(piv, c), at(j + 1, c));
                }
                for r in 0..n {
                    h.swap(at(r, piv), at(r, j + 1));
                }
            }
            let inv = f.inv(h[at(j + 1, j)])?;
            for k in j + 2..n {
                let u = f.mul(h[at(k, j)], inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    h[at(k, c)] = f.sub(h[at(k, c)], f.mul(u, h[at(j + 1, c)]));
                }
                for r in 0..n {
                    h[at(r, j + 1)] = f.add(h[at(r, j + 1)], f.mul(u, h[at(r, k)]));
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_{i=1}^{m-1} h_{m-i,m} (prod_{j=m-i+1}^{m} h_{j,j-1}) p_{m-i-1}
        let hh = |i: usize, j: usize| h[at(i - 1, j - 1)];
        let mut p: Vec<Poly> = vec![Poly::one(f)];
        for m in 1..=n {
            let lin = Poly::from_raw(f, vec![f.neg(hh(m, m)), 1]);
            let mut pm = lin.mul(&p[m - 1]);
            let mut prod = 1u64;
            for i in 1..m {
                prod = f.mul(prod, hh(m - i + 1, m - i));
                let c = f.mul(hh(m - i, m), prod);
                if c != 0 {
                    pm = pm.sub(&p[m - i - 1].scale(c));
                }
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    /// Multiplicative order of an invertible matrix.
    ///
    /// With an irreducible characteristic polynomial of degree `d` the order
    /// divides `q^d - 1` and is found by dropping prime factors; otherwise the
    /// powers are iterated up to `q^d - 1`, the largest order in `GL_d`.
    pub fn order(&self, cfg: &LabConfig) -> Result<u64> {
        if !self.is_square() {
            return Err(LabError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if !self.is_invertible() {
            return Err(LabError::Singular);
        }
        let d = self.rows;
        let group = match self.field.q().checked_pow(d as u32) {
            Some(s) if s < 1 << 63 => s - 1,
            _ => return Err(LabError::SizeExceeded(format!("{}^{d}", self.field.q()))),
        };
        let cp = self.char_poly()?;
        if poly::is_irreducible(&cp)? {
            return order_by_exponent_dropping(group, cfg.factor_bound, |k| {
                self.pow(k).map(|m| m.is_identity()).unwrap_or(false)
            });
        }
        let limit = group.min(cfg.iteration_bound);
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.mul(self)?;
        }
        Err(LabError::IterationBoundExceeded(limit))
    }

    /// Transposed copy.
    pub fn transpose(&self) -> MatrixFq {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self::from_raw(&self.field, self.cols, self.rows, data)
    }
}

/// In-place Gauss-Jordan on a row-major buffer; returns the rank. Nonzero
/// rows end up first, in RREF.
pub(crate) fn rref_in_place(f: &FieldCtx, data: &mut [u64], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| data[r * cols + c] != 0) else { continue };
        if piv != rank {
            for k in 0..cols {
                data.swap(piv * cols + k, rank * cols + k);
            }
        }
        let inv = f.inv(data[rank * cols + c]).expect("pivot is nonzero");
        for k in c..cols {
            data[rank * cols + k] = f.mul(data[rank * cols + k], inv);
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = data[r * cols + c];
            if factor == 0 {
                continue;
            }
            for k in c..cols {
                let v = f.mul(factor, data[rank * cols + k]);
                data[r * cols + k] = f.sub(data[r * cols + k], v);
            }
        }
        rank += 1;
    }
    rank
}

/// Forward elimination only; returns the rank.
pub(crate) fn rank_in_place(f: &FieldCtx, data: &mut [u64], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| data[r * cols + c] != 0) else { continue };
        if piv != rank {
            for k in c..cols {
                data.swap(piv * cols + k, rank * cols + k);
            }
        }
        let inv = f.inv(data[rank * cols + c]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let factor = data[r * cols + c];
            if factor == 0 {
                continue;
            }
            let u = f.mul(factor, inv);
            for k in c..cols {
                let v = f.mul(u, data[rank * cols + k]);
                data[r * cols + k] = f.sub(data[r * cols + k], v);
            }
        }
        rank += 1;
    }
    rank
}

/// Companion matrix of a monic polynomial in the row-action convention:
/// ones on the subdiagonal and last column `-f_0, ..., -f_{n-1}`.
pub fn companion(f: &Poly) -> Result<MatrixFq> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(LabError::DegreeZero),
    };
    if !f.is_monic() {
        return Err(LabError::NotMonic);
    }
    let field = f.field();
    let mut m = MatrixFq::zeros(field, n, n);
    for i in 0..n {
        if i > 0 {
            m.set(i, i - 1, 1);
        }
        m.set(i, n - 1, field.neg(f.coeff(i)));
    }
    Ok(m)
}

/// `|GL_m(F_q)| = prod_{i<m} (q^m - q^i)`.
pub fn gl_order(m: u32, q: u64) -> BigUint {
    let qm = big_pow(q, m as u64);
    (0..m).map(|i| &qm - big_pow(q, i as u64)).product()
}

/// Number of invertible `m x m` matrices, by enumeration.
pub fn count_invertible(m: usize, field: &FieldCtx, cfg: &LabConfig) -> Result<u64> {
    let total = cfg.check_scan(&big_pow(field.q(), (m * m) as u64))?;
    Ok(par::count(cfg.exec, total, |i| MatrixFq::from_index(field, m, m, i).is_invertible()))
}

/// Number of nilpotent `m x m` matrices: `q^(m(m-1))` in closed form, or by
/// testing `M^m = 0` over all matrices.
pub fn count_nilpotent(m: usize, field: &FieldCtx, method: Method, cfg: &LabConfig) -> Result<BigUint> {
    if m == 0 {
        return Err(LabError::BadArgs("matrix size must be at least 1".into()));
    }
    match method {
        Method::Closed => Ok(big_pow(field.q(), (m * (m - 1)) as u64)),
        Method::Brute => {
            let total = cfg.check_scan(&big_pow(field.q(), (m * m) as u64))?;
            let n = par::count(cfg.exec, total, |i| {
                MatrixFq::from_index(field, m, m, i).pow(m as u64).map(|p| p.is_zero()).unwrap_or(false)
            });
            Ok(BigUint::from(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    fn f2() -> FieldCtx {
        build_field(2, 1).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let id = MatrixFq::identity(&f, 3);
        assert_eq!(id.rref(), (id.clone(), 3));
        let z = MatrixFq::zeros(&f, 2, 3);
        assert_eq!(z.rref(), (z.clone(), 0));
        let m = MatrixFq::from_rows(&f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (r, k) = m.rref();
        assert_eq!(k, 1);
        assert_eq!(r.data(), &[1, 1, 0, 0]);
    }

    #[test]
    fn rref_over_f3_and_f4() {
        let f3 = build_field(3, 1).unwrap();
        let m = MatrixFq::from_rows(&f3, &[vec![2, 1, 0], vec![1, 2, 1], vec![0, 0, 1]]).unwrap();
        let (r, k) = m.rref();
        assert_eq!(k, 2);
        assert_eq!(r.to_literal(), "1,2,0;0,0,1;0,0,0");
        let f4 = build_field(2, 2).unwrap();
        let m = MatrixFq::from_rows(&f4, &[vec![2, 3], vec![1, 2]]).unwrap();
        // det = x*x - (x+1) = 0
        assert_eq!(f4.sub(f4.mul(2, 2), f4.mul(3, 1)), 0);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn gl_order_examples() {
        assert_eq!(gl_order(1, 5), BigUint::from(4u32));
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
        let cfg = LabConfig::default();
        assert_eq!(count_invertible(2, &f2(), &cfg).unwrap(), 6);
        assert_eq!(count_invertible(2, &build_field(3, 1).unwrap(), &cfg).unwrap(), 48);
    }

    #[test]
    fn nilpotent_examples() {
        let cfg = LabConfig::default();
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(count_nilpotent(1, &f3, Method::Closed, &cfg).unwrap(), BigUint::from(1u32));
        assert_eq!(count_nilpotent(1, &f3, Method::Brute, &cfg).unwrap(), BigUint::from(1u32));
        assert_eq!(count_nilpotent(2, &f2(), Method::Brute, &cfg).unwrap(), BigUint::from(4u32));
        assert_eq!(count_nilpotent(2, &f3, Method::Brute, &cfg).unwrap(), BigUint::from(9u32));
        let small = LabConfig::default().with_scan_bound(100);
        assert!(matches!(
            count_nilpotent(3, &f2(), Method::Brute, &small),
            Err(LabError::ScanBoundExceeded { .. })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let f = f2();
        let g = Poly::new(&f, vec![1, 1, 1, 1, 1]).unwrap();
        assert_eq!(companion(&g).unwrap().char_poly().unwrap(), g);
        let id1 = MatrixFq::identity(&f, 1);
        assert_eq!(id1.char_poly().unwrap().coeffs(), &[1, 1]);
        let t = MatrixFq::from_rows(&f, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(t.char_poly().unwrap().coeffs(), &[1, 1, 1]);
        assert!(matches!(MatrixFq::zeros(&f, 2, 3).char_poly(), Err(LabError::NotSquare { .. })));
    }

    /// Determinant by cofactor expansion, used to evaluate `det(c I - M)` as an
    /// independent check of the Hessenberg route.
    fn det(f: &FieldCtx, m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0;
        for j in 0..n {
            let minor: Vec<Vec<u64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let term = f.mul(m[0][j], det(f, &minor));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn char_poly_matches_cofactor_determinant() {
        let f5 = build_field(5, 1).unwrap();
        for idx in [0u64, 1, 77, 12345, 999_999, 1_234_567] {
            let m = MatrixFq::from_index(&f5, 3, 3, idx);
            let cp = m.char_poly().unwrap();
            for c in 0..5 {
                let rows: Vec<Vec<u64>> = (0..3)
                    .map(|i| (0..3).map(|j| f5.sub(if i == j { c } else { 0 }, m.get(i, j))).collect())
                    .collect();
                assert_eq!(cp.eval(c), det(&f5, &rows), "matrix {m:?} at {c}");
            }
        }
    }

    #[test]
    fn order_examples() {
        let cfg = LabConfig::default();
        let f = f2();
        assert_eq!(MatrixFq::identity(&f, 3).order(&cfg).unwrap(), 1);
        let c3 = companion(&Poly::new(&f, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(c3.order(&cfg).unwrap(), 3);
        let c5 = companion(&Poly::new(&f, vec![1, 1, 1, 1, 1]).unwrap()).unwrap();
        assert_eq!(c5.order(&cfg).unwrap(), 5);
        // reducible char poly: swap matrix has order 2
        let swap = MatrixFq::from_rows(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.order(&cfg).unwrap(), 2);
        assert_eq!(MatrixFq::zeros(&f, 2, 2).order(&cfg).unwrap_err(), LabError::Singular);
    }
}
