//! Subspaces of `F_q^a` in canonical reduced row echelon form, and a
//! rank-addressable enumeration of all `k`-dimensional subspaces.
//!
//! A `k`-dimensional subspace is determined by its pivot columns (a
//! `k`-subset of `0..a`) together with the entries of its RREF basis that are
//! neither pivots nor forced zeros. The enumeration lists pivot profiles in
//! lexicographic order and, within a profile, free-entry fillings in
//! lexicographic order, so rank `r` maps to one subspace in O(a k) time.

use super::{rank_in_place, rref_in_place, MatrixFq};
use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::FieldCtx;
use crate::numtheory::big_pow;
use itertools::Itertools;
use num_bigint::BigUint;

/// Canonical basis of a subspace: the nonzero rows of its RREF.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    basis: MatrixFq,
}

impl SubspaceBasis {
    /// Span of arbitrary rows of length `ambient`.
    pub fn span(field: &FieldCtx, ambient: usize, rows: &[Vec<u64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(LabError::DimensionMismatch(format!("rows must have length {ambient}")));
        }
        let mut data = rows.concat();
        for &c in &data {
            field.check(c)?;
        }
        let rank = rref_in_place(field, &mut data, rows.len(), ambient);
        data.truncate(rank * ambient);
        Ok(SubspaceBasis { ambient, basis: MatrixFq::from_raw(field, rank, ambient, data) })
    }

    pub(crate) fn from_rref_rows(field: &FieldCtx, ambient: usize, dim: usize, data: Vec<u64>) -> Self {
        SubspaceBasis { ambient, basis: MatrixFq::from_raw(field, dim, ambient, data) }
    }

    pub fn field(&self) -> &FieldCtx {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }
    pub fn row(&self, i: usize) -> &[u64] {
        self.basis.row(i)
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).map(|i| self.row(i).iter().position(|&c| c != 0).unwrap()).collect()
    }

    /// Checks the RREF invariants: unit pivots, strictly increasing pivot
    /// columns, zeros above and below each pivot.
    pub fn is_canonical(&self) -> bool {
        let pivots = self.pivots_checked();
        let Some(pivots) = pivots else { return false };
        pivots.windows(2).all(|w| w[0] < w[1])
            && pivots.iter().enumerate().all(|(i, &c)| {
                self.basis.get(i, c) == 1 && (0..self.dim()).all(|r| r == i || self.basis.get(r, c) == 0)
            })
    }

    fn pivots_checked(&self) -> Option<Vec<usize>> {
        (0..self.dim()).map(|i| self.row(i).iter().position(|&c| c != 0)).collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut data = self.basis.data().to_vec();
        data.extend_from_slice(v);
        rank_in_place(self.field(), &mut data, self.dim() + 1, self.ambient) == self.dim()
    }

    /// All `q^k` vectors of the subspace, as coefficient combinations of the
    /// basis rows in base-`q` order.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let f = self.field();
        let q = f.q();
        let k = self.dim();
        let total = q.pow(k as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u64; self.ambient];
            for i in 0..k {
                let c = idx % q;
                idx /= q;
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(self.row(i)) {
                        *x = f.add(*x, f.mul(c, b));
                    }
                }
            }
            v
        })
    }
}

/// Gaussian binomial coefficient `[a b]_q`, the number of `b`-dimensional
/// subspaces of `F_q^a`.
pub fn gaussian_binomial(a: u32, b: u32, q: u64) -> Result<BigUint> {
    if b > a {
        return Err(LabError::BadArgs(format!("[{a} {b}]_q needs a >= b")));
    }
    let qa = big_pow(q, a as u64);
    let qb = big_pow(q, b as u64);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..b {
        let qi = big_pow(q, i as u64);
        num *= &qa - &qi;
        den *= &qb - &qi;
    }
    Ok(num / den)
}

#[derive(Debug, Clone)]
struct Profile {
    pivots: Vec<usize>,
    /// (row, col) of free entries, row-major.
    free: Vec<(usize, usize)>,
    offset: u64,
    count: u64,
}

/// Every `k`-dimensional subspace of `F_q^ambient`, addressable by rank.
#[derive(Debug, Clone)]
pub struct SubspaceSpace {
    field: FieldCtx,
    ambient: usize,
    k: usize,
    profiles: Vec<Profile>,
    total: u64,
}

impl SubspaceSpace {
    pub fn new(field: &FieldCtx, ambient: usize, k: usize, cfg: &LabConfig) -> Result<Self> {
        if k > ambient {
            return Err(LabError::BadArgs(format!("dimension {k} exceeds ambient {ambient}")));
        }
        let needed = gaussian_binomial(ambient as u32, k as u32, field.q())?;
        let total = cfg.check_scan(&needed)?;
        let q = field.q();
        let mut profiles = Vec::new();
        let mut offset = 0;
        for pivots in (0..ambient).combinations(k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| (pc + 1..ambient).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let count = q.pow(free.len() as u32);
            profiles.push(Profile { pivots, free, offset, count });
            offset += count;
        }
        debug_assert_eq!(offset, total);
        Ok(SubspaceSpace { field: field.clone(), ambient, k, profiles, total })
    }

    pub fn len(&self) -> u64 {
        self.total
    }
    pub fn is_empty(&self) -> bool {
        self.total == 0
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.k
    }
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Writes the RREF rows of subspace `rank` into `buf` (`k * ambient`).
    pub fn fill_rows(&self, rank: u64, buf: &mut [u64]) {
        let pi = self.profiles.partition_point(|p| p.offset + p.count <= rank);
        let prof = &self.profiles[pi];
        let mut filling = rank - prof.offset;
        buf.iter_mut().for_each(|x| *x = 0);
        for (r, &c) in prof.pivots.iter().enumerate() {
            buf[r * self.ambient + c] = 1;
        }
        let q = self.field.q();
        for &(r, c) in prof.free.iter().rev() {
            buf[r * self.ambient + c] = filling % q;
            filling /= q;
        }
    }

    pub fn get(&self, rank: u64) -> SubspaceBasis {
        let mut buf = vec![0u64; self.k * self.ambient];
        self.fill_rows(rank, &mut buf);
        SubspaceBasis::from_rref_rows(&self.field, self.ambient, self.k, buf)
    }

    pub fn iter(&self) -> impl Iterator<Item = SubspaceBasis> + '_ {
        (0..self.total).map(move |r| self.get(r))
    }
}
