//! Properties shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use splitlab_core::linalg::gaussian_binomial;
use splitlab_core::{
    build_extension, build_field, BlockRecurrence, FieldCtx, FieldElement, LabConfig, MatrixFq, RecurrenceState, SubspaceBasis,
    SubspaceSpace, TowerCtx,
};
use std::collections::HashSet;

/// `(p, e, d)` for `F_{p^e}` extended to degree `d`.
pub const TOWERS: [(u64, u32, usize); 8] =
    [(2, 1, 1), (2, 1, 4), (2, 1, 8), (3, 1, 2), (3, 1, 5), (5, 1, 3), (2, 2, 3), (3, 2, 2)];

pub fn tower(p: u64, e: u32, d: usize) -> TowerCtx {
    build_extension(&build_field(p, e).unwrap(), d, None, false).unwrap()
}

pub fn field(q: u64) -> FieldCtx {
    splitlab_core::literal::parse_field(&q.to_string()).unwrap()
}

fn tc<E: std::fmt::Display>(e: E) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// A tower from [`TOWERS`] and three element indices.
pub fn tower_triple() -> impl Strategy<Value = (TowerCtx, u64, u64, u64)> {
    (0..TOWERS.len()).prop_flat_map(|i| {
        let (p, e, d) = TOWERS[i];
        let t = tower(p, e, d);
        let size = t.size();
        (Just(t), 0..size, 0..size, 0..size)
    })
}

pub fn field_axioms(t: &TowerCtx, a: u64, b: u64, c: u64) -> Result<(), TestCaseError> {
    let (a, b, c) = (t.element_at(a), t.element_at(b), t.element_at(c));
    let add = |x: &FieldElement, y: &FieldElement| t.add(x, y).map_err(tc);
    let mul = |x: &FieldElement, y: &FieldElement| t.mul(x, y).map_err(tc);
    prop_assert_eq!(add(&a, &b)?, add(&b, &a)?);
    prop_assert_eq!(mul(&a, &b)?, mul(&b, &a)?);
    prop_assert_eq!(add(&add(&a, &b)?, &c)?, add(&a, &add(&b, &c)?)?);
    prop_assert_eq!(mul(&mul(&a, &b)?, &c)?, mul(&a, &mul(&b, &c)?)?);
    prop_assert_eq!(mul(&a, &add(&b, &c)?)?, add(&mul(&a, &b)?, &mul(&a, &c)?)?);
    prop_assert_eq!(add(&a, &t.zero())?, a.clone());
    prop_assert_eq!(mul(&a, &t.one())?, a.clone());
    prop_assert!(add(&a, &t.neg(&a).map_err(tc)?)?.is_zero());
    if !a.is_zero() {
        prop_assert_eq!(mul(&a, &t.inv(&a).map_err(tc)?)?, t.one());
    }
    Ok(())
}

pub fn frobenius_additive(t: &TowerCtx, a: u64, b: u64, r: u64) -> Result<(), TestCaseError> {
    let (a, b) = (t.element_at(a), t.element_at(b));
    let fr = |x: &FieldElement| t.frobenius(x, r).map_err(tc);
    let lhs = fr(&t.add(&a, &b).map_err(tc)?)?;
    let rhs = t.add(&fr(&a)?, &fr(&b)?).map_err(tc)?;
    prop_assert_eq!(lhs, rhs);
    prop_assert_eq!(fr(&t.mul(&a, &b).map_err(tc)?)?, t.mul(&fr(&a)?, &fr(&b)?).map_err(tc)?);
    Ok(())
}

/// Rows over `F_q`, `1..=4` rows of width `1..=6`.
pub fn row_sets() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=6, 1usize..=4).prop_flat_map(|(q, width, k)| {
        (Just(q), Just(width), prop::collection::vec(prop::collection::vec(0..q, width), k))
    })
}

/// The RREF of a span is canonical, contains every input row, and does not
/// depend on the order or on adding combinations of the rows.
pub fn rref_canonical(q: u64, width: usize, rows: &[Vec<u64>]) -> Result<(), TestCaseError> {
    let f = field(q);
    let w = SubspaceBasis::span(&f, width, rows).map_err(tc)?;
    prop_assert!(w.is_canonical());
    prop_assert!(rows.iter().all(|r| w.contains(r)));
    let rank = MatrixFq::from_rows(&f, rows).map_err(tc)?.rank();
    prop_assert_eq!(w.dim(), rank);
    let mut shuffled: Vec<Vec<u64>> = rows.iter().rev().cloned().collect();
    let combo: Vec<u64> = rows.iter().fold(vec![0; width], |acc, r| {
        acc.iter().zip(r).map(|(&x, &y)| f.add(x, f.mul(y, 2 % q))).collect()
    });
    shuffled.push(combo);
    prop_assert_eq!(SubspaceBasis::span(&f, width, &shuffled).map_err(tc)?, w);
    Ok(())
}

/// Exhaustive: the stream yields `[a b]_q` distinct canonical subspaces.
pub fn subspace_stream(q: u64, a: usize, b: usize) -> Result<(), String> {
    let f = field(q);
    let space = SubspaceSpace::new(&f, a, b, &LabConfig::default()).map_err(|e| e.to_string())?;
    let expected = gaussian_binomial(a as u32, b as u32, q).unwrap();
    let mut seen = HashSet::new();
    for w in space.iter() {
        if !w.is_canonical() || w.dim() != b {
            return Err(format!("non-canonical subspace in ({q},{a},{b})"));
        }
        if !seen.insert(w.basis().data().to_vec()) {
            return Err(format!("duplicate subspace in ({q},{a},{b})"));
        }
    }
    if num_bigint::BigUint::from(seen.len()) != expected || space.len() as usize != seen.len() {
        return Err(format!("({q},{a},{b}): {} subspaces, expected {expected}", seen.len()));
    }
    Ok(())
}

/// Grid of the subspace-stream property: `a <= 6`, `q in {2, 3}`, counts up
/// to a million.
pub fn subspace_grid() -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for q in [2u64, 3] {
        for a in 1..=6usize {
            for b in 0..=a {
                if gaussian_binomial(a as u32, b as u32, q).unwrap() <= num_bigint::BigUint::from(1_000_000u32) {
                    out.push((q, a, b));
                }
            }
        }
    }
    out
}

fn eval_at_matrix(coeffs: &[u64], m: &MatrixFq) -> MatrixFq {
    let f = m.field();
    let mut acc = MatrixFq::zeros(f, m.rows(), m.cols());
    for &c in coeffs.iter().rev() {
        acc = acc.mul(m).unwrap().add(&MatrixFq::identity(f, m.rows()).scale(c)).unwrap();
    }
    acc
}

/// `char_poly(M)(M) = 0` and the polynomial is monic of degree `size`.
pub fn cayley_hamilton(q: u64, size: usize, index: u64) -> Result<(), TestCaseError> {
    let f = field(q);
    let m = MatrixFq::from_index(&f, size, size, index);
    let cp = m.char_poly().map_err(tc)?;
    prop_assert!(cp.is_monic());
    prop_assert_eq!(cp.degree(), Some(size));
    prop_assert!(eval_at_matrix(cp.coeffs(), &m).is_zero(), "{}", m.to_literal());
    Ok(())
}

pub fn matrices() -> impl Strategy<Value = (u64, usize, u64)> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=5).prop_flat_map(|(q, s)| {
        let total = q.checked_pow((s * s) as u32).unwrap_or(u64::MAX);
        (Just(q), Just(s), 0..total)
    })
}

/// Every orbit is purely periodic exactly when the block companion is
/// invertible; for a singular one some state has a preperiod.
pub fn periodic_iff_invertible(q: u64, m: usize, n: usize, index: u64) -> Result<(), TestCaseError> {
    let f = field(q);
    let rec = BlockRecurrence::from_index(&f, m, n, index);
    let cfg = LabConfig::default();
    let width = m * n;
    let states = q.pow(width as u32);
    let mut saw_tail = false;
    for s in 0..states {
        let mut words = vec![vec![0u64; m]; n];
        let mut x = s;
        for w in words.iter_mut() {
            for c in w.iter_mut() {
                *c = x % q;
                x /= q;
            }
        }
        let st = RecurrenceState::from_words(&words).map_err(tc)?;
        let rep = rec.period_preperiod(&st, &cfg).map_err(tc)?;
        prop_assert!(rep.period >= 1 && rep.period <= states);
        prop_assert_eq!(rep.periodic(), rep.preperiod == 0);
        if rec.is_invertible() {
            prop_assert!(rep.periodic());
        }
        saw_tail |= !rep.periodic();
    }
    prop_assert_eq!(saw_tail, !rec.is_invertible());
    Ok(())
}

/// `(q, m, n, tuple index)` with `q^{mn} <= 4096` states.
pub fn recurrences() -> impl Strategy<Value = (u64, usize, usize, u64)> {
    prop_oneof![
        Just((2u64, 1usize, 3usize)),
        Just((2, 2, 2)),
        Just((3, 1, 2)),
        Just((3, 2, 1)),
        Just((2, 3, 2)),
        Just((5, 1, 2)),
    ]
    .prop_flat_map(|(q, m, n)| {
        let total = q.pow((m * m * n) as u32);
        (Just(q), Just(m), Just(n), 0..total)
    })
}
