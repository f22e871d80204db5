//! Word-oriented linear recurrences `s_{i+n} = s_i C_0 + ... + s_{i+n-1} C_{n-1}`
//! over `F_q^m`, their block companion matrices, and censuses over all
//! coefficient tuples.

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::FieldCtx;
use crate::linalg::{gl_order, rank_in_place, MatrixFq};
use crate::numtheory::{big_pow, euler_phi};
use crate::par;
use crate::poly::{self, find_irreducibles, IrreducibleFilter, Method, Poly};
use crate::splitting::SplitInstance;
use crate::tower::build_extension;
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::{HashMap, HashSet};

/// Above this many distinct states the cycle search stops hashing states and
/// restarts with Brent's algorithm.
pub const HASH_STATE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecurrence {
    field: FieldCtx,
    m: usize,
    n: usize,
    coeffs: Vec<MatrixFq>,
}

/// The `n` most recent words `(s_i, ..., s_{i+n-1})`, stored back to back.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceState {
    m: usize,
    data: Vec<u64>,
}

impl RecurrenceState {
    pub fn from_words(words: &[Vec<u64>]) -> Result<Self> {
        let m = words.first().map_or(0, Vec::len);
        if m == 0 || words.iter().any(|w| w.len() != m) {
            return Err(LabError::ShapeMismatch("state words must share a positive width".into()));
        }
        Ok(RecurrenceState { m, data: words.concat() })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        RecurrenceState { m, data: vec![0; m * n] }
    }

    pub fn width(&self) -> usize {
        self.m
    }
    pub fn order(&self) -> usize {
        self.data.len() / self.m
    }
    pub fn word(&self, i: usize) -> &[u64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }
    pub fn words(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.m).map(<[u64]>::to_vec).collect()
    }
    /// The concatenated state row.
    pub fn as_row(&self) -> &[u64] {
        &self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodReport {
    pub preperiod: u64,
    pub period: u64,
}

impl PeriodReport {
    pub fn periodic(&self) -> bool {
        self.preperiod == 0
    }
}

/// How primitivity of a recurrence is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitivityMode {
    /// Multiplicative order of the block companion matrix.
    Order,
    /// Walks the orbit of a nonzero state and checks it covers every nonzero
    /// state exactly once before returning.
    Definitional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberMethod {
    Scan,
    Formula,
    /// `N(alpha, m, n; q) / (q^{mn} - 1)` with `alpha` a root of `f`.
    Bridge,
}

impl BlockRecurrence {
    pub fn new(field: &FieldCtx, m: usize, n: usize, coeffs: Vec<MatrixFq>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(LabError::ShapeMismatch("m and n must be positive".into()));
        }
        if coeffs.len() != n {
            return Err(LabError::ShapeMismatch(format!("expected {n} coefficient matrices, got {}", coeffs.len())));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.rows() != m || c.cols() != m {
                return Err(LabError::ShapeMismatch(format!("C_{i} is {}x{}, expected {m}x{m}", c.rows(), c.cols())));
            }
            if c.field() != field {
                return Err(LabError::ContextMismatch);
            }
        }
        Ok(BlockRecurrence { field: field.clone(), m, n, coeffs })
    }

    /// The tuple of rank `index` among all `q^{m^2 n}` tuples, ordered by the
    /// concatenated entries of `C_0, ..., C_{n-1}` with the first entry most
    /// significant.
    pub fn from_index(field: &FieldCtx, m: usize, n: usize, index: u64) -> Self {
        let per = field.q().pow((m * m) as u32);
        let mut rest = index;
        let mut coeffs = vec![MatrixFq::zeros(field, m, m); n];
        for c in coeffs.iter_mut().rev() {
            *c = MatrixFq::from_index(field, m, m, rest % per);
            rest /= per;
        }
        BlockRecurrence { field: field.clone(), m, n, coeffs }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn width(&self) -> usize {
        self.m
    }
    pub fn order(&self) -> usize {
        self.n
    }
    pub fn coeffs(&self) -> &[MatrixFq] {
        &self.coeffs
    }

    fn check_state(&self, st: &RecurrenceState) -> Result<()> {
        if st.m != self.m || st.data.len() != self.m * self.n {
            return Err(LabError::ShapeMismatch(format!(
                "state must hold {} words of width {}, got {} of width {}",
                self.n,
                self.m,
                st.order(),
                st.width()
            )));
        }
        for &c in &st.data {
            self.field.check(c)?;
        }
        Ok(())
    }

    /// Next word `sum_j s_{i+j} C_j`.
    fn feedback(&self, data: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let m = self.m;
        let mut out = vec![0u64; m];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (k, &s) in data[j * m..(j + 1) * m].iter().enumerate() {
                if s == 0 {
                    continue;
                }
                for (o, &e) in out.iter_mut().zip(c.row(k)) {
                    *o = f.add(*o, f.mul(s, e));
                }
            }
        }
        out
    }

    fn advance(&self, data: &mut Vec<u64>) {
        let next = self.feedback(data);
        data.drain(..self.m);
        data.extend(next);
    }

    pub fn step(&self, st: &RecurrenceState) -> Result<RecurrenceState> {
        self.check_state(st)?;
        let mut data = st.data.clone();
        self.advance(&mut data);
        Ok(RecurrenceState { m: self.m, data })
    }

    /// The first `count` output words `s_0, s_1, ...`.
    pub fn simulate(&self, init: &RecurrenceState, count: usize) -> Result<Vec<Vec<u64>>> {
        self.check_state(init)?;
        let mut data = init.data.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(data[..self.m].to_vec());
            self.advance(&mut data);
        }
        Ok(out)
    }

    /// The `(m, n)`-block companion matrix: identity blocks below the block
    /// diagonal and `C_0, ..., C_{n-1}` down the last block column, so that
    /// `state * T` is the next state.
    pub fn block_companion(&self) -> MatrixFq {
        let (m, n) = (self.m, self.n);
        let d = m * n;
        let mut t = MatrixFq::zeros(&self.field, d, d);
        for b in 1..n {
            for i in 0..m {
                t.set(b * m + i, (b - 1) * m + i, 1);
            }
        }
        for (b, c) in self.coeffs.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    t.set(b * m + i, (n - 1) * m + j, c.get(i, j));
                }
            }
        }
        t
    }

    /// The block companion matrix is invertible exactly when `C_0` is.
    pub fn is_invertible(&self) -> bool {
        self.coeffs[0].is_invertible()
    }

    fn state_count(&self, cfg: &LabConfig) -> Result<u64> {
        let states = big_pow(self.field.q(), (self.m * self.n) as u64);
        match u64::try_from(&states) {
            Ok(s) if s <= cfg.iteration_bound => Ok(s),
            _ => Err(LabError::IterationBoundExceeded(cfg.iteration_bound)),
        }
    }

    /// Exact preperiod and period of the state sequence from `init`.
    pub fn period_preperiod(&self, init: &RecurrenceState, cfg: &LabConfig) -> Result<PeriodReport> {
        self.check_state(init)?;
        self.state_count(cfg)?;
        let report = match self.period_by_hashing(init, HASH_STATE_LIMIT) {
            Some(r) => r,
            None => self.period_by_brent(init),
        };
        assert!(
            !self.is_invertible() || report.periodic(),
            "invertible recurrence produced preperiod {}",
            report.preperiod
        );
        Ok(report)
    }

    fn period_by_hashing(&self, init: &RecurrenceState, limit: usize) -> Option<PeriodReport> {
        let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
        let mut data = init.data.clone();
        let mut i = 0u64;
        loop {
            if let Some(&first) = seen.get(&data) {
                return Some(PeriodReport { preperiod: first, period: i - first });
            }
            if seen.len() >= limit {
                return None;
            }
            seen.insert(data.clone(), i);
            self.advance(&mut data);
            i += 1;
        }
    }

    fn period_by_brent(&self, init: &RecurrenceState) -> PeriodReport {
        let mut power = 1u64;
        let mut lam = 1u64;
        let mut tortoise = init.data.clone();
        let mut hare = init.data.clone();
        self.advance(&mut hare);
        while tortoise != hare {
            if power == lam {
                tortoise.clone_from(&hare);
                power *= 2;
                lam = 0;
            }
            self.advance(&mut hare);
            lam += 1;
        }
        let mut tortoise = init.data.clone();
        let mut hare = init.data.clone();
        for _ in 0..lam {
            self.advance(&mut hare);
        }
        let mut mu = 0;
        while tortoise != hare {
            self.advance(&mut tortoise);
            self.advance(&mut hare);
            mu += 1;
        }
        PeriodReport { preperiod: mu, period: lam }
    }

    /// True iff every nonzero initial state yields a purely periodic sequence
    /// of period `q^{mn} - 1`.
    pub fn is_primitive(&self, mode: PrimitivityMode, cfg: &LabConfig) -> Result<bool> {
        let states = self.state_count(cfg)?;
        if !self.is_invertible() {
            return Ok(false);
        }
        match mode {
            PrimitivityMode::Order => is_singer_cycle(&self.block_companion(), cfg),
            PrimitivityMode::Definitional => {
                // One orbit of length q^{mn} - 1 through a nonzero state holds
                // every nonzero state, so all of them share its period.
                let start = {
                    let mut s = vec![0u64; self.m * self.n];
                    s[0] = 1;
                    s
                };
                let mut data = start.clone();
                for k in 1..states {
                    self.advance(&mut data);
                    if data == start {
                        return Ok(k == states - 1);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// True iff `t` has multiplicative order `q^d - 1`.
///
/// An element of that order makes `F_q[t]` a ring with `q^d - 1` units, hence
/// a field, so the characteristic polynomial is irreducible; the order is
/// only computed in that case.
pub fn is_singer_cycle(t: &MatrixFq, cfg: &LabConfig) -> Result<bool> {
    if !t.is_square() {
        return Err(LabError::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    let cp = t.char_poly()?;
    if !poly::is_irreducible(&cp)? || cp.coeff(0) == 0 {
        return Ok(false);
    }
    let group = big_pow(t.field().q(), t.rows() as u64) - 1u32;
    Ok(BigUint::from(t.order(cfg)?) == group)
}

/// Monic rank of a monic polynomial: lower coefficients read as a base-`q`
/// integer, constant term least significant.
fn monic_rank(f: &Poly, q: u64) -> u64 {
    let c = f.coeffs();
    c[..c.len() - 1].iter().rev().fold(0, |acc, &x| acc * q + x)
}

/// Writes `T` for the tuple `index` into `t` (`d * d`) and returns whether
/// `C_0` is invertible.
fn companion_from_index(field: &FieldCtx, m: usize, n: usize, index: u64, t: &mut [u64], c0: &mut [u64]) -> bool {
    let q = field.q();
    let d = m * n;
    t.iter_mut().for_each(|x| *x = 0);
    for b in 1..n {
        for i in 0..m {
            t[(b * m + i) * d + (b - 1) * m + i] = 1;
        }
    }
    let mut rest = index;
    for b in (0..n).rev() {
        for i in (0..m).rev() {
            for j in (0..m).rev() {
                t[(b * m + i) * d + (n - 1) * m + j] = rest % q;
                rest /= q;
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            c0[i * m + j] = t[i * d + (n - 1) * m + j];
        }
    }
    rank_in_place(field, c0, m, m) == m
}

fn tuple_count(field: &FieldCtx, m: usize, n: usize, cfg: &LabConfig) -> Result<u64> {
    cfg.check_scan(&big_pow(field.q(), (m * m * n) as u64))
}

/// `q^{m(m-1)(n-1)} prod_{i=1}^{m-1} (q^m - q^i)`, the predicted number of
/// block companion matrices with a given irreducible characteristic
/// polynomial.
pub fn nofiber_formula(m: usize, n: usize, q: u64) -> BigUint {
    let qm = big_pow(q, m as u64);
    let prod: BigUint = (1..m).map(|i| &qm - big_pow(q, i as u64)).product();
    big_pow(q, (m * (m - 1) * (n - 1)) as u64) * prod
}

/// `phi(q^{mn} - 1) / (mn)` primitive polynomials times the fiber size.
pub fn pvrc_formula(m: usize, n: usize, q: u64, cfg: &LabConfig) -> Result<BigUint> {
    let d = m * n;
    let group = q
        .checked_pow(d as u32)
        .filter(|&s| s < 1 << 63)
        .ok_or_else(|| LabError::SizeExceeded(format!("{q}^{d}")))?
        - 1;
    let phi = euler_phi(group, cfg.factor_bound)?;
    assert_eq!(phi % d as u64, 0, "phi({group}) not divisible by {d}");
    Ok(BigUint::from(phi / d as u64) * nofiber_formula(m, n, q))
}

/// Number of `(m, n)`-block companion Singer cycles over `field`.
pub fn census_singer(m: usize, n: usize, field: &FieldCtx, method: Method, cfg: &LabConfig) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(LabError::BadArgs("m and n must be positive".into()));
    }
    match method {
        Method::Closed => pvrc_formula(m, n, field.q(), cfg),
        Method::Brute => {
            let total = tuple_count(field, m, n, cfg)?;
            let primitive: HashSet<Vec<u64>> =
                find_irreducibles(field, m * n, IrreducibleFilter::PrimitiveOnly, cfg)?
                    .into_iter()
                    .map(|f| f.coeffs().to_vec())
                    .collect();
            let d = m * n;
            let hits = par::sum_chunks(cfg.exec, total, |range| {
                let mut t = vec![0u64; d * d];
                let mut c0 = vec![0u64; m * m];
                let mut hits = 0;
                for idx in range {
                    if !companion_from_index(field, m, n, idx, &mut t, &mut c0) {
                        continue;
                    }
                    let cp = MatrixFq::from_raw(field, d, d, t.clone()).char_poly().expect("square");
                    if primitive.contains(cp.coeffs()) {
                        hits += 1;
                    }
                }
                hits
            });
            Ok(BigUint::from(hits))
        }
    }
}

/// Number of block companion matrices per characteristic polynomial, indexed
/// by the monic rank of the polynomial.
pub fn fiber_histogram(m: usize, n: usize, field: &FieldCtx, cfg: &LabConfig) -> Result<Vec<u64>> {
    let total = tuple_count(field, m, n, cfg)?;
    let d = m * n;
    let q = field.q();
    let slots = cfg.check_scan(&big_pow(q, d as u64))? as usize;
    let hist = par::reduce_chunks(
        cfg.exec,
        total,
        |range| {
            let mut hist = vec![0u64; slots];
            let mut t = vec![0u64; d * d];
            let mut c0 = vec![0u64; m * m];
            for idx in range {
                companion_from_index(field, m, n, idx, &mut t, &mut c0);
                let cp = MatrixFq::from_raw(field, d, d, t.clone()).char_poly().expect("square");
                hist[monic_rank(&cp, q) as usize] += 1;
            }
            hist
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(hist.unwrap_or_else(|| vec![0; slots]))
}

/// Number of `(m, n)`-block companion matrices with characteristic
/// polynomial `f`.
///
/// `Formula` and `Bridge` describe irreducible `f`; `Bridge` rejects any
/// other `f`.
pub fn fiber_count(f: &Poly, m: usize, n: usize, method: FiberMethod, cfg: &LabConfig) -> Result<BigUint> {
    let d = m * n;
    if m == 0 || n == 0 {
        return Err(LabError::BadArgs("m and n must be positive".into()));
    }
    if !f.is_monic() {
        return Err(LabError::NotMonic);
    }
    if f.degree() != Some(d) {
        return Err(LabError::DimensionMismatch(format!("polynomial degree must be m*n = {d}")));
    }
    let field = f.field();
    match method {
        FiberMethod::Formula => Ok(nofiber_formula(m, n, field.q())),
        FiberMethod::Scan => {
            let total = tuple_count(field, m, n, cfg)?;
            let target = f.coeffs().to_vec();
            let hits = par::sum_chunks(cfg.exec, total, |range| {
                let mut t = vec![0u64; d * d];
                let mut c0 = vec![0u64; m * m];
                let mut hits = 0;
                for idx in range {
                    let invertible = companion_from_index(field, m, n, idx, &mut t, &mut c0);
                    // det T = +-det C_0, so a nonzero constant term needs C_0 invertible
                    if !invertible && target[0] != 0 {
                        continue;
                    }
                    let cp = MatrixFq::from_raw(field, d, d, t.clone()).char_poly().expect("square");
                    if cp.coeffs() == target.as_slice() {
                        hits += 1;
                    }
                }
                hits
            });
            Ok(BigUint::from(hits))
        }
        FiberMethod::Bridge => {
            if !poly::is_irreducible(f)? {
                return Err(LabError::NotIrreducible);
            }
            let tower = build_extension(field, d, Some(f.clone()), false)?;
            let inst = SplitInstance::new(&tower, m, n, None)?;
            let bases = BigUint::from(inst.brute_count(cfg)?) * gl_order(m as u32, field.q());
            let group = BigUint::from(tower.size() - 1);
            assert!((&bases % &group).is_zero(), "N = {bases} not divisible by {group}");
            Ok(bases / group)
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

    fn scalar_rec(field: &FieldCtx, cs: &[u64]) -> BlockRecurrence {
        let coeffs = cs.iter().map(|&c| MatrixFq::new(field, 1, 1, vec![c]).unwrap()).collect();
        BlockRecurrence::new(field, 1, cs.len(), coeffs).unwrap()
    }

    fn state(words: &[&[u64]]) -> RecurrenceState {
        RecurrenceState::from_words(&words.iter().map(|w| w.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn step_and_simulate_examples() {
        let f = f2();
        let rec = scalar_rec(&f, &[1, 1]);
        assert_eq!(rec.step(&state(&[&[0], &[1]])).unwrap(), state(&[&[1], &[1]]));
        assert!(rec.step(&RecurrenceState::zero(1, 2)).unwrap().is_zero());
        let words = rec.simulate(&state(&[&[0], &[1]]), 6).unwrap();
        assert_eq!(words, [[0], [1], [1], [0], [1], [1]]);
        assert!(rec.simulate(&RecurrenceState::zero(1, 2), 4).unwrap().iter().all(|w| w == &[0]));
        let dead = scalar_rec(&f, &[0]);
        assert_eq!(dead.simulate(&state(&[&[1]]), 3).unwrap(), [[1], [0], [0]]);
        assert!(matches!(rec.step(&state(&[&[0]])), Err(LabError::ShapeMismatch(_))));
    }

    #[test]
    fn step_is_right_multiplication_by_block_companion() {
        let cfg = LabConfig::default();
        for (q, m, n) in [(2u64, 1usize, 2usize), (2, 2, 2), (3, 1, 3), (2, 2, 1)] {
            let f = build_field(q, 1).unwrap();
            let total = tuple_count(&f, m, n, &cfg).unwrap();
            for idx in (0..total).step_by((total / 40).max(1) as usize) {
                let rec = BlockRecurrence::from_index(&f, m, n, idx);
                let t = rec.block_companion();
                let t3 = t.pow(3).unwrap();
                for s in (0..q.pow((m * n) as u32)).step_by(3) {
                    let st = RecurrenceState { m, data: MatrixFq::from_index(&f, 1, m * n, s).row(0).to_vec() };
                    let next = rec.step(&st).unwrap();
                    assert_eq!(next.as_row(), t.mul_row(st.as_row()).as_slice());
                    let mut k = st.clone();
                    for _ in 0..3 {
                        k = rec.step(&k).unwrap();
                    }
                    assert_eq!(k.as_row(), t3.mul_row(st.as_row()).as_slice());
                }
            }
        }
    }

    #[test]
    fn block_companion_examples() {
        let f = f2();
        let rec = scalar_rec(&f, &[1, 0]);
        assert_eq!(rec.block_companion().to_literal(), "0,1;1,0");
        let c = MatrixFq::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let single = BlockRecurrence::new(&f, 2, 1, vec![c.clone()]).unwrap();
        assert_eq!(single.block_companion(), c);
        let rec = BlockRecurrence::new(&f, 2, 2, vec![MatrixFq::identity(&f, 2), MatrixFq::zeros(&f, 2, 2)]).unwrap();
        assert_eq!(rec.block_companion().to_literal(), "0,0,1,0;0,0,0,1;1,0,0,0;0,1,0,0");
    }

    #[test]
    fn period_examples() {
        let cfg = LabConfig::default();
        let f = f2();
        let rec = scalar_rec(&f, &[1, 1]);
        assert_eq!(
            rec.period_preperiod(&state(&[&[0], &[1]]), &cfg).unwrap(),
            PeriodReport { preperiod: 0, period: 3 }
        );
        assert_eq!(
            rec.period_preperiod(&RecurrenceState::zero(1, 2), &cfg).unwrap(),
            PeriodReport { preperiod: 0, period: 1 }
        );
        let dead = scalar_rec(&f, &[0]);
        assert_eq!(dead.period_preperiod(&state(&[&[1]]), &cfg).unwrap(), PeriodReport { preperiod: 1, period: 1 });
        let tight = LabConfig { iteration_bound: 3, ..LabConfig::default() };
        assert!(matches!(rec.period_preperiod(&state(&[&[0], &[1]]), &tight), Err(LabError::IterationBoundExceeded(_))));
    }

    #[test]
    fn brent_agrees_with_hashing() {
        for (q, m, n) in [(2u64, 1usize, 3usize), (2, 2, 2), (3, 1, 2)] {
            let f = build_field(q, 1).unwrap();
            let total = q.pow((m * m * n) as u32);
            for idx in 0..total.min(300) {
                let rec = BlockRecurrence::from_index(&f, m, n, idx);
                for s in 0..q.pow((m * n) as u32) {
                    let st = RecurrenceState { m, data: MatrixFq::from_index(&f, 1, m * n, s).row(0).to_vec() };
                    let a = rec.period_by_hashing(&st, usize::MAX).unwrap();
                    assert_eq!(a, rec.period_by_brent(&st));
                    assert_eq!(rec.period_by_hashing(&st, 1).map(|_| ()), if a.preperiod + a.period <= 1 { Some(()) } else { None });
                }
            }
        }
    }

    #[test]
    fn orbits_purely_periodic_iff_invertible() {
        let cfg = LabConfig::default();
        for (q, m, n) in [(2u64, 1usize, 3usize), (2, 2, 2), (3, 1, 2), (2, 1, 4)] {
            let f = build_field(q, 1).unwrap();
            for idx in 0..q.pow((m * m * n) as u32) {
                let rec = BlockRecurrence::from_index(&f, m, n, idx);
                let all_periodic = (0..q.pow((m * n) as u32)).all(|s| {
                    let st = RecurrenceState { m, data: MatrixFq::from_index(&f, 1, m * n, s).row(0).to_vec() };
                    rec.period_preperiod(&st, &cfg).unwrap().periodic()
                });
                assert_eq!(all_periodic, rec.is_invertible(), "{:?}", rec.coeffs());
            }
        }
    }

    #[test]
    fn primitive_examples() {
        let cfg = LabConfig::default();
        let f = f2();
        for mode in [PrimitivityMode::Order, PrimitivityMode::Definitional] {
            assert!(scalar_rec(&f, &[1, 1]).is_primitive(mode, &cfg).unwrap());
            assert!(!scalar_rec(&f, &[1, 0]).is_primitive(mode, &cfg).unwrap());
            assert!(!scalar_rec(&f, &[0, 1]).is_primitive(mode, &cfg).unwrap());
        }
    }

    #[test]
    fn primitivity_modes_agree() {
        let cfg = LabConfig::default();
        for (q, m, n) in [(2u64, 2usize, 2usize), (3, 1, 3), (2, 1, 4), (3, 2, 1)] {
            let f = build_field(q, 1).unwrap();
            for idx in 0..q.pow((m * m * n) as u32) {
                let rec = BlockRecurrence::from_index(&f, m, n, idx);
                let order = rec.is_primitive(PrimitivityMode::Order, &cfg).unwrap();
                let def = rec.is_primitive(PrimitivityMode::Definitional, &cfg).unwrap();
                assert_eq!(order, def, "{:?}", rec.coeffs());
                // every nonzero state has the full period
                if order && q.pow((m * n) as u32) <= 81 {
                    for s in 1..q.pow((m * n) as u32) {
                        let st = RecurrenceState { m, data: MatrixFq::from_index(&f, 1, m * n, s).row(0).to_vec() };
                        let p = rec.period_preperiod(&st, &cfg).unwrap();
                        assert_eq!(p.period, q.pow((m * n) as u32) - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn singer_cycle_matches_order_iteration() {
        let cfg = LabConfig::default();
        let f = f2();
        for idx in (0..1u64 << 16).step_by(37) {
            let t = MatrixFq::from_index(&f, 4, 4, idx);
            let expect = t.is_invertible() && t.order(&cfg).unwrap() == 15;
            assert_eq!(is_singer_cycle(&t, &cfg).unwrap(), expect);
        }
    }

    #[test]
    fn census_examples() {
        let cfg = LabConfig::default();
        let f = f2();
        for (m, n, expect) in [(1, 2, 1u32), (2, 1, 2), (2, 2, 16)] {
            assert_eq!(census_singer(m, n, &f, Method::Brute, &cfg).unwrap(), BigUint::from(expect));
            assert_eq!(census_singer(m, n, &f, Method::Closed, &cfg).unwrap(), BigUint::from(expect));
        }
        // census by definitional primitivity over all tuples
        let defn = (0..256u64)
            .filter(|&i| BlockRecurrence::from_index(&f, 2, 2, i).is_primitive(PrimitivityMode::Definitional, &cfg).unwrap())
            .count();
        assert_eq!(defn, 16);
        let f3 = build_field(3, 1).unwrap();
        for (m, n) in [(1, 2), (1, 3), (2, 1)] {
            assert_eq!(
                census_singer(m, n, &f3, Method::Brute, &cfg).unwrap(),
                census_singer(m, n, &f3, Method::Closed, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn formula_examples() {
        let cfg = LabConfig::default();
        let big = |v: u32| BigUint::from(v);
        assert_eq!(pvrc_formula(1, 2, 2, &cfg).unwrap(), big(1));
        assert_eq!(nofiber_formula(1, 2, 2), big(1));
        assert_eq!(nofiber_formula(2, 2, 2), big(8));
        assert_eq!(nofiber_formula(2, 1, 3), big(6));
        assert_eq!(nofiber_formula(3, 1, 2), big(6 * 4));
    }

    #[test]
    fn fiber_examples() {
        let cfg = LabConfig::default();
        let f = f2();
        let p = |c: &[u64]| Poly::new(&f, c.to_vec()).unwrap();
        let big = |v: u32| BigUint::from(v);
        assert_eq!(fiber_count(&p(&[1, 1, 1]), 2, 1, FiberMethod::Scan, &cfg).unwrap(), big(2));
        assert_eq!(fiber_count(&p(&[1, 1, 1]), 2, 1, FiberMethod::Formula, &cfg).unwrap(), big(2));
        for f4 in [&[1, 1, 0, 0, 1][..], &[1, 0, 0, 1, 1], &[1, 1, 1, 1, 1]] {
            for method in [FiberMethod::Scan, FiberMethod::Formula, FiberMethod::Bridge] {
                assert_eq!(fiber_count(&p(f4), 2, 2, method, &cfg).unwrap(), big(8), "{f4:?} {method:?}");
            }
        }
        assert_eq!(fiber_count(&p(&[1, 0, 1, 0, 1]), 2, 2, FiberMethod::Bridge, &cfg).unwrap_err(), LabError::NotIrreducible);
        let nonmonic = Poly::new(&build_field(3, 1).unwrap(), vec![1, 0, 2]).unwrap();
        assert_eq!(fiber_count(&nonmonic, 2, 1, FiberMethod::Scan, &cfg).unwrap_err(), LabError::NotMonic);
    }

    #[test]
    fn fiber_partition_and_surjectivity() {
        let cfg = LabConfig::default();
        let f = f2();
        let hist = fiber_histogram(2, 2, &f, &cfg).unwrap();
        assert_eq!(hist.iter().sum::<u64>(), 256);
        for g in find_irreducibles(&f, 4, IrreducibleFilter::All, &cfg).unwrap() {
            let r = monic_rank(&g, 2) as usize;
            assert_eq!(hist[r], 8);
            assert_eq!(BigUint::from(hist[r]), fiber_count(&g, 2, 2, FiberMethod::Scan, &cfg).unwrap());
        }
        let f3 = build_field(3, 1).unwrap();
        let hist = fiber_histogram(2, 1, &f3, &cfg).unwrap();
        assert_eq!(hist.iter().sum::<u64>(), 81);
        for g in find_irreducibles(&f3, 2, IrreducibleFilter::All, &cfg).unwrap() {
            assert_eq!(BigUint::from(hist[monic_rank(&g, 3) as usize]), nofiber_formula(2, 1, 3));
        }
        assert_eq!(hist, fiber_histogram(2, 1, &f3, &cfg.sequential()).unwrap());
    }

    #[test]
    fn scalar_companion_char_poly() {
        let f = f2();
        for n in 1..=3usize {
            for idx in 0..1u64 << n {
                let rec = BlockRecurrence::from_index(&f, 1, n, idx);
                let cs: Vec<u64> = rec.coeffs().iter().map(|c| c.get(0, 0)).collect();
                let mut expect = cs.iter().map(|&c| f.neg(c)).collect::<Vec<_>>();
                expect.push(1);
                assert_eq!(rec.block_companion().char_poly().unwrap().coeffs(), expect.as_slice());
            }
        }
    }
}
