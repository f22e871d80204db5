//! Splitting subspaces of `F_{q^{mn}}` over `F_q`.
//!
//! An `m`-dimensional subspace `W` is split by an endomorphism `T` when
//! `W, T(W), ..., T^{n-1}(W)` together span the whole `mn`-dimensional space.
//! Every predicate here reduces to one rank computation on the stacked rows
//! `w_i T^j`; for `q = 2` and `mn <= 64` the rows are bit-packed.

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::FieldCtx;
use crate::linalg::{gaussian_binomial, gf2, gl_order, rank_in_place, MatrixFq, SubspaceBasis, SubspaceSpace};
use crate::numtheory::big_pow;
use crate::outcome::{Status, Verdict};
use crate::par;
use crate::poly::{q_totient, Method, Poly};
use crate::tower::{FieldElement, TowerCtx};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Base points beyond this field size are sampled rather than exhausted.
pub const POINTED_EXHAUSTIVE_LIMIT: u64 = 4096;
/// Number of sampled base points for larger fields.
pub const POINTED_SAMPLES: usize = 64;

/// Rank test for `W + WT + ... + WT^{n-1}`.
#[derive(Debug, Clone)]
pub(crate) struct SplitKernel {
    field: FieldCtx,
    m: usize,
    n: usize,
    d: usize,
    t: MatrixFq,
    packed: Option<Vec<u64>>,
}

impl SplitKernel {
    pub(crate) fn new(t: MatrixFq, m: usize, n: usize) -> Result<Self> {
        let d = m * n;
        if !t.is_square() || t.rows() != d {
            return Err(LabError::DimensionMismatch(format!(
                "endomorphism must be {d}x{d}, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        let field = t.field().clone();
        let packed = (field.q() == 2 && d <= 64).then(|| (0..d).map(|i| gf2::pack(t.row(i))).collect());
        Ok(SplitKernel { field, m, n, d, t, packed })
    }

    /// `rows` holds `m` vectors of length `mn`, row-major. `scratch` is reused
    /// across calls to avoid allocation in scan loops.
    pub(crate) fn splits(&self, rows: &[u64], scratch: &mut Vec<u64>) -> bool {
        let (m, n, d) = (self.m, self.n, self.d);
        if let Some(tp) = &self.packed {
            let mut stack = [0u64; 64];
            let mut k = 0;
            for i in 0..m {
                let mut v = gf2::pack(&rows[i * d..(i + 1) * d]);
                for j in 0..n {
                    stack[k] = v;
                    k += 1;
                    if j + 1 < n {
                        v = gf2::mul_row(v, tp);
                    }
                }
            }
            return gf2::rank(&mut stack[..d]) == d;
        }
        let f = &self.field;
        scratch.clear();
        scratch.resize(d * d, 0);
        for i in 0..m {
            let base = i * n * d;
            scratch[base..base + d].copy_from_slice(&rows[i * d..(i + 1) * d]);
            for j in 1..n {
                let (done, rest) = scratch.split_at_mut(base + j * d);
                let prev = &done[base + (j - 1) * d..];
                let out = &mut rest[..d];
                for (k, &c) in prev.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (o, &t) in out.iter_mut().zip(self.t.row(k)) {
                        *o = f.add(*o, f.mul(c, t));
                    }
                }
            }
        }
        rank_in_place(f, scratch, d, d) == d
    }

    fn check_subspace(&self, w: &SubspaceBasis) -> Result<()> {
        if w.field() != &self.field {
            return Err(LabError::ContextMismatch);
        }
        if w.ambient() != self.d || w.dim() != self.m {
            return Err(LabError::DimensionMismatch(format!(
                "expected a {}-dimensional subspace of F_q^{}, got dimension {} in F_q^{}",
                self.m,
                self.d,
                w.dim(),
                w.ambient()
            )));
        }
        Ok(())
    }

    fn test(&self, w: &SubspaceBasis) -> Result<bool> {
        self.check_subspace(w)?;
        Ok(self.splits(w.basis().data(), &mut Vec::new()))
    }

    /// Number of `m`-dimensional subspaces accepted by `keep` that split.
    fn count_where<P>(&self, cfg: &LabConfig, keep: P) -> Result<u64>
    where
        P: Fn(&[u64]) -> bool + Sync + Send,
    {
        let space = SubspaceSpace::new(&self.field, self.d, self.m, cfg)?;
        let width = self.m * self.d;
        Ok(par::sum_chunks(cfg.exec, space.len(), |range| {
            let mut buf = vec![0u64; width];
            let mut scratch = Vec::new();
            let mut hits = 0;
            for r in range {
                space.fill_rows(r, &mut buf);
                if keep(&buf) && self.splits(&buf, &mut scratch) {
                    hits += 1;
                }
            }
            hits
        }))
    }

    fn count(&self, cfg: &LabConfig) -> Result<u64> {
        self.count_where(cfg, |_| true)
    }

    fn witnesses(&self, cfg: &LabConfig) -> Result<Vec<SubspaceBasis>> {
        let space = SubspaceSpace::new(&self.field, self.d, self.m, cfg)?;
        let width = self.m * self.d;
        Ok(par::collect_chunks(cfg.exec, space.len(), |range| {
            let mut buf = vec![0u64; width];
            let mut scratch = Vec::new();
            let mut out = Vec::new();
            for r in range {
                space.fill_rows(r, &mut buf);
                if self.splits(&buf, &mut scratch) {
                    out.push(space.get(r));
                }
            }
            out
        }))
    }
}

/// A tower `F_{q^{mn}}` with block shape `(m, n)` and a generator `alpha`.
#[derive(Debug, Clone)]
pub struct SplitInstance {
    tower: TowerCtx,
    m: usize,
    n: usize,
    alpha: FieldElement,
    kernel: SplitKernel,
}

impl SplitInstance {
    /// Rejects towers of degree other than `mn` and elements that do not
    /// generate the extension. `alpha` defaults to the class of `x`.
    pub fn new(tower: &TowerCtx, m: usize, n: usize, alpha: Option<FieldElement>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(LabError::BadArgs("m and n must be positive".into()));
        }
        if tower.degree() != m * n {
            return Err(LabError::DimensionMismatch(format!(
                "tower degree {} is not m*n = {}",
                tower.degree(),
                m * n
            )));
        }
        let alpha = match alpha {
            Some(a) => {
                tower.check(&a)?;
                a
            }
            None => tower.alpha(),
        };
        if !tower.generates(&alpha)? {
            return Err(LabError::NotGenerator);
        }
        let kernel = SplitKernel::new(tower.mul_matrix(&alpha)?, m, n)?;
        Ok(SplitInstance { tower: tower.clone(), m, n, alpha, kernel })
    }

    pub fn tower(&self) -> &TowerCtx {
        &self.tower
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.tower.base().q()
    }
    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    /// Same tower and shape with a different generator.
    pub fn with_alpha(&self, alpha: FieldElement) -> Result<Self> {
        SplitInstance::new(&self.tower, self.m, self.n, Some(alpha))
    }

    pub fn is_alpha_splitting(&self, w: &SubspaceBasis) -> Result<bool> {
        self.kernel.test(w)
    }

    /// Exhaustive count `S(alpha, m, n; q)` over all `m`-dimensional subspaces.
    pub fn brute_count(&self, cfg: &LabConfig) -> Result<u64> {
        self.kernel.count(cfg)
    }

    /// Every splitting subspace, in enumeration order.
    pub fn splitting_subspaces(&self, cfg: &LabConfig) -> Result<Vec<SubspaceBasis>> {
        self.kernel.witnesses(cfg)
    }

    pub fn count_splitting(&self, cfg: &LabConfig) -> Result<SplitCountReport> {
        let start = Instant::now();
        let brute = BigUint::from(self.brute_count(cfg)?);
        let formula = ssc_formula(self.q(), self.m, self.n);
        Ok(SplitCountReport {
            q: self.q(),
            m: self.m,
            n: self.n,
            defining_poly: self.tower.defining_poly().to_literal(),
            alpha: self.alpha.coords().to_vec(),
            verdict: Verdict::compare(&brute, Some(&formula)),
            brute: Some(brute),
            formula: Some(formula),
            status: Status::for_block(self.m, self.n),
            seconds: start.elapsed().as_secs_f64(),
        })
    }

    /// Number of splitting subspaces containing the nonzero element `x`.
    pub fn count_pointed(&self, x: &FieldElement, cfg: &LabConfig) -> Result<u64> {
        self.tower.check(x)?;
        if x.is_zero() {
            return Err(LabError::ZeroBasePoint);
        }
        let d = self.tower.degree();
        let field = self.tower.base().clone();
        let xs = x.coords().to_vec();
        self.kernel.count_where(cfg, move |rows| {
            let mut data = Vec::with_capacity(rows.len() + d);
            data.extend_from_slice(rows);
            data.extend_from_slice(&xs);
            let k = rows.len() / d;
            rank_in_place(&field, &mut data, k + 1, d) == k
        })
    }

    /// Counts splitting subspaces through each base point and checks that the
    /// count is the same for every point and consistent with the total.
    ///
    /// All nonzero points are used when `q^{mn} <= 4096`; otherwise a sample
    /// drawn from `seed`.
    pub fn pointed_consistency(&self, seed: u64, cfg: &LabConfig) -> Result<PointedReport> {
        let witnesses = self.splitting_subspaces(cfg)?;
        let size = self.tower.size();
        let (points, exhaustive) = if size <= POINTED_EXHAUSTIVE_LIMIT {
            ((1..size).collect::<Vec<u64>>(), true)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let len = usize::try_from(size - 1).unwrap_or(usize::MAX);
            let mut pts: Vec<u64> =
                sample(&mut rng, len, POINTED_SAMPLES.min(len)).into_iter().map(|i| i as u64 + 1).collect();
            pts.sort_unstable();
            (pts, false)
        };
        let counts = if exhaustive {
            let mut hist = vec![0u64; size as usize];
            for w in &witnesses {
                for v in w.vectors() {
                    hist[self.tower.index_of(&self.tower.from_coords(v)?) as usize] += 1;
                }
            }
            points.iter().map(|&i| (i, hist[i as usize])).collect()
        } else {
            par::map(cfg.exec, &points, |&i| {
                let x = self.tower.element_at(i);
                (i, witnesses.iter().filter(|w| w.contains(x.coords())).count() as u64)
            })
        };
        let total = witnesses.len() as u64;
        let pointed = counts.first().map(|&(_, c)| c).unwrap_or(0);
        let uniform = counts.iter().all(|&(_, c)| c == pointed);
        let lhs = BigUint::from(total) * (big_pow(self.q(), self.m as u64) - 1u32);
        let rhs = BigUint::from(pointed) * (BigUint::from(size) - 1u32);
        Ok(PointedReport { total, pointed, counts, exhaustive, uniform, identity_holds: lhs == rhs })
    }

    /// `N(alpha, m, n; q)`, the number of splitting ordered bases, both as
    /// `S * |GL_m(F_q)|` and, when `q^{m * mn}` fits the scan bound, by a
    /// direct scan of ordered `m`-tuples.
    pub fn count_splitting_bases(&self, cfg: &LabConfig) -> Result<BasesReport> {
        let s = self.brute_count(cfg)?;
        let product = BigUint::from(s) * gl_order(self.m as u32, self.q());
        let d = self.tower.degree();
        let width = self.m * d;
        let direct = match cfg.check_scan(&big_pow(self.q(), width as u64)) {
            Ok(total) => {
                let q = self.q();
                Some(par::sum_chunks(cfg.exec, total, |range| {
                    let mut buf = vec![0u64; width];
                    let mut scratch = Vec::new();
                    let mut hits = 0;
                    for mut idx in range {
                        for c in buf.iter_mut() {
                            *c = idx % q;
                            idx /= q;
                        }
                        if self.kernel.splits(&buf, &mut scratch) {
                            hits += 1;
                        }
                    }
                    hits
                }))
            }
            Err(LabError::ScanBoundExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(BasesReport { splitting: s, product, direct })
    }

    /// Compares the count for `alpha` with the count for the Moebius image
    /// `beta = (a alpha^{q^r} + b) / (c alpha^{q^r} + d)`.
    pub fn weak_ssc_check(&self, coeffs: [u64; 4], r: u64, cfg: &LabConfig) -> Result<WeakSscReport> {
        let [a, b, c, d] = coeffs;
        let f = self.tower.base();
        for &v in &coeffs {
            f.check(v)?;
        }
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0 {
            return Err(LabError::SingularMoebius);
        }
        let t = &self.tower;
        let conj = t.base_frobenius(&self.alpha, r)?;
        let num = t.add(&t.mul(&t.from_base(a), &conj)?, &t.from_base(b))?;
        let den = t.add(&t.mul(&t.from_base(c), &conj)?, &t.from_base(d))?;
        if den.is_zero() {
            return Err(LabError::ZeroDenominator);
        }
        let beta = t.div(&num, &den)?;
        let other = self.with_alpha(beta.clone())?;
        let s_alpha = self.brute_count(cfg)?;
        let s_beta = other.brute_count(cfg)?;
        Ok(WeakSscReport { beta: beta.coords().to_vec(), s_alpha, s_beta, matches: s_alpha == s_beta })
    }
}

/// Brute count against the closed form for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCountReport {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub defining_poly: String,
    pub alpha: Vec<u64>,
    pub brute: Option<BigUint>,
    pub formula: Option<BigUint>,
    pub status: Status,
    pub verdict: Verdict,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedReport {
    /// Number of splitting subspaces.
    pub total: u64,
    /// Count through the first examined base point.
    pub pointed: u64,
    /// `(tower index of x, count through x)` for every examined point.
    pub counts: Vec<(u64, u64)>,
    pub exhaustive: bool,
    pub uniform: bool,
    /// `S (q^m - 1) = pointed (q^{mn} - 1)`.
    pub identity_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasesReport {
    pub splitting: u64,
    pub product: BigUint,
    pub direct: Option<u64>,
}

impl BasesReport {
    pub fn consistent(&self) -> bool {
        self.direct.is_none_or(|d| BigUint::from(d) == self.product)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSscReport {
    pub beta: Vec<u64>,
    pub s_alpha: u64,
    pub s_beta: u64,
    pub matches: bool,
}

/// `(q^{mn} - 1) / (q^m - 1) * q^{m(m-1)(n-1)}`.
pub fn ssc_formula(q: u64, m: usize, n: usize) -> BigUint {
    splitting_lower_bound(q, m, n) * big_pow(q, (m * m.saturating_sub(1) * n.saturating_sub(1)) as u64)
}

/// `(q^{mn} - 1) / (q^m - 1)`, the number of distinct translates `beta L`.
pub fn splitting_lower_bound(q: u64, m: usize, n: usize) -> BigUint {
    (big_pow(q, (m * n) as u64) - 1u32) / (big_pow(q, m as u64) - 1u32)
}

/// `(q^{2n} - q^{2n-1}) (q^{2n} - 1)`, the number of splitting ordered bases
/// for `m = 2`.
pub fn nobases_formula(q: u64, n: usize) -> BigUint {
    let top = big_pow(q, 2 * n as u64);
    (&top - big_pow(q, 2 * n as u64 - 1)) * (top - 1u32)
}

/// Splitting count at `(q, 2, 2)` obtained by removing from all planes the
/// non-splitting ones, which are exactly the planes `L + alpha^{-1} L` for a
/// line `L`.
pub fn m2n2_identity(q: u64) -> BigUint {
    gaussian_binomial(4, 2, q).unwrap() - gaussian_binomial(4, 1, q).unwrap()
}

pub fn is_t_splitting(t: &MatrixFq, w: &SubspaceBasis, m: usize, n: usize) -> Result<bool> {
    SplitKernel::new(t.clone(), m, n)?.test(w)
}

/// Exhaustive count of `m`-dimensional `T`-splitting subspaces.
pub fn count_t_splitting(t: &MatrixFq, m: usize, n: usize, cfg: &LabConfig) -> Result<u64> {
    SplitKernel::new(t.clone(), m, n)?.count(cfg)
}

/// Predicted number of `T`-splitting lines, `Phi_q(p_T) / (q - 1)`, where
/// `p_T` is the characteristic polynomial of a cyclic `T`.
pub fn endo_formula(p_t: &Poly, cfg: &LabConfig) -> Result<BigUint> {
    if p_t.degree().is_none_or(|k| k == 0) {
        return Err(LabError::DegreeZero);
    }
    if !p_t.is_monic() {
        return Err(LabError::NotMonic);
    }
    let phi = q_totient(p_t, Method::Closed, cfg)?;
    let qm1 = BigUint::from(p_t.field().q() - 1);
    assert!((&phi % &qm1).is_zero(), "q-totient {phi} not divisible by q - 1");
    Ok(phi / qm1)
}

/// `S(beta, m, n; q)` for every generator `beta` of the tower, in index order.
pub fn generator_sweep(tower: &TowerCtx, m: usize, n: usize, cfg: &LabConfig) -> Result<Vec<(u64, u64)>> {
    cfg.check_scan(&BigUint::from(tower.size()))?;
    let mut out = Vec::new();
    for i in 1..tower.size() {
        let beta = tower.element_at(i);
        if !tower.generates(&beta)? {
            continue;
        }
        out.push((i, SplitInstance::new(tower, m, n, Some(beta))?.brute_count(cfg)?));
    }
    Ok(out)
}
