//! Named statements checked by exhaustive computation over parameter grids.

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::field::{build_field, FieldCtx};
use crate::lfsr::{census_singer, fiber_histogram, nofiber_formula, pvrc_formula, BlockRecurrence, PrimitivityMode};
use crate::linalg::{companion, count_nilpotent, gl_order};
use crate::literal::prime_power;
use crate::numtheory::big_pow;
use crate::outcome::{Status, Verdict};
use crate::par;
use crate::poly::{coprime_pair_count, coprime_recursion_holds, find_irreducibles, monic_polys, IrreducibleFilter, Method};
use crate::splitting::{
    count_t_splitting, endo_formula, m2n2_identity, nobases_formula, splitting_lower_bound, ssc_formula, SplitInstance,
};
use crate::tower::build_extension;
use num_bigint::BigUint;
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub const SCHEMA: &str = "splitlab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementId {
    Ssc,
    Pssc,
    LowerBound,
    M2Theorem,
    SplitAndBases,
    NoBases,
    GenBb,
    ElemSplit,
    WeakSsc,
    EndoSsc,
    Nilpotent,
    Pvrc,
    Bcscc,
    Pfc,
    Ifc,
    Chain,
}

impl StatementId {
    pub const ALL: [StatementId; 16] = [
        StatementId::Ssc,
        StatementId::Pssc,
        StatementId::LowerBound,
        StatementId::M2Theorem,
        StatementId::SplitAndBases,
        StatementId::NoBases,
        StatementId::GenBb,
        StatementId::ElemSplit,
        StatementId::WeakSsc,
        StatementId::EndoSsc,
        StatementId::Nilpotent,
        StatementId::Pvrc,
        StatementId::Bcscc,
        StatementId::Pfc,
        StatementId::Ifc,
        StatementId::Chain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::Ssc => "SSC",
            StatementId::Pssc => "PSSC",
            StatementId::LowerBound => "LOWER_BOUND",
            StatementId::M2Theorem => "M2_THEOREM",
            StatementId::SplitAndBases => "SPLITANDBASES",
            StatementId::NoBases => "NOBASES",
            StatementId::GenBb => "GENBB",
            StatementId::ElemSplit => "ELEMSPLIT",
            StatementId::WeakSsc => "WEAK_SSC",
            StatementId::EndoSsc => "ENDO_SSC",
            StatementId::Nilpotent => "NILPOTENT",
            StatementId::Pvrc => "PVRC",
            StatementId::Bcscc => "BCSCC",
            StatementId::Pfc => "PFC",
            StatementId::Ifc => "IFC",
            StatementId::Chain => "CHAIN",
        }
    }

    /// Names of the grid coordinates, in grid order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            StatementId::M2Theorem | StatementId::NoBases | StatementId::EndoSsc => &["q", "n"],
            StatementId::GenBb => &["q", "N1", "N2"],
            StatementId::Nilpotent => &["m", "q"],
            _ => &["q", "m", "n"],
        }
    }

    pub fn default_grid(self) -> Vec<Vec<u64>> {
        let g: &[&[u64]] = match self {
            StatementId::Ssc | StatementId::LowerBound => {
                &[&[2, 1, 2], &[2, 2, 1], &[2, 2, 2], &[3, 2, 2], &[2, 2, 3], &[4, 2, 2], &[2, 1, 4], &[2, 3, 2]]
            }
            StatementId::Pssc => &[&[2, 1, 3], &[2, 2, 1], &[2, 2, 2], &[3, 2, 2], &[2, 2, 3], &[2, 3, 2]],
            StatementId::M2Theorem => &[&[2, 1], &[2, 2], &[3, 2], &[2, 3], &[4, 2]],
            StatementId::SplitAndBases => &[&[2, 1, 1], &[2, 1, 2], &[2, 2, 2], &[3, 1, 2], &[3, 2, 2], &[2, 2, 3]],
            StatementId::NoBases => &[&[2, 1], &[2, 2], &[3, 2], &[2, 3]],
            StatementId::GenBb => {
                return [2u64, 3]
                    .into_iter()
                    .flat_map(|q| (1..=4u64).flat_map(move |a| (1..=a).map(move |b| vec![q, a, b])))
                    .collect()
            }
            StatementId::ElemSplit => &[&[2, 1, 2], &[2, 2, 1], &[2, 2, 2], &[3, 2, 2], &[2, 2, 3]],
            StatementId::WeakSsc => &[&[2, 2, 2], &[3, 2, 2], &[2, 1, 3], &[2, 2, 3]],
            StatementId::EndoSsc => &[&[2, 1], &[2, 2], &[2, 3], &[3, 2], &[3, 3], &[2, 4]],
            StatementId::Nilpotent => &[&[2, 2], &[2, 3], &[3, 2], &[1, 5], &[2, 5]],
            StatementId::Pvrc => &[&[2, 1, 2], &[2, 1, 3], &[2, 2, 2], &[3, 1, 2], &[3, 2, 1], &[2, 3, 1]],
            StatementId::Bcscc | StatementId::Pfc | StatementId::Ifc => {
                &[&[2, 1, 2], &[2, 1, 4], &[2, 2, 1], &[2, 2, 2], &[3, 2, 1], &[2, 3, 1], &[2, 3, 2]]
            }
            StatementId::Chain => &[&[2, 1, 2], &[2, 2, 2], &[3, 2, 1], &[2, 3, 1], &[2, 3, 2]],
        };
        g.iter().map(|p| p.to_vec()).collect()
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == key)
            .ok_or_else(|| LabError::UnknownStatement(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct VerificationJob {
    pub statement: StatementId,
    pub grid: Vec<Vec<u64>>,
    pub cfg: LabConfig,
    pub seed: u64,
    /// Wall-clock seconds are recorded only when set; otherwise they are
    /// reported as zero so output is reproducible byte for byte.
    pub record_timings: bool,
}

impl VerificationJob {
    pub fn new(statement: StatementId) -> Self {
        VerificationJob {
            statement,
            grid: statement.default_grid(),
            cfg: LabConfig::default(),
            seed: 0,
            record_timings: false,
        }
    }

    pub fn with_grid(mut self, grid: Vec<Vec<u64>>) -> Self {
        self.grid = grid;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub params: Vec<u64>,
    pub brute: Option<BigUint>,
    pub formula: Option<BigUint>,
    pub status: Status,
    pub verdict: Verdict,
    pub note: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub points: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub skipped: usize,
    pub unavailable: usize,
    pub proved_mismatches: usize,
    pub conjectural_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobVerdict {
    pub statement: StatementId,
    pub seed: u64,
    pub scan_bound: u64,
    pub points: Vec<PointResult>,
    pub summary: Summary,
    pub seconds: f64,
}

impl JobVerdict {
    pub fn param_names(&self) -> &'static [&'static str] {
        self.statement.params()
    }

    /// 0 when nothing mismatches, 1 when a proved statement mismatches,
    /// 2 when only conjectural statements mismatch.
    pub fn exit_code(&self) -> i32 {
        if self.summary.proved_mismatches > 0 {
            1
        } else if self.summary.conjectural_mismatches > 0 {
            2
        } else {
            0
        }
    }
}

fn summarize(points: &[PointResult]) -> Summary {
    let mut s = Summary { points: points.len(), ..Summary::default() };
    for p in points {
        match p.verdict {
            Verdict::Match => s.matched += 1,
            Verdict::Mismatch => {
                s.mismatched += 1;
                match p.status {
                    Status::Proved => s.proved_mismatches += 1,
                    Status::Conjectural => s.conjectural_mismatches += 1,
                }
            }
            Verdict::Skipped => s.skipped += 1,
            Verdict::FormulaUnavailable => s.unavailable += 1,
        }
    }
    s
}

/// Outcome of one statement at one point before timing and status are added.
struct Eval {
    brute: Option<BigUint>,
    formula: Option<BigUint>,
    /// Overrides plain equality of `brute` and `formula`.
    holds: Option<bool>,
    note: String,
}

impl Eval {
    fn compare(brute: impl Into<BigUint>, formula: impl Into<BigUint>) -> Self {
        Eval { brute: Some(brute.into()), formula: Some(formula.into()), holds: None, note: String::new() }
    }

    fn with(mut self, holds: bool, note: impl Into<String>) -> Self {
        self.holds = Some(self.holds.unwrap_or(true) && holds);
        self.note = note.into();
        self
    }

    fn verdict(&self) -> Verdict {
        match self.holds {
            Some(true) if self.brute.is_some() => Verdict::Match,
            Some(false) => Verdict::Mismatch,
            _ => Verdict::compare(self.brute.as_ref().unwrap_or(&BigUint::zero()), self.formula.as_ref()),
        }
    }
}

fn is_bound_error(e: &LabError) -> bool {
    matches!(
        e,
        LabError::ScanBoundExceeded { .. }
            | LabError::FactorBoundExceeded { .. }
            | LabError::IterationBoundExceeded(_)
            | LabError::SizeExceeded(_)
            | LabError::FactorSearchExceeded(_)
    )
}

pub fn field_of_order(q: u64) -> Result<FieldCtx> {
    let (p, e) = prime_power(q)?;
    build_field(p, e)
}

fn usize_param(v: u64, name: &str) -> Result<usize> {
    if v == 0 || v > 64 {
        return Err(LabError::BadArgs(format!("{name} = {v} must be in 1..=64")));
    }
    Ok(v as usize)
}

/// The default instance: base field of order `q`, tower by the least
/// irreducible polynomial of degree `mn`, generator the class of `x`.
pub fn default_instance(q: u64, m: usize, n: usize) -> Result<SplitInstance> {
    let field = field_of_order(q)?;
    let tower = build_extension(&field, m * n, None, false)?;
    SplitInstance::new(&tower, m, n, None)
}

fn status_of(id: StatementId, params: &[u64]) -> Status {
    match id {
        StatementId::Ssc
        | StatementId::Pssc
        | StatementId::Pvrc
        | StatementId::Bcscc
        | StatementId::Pfc
        | StatementId::Ifc
        | StatementId::Chain => Status::for_block(params[1] as usize, params[2] as usize),
        _ => Status::Proved,
    }
}

pub fn verify(job: &VerificationJob) -> Result<JobVerdict> {
    let start = Instant::now();
    let id = job.statement;
    let arity = id.params().len();
    let mut grid = job.grid.clone();
    grid.sort();
    grid.dedup();
    let mut points = Vec::with_capacity(grid.len());
    for params in grid {
        if params.len() != arity {
            return Err(LabError::BadArgs(format!(
                "{id} grid points have {arity} entries ({}), got {params:?}",
                id.params().join(",")
            )));
        }
        let t0 = Instant::now();
        let status = status_of(id, &params);
        let (brute, formula, verdict, note) = match evaluate(id, &params, job) {
            Ok(e) => {
                let v = e.verdict();
                (e.brute, e.formula, v, e.note)
            }
            Err(e) if is_bound_error(&e) => (None, None, Verdict::Skipped, e.to_string()),
            Err(e) => return Err(e),
        };
        let seconds = if job.record_timings { t0.elapsed().as_secs_f64() } else { 0.0 };
        points.push(PointResult { params, brute, formula, status, verdict, note, seconds });
    }
    let summary = summarize(&points);
    Ok(JobVerdict {
        statement: id,
        seed: job.seed,
        scan_bound: job.cfg.scan_bound,
        points,
        summary,
        seconds: if job.record_timings { start.elapsed().as_secs_f64() } else { 0.0 },
    })
}

fn evaluate(id: StatementId, p: &[u64], job: &VerificationJob) -> Result<Eval> {
    let cfg = &job.cfg;
    match id {
        StatementId::M2Theorem => {
            let (q, n) = (p[0], usize_param(p[1], "n")?);
            let inst = default_instance(q, 2, n)?;
            let s = inst.brute_count(cfg)?;
            let eval = Eval::compare(s, ssc_formula(q, 2, n));
            if n == 2 {
                let planes = m2n2_identity(q);
                let ok = BigUint::from(s) == planes;
                return Ok(eval.with(ok, format!("planes minus non-splitting planes: {planes}")));
            }
            Ok(eval)
        }
        StatementId::NoBases => {
            let (q, n) = (p[0], usize_param(p[1], "n")?);
            let r = default_instance(q, 2, n)?.count_splitting_bases(cfg)?;
            let (brute, note) = match r.direct {
                Some(d) => (BigUint::from(d), "ordered-pair scan"),
                None => (r.product.clone(), "splitting count times |GL_2|"),
            };
            Ok(Eval::compare(brute, nobases_formula(q, n)).with(r.consistent(), note))
        }
        StatementId::EndoSsc => {
            let (q, n) = (p[0], usize_param(p[1], "n")?);
            let field = field_of_order(q)?;
            let mut brute = BigUint::zero();
            let mut formula = BigUint::zero();
            let mut bad = Vec::new();
            for f in monic_polys(&field, n, cfg)? {
                let b = BigUint::from(count_t_splitting(&companion(&f)?, 1, n, cfg)?);
                let e = endo_formula(&f, cfg)?;
                if b != e {
                    bad.push(f.to_string());
                }
                brute += b;
                formula += e;
            }
            let note = if bad.is_empty() {
                format!("summed over all {} monic polynomials of degree {n}", big_pow(q, n as u64))
            } else {
                format!("differs at {}", bad.join(" "))
            };
            Ok(Eval::compare(brute, formula).with(bad.is_empty(), note))
        }
        StatementId::GenBb => {
            let (q, n1, n2) = (p[0], p[1] as u32, p[2] as u32);
            let field = field_of_order(q)?;
            let brute = coprime_pair_count(n1, n2, &field, Method::Brute, cfg)?;
            let closed = coprime_pair_count(n1, n2, &field, Method::Closed, cfg)?;
            Ok(Eval::compare(brute, closed).with(coprime_recursion_holds(q, n1, n2), ""))
        }
        StatementId::Nilpotent => {
            let (m, q) = (usize_param(p[0], "m")?, p[1]);
            let field = field_of_order(q)?;
            Ok(Eval::compare(
                count_nilpotent(m, &field, Method::Brute, cfg)?,
                count_nilpotent(m, &field, Method::Closed, cfg)?,
            ))
        }
        _ => {
            let (q, m, n) = (p[0], usize_param(p[1], "m")?, usize_param(p[2], "n")?);
            evaluate_block(id, q, m, n, job)
        }
    }
}

fn evaluate_block(id: StatementId, q: u64, m: usize, n: usize, job: &VerificationJob) -> Result<Eval> {
    let cfg = &job.cfg;
    let d = m * n;
    match id {
        StatementId::Ssc => Ok(Eval::compare(default_instance(q, m, n)?.brute_count(cfg)?, ssc_formula(q, m, n))),
        StatementId::LowerBound => {
            let s = default_instance(q, m, n)?.brute_count(cfg)?;
            let bound = splitting_lower_bound(q, m, n);
            let ok = BigUint::from(s) >= bound;
            Ok(Eval::compare(s, bound).with(ok, "brute >= bound"))
        }
        StatementId::Pssc => {
            let r = default_instance(q, m, n)?.pointed_consistency(job.seed, cfg)?;
            let predicted = big_pow(q, (m * (m - 1) * (n - 1)) as u64);
            let nil = count_nilpotent(m, &field_of_order(q)?, Method::Closed, cfg)?.pow((n - 1) as u32);
            let how = if r.exhaustive { "all" } else { "sampled" };
            let note = format!("{how} {} base points, nilpotent (n-1)-tuples {nil}", r.counts.len());
            let eval = Eval::compare(r.pointed, predicted.clone());
            let ok = r.uniform && BigUint::from(r.pointed) == predicted && nil == predicted;
            Ok(eval.with(ok, note))
        }
        StatementId::ElemSplit => {
            let r = default_instance(q, m, n)?.pointed_consistency(job.seed, cfg)?;
            let lhs = BigUint::from(r.total) * (big_pow(q, m as u64) - 1u32);
            let rhs = BigUint::from(r.pointed) * (big_pow(q, d as u64) - 1u32);
            Ok(Eval::compare(lhs, rhs).with(r.uniform, format!("S = {}, pointed = {}", r.total, r.pointed)))
        }
        StatementId::SplitAndBases => {
            let r = default_instance(q, m, n)?.count_splitting_bases(cfg)?;
            match r.direct {
                Some(direct) => Ok(Eval::compare(direct, r.product)),
                None => Err(LabError::ScanBoundExceeded {
                    needed: big_pow(q, (m * d) as u64).to_string(),
                    bound: cfg.scan_bound,
                }),
            }
        }
        StatementId::WeakSsc => {
            let inst = default_instance(q, m, n)?;
            let field = inst.tower().base().clone();
            let mut maps: Vec<(String, [u64; 4], u64)> = vec![
                ("alpha+1".into(), [1, 1, 0, 1], 0),
                ("1/alpha".into(), [0, 1, 1, 0], 0),
                ("alpha^q".into(), [1, 0, 0, 1], 1),
                ("(alpha^q+1)/alpha^q".into(), [1, 1, 1, 0], 1),
            ];
            maps.extend(field.units().filter(|&c| c != 1).map(|c| (format!("{c}*alpha"), [c, 0, 0, 1], 0)));
            let reports = par::map(cfg.exec, &maps, |(_, coeffs, r)| inst.weak_ssc_check(*coeffs, *r, cfg));
            let mut agree = 0u64;
            let mut bad = Vec::new();
            for ((label, _, _), rep) in maps.iter().zip(reports) {
                let rep = rep?;
                if rep.matches {
                    agree += 1;
                } else {
                    bad.push(label.clone());
                }
            }
            let note = if bad.is_empty() {
                format!("S(beta) = S(alpha) for {} Moebius images", maps.len())
            } else {
                format!("differs for {}", bad.join(" "))
            };
            Ok(Eval::compare(agree, maps.len() as u64).with(bad.is_empty(), note))
        }
        StatementId::Pvrc => {
            let field = field_of_order(q)?;
            let total = cfg.check_scan(&big_pow(q, (m * m * n) as u64))?;
            let brute = par::count(cfg.exec, total, |i| {
                let rec = BlockRecurrence::from_index(&field, m, n, i);
                rec.is_invertible() && rec.is_primitive(PrimitivityMode::Definitional, cfg).unwrap_or(false)
            });
            Ok(Eval::compare(brute, pvrc_formula(m, n, q, cfg)?))
        }
        StatementId::Bcscc => {
            let field = field_of_order(q)?;
            Ok(Eval::compare(
                census_singer(m, n, &field, Method::Brute, cfg)?,
                census_singer(m, n, &field, Method::Closed, cfg)?,
            ))
        }
        StatementId::Pfc | StatementId::Ifc => {
            let field = field_of_order(q)?;
            let filter = if id == StatementId::Pfc { IrreducibleFilter::PrimitiveOnly } else { IrreducibleFilter::All };
            let polys = find_irreducibles(&field, d, filter, cfg)?;
            let hist = fiber_histogram(m, n, &field, cfg)?;
            let expect = nofiber_formula(m, n, q);
            let mut brute = BigUint::zero();
            let mut bad = Vec::new();
            for f in &polys {
                let fiber = BigUint::from(hist[monic_rank(f.coeffs(), q)]);
                if fiber != expect {
                    bad.push(format!("{f}:{fiber}"));
                }
                brute += fiber;
            }
            let formula = &expect * BigUint::from(polys.len());
            let note = if bad.is_empty() {
                format!("{} polynomials, fiber {expect} each", polys.len())
            } else {
                format!("fibers differ: {}", bad.join(" "))
            };
            Ok(Eval::compare(brute, formula).with(bad.is_empty(), note))
        }
        StatementId::Chain => {
            let field = field_of_order(q)?;
            let inst = default_instance(q, m, n)?;
            let s = inst.brute_count(cfg)?;
            let group = big_pow(q, d as u64) - 1u32;
            let bases = BigUint::from(s) * gl_order(m as u32, q);
            let bridge = &bases / &group;
            let primitive = find_irreducibles(&field, d, IrreducibleFilter::PrimitiveOnly, cfg)?;
            let hist = fiber_histogram(m, n, &field, cfg)?;
            let census = census_singer(m, n, &field, Method::Brute, cfg)?;
            let def_fiber = BigUint::from(hist[monic_rank(inst.tower().defining_poly().coeffs(), q)]);
            let prim_sum: BigUint = primitive.iter().map(|f| BigUint::from(hist[monic_rank(f.coeffs(), q)])).sum();
            let predicted = &bridge * BigUint::from(primitive.len());
            let ok = (&bases % &group).is_zero() && def_fiber == bridge && prim_sum == census;
            let note = format!(
                "S = {s}, N/(q^mn-1) = {bridge}, fiber(defining) = {def_fiber}, primitive fibers sum = {prim_sum}"
            );
            Ok(Eval::compare(census, predicted).with(ok, note))
        }
        _ => unreachable!("{id} has its own parameter layout"),
    }
}

fn monic_rank(coeffs: &[u64], q: u64) -> usize {
    coeffs[..coeffs.len() - 1].iter().rev().fold(0u64, |acc, &c| acc * q + c) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: StatementId, grid: &[&[u64]]) -> JobVerdict {
        let job = VerificationJob::new(id).with_grid(grid.iter().map(|p| p.to_vec()).collect());
        verify(&job).unwrap()
    }

    #[test]
    fn parse_ids() {
        for id in StatementId::ALL {
            assert_eq!(id.as_str().parse::<StatementId>().unwrap(), id);
        }
        assert_eq!("weak-ssc".parse::<StatementId>().unwrap(), StatementId::WeakSsc);
        assert!(matches!("FOO".parse::<StatementId>(), Err(LabError::UnknownStatement(_))));
    }

    #[test]
    fn ssc_example_grid() {
        let v = run(StatementId::Ssc, &[&[2, 2, 3], &[2, 2, 2], &[3, 2, 2]]);
        let brutes: Vec<String> = v.points.iter().map(|p| p.brute.as_ref().unwrap().to_string()).collect();
        assert_eq!(brutes, ["20", "336", "90"]); // sorted by key
        assert_eq!(v.summary.matched, 3);
        assert_eq!(v.exit_code(), 0);
    }

    #[test]
    fn evidence_point_is_conjectural() {
        let v = run(StatementId::Ssc, &[&[2, 3, 2]]);
        assert_eq!(v.points[0].status, Status::Conjectural);
        assert_ne!(v.points[0].verdict, Verdict::Skipped);
    }

    #[test]
    fn bounds_mark_points_skipped() {
        let mut job = VerificationJob::new(StatementId::Ssc).with_grid(vec![vec![2, 2, 2], vec![2, 4, 4]]);
        job.cfg = job.cfg.with_scan_bound(1000);
        let v = verify(&job).unwrap();
        assert_eq!(v.summary.skipped, 1);
        assert_eq!(v.summary.matched, 1);
        assert_eq!(v.exit_code(), 0);
    }

    #[test]
    fn bad_grids_are_errors() {
        let job = VerificationJob::new(StatementId::Ssc).with_grid(vec![vec![2, 2]]);
        assert!(verify(&job).is_err());
        let job = VerificationJob::new(StatementId::Ssc).with_grid(vec![vec![6, 1, 2]]);
        assert_eq!(verify(&job).unwrap_err(), LabError::NotPrime(6));
    }

    #[test]
    fn exit_codes() {
        let mk = |status, verdict| PointResult {
            params: vec![],
            brute: None,
            formula: None,
            status,
            verdict,
            note: String::new(),
            seconds: 0.0,
        };
        let base = run(StatementId::Nilpotent, &[]);
        let with = |pts: Vec<PointResult>| JobVerdict { summary: summarize(&pts), points: pts, ..base.clone() };
        assert_eq!(with(vec![]).exit_code(), 0);
        assert_eq!(with(vec![mk(Status::Conjectural, Verdict::Mismatch)]).exit_code(), 2);
        assert_eq!(
            with(vec![mk(Status::Conjectural, Verdict::Mismatch), mk(Status::Proved, Verdict::Mismatch)]).exit_code(),
            1
        );
        assert_eq!(with(vec![mk(Status::Proved, Verdict::Skipped)]).exit_code(), 0);
    }

    #[test]
    fn every_default_grid_is_green() {
        for id in StatementId::ALL {
            let v = verify(&VerificationJob::new(id)).unwrap();
            assert_eq!(v.summary.mismatched, 0, "{id}: {:?}", v.points);
            assert_eq!(v.summary.skipped, 0, "{id}: {:?}", v.points);
            assert_eq!(v.summary.points, v.summary.matched, "{id}");
        }
    }

    #[test]
    fn deterministic() {
        let job = VerificationJob::new(StatementId::Pssc);
        assert_eq!(verify(&job).unwrap(), verify(&job).unwrap());
    }
}
