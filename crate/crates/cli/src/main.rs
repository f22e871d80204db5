use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use splitlab_core::lfsr::{census_singer, fiber_count, fiber_histogram, nofiber_formula};
use splitlab_core::linalg::{count_nilpotent, gaussian_binomial, SubspaceSpace};
use splitlab_core::literal::{format_words, parse_codes, parse_field, parse_grid, parse_poly, parse_recurrence, parse_state};
use splitlab_core::poly::{coprime_pair_count, find_irreducibles, IrreducibleFilter};
use splitlab_core::report::{big_value, emit, split_report_json, Format};
use splitlab_core::splitting::ssc_formula;
use splitlab_core::{
    build_extension, verify, Exec, FiberMethod, FieldCtx, LabConfig, LabError, Method, SplitCountReport,
    SplitInstance, StatementId, Status, VerificationJob, Verdict,
};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit status for command-line usage errors.
const EXIT_USAGE: u8 = 64;
/// Exit status for runtime failures (bad input, exceeded bounds, I/O).
const EXIT_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "splitlab", version)]
#[command(about = "Splitting subspaces, block recurrences and exhaustive checks of their counts over finite fields")]
struct Cli {
    /// Run scans on one thread
    #[arg(long, global = true)]
    sequential: bool,

    /// Maximum candidates per scan (defaults to SPLITLAB_SCAN_BOUND or 2^24)
    #[arg(long, global = true)]
    scan_bound: Option<u64>,

    /// Record wall-clock seconds in reports (off keeps output reproducible)
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count alpha-splitting subspaces of F_{q^{mn}} and compare with the closed form
    CountSplitting(CountSplittingArgs),
    /// Check the splitting-subspace formula over a grid of (q,m,n)
    VerifySsc {
        /// Points "q,m,n;q,m,n;..."
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count coprime pairs of monic polynomials of degrees N1 >= N2
    CoprimeCensus {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Gaussian binomial [a b]_q, optionally confirmed by enumerating subspaces
    Qbinom {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        q: String,
        #[arg(long)]
        enumerate: bool,
    },
    /// Count nilpotent m x m matrices over F_q
    NilpotentCensus {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Vector recurrences over F_q^m
    Lfsr {
        #[command(subcommand)]
        command: LfsrCommand,
    },
    /// Count (m,n)-block companion Singer cycles
    SingerCensus {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Count block companion matrices by characteristic polynomial
    FiberCensus {
        #[command(flatten)]
        shape: Shape,
        /// Coefficients constant term first, e.g. "1,1,0,0,1"
        #[arg(long, conflicts_with_all = ["all_irreducible", "all_primitive"])]
        poly: Option<String>,
        #[arg(long, conflicts_with = "all_primitive")]
        all_irreducible: bool,
        #[arg(long)]
        all_primitive: bool,
    },
    /// Check a named statement over a parameter grid
    Verify {
        /// SSC, PSSC, LOWER_BOUND, M2_THEOREM, SPLITANDBASES, NOBASES, GENBB, ELEMSPLIT,
        /// WEAK_SSC, ENDO_SSC, NILPOTENT, PVRC, BCSCC, PFC, IFC or CHAIN
        #[arg(long)]
        statement: String,
        /// Points separated by ';', coordinates by ','; defaults per statement
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for sampled base points
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Shape {
    /// Base field order (prime power) or "p^e"
    #[arg(long)]
    q: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CountSplittingArgs {
    #[command(flatten)]
    shape: Shape,
    /// Defining polynomial of F_{q^{mn}}, constant term first
    #[arg(long)]
    poly: Option<String>,
    /// Coordinates of the generator in the power basis
    #[arg(long)]
    alpha: Option<String>,
    /// Also count splitting subspaces through this element (coordinates)
    #[arg(long)]
    pointed: Option<String>,
    /// Report the closed form without scanning
    #[arg(long)]
    formula_only: bool,
}

#[derive(Subcommand)]
enum LfsrCommand {
    /// Print output words, one per line
    Simulate {
        #[command(flatten)]
        rec: RecArgs,
        #[arg(long)]
        steps: usize,
    },
    /// Preperiod and period of the state sequence
    Period {
        #[command(flatten)]
        rec: RecArgs,
    },
}

#[derive(Args)]
struct RecArgs {
    #[command(flatten)]
    shape: Shape,
    /// Coefficient matrices "M0|M1|...", rows ';', entries ','
    #[arg(long = "C")]
    coeffs: String,
    /// Initial words "w0;w1;...", entries ','
    #[arg(long)]
    init: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    #[value(alias = "brute")]
    Scan,
    #[value(alias = "closed")]
    Formula,
    Both,
}

impl MethodArg {
    fn scan(self) -> bool {
        self != MethodArg::Formula
    }
    fn formula(self) -> bool {
        self != MethodArg::Scan
    }
}

struct Ctx {
    cfg: LabConfig,
    timings: bool,
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Brute/formula pair with a verdict, as printed by the census commands.
fn census_json(head: Value, brute: Option<Value>, formula: Option<Value>) -> Value {
    let mut v = head;
    let verdict = match (&brute, &formula) {
        (Some(a), Some(b)) if a == b => Verdict::Match,
        (Some(_), Some(_)) => Verdict::Mismatch,
        (None, _) => Verdict::Skipped,
        _ => Verdict::FormulaUnavailable,
    };
    v["brute"] = brute.unwrap_or(Value::Null);
    v["formula"] = formula.unwrap_or(Value::Null);
    v["verdict"] = verdict.as_str().into();
    v
}

fn write_out(out: Option<&PathBuf>, f: impl FnOnce(&mut dyn Write) -> splitlab_core::Result<()>) -> splitlab_core::Result<()> {
    match out {
        Some(path) => {
            let mut file = File::create(path)?;
            f(&mut file)
        }
        None => f(&mut io::stdout().lock()),
    }
}

fn count_splitting(ctx: &Ctx, a: &CountSplittingArgs) -> splitlab_core::Result<()> {
    let field = parse_field(&a.shape.q)?;
    let (m, n) = (a.shape.m, a.shape.n);
    let defining = a.poly.as_deref().map(|s| parse_poly(&field, s)).transpose()?;
    let tower = build_extension(&field, m * n, defining, false)?;
    let alpha = a.alpha.as_deref().map(|s| tower.from_coords(parse_codes(s)?)).transpose()?;
    let inst = SplitInstance::new(&tower, m, n, alpha)?;
    let mut report = if a.formula_only {
        SplitCountReport {
            q: field.q(),
            m,
            n,
            defining_poly: tower.defining_poly().to_literal(),
            alpha: inst.alpha().coords().to_vec(),
            brute: None,
            formula: Some(ssc_formula(field.q(), m, n)),
            status: Status::for_block(m, n),
            verdict: Verdict::Skipped,
            seconds: 0.0,
        }
    } else {
        inst.count_splitting(&ctx.cfg)?
    };
    if !ctx.timings {
        report.seconds = 0.0;
    }
    let pointed = match &a.pointed {
        Some(s) => {
            let x = tower.from_coords(parse_codes(s)?)?;
            Some((x.coords().to_vec(), inst.count_pointed(&x, &ctx.cfg)?))
        }
        None => None,
    };
    println!("{}", split_report_json(&report, pointed.as_ref().map(|(x, c)| (x.as_slice(), *c)))?);
    Ok(())
}

fn run_verify(
    ctx: &Ctx,
    id: StatementId,
    grid: Option<&str>,
    format: OutFormat,
    out: Option<&PathBuf>,
    seed: u64,
) -> splitlab_core::Result<u8> {
    let mut job = VerificationJob::new(id);
    if let Some(g) = grid {
        job.grid = parse_grid(g, id.params().len())?;
    }
    job.cfg = ctx.cfg;
    job.seed = seed;
    job.record_timings = ctx.timings;
    let verdict = verify(&job)?;
    write_out(out, |w| emit(&verdict, format.into(), w))?;
    Ok(verdict.exit_code() as u8)
}

fn field_census(q: &str) -> splitlab_core::Result<FieldCtx> {
    parse_field(q)
}

fn run(cli: Cli) -> splitlab_core::Result<u8> {
    let mut cfg = LabConfig::from_env()?;
    if let Some(b) = cli.scan_bound {
        cfg.scan_bound = b;
    }
    if cli.sequential {
        cfg.exec = Exec::Sequential;
    }
    let ctx = Ctx { cfg, timings: cli.timings };
    let cfg = &ctx.cfg;
    match cli.command {
        Command::CountSplitting(a) => count_splitting(&ctx, &a)?,
        Command::VerifySsc { grid, format, out } => {
            return run_verify(&ctx, StatementId::Ssc, grid.as_deref(), format, out.as_ref(), 0)
        }
        Command::Verify { statement, grid, format, out, seed } => {
            let id: StatementId = statement.parse()?;
            return run_verify(&ctx, id, grid.as_deref(), format, out.as_ref(), seed);
        }
        Command::CoprimeCensus { q, n1, n2, method } => {
            let field = field_census(&q)?;
            let brute = method.scan().then(|| coprime_pair_count(n1, n2, &field, Method::Brute, cfg)).transpose()?;
            let closed = method.formula().then(|| coprime_pair_count(n1, n2, &field, Method::Closed, cfg)).transpose()?;
            let head = json!({ "q": field.q(), "n1": n1, "n2": n2 });
            print_json(&census_json(head, brute.as_ref().map(big_value), closed.as_ref().map(big_value)));
        }
        Command::Qbinom { a, b, q, enumerate } => {
            let field = field_census(&q)?;
            let value = gaussian_binomial(a, b, field.q())?;
            let mut v = json!({ "a": a, "b": b, "q": field.q(), "value": big_value(&value) });
            if enumerate {
                let space = SubspaceSpace::new(&field, a as usize, b as usize, cfg)?;
                v["enumerated"] = space.iter().count().into();
            }
            print_json(&v);
        }
        Command::NilpotentCensus { m, q, method } => {
            let field = field_census(&q)?;
            let brute = method.scan().then(|| count_nilpotent(m, &field, Method::Brute, cfg)).transpose()?;
            let closed = method.formula().then(|| count_nilpotent(m, &field, Method::Closed, cfg)).transpose()?;
            let head = json!({ "m": m, "q": field.q() });
            print_json(&census_json(head, brute.as_ref().map(big_value), closed.as_ref().map(big_value)));
        }
        Command::Lfsr { command } => match command {
            LfsrCommand::Simulate { rec, steps } => {
                let field = parse_field(&rec.shape.q)?;
                let r = parse_recurrence(&field, rec.shape.m, rec.shape.n, &rec.coeffs)?;
                let init = parse_state(&field, &rec.init)?;
                let mut out = io::stdout().lock();
                for w in r.simulate(&init, steps)? {
                    writeln!(out, "{}", format_words(&[w]))?;
                }
            }
            LfsrCommand::Period { rec } => {
                let field = parse_field(&rec.shape.q)?;
                let r = parse_recurrence(&field, rec.shape.m, rec.shape.n, &rec.coeffs)?;
                let init = parse_state(&field, &rec.init)?;
                let p = r.period_preperiod(&init, cfg)?;
                print_json(&json!({
                    "preperiod": p.preperiod,
                    "period": p.period,
                    "periodic": p.periodic(),
                }));
            }
        },
        Command::SingerCensus { shape, method } => {
            let field = parse_field(&shape.q)?;
            let (m, n) = (shape.m, shape.n);
            let brute = method.scan().then(|| census_singer(m, n, &field, Method::Brute, cfg)).transpose()?;
            let closed = method.formula().then(|| census_singer(m, n, &field, Method::Closed, cfg)).transpose()?;
            let head = json!({ "q": field.q(), "m": m, "n": n, "status": Status::for_block(m, n).as_str() });
            print_json(&census_json(head, brute.as_ref().map(big_value), closed.as_ref().map(big_value)));
        }
        Command::FiberCensus { shape, poly, all_irreducible, all_primitive } => {
            let field = parse_field(&shape.q)?;
            let (m, n) = (shape.m, shape.n);
            let formula = big_value(&nofiber_formula(m, n, field.q()));
            let status = Status::for_block(m, n).as_str();
            let rows: Vec<Value> = match poly {
                Some(p) => {
                    let f = parse_poly(&field, &p)?;
                    let scan = fiber_count(&f, m, n, FiberMethod::Scan, cfg)?;
                    let mut v = json!({ "poly": f.to_literal(), "polynomial": f.to_string(), "scan": big_value(&scan) });
                    if splitlab_core::poly::is_irreducible(&f)? {
                        v["formula"] = formula.clone();
                        v["bridge"] = big_value(&fiber_count(&f, m, n, FiberMethod::Bridge, cfg)?);
                    }
                    vec![v]
                }
                None => {
                    let filter =
                        if all_primitive { IrreducibleFilter::PrimitiveOnly } else { IrreducibleFilter::All };
                    let hist = fiber_histogram(m, n, &field, cfg)?;
                    let q = field.q();
                    let polys = if all_irreducible || all_primitive {
                        find_irreducibles(&field, m * n, filter, cfg)?
                    } else {
                        splitlab_core::poly::monic_polys(&field, m * n, cfg)?
                    };
                    polys
                        .iter()
                        .map(|f| {
                            let c = f.coeffs();
                            let rank = c[..c.len() - 1].iter().rev().fold(0u64, |acc, &x| acc * q + x);
                            json!({ "poly": f.to_literal(), "polynomial": f.to_string(), "scan": hist[rank as usize] })
                        })
                        .collect()
                }
            };
            print_json(&json!({
                "q": field.q(), "m": m, "n": n, "status": status,
                "irreducible_fiber_formula": formula, "fibers": rows,
            }));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                LabError::UnknownStatement(_) | LabError::Parse(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            })
        }
    }
}
