//! Command-line front end.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use qforest_core::counting::{
    count_nonvanishing_with, count_support_invertible, count_support_symmetric, count_zero_set, isotropic_count,
    ordered_basis_count, rank_profile, sym_rank_census, FormKind, Kernel, SupportAlgo, SupportPattern, ZeroSetMode,
};
use qforest_core::fit::{self, integer_coeff_check, PolyVerdict, RationalPoly};
use qforest_core::formulas::{self, FormulaParams, GroupKind, FORMULA_NAMES};
use qforest_core::matroid::{count_g_matroid, Matroid, R10_G_VALUES};
use qforest_core::treepoly::TreePoly;
use qforest_core::{Budget, Engine, FieldCtx, Family, Graph};

use crate::formats::{self, FormatError};
use crate::parallel::{resolve_threads, Parallel};
use crate::report::{RunReport, Table};
use crate::verify::{self, Level, DEFAULT_SEED};

/// Exit status for a bad command line or unusable input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a run would exceed the work budget.
pub const EXIT_BUDGET: i32 = 3;
/// Exit status when a formula is asked for outside its stated range.
pub const EXIT_AMBIGUOUS: i32 = 4;
/// Exit status when the verify battery has a failing criterion.
pub const EXIT_FAILED: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "qforest", version, about = "Exact point counts of spanning-tree polynomials over finite fields")]
pub struct Cli {
    /// Worker threads; defaults to QFOREST_THREADS, then the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print tabular results as CSV instead of a JSON report.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Run even when the work estimate exceeds the budget.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Edge-list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Built-in family: cycle:N, complete:N, complete-minus-clique:N,K or
    /// complete-minus-star:N,S.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Spanning-tree polynomial Q.
    G,
    /// Complement polynomial P.
    F,
}

impl From<KindArg> for TreePoly {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::G => TreePoly::Q,
            KindArg::F => TreePoly::P,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Brute,
    SpanDp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Plain,
    Eliminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Plus,
    Minus,
}

impl From<FormArg> for FormKind {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Plus => FormKind::Plus,
            FormArg::Minus => FormKind::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FitMode {
    /// Exact interpolation through every point.
    Interpolate,
    /// Fit the lowest points and validate the rest.
    Polynomial,
    /// Search for a modulus with one polynomial per residue class.
    Quasipolynomial,
}

fn formula_help() -> String {
    let mut s = String::from("Formulas and their parameters:\n");
    for (name, params) in FORMULA_NAMES {
        s.push_str(&format!("  {name:<26} {params}\n"));
    }
    s
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count assignments where Q (g) or P (f) is nonzero.
    Count {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value = "g")]
        kind: KindArg,
        /// Field size: a prime power such as 9 or 3^2.
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value = "eliminate")]
        kernel: KernelArg,
    },
    /// Count with a set of edge variables forced to zero.
    Zeroset {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value = "g")]
        kind: KindArg,
        #[arg(long)]
        q: String,
        /// Comma-separated 1-based edge indices pinned to zero.
        #[arg(long, value_delimiter = ',')]
        zero: Vec<usize>,
        /// Also require every other variable to be nonzero.
        #[arg(long)]
        exact: bool,
    },
    /// Number of assignments giving each rank of the reduced Laplacian.
    RankProfile {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        q: String,
        /// Root vertex removed from the Laplacian; defaults to the last vertex.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Invertible matrices confined to a support pattern.
    Support {
        /// Pattern file.
        #[arg(long, conflicts_with = "fano", required_unless_present = "fano")]
        pattern: Option<PathBuf>,
        /// Use the Fano plane incidence pattern.
        #[arg(long)]
        fano: bool,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value = "brute")]
        algo: AlgoArg,
        /// Count symmetric matrices; the pattern must be symmetric.
        #[arg(long)]
        symmetric: bool,
    },
    /// Rank census of symmetric n x n matrices.
    SymCensus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: String,
    },
    /// Count assignments where a matroid basis polynomial is nonzero.
    Matroid {
        /// `u24`, `r10`, or a basis-list file.
        matroid: String,
        #[arg(long)]
        q: String,
    },
    /// Evaluate a closed form.
    #[command(after_help = formula_help())]
    Formula {
        #[arg(long)]
        name: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Fit a `q,count` CSV exactly.
    Fit {
        /// Values file with header `q,count`.
        values: PathBuf,
        #[arg(long, value_enum, default_value = "polynomial")]
        mode: FitMode,
        #[arg(long, default_value_t = 4)]
        degree_bound: usize,
        #[arg(long, default_value_t = 4)]
        max_modulus: u64,
    },
    /// Ordered bases orthogonal outside the edges of an apex graph, and the
    /// count of g they reconstruct.
    Bases {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        q: String,
    },
    /// Isotropic vectors of a scalar product, counted and by formula.
    Isotropic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value = "plus")]
        form: FormArg,
    },
    /// Run the verification battery.
    Verify {
        #[arg(value_enum, default_value = "quick")]
        level: Level,
        /// Seed for the randomized criteria.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run only these criteria (comma-separated numbers).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// A failed run with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("refused: estimated {estimate} operations exceeds the budget of {limit}; pass --force to run anyway")]
    Budget { estimate: u128, limit: u128 },
    #[error("{0}")]
    Ambiguous(String),
    #[error("{0}")]
    Failed(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Budget { .. } => EXIT_BUDGET,
            RunError::Ambiguous(_) => EXIT_AMBIGUOUS,
            RunError::Failed(_) => EXIT_FAILED,
        }
    }
}

impl From<qforest_core::Error> for RunError {
    fn from(e: qforest_core::Error) -> Self {
        match e {
            qforest_core::Error::BudgetExceeded { estimate, limit } => RunError::Budget { estimate, limit },
            qforest_core::Error::BoundaryAmbiguous(_) => RunError::Ambiguous(e.to_string()),
            other => RunError::Usage(other.to_string()),
        }
    }
}

impl From<FormatError> for RunError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(inner) => inner.into(),
            other => RunError::Usage(other.to_string()),
        }
    }
}

/// What a successful run prints and how it exits.
#[derive(Debug)]
pub struct Output {
    pub report: RunReport,
    pub exit_code: i32,
}

fn field(q: &str) -> Result<FieldCtx, RunError> {
    Ok(FieldCtx::parse(q)?)
}

fn load_graph(src: &GraphSource) -> Result<(Graph, String), RunError> {
    match (&src.graph, &src.family) {
        (Some(path), _) => Ok((formats::parse_edge_list(&formats::read_file(path)?)?, path.display().to_string())),
        (None, Some(spec)) => Ok((Graph::family(spec.parse::<Family>()?)?, spec.clone())),
        (None, None) => Err(RunError::Usage("give --graph or --family".into())),
    }
}

fn load_matroid(spec: &str) -> Result<Matroid, RunError> {
    match spec {
        "u24" => Ok(Matroid::uniform(2, 4)?),
        "r10" => Ok(Matroid::r10()),
        path => Ok(formats::parse_basis_list(&formats::read_file(path.as_ref())?)?),
    }
}

fn poly_table(p: &RationalPoly) -> Table {
    let mut t = Table::new(&["degree", "coefficient"]);
    for (d, c) in p.coeffs().iter().enumerate() {
        t.push(vec![d.to_string(), c.to_string()]);
    }
    t
}

/// Parses `argv` (program name first) and runs the command.
pub fn execute(argv: &[String]) -> Result<Output, RunError> {
    let cli = Cli::try_parse_from(argv).map_err(|e| RunError::Usage(e.to_string()))?;
    run(cli, argv[1..].to_vec())
}

/// Runs an already-parsed command line.
pub fn run(cli: Cli, echo: Vec<String>) -> Result<Output, RunError> {
    let threads = resolve_threads(cli.threads).map_err(RunError::Usage)?;
    let exec = Parallel::new(threads).map_err(|e| RunError::Usage(e.to_string()))?;
    let budget = if cli.force { Budget::forced() } else { Budget::default() };
    let engine = Engine::new(exec, budget);
    let start = Instant::now();
    let mut exit_code = 0;
    let mut report;
    match &cli.command {
        Command::Count { source, kind, q, kernel } => {
            let (g, label) = load_graph(source)?;
            let ctx = field(q)?;
            let kernel = match kernel {
                KernelArg::Plain => Kernel::Plain,
                KernelArg::Eliminate => Kernel::Eliminate,
            };
            let count = count_nonvanishing_with(&g, (*kind).into(), &ctx, &engine, kernel)?;
            report = RunReport::new(echo, "count");
            report.param("graph", label).param("kind", format!("{kind:?}").to_lowercase()).param("q", ctx.q());
            report.result("count", count);
            report.algorithm = format!("exhaustive ({kernel:?} kernel)").to_lowercase();
        }
        Command::Zeroset { source, kind, q, zero, exact } => {
            let (g, label) = load_graph(source)?;
            let ctx = field(q)?;
            let mode = if *exact { ZeroSetMode::Exact } else { ZeroSetMode::AtLeast };
            let count = count_zero_set(&g, zero, (*kind).into(), mode, &ctx, &engine)?;
            report = RunReport::new(echo, "zeroset");
            let zeros: Vec<String> = zero.iter().map(ToString::to_string).collect();
            report
                .param("graph", label)
                .param("kind", format!("{kind:?}").to_lowercase())
                .param("q", ctx.q())
                .param("zero", zeros.join(","))
                .param("mode", if *exact { "exact" } else { "at-least" });
            report.result("count", count);
            report.algorithm = if *exact { "inclusion-exclusion over exhaustive counts" } else { "exhaustive" }.into();
        }
        Command::RankProfile { source, q, root } => {
            let (g, label) = load_graph(source)?;
            let ctx = field(q)?;
            let root = root.unwrap_or(g.n());
            let profile = rank_profile(&g, root, &ctx, &engine)?;
            report = RunReport::new(echo, "rank-profile");
            report.param("graph", label).param("q", ctx.q()).param("root", root);
            let mut t = Table::new(&["rank", "count"]);
            for (r, c) in profile.counts.iter().enumerate() {
                t.push(vec![r.to_string(), c.to_string()]);
            }
            report.result("total", profile.total()).result("full_rank", profile.top());
            report.table = Some(t);
            report.algorithm = "exhaustive rank histogram".into();
        }
        Command::Support { pattern, fano, q, algo, symmetric } => {
            let ctx = field(q)?;
            let (s, label) = if *fano {
                (SupportPattern::fano(), "fano".to_string())
            } else {
                let path = pattern.as_ref().expect("clap requires --pattern without --fano");
                (formats::parse_pattern(&formats::read_file(path)?, *symmetric)?, path.display().to_string())
            };
            report = RunReport::new(echo, "support");
            report.param("pattern", label).param("n", s.n()).param("q", ctx.q());
            if *symmetric {
                if *algo != AlgoArg::Brute {
                    return Err(RunError::Usage("symmetric counts only support --algo brute".into()));
                }
                if !s.is_transpose_closed() {
                    return Err(RunError::Usage("--symmetric needs a transpose-closed pattern".into()));
                }
                let s = SupportPattern::from_mask(s.n(), (0..s.n() * s.n()).map(|c| s.is_allowed(c / s.n(), c % s.n())).collect(), true)?;
                report.param("symmetric", true);
                report.result("count", count_support_symmetric(&s, &ctx, &engine)?);
                report.algorithm = "brute".into();
            } else {
                let a = match algo {
                    AlgoArg::Brute => SupportAlgo::Brute,
                    AlgoArg::SpanDp => SupportAlgo::SpanDp,
                };
                report.result("count", count_support_invertible(&s, a, &ctx, &engine)?);
                report.algorithm = format!("{algo:?}").to_lowercase();
            }
        }
        Command::SymCensus { n, q } => {
            let ctx = field(q)?;
            let census = sym_rank_census(*n, &ctx, &engine)?;
            report = RunReport::new(echo, "sym-census");
            report.param("n", n).param("q", ctx.q());
            let mut t = Table::new(&["rank", "count", "closed_form"]);
            for (r, c) in census.counts.iter().enumerate() {
                t.push(vec![r.to_string(), c.to_string(), formulas::macwilliams_h(*n, r, ctx.q() as u64).to_string()]);
            }
            report.result("invertible", census.top()).result("total", census.total());
            report.table = Some(t);
            report.algorithm = "exhaustive rank histogram".into();
        }
        Command::Matroid { matroid, q } => {
            let ctx = field(q)?;
            let m = load_matroid(matroid)?;
            report = RunReport::new(echo, "matroid");
            report
                .param("matroid", matroid)
                .param("ground_size", m.ground_size())
                .param("rank", m.rank())
                .param("q", ctx.q());
            report.result("bases", m.bases().len());
            report.result("count", count_g_matroid(&m, &ctx, &engine)?);
            let qv = ctx.q() as u64;
            if matroid == "u24" {
                report.result("formula", formulas::fourpoint_formula(qv));
            }
            if let Some((_, v)) = R10_G_VALUES.iter().find(|(q, _)| matroid == "r10" && *q == qv) {
                report.result("golden", v);
            }
            report.algorithm = "exhaustive".into();
        }
        Command::Formula { name, q, n, k, s, r } => {
            let q = q.parse::<qforest_core::PrimePower>()?.q();
            let res = formulas::evaluate(name, &FormulaParams { q, n: *n, k: *k, s: *s, r: *r })?;
            report = RunReport::new(echo, "formula");
            report.param("name", &res.name);
            for (p, v) in &res.params {
                report.param(p, v);
            }
            report.result("value", res.value);
            report.algorithm = "closed form".into();
        }
        Command::Fit { values, mode, degree_bound, max_modulus } => {
            let points = formats::parse_values_csv(&formats::read_file(values)?)?;
            report = RunReport::new(echo, "fit");
            report.param("values", values.display()).param("points", points.len());
            match mode {
                FitMode::Interpolate => {
                    let p = fit::interpolate(&points)?;
                    report.result("polynomial", &p).result("integer_coefficients", integer_coeff_check(&p));
                    report.table = Some(poly_table(&p));
                }
                FitMode::Polynomial => {
                    report.param("degree_bound", degree_bound);
                    match fit::polynomiality_probe(&points, *degree_bound)? {
                        PolyVerdict::Polynomial(p) => {
                            report.result("verdict", "polynomial").result("polynomial", &p);
                            report.result("integer_coefficients", integer_coeff_check(&p));
                            report.table = Some(poly_table(&p));
                        }
                        PolyVerdict::NotPolynomial { witness, fitted } => {
                            report.result("verdict", "not_polynomial");
                            report.result("witness_q", witness.0).result("witness_count", witness.1);
                            report.result("fitted_value", fitted.eval(witness.0));
                        }
                    }
                }
                FitMode::Quasipolynomial => {
                    report.param("degree_bound", degree_bound).param("max_modulus", max_modulus);
                    match fit::quasipoly_probe(&points, *max_modulus, *degree_bound)? {
                        Some(qp) => {
                            report.result("verdict", "quasipolynomial").result("modulus", qp.modulus);
                            let mut t = Table::new(&["residue", "degree", "coefficient"]);
                            for (r, b) in qp.branches.iter().enumerate() {
                                let Some(b) = b else {
                                    report.result(&format!("branch_{r}"), "no samples");
                                    continue;
                                };
                                report.result(&format!("branch_{r}"), b);
                                for (d, c) in b.coeffs().iter().enumerate() {
                                    t.push(vec![r.to_string(), d.to_string(), c.to_string()]);
                                }
                            }
                            report.table = Some(t);
                        }
                        None => {
                            report.result("verdict", "none");
                        }
                    }
                }
            }
            report.algorithm = "exact rational interpolation".into();
        }
        Command::Bases { source, q } => {
            let (g, label) = load_graph(source)?;
            let ctx = field(q)?;
            let qv = ctx.q() as u64;
            let n = g.n().checked_sub(1).filter(|&n| n > 0).ok_or_else(|| RunError::Usage("graph needs at least two vertices".into()))?;
            report = RunReport::new(echo, "bases");
            report.param("graph", label).param("q", qv).param("n", n);
            let plus = ordered_basis_count(&g, FormKind::Plus, &ctx, &engine.budget)?;
            report.result("b_plus", &plus);
            let reconstructed = if qv.is_multiple_of(2) && n % 2 == 1 {
                plus / formulas::group_order(GroupKind::OmegaPlain, n, qv)?
            } else {
                let minus = ordered_basis_count(&g, FormKind::Minus, &ctx, &engine.budget)?;
                report.result("b_minus", &minus);
                plus / formulas::group_order(GroupKind::OmegaPlus, n, qv)?
                    + minus / formulas::group_order(GroupKind::OmegaMinus, n, qv)?
            };
            report.result("reconstructed_g", reconstructed);
            let g_count = count_nonvanishing_with(&g, TreePoly::Q, &ctx, &engine, Kernel::Eliminate)?;
            report.result("counted_g", g_count);
            report.algorithm = "depth-first basis enumeration".into();
        }
        Command::Isotropic { n, q, form } => {
            let ctx = field(q)?;
            let kind: FormKind = (*form).into();
            report = RunReport::new(echo, "isotropic");
            report.param("n", n).param("q", ctx.q()).param("form", format!("{form:?}").to_lowercase());
            report.result("count", isotropic_count(*n, kind, &ctx, &engine.budget)?);
            let (row, value) = formulas::isotropic_formula(*n, ctx.q() as u64, kind)?;
            report.result("formula", value).result("row", format!("{row:?}"));
            report.algorithm = "exhaustive".into();
        }
        Command::Verify { level, seed, only } => {
            report = RunReport::new(echo, "verify");
            report.param("level", format!("{level:?}").to_lowercase()).param("seed", seed);
            let ids: Vec<u8> = if only.is_empty() { (1..=verify::CRITERIA).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > verify::CRITERIA) {
                return Err(RunError::Usage(format!("no criterion {bad}; criteria are 1..={}", verify::CRITERIA)));
            }
            let mut t = Table::new(&["criterion", "status", "checks", "elapsed_ms", "title", "details"]);
            let mut failed = 0;
            for id in ids {
                let o = verify::run_criterion(id, *level, *seed, &engine);
                eprintln!("{}", o.summary());
                if !o.passed() {
                    failed += 1;
                }
                let details: Vec<&str> = o.notes.iter().chain(&o.failures).map(String::as_str).collect();
                t.push(vec![
                    o.id.to_string(),
                    if o.passed() { "pass" } else { "fail" }.into(),
                    o.checks.to_string(),
                    o.elapsed_ms.to_string(),
                    o.title.to_string(),
                    details.join("; "),
                ]);
            }
            report.result("failed", failed).result("passed", t.rows.len() - failed);
            report.table = Some(t);
            report.algorithm = "verification battery".into();
            if failed > 0 {
                exit_code = EXIT_FAILED;
            }
        }
    }
    report.threads = engine.exec.threads();
    report.shards = engine.exec.shards();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Output { report, exit_code })
}

/// Parses, runs and prints; returns the process exit status.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let csv = cli.csv;
    match run(cli, argv[1..].to_vec()) {
        Ok(out) => {
            if csv {
                print!("{}", out.report.to_csv());
            } else {
                println!("{}", out.report.to_json());
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses the numeric result of a report back into an exact integer.
pub fn result_int(report: &RunReport, name: &str) -> Option<BigInt> {
    report.get(name)?.parse().ok()
}
