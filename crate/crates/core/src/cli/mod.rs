//! Command-line frontend. [`run_command`] parses arguments, runs one
//! command and returns the exit code with the rendered output, so the
//! binary is a thin wrapper and tests can drive commands in-process.

mod sweep;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

pub use sweep::{
    check_case, initial_terms_match, numeric_conjugate, random_points_vanish, run_sweep, SweepCase, SweepOptions,
    SweepReport, SweepSummary, CEILING, CEILING_WITH_FROBENIUS, ORACLE_NONFIXED_MAX_N,
};

use crate::cells::{build_ideal, cell_generators, paving, patch_generators, IdealKind};
use crate::combinat::{fixed_points, HessenbergFunction, Permutation};
use crate::frobenius::{compatibility_check, is_prime, FrobeniusError, SplittingContext};
use crate::grading_hilbert::{hilbert_formula, hilbert_oracle, weights_for, HilbertError, DEFAULT_TRUNCATION};
use crate::groebner::{
    buchberger_check, order_n_w, order_patch, reduced_gb_oracle, triangular_analysis, GroebnerError, DEFAULT_BUDGET,
};
use crate::polyring::{PolyMatrix, Polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Patch,
    Cell,
}

impl From<KindArg> for IdealKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Patch => IdealKind::Patch,
            KindArg::Cell => IdealKind::Cell,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hesscell", version, about = "Regular nilpotent Hessenberg Schubert cells: ideals, Gröbner bases, Hilbert series, Frobenius splitting")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads for parallel checks (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Truncation order for series expansions.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION, global = true)]
    pub trunc: usize,
    /// Reduction-step budget for the completion oracle.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PermArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub w: Permutation,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub w: Permutation,
    #[arg(long)]
    pub h: HessenbergFunction,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entries of (wM)⁻¹ N (wM) on the patch of w.
    PatchGens(PermArgs),
    /// Entries of Ω_w⁻¹ N Ω_w on the cell of w, optionally only k > h(ℓ).
    CellGens {
        #[command(flatten)]
        perm: PermArgs,
        #[arg(long)]
        h: Option<HessenbergFunction>,
    },
    /// Listed generators of the patch or cell ideal.
    Ideal {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "cell")]
        kind: KindArg,
    },
    /// Permutations whose cell meets the Hessenberg variety.
    FixedPoints {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: HessenbergFunction,
    },
    /// Triangular analysis and Buchberger verification.
    GbCheck {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "cell")]
        kind: KindArg,
        /// Also run the general completion oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Hilbert series: closed form against the initial-ideal count.
    Hilbert(CaseArgs),
    /// Cell dimensions and their generating polynomial.
    Paving {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: HessenbergFunction,
    },
    /// Compatible splitting of the ideal by Tr(F^{p-1} ·).
    FrobeniusCheck {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "cell")]
        kind: KindArg,
    },
    /// Every check over all indecomposable h and all w up to a size.
    Sweep {
        #[arg(long)]
        max_n: usize,
        /// Primes for the Frobenius check, e.g. 2,3.
        #[arg(long, value_delimiter = ',')]
        frobenius: Vec<u64>,
        /// Run the unit-ideal oracle on non-fixed points for every n.
        #[arg(long)]
        oracle_nonfixed: bool,
        /// Random points per fixed-point case for the vanishing check.
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn new(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<FrobeniusError> for Failure {
    fn from(e: FrobeniusError) -> Self {
        match e {
            FrobeniusError::Groebner(g) => g.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<HilbertError> for Failure {
    fn from(e: HilbertError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<crate::cells::CellsError> for Failure {
    fn from(e: crate::cells::CellsError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_n(n: usize, w: Option<&Permutation>, h: Option<&HessenbergFunction>) -> Result<(), Failure> {
    if let Some(w) = w.filter(|w| w.n() != n) {
        return Err(usage(format!("--w {w} has size {} but --n is {n}", w.n())));
    }
    if let Some(h) = h.filter(|h| h.n() != n) {
        return Err(usage(format!("--h {h} has size {} but --n is {n}", h.n())));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutput::new(code, rendered)
            } else {
                CommandOutput::error(code, rendered)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => return CommandOutput::error(EXIT_USAGE, e.to_string()),
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(out) => out,
        Err(Failure::Usage(m)) => CommandOutput::error(EXIT_USAGE, format!("error: {m}")),
        Err(Failure::Budget(m)) => CommandOutput::error(EXIT_BUDGET, format!("error: {m}")),
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

#[derive(Serialize)]
struct Entry {
    k: usize,
    l: usize,
    poly: Polynomial,
}

fn matrix_entries(m: &PolyMatrix) -> Vec<Entry> {
    (1..=m.n())
        .flat_map(|k| (1..=m.n()).map(move |l| (k, l)))
        .map(|(k, l)| Entry {
            k,
            l,
            poly: m.get(k, l).clone(),
        })
        .collect()
}

fn entries_text(letter: char, entries: &[Entry]) -> String {
    let mut out = String::new();
    for e in entries.iter().filter(|e| !e.poly.is_zero()) {
        let _ = writeln!(out, "{letter}_{}_{} = {}", e.k, e.l, e.poly);
    }
    out
}

fn dispatch(cli: &Cli) -> Result<CommandOutput, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::PatchGens(PermArgs { n, w }) => {
            check_n(*n, Some(w), None)?;
            let entries = matrix_entries(&patch_generators(w));
            let value = json!({ "w": w, "kind": "patch", "entries": entries });
            Ok(CommandOutput::new(EXIT_OK, render(fmt, &value, || entries_text('f', &entries))))
        }
        Command::CellGens { perm, h } => {
            check_n(perm.n, Some(&perm.w), h.as_ref())?;
            let mut entries = matrix_entries(&cell_generators(&perm.w));
            if let Some(h) = h {
                entries.retain(|e| e.k > h.at(e.l));
            }
            let value = json!({ "w": perm.w, "h": h, "kind": "cell", "entries": entries });
            Ok(CommandOutput::new(EXIT_OK, render(fmt, &value, || entries_text('g', &entries))))
        }
        Command::Ideal { case, kind } => {
            check_n(case.n, Some(&case.w), Some(&case.h))?;
            let ideal = build_ideal(&case.w, &case.h, (*kind).into())?;
            let text = || {
                let letter = if *kind == KindArg::Patch { 'f' } else { 'g' };
                let mut s = format!(
                    "w = {}, h = {}, Λ = {}, listed generators = {}\n",
                    ideal.w,
                    ideal.h,
                    ideal.height,
                    ideal.generators.len()
                );
                for g in &ideal.generators {
                    let _ = writeln!(s, "{letter}_{}_{} = {}", g.k, g.l, g.poly);
                }
                if ideal.certifies_empty() {
                    s.push_str("constant generator present: the intersection is empty\n");
                }
                s
            };
            Ok(CommandOutput::new(EXIT_OK, render(fmt, &ideal, text)))
        }
        Command::FixedPoints { n, h } => {
            check_n(*n, None, Some(h))?;
            let fps = fixed_points(h);
            let value = json!({ "h": h, "count": fps.len(), "fixedPoints": fps });
            let text = || {
                let mut s = format!("{} fixed points for h = {h}\n", fps.len());
                for w in &fps {
                    let _ = writeln!(s, "{w}");
                }
                s
            };
            Ok(CommandOutput::new(EXIT_OK, render(fmt, &value, text)))
        }
        Command::GbCheck { case, kind, oracle } => gb_check(cli, case, (*kind).into(), *oracle),
        Command::Hilbert(case) => hilbert(cli, case),
        Command::Paving { n, h } => {
            check_n(*n, None, Some(h))?;
            let pav = paving(h)?;
            let text = || {
                let mut s = format!("h = {h}, max dim = {}\n", pav.max_dim);
                for c in &pav.cells {
                    let _ = writeln!(s, "{}  length {}  Λ {}  dim {}", c.w, c.length, c.height, c.dim);
                }
                let terms: Vec<String> = pav
                    .poincare
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c > 0)
                    .map(|(d, c)| format!("{c}*q^{d}"))
                    .collect();
                let _ = writeln!(s, "Σ q^dim = {}", terms.join(" + "));
                s
            };
            Ok(CommandOutput::new(EXIT_OK, render(fmt, &pav, text)))
        }
        Command::FrobeniusCheck { case, p, kind } => {
            check_n(case.n, Some(&case.w), Some(&case.h))?;
            if !is_prime(*p) {
                return Err(usage(format!("--p {p} is not prime")));
            }
            let ctx = match kind {
                KindArg::Cell => SplittingContext::new(&case.w, &case.h, *p)?,
                KindArg::Patch => {
                    if case.w != Permutation::longest(case.n) {
                        return Err(usage("patch ideals are checked for w = w_0 only"));
                    }
                    SplittingContext::for_patch(&case.h, *p)?
                }
            };
            let report = compatibility_check(&ctx)?;
            let text = || {
                let mut s = format!(
                    "w = {}, h = {}, p = {}: {}\n",
                    report.w,
                    report.h,
                    report.p,
                    if report.compatible { "compatibly split" } else { "NOT compatibly split" }
                );
                let _ = writeln!(s, "in(F) = ±Z: {}, φ(1) = 1: {}", report.initial_f_is_z, report.phi_one_is_one);
                for g in &report.generators {
                    let _ = writeln!(s, "g_{}_{}: remainder {}", g.k, g.l, g.remainder);
                }
                s
            };
            let code = if report.compatible { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(CommandOutput::new(code, render(fmt, &report, text)))
        }
        Command::Sweep {
            max_n,
            frobenius,
            oracle_nonfixed,
            points,
        } => {
            let ceiling = if frobenius.is_empty() { CEILING } else { CEILING_WITH_FROBENIUS };
            if *max_n < 1 || *max_n > ceiling {
                return Err(usage(format!("--max-n must lie in 1..={ceiling}")));
            }
            if let Some(p) = frobenius.iter().find(|p| !is_prime(**p)) {
                return Err(usage(format!("--frobenius {p} is not prime")));
            }
            if cli.trunc < 1 {
                return Err(usage("--trunc must be at least 1"));
            }
            let report = run_sweep(&SweepOptions {
                max_n: *max_n,
                primes: frobenius.clone(),
                oracle_nonfixed: *oracle_nonfixed,
                points: *points,
                seed: cli.seed,
                trunc: cli.trunc,
                budget: cli.budget,
            });
            let text = || {
                let s = &report.summary;
                let mut out = format!(
                    "sweep up to n = {}: {} cases, {} fixed points, {} passed, {} failed ({:.2}s)\n",
                    report.n, s.cases, s.fixed_points, s.passed, s.failed, report.elapsed_seconds
                );
                for c in report.cases.iter().filter(|c| !c.passed()) {
                    let (w, h) = (c.w.as_ref().expect("set"), c.h.as_ref().expect("set"));
                    let _ = writeln!(out, "FAIL w = {w}, h = {h}: {}", c.failures.join(", "));
                }
                out
            };
            let code = if report.summary.failed == 0 {
                EXIT_OK
            } else if report.summary.budget_exhausted == report.summary.failed {
                EXIT_BUDGET
            } else {
                EXIT_CHECK_FAILED
            };
            Ok(CommandOutput::new(code, render(fmt, &report, text)))
        }
    }
}

fn gb_check(cli: &Cli, case: &CaseArgs, kind: IdealKind, oracle: bool) -> Result<CommandOutput, Failure> {
    check_n(case.n, Some(&case.w), Some(&case.h))?;
    let ideal = build_ideal(&case.w, &case.h, kind)?;
    let ord = match kind {
        IdealKind::Cell => order_n_w(&case.w),
        IdealKind::Patch => order_patch(&case.w),
    };
    let report = triangular_analysis(&ideal, &ord)?;
    let buchberger = buchberger_check(&ideal, &ord)?;
    let oracle_basis = if oracle {
        Some(reduced_gb_oracle(&ideal.nonzero_polys(), &ord, cli.budget)?)
    } else {
        None
    };
    let ok = report.is_triangular && buchberger;
    let value = json!({
        "w": case.w,
        "h": case.h,
        "kind": kind,
        "ok": ok,
        "buchberger": buchberger,
        "triangular": report,
        "oracleBasis": oracle_basis,
    });
    let text = || {
        let inits: Vec<String> = report.initial_terms.iter().map(|t| t.to_string()).collect();
        let free: Vec<String> = report.free_variables.iter().map(|v| v.to_string()).collect();
        let mut s = format!(
            "triangular: {}, buchberger: {}\ninitial terms: {}\nΛ = {}\nfree variables: {}\n",
            report.is_triangular,
            buchberger,
            inits.join(", "),
            report.height,
            free.join(", ")
        );
        if let Some(gb) = &oracle_basis {
            let items: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
            let _ = writeln!(s, "reduced basis: [{}]", items.join(", "));
        }
        s
    };
    let code = if ok { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(CommandOutput::new(code, render(cli.format, &value, text)))
}

fn hilbert(cli: &Cli, case: &CaseArgs) -> Result<CommandOutput, Failure> {
    check_n(case.n, Some(&case.w), Some(&case.h))?;
    if cli.trunc < 1 {
        return Err(usage("--trunc must be at least 1"));
    }
    let series = hilbert_formula(&case.w, &case.h)?;
    let ideal = build_ideal(&case.w, &case.h, IdealKind::Cell)?;
    let report = triangular_analysis(&ideal, &order_n_w(&case.w))?;
    let coefficients = series.expand(cli.trunc)?;
    let oracle = hilbert_oracle(&report, &weights_for(&case.w), cli.trunc)?;
    let agrees = coefficients == oracle;
    let value = json!({
        "w": case.w,
        "h": case.h,
        "numeratorFactors": series.numerator,
        "denominatorFactors": series.denominator,
        "cancelled": series.cancelled(),
        "coefficients": coefficients,
        "oracleCoefficients": oracle,
        "oracleAgrees": agrees,
    });
    let text = || {
        let cs: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
        format!(
            "H(t) = {}\n     = {}\ncoefficients: {}\noracle agrees: {agrees}\n",
            series,
            series.cancelled(),
            cs.join(", ")
        )
    };
    let code = if agrees { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(CommandOutput::new(code, render(cli.format, &value, text)))
}
