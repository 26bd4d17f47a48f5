//! Command-line front end.
//!
//! ```text
//! noncircular pi --method arcsin --terms 2
//! noncircular pi --method all --target-width 1e-6 --format json
//! noncircular table --method arcsin --max-work 20000 --schedule linear --step 100
//! noncircular verify
//! noncircular demo-circularity [--machine]
//! ```
//!
//! Exit status: 0 success, 1 a `verify` check failed, 2 usage error,
//! 3 the enclosures of π were mutually inconsistent.

pub mod format;
pub mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arclength::demo_circularity;
use crate::error::{Error, Result};
use crate::interval::Rational;
use crate::pi_methods::{
    self, archimedes_trajectory, arcsin_bounds_exact, bisect_cos_root, bits_for_budget,
    cross_check, pi_arcsin_schedule, pi_quadrature, run_all, Budget, Enclosure, Method,
    MethodConfig,
};
use crate::powerseries::arcsin_coeffs;
use format::{
    enclosure_json, guaranteed_digits, interval_json, parse_rational, ReportRow, CSV_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// Largest `N` for which text output also shows `2·S_N` as an exact fraction.
const EXACT_SUM_DISPLAY_LIMIT: u64 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "noncircular",
    version,
    about = "Guaranteed enclosures of pi without circular definitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute enclosures of pi.
    Pi(PiArgs),
    /// Print a convergence table as CSV.
    Table(TableArgs),
    /// Run the built-in property checks.
    Verify(VerifyArgs),
    /// Show the circular textbook definition chain and its repair.
    #[command(name = "demo-circularity")]
    DemoCircularity(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Arcsin,
    Cosroot,
    Archimedes,
    Quadrature,
    All,
}

impl MethodArg {
    fn single(self) -> Option<Method> {
        match self {
            MethodArg::Arcsin => Some(Method::Arcsin),
            MethodArg::Cosroot => Some(Method::Cosroot),
            MethodArg::Archimedes => Some(Method::Archimedes),
            MethodArg::Quadrature => Some(Method::Quadrature),
            MethodArg::All => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct BudgetArgs {
    /// Arcsin series terms N.
    #[arg(long)]
    pub terms: Option<u64>,
    /// Target enclosure width, e.g. 1e-12, 0.001 or 1/1000.
    #[arg(long)]
    pub target_width: Option<String>,
    /// Archimedes polygon doublings k.
    #[arg(long)]
    pub doublings: Option<u32>,
    /// Riemann-sum subintervals n.
    #[arg(long)]
    pub subintervals: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget> {
        let mut found = Vec::new();
        if let Some(n) = self.terms {
            found.push(Budget::Terms(n));
        }
        if let Some(w) = &self.target_width {
            found.push(Budget::TargetWidth(parse_rational(w)?));
        }
        if let Some(k) = self.doublings {
            found.push(Budget::Doublings(k));
        }
        if let Some(n) = self.subintervals {
            found.push(Budget::Subintervals(n));
        }
        match found.len() {
            1 => Ok(found.remove(0)),
            0 => Err(Error::Usage(
                "one of --terms, --target-width, --doublings, --subintervals is required".into(),
            )),
            _ => Err(Error::Usage("give exactly one budget flag".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct PiArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Working precision in fractional bits.
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    Linear,
    Doubling,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Largest work value in the table.
    #[arg(long)]
    pub max_work: u64,
    #[arg(long, value_enum, default_value_t = Schedule::Doubling)]
    pub schedule: Schedule,
    /// Increment for the linear schedule.
    #[arg(long, default_value_t = 1)]
    pub step: u64,
    #[arg(long)]
    pub bits: Option<u32>,
    /// Only csv is produced; the flag is accepted for symmetry with `pi`.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Add a fabricated enclosure disjoint from the others (self-test of the
    /// failure path).
    #[arg(long, hide = true)]
    pub inject_disjoint: bool,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Flat key=value output instead of text.
    #[arg(long)]
    pub machine: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Pi(args) => cmd_pi(&args, out),
        Command::Table(args) => cmd_table(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::DemoCircularity(args) => cmd_demo(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                Error::Inconsistent(_) => EXIT_INCONSISTENT,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn series_prefix(n: u64) -> String {
    let shown = n.min(4) as usize;
    let terms: Vec<String> = arcsin_coeffs(shown)
        .coeffs()
        .iter()
        .map(|a| (a * Rational::from_integer(2.into())).to_string())
        .collect();
    let more = if n as usize > shown { " + ..." } else { "" };
    format!("{}{more}", terms.join(" + "))
}

fn text_line(e: &Enclosure) -> String {
    let row = ReportRow::from_enclosure(e);
    format!(
        "{:<11} work={:<8} [{}, {}]  width={}  {:.3} ms{}",
        row.method,
        row.work,
        row.lo,
        row.hi,
        row.width,
        e.elapsed.as_secs_f64() * 1000.0,
        if e.flagged {
            "  (flagged: stopped before target)"
        } else {
            ""
        }
    )
}

fn cmd_pi(args: &PiArgs, out: &mut dyn Write) -> Result<i32> {
    let budget = args.budget.budget()?;
    let Some(method) = args.method.single() else {
        let Budget::TargetWidth(w) = &budget else {
            return Err(Error::Usage("--method all takes --target-width".into()));
        };
        return pi_all(w, args.bits, args.format, out);
    };
    let enclosure = pi_methods::run(
        method,
        &MethodConfig {
            budget: budget.clone(),
            bits: args.bits,
        },
    )?;
    match args.format {
        OutputFormat::Json => {
            writeln!(out, "{}", enclosure_json(&enclosure)).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}").map_err(io)?;
            writeln!(out, "{}", ReportRow::from_enclosure(&enclosure).csv()).map_err(io)?;
        }
        OutputFormat::Text => {
            writeln!(out, "{}", text_line(&enclosure)).map_err(io)?;
            writeln!(out, "  exact enclosure {}", enclosure.value).map_err(io)?;
            if let (Method::Arcsin, Budget::Terms(n)) = (method, &budget) {
                writeln!(out, "  series 2 M(1) = {}", series_prefix(*n)).map_err(io)?;
                if *n <= EXACT_SUM_DISPLAY_LIMIT {
                    let exact = arcsin_bounds_exact(*n)?;
                    writeln!(out, "  lower bound 2 S_N = {}", exact.lo()).map_err(io)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn pi_all(
    width: &Rational,
    bits: Option<u32>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let all = run_all(width, bits)?;
    let x = cross_check(&all)?;
    let digits = guaranteed_digits(&x);
    match format {
        OutputFormat::Json => {
            let doc = json!({
                "enclosures": all.iter().map(enclosure_json).collect::<Vec<_>>(),
                "intersection": interval_json(&x),
                "guaranteed_digits": digits,
            });
            writeln!(out, "{doc}").map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}").map_err(io)?;
            for e in &all {
                writeln!(out, "{}", ReportRow::from_enclosure(e).csv()).map_err(io)?;
            }
            let total = all.iter().map(|e| e.work).sum();
            writeln!(
                out,
                "{}",
                ReportRow::from_interval("intersection", total, &x).csv()
            )
            .map_err(io)?;
        }
        OutputFormat::Text => {
            for e in &all {
                writeln!(out, "{}", text_line(e)).map_err(io)?;
            }
            let row = ReportRow::from_interval("intersection", 0, &x);
            writeln!(
                out,
                "intersection [{}, {}]  width={}",
                row.lo, row.hi, row.width
            )
            .map_err(io)?;
            writeln!(out, "guaranteed digits {digits}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

/// Work values for a table: `0` is included for the methods where it means
/// something (the unbisected bracket, the bare squares).
pub fn schedule_works(method: Method, max_work: u64, schedule: Schedule, step: u64) -> Vec<u64> {
    let first = match method {
        Method::Cosroot | Method::Archimedes => 0,
        Method::Arcsin | Method::Quadrature => 1,
    };
    let mut works = Vec::new();
    match schedule {
        Schedule::Linear => {
            let step = step.max(1);
            let mut w = first;
            while w <= max_work {
                works.push(w);
                w += step;
            }
        }
        Schedule::Doubling => {
            if first == 0 {
                works.push(0);
            }
            let mut w = 1;
            while w <= max_work {
                works.push(w);
                w *= 2;
            }
        }
    }
    if works.last() != Some(&max_work) && max_work >= first {
        works.push(max_work);
    }
    works
}

/// Rows of a convergence table, one per scheduled work value.
pub fn table_rows(method: Method, works: &[u64], bits: Option<u32>) -> Result<Vec<ReportRow>> {
    let max = works.last().copied().unwrap_or(0);
    let bits = bits.unwrap_or_else(|| match method {
        Method::Arcsin => bits_for_budget(&Budget::Terms(max)),
        Method::Cosroot => max as u32 + pi_methods::GUARD_BITS,
        Method::Archimedes => bits_for_budget(&Budget::Doublings(max as u32)),
        Method::Quadrature => bits_for_budget(&Budget::Subintervals(max)),
    });
    let rows = match method {
        Method::Arcsin => pi_arcsin_schedule(works, bits)?
            .iter()
            .map(ReportRow::from_enclosure)
            .collect(),
        Method::Cosroot => {
            let b = bisect_cos_root(Some(max), None, bits)?;
            works
                .iter()
                .filter_map(|&w| b.trajectory.get(w as usize).map(|iv| (w, iv)))
                .map(|(w, iv)| {
                    ReportRow::from_interval(
                        "cosroot",
                        w,
                        &iv.scale(&Rational::from_integer(2.into())),
                    )
                })
                .collect()
        }
        Method::Archimedes => {
            let traj = archimedes_trajectory(max as u32, bits)?;
            works
                .iter()
                .map(|&w| ReportRow::from_interval("archimedes", w, &traj[w as usize].enclosure()))
                .collect()
        }
        Method::Quadrature => works
            .iter()
            .map(|&n| pi_quadrature(n, bits).map(|e| ReportRow::from_enclosure(&e)))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(rows)
}

fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let method = args
        .method
        .single()
        .ok_or_else(|| Error::Usage("table takes a single method".into()))?;
    if args.max_work == 0 && matches!(method, Method::Arcsin | Method::Quadrature) {
        return Err(Error::Usage("--max-work must be at least 1".into()));
    }
    let works = schedule_works(method, args.max_work, args.schedule, args.step);
    let rows = table_rows(method, &works, args.bits)?;
    writeln!(out, "{CSV_HEADER}").map_err(io)?;
    for row in rows {
        writeln!(out, "{}", row.csv()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = verify::VerifyOptions {
        inject_disjoint: args.inject_disjoint,
    };
    let outcomes = verify::run_checks(&opts);
    let mut failed = Vec::new();
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {}: {}", o.name, o.detail).map_err(io)?;
        if !o.passed {
            failed.push(o.name);
        }
    }
    if failed.is_empty() {
        writeln!(out, "ALL CHECKS PASSED").map_err(io)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAILED: {}", failed.join(", ")).map_err(io)?;
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn cmd_demo(args: &DemoArgs, out: &mut dyn Write) -> Result<i32> {
    let report = demo_circularity();
    if args.machine || args.format == OutputFormat::Csv {
        write!(out, "{}", report.to_machine()).map_err(io)?;
    } else if args.format == OutputFormat::Json {
        let doc = json!({
            "chain": report.chain.iter().map(|n| json!({"concept": n.concept, "definition": n.definition})).collect::<Vec<_>>(),
            "cycle_edge": {"from": report.cycle_edge.0, "to": report.cycle_edge.1},
            "parametric_dead_end": report.parametric,
            "repair": report.repair.iter().map(|r| json!({"method": r.method, "construction": r.construction})).collect::<Vec<_>>(),
            "repaired_definition": report.repaired_definition,
        });
        writeln!(out, "{doc}").map_err(io)?;
    } else {
        write!(out, "{}", report.to_text()).map_err(io)?;
    }
    Ok(EXIT_OK)
}
