mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vbf_core::constructions::{default_reduction, gold};
use vbf_core::suites::{verify_family_suite, verify_fixture_suite, verify_nonexistence_m4_with, verify_structural_theorems};
use vbf_core::{default_workers, family_bc1, family_bc2, Error, GfContext, InputOrder, Reductions, SearchConfig, SearchResult, TheoremReport, VectFn};

use report::{AnalyzeReport, Input, SearchReport, Timing, VerifyReport, SCHEMA_VERSION, TOOL};

const EXIT_CONTRADICTION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Differential and structural analysis of vectorial Boolean functions.
///
/// Exit codes: 0 success, 1 theorem contradiction, 2 input or usage error,
/// 3 search budget exceeded. `VBF_WORKERS` sets the worker count.
#[derive(Parser)]
#[command(name = "vbf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an S-box file and print a JSON report.
    Analyze {
        file: PathBuf,
        /// Include the per-component profile table.
        #[arg(long)]
        components: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a theorem campaign.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Search for an APN permutation by backtracking.
    Search {
        #[arg(long)]
        m: usize,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Disable the normalization of F(0) and F(1).
        #[arg(long)]
        no_reductions: bool,
        #[arg(long, value_enum, default_value_t = Order::Ascending)]
        order: Order,
    },
    /// Write the table of a construction in S-box text format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        m: usize,
        /// Family parameter (gold and bc1).
        #[arg(long)]
        i: Option<u32>,
        /// Reduction polynomial as an integer mask, e.g. 0x43.
        #[arg(long, value_parser = parse_mask)]
        poly: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    M4,
    Fixtures,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Ascending,
    FewestOptions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gold,
    Bc1,
    Bc2,
}

fn parse_mask(s: &str) -> Result<u32, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u32::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid mask `{s}`: {e}"))
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TheoremContradiction { .. } | Error::CorruptedFixture { .. } => EXIT_CONTRADICTION,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict_code(reports: &[&TheoremReport]) -> u8 {
    if reports.iter().all(|r| r.all_hold()) {
        0
    } else {
        EXIT_CONTRADICTION
    }
}

fn analyze(file: &Path, components: bool, out: Option<&Path>) -> Result<u8, Failure> {
    let start = Instant::now();
    let text = std::fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    let f = VectFn::parse_text(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", file.display()),
    })?;
    let profiles = f.component_profiles(false);
    let metrics = report::metrics(&f, &profiles);
    let theorems = verify_structural_theorems(&f);
    let code = verdict_code(&[&theorems]);
    let report = AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        input: Input::File {
            path: file.display().to_string(),
            m: f.dim(),
        },
        metrics,
        component_table: components.then_some(profiles),
        theorems,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    emit(&to_json(&report), out)?;
    Ok(code)
}

fn verify(suite: Suite) -> Result<u8, Failure> {
    let start = Instant::now();
    let mut reports = Vec::new();
    if matches!(suite, Suite::M4 | Suite::All) {
        reports.push(verify_nonexistence_m4_with(default_workers())?);
    }
    if matches!(suite, Suite::Fixtures | Suite::All) {
        reports.extend(verify_fixture_suite());
        reports.extend(verify_family_suite()?);
    }
    let code = verdict_code(&reports.iter().collect::<Vec<_>>());
    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        suite: match suite {
            Suite::M4 => "m4",
            Suite::Fixtures => "fixtures",
            Suite::All => "all",
        }
        .into(),
        all_hold: code == 0,
        reports,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    emit(&to_json(&report), None)?;
    for r in &report.reports {
        for c in r.violations() {
            eprintln!("violation in {}: {} ({:?})", r.subject, c.id, c.verdict);
        }
    }
    Ok(code)
}

fn search(m: usize, budget: Option<u64>, no_reductions: bool, order: Order) -> Result<u8, Failure> {
    let reductions = if no_reductions { Reductions::none() } else { Reductions::all() };
    let order = match order {
        Order::Ascending => InputOrder::Ascending,
        Order::FewestOptions => InputOrder::FewestOptions,
    };
    let workers = default_workers();
    let outcome = SearchConfig::new(m)
        .reductions(reductions)
        .workers(workers)
        .order(order)
        .budget(budget)
        .run()?;
    let (table, sbox) = match &outcome.result {
        SearchResult::Found(f) => {
            let comment = format!("APN permutation, m = {m}");
            (Some(f.table()), Some(f.to_text(&[&comment])))
        }
        _ => (None, None),
    };
    let report = SearchReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        m,
        reductions,
        order,
        budget,
        workers,
        result: outcome.result.label(),
        table,
        sbox,
        stats: outcome.stats,
    };
    emit(&to_json(&report), None)?;
    Ok(match outcome.result {
        SearchResult::BudgetExceeded => EXIT_BUDGET,
        _ => 0,
    })
}

fn construct(family: Family, m: usize, i: Option<u32>, poly: Option<u32>, out: &Path) -> Result<u8, Failure> {
    let ctx = GfContext::new(m, poly)?;
    let (name, f) = match family {
        Family::Gold => ("gold", gold(&ctx, i.unwrap_or(1))?),
        Family::Bc1 => ("bc1", family_bc1(&ctx, i.unwrap_or(1))?),
        Family::Bc2 => {
            if i.is_some() {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: "bc2 takes no --i".into(),
                });
            }
            ("bc2", family_bc2(&ctx)?)
        }
    };
    let poly = poly.unwrap_or_else(|| default_reduction(m));
    let header = match family {
        Family::Bc2 => format!("family {name}, m = {m}, poly = {poly:#x}"),
        _ => format!("family {name}, m = {m}, i = {}, poly = {poly:#x}", i.unwrap_or(1)),
    };
    std::fs::write(out, f.to_text(&[&header])).map_err(|e| io_failure(out, e))?;
    eprintln!("wrote {}", out.display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, components, out } => analyze(&file, components, out.as_deref()),
        Command::Verify { suite } => verify(suite),
        Command::Search {
            m,
            budget,
            no_reductions,
            order,
        } => search(m, budget, no_reductions, order),
        Command::Construct { family, m, i, poly, out } => construct(family, m, i, poly, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
