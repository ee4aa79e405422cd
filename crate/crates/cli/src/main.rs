//! `klab`: generate star prism family members, compute invariant reports,
//! run verification sweeps against the closed forms, and emit tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use klab_core::closed_forms::{TableRow, Variant, TABLE_CSV_HEADER};
use klab_core::graph::GraphJson;
use klab_core::rational::{BigRational, RationalJson};
use klab_core::report::{self, InvariantReport};
use klab_core::sweep::{self, RunMode, SubsetPolicy, SweepConfig};
use klab_core::{Error, FamilySpec, Graph};

/// Environment variable overriding the exact-arithmetic vertex cap.
const MAX_EXACT_ENV: &str = "KLAB_MAX_EXACT";

#[derive(Parser)]
#[command(
    name = "klab",
    version,
    about = "Exact spectral and resistance invariants for star prism graphs",
    after_help = "Rung indices are 1-based; rung 1 joins the two star centers.\n\
                  KLAB_MAX_EXACT overrides the 200-vertex exact-arithmetic cap."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member as edge-list JSON.
    Generate(GenerateArgs),
    /// Invariant report (oracle, spectral, and closed-form columns).
    Invariants(InvariantsArgs),
    /// Run the closed-form agreement suite over a parameter grid.
    Verify(GridArgs),
    /// Emit the formula table over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Star order n (the prism has 2n vertices).
    #[arg(long)]
    n: usize,
    /// Rungs to delete, comma separated (e.g. --delete 2,3).
    #[arg(long, value_delimiter = ',')]
    delete: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantsArgs {
    /// Star order n of a family member.
    #[arg(long, conflicts_with = "file")]
    n: Option<usize>,
    /// Rungs to delete, comma separated.
    #[arg(long, value_delimiter = ',', requires = "n")]
    delete: Vec<usize>,
    /// Edge-list JSON file with an arbitrary connected graph.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Arithmetic mode; picked automatically from the size cap when omitted.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Floating comparison tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Size range, inclusive: a single value or `lo..hi`.
    #[arg(long, default_value = "2..10")]
    n: String,
    /// Deletion count: `all` or a single value.
    #[arg(long, default_value = "all")]
    r: String,
    /// Deletion subsets per cell: `all` or a sample count (requires --seed).
    #[arg(long, default_value = "all")]
    subsets: String,
    /// Seed for sampled subsets.
    #[arg(long)]
    seed: Option<u64>,
    /// Formula variant: the oracle-corrected forms or the printed statements.
    #[arg(long, value_enum, default_value_t = VariantArg::Proof)]
    variant: VariantArg,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Also print the ratio-convergence table for the size range.
    #[arg(long)]
    ratio: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Corrected formulas (the ones the oracle confirms).
    Proof,
    /// Formulas in their originally published form.
    Statement,
}

impl From<VariantArg> for Variant {
    fn from(value: VariantArg) -> Variant {
        match value {
            VariantArg::Proof => Variant::Corrected,
            VariantArg::Statement => Variant::Statement,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Invariants(args) => invariants(args),
        Command::Verify(args) => verify(args),
        Command::Sweep(args) => sweep_table(args),
    }
}

fn max_exact_vertices() -> Result<usize, Error> {
    match std::env::var(MAX_EXACT_ENV) {
        Err(_) => Ok(sweep::DEFAULT_EXACT_CAP),
        Ok(text) => text
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad {MAX_EXACT_ENV} value {text:?}"))),
    }
}

/// Exact when the graph fits under the cap, floating (with a warning)
/// otherwise; an explicit request to go exact past the cap is an error.
fn resolve_mode(requested: Option<Mode>, vertices: usize, cap: usize) -> Result<RunMode, Error> {
    match requested {
        Some(Mode::Float) => Ok(RunMode::Float),
        Some(Mode::Exact) => {
            if vertices > cap {
                Err(Error::ExactCapExceeded { vertices, cap })
            } else {
                Ok(RunMode::Exact)
            }
        }
        None => {
            if vertices > cap {
                eprintln!(
                    "warning: {vertices} vertices exceed the exact cap of {cap}; \
                     switching to floating arithmetic (raise {MAX_EXACT_ENV} to override)"
                );
                Ok(RunMode::Float)
            } else {
                Ok(RunMode::Exact)
            }
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<ExitCode, Error> {
    if args.format != Format::Json {
        return Err(Error::InvalidParameter("graphs are emitted as JSON only".into()));
    }
    let spec = FamilySpec::new(args.n, args.delete)?;
    let graph = spec.build();
    let mut text = serde_json::to_string_pretty(&graph.to_json())?;
    text.push('\n');
    emit(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn invariants(args: InvariantsArgs) -> Result<ExitCode, Error> {
    let cap = max_exact_vertices()?;
    let report = match (&args.n, &args.file) {
        (Some(n), None) => {
            let spec = FamilySpec::new(*n, args.delete.clone())?;
            match resolve_mode(args.mode, spec.vertex_count(), cap)? {
                RunMode::Exact => report::family_report(&spec, args.tol)?,
                RunMode::Float => report::family_report_float(&spec, args.tol)?,
            }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let json: GraphJson = serde_json::from_str(&text)?;
            let graph = Graph::try_from(json)?;
            if !graph.is_connected() {
                return Err(Error::Disconnected);
            }
            match resolve_mode(args.mode, graph.vertex_count(), cap)? {
                RunMode::Exact => report::graph_report(&graph, args.tol)?,
                RunMode::Float => report::graph_report_float(&graph)?,
            }
        }
        _ => {
            return Err(Error::InvalidParameter(
                "provide exactly one of --n or --file".into(),
            ))
        }
    };
    render_report(&report, args.format, args.out.as_deref())?;
    Ok(if report.all_agree() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn render_report(report: &InvariantReport, format: Format, out: Option<&Path>) -> Result<(), Error> {
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => {
            let mut t = report.to_json()?;
            t.push('\n');
            t
        }
    };
    emit(&text, out)
}

fn parse_range(text: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::InvalidParameter(format!("bad size range {text:?} (use N or LO..HI)"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Ok((lo, hi))
    } else {
        let n = text.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn build_config(args: &GridArgs) -> Result<SweepConfig, Error> {
    let (n_lo, n_hi) = parse_range(&args.n)?;
    let r = match args.r.trim() {
        "all" => None,
        text => Some(
            text.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad deletion count {text:?}")))?,
        ),
    };
    let subsets = match args.subsets.trim() {
        "all" => SubsetPolicy::All,
        text => {
            let per_cell = text
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad subset count {text:?}")))?;
            let seed = args.seed.ok_or_else(|| {
                Error::InvalidParameter("sampled subsets require an explicit --seed".into())
            })?;
            SubsetPolicy::Sampled { per_cell, seed }
        }
    };
    let cap = max_exact_vertices()?;
    let mode = resolve_mode(args.mode, 2 * n_hi, cap)?;
    let config = SweepConfig {
        n_lo,
        n_hi,
        r,
        subsets,
        mode,
        tol: args.tol,
        variant: args.variant.into(),
        max_exact_vertices: cap,
    };
    config.validate()?;
    Ok(config)
}

fn verify(args: GridArgs) -> Result<ExitCode, Error> {
    let config = build_config(&args)?;
    let summary = sweep::verify(&config)?;
    print!("{}", summary.render());
    if args.ratio {
        let sizes: Vec<usize> = (config.n_lo..=config.n_hi).collect();
        println!("ratio convergence (limits 8/15 = {:.9}, 16/33 = {:.9}):", 8.0 / 15.0, 16.0 / 33.0);
        println!("{:>8} {:>16} {:>16}", "n", "kf/wiener", "kfstar/gutman");
        for row in sweep::ratio_table(&sizes)? {
            println!(
                "{:>8} {:>16.9} {:>16.9}",
                row.n, row.kf_over_wiener, row.kfstar_over_gutman
            );
        }
    }
    Ok(if summary.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn sweep_table(args: SweepArgs) -> Result<ExitCode, Error> {
    let config = build_config(&args.grid)?;
    let rows = sweep::sweep_rows(&config)?;
    let text = match args.format {
        Format::Csv => {
            let mut text = String::from(TABLE_CSV_HEADER);
            text.push('\n');
            for row in &rows {
                text.push_str(&render_table_csv(row, config.mode));
                text.push('\n');
            }
            text
        }
        Format::Json => {
            let values: Vec<serde_json::Value> =
                rows.iter().map(|row| table_row_json(row, config.mode)).collect();
            let mut text = serde_json::to_string_pretty(&values)?;
            text.push('\n');
            text
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn render_table_csv(row: &TableRow, mode: RunMode) -> String {
    match mode {
        RunMode::Exact => row.to_csv(),
        RunMode::Float => format!(
            "{},{},{},{},{},{},{},{},{}",
            row.n,
            row.r,
            row.center_deleted,
            klab_core::rational::rational_to_f64(&row.kf),
            row.tau,
            row.wiener,
            row.kfstar
                .as_ref()
                .map(|v| klab_core::rational::rational_to_f64(v).to_string())
                .unwrap_or_default(),
            row.gutman.as_ref().map(|g| g.to_string()).unwrap_or_default(),
            klab_core::rational::rational_to_f64(&row.kf_over_w),
        ),
    }
}

fn table_row_json(row: &TableRow, mode: RunMode) -> serde_json::Value {
    let rational = |q: &BigRational| -> serde_json::Value {
        match mode {
            RunMode::Exact => serde_json::json!(RationalJson::from(q)),
            RunMode::Float => serde_json::json!(klab_core::rational::rational_to_f64(q)),
        }
    };
    serde_json::json!({
        "n": row.n,
        "r": row.r,
        "center_deleted": row.center_deleted,
        "kf": rational(&row.kf),
        "tau": row.tau.to_string(),
        "wiener": row.wiener.to_string(),
        "kfstar": row.kfstar.as_ref().map(rational),
        "gutman": row.gutman.as_ref().map(|g| g.to_string()),
        "kf_over_w": rational(&row.kf_over_w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert_eq!(parse_range("2..10").unwrap(), (2, 10));
        assert!(parse_range("x").is_err());
        assert!(parse_range("2..y").is_err());
    }

    #[test]
    fn mode_resolution() {
        assert_eq!(resolve_mode(None, 10, 200).unwrap(), RunMode::Exact);
        assert_eq!(resolve_mode(None, 500, 200).unwrap(), RunMode::Float);
        assert_eq!(resolve_mode(Some(Mode::Float), 10, 200).unwrap(), RunMode::Float);
        assert!(resolve_mode(Some(Mode::Exact), 500, 200).is_err());
    }

    #[test]
    fn exact_csv_keeps_rationals() {
        let row = TableRow::compute(4, 0, false, Variant::Corrected).unwrap();
        assert!(render_table_csv(&row, RunMode::Exact).contains("86/3"));
        assert!(!render_table_csv(&row, RunMode::Float).contains("86/3"));
    }
}
