//! `hncurves` — exact homological invariants of nodal and cuspidal curves.
//!
//! Results go to stdout; diagnostics go to stderr. Exit codes: 0 on
//! success, 1 when a computation or verification fails, 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hncurves::dgmodel::{local_cohomology_table, SingularityModel};
use hncurves::modules::Dim;
use hncurves::spectral::{cyclic_u, hn_chart, hodge_de_rham, BigradedPage};
use hncurves::tables::{hkr_hochschild, CurveSpec, HomologyTable};
use hncurves::verify::{run_verify, Scope, VerifyReport};
use hncurves::EngineError;

#[derive(Parser)]
#[command(
    name = "hncurves",
    version,
    about = "Exact Hochschild, cyclic and de Rham-type invariants of \
             projective curves with nodes or cusps",
    after_help = "Exit codes: 0 success, 1 failed computation or \
                  verification, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology table of a curve
    Hh(TableArgs),
    /// Negative cyclic homology table of a curve
    Hn(TableArgs),
    /// The weight spectral sheet abutting de Rham-type cohomology
    Hdr(HdrArgs),
    /// The cyclic u-sheet from Hochschild to negative cyclic homology
    Hc(HcArgs),
    /// The weight-row chart of negative cyclic homology
    Chart(TableArgs),
    /// Cohomology of a local singularity model at one weight
    Local(LocalArgs),
    /// Recompute every frozen value and report pass/fail per check
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Curve family: "nodal" or "cuspidal-cubic"
    #[arg(long, default_value = "nodal")]
    kind: String,
    /// Geometric genus (nodal curves only; defaults to 1)
    #[arg(long)]
    genus: Option<u64>,
    /// Number of nodes (nodal curves only; defaults to 0)
    #[arg(long)]
    nodes: Option<u64>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Inclusive degree range "lo..hi"
    #[arg(long, default_value = "-4..6", allow_hyphen_values = true)]
    range: String,
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct HdrArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Page to display: "1", "2" or "inf"
    #[arg(long, default_value = "inf")]
    page: String,
    /// Highest weight column to display
    #[arg(long, default_value_t = 4)]
    max_weight: i64,
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Print differential ranks with their provenance
    #[arg(long)]
    show_provenance: bool,
}

#[derive(Args)]
struct HcArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Inclusive total-degree range "lo..hi"
    #[arg(long, default_value = "-4..6", allow_hyphen_values = true)]
    range: String,
    /// Page to display: "1", "2" or "inf"
    #[arg(long, default_value = "inf")]
    page: String,
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Print differential ranks with their provenance
    #[arg(long)]
    show_provenance: bool,
}

#[derive(Args)]
struct LocalArgs {
    /// Local model: "crossing", "nodal-cubic-chart" or "cuspidal-cubic-chart"
    #[arg(long, default_value = "crossing")]
    model: String,
    /// Wedge-power weight
    #[arg(long, default_value_t = 2)]
    weight: u32,
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// List representing generators of the finite cohomology groups
    #[arg(long)]
    show_generators: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check scope: all, local, nodal-cubic, general or cuspidal
    #[arg(long, default_value = "all")]
    scope: String,
    /// Output format: text or json
    #[arg(long, default_value = "text")]
    format: String,
}

enum AppError {
    Usage(String),
    Engine(EngineError),
}

impl From<EngineError> for AppError {
    fn from(e: EngineError) -> AppError {
        AppError::Engine(e)
    }
}

type AppResult<T> = std::result::Result<T, AppError>;

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(AppError::Engine(e)) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> AppResult<i32> {
    match cli.command {
        Command::Hh(args) => cmd_hh(args),
        Command::Hn(args) => cmd_hn(args),
        Command::Hdr(args) => cmd_hdr(args),
        Command::Hc(args) => cmd_hc(args),
        Command::Chart(args) => cmd_chart(args),
        Command::Local(args) => cmd_local(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

// ---------------------------------------------------------------------------
// Argument resolution
// ---------------------------------------------------------------------------

fn resolve_curve(args: &CurveArgs) -> AppResult<CurveSpec> {
    match args.kind.as_str() {
        "nodal" => {
            let genus = args.genus.unwrap_or(1);
            let nodes = args.nodes.unwrap_or(0);
            CurveSpec::nodal(genus, nodes)
                .map_err(|e| usage(format!("invalid nodal curve: {e}")))
        }
        "cuspidal-cubic" => {
            if args.genus.is_some() || args.nodes.is_some() {
                return Err(usage(
                    "the cuspidal cubic has fixed genus and singularity; \
                     do not pass --genus or --nodes",
                ));
            }
            Ok(CurveSpec::cuspidal_cubic())
        }
        other => Err(usage(format!(
            "unknown curve kind {other:?}; expected \"nodal\" or \
             \"cuspidal-cubic\""
        ))),
    }
}

fn parse_range(s: &str) -> AppResult<(i64, i64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("range {s:?} is not of the form lo..hi")))?;
    let lo: i64 = a
        .trim()
        .parse()
        .map_err(|_| usage(format!("range start {a:?} is not an integer")))?;
    let hi: i64 = b
        .trim()
        .parse()
        .map_err(|_| usage(format!("range end {b:?} is not an integer")))?;
    if lo > hi {
        return Err(usage(format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn parse_format(s: &str, allowed: &[&str]) -> AppResult<String> {
    if allowed.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(usage(format!(
            "unknown format {s:?}; expected one of {allowed:?}"
        )))
    }
}

/// Page selector: Some(1) shows the first page, everything else (2, 3, ...
/// or "inf") shows the collapsed page.
fn parse_page(s: &str) -> AppResult<Option<u32>> {
    if s == "inf" {
        return Ok(None);
    }
    let r: u32 = s
        .parse()
        .map_err(|_| usage(format!("page {s:?} is not a number or \"inf\"")))?;
    if r == 0 {
        return Err(usage("pages are numbered from 1".to_string()));
    }
    Ok(Some(r))
}

// ---------------------------------------------------------------------------
// Shared rendering
// ---------------------------------------------------------------------------

fn dim_json(d: Dim) -> Value {
    match d {
        Dim::Finite(v) => json!(v),
        Dim::Infinite => json!("inf"),
    }
}

fn print_table(table: &HomologyTable, lo: i64, hi: i64, format: &str) {
    match format {
        "text" => {
            println!("{}", table.label);
            println!("  degree  dim");
            for d in lo..=hi {
                println!("  {d:>6}  {}", table.dim_at(d));
            }
            for note in &table.notes {
                println!("note: {note}");
            }
        }
        "csv" => {
            println!("degree,dim");
            for d in lo..=hi {
                println!("{d},{}", table.dim_at(d));
            }
        }
        "json" => {
            let entries: Vec<Value> = (lo..=hi)
                .map(|d| json!({"degree": d, "dim": dim_json(table.dim_at(d))}))
                .collect();
            let v = json!({
                "label": table.label,
                "entries": entries,
                "notes": table.notes,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => unreachable!("format validated earlier"),
    }
}

fn page_kind_name(page: &BigradedPage) -> &'static str {
    match page.kind {
        hncurves::spectral::PageKind::HodgeDeRham => "hodge-de-rham",
        hncurves::spectral::PageKind::CyclicU => "cyclic-u",
    }
}

fn print_page(page: &BigradedPage, format: &str, show_provenance: bool) {
    let w = page.display;
    match format {
        "text" => {
            println!(
                "{} sheet, page {} (columns {}..{}, rows {}..{})",
                page_kind_name(page),
                page.page,
                w.p.0,
                w.p.1,
                w.q.0,
                w.q.1
            );
            for q in (w.q.0..=w.q.1).rev() {
                let cells: Vec<String> = (w.p.0..=w.p.1)
                    .map(|p| match page.dim(p, q) {
                        Some(0) => ".".to_string(),
                        Some(v) => v.to_string(),
                        None => "?".to_string(),
                    })
                    .collect();
                println!("  q={q:>3} | {}", cells.join(" "));
            }
            let axis: Vec<String> =
                (w.p.0..=w.p.1).map(|p| p.to_string()).collect();
            println!("        p: {}", axis.join(" "));
            if show_provenance {
                for ((p, q), d) in &page.diffs {
                    if !w.contains(*p, *q) {
                        continue;
                    }
                    let (tp, tq) = page.kind.d_target(page.page, *p, *q);
                    let rank = d
                        .rank
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "?".to_string());
                    println!(
                        "  d{} ({p},{q}) -> ({tp},{tq}): rank {rank} — {}",
                        page.page,
                        d.provenance.describe()
                    );
                }
            }
        }
        "csv" => {
            println!("p,q,dim");
            for ((p, q), v) in page.entries_sorted() {
                if w.contains(p, q) {
                    println!("{p},{q},{v}");
                }
            }
        }
        "json" => {
            let entries: Vec<Value> = page
                .entries_sorted()
                .into_iter()
                .filter(|((p, q), _)| w.contains(*p, *q))
                .map(|((p, q), v)| json!({"p": p, "q": q, "dim": v}))
                .collect();
            let differentials: Vec<Value> = page
                .diffs
                .iter()
                .filter(|((p, q), _)| w.contains(*p, *q))
                .map(|((p, q), d)| {
                    json!({
                        "p": p,
                        "q": q,
                        "rank": d.rank,
                        "provenance": d.provenance.describe(),
                    })
                })
                .collect();
            let v = json!({
                "kind": page_kind_name(page),
                "page": page.page,
                "window": {
                    "p": [w.p.0, w.p.1],
                    "q": [w.q.0, w.q.1],
                },
                "entries": entries,
                "differentials": differentials,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => unreachable!("format validated earlier"),
    }
}

// ---------------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------------

fn cmd_hh(args: TableArgs) -> AppResult<i32> {
    let spec = resolve_curve(&args.curve)?;
    let (lo, hi) = parse_range(&args.range)?;
    let format = parse_format(&args.format, &["text", "json", "csv"])?;
    let table = hkr_hochschild(&spec, lo, hi);
    print_table(&table, lo, hi, &format);
    Ok(0)
}

fn cmd_hn(args: TableArgs) -> AppResult<i32> {
    let spec = resolve_curve(&args.curve)?;
    let (lo, hi) = parse_range(&args.range)?;
    let format = parse_format(&args.format, &["text", "json", "csv"])?;
    let report = cyclic_u(&spec, lo, hi)?;
    let chart = hncurves::spectral::hn_table(&spec, lo, hi)?;
    let mut table = report.hn.clone();
    let agree = (lo..=hi).all(|d| table.dim_at(d) == chart.dim_at(d));
    if !agree {
        return Err(AppError::Engine(EngineError::InconsistentRanks {
            p: 0,
            q: 0,
            detail: "cyclic sheet and weight chart disagree".into(),
        }));
    }
    table
        .notes
        .push("cross-checked against the weight-filtration chart".to_string());
    print_table(&table, lo, hi, &format);
    Ok(0)
}

fn cmd_hdr(args: HdrArgs) -> AppResult<i32> {
    let spec = resolve_curve(&args.curve)?;
    let format = parse_format(&args.format, &["text", "json", "csv"])?;
    let page_sel = parse_page(&args.page)?;
    if args.max_weight < 1 {
        return Err(usage("--max-weight must be at least 1".to_string()));
    }
    let report = hodge_de_rham(&spec, args.max_weight)?;
    let page = match page_sel {
        Some(1) => &report.e1,
        Some(r) => {
            if r > 2 {
                eprintln!(
                    "note: the sheet collapses on page {}; page {r} equals \
                     the final page",
                    report.degeneration_page
                );
            }
            &report.e2
        }
        None => &report.e2,
    };
    eprintln!(
        "note: degenerates on page {}; Euler bookkeeping {}, abutment {}",
        report.degeneration_page,
        if report.euler_conserved { "conserved" } else { "violated" },
        if report.abutment_consistent { "consistent" } else { "inconsistent" },
    );
    print_page(page, &format, args.show_provenance);
    if !report.euler_conserved || !report.abutment_consistent {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_hc(args: HcArgs) -> AppResult<i32> {
    let spec = resolve_curve(&args.curve)?;
    let (lo, hi) = parse_range(&args.range)?;
    let format = parse_format(&args.format, &["text", "json", "csv"])?;
    let page_sel = parse_page(&args.page)?;
    let report = cyclic_u(&spec, lo, hi)?;
    let page = match page_sel {
        Some(1) => &report.e1,
        Some(r) => {
            if r > 2 {
                eprintln!(
                    "note: the sheet collapses on page {}; page {r} equals \
                     the final page",
                    report.degeneration_page
                );
            }
            &report.e2
        }
        None => &report.e2,
    };
    eprintln!(
        "note: degenerates on page {}; Euler bookkeeping {}",
        report.degeneration_page,
        if report.euler_conserved { "conserved" } else { "violated" },
    );
    print_page(page, &format, args.show_provenance);
    if !report.euler_conserved {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_chart(args: TableArgs) -> AppResult<i32> {
    let spec = resolve_curve(&args.curve)?;
    let (lo, hi) = parse_range(&args.range)?;
    let format = parse_format(&args.format, &["text", "json", "csv"])?;
    let chart = hn_chart(&spec, lo, hi)?;
    match format.as_str() {
        "text" => {
            println!("{}", chart.label);
            for (k, row) in &chart.rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|(nd, v)| format!("{nd}:{v}"))
                    .collect();
                let body = if cells.is_empty() {
                    "-".to_string()
                } else {
                    cells.join("  ")
                };
                println!("  row k={k:>3}: {body}");
            }
            for note in &chart.notes {
                println!("note: {note}");
            }
        }
        "csv" => {
            println!("k,degree,dim");
            for (k, row) in &chart.rows {
                for (nd, v) in row {
                    println!("{k},{nd},{v}");
                }
            }
        }
        "json" => {
            let rows: Vec<Value> = chart
                .rows
                .iter()
                .map(|(k, row)| {
                    let entries: Vec<Value> = row
                        .iter()
                        .map(|(nd, v)| json!({"degree": nd, "dim": v}))
                        .collect();
                    json!({"k": k, "entries": entries})
                })
                .collect();
            let v = json!({
                "label": chart.label,
                "rows": rows,
                "notes": chart.notes,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => unreachable!("format validated earlier"),
    }
    Ok(0)
}

fn cmd_local(args: LocalArgs) -> AppResult<i32> {
    let model = SingularityModel::from_name(&args.model)
        .map_err(|e| usage(e.to_string()))?;
    let format = parse_format(&args.format, &["text", "json", "csv"])?;
    let table = local_cohomology_table(model, args.weight);
    match format.as_str() {
        "text" => {
            println!(
                "cohomology of the weight-{} wedge power of the {} model",
                table.k,
                model.name()
            );
            for (i, d) in &table.entries {
                let gens = if args.show_generators {
                    match table.generators.get(i) {
                        Some(g) if !g.is_empty() => {
                            format!("  [{}]", g.join(", "))
                        }
                        _ => String::new(),
                    }
                } else {
                    String::new()
                };
                println!("  H^{i} = {d}{gens}");
            }
        }
        "csv" => {
            println!("i,dim");
            for (i, d) in &table.entries {
                println!("{i},{d}");
            }
        }
        "json" => {
            let cohomology: Vec<Value> = table
                .entries
                .iter()
                .map(|(i, d)| {
                    let gens: Vec<String> = if args.show_generators {
                        table.generators.get(i).cloned().unwrap_or_default()
                    } else {
                        Vec::new()
                    };
                    json!({"i": i, "dim": dim_json(*d), "generators": gens})
                })
                .collect();
            let v = json!({
                "model": model.name(),
                "k": table.k,
                "cohomology": cohomology,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => unreachable!("format validated earlier"),
    }
    Ok(0)
}

fn verify_json(report: &VerifyReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "detail": c.detail, "pass": c.pass}))
        .collect();
    json!({
        "scope": report.scope.to_string(),
        "checks": checks,
        "passed": report.all_passed(),
    })
}

fn cmd_verify(args: VerifyArgs) -> AppResult<i32> {
    let scope = Scope::from_name(&args.scope).ok_or_else(|| {
        usage(format!(
            "unknown scope {:?}; expected one of {:?}",
            args.scope,
            Scope::NAMES
        ))
    })?;
    let format = parse_format(&args.format, &["text", "json"])?;
    let report = run_verify(scope)?;
    match format.as_str() {
        "text" => {
            for c in &report.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                println!("[{tag}] {}: {}", c.name, c.detail);
            }
            println!(
                "{}/{} checks passed (scope: {})",
                report.passed(),
                report.checks.len(),
                report.scope
            );
        }
        "json" => {
            println!(
                "{}",
                serde_json::to_string_pretty(&verify_json(&report)).unwrap()
            );
        }
        _ => unreachable!("format validated earlier"),
    }
    if report.all_passed() {
        Ok(0)
    } else {
        Ok(1)
    }
}
