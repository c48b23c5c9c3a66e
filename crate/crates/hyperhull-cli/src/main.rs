//! Command-line reports over the integer hull machinery: single-N hull and
//! area summaries, per-edge cap tables, number-theory comparisons, and
//! geometric-grid scans with deterministic CSV/JSON output.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperhull::area::{self, DUAL_CHECK_MAX_N};
use hyperhull::caps::{self, HURKENS_BOUND};
use hyperhull::hull;
use hyperhull::lattice::MAX_N;
use hyperhull::nt;
use hyperhull::oracle::{self, OracleBudget};
use hyperhull::scan::{self, ScanOptions};
use hyperhull::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hyperhull",
    version,
    about = "Integer hulls of {xy >= N}: vertex counts, missed areas, cap geometry, scans"
)]
struct Cli {
    /// Lower the largest accepted N (never raises the built-in bound).
    /// Also read from HYPERHULL_MAX_N; the flag wins.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hull chain summary: vertex counts, strip validation, vertices.
    Hull(HullArgs),
    /// Missed-area report for the reduced square.
    Area(AreaArgs),
    /// Geometric-grid scan, one row per N.
    Scan(ScanArgs),
    /// Number-theory counts with asymptotic comparison.
    #[command(subcommand)]
    Nt(NtCommand),
    /// Per-edge cap table: heights, widths, emptiness.
    Caps(CapsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct HullArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Cross-check against the brute-force references (small N only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct AreaArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    n_min: u64,
    #[arg(long)]
    n_max: u64,
    #[arg(long)]
    points: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Write the table here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
    /// Evaluate rows on one thread (output bytes are identical either way).
    #[arg(long)]
    serial: bool,
    /// Record wall-clock time per row (breaks byte-determinism).
    #[arg(long)]
    timing: bool,
    /// Also write a gnuplot script for the ratio columns; needs --out and
    /// CSV format so the script has a data file to reference.
    #[arg(long, value_name = "FILE")]
    gnuplot: Option<String>,
}

#[derive(Subcommand)]
enum NtCommand {
    /// Divisor summatory function D(M) against M ln M + (2g-1)M.
    Dsum(DsumArgs),
    /// Primitive-pair count F(w) against w ln w / zeta(2).
    Fw(FwArgs),
    /// Lattice points in the strip N <= xy <= N + Delta.
    Strip(StripArgs),
}

#[derive(Args)]
struct DsumArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct FwArgs {
    #[arg(long)]
    w: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct StripArgs {
    #[arg(long)]
    n: u64,
    /// "narrow" (half-cube-root window), "lemma" (double), or a width.
    #[arg(long)]
    delta: String,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Cross-check against the per-column brute count (small N only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CapsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

/// Hard ceiling for the per-edge cap table; beyond this the table itself
/// becomes the bottleneck (millions of rows with a width search each).
const CAPS_TABLE_MAX_N: u64 = 1_000_000_000;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cap = effective_max_n(cli.max_n)?;
    match cli.command {
        Command::Hull(args) => cmd_hull(args, cap),
        Command::Area(args) => cmd_area(args, cap),
        Command::Scan(args) => cmd_scan(args, cap),
        Command::Nt(NtCommand::Dsum(args)) => cmd_nt_dsum(args),
        Command::Nt(NtCommand::Fw(args)) => cmd_nt_fw(args),
        Command::Nt(NtCommand::Strip(args)) => cmd_nt_strip(args, cap),
        Command::Caps(args) => cmd_caps(args, cap),
    }
}

/// Effective N ceiling: flag beats HYPERHULL_MAX_N beats the built-in
/// bound, and neither source can raise it above the built-in bound.
fn effective_max_n(flag: Option<u64>) -> Result<u64> {
    let from_env = match std::env::var("HYPERHULL_MAX_N") {
        Ok(s) => Some(s.parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!("HYPERHULL_MAX_N is not an integer: {s:?}"))
        })?),
        Err(_) => None,
    };
    Ok(flag.or(from_env).unwrap_or(MAX_N).min(MAX_N))
}

fn check_cap(what: &'static str, n: u64, cap: u64) -> Result<()> {
    if n > cap {
        return Err(Error::BoundExceeded {
            what,
            value: n as u128,
            bound: cap as u128,
        });
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

#[derive(Serialize)]
struct HullReport {
    n: u64,
    f0_h: u64,
    /// Absent below N = 8, where the reduced square has no two-point chain.
    f0_q: Option<u64>,
    strip_pass: bool,
    strip_max_excess: u64,
    strip_bound_floor: u64,
    oracle_checked: bool,
    vertices: Vec<hyperhull::lattice::LatticePoint>,
}

fn cmd_hull(args: HullArgs, cap: u64) -> Result<()> {
    check_cap("N", args.n, cap)?;
    let chain = hull::chain_vertices(args.n)?;
    let strip = hull::validate_strip(&chain);
    let f0_q = if args.n >= 8 {
        Some(hull::f0_q(args.n)?)
    } else {
        None
    };
    if args.oracle {
        let budget = OracleBudget::default();
        let brute = oracle::brute_chain(args.n, &budget)?;
        if brute.vertices != chain.vertices {
            return Err(Error::SelfCheck(format!(
                "fast chain disagrees with the brute-force chain at N={}",
                args.n
            )));
        }
        if args.n >= 8 {
            let pts = oracle::brute_q_lattice_points(args.n, &budget)?;
            let brute_poly = oracle::brute_hull_ccw(&pts);
            if brute_poly != hull::q_polygon(args.n)?.vertices {
                return Err(Error::SelfCheck(format!(
                    "reduced-square polygon disagrees with brute force at N={}",
                    args.n
                )));
            }
        }
    }
    let report = HullReport {
        n: args.n,
        f0_h: chain.f0(),
        f0_q,
        strip_pass: strip.pass,
        strip_max_excess: strip.max_excess,
        strip_bound_floor: strip.bound_floor,
        oracle_checked: args.oracle,
        vertices: chain.vertices,
    };
    match args.format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Text => {
            println!("N = {}", report.n);
            println!("f0_H = {}", report.f0_h);
            match report.f0_q {
                Some(v) => println!("f0_Q = {v}"),
                None => println!("f0_Q = - (needs N >= 8)"),
            }
            println!(
                "strip: {} (max excess {} <= {})",
                if report.strip_pass { "pass" } else { "FAIL" },
                report.strip_max_excess,
                report.strip_bound_floor
            );
            if report.oracle_checked {
                println!("oracle: chain and polygon match brute force");
            }
            print_vertices(&report.vertices);
        }
    }
    Ok(())
}

fn print_vertices(vertices: &[hyperhull::lattice::LatticePoint]) {
    println!("vertices ({}):", vertices.len());
    const SHOWN: usize = 12;
    if vertices.len() <= 2 * SHOWN + 1 {
        for v in vertices {
            println!("  {v}");
        }
    } else {
        for v in &vertices[..SHOWN] {
            println!("  {v}");
        }
        println!("  ... {} more ...", vertices.len() - 2 * SHOWN);
        for v in &vertices[vertices.len() - SHOWN..] {
            println!("  {v}");
        }
    }
}

#[derive(Serialize)]
struct AreaReport {
    n: u64,
    a_n: f64,
    a_n_error_bound: f64,
    dual_checked: bool,
    missed_full: f64,
    missed_full_over_n: f64,
}

fn cmd_area(args: AreaArgs, cap: u64) -> Result<()> {
    check_cap("N", args.n, cap)?;
    let a = area::missed_area_q(args.n)?;
    let full = area::missed_area_range(args.n, 1.0, args.n as f64)?;
    let report = AreaReport {
        n: args.n,
        a_n: a.value,
        a_n_error_bound: a.abs_error_bound,
        dual_checked: args.n <= DUAL_CHECK_MAX_N,
        missed_full: full.value,
        missed_full_over_n: full.value / args.n as f64,
    };
    match args.format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Text => {
            println!("N = {}", report.n);
            println!("A_N = {:.12e} (+- {:.3e})", report.a_n, report.a_n_error_bound);
            println!(
                "dual-path check: {}",
                if report.dual_checked {
                    "passed"
                } else {
                    "skipped (N above cross-check bound)"
                }
            );
            println!(
                "missed area over [1,N]^2 = {:.12e} ({:.6e} per N)",
                report.missed_full, report.missed_full_over_n
            );
        }
    }
    Ok(())
}

fn cmd_scan(args: ScanArgs, cap: u64) -> Result<()> {
    check_cap("n_max", args.n_max, cap)?;
    if args.n_min < 8 {
        return Err(Error::InvalidInput(format!(
            "scan needs n_min >= 8, got {}",
            args.n_min
        )));
    }
    if args.gnuplot.is_some() {
        if args.out.is_none() {
            return Err(Error::InvalidInput(
                "--gnuplot needs --out so the script can reference the data file".into(),
            ));
        }
        if args.format != TableFormat::Csv {
            return Err(Error::InvalidInput(
                "--gnuplot reads CSV; use --format csv".into(),
            ));
        }
    }
    let grid = scan::geometric_grid(args.n_min, args.n_max, args.points)?;
    let opts = ScanOptions {
        parallel: !args.serial,
        timing: args.timing,
    };
    let records = scan::run_scan(&grid, &opts)?;
    let rendered = match args.format {
        TableFormat::Csv => scan::to_csv(&records),
        TableFormat::Json => scan::to_json(&records),
    };
    match &args.out {
        Some(path) => fs::write(path, &rendered)
            .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?,
        None => print!("{rendered}"),
    }
    if let Some(script_path) = &args.gnuplot {
        let data = args.out.as_deref().expect("checked above");
        fs::write(script_path, scan::gnuplot_script(data))
            .map_err(|e| Error::InvalidInput(format!("cannot write {script_path}: {e}")))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct AsymptoticReport {
    arg: u64,
    exact: u64,
    main_term: f64,
    residual: f64,
    allowance: f64,
    residual_over_allowance: f64,
}

impl AsymptoticReport {
    fn new(arg: u64, exact: u64, main_term: f64, allowance: f64) -> Self {
        let residual = exact as f64 - main_term;
        AsymptoticReport {
            arg,
            exact,
            main_term,
            residual,
            allowance,
            residual_over_allowance: residual / allowance,
        }
    }

    fn print_text(&self, name: &str) {
        println!("{name}({}) = {}", self.arg, self.exact);
        println!("main term = {:.6e}", self.main_term);
        println!(
            "residual = {:.6e} ({:.4} of allowance {:.6e})",
            self.residual, self.residual_over_allowance, self.allowance
        );
    }
}

fn cmd_nt_dsum(args: DsumArgs) -> Result<()> {
    let exact = nt::divisor_summatory(args.m)?;
    let m = args.m as f64;
    let main = m * m.ln() + (2.0 * nt::EULER_GAMMA - 1.0) * m;
    let report = AsymptoticReport::new(args.m, exact, main, 10.0 * m.cbrt());
    match args.format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Text => report.print_text("D"),
    }
    Ok(())
}

fn cmd_nt_fw(args: FwArgs) -> Result<()> {
    let exact = nt::primitive_pair_count(args.w)?;
    let w = args.w as f64;
    let main = w * w.ln() / nt::ZETA_2;
    let report = AsymptoticReport::new(args.w, exact, main, 1.5 * w);
    match args.format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Text => report.print_text("F"),
    }
    Ok(())
}

#[derive(Serialize)]
struct StripCountReport {
    n: u64,
    delta: f64,
    n_hi: u64,
    count: u64,
    oracle_checked: bool,
}

fn cmd_nt_strip(args: StripArgs, cap: u64) -> Result<()> {
    check_cap("N", args.n, cap)?;
    let spec = match args.delta.as_str() {
        "narrow" => nt::StripSpec::narrow(args.n)?,
        "lemma" => nt::StripSpec::lemma(args.n)?,
        other => {
            let delta: f64 = other.parse().map_err(|_| {
                Error::InvalidInput(format!(
                    "--delta must be \"narrow\", \"lemma\", or a number, got {other:?}"
                ))
            })?;
            nt::StripSpec::with_delta(args.n, delta)?
        }
    };
    let count = nt::strip_count(&spec)?;
    if args.oracle {
        let budget = OracleBudget::default();
        let brute = oracle::brute_strip_count(spec.n, spec.n_hi, &budget)?;
        if brute != count {
            return Err(Error::SelfCheck(format!(
                "strip count {count} disagrees with brute force {brute} at N={}",
                spec.n
            )));
        }
    }
    let report = StripCountReport {
        n: spec.n,
        delta: spec.delta,
        n_hi: spec.n_hi,
        count,
        oracle_checked: args.oracle,
    };
    match args.format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Text => {
            println!(
                "strip [{}, {}] (delta = {:.6}): {} lattice points{}",
                report.n,
                report.n_hi,
                report.delta,
                report.count,
                if report.oracle_checked {
                    " (matches brute force)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CapRow {
    x1: i64,
    y1: i64,
    x2: i64,
    y2: i64,
    a: u64,
    b: u64,
    k_edge: u64,
    h: f64,
    rho: f64,
    r: f64,
    cap_area: f64,
    width: f64,
    width_direction: (i64, i64),
    empty: bool,
    hurkens_margin: f64,
    chord_ratio: f64,
}

fn cmd_caps(args: CapsArgs, cap: u64) -> Result<()> {
    check_cap("N", args.n, cap.min(CAPS_TABLE_MAX_N))?;
    let chain = hull::chain_vertices(args.n)?;
    let mut rows = Vec::with_capacity(chain.vertices.len().saturating_sub(1));
    for w in chain.vertices.windows(2) {
        let cap_geom = caps::cap_from_edge(w[0], w[1], args.n)?;
        let width = caps::cap_width(&cap_geom, args.n)?;
        let empty = caps::cap_is_empty(&cap_geom, args.n)?;
        let cap_area = area::edge_cap_area(w[0], w[1], args.n)?;
        rows.push(CapRow {
            x1: w[0].x,
            y1: w[0].y,
            x2: w[1].x,
            y2: w[1].y,
            a: cap_geom.p.a,
            b: cap_geom.p.b,
            k_edge: cap_geom.k_edge,
            h: cap_geom.h,
            rho: cap_geom.rho,
            r: cap_geom.r,
            cap_area: cap_area.value,
            width: width.width,
            width_direction: width.direction,
            empty,
            hurkens_margin: HURKENS_BOUND - width.width,
            chord_ratio: cap_geom.chord_ratio(),
        });
    }
    match args.format {
        ReportFormat::Json => emit_json(&rows),
        ReportFormat::Text => {
            println!("N = {} ({} edges)", args.n, rows.len());
            println!(
                "{:>6} {:>6} {:>8} {:>12} {:>12} {:>12} {:>12} {:>12} {:>6} {:>10}",
                "a", "b", "k_edge", "h", "rho", "cap_area", "width", "margin", "empty", "chord/rho"
            );
            for r in &rows {
                println!(
                    "{:>6} {:>6} {:>8} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>6} {:>10.5}",
                    r.a,
                    r.b,
                    r.k_edge,
                    r.h,
                    r.rho,
                    r.cap_area,
                    r.width,
                    r.hurkens_margin,
                    r.empty,
                    r.chord_ratio
                );
            }
        }
    }
    Ok(())
}
