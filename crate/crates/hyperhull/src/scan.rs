//! Scan harness: per-N summary records over geometric grids, with
//! deterministic CSV/JSON emission.
//!
//! Output determinism is a contract: fixed 9-significant-digit scientific
//! formatting, `\n` line endings, rows sorted by N, and `elapsed_ms`
//! forced to zero unless timing is explicitly requested, so that serial
//! and parallel runs of the same command line are byte-identical.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::area::missed_area_q;
use crate::hull::chain_vertices;
use crate::lattice::MAX_N;
use crate::nt::{strip_count, StripSpec};
use crate::{hull, Error, Result};

/// One scan row. `ratio_f0` and `ratio_a` divide by `N^(1/3) ln N`, the
/// common growth scale of the vertex count and the missed area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRecord {
    pub n: u64,
    pub f0_h: u64,
    pub f0_q: u64,
    /// Lattice points in the window of width `N^(1/3)/2` above N.
    pub strip_narrow: u64,
    /// Lattice points in the window of width `2 N^(1/3)` above N.
    pub strip_lemma: u64,
    pub a_n: f64,
    pub ratio_f0: f64,
    pub ratio_a: f64,
    /// Wall-clock milliseconds for this row; exactly 0 unless timing was
    /// requested (timing breaks byte-determinism by design).
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub parallel: bool,
    pub timing: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            parallel: true,
            timing: false,
        }
    }
}

/// The normalization `N^(1/3) ln N`.
pub fn growth_scale(n: u64) -> f64 {
    (n as f64).cbrt() * (n as f64).ln()
}

/// Computes one scan row. Requires `N >= 8` (the reduced square needs a
/// two-point chain).
pub fn scan_record(n: u64, timing: bool) -> Result<ScanRecord> {
    let start = Instant::now();
    let chain = chain_vertices(n)?;
    let f0_h = chain.f0();
    let f0_q = hull::f0_q(n)?;
    let strip_narrow = strip_count(&StripSpec::narrow(n)?)?;
    let strip_lemma = strip_count(&StripSpec::lemma(n)?)?;
    let a_n = missed_area_q(n)?.value;
    let scale = growth_scale(n);
    let elapsed_ms = if timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    Ok(ScanRecord {
        n,
        f0_h,
        f0_q,
        strip_narrow,
        strip_lemma,
        a_n,
        ratio_f0: f0_h as f64 / scale,
        ratio_a: a_n / scale,
        elapsed_ms,
    })
}

/// Geometric grid `round(n_min * (n_max/n_min)^(i/(points-1)))`,
/// deduplicated and ascending.
pub fn geometric_grid(n_min: u64, n_max: u64, points: usize) -> Result<Vec<u64>> {
    if n_min < 1 || n_min > n_max {
        return Err(Error::InvalidInput(format!(
            "need 1 <= n_min <= n_max, got [{n_min}, {n_max}]"
        )));
    }
    if n_max > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n_max",
            value: n_max as u128,
            bound: MAX_N as u128,
        });
    }
    if points < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    let lo = n_min as f64;
    let ratio = n_max as f64 / lo;
    let mut grid: Vec<u64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            (lo * ratio.powf(t)).round() as u64
        })
        .collect();
    grid.sort_unstable();
    grid.dedup();
    // Rounding can overshoot the ends by one; clamp back.
    for v in grid.iter_mut() {
        *v = (*v).clamp(n_min, n_max);
    }
    grid.dedup();
    Ok(grid)
}

/// Evaluates scan rows for the given values of N, sorted ascending.
pub fn run_scan(ns: &[u64], opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    let mut ns: Vec<u64> = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if opts.parallel {
        ns.par_iter()
            .map(|&n| scan_record(n, opts.timing))
            .collect()
    } else {
        ns.iter().map(|&n| scan_record(n, opts.timing)).collect()
    }
}

pub const CSV_HEADER: &str = "N,f0_H,f0_Q,strip_narrow,strip_lemma,A_N,ratio_f0,ratio_A,elapsed_ms";

/// Renders records as CSV with the fixed header and 9-significant-digit
/// scientific reals.
pub fn to_csv(records: &[ScanRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{:.8e},{:.8e},{:.8e},{:.8e}\n",
            r.n,
            r.f0_h,
            r.f0_q,
            r.strip_narrow,
            r.strip_lemma,
            r.a_n,
            r.ratio_f0,
            r.ratio_a,
            r.elapsed_ms
        ));
    }
    out
}

/// Renders records as a pretty-printed JSON array.
pub fn to_json(records: &[ScanRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("scan records serialize");
    s.push('\n');
    s
}

/// A gnuplot script plotting both ratio columns of a scan CSV against N.
pub fn gnuplot_script(csv_path: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set logscale x\n\
         set xlabel 'N'\n\
         set ylabel 'value / (N^{{1/3}} ln N)'\n\
         set key left top\n\
         plot '{csv_path}' skip 1 using 1:7 with linespoints title 'vertex count ratio', \\\n\
         \x20    '{csv_path}' skip 1 using 1:8 with linespoints title 'missed area ratio'\n"
    )
}
