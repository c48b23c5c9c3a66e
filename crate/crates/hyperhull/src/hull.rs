//! The vertex chain of the integer hull of `{(x, y) : x, y >= 1, x*y >= N}`.
//!
//! Every vertex of the hull satisfies `y = ceil(N/x)` and `x = ceil(N/y)`,
//! so the full chain is recovered from `O(sqrt(N))` candidate points: the
//! column minima for `x <= sqrt(N)` and, symmetrically, the row minima for
//! `y <= sqrt(N)`. A single strict monotone-chain pass over the candidates
//! (exact `i128` orientation tests, collinear points discarded) produces the
//! chain from `(1, N)` to `(N, 1)`.
//!
//! Invariants maintained here and checked by the test suite:
//! * vertices strictly increase in `x` and strictly decrease in `y`;
//! * consecutive turns are strictly convex toward the origin;
//! * every vertex satisfies `N <= x*y <= N + 2*N^(1/3)` (narrow strip);
//! * the chain is invariant under `(x, y) -> (y, x)` plus reversal.

use serde::Serialize;

use crate::lattice::{
    ceil_div, floor_scaled_cbrt, icbrt, orient_unchecked, pt, LatticePoint, MAX_N,
};
use crate::{Error, Result};

/// Derived cut parameters for `N`: `N1 = floor(N^(1/3))`, `N2 = ceil(N/N1)`
/// and the canonical strip half-width `Delta = N^(1/3)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HullParams {
    pub n: u64,
    pub n1: u64,
    pub n2: u64,
    pub delta: f64,
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidInput("N must be >= 1".into()));
    }
    if n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "N",
            value: n as u128,
            bound: MAX_N as u128,
        });
    }
    Ok(())
}

/// Computes `HullParams` for `1 <= N <= MAX_N`.
///
/// `N1` comes from an exact integer cube root, never from a float power, so
/// `N1^3 <= N < (N1+1)^3` holds for every representable `N`.
pub fn hull_params(n: u64) -> Result<HullParams> {
    check_n(n)?;
    let n1 = icbrt(n);
    let n2 = ceil_div(n, n1);
    Ok(HullParams {
        n,
        n1,
        n2,
        delta: 0.5 * (n as f64).cbrt(),
    })
}

/// The candidate points containing every hull vertex: the union of
/// `(x, ceil(N/x))` for `x <= sqrt(N)` and `(ceil(N/y), y)` for `y <= sqrt(N)`,
/// deduplicated and sorted by `x` ascending (equivalently `y` descending).
pub fn candidate_points(n: u64) -> Result<Vec<LatticePoint>> {
    check_n(n)?;
    let s = n.isqrt();
    let mut pts: Vec<LatticePoint> = Vec::with_capacity(2 * s as usize);
    for x in 1..=s {
        pts.push(pt(x as i64, ceil_div(n, x) as i64));
    }
    // Row sweep, emitted with y descending so x stays ascending overall.
    for y in (1..=s).rev() {
        let x = ceil_div(n, y);
        let p = pt(x as i64, y as i64);
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    debug_assert!(pts.windows(2).all(|w| w[0].x < w[1].x && w[0].y > w[1].y));
    Ok(pts)
}

/// The hull vertex chain from `(1, N)` to `(N, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullChain {
    pub n: u64,
    pub vertices: Vec<LatticePoint>,
}

impl HullChain {
    /// Number of vertices, counting both endpoints.
    pub fn f0(&self) -> u64 {
        self.vertices.len() as u64
    }

    /// Binary search for a vertex with the given `x` coordinate.
    pub fn vertex_at_x(&self, x: i64) -> Option<LatticePoint> {
        self.vertices
            .binary_search_by_key(&x, |v| v.x)
            .ok()
            .map(|i| self.vertices[i])
    }
}

/// Strict lower convex hull of points already sorted by `x` ascending.
/// Collinear middle points are discarded (`orient = 0` pops).
fn lower_hull_strict(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut h: Vec<LatticePoint> = Vec::with_capacity(points.len().min(1024));
    for &p in points {
        while h.len() >= 2 && orient_unchecked(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
            h.pop();
        }
        h.push(p);
    }
    h
}

/// Computes the vertex chain of the integer hull for `1 <= N <= MAX_N`.
pub fn chain_vertices(n: u64) -> Result<HullChain> {
    let cands = candidate_points(n)?;
    Ok(HullChain {
        n,
        vertices: lower_hull_strict(&cands),
    })
}

/// Vertex count of the full chain, counting both endpoints.
pub fn f0_h(n: u64) -> Result<u64> {
    Ok(chain_vertices(n)?.f0())
}

/// The convex hull polygon of the lattice points inside the square cut
/// `[1, N2]^2` intersected with `{x*y >= N}`.
///
/// `vertices` is the closed cycle in counterclockwise order starting at the
/// bottom-left vertex; `lower_len` marks the prefix running along the
/// hyperbola-facing boundary, ending at the bottom-right vertex `(N2, x_min)`
/// with `x_min = ceil(N/N2)`. The corner `(N2, N2)` is always a vertex, and
/// the top edge can extend left of `(N1, N2)` when `N1` does not divide `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QPolygon {
    pub n: u64,
    pub vertices: Vec<LatticePoint>,
    lower_len: usize,
}

impl QPolygon {
    /// Vertex count of the closed polygon.
    pub fn f0(&self) -> u64 {
        self.vertices.len() as u64
    }

    /// The hyperbola-facing part of the boundary, from the bottom-left vertex
    /// to `(N2, ceil(N/N2))` inclusive, in `x`-ascending order.
    pub fn lower_chain(&self) -> &[LatticePoint] {
        &self.vertices[..self.lower_len]
    }
}

/// Computes the square-cut hull polygon. Requires `N >= 8` so that `N1 >= 2`
/// and the polygon is two-dimensional.
pub fn q_polygon(n: u64) -> Result<QPolygon> {
    check_n(n)?;
    if n < 8 {
        return Err(Error::InvalidInput(format!(
            "square-cut polygon needs N >= 8, got {n}"
        )));
    }
    let p = hull_params(n)?;
    let n2 = p.n2 as i64;
    let x_min = ceil_div(n, p.n2) as i64;

    let mut pts: Vec<LatticePoint> = candidate_points(n)?
        .into_iter()
        .filter(|q| q.x >= x_min && q.x <= n2 && q.y <= n2)
        .collect();
    // Square-boundary extremes; the bottom frontier candidates above cover
    // everything else.
    pts.push(pt(x_min, n2));
    pts.push(pt(n2, x_min));
    pts.push(pt(n2, n2));
    pts.sort();
    pts.dedup();

    // Andrew's monotone chain, strict turns only, counterclockwise cycle.
    // The lower pass runs to the lex-max point (N2, N2); the hyperbola-facing
    // chain is the part before that final vertical climb.
    let lower = lower_hull_strict(&pts);
    let upper = {
        let rev: Vec<LatticePoint> = pts.iter().rev().copied().collect();
        lower_hull_strict(&rev)
    };
    let lower_len = lower.len() - 1;
    let mut cycle = lower;
    cycle.extend(upper.into_iter().skip(1).take_while(|&q| q != pts[0]));

    // The hyperbola-facing part must end exactly at the bottom-right vertex.
    debug_assert_eq!(cycle[lower_len - 1], pt(n2, x_min));
    Ok(QPolygon {
        n,
        vertices: cycle,
        lower_len,
    })
}

/// Vertex count of the square-cut hull polygon.
pub fn f0_q(n: u64) -> Result<u64> {
    Ok(q_polygon(n)?.f0())
}

/// One row of a narrow-strip validation report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripRow {
    pub vertex: LatticePoint,
    /// `x*y - N`, exact.
    pub excess: u64,
    pub pass: bool,
}

/// Narrow-strip validation: every chain vertex must satisfy
/// `N <= x*y <= N + 2*N^(1/3)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripReport {
    pub n: u64,
    /// Real bound `2*N^(1/3)`.
    pub bound: f64,
    /// Exact integer bound `floor(2*N^(1/3))`; since excesses are integers the
    /// real comparison reduces to `excess <= bound_floor`.
    pub bound_floor: u64,
    pub rows: Vec<StripRow>,
    pub max_excess: u64,
    pub pass: bool,
}

/// Checks the narrow-strip bound for every vertex of `chain`.
pub fn validate_strip(chain: &HullChain) -> StripReport {
    let n = chain.n;
    let bound_floor = floor_scaled_cbrt(n, 2, 1);
    let mut rows = Vec::with_capacity(chain.vertices.len());
    let mut max_excess = 0u64;
    for &v in &chain.vertices {
        let excess = (v.level() - n as i128) as u64;
        max_excess = max_excess.max(excess);
        rows.push(StripRow {
            vertex: v,
            excess,
            pass: excess <= bound_floor,
        });
    }
    StripReport {
        n,
        bound: 2.0 * (n as f64).cbrt(),
        bound_floor,
        max_excess,
        pass: rows.iter().all(|r| r.pass),
        rows,
    }
}

/// A prefix point `(k, ceil(N/k))` together with the exact convexity test
/// `N/(k+1) > 2*ceil(N/k) - ceil(N/(k-1))` that guarantees it is a vertex
/// when its predecessor is (trivially true for `k = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrefixPoint {
    pub k: u64,
    pub point: LatticePoint,
    pub convexity_ok: bool,
}

/// The prefix points `(k, ceil(N/k))` for `1 <= k <= N^(1/3)`.
///
/// The convexity flag is recorded, not assumed: the chain construction never
/// depends on it.
pub fn prefix_vertices(n: u64) -> Result<Vec<PrefixPoint>> {
    check_n(n)?;
    let n1 = icbrt(n);
    let mut out = Vec::with_capacity(n1 as usize);
    for k in 1..=n1 {
        let convexity_ok = if k == 1 {
            true
        } else {
            // N/(k+1) > 2*ceil(N/k) - ceil(N/(k-1)), exactly in integers.
            let rhs = 2 * ceil_div(n, k) as i128 - ceil_div(n, k - 1) as i128;
            (n as i128) > (k as i128 + 1) * rhs
        };
        out.push(PrefixPoint {
            k,
            point: pt(k as i64, ceil_div(n, k) as i64),
            convexity_ok,
        });
    }
    Ok(out)
}
