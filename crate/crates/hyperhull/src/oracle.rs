//! Brute-force reference implementations.
//!
//! Everything in this module trades speed for obviousness and is used to
//! validate the fast paths; none of it shares orientation or hull code with
//! them. Budgets fail loudly instead of silently truncating.

use crate::hull::HullChain;
use crate::lattice::LatticePoint;
use crate::{Error, Result};

/// Hard limits for the brute-force paths.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Largest `N` accepted by the per-`x` enumerations.
    pub max_n: u64,
    /// Largest number of grid cells a square scan may touch.
    pub max_cells: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 1_000_000,
            max_cells: 100_000_000,
        }
    }
}

impl OracleBudget {
    fn check_n(&self, what: &str, n: u64) -> Result<()> {
        if n > self.max_n {
            return Err(Error::BudgetExceeded(format!(
                "{what}: N = {n} exceeds the oracle budget {}",
                self.max_n
            )));
        }
        Ok(())
    }
}

/// Full cross product `(a - o) x (b - o)`; oracle-local on purpose.
fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// Monotone scan keeping strict left turns; assumes `points` already
/// ordered along the sweep.
fn monotone_scan(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Lower convex hull of `points` (sorted lexicographically inside), keeping
/// only strict vertices. Oracle-local monotone scan.
fn oracle_lower_hull(mut points: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    points.sort_unstable();
    points.dedup();
    monotone_scan(&points)
}

/// Full convex hull cycle (counterclockwise, closed, strict vertices only)
/// of an arbitrary set of lattice points. Oracle-local.
pub fn brute_hull_ccw(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p.x, p.y)).collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().map(|(x, y)| LatticePoint { x, y }).collect();
    }
    let lower = monotone_scan(&pts);
    let rev: Vec<(i64, i64)> = pts.iter().rev().copied().collect();
    let upper = monotone_scan(&rev);
    let mut cycle = lower;
    // Drop the shared endpoints of the two passes.
    let start = *cycle.first().unwrap();
    cycle.extend(upper.into_iter().skip(1).take_while(|&q| q != start));
    cycle
        .into_iter()
        .map(|(x, y)| LatticePoint { x, y })
        .collect()
}

/// Brute-force hull chain: enumerate the column minimum `(x, ceil(N/x))` for
/// every single `x` in `[1, N]` and take a generic monotone chain.
pub fn brute_chain(n: u64, budget: &OracleBudget) -> Result<HullChain> {
    if n < 1 {
        return Err(Error::InvalidInput("N must be >= 1".into()));
    }
    budget.check_n("brute_chain", n)?;
    let mut cols: Vec<(i64, i64)> = Vec::with_capacity(n as usize);
    for x in 1..=n {
        let y = (n + x - 1) / x;
        cols.push((x as i64, y as i64));
    }
    let hull = oracle_lower_hull(cols);
    Ok(HullChain {
        n,
        vertices: hull.into_iter().map(|(x, y)| LatticePoint { x, y }).collect(),
    })
}

/// Brute-force strip count: number of lattice points with `N <= x*y <= n_hi`,
/// counted column by column.
pub fn brute_strip_count(n: u64, n_hi: u64, budget: &OracleBudget) -> Result<u64> {
    if n < 1 || n_hi < n {
        return Err(Error::InvalidInput(format!(
            "strip needs 1 <= N <= n_hi, got N = {n}, n_hi = {n_hi}"
        )));
    }
    if n_hi > budget.max_n.saturating_mul(10) {
        return Err(Error::BudgetExceeded(format!(
            "brute_strip_count: n_hi = {n_hi} exceeds the oracle budget {}",
            budget.max_n.saturating_mul(10)
        )));
    }
    let mut count = 0u64;
    for x in 1..=n_hi {
        let y_lo = (n + x - 1) / x;
        let y_hi = n_hi / x;
        if y_hi >= y_lo {
            count += y_hi - y_lo + 1;
        }
    }
    Ok(count)
}

/// All lattice points of the square cut `[1, N2]^2` with `x*y >= N`,
/// found by scanning every cell.
pub fn brute_q_lattice_points(n: u64, budget: &OracleBudget) -> Result<Vec<LatticePoint>> {
    if n < 8 {
        return Err(Error::InvalidInput("square cut needs N >= 8".into()));
    }
    let n1 = {
        // Oracle-local floor cube root by linear search from below.
        let mut r = 1u64;
        while (r + 1) * (r + 1) * (r + 1) <= n {
            r += 1;
        }
        r
    };
    let n2 = (n + n1 - 1) / n1;
    if n2 * n2 > budget.max_cells {
        return Err(Error::BudgetExceeded(format!(
            "brute_q_lattice_points: {n2}^2 cells exceed the budget {}",
            budget.max_cells
        )));
    }
    let mut pts = Vec::new();
    for x in 1..=n2 {
        for y in 1..=n2 {
            if x * y >= n {
                pts.push(LatticePoint {
                    x: x as i64,
                    y: y as i64,
                });
            }
        }
    }
    Ok(pts)
}

/// Result of a lattice width computation: the minimum over primitive integer
/// directions `q` of `max q . p - min q . p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteWidth {
    pub width: f64,
    pub direction: (i64, i64),
}

/// Exhaustive lattice width: scans every primitive direction of max-norm up
/// to `max_norm` with no pruning. Intended for small point sets only.
pub fn brute_lattice_width(
    points: &[(f64, f64)],
    max_norm: i64,
    budget: &OracleBudget,
) -> Result<BruteWidth> {
    if points.is_empty() {
        return Err(Error::InvalidInput("width of an empty point set".into()));
    }
    if points.len() > 1_000 {
        return Err(Error::BudgetExceeded(format!(
            "brute_lattice_width: {} points exceed the limit 1000",
            points.len()
        )));
    }
    if max_norm < 1 || max_norm > 1_000 {
        return Err(Error::InvalidInput(format!(
            "brute_lattice_width: max_norm must be in [1, 1000], got {max_norm}"
        )));
    }
    let _ = budget;
    let mut best = f64::INFINITY;
    let mut dir = (0i64, 0i64);
    for u in -max_norm..=max_norm {
        for v in -max_norm..=max_norm {
            // One representative per opposite pair.
            if v < 0 || (v == 0 && u <= 0) {
                continue;
            }
            let g = crate::lattice::gcd(u.unsigned_abs(), v.unsigned_abs());
            if g != 1 {
                continue;
            }
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &(x, y) in points {
                let d = u as f64 * x + v as f64 * y;
                lo = lo.min(d);
                hi = hi.max(d);
            }
            let w = hi - lo;
            if w < best {
                best = w;
                dir = (u, v);
            }
        }
    }
    Ok(BruteWidth {
        width: best,
        direction: dir,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint { x, y }
    }

    #[test]
    fn brute_chain_small() {
        let b = OracleBudget::default();
        let ch = brute_chain(10, &b).unwrap();
        let v: Vec<(i64, i64)> = ch.vertices.iter().map(|q| (q.x, q.y)).collect();
        assert_eq!(v, vec![(1, 10), (2, 5), (5, 2), (10, 1)]);
        assert_eq!(brute_chain(1, &b).unwrap().vertices, vec![p(1, 1)]);
    }

    #[test]
    fn brute_chain_budget() {
        let b = OracleBudget {
            max_n: 100,
            ..OracleBudget::default()
        };
        assert!(matches!(
            brute_chain(101, &b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn brute_strip_small() {
        let b = OracleBudget::default();
        // N = 100, n_hi = 102: d(100) + d(101) + d(102) = 9 + 2 + 8.
        assert_eq!(brute_strip_count(100, 102, &b).unwrap(), 19);
        assert_eq!(brute_strip_count(1, 1, &b).unwrap(), 1);
    }

    #[test]
    fn brute_q_points_examples() {
        let b = OracleBudget::default();
        let pts = brute_q_lattice_points(10, &b).unwrap();
        let set: std::collections::BTreeSet<(i64, i64)> =
            pts.iter().map(|q| (q.x, q.y)).collect();
        let expected: std::collections::BTreeSet<(i64, i64)> = [
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 3),
            (4, 4),
            (4, 5),
            (5, 2),
            (5, 3),
            (5, 4),
            (5, 5),
        ]
        .into_iter()
        .collect();
        assert_eq!(set, expected);

        let pts = brute_q_lattice_points(8, &b).unwrap();
        let set: std::collections::BTreeSet<(i64, i64)> =
            pts.iter().map(|q| (q.x, q.y)).collect();
        let expected: std::collections::BTreeSet<(i64, i64)> =
            [(2, 4), (3, 3), (3, 4), (4, 2), (4, 3), (4, 4)].into_iter().collect();
        assert_eq!(set, expected);
    }

    #[test]
    fn brute_hull_of_q_points() {
        let b = OracleBudget::default();
        let hull = brute_hull_ccw(&brute_q_lattice_points(10, &b).unwrap());
        let v: Vec<(i64, i64)> = hull.iter().map(|q| (q.x, q.y)).collect();
        assert_eq!(v, vec![(2, 5), (5, 2), (5, 5)]);
    }

    #[test]
    fn brute_width_small_shapes() {
        let b = OracleBudget::default();
        // Unit square: width 1 along (1, 0) (or (0, 1)).
        let sq = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
        let w = brute_lattice_width(&sq, 10, &b).unwrap();
        assert!((w.width - 1.0).abs() < 1e-12);
        // Right triangle with legs 3: width 3, e.g. along (1, 0).
        let tri = [(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)];
        let w = brute_lattice_width(&tri, 10, &b).unwrap();
        assert!((w.width - 3.0).abs() < 1e-12);
    }
}
