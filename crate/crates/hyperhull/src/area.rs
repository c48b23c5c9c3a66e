//! Exact polygon areas and cancellation-safe areas between the hull chain
//! and the hyperbola.
//!
//! The missed area `A_N` is of order `N^(1/3) log N` while `Area(Q_N)` is of
//! order `N^(4/3)`, so the naive difference of the two loses essentially all
//! significant digits at large `N`. Everything here is therefore computed
//! per edge: a cap between a chord and the arc is
//!
//! ```text
//! (x2 - x1) * (e1 + e2) / 2  +  N * g(u),      u = (x2 - x1) / x1,
//! ```
//!
//! where `e_i = (x_i * y_i - N) / x_i` has an exactly representable integer
//! numerator and `g(u) = u(2+u)/(2(1+u)) - ln(1+u)` is evaluated by its
//! alternating series for small `u`. Both terms are nonnegative, so no
//! cancellation occurs. The global difference is kept only as a self-check
//! at small `N`, where it is still safe.

use serde::Serialize;

use crate::hull::{self, q_polygon};
use crate::lattice::{ceil_div, LatticePoint, MAX_N};
use crate::{Error, Result};

/// One rounding unit of the error-accounting model: every real operation is
/// charged `2 * EPSILON` of relative error.
const UNIT: f64 = 2.0 * f64::EPSILON;

/// Cell cap for interior lattice-point counts.
pub const PICK_CELL_BUDGET: u128 = 100_000_000;

/// A real-valued area together with an accumulated absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaResult {
    pub value: f64,
    pub abs_error_bound: f64,
}

impl AreaResult {
    fn new(value: f64, abs_error_bound: f64) -> Self {
        AreaResult {
            value,
            abs_error_bound,
        }
    }
}

/// Twice the area of a simple polygon, exact. Orientation does not matter;
/// the result is the absolute value of the shoelace sum.
pub fn shoelace_area2(polygon: &[LatticePoint]) -> Result<u128> {
    Ok(shoelace_signed2(polygon)?.unsigned_abs())
}

fn shoelace_signed2(polygon: &[LatticePoint]) -> Result<i128> {
    if polygon.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "polygon needs >= 3 vertices, got {}",
            polygon.len()
        )));
    }
    let mut sum = 0i128;
    for (p, q) in cycle_edges(polygon) {
        sum += p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128;
    }
    Ok(sum)
}

fn cycle_edges(
    polygon: &[LatticePoint],
) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
    (0..polygon.len()).map(move |i| (polygon[i], polygon[(i + 1) % polygon.len()]))
}

/// Interior and boundary lattice-point counts of a convex lattice polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PickCounts {
    pub interior: u64,
    pub boundary: u64,
}

fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn ceil_div_i128(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    -(-a).div_euclid(b)
}

/// Exact interior/boundary counts for a convex polygon, suitable for the
/// Pick identity `2 * area = 2I + B - 2`.
///
/// The boundary count is a gcd sum over the edges. The interior count walks
/// integer columns and intersects the strict edge half-planes with exact
/// integer arithmetic, so it shares nothing with the shoelace path. Convexity
/// (turns of one sign, collinear vertices allowed) is required; the bounding
/// box is capped at [`PICK_CELL_BUDGET`] cells.
pub fn pick_counts(polygon: &[LatticePoint]) -> Result<PickCounts> {
    let signed2 = shoelace_signed2(polygon)?;
    if signed2 == 0 {
        return Err(Error::InvalidInput(
            "degenerate polygon: zero area".into(),
        ));
    }
    // Normalize to counterclockwise so that the strict interior is
    // cross > 0 for every edge.
    let mut verts: Vec<LatticePoint> = polygon.to_vec();
    if signed2 < 0 {
        verts.reverse();
    }
    let mut boundary = 0u64;
    for (p, q) in cycle_edges(&verts) {
        let dx = (q.x - p.x).unsigned_abs();
        let dy = (q.y - p.y).unsigned_abs();
        if dx == 0 && dy == 0 {
            return Err(Error::InvalidInput(
                "degenerate polygon: repeated vertex".into(),
            ));
        }
        boundary += crate::lattice::gcd(dx, dy);
    }
    for i in 0..verts.len() {
        let a = verts[i];
        let b = verts[(i + 1) % verts.len()];
        let c = verts[(i + 2) % verts.len()];
        if crate::lattice::orient_unchecked(a, b, c) < 0 {
            return Err(Error::InvalidInput(
                "pick_counts requires a convex polygon".into(),
            ));
        }
    }
    let x_min = verts.iter().map(|p| p.x).min().unwrap();
    let x_max = verts.iter().map(|p| p.x).max().unwrap();
    let y_min = verts.iter().map(|p| p.y).min().unwrap();
    let y_max = verts.iter().map(|p| p.y).max().unwrap();
    let cells = (x_max - x_min) as u128 * (y_max - y_min) as u128;
    if cells > PICK_CELL_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "pick_counts bounding box has {cells} cells (cap {PICK_CELL_BUDGET})"
        )));
    }
    let mut interior = 0u64;
    // Strictly interior points need x_min < x < x_max: a point at an extreme
    // abscissa lies on the boundary face there.
    for x in (x_min + 1)..x_max {
        let mut lo = i128::MIN / 4;
        let mut hi = i128::MAX / 4;
        let mut empty = false;
        for (p, q) in cycle_edges(&verts) {
            let dx = (q.x - p.x) as i128;
            let dy = (q.y - p.y) as i128;
            // Strict inside: dx*(y - p.y) - dy*(x - p.x) > 0.
            let rhs = dx * p.y as i128 + dy * (x - p.x) as i128;
            if dx > 0 {
                lo = lo.max(floor_div(rhs, dx) + 1);
            } else if dx < 0 {
                hi = hi.min(ceil_div_i128(-rhs, -dx) - 1);
            } else if -dy * (x - p.x) as i128 <= 0 {
                empty = true;
                break;
            }
        }
        if !empty && hi >= lo {
            interior += (hi - lo + 1) as u64;
        }
    }
    Ok(PickCounts { interior, boundary })
}

/// `g(u) = u(2+u)/(2(1+u)) - ln(1+u)` for `u >= 0`, the scaled area between
/// a secant of the hyperbola and the arc. Near zero the direct form cancels
/// to `O(u^3)`, so the alternating series
/// `sum_{k>=3} (-1)^(k+1) (k-2)/(2k) u^k` is used for `u <= 1/2`.
fn g_secant(u: f64) -> f64 {
    debug_assert!(u >= 0.0);
    if u > 0.5 {
        return u * (2.0 + u) / (2.0 * (1.0 + u)) - u.ln_1p();
    }
    let mut sum = 0.0f64;
    let mut power = u * u * u;
    let mut k = 3u32;
    loop {
        let term = power * (k as f64 - 2.0) / (2.0 * k as f64);
        let signed = if k % 2 == 1 { term } else { -term };
        sum += signed;
        if term <= sum.abs() * f64::EPSILON * 0.25 || k > 80 {
            break;
        }
        power *= u;
        k += 1;
    }
    sum
}

/// `h(t) = t - ln(1+t)` for `t >= 0`, the scaled corner sliver area. Series
/// `sum_{k>=2} (-1)^k t^k / k` for small `t`.
fn h_sliver(t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if t > 0.5 {
        return t - t.ln_1p();
    }
    let mut sum = 0.0f64;
    let mut power = t * t;
    let mut k = 2u32;
    loop {
        let term = power / k as f64;
        let signed = if k % 2 == 0 { term } else { -term };
        sum += signed;
        if term <= sum.abs() * f64::EPSILON * 0.25 || k > 80 {
            break;
        }
        power *= t;
        k += 1;
    }
    sum
}

struct EdgeReals {
    x1: f64,
    x2: f64,
    /// Exact integer excesses x_i*y_i - N; e_i = exc_i / x_i.
    exc1: f64,
    exc2: f64,
    slope: f64,
}

fn edge_reals(p1: LatticePoint, p2: LatticePoint, n: u64) -> Result<EdgeReals> {
    if p1.x < 1 || p2.y < 1 {
        return Err(Error::InvalidInput(format!(
            "cap endpoints must lie in the open first quadrant: {p1}, {p2}"
        )));
    }
    if p1.x >= p2.x {
        return Err(Error::InvalidInput(format!(
            "cap needs p1.x < p2.x, got {} and {}",
            p1.x, p2.x
        )));
    }
    let exc1 = p1.level() - n as i128;
    let exc2 = p2.level() - n as i128;
    if exc1 < 0 || exc2 < 0 {
        // The region {xy >= N, x > 0} is convex, so endpoint membership
        // puts the whole chord on or above the arc.
        return Err(Error::InvalidInput(format!(
            "chord endpoint below the level-{n} hyperbola: {p1}, {p2}"
        )));
    }
    Ok(EdgeReals {
        x1: p1.x as f64,
        x2: p2.x as f64,
        exc1: exc1 as f64,
        exc2: exc2 as f64,
        slope: (p2.y - p1.y) as f64 / (p2.x - p1.x) as f64,
    })
}

/// Cap of the chord over the clipped window `[a, b]`, `x1 <= a <= b <= x2`.
/// At `a = x1` the left excess is the exact `e1`, and symmetrically on the
/// right, so the unclipped cap is the special case `a = x1, b = x2`.
fn clipped_cap(e: &EdgeReals, n: u64, a: f64, b: f64) -> AreaResult {
    if b <= a {
        return AreaResult::new(0.0, 0.0);
    }
    let nf = n as f64;
    // e(a) = e1 + (a - x1) * (slope + N/(x1*a)): the chord-minus-arc gap at
    // the clip point, without ever forming chord(a) - N/a directly.
    let ea = e.exc1 / e.x1 + (a - e.x1) * (e.slope + nf / (e.x1 * a));
    let eb = e.exc2 / e.x2 + (b - e.x2) * (e.slope + nf / (e.x2 * b));
    let u = (b - a) / a;
    let trapezoid = (b - a) * (ea + eb) / 2.0;
    let curved = nf * g_secant(u);
    let value = trapezoid + curved;
    // Charge a conservative flat op count per term; clipping adds the
    // cancellation inside e(a), bounded by the magnitudes of its two parts.
    let clip_mag = (a - e.x1) * (e.slope.abs() + nf / (e.x1 * a))
        + (e.x2 - b) * (e.slope.abs() + nf / (e.x2 * b));
    let err = UNIT * (8.0 * trapezoid.abs() + 12.0 * curved.abs() + 4.0 * (b - a) * clip_mag);
    AreaResult::new(value, err)
}

/// Area between the chord `[p1, p2]` and the arc of `xy = N` over
/// `[p1.x, p2.x]`; equals `(x2-x1)(y1+y2)/2 - N ln(x2/x1)`, computed in the
/// cancellation-free per-edge form. Always `>= 0`.
pub fn edge_cap_area(p1: LatticePoint, p2: LatticePoint, n: u64) -> Result<AreaResult> {
    check_area_n(n, 1)?;
    let e = edge_reals(p1, p2, n)?;
    Ok(clipped_cap(&e, n, e.x1, e.x2))
}

fn check_area_n(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(Error::InvalidInput(format!("N must be >= {min}, got {n}")));
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

/// Area of `Q_N = {xy >= N} ∩ [1,N2]²`: the integral of `N2 - N/x` from
/// `N/N2` to `N2`, i.e. `N2² - N - N ln(N2²/N)`.
pub fn area_q(n: u64) -> Result<AreaResult> {
    check_area_n(n, 8)?;
    let params = hull::hull_params(n)?;
    let n2 = params.n2;
    let square = (n2 as u128 * n2 as u128 - n as u128) as f64;
    let log_term = n as f64 * ((n2 as f64 * n2 as f64) / n as f64).ln();
    let value = square - log_term;
    let err = UNIT * (2.0 * square + 4.0 * log_term);
    Ok(AreaResult::new(value, err))
}

/// The missed area `A_N`: area of `Q_N` minus its integer hull, computed as
/// the corner sliver plus the sum of the lower-chain edge caps.
///
/// The polygon's chain starts at `(x_min, N2)` with `x_min = ceil(N/N2)`;
/// the sliver is the full column area of `Q_N` left of `x_min`,
/// `N * h(E/N)` with `E = x_min*N2 - N`. The symmetric corner at the bottom
/// right contributes no extra term: every missed point with `y < x_min`
/// already lies under the final chain edges, so it is covered by the caps.
///
/// For `N <= 10^9` the result is checked against the independent evaluation
/// `area_q(N) - shoelace/2`; disagreement is reported as a self-check
/// failure.
/// Largest N at which [`missed_area_q`] cross-checks its per-edge sum
/// against the polygon-complement evaluation.
pub const DUAL_CHECK_MAX_N: u64 = 1_000_000_000;

pub fn missed_area_q(n: u64) -> Result<AreaResult> {
    check_area_n(n, 8)?;
    let poly = q_polygon(n)?;
    let chain = poly.lower_chain();
    let params = hull::hull_params(n)?;
    let x_min = ceil_div(n, params.n2);
    let excess = (x_min as u128 * params.n2 as u128 - n as u128) as f64;
    let sliver = n as f64 * h_sliver(excess / n as f64);
    let mut value = sliver;
    let mut err = UNIT * 6.0 * sliver;
    for w in chain.windows(2) {
        let cap = edge_cap_area(w[0], w[1], n)?;
        value += cap.value;
        err += cap.abs_error_bound + UNIT * value.abs();
    }
    if n <= DUAL_CHECK_MAX_N {
        let whole = area_q(n)?;
        let poly_area2 = shoelace_area2(&poly.vertices)? as f64;
        let other = whole.value - poly_area2 / 2.0;
        let tol = (err + whole.abs_error_bound).max(1e-6 * value.abs().max(1.0));
        if (value - other).abs() > tol {
            return Err(Error::SelfCheck(format!(
                "missed-area paths disagree at N={n}: per-edge {value}, difference {other}"
            )));
        }
    }
    Ok(AreaResult::new(value, err))
}

/// Total area between the hull chain of `{xy >= N}` and the hyperbola for
/// `x` in `[x_lo, x_hi]`, splitting edges at the window bounds by linear
/// interpolation of the chord. The window must satisfy
/// `1 <= x_lo <= x_hi <= N`; an empty window gives 0.
pub fn missed_area_range(n: u64, x_lo: f64, x_hi: f64) -> Result<AreaResult> {
    check_area_n(n, 1)?;
    if !x_lo.is_finite() || !x_hi.is_finite() || x_lo < 1.0 || x_hi < x_lo || x_hi > n as f64 {
        return Err(Error::InvalidInput(format!(
            "window [{x_lo}, {x_hi}] must satisfy 1 <= x_lo <= x_hi <= {n}"
        )));
    }
    let chain = hull::chain_vertices(n)?;
    missed_area_range_on_chain(&chain.vertices, n, x_lo, x_hi)
}

/// Same as [`missed_area_range`] but reusing an already computed chain.
pub fn missed_area_range_on_chain(
    chain: &[LatticePoint],
    n: u64,
    x_lo: f64,
    x_hi: f64,
) -> Result<AreaResult> {
    let mut value = 0.0f64;
    let mut err = 0.0f64;
    for w in chain.windows(2) {
        let (p1, p2) = (w[0], w[1]);
        if (p2.x as f64) <= x_lo || (p1.x as f64) >= x_hi {
            continue;
        }
        let e = edge_reals(p1, p2, n)?;
        let a = e.x1.max(x_lo);
        let b = e.x2.min(x_hi);
        let cap = clipped_cap(&e, n, a, b);
        value += cap.value;
        err += cap.abs_error_bound + UNIT * value.abs();
    }
    Ok(AreaResult::new(value, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    fn assert_close(got: f64, want: f64, rel: f64) {
        let tol = rel * want.abs().max(1e-300);
        assert!(
            (got - want).abs() <= tol,
            "got {got}, want {want} (tol {tol})"
        );
    }

    #[test]
    fn shoelace_examples() {
        assert_eq!(
            shoelace_area2(&[pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap(),
            1
        );
        assert_eq!(
            shoelace_area2(&[pt(2, 5), pt(5, 5), pt(5, 2)]).unwrap(),
            9
        );
        assert_eq!(
            shoelace_area2(&[pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]).unwrap(),
            8
        );
        assert!(shoelace_area2(&[pt(0, 0), pt(1, 1)]).is_err());
    }

    #[test]
    fn pick_examples() {
        let p = pick_counts(&[pt(2, 5), pt(5, 5), pt(5, 2)]).unwrap();
        assert_eq!(p, PickCounts { interior: 1, boundary: 9 });
        let p = pick_counts(&[pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap();
        assert_eq!(p, PickCounts { interior: 0, boundary: 3 });
        let p = pick_counts(&[pt(0, 0), pt(3, 0), pt(0, 3)]).unwrap();
        assert_eq!(p, PickCounts { interior: 1, boundary: 9 });
    }

    #[test]
    fn pick_identity_on_q_polygons() {
        for n in 8..=500u64 {
            let poly = q_polygon(n).unwrap();
            let area2 = shoelace_area2(&poly.vertices).unwrap();
            let p = pick_counts(&poly.vertices).unwrap();
            assert_eq!(
                2 * p.interior as u128 + p.boundary as u128 - 2,
                area2,
                "Pick identity fails at N={n}"
            );
        }
    }

    #[test]
    fn pick_rejects_nonconvex_and_degenerate() {
        // A dart: reflex at (1,1).
        let dart = [pt(0, 0), pt(4, 0), pt(1, 1), pt(0, 4)];
        assert!(matches!(pick_counts(&dart), Err(Error::InvalidInput(_))));
        assert!(pick_counts(&[pt(0, 0), pt(5, 0), pt(9, 0)]).is_err());
        let wide = [
            pt(0, 0),
            pt(1_000_000, 0),
            pt(1_000_000, 200),
            pt(0, 200),
        ];
        assert!(matches!(
            pick_counts(&wide),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn cap_examples() {
        let cap = edge_cap_area(pt(2, 5), pt(5, 2), 10).unwrap();
        assert_close(cap.value, 10.5 - 10.0 * 2.5f64.ln(), 1e-14);
        assert_close(cap.value, 1.3370926812584493, 1e-12);
        let cap = edge_cap_area(pt(1, 4), pt(2, 2), 4).unwrap();
        assert_close(cap.value, 3.0 - 4.0 * 2.0f64.ln(), 1e-14);
        assert_close(cap.value, 0.2274112777602188, 1e-12);
        let cap = edge_cap_area(pt(1, 2), pt(2, 1), 2).unwrap();
        assert_close(cap.value, 1.5 - 2.0 * 2.0f64.ln(), 1e-14);
        assert_close(cap.value, 0.1137056388801094, 1e-12);
    }

    #[test]
    fn cap_rejects_bad_chords() {
        assert!(edge_cap_area(pt(5, 2), pt(2, 5), 10).is_err());
        // (3,3) is below xy = 10.
        assert!(edge_cap_area(pt(2, 5), pt(3, 3), 10).is_err());
    }

    /// Composite-Simpson reference for the cap integrand.
    fn simpson_cap(p1: (f64, f64), p2: (f64, f64), n: f64, a: f64, b: f64) -> f64 {
        let slope = (p2.1 - p1.1) / (p2.0 - p1.0);
        let f = |x: f64| p1.1 + (x - p1.0) * slope - n / x;
        let m = 1 << 14;
        let step = (b - a) / m as f64;
        let mut sum = f(a) + f(b);
        for i in 1..m {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(a + i as f64 * step);
        }
        sum * step / 3.0
    }

    #[test]
    fn cap_matches_quadrature() {
        for (p1, p2, n) in [
            (pt(2, 5), pt(5, 2), 10u64),
            (pt(1, 4), pt(2, 2), 4),
            (pt(1, 10), pt(2, 5), 10),
            (pt(5, 2), pt(10, 1), 10),
        ] {
            let cap = edge_cap_area(p1, p2, n).unwrap();
            let reference = simpson_cap(
                (p1.x as f64, p1.y as f64),
                (p2.x as f64, p2.y as f64),
                n as f64,
                p1.x as f64,
                p2.x as f64,
            );
            assert_close(cap.value, reference, 1e-10);
        }
    }

    #[test]
    fn area_q_examples() {
        assert_close(area_q(10).unwrap().value, 5.8370926812584493, 1e-12);
        assert_close(area_q(8).unwrap().value, 2.4548225555204375, 1e-12);
        assert_close(area_q(1000).unwrap().value, 6697.4149070059543, 1e-12);
        assert!(area_q(7).is_err());
    }

    #[test]
    fn missed_area_examples() {
        let a = missed_area_q(10).unwrap();
        assert_close(a.value, 1.3370926812584493, 1e-10);
        let a = missed_area_q(8).unwrap();
        assert_close(a.value, 0.4548225555204375, 1e-10);
        // N=11 has a genuine corner sliver: E = 2*6 - 11 = 1.
        let a = missed_area_q(11).unwrap();
        assert_close(a.value, 1.4581396777648666, 1e-10);
    }

    #[test]
    fn missed_area_dual_path_small() {
        for n in 8..=2000u64 {
            let a = missed_area_q(n).unwrap();
            let whole = area_q(n).unwrap().value;
            let poly = q_polygon(n).unwrap();
            let half = shoelace_area2(&poly.vertices).unwrap() as f64 / 2.0;
            assert_close(a.value, whole - half, 1e-9);
        }
    }

    #[test]
    fn missed_range_examples() {
        let a = missed_area_range(10, 1.0, 10.0).unwrap();
        assert_close(a.value, 25.5 - 10.0 * 10.0f64.ln(), 1e-12);
        assert_close(a.value, 2.4741490700595432, 1e-10);
        // The outer caps are equal by the swap symmetry of the chain.
        let left = missed_area_range(10, 1.0, 2.0).unwrap();
        let right = missed_area_range(10, 5.0, 10.0).unwrap();
        assert_close(left.value, 7.5 - 10.0 * 2.0f64.ln(), 1e-12);
        assert_close(left.value, right.value, 1e-12);
        let mid = missed_area_range(10, 2.0, 5.0).unwrap();
        assert_close(mid.value, 1.3370926812584493, 1e-12);
        assert_eq!(missed_area_range(10, 3.0, 3.0).unwrap().value, 0.0);
        assert!(missed_area_range(10, 0.5, 3.0).is_err());
        assert!(missed_area_range(10, 2.0, 11.0).is_err());
    }

    #[test]
    fn missed_range_splits_edges() {
        // Clipping inside an edge: [2.5, 5] plus [2, 2.5] equals [2, 5].
        let part1 = missed_area_range(10, 2.0, 2.5).unwrap().value;
        let part2 = missed_area_range(10, 2.5, 5.0).unwrap().value;
        assert_close(part2, 8.125 - 10.0 * 2.0f64.ln(), 1e-12);
        assert_close(part1 + part2, 1.3370926812584493, 1e-12);
        let reference = simpson_cap((2.0, 5.0), (5.0, 2.0), 10.0, 2.5, 5.0);
        assert_close(part2, reference, 1e-10);
    }

    #[test]
    fn missed_range_additive_and_symmetric() {
        for n in [36u64, 100, 1000, 12345] {
            let chain = hull::chain_vertices(n).unwrap().vertices;
            let full = missed_area_range(n, 1.0, n as f64).unwrap().value;
            let mid = (n as f64).sqrt();
            let a = missed_area_range(n, 1.0, mid).unwrap().value;
            let b = missed_area_range(n, mid, n as f64).unwrap().value;
            assert_close(a + b, full, 1e-9);
            // The chain is symmetric under (x,y) -> (y,x), but vertical
            // caps are not: reading an edge's cap by rows instead of
            // columns shifts the corner sliver N*h(exc/N) from one
            // endpoint to the other.
            for w in chain.windows(2) {
                let cap = missed_area_range(n, w[0].x as f64, w[1].x as f64)
                    .unwrap()
                    .value;
                let mirror = missed_area_range(n, w[1].y as f64, w[0].y as f64)
                    .unwrap()
                    .value;
                let nf = n as f64;
                let exc1 = (w[0].level() - n as i128) as f64;
                let exc2 = (w[1].level() - n as i128) as f64;
                let lhs = cap + nf * h_sliver(exc1 / nf);
                let rhs = mirror + nf * h_sliver(exc2 / nf);
                assert_close(lhs, rhs, 1e-9);
            }
        }
    }

    #[test]
    fn caps_are_nonnegative() {
        for n in [10u64, 100, 999, 5000, 123_456] {
            let chain = hull::chain_vertices(n).unwrap().vertices;
            for w in chain.windows(2) {
                let cap = edge_cap_area(w[0], w[1], n).unwrap();
                assert!(cap.value >= 0.0, "negative cap at N={n}, edge {}-{}", w[0], w[1]);
                assert!(cap.abs_error_bound >= 0.0);
            }
        }
    }

    #[test]
    fn error_bounds_are_sane() {
        let a = missed_area_q(1000).unwrap();
        assert!(a.abs_error_bound > 0.0);
        assert!(a.abs_error_bound < 1e-9 * a.value.max(1.0));
    }
}
