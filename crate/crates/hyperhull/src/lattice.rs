//! Exact integer lattice primitives.
//!
//! Everything downstream relies on these being exact. The safe operating range
//! is `N <= MAX_N = 10^12`: all lattice points handled anywhere in the crate
//! then have coordinates of magnitude at most `COORD_BOUND = 2 * 10^12`, so
//! coordinate differences fit in `i64` and every cross product fits in `i128`
//! with room to spare (`(4 * 10^12)^2 < 2^89`). Inputs outside the range are
//! rejected with a dedicated error instead of silently wrapping.

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Largest `N` accepted by the hull machinery.
pub const MAX_N: u64 = 1_000_000_000_000;

/// Largest coordinate magnitude accepted for exact orientation tests.
pub const COORD_BOUND: i64 = 2_000_000_000_000;

/// A point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    /// Checked constructor; both coordinates must satisfy `|c| <= COORD_BOUND`.
    pub fn new(x: i64, y: i64) -> Result<Self> {
        for c in [x, y] {
            if c.unsigned_abs() > COORD_BOUND as u64 {
                return Err(Error::BoundExceeded {
                    what: "coordinate",
                    value: c.unsigned_abs() as u128,
                    bound: COORD_BOUND as u128,
                });
            }
        }
        Ok(LatticePoint { x, y })
    }

    /// Product `x * y`, exact.
    pub fn level(&self) -> i128 {
        self.x as i128 * self.y as i128
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

/// Shorthand used pervasively in internal construction and tests.
pub(crate) const fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint { x, y }
}

/// Greatest common divisor. `gcd(0, b) = b`; `gcd(0, 0) = 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Ceiling division `ceil(n / d)` for `d >= 1`, without floating point.
pub fn ceil_div(n: u64, d: u64) -> u64 {
    debug_assert!(d >= 1);
    n.div_ceil(d)
}

/// `true` iff the vector `(a, b)` is primitive, i.e. `gcd(a, b) = 1`.
pub fn is_primitive(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

/// Sign of the cross product `(p - o) x (q - o)` without bound checks.
///
/// Callers must guarantee coordinates within `COORD_BOUND`; under that
/// contract the computation is exact (no overflow is possible in `i128`).
pub(crate) fn orient_unchecked(o: LatticePoint, p: LatticePoint, q: LatticePoint) -> i8 {
    let ux = (p.x - o.x) as i128;
    let uy = (p.y - o.y) as i128;
    let vx = (q.x - o.x) as i128;
    let vy = (q.y - o.y) as i128;
    (ux * vy - uy * vx).signum() as i8
}

/// Exact orientation test: sign of `(p - o) x (q - o)`.
///
/// Returns `+1` if `o -> p -> q` is a counterclockwise turn, `-1` if
/// clockwise, `0` if collinear. Errors if any coordinate exceeds
/// [`COORD_BOUND`].
pub fn orient(o: LatticePoint, p: LatticePoint, q: LatticePoint) -> Result<i8> {
    for v in [o, p, q] {
        for c in [v.x, v.y] {
            if c.unsigned_abs() > COORD_BOUND as u64 {
                return Err(Error::BoundExceeded {
                    what: "coordinate",
                    value: c.unsigned_abs() as u128,
                    bound: COORD_BOUND as u128,
                });
            }
        }
    }
    Ok(orient_unchecked(o, p, q))
}

/// A primitive direction vector with positive components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimitiveVector {
    pub a: u64,
    pub b: u64,
}

impl PrimitiveVector {
    /// Requires `a, b >= 1` and `gcd(a, b) = 1`.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidInput(format!(
                "primitive vector needs positive components, got ({a}, {b})"
            )));
        }
        if !is_primitive(a, b) {
            return Err(Error::InvalidInput(format!(
                "({a}, {b}) is not primitive: gcd = {}",
                gcd(a, b)
            )));
        }
        Ok(PrimitiveVector { a, b })
    }
}

/// Exact floor of the cube root of `n`.
pub fn icbrt(n: u64) -> u64 {
    let cube = |r: u64| (r as u128).pow(3);
    let mut r = (n as f64).cbrt().round() as u64;
    while r > 0 && cube(r) > n as u128 {
        r -= 1;
    }
    while cube(r + 1) <= n as u128 {
        r += 1;
    }
    r
}

/// Exact `floor((p/q) * n^(1/3))`, computed as the largest `m` with
/// `q^3 * m^3 <= p^3 * n`; everything stays in `u128`.
pub fn floor_scaled_cbrt(n: u64, p: u64, q: u64) -> u64 {
    debug_assert!(p >= 1 && q >= 1);
    let rhs = (p as u128).pow(3) * n as u128;
    let fits = |m: u64| (q as u128).pow(3) * (m as u128).pow(3) <= rhs;
    let mut m = ((n as f64).cbrt() * p as f64 / q as f64).round() as u64;
    while m > 0 && !fits(m) {
        m -= 1;
    }
    while fits(m + 1) {
        m += 1;
    }
    m
}
