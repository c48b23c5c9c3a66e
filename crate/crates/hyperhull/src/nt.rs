//! Divisor counting and hyperbolic strip counts.
//!
//! The lattice points of the strip `N <= x*y <= N + Delta` are counted by
//! divisor level: their number is `D(floor(N + Delta)) - D(N - 1)` where
//! `D(M) = sum_{n <= M} d(n)` is the divisor summatory function, computed
//! exactly in `O(sqrt(M))` by the hyperbola method. Coprime pair counts
//! `F(w) = #{(a, b) : gcd(a, b) = 1, a*b <= w} = sum_{n <= w} 2^omega(n)`
//! come from an omega sieve.

use serde::Serialize;

use crate::lattice::floor_scaled_cbrt;
use crate::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_861;

/// `zeta(2) = pi^2 / 6`.
pub const ZETA_2: f64 = 1.644_934_066_848_226_436;

/// Largest argument accepted by the exact divisor machinery. Slightly above
/// the hull bound so that strip upper ends `N + 2*N^(1/3)` stay in range.
pub const MAX_DIVISOR_ARG: u64 = 1_100_000_000_000;

/// Trial division is used up to this bound; beyond it `divisor_count`
/// switches to deterministic factoring.
const TRIAL_DIVISION_MAX: u64 = 10_000_000_000;

/// Memory cap for the omega sieve (one byte per integer).
pub const MAX_SIEVE_W: u64 = 100_000_000;

fn check_arg(what: &'static str, n: u64, bound: u64) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what,
            value: n as u128,
            bound: bound as u128,
        });
    }
    Ok(())
}

/// Number of divisors `d(n)` for `n >= 1`.
///
/// Uses trial division below `10^10` and deterministic Miller-Rabin plus
/// Brent-Pollard factoring above, so the result is exact everywhere in range.
pub fn divisor_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("divisor_count needs n >= 1".into()));
    }
    check_arg("n", n, MAX_DIVISOR_ARG)?;
    if n <= TRIAL_DIVISION_MAX {
        return Ok(divisor_count_trial(n));
    }
    let mut count = 1u64;
    let mut factors = Vec::new();
    factorize(n, &mut factors);
    factors.sort_unstable();
    let mut i = 0;
    while i < factors.len() {
        let mut e = 0u64;
        let p = factors[i];
        while i < factors.len() && factors[i] == p {
            e += 1;
            i += 1;
        }
        count *= e + 1;
    }
    Ok(count)
}

fn divisor_count_trial(n: u64) -> u64 {
    let mut n = n;
    let mut count = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u64;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            count *= e + 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        count *= 2;
    }
    count
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This base set is deterministic for every n < 2^64.
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of composite
/// odd `n`.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut q = 1u64;
        let mut ys = y;
        let m = 128u64;
        let mut r = 1u64;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && d == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                d = crate::lattice::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if d == n {
            // Backtrack one step at a time.
            loop {
                ys = f(ys);
                d = crate::lattice::gcd(x.abs_diff(ys), n);
                if d > 1 {
                    break;
                }
            }
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factorize(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    // Strip small primes first so rho only sees hard composites.
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
    }
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factorize(d, out);
    factorize(n / d, out);
}

/// Divisor summatory function `D(M) = sum_{n <= M} d(n)`, exact, via the
/// hyperbola method: `D(M) = 2 * sum_{k <= sqrt(M)} floor(M/k) - floor(sqrt(M))^2`.
/// `D(0) = 0`.
pub fn divisor_summatory(m: u64) -> Result<u64> {
    check_arg("M", m, MAX_DIVISOR_ARG)?;
    if m == 0 {
        return Ok(0);
    }
    let s = m.isqrt();
    let mut sum = 0u64;
    for k in 1..=s {
        sum += m / k;
    }
    Ok(2 * sum - s * s)
}

/// A validated strip window: count lattice points with
/// `N <= x*y <= n_hi` where `n_hi = floor(N + Delta)`.
///
/// For the two canonical widths the integer window is computed exactly from
/// integer cube roots, never from a floating floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripSpec {
    pub n: u64,
    pub delta: f64,
    pub n_hi: u64,
}

impl StripSpec {
    /// Canonical narrow strip, `Delta = N^(1/3) / 2`.
    pub fn narrow(n: u64) -> Result<Self> {
        Self::validate_n(n)?;
        Ok(StripSpec {
            n,
            delta: 0.5 * (n as f64).cbrt(),
            n_hi: n + floor_scaled_cbrt(n, 1, 2),
        })
    }

    /// Strip of the vertex bound, `Delta = 2 * N^(1/3)`.
    pub fn lemma(n: u64) -> Result<Self> {
        Self::validate_n(n)?;
        Ok(StripSpec {
            n,
            delta: 2.0 * (n as f64).cbrt(),
            n_hi: n + floor_scaled_cbrt(n, 2, 1),
        })
    }

    /// Arbitrary nonnegative width; the window floor is taken in `f64`.
    pub fn with_delta(n: u64, delta: f64) -> Result<Self> {
        Self::validate_n(n)?;
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "strip width must be finite and >= 0, got {delta}"
            )));
        }
        Ok(StripSpec {
            n,
            delta,
            n_hi: n + delta.floor() as u64,
        })
    }

    fn validate_n(n: u64) -> Result<()> {
        if n < 1 {
            return Err(Error::InvalidInput("strip needs N >= 1".into()));
        }
        check_arg("N", n, crate::lattice::MAX_N)
    }
}

/// Exact number of lattice points in the strip: `D(n_hi) - D(N - 1)`.
pub fn strip_count(spec: &StripSpec) -> Result<u64> {
    Ok(divisor_summatory(spec.n_hi)? - divisor_summatory(spec.n - 1)?)
}

/// Number of distinct prime factors `omega(n)` for all `n <= w`;
/// `omega[0]` is unused, `omega[1] = 0`.
pub fn omega_sieve(w: u64) -> Result<Vec<u8>> {
    if w < 1 {
        return Err(Error::InvalidInput("omega_sieve needs w >= 1".into()));
    }
    check_arg("w", w, MAX_SIEVE_W)?;
    let w = w as usize;
    let mut omega = vec![0u8; w + 1];
    for p in 2..=w {
        if omega[p] == 0 {
            let mut m = p;
            while m <= w {
                omega[m] += 1;
                m += p;
            }
        }
    }
    Ok(omega)
}

/// `F(w) = #{(a, b) : a, b >= 1, gcd(a, b) = 1, a*b <= w}`, computed as
/// `sum_{n <= w} 2^omega(n)`.
pub fn primitive_pair_count(w: u64) -> Result<u64> {
    let omega = omega_sieve(w)?;
    Ok(primitive_pair_count_from_sieve(&omega, w))
}

/// Same as [`primitive_pair_count`] but reusing an existing sieve
/// (`omega.len() > w` required).
pub fn primitive_pair_count_from_sieve(omega: &[u8], w: u64) -> u64 {
    debug_assert!(omega.len() > w as usize);
    let mut sum = 0u64;
    for &o in &omega[1..=w as usize] {
        sum += 1u64 << o;
    }
    sum
}
