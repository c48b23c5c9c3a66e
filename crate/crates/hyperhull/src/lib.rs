//! Exact geometry of the integer hull of the region `x*y >= N`.
//!
//! The central object is the vertex chain of `conv(Z^2 ∩ {(x,y) : x >= 1, y >= 1, x*y >= N})`
//! running from `(1, N)` to `(N, 1)`. Everything else is built around it:
//!
//! * [`hull`] enumerates the chain in `O(sqrt(N))` candidate points and exact
//!   integer arithmetic, plus the clipped polygon inside the square `[1, N2]^2`.
//! * [`area`] computes the area missed between the chain and the hyperbola in
//!   cancellation-safe closed forms, with exact shoelace / lattice-count checks.
//! * [`nt`] supplies the divisor-sum machinery that counts lattice points in
//!   narrow hyperbolic strips.
//! * [`caps`] analyses the cap cut from the hyperbola by a single hull edge:
//!   tangent levels, osculating-circle radius, lattice width, emptiness.
//! * [`oracle`] holds deliberately naive reimplementations used to validate the
//!   fast paths; they share no code with them.
//! * [`scan`] drives deterministic parameter scans and their CSV/JSON output.
//!
//! All hull computations are exact for `N` up to [`lattice::MAX_N`]; real-valued
//! outputs carry explicit absolute error bounds where cancellation is a risk.

pub mod area;
pub mod caps;
mod error;
pub mod hull;
pub mod lattice;
pub mod nt;
pub mod oracle;
pub mod scan;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
