//! Closed-form analysis of Hamming's corner-spheres construction.
//!
//! Pack `2^n` unit spheres at the corners `(±1, ..., ±1)` of the cube
//! `[-2, 2]^n` and inscribe the largest sphere at the origin tangent to all
//! of them. Its radius is `sqrt(n) - 1`, which grows without bound and
//! first exceeds the cube's half-edge 2 at `n = 10`.
//!
//! How to read that is famously contested. The radius comparison is plain
//! arithmetic: once `sqrt(n) - 1 > 2` the inner ball crosses the face
//! planes `|x_i| = 2`, so parts of it lie outside the cube. The classical
//! presentation instead emphasizes the corner-to-corner diagonal
//! `l_max = 4 sqrt(n)`, which stays comfortably longer than the ball's
//! diameter, and concludes the ball never escapes. [`ParadoxReport`]
//! carries the radius, the half-edge verdicts, and the diagonal so both
//! readings can be checked against the same numbers; it asserts neither
//! prose claim beyond the arithmetic.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::exact;

/// Errors from the analyzer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParadoxError {
    /// The construction degenerates below two dimensions.
    DimensionTooSmall(u32),
}

impl fmt::Display for ParadoxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParadoxError::DimensionTooSmall(n) => {
                write!(f, "the corner-spheres construction needs n >= 2, got {n}")
            }
        }
    }
}

impl std::error::Error for ParadoxError {}

fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Derived quantities of the construction in `n` dimensions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParadoxReport {
    pub n: u32,
    /// `sqrt(n) - 1`: the inner sphere's radius, from tangency along each
    /// main diagonal.
    pub inner_radius: f64,
    /// Whether the radius exceeds the cube's half-edge 2.
    pub inner_exceeds_2: bool,
    /// Geometric consequence of that comparison: points of the inner ball
    /// lie beyond the face planes `|x_i| = 2`.
    pub inner_pokes_outside: bool,
    /// Longest corner-to-corner distance of the cube, `4 sqrt(n)`.
    pub l_max: f64,
    /// `2^n`, exact (serialized as a decimal string).
    #[serde(serialize_with = "biguint_as_string")]
    pub corner_sphere_count: BigUint,
    /// Fraction of the cube inside corner spheres: `2^n C_n / 4^n`, which
    /// equals the ball-in-cube probability for the unit construction.
    pub frac_corner_exact: f64,
    /// Fraction claimed by the inner ball, `C_n (sqrt(n) - 1)^n / 4^n`,
    /// deliberately not clipped to the cube for n >= 10.
    pub frac_inner_raw: f64,
    /// `1 - frac_corner_exact - frac_inner_raw`: a lower bound on the
    /// uncovered fraction (exact below n = 10, where nothing is clipped).
    pub frac_uncovered_lower_bound: f64,
}

/// Analyzes the construction for `n >= 2`.
pub fn analyze(n: u32) -> Result<ParadoxReport, ParadoxError> {
    if n < 2 {
        return Err(ParadoxError::DimensionTooSmall(n));
    }
    let sqrt_n = f64::from(n).sqrt();
    let inner_radius = sqrt_n - 1.0;
    // Tangency identity: subtracting and re-adding 1 is exact in binary
    // floating point at these magnitudes, so the check is bitwise.
    debug_assert_eq!(inner_radius + 1.0, sqrt_n);
    let exceeds = inner_radius > 2.0;
    let frac_corner_exact = exact::p_hyper(n).expect("n >= 2 is in range").to_f64();
    let c_n = exact::unit_volume_exact(n)
        .expect("n >= 2 is in range")
        .to_f64();
    let frac_inner_raw = c_n * (inner_radius / 4.0).powi(n as i32);
    Ok(ParadoxReport {
        n,
        inner_radius,
        inner_exceeds_2: exceeds,
        inner_pokes_outside: exceeds,
        l_max: 4.0 * sqrt_n,
        corner_sphere_count: BigUint::one() << n as usize,
        frac_corner_exact,
        frac_inner_raw,
        frac_uncovered_lower_bound: 1.0 - frac_corner_exact - frac_inner_raw,
    })
}
