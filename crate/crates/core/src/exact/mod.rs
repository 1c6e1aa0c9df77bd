//! Exact arithmetic engine.
//!
//! All quantities here are monomials `q * pi^k` with `q` an arbitrary
//! precision rational ([`PiScaled`]). Three independent routes produce the
//! unit-ball coefficient:
//!
//! * [`unit_volume_exact`]: the density recurrence. The first-part density
//!   of a sum of `n` squares of uniform draws is `K_n z^((n-2)/2)` on
//!   `[0, 1]` with `K_(j+1) = K_j * B(j/2, 1/2) / 2`, and
//!   `C_n = 2^n * 2 K_n / n`.
//! * [`unit_volume_closed`]: the even/odd closed forms
//!   `pi^(n/2) / (n/2)!` and `pi^((n-1)/2) * 2^((n+1)/2) / (3*5*...*n)`.
//! * [`unit_volume_gamma`]: `pi^(n/2) / Gamma(n/2 + 1)` with the gamma
//!   function evaluated exactly at integer and half-integer points.
//!
//! Because all three are exact, equality across engines is `==`, not a
//! tolerance check.

mod half_int;
mod numeric;
mod ops;
mod pi_scaled;

pub use half_int::HalfInt;
pub use numeric::{format_f64_sig, parse_decimal};
pub use ops::{
    beta_half, p2_second_part, p_hyper, pdf_first_part, surface_area_unit, unit_volume_closed,
    unit_volume_exact, unit_volume_gamma, volume, MonomialPdf,
};
pub use pi_scaled::PiScaled;

use std::fmt;

/// Errors from the exact engine.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactError {
    /// Dimension outside the operation's domain.
    InvalidDimension { n: u32, min: u32 },
    /// `B(a, 1/2)` requires `a >= 1/2`.
    BetaDomain(HalfInt),
    /// Sum of two monomials with different powers of pi is not a monomial.
    PiPowerMismatch { left: u32, right: u32 },
    /// Radii must be nonnegative.
    NegativeRadius,
    /// Significant-digit counts must be at least 1.
    InvalidPrecision(usize),
    /// Argument outside `[1, 2]`, the support of the second density branch.
    SecondPartDomain(f64),
    /// Malformed textual input.
    Parse(String),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::InvalidDimension { n, min } => {
                write!(f, "dimension {n} is out of range (needs n >= {min})")
            }
            ExactError::BetaDomain(a) => {
                write!(f, "beta_half requires a >= 1/2, got a = {a}")
            }
            ExactError::PiPowerMismatch { left, right } => {
                write!(
                    f,
                    "cannot add monomials in different powers of pi ({left} vs {right})"
                )
            }
            ExactError::NegativeRadius => write!(f, "radius must be nonnegative"),
            ExactError::InvalidPrecision(p) => {
                write!(f, "precision must be at least 1 significant digit, got {p}")
            }
            ExactError::SecondPartDomain(z) => {
                write!(f, "z = {z} is outside [1, 2], the second branch's support")
            }
            ExactError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for ExactError {}
