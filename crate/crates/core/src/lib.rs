//! Unit-ball volumes computed by three independent routes, plus an analyzer
//! for Hamming's inscribed-sphere paradox.
//!
//! The [`exact`] engine derives the unit-ball coefficient `C_n` symbolically:
//! the density of `x^2` for `x` uniform on `[-1, 1]` is convolved with itself
//! `n` times, the restriction to `[0, 1]` stays a monomial `K_n z^(n-2)/2`,
//! and `C_n = 2^n * integral`. Every constant is an exact rational times a
//! power of pi ([`exact::PiScaled`]), so the recurrence, the even/odd closed
//! forms, and the gamma-function form can be compared with zero tolerance.
//!
//! The [`grid`] engine validates the same convolutions numerically with
//! per-cell probability masses, the [`mc`] engine estimates the ball/cube
//! ratio by seeded sampling, and [`paradox`] reports the classical
//! inner-sphere construction (radius `sqrt(n) - 1` in the edge-4 cube).

pub mod exact;
pub mod grid;
pub mod mc;
pub mod paradox;
pub mod quad;

// The exact engine's public signatures use these types; re-exporting them
// spares downstream crates a version-matched dependency.
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
