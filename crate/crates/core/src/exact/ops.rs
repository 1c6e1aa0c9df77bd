//! Closed-form operations: beta values, first-part densities, and ball
//! volumes by three independent derivations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::half_int::HalfInt;
use super::pi_scaled::PiScaled;
use super::ExactError;

fn factorial(m: u64) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Gamma(g)` on the half-integer lattice: a rational times an optional
/// single factor of `sqrt(pi)`.
struct GammaHalf {
    q: BigRational,
    has_sqrt_pi: bool,
}

/// `Gamma(m) = (m-1)!` and `Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)`,
/// for `g >= 1/2`.
fn gamma_half(g: HalfInt) -> GammaHalf {
    assert!(g.doubled() >= 1, "lattice gamma needs g >= 1/2");
    match g.as_integer() {
        Some(m) => GammaHalf {
            q: BigRational::from_integer(factorial((m - 1) as u64)),
            has_sqrt_pi: false,
        },
        None => {
            let m = ((g.doubled() - 1) / 2) as u64;
            let num = factorial(2 * m);
            let den = (BigInt::one() << (2 * m as usize)) * factorial(m);
            GammaHalf {
                q: BigRational::new(num, den),
                has_sqrt_pi: true,
            }
        }
    }
}

/// `B(a, 1/2)` for half-integer `a >= 1/2`.
///
/// The result is always a plain rational (integer `a`) or a rational times
/// pi (half-integer `a`): the `sqrt(pi)` factors of the gamma functions
/// pair up exactly.
pub fn beta_half(a: HalfInt) -> Result<PiScaled, ExactError> {
    if a.doubled() < 1 {
        return Err(ExactError::BetaDomain(a));
    }
    let g_a = gamma_half(a);
    let g_sum = gamma_half(a + HalfInt::from_doubled(1));
    // B(a, 1/2) = Gamma(a) Gamma(1/2) / Gamma(a + 1/2), Gamma(1/2) = sqrt(pi).
    let sqrt_pi_count = 1 + u32::from(g_a.has_sqrt_pi) - u32::from(g_sum.has_sqrt_pi);
    debug_assert_eq!(sqrt_pi_count % 2, 0);
    Ok(PiScaled::new(g_a.q / g_sum.q, sqrt_pi_count / 2))
}

/// The restriction to `[0, 1]` of the density of `x_1^2 + ... + x_n^2`
/// (each `x_i` uniform on `[-1, 1]`): a single monomial
/// `coeff * z^exponent` with `exponent = (n - 2) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPdf {
    n: u32,
    coeff: PiScaled,
    exponent: HalfInt,
}

impl MonomialPdf {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self) -> &PiScaled {
        &self.coeff
    }

    pub fn exponent(&self) -> HalfInt {
        self.exponent
    }

    /// Exact integral over `[0, 1]`: `coeff / (exponent + 1) = 2 coeff / n`.
    pub fn integral_unit(&self) -> PiScaled {
        self.coeff
            .mul_rational(&BigRational::new(BigInt::from(2), BigInt::from(self.n)))
    }

    /// Density value at `z`, zero outside `[0, 1]`. The `n = 1` density is
    /// unbounded as `z` approaches 0.
    pub fn eval(&self, z: f64) -> f64 {
        if !(0.0..=1.0).contains(&z) {
            return 0.0;
        }
        self.coeff.to_f64() * z.powf(self.exponent.to_f64())
    }
}

/// First-part density by the convolution recurrence
/// `K_(j+1) = K_j * B(j/2, 1/2) / 2`, starting from `K_1 = 1/2`.
pub fn pdf_first_part(n: u32) -> Result<MonomialPdf, ExactError> {
    if n < 1 {
        return Err(ExactError::InvalidDimension { n, min: 1 });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut coeff = PiScaled::from_rational(half.clone());
    for j in 1..n {
        let beta = beta_half(HalfInt::from_doubled(j as i64))?;
        coeff = coeff.mul(&beta).mul_rational(&half);
    }
    Ok(MonomialPdf {
        n,
        coeff,
        exponent: HalfInt::from_doubled(n as i64 - 2),
    })
}

/// Unit-ball coefficient by the density route: `C_n = 2^n * 2 K_n / n`.
pub fn unit_volume_exact(n: u32) -> Result<PiScaled, ExactError> {
    let pdf = pdf_first_part(n)?;
    let scale = BigRational::from_integer(BigInt::one() << n as usize);
    Ok(pdf.integral_unit().mul_rational(&scale))
}

/// Unit-ball coefficient by the even/odd closed forms, defined for
/// `n >= 2`: even `n = 2m` gives `pi^m / m!`, odd `n` gives
/// `pi^((n-1)/2) * 2^((n+1)/2) / (3 * 5 * ... * n)`.
pub fn unit_volume_closed(n: u32) -> Result<PiScaled, ExactError> {
    if n < 2 {
        return Err(ExactError::InvalidDimension { n, min: 2 });
    }
    if n.is_multiple_of(2) {
        let m = u64::from(n / 2);
        Ok(PiScaled::new(
            BigRational::new(BigInt::one(), factorial(m)),
            n / 2,
        ))
    } else {
        let odd_product = (3..=u64::from(n))
            .step_by(2)
            .fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        let num = BigInt::one() << (n as usize).div_ceil(2);
        Ok(PiScaled::new(
            BigRational::new(num, odd_product),
            (n - 1) / 2,
        ))
    }
}

/// Unit-ball coefficient from `C_n = pi^(n/2) / Gamma(n/2 + 1)`.
///
/// For odd `n` the half power of pi and the `sqrt(pi)` inside the gamma
/// value cancel, so the result is again a plain monomial.
pub fn unit_volume_gamma(n: u32) -> Result<PiScaled, ExactError> {
    if n < 1 {
        return Err(ExactError::InvalidDimension { n, min: 1 });
    }
    let g = gamma_half(HalfInt::from_doubled(n as i64 + 2));
    debug_assert_eq!(g.has_sqrt_pi, n % 2 == 1);
    Ok(PiScaled::new(g.q.recip(), n / 2))
}

/// Surface area of the unit sphere in `n` dimensions:
/// `A_n = 2 pi^(n/2) / Gamma(n/2)`.
pub fn surface_area_unit(n: u32) -> Result<PiScaled, ExactError> {
    if n < 1 {
        return Err(ExactError::InvalidDimension { n, min: 1 });
    }
    let g = gamma_half(HalfInt::from_doubled(n as i64));
    debug_assert_eq!(g.has_sqrt_pi, n % 2 == 1);
    Ok(PiScaled::new(
        BigRational::from_integer(BigInt::from(2)) / g.q,
        n / 2,
    ))
}

/// Probability that a uniform point of the cube `[-1, 1]^n` lands in the
/// unit ball: `C_n / 2^n`, the integral of the first-part density.
pub fn p_hyper(n: u32) -> Result<PiScaled, ExactError> {
    Ok(pdf_first_part(n)?.integral_unit())
}

/// Decimal volume of the radius-`r` ball in `n` dimensions, rendered with
/// `sig` significant digits.
pub fn volume(n: u32, r: &BigRational, sig: usize) -> Result<String, ExactError> {
    if r.is_negative() {
        return Err(ExactError::NegativeRadius);
    }
    if sig < 1 {
        return Err(ExactError::InvalidPrecision(sig));
    }
    let c = unit_volume_exact(n)?;
    Ok(c.mul_rational(&r.pow(n as i32)).to_decimal(sig))
}

/// Second branch of the two-dimensional sum-of-squares density on `[1, 2]`:
/// `asin((1 - z/2) / (z/2)) / 2`. Continuously extends the first part's
/// constant `pi/4` at `z = 1` and vanishes at `z = 2`.
pub fn p2_second_part(z: f64) -> Result<f64, ExactError> {
    if !(1.0..=2.0).contains(&z) {
        return Err(ExactError::SecondPartDomain(z));
    }
    Ok(0.5 * ((1.0 - z / 2.0) / (z / 2.0)).asin())
}
