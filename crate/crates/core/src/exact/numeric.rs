//! Rational enclosures of pi and decimal rendering of rationals.
//!
//! Nothing here touches floating point: pi is bracketed by rational interval
//! arithmetic on Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`, and
//! decimal output rounds a rational half-to-even at a requested number of
//! significant digits. Callers that need "the first `s` digits of `q * pi^k`"
//! tighten the enclosure until both endpoints round to the same string.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::ExactError;

fn pow10(e: u32) -> BigInt {
    Pow::pow(BigInt::from(10), e)
}

/// Rational interval containing `atan(1/x)` with width below `10^-digits`.
///
/// The alternating series' remainder after `i` terms has the sign of term
/// `i` and magnitude below it, so the partial sum and the once-extended sum
/// bracket the limit.
fn atan_inv_bounds(x: u64, digits: u32) -> (BigRational, BigRational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let bound = BigRational::new(BigInt::one(), pow10(digits));
    let mut sum = BigRational::zero();
    let mut odd_pow = x; // x^(2i+1)
    let mut i: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * i + 1) * &odd_pow);
        if i > 0 && term < bound {
            return if i.is_multiple_of(2) {
                let hi = &sum + &term;
                (sum, hi)
            } else {
                let lo = &sum - &term;
                (lo, sum)
            };
        }
        sum = if i.is_multiple_of(2) {
            &sum + &term
        } else {
            &sum - &term
        };
        odd_pow *= &x2;
        i += 1;
    }
}

/// Rational `(lo, hi)` with `lo < pi < hi` and `hi - lo < 10^-digits`.
pub(crate) fn pi_bounds(digits: u32) -> (BigRational, BigRational) {
    // Each arctangent is padded two digits so 16w + 4w stays under the
    // requested width.
    let (lo5, hi5) = atan_inv_bounds(5, digits + 2);
    let (lo239, hi239) = atan_inv_bounds(239, digits + 2);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    let lo = &sixteen * &lo5 - &four * &hi239;
    let hi = &sixteen * &hi5 - &four * &lo239;
    (lo, hi)
}

/// Compares positive `a` with `10^e`.
fn pow10_cmp(a: &BigRational, e: i64) -> Ordering {
    let p = a.numer();
    let q = a.denom();
    if e >= 0 {
        p.cmp(&(q * pow10(e as u32)))
    } else {
        (p * pow10((-e) as u32)).cmp(q)
    }
}

/// Largest `e` with `10^e <= a`, for positive `a`.
fn floor_log10(a: &BigRational) -> i64 {
    debug_assert!(a.is_positive());
    let digits_n = a.numer().to_string().len() as i64;
    let digits_d = a.denom().to_string().len() as i64;
    let mut e = digits_n - digits_d;
    while pow10_cmp(a, e) == Ordering::Less {
        e -= 1;
    }
    while pow10_cmp(a, e + 1) != Ordering::Less {
        e += 1;
    }
    e
}

/// `round(a * 10^t)` for positive `a`, ties to even.
fn round_scaled(a: &BigRational, t: i64) -> BigInt {
    let (num, den) = if t >= 0 {
        (a.numer() * pow10(t as u32), a.denom().clone())
    } else {
        (a.numer().clone(), a.denom() * pow10((-t) as u32))
    };
    let (q, r) = num.div_rem(&den);
    match (&r * BigInt::from(2)).cmp(&den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Renders `v` with `sig` significant digits, round half to even.
///
/// Values whose magnitude fits within six orders of the digit window print
/// in plain decimal; anything farther out switches to `d.dd...e<exp>`.
pub(crate) fn format_rational_sig(v: &BigRational, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let a = v.abs();
    let mut e = floor_log10(&a);
    let mut m = round_scaled(&a, sig as i64 - 1 - e);
    // Rounding can carry into one extra digit (9.97 -> "10" at two digits).
    if m == pow10(sig as u32) {
        m /= BigInt::from(10);
        e += 1;
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);
    let sign = if neg { "-" } else { "" };
    let body = if e >= 0 && (e as usize) < sig {
        let point = e as usize + 1;
        if point == sig {
            digits
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else if e >= 0 && (e as usize) < sig + 6 {
        format!("{}{}", digits, "0".repeat(e as usize + 1 - sig))
    } else if (-6..0).contains(&e) {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else if sig == 1 {
        format!("{digits}e{e}")
    } else {
        format!("{}.{}e{}", &digits[..1], &digits[1..], e)
    };
    format!("{sign}{body}")
}

/// Renders a finite float with `sig` significant digits (round half to
/// even), in the same decimal style the exact engine uses. Non-finite
/// values fall back to their standard rendering.
pub fn format_f64_sig(value: f64, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if value == 0.0 {
        return "0".to_string();
    }
    match BigRational::from_float(value) {
        Some(q) => format_rational_sig(&q, sig),
        None => value.to_string(),
    }
}

/// Parses a plain or scientific decimal literal into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational, ExactError> {
    let err = || ExactError::Parse(format!("invalid decimal number: {s:?}"));
    let t = s.trim();
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (mant, neg) = match mant.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (mant.strip_prefix('+').unwrap_or(mant), false),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let scale = exp - frac_part.len() as i64;
    if !(-100_000..=100_000).contains(&scale) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let unscaled = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(err)?;
    let v = if scale >= 0 {
        BigRational::from_integer(unscaled * pow10(scale as u32))
    } else {
        BigRational::new(unscaled, pow10((-scale) as u32))
    };
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_enclosure_is_tight_and_ordered() {
        let (lo, hi) = pi_bounds(30);
        assert!(lo < hi);
        assert!(lo > rat(314159, 100000));
        assert!(hi < rat(314160, 100000));
        let width = &hi - &lo;
        assert!(width < BigRational::new(BigInt::one(), pow10(30)));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_rational_sig(&rat(1, 3), 10), "0.3333333333");
        assert_eq!(format_rational_sig(&rat(2, 3), 3), "0.667");
        assert_eq!(format_rational_sig(&rat(1687, 10), 4), "168.7");
        assert_eq!(format_rational_sig(&rat(0, 1), 10), "0");
        assert_eq!(format_rational_sig(&rat(-5, 2), 3), "-2.50");
        assert_eq!(format_rational_sig(&rat(123456, 1), 3), "123000");
        assert_eq!(format_rational_sig(&rat(1, 1000000000), 3), "1.00e-9");
    }

    #[test]
    fn ties_round_to_even() {
        assert_eq!(format_rational_sig(&rat(125, 1000), 2), "0.12");
        assert_eq!(format_rational_sig(&rat(135, 1000), 2), "0.14");
        assert_eq!(format_rational_sig(&rat(25, 10), 1), "2");
        assert_eq!(format_rational_sig(&rat(35, 10), 1), "4");
    }

    #[test]
    fn rounding_carries_across_a_digit() {
        assert_eq!(format_rational_sig(&rat(997, 100), 2), "10");
        assert_eq!(format_rational_sig(&rat(9999, 10), 3), "1000");
        assert_eq!(format_rational_sig(&rat(99999999, 10), 3), "10000000");
        assert_eq!(format_rational_sig(&rat(99999999999, 1), 3), "1.00e11");
    }

    #[test]
    fn float_formatting_matches_rational_formatting() {
        assert_eq!(format_f64_sig(std::f64::consts::PI, 10), "3.141592654");
        assert_eq!(format_f64_sig(0.0, 5), "0");
        assert_eq!(format_f64_sig(-0.0, 5), "0");
        assert_eq!(format_f64_sig(-2.5, 3), "-2.50");
        assert_eq!(format_f64_sig(0.1, 12), "0.100000000000");
        assert_eq!(format_f64_sig(12.649110640673518, 12), "12.6491106407");
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("2.5").unwrap(), rat(5, 2));
        assert_eq!(parse_decimal("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_decimal(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_decimal("12.").unwrap(), rat(12, 1));
        assert_eq!(parse_decimal("3e2").unwrap(), rat(300, 1));
        assert_eq!(parse_decimal("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("+7").unwrap(), rat(7, 1));
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal(".").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("0x10").is_err());
        assert!(parse_decimal("1e").is_err());
    }
}
