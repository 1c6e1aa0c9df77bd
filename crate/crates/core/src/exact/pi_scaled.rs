//! Monomials in pi with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::numeric;
use super::ExactError;

/// An exact constant `coeff * pi^pi_power`.
///
/// Every value the exact engine produces has this shape, so addition is
/// only defined within one power of pi; mixing powers is a caller bug and
/// is rejected instead of widened to a polynomial. Zero is canonicalized
/// to power 0, which makes structural equality coincide with value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiScaled {
    coeff: BigRational,
    pi_power: u32,
}

impl PiScaled {
    pub fn new(coeff: BigRational, pi_power: u32) -> Self {
        if coeff.is_zero() {
            Self { coeff, pi_power: 0 }
        } else {
            Self { coeff, pi_power }
        }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), 0)
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 1)
    }

    pub fn from_rational(coeff: BigRational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn from_integer(value: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(value)), 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        Self::new(&self.coeff * q, self.pi_power)
    }

    /// Adds two values that carry the same power of pi (zero is compatible
    /// with anything).
    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != other.pi_power {
            return Err(ExactError::PiPowerMismatch {
                left: self.pi_power,
                right: other.pi_power,
            });
        }
        Ok(Self::new(&self.coeff + &other.coeff, self.pi_power))
    }

    /// Rational interval containing the value, using a pi enclosure good to
    /// `digits` decimal places.
    fn bounds(&self, digits: u32) -> (BigRational, BigRational) {
        if self.pi_power == 0 {
            return (self.coeff.clone(), self.coeff.clone());
        }
        let (pi_lo, pi_hi) = numeric::pi_bounds(digits);
        let k = self.pi_power as i32;
        let lo = &self.coeff * pi_lo.pow(k);
        let hi = &self.coeff * pi_hi.pow(k);
        if self.coeff.is_negative() {
            (hi, lo)
        } else {
            (lo, hi)
        }
    }

    /// Numeric (value) order. Pi is transcendental, so monomials with
    /// different powers never coincide and a tight enough enclosure always
    /// separates them.
    pub fn cmp_numeric(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if self.pi_power == other.pi_power {
            return self.coeff.cmp(&other.coeff);
        }
        let mut digits = 30;
        loop {
            let (a_lo, a_hi) = self.bounds(digits);
            let (b_lo, b_hi) = other.bounds(digits);
            if a_hi < b_lo {
                return Ordering::Less;
            }
            if b_hi < a_lo {
                return Ordering::Greater;
            }
            assert!(
                digits <= 1 << 14,
                "enclosure failed to separate distinct values"
            );
            digits *= 2;
        }
    }

    /// First `sig` significant digits, round half to even. The enclosure is
    /// tightened until both endpoints round identically, so the digits are
    /// those of the true value.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1, "need at least one significant digit");
        if self.pi_power == 0 {
            return numeric::format_rational_sig(&self.coeff, sig);
        }
        let mut digits = (sig + 25) as u32;
        loop {
            let (lo, hi) = self.bounds(digits);
            let s_lo = numeric::format_rational_sig(&lo, sig);
            let s_hi = numeric::format_rational_sig(&hi, sig);
            if s_lo == s_hi {
                return s_lo;
            }
            assert!(digits <= 1 << 20, "enclosure failed to pin rounded digits");
            digits *= 2;
        }
    }

    /// Nearest `f64`, obtained by parsing a 17-significant-digit rendering
    /// (17 digits pin down every double).
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17)
            .parse()
            .expect("rendered decimal parses")
    }
}

fn coeff_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        match self.pi_power {
            0 => write!(f, "{}", coeff_string(&self.coeff)),
            k => {
                let pi = if k == 1 {
                    "pi".to_string()
                } else {
                    format!("pi^{k}")
                };
                if self.coeff.is_one() {
                    write!(f, "{pi}")
                } else if (-&self.coeff).is_one() {
                    write!(f, "-{pi}")
                } else {
                    write!(f, "{}·{}", coeff_string(&self.coeff), pi)
                }
            }
        }
    }
}

fn parse_coeff(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if !den.is_positive() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_pi_power(s: &str) -> Option<u32> {
    if s == "pi" {
        return Some(1);
    }
    let tail = s.strip_prefix("pi^")?;
    if tail.is_empty() || !tail.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    tail.parse().ok()
}

impl FromStr for PiScaled {
    type Err = ExactError;

    /// Parses the `Display` grammar: `a`, `a/b`, `pi`, `pi^k`, and
    /// `a/b·pi^k`, each with an optional leading sign.
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let err = |msg: &str| ExactError::Parse(format!("{msg}: {s:?}"));
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty input"));
        }
        if let Some((c, p)) = t.split_once('·') {
            let coeff = parse_coeff(c).ok_or_else(|| err("bad coefficient"))?;
            let power = parse_pi_power(p).ok_or_else(|| err("bad pi factor"))?;
            return Ok(Self::new(coeff, power));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if body.starts_with("pi") {
            let power = parse_pi_power(body).ok_or_else(|| err("bad pi factor"))?;
            let one = BigRational::one();
            return Ok(Self::new(if neg { -one } else { one }, power));
        }
        let coeff = parse_coeff(t).ok_or_else(|| err("bad coefficient"))?;
        Ok(Self::new(coeff, 0))
    }
}
