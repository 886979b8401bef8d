//! Exact rational intervals and decimal rendering.
//!
//! All root and asymptotics arithmetic runs on intervals with
//! arbitrary-precision rational endpoints, so no floating point enters any
//! decision path; decimal strings are produced only at output time.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "interval reciprocal across zero");
        RatInterval {
            lo: BigRational::one() / &self.hi,
            hi: BigRational::one() / &self.lo,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.mul(&RatInterval::point(c.clone()))
    }

    /// Evaluate a dense univariate polynomial on the interval by Horner on
    /// interval arithmetic (an enclosure of the range).
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Self {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&RatInterval::point(c.clone()));
        }
        acc
    }
}

/// `2^-bits` as a rational.
pub fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// `10^-digits` as a rational.
pub fn pow10_neg(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Render a rational as a fixed-point decimal with `digits` fractional
/// digits, rounding to nearest (ties away from zero).
pub fn decimal_string(v: &BigRational, digits: u32) -> String {
    let sign = if v.is_negative() { "-" } else { "" };
    let abs = v.abs();
    let scale = BigInt::from(10u32).pow(digits);
    // round(|v| * 10^digits)
    let scaled = abs * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if &r * 2 >= *scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part,
        width = digits as usize
    )
}

/// Exact square root of a rational if it is a perfect square.
pub fn exact_sqrt(v: &BigRational) -> Option<BigRational> {
    if v.is_negative() {
        return None;
    }
    let ns = v.numer().sqrt();
    let ds = v.denom().sqrt();
    if &(&ns * &ns) == v.numer() && &(&ds * &ds) == v.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Enclosure of `sqrt(v)` with width at most `2^-bits`, for `v >= 0`.
pub fn sqrt_interval(v: &BigRational, bits: u32) -> RatInterval {
    assert!(!v.is_negative(), "sqrt of a negative rational");
    if v.is_zero() {
        return RatInterval::point(BigRational::zero());
    }
    if let Some(s) = exact_sqrt(v) {
        return RatInterval::point(s);
    }
    // Scale so the integer sqrt of the numerator carries enough bits.
    let shift = 2 * (bits + 8);
    let scaled = v * BigRational::from_integer(BigInt::one() << shift);
    let n = (scaled.numer() / scaled.denom()).sqrt(); // floor sqrt of a lower bound-ish value
    let denom = BigRational::from_integer(BigInt::one() << (shift / 2));
    let mut lo = BigRational::from_integer(n) / &denom;
    let mut hi = &lo + pow2_neg(shift / 2 - 2);
    // Widen until certain, then bisect down to the requested width.
    while &lo * &lo > *v {
        lo -= pow2_neg(shift / 2 - 2);
    }
    while &hi * &hi < *v {
        hi += pow2_neg(shift / 2 - 2);
    }
    let tol = pow2_neg(bits);
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if &mid * &mid <= *v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}

/// Parse a plain decimal literal like `1.99994300442` into an exact
/// rational.
pub fn rational_from_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = digits.parse().ok()?;
    let numer = if sign == Sign::Minus { -numer } else { numer };
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(numer, denom))
}

/// Convenience: midpoint of an interval as an f64 (display/diagnostics only).
pub fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}
