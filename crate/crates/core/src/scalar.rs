//! Scalar kinds shared by the whole crate: exact rationals for certified
//! computations, complex doubles for root finding and path tracking.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rat = BigRational;
pub type C64 = Complex<f64>;

/// Field scalar: the common interface of `Rat` and `C64`.
///
/// `is_zero` is an exact test; numeric code that needs a tolerance must
/// decide with `approx_mag` instead.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Magnitude estimate used for pivot selection.
    fn approx_mag(&self) -> f64;
    fn to_c64(&self) -> C64;
    /// True for the exact kind; lets shared code pick exact-only paths.
    fn is_exact() -> bool;
}

impl Scalar for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn approx_mag(&self) -> f64 {
        rat_to_f64(self).abs()
    }
    fn to_c64(&self) -> C64 {
        Complex::new(rat_to_f64(self), 0.0)
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        Complex::new(rat_to_f64(r), 0.0)
    }
    fn approx_mag(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

/// Rational `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from an integer.
pub fn rat_i(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

/// Exact factorial as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Convert to f64, scaling down numerator and denominator together when they
/// exceed the double range.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Fall back on bit-length scaling for very large entries.
    let nbits = r.numer().bits() as i64;
    let dbits = r.denom().bits() as i64;
    let shift = (nbits.max(dbits) - 900).max(0) as u64;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Power with i64 exponent (exponent >= 0).
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = rat_i(1);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Serialize as `"p/q"` (or `"p"` when the denominator is 1).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p/q"`, `"p"`, or a plain integer with sign.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if Zero::is_zero(&q) {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(s).ok()?;
        Some(BigRational::from_integer(p))
    }
}

/// Sign of an exact rational as -1, 0, or 1.
pub fn rat_sign(r: &Rat) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trips() {
        let r = rat(-22, 8);
        assert_eq!(rat_to_string(&r), "-11/4");
        assert_eq!(rat_from_str("-11/4"), Some(r.clone()));
        assert_eq!(rat_from_str("7"), Some(rat_i(7)));
        assert!(rat_from_str("1/0").is_none());
        assert_eq!(rat_to_f64(&r), -2.75);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat_i(1));
        assert_eq!(factorial(5), rat_i(120));
    }
}
