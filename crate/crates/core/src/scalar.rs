//! Scalar fields the calculus is generic over.
//!
//! Every decision procedure in this crate tests coefficients for exact
//! equality with zero, so the meaningful instances are the exact fields
//! ([`Rat`], [`GaussRat`], [`Rational64`]). `f64` is provided for quick
//! numerical experiments; its answers are only as good as the rounding.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

/// Arbitrary-precision rationals, the default scalar.
pub type Rat = BigRational;

/// Gaussian rationals `a + b i` with `a, b` rational.
pub type GaussRat = Complex<BigRational>;

/// A commutative field with exact (or at least deterministic) equality.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Parse a literal: an integer, `p/q`, and for complex fields a
    /// trailing `i` marks a purely imaginary literal (`3/2i`).
    fn parse_literal(s: &str) -> Option<Self>;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Whether equality with zero is decided exactly.
    fn is_exact() -> bool {
        true
    }
}

fn parse_bigrational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse_literal(s: &str) -> Option<Self> {
        parse_bigrational(s)
    }
}

impl Field for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().ok()?;
                let d: i64 = d.trim().parse().ok()?;
                (d != 0).then(|| Rational64::new(n, d))
            }
            None => s.parse().ok().map(Rational64::from_integer),
        }
    }
}

impl Field for GaussRat {
    fn from_i64(n: i64) -> Self {
        Complex::new(Rat::from_i64(n), Rat::zero())
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.strip_suffix('i') {
            Some("") => Some(Complex::new(Rat::zero(), Rat::one())),
            Some(im) => parse_bigrational(im).map(|b| Complex::new(Rat::zero(), b)),
            None => parse_bigrational(s).map(|a| Complex::new(a, Rat::zero())),
        }
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: f64 = n.trim().parse().ok()?;
                let d: f64 = d.trim().parse().ok()?;
                (d != 0.0).then_some(n / d)
            }
            None => s.parse().ok(),
        }
    }

    fn is_exact() -> bool {
        false
    }
}

/// Shorthand for `F::from_ratio(num, den)`.
pub fn ratio<F: Field>(num: i64, den: i64) -> F {
    F::from_ratio(num, den)
}

/// Shorthand for `F::from_i64(n)`.
pub fn int<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_literals() {
        assert_eq!(Rat::parse_literal("3/6"), Some(ratio(1, 2)));
        assert_eq!(Rat::parse_literal("-4"), Some(int(-4)));
        assert_eq!(Rat::parse_literal("1/0"), None);
        assert_eq!(Rat::parse_literal("x"), None);
        assert_eq!(Rational64::parse_literal("-2/4"), Some(Rational64::new(-1, 2)));
    }

    #[test]
    fn parses_gaussian_literals() {
        let i = GaussRat::parse_literal("i").unwrap();
        assert_eq!(i.clone() * i, GaussRat::from_i64(-1));
        let half_i = GaussRat::parse_literal("1/2i").unwrap();
        assert_eq!(half_i.im, ratio(1, 2));
        assert!(half_i.re.is_zero());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Rat::zero().inv().is_none());
        assert_eq!(int::<Rat>(4).inv(), Some(ratio(1, 4)));
    }
}
