//! Exact scalar arithmetic: rationals, the τ-shifted Pochhammer symbol,
//! binomial coefficients and dense univariate polynomials.

mod poly;

pub use poly::Poly;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `(x; τ)_i = x (x+τ) ··· (x+(i-1)τ)`, with `(x; τ)_0 = 1`.
pub fn poch(x: &Rational, tau: &Rational, i: usize) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..i {
        acc *= &factor;
        factor += tau;
    }
    acc
}

/// Pochhammer symbol extended to negative lengths by reflection:
/// `(x; τ)_{-m} = 1 / ((x-τ)(x-2τ)···(x-mτ))`.
pub fn poch_signed(x: &Rational, tau: &Rational, i: i64) -> Result<Rational> {
    if i >= 0 {
        return Ok(poch(x, tau, i as usize));
    }
    let mut denom = Rational::one();
    let mut factor = x - tau;
    for _ in 0..(-i) {
        if factor.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "reflected Pochhammer ({x}; {tau})_{i}"
            )));
        }
        denom *= &factor;
        factor -= tau;
    }
    Ok(denom.recip())
}

/// `(x; τ)_i` for use as a denominator; fails if it vanishes.
pub(crate) fn poch_denominator(
    x: &Rational,
    tau: &Rational,
    i: usize,
    label: &str,
) -> Result<Rational> {
    let value = poch(x, tau, i);
    if value.is_zero() {
        return Err(Error::singular(format!("{label} = ({x}; {tau})_{i}")));
    }
    Ok(value)
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for m in 0..k {
        acc *= BigInt::from(n - m);
        acc /= BigInt::from(m + 1);
    }
    Rational::from_integer(acc)
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Renders a rational as `p/q` (denominator always shown).
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p`, `p/q` or a finite decimal such as `2.5`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let numer: BigInt = digits
            .parse()
            .map_err(|_| Error::invalid(format!("not a rational: {text}")))?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let value: Rational = text
        .parse()
        .map_err(|_| Error::invalid(format!("not a rational: {text}")))?;
    Ok(value)
}

/// Ring operations the multivariate expansions are generic over; implemented
/// for [`Rational`] and [`Poly`].
pub trait Coefficient:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<Rational>
{
    fn scale(&self, by: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn scale(&self, by: &Rational) -> Self {
        self * by
    }
}

impl Coefficient for Poly {
    fn scale(&self, by: &Rational) -> Self {
        Poly::scale(self, by)
    }
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
