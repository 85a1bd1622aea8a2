use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Rational;

/// Dense univariate polynomial in `x` over the rationals.
///
/// Coefficients are stored in ascending degree; the last stored coefficient
/// is never zero, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// The value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, by: &Rational) -> Poly {
        if by.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Substitutes `x ↦ 1 - x`.
    pub fn reflect(&self) -> Poly {
        let one_minus_x = Poly::linear(Rational::one(), -Rational::one());
        self.compose_linear(&one_minus_x)
    }

    fn compose_linear(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self += other * by`, the inner loop of the matrix chain.
    pub fn add_scaled(&mut self, other: &Poly, by: &Rational) {
        if by.is_zero() || other.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (dst, src) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *dst += src * by;
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (dst, src) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *dst += src;
        }
        self.normalize();
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (dst, src) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *dst -= src;
        }
        self.normalize();
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn ring_examples() {
        let one_plus_x = p(&[(1, 1), (1, 1)]);
        let one_minus_x = p(&[(1, 1), (-1, 1)]);
        assert_eq!(&one_plus_x * &one_minus_x, p(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(&one_plus_x + &Poly::zero(), one_plus_x);
        let x2_minus_x = p(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(x2_minus_x.scale(&rat(1, 2)), p(&[(0, 1), (-1, 2), (1, 2)]));
    }

    #[test]
    fn normalization_drops_leading_zeros() {
        let q = p(&[(1, 1), (2, 1), (0, 1)]);
        assert_eq!(q.degree(), Some(1));
        let diff = &q - &q;
        assert!(diff.is_zero());
        assert_eq!(diff.degree(), None);
        assert_eq!(Poly::x().scale(&int(0)), Poly::zero());
    }

    #[test]
    fn eval_and_reflect() {
        let q = p(&[(3, 10), (-1, 1), (1, 1)]);
        assert_eq!(q.eval(&int(0)), rat(3, 10));
        assert_eq!(Poly::x().reflect(), p(&[(1, 1), (-1, 1)]));
        // (1-x)^2 - (1-x) + 3/10 = x^2 - x + 3/10
        assert_eq!(q.reflect(), q);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(-1, 2), (1, 1)]).to_string(), "-1/2 + (1)x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-9i64..9, 1i64..5), 0..6)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn eval_is_homomorphism(a in small_poly(), b in small_poly(), n in -6i64..6, d in 1i64..5) {
            let at = rat(n, d);
            prop_assert_eq!((&a * &b).eval(&at), a.eval(&at) * b.eval(&at));
            prop_assert_eq!((&a + &b).eval(&at), a.eval(&at) + b.eval(&at));
        }

        #[test]
        fn degree_is_additive(a in small_poly(), b in small_poly()) {
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!((&a * &b).degree(), Some(da + db));
            }
        }

        #[test]
        fn reflect_is_involution(a in small_poly()) {
            prop_assert_eq!(a.reflect().reflect(), a);
        }
    }
}
