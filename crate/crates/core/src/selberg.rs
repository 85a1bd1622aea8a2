//! The Selberg integral
//!
//! ```text
//! S_n(α, β, τ) = ∫_{[0,1]^n} ∏ z_i^{α-1} (1-z_i)^{β-1} ∏_{j<k} |z_j - z_k|^{2τ} dz
//! ```
//!
//! is irrational in general, so only ratios under integer shifts of `α` or
//! `β` are exposed exactly. Absolute values are available in floating point
//! through the Gamma product.

use num_traits::{ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::arith::{int, is_positive, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelbergParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub tau: Rational,
    pub n: usize,
}

impl SelbergParams {
    /// Parameters of a convergent integral: `α, β, τ > 0`, `n ≥ 1`.
    pub fn new(alpha: Rational, beta: Rational, tau: Rational, n: usize) -> Result<Self> {
        if !(is_positive(&alpha) && is_positive(&beta) && is_positive(&tau)) {
            return Err(Error::invalid(format!(
                "Selberg parameters must be positive, got alpha={alpha}, beta={beta}, tau={tau}"
            )));
        }
        Self::new_unchecked(alpha, beta, tau, n)
    }

    /// Skips the positivity check. The ratio recurrences are rational-function
    /// identities, so they continue to any parameters away from their poles.
    pub fn new_unchecked(alpha: Rational, beta: Rational, tau: Rational, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("Selberg integral needs n >= 1"));
        }
        Ok(SelbergParams {
            alpha,
            beta,
            tau,
            n,
        })
    }

    pub fn with_alpha(&self, alpha: Rational) -> Self {
        SelbergParams {
            alpha,
            ..self.clone()
        }
    }

    pub fn with_beta(&self, beta: Rational) -> Self {
        SelbergParams {
            beta,
            ..self.clone()
        }
    }

    /// `S_n(α+m, β, τ) / S_n(α, β, τ)`.
    pub fn ratio_alpha(&self, m: usize) -> Result<Rational> {
        shift_ratio(&self.alpha, &self.beta, &self.tau, self.n, m)
    }

    /// `S_n(α, β+m, τ) / S_n(α, β, τ)`; the integral is symmetric in `α ↔ β`.
    pub fn ratio_beta(&self, m: usize) -> Result<Rational> {
        shift_ratio(&self.beta, &self.alpha, &self.tau, self.n, m)
    }

    /// Gamma-product value of `S_n(α, β, τ)`, accumulated in log space.
    pub fn value_numeric(&self) -> f64 {
        let alpha = self.alpha.to_f64().unwrap_or(f64::NAN);
        let beta = self.beta.to_f64().unwrap_or(f64::NAN);
        let tau = self.tau.to_f64().unwrap_or(f64::NAN);
        let n = self.n as f64;
        let log_value: f64 = (0..self.n)
            .map(|j| {
                let j = j as f64;
                let mut term = log_gamma(alpha + j * tau) + log_gamma(beta + j * tau)
                    - log_gamma(alpha + beta + (n + j - 1.0) * tau);
                if j > 0.0 {
                    term += log_gamma(1.0 + (j + 1.0) * tau) - log_gamma(1.0 + tau);
                }
                term
            })
            .sum();
        log_value.exp()
    }
}

/// `ln Γ(x)`, summing logarithms for small integer arguments so that
/// `Γ(1) = Γ(2) = 1` come out exact.
fn log_gamma(x: f64) -> f64 {
    if x.fract() == 0.0 && (1.0..=64.0).contains(&x) {
        return (2..x as u32).map(|k| f64::from(k).ln()).sum();
    }
    ln_gamma(x)
}

/// Iterates `S(a+1, b) = S(a, b) ∏_{i=1}^n (a + (n-i)τ) / (a + b + (2n-i-1)τ)`
/// `m` times, starting from `a`.
fn shift_ratio(a: &Rational, b: &Rational, tau: &Rational, n: usize, m: usize) -> Result<Rational> {
    let mut ratio = int(1);
    for step in 0..m {
        let shifted = a + int(step as i64);
        for i in 1..=n {
            let num = &shifted + tau * int((n - i) as i64);
            let den = &shifted + b + tau * int((2 * n - i - 1) as i64);
            if den.is_zero() {
                return Err(Error::singular(format!(
                    "alpha+beta+{}tau at alpha={shifted}, beta={b}, tau={tau}",
                    2 * n - i - 1
                )));
            }
            ratio *= num / den;
        }
    }
    Ok(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn params(a: Rational, b: Rational, t: Rational, n: usize) -> SelbergParams {
        SelbergParams::new(a, b, t, n).unwrap()
    }

    #[test]
    fn one_variable_is_beta_ratio() {
        let p = params(rat(7, 3), rat(5, 2), rat(3, 1), 1);
        let s = &p.alpha + &p.beta;
        assert_eq!(p.ratio_alpha(1).unwrap(), &p.alpha / &s);
        assert_eq!(p.ratio_beta(1).unwrap(), &p.beta / &s);
        assert_eq!(p.ratio_alpha(0).unwrap(), int(1));
        assert_eq!(p.ratio_beta(0).unwrap(), int(1));
    }

    #[test]
    fn two_variable_first_shift() {
        // ∫∫ z1 z2 (z1-z2)^2 = 1/36, ∫∫ (z1-z2)^2 = 1/6
        let p = params(int(1), int(1), int(1), 2);
        assert_eq!(p.ratio_alpha(1).unwrap(), rat(1, 6));
        assert_eq!(p.ratio_beta(1).unwrap(), rat(1, 6));
    }

    #[test]
    fn numeric_values() {
        let p = params(int(1), int(1), int(1), 2);
        assert!((p.value_numeric() - 1.0 / 6.0).abs() < 1e-10 / 6.0);
        let p = params(int(1), int(1), rat(7, 2), 1);
        assert_eq!(p.value_numeric(), 1.0);
        // S_2(2,2,1) = S_2(1,1,1) · ratio_alpha · ratio_beta
        let base = params(int(1), int(1), int(1), 2);
        let exact = rat(1, 6)
            * base.ratio_alpha(1).unwrap()
            * base.with_alpha(int(2)).ratio_beta(1).unwrap();
        let numeric = params(int(2), int(2), int(1), 2).value_numeric();
        let expected = exact.to_f64().unwrap();
        assert!(((numeric - expected) / expected).abs() < 1e-10);
    }

    #[test]
    fn singular_ratio_is_reported() {
        // α+β+(2n-2)τ = 0 at n = 1
        let p = SelbergParams::new_unchecked(int(1), int(-1), int(1), 1).unwrap();
        assert!(matches!(
            p.ratio_alpha(1),
            Err(Error::ParameterSingular { .. })
        ));
        assert!(SelbergParams::new(int(0), int(1), int(1), 2).is_err());
        assert!(SelbergParams::new(int(1), int(1), int(1), 0).is_err());
    }

    fn positive() -> impl Strategy<Value = Rational> {
        (1i64..40, 1i64..8).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn telescoping(a in positive(), b in positive(), t in positive(), n in 1usize..5, m1 in 0usize..4, m2 in 0usize..4) {
            let p = params(a.clone(), b, t, n);
            let whole = p.ratio_alpha(m1 + m2).unwrap();
            let split = p.ratio_alpha(m1).unwrap() * p.with_alpha(a + int(m1 as i64)).ratio_alpha(m2).unwrap();
            prop_assert_eq!(whole, split);
        }

        #[test]
        fn numeric_matches_exact(a in positive(), b in positive(), t in positive(), n in 1usize..5, m in 1usize..4) {
            let p = params(a.clone(), b, t, n);
            let numeric = p.with_alpha(a + int(m as i64)).value_numeric() / p.value_numeric();
            let exact = p.ratio_alpha(m).unwrap().to_f64().unwrap();
            prop_assert!(((numeric - exact) / exact).abs() < 1e-8, "{numeric} vs {exact}");
        }
    }
}
