//! Closed-form matrices of the difference system for the shift `α₁ ↦ α₁ + 1`.
//!
//! With basis polynomials
//!
//! ```text
//! φ_i(z) = (x₂ - z_1)···(x₂ - z_{n-i}) · (x₃ - z_{n-i+1})···(x₃ - z_n),   i = 0..n
//! ```
//!
//! the averages satisfy `T_{α₁}(⟨φ_0⟩, …, ⟨φ_n⟩) = (⟨φ_0⟩, …, ⟨φ_n⟩) A` with
//! `A = L D U` given entrywise. This module builds `L`, `D`, `U`, the product
//! `A` (as polynomials when one coordinate is the indeterminate), `U⁻¹`, the
//! reversed-order factorisation `A = U′ D′ L′`, and the denominator-free
//! pair `(Ũ, L̃)` with `A Ũ = L̃`.
//!
//! Every builder rejects parameters at which a denominator vanishes.

use num_traits::Zero;

use crate::arith::{binomial, int, poch, poch_denominator, sign, Poly, Rational};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixP, MatrixR};
use crate::selberg::SelbergParams;

/// Exponents `α₁, α₂, α₃`, coupling `τ` and the three coordinates
/// `x₁, x₂, x₃`, each either a rational constant or the indeterminate `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericParams {
    pub alpha1: Rational,
    pub alpha2: Rational,
    pub alpha3: Rational,
    pub tau: Rational,
    pub x1: Poly,
    pub x2: Poly,
    pub x3: Poly,
}

impl GenericParams {
    pub fn new(
        alpha1: Rational,
        alpha2: Rational,
        alpha3: Rational,
        tau: Rational,
        x1: Poly,
        x2: Poly,
        x3: Poly,
    ) -> Result<Self> {
        if tau <= Rational::zero() {
            return Err(Error::invalid(format!("tau must be positive, got {tau}")));
        }
        let mut symbolic = 0;
        for x in [&x1, &x2, &x3] {
            match x.degree() {
                None | Some(0) => {}
                Some(1) => symbolic += 1,
                Some(_) => return Err(Error::invalid("coordinates must have degree <= 1")),
            }
        }
        if symbolic > 1 {
            return Err(Error::invalid(
                "at most one coordinate may be the indeterminate",
            ));
        }
        if (&x3 - &x1).is_zero() {
            return Err(Error::singular("x3 - x1"));
        }
        Ok(GenericParams {
            alpha1,
            alpha2,
            alpha3,
            tau,
            x1,
            x2,
            x3,
        })
    }

    /// All three coordinates numeric.
    pub fn numeric(
        alpha1: Rational,
        alpha2: Rational,
        alpha3: Rational,
        tau: Rational,
        x1: Rational,
        x2: Rational,
        x3: Rational,
    ) -> Result<Self> {
        Self::new(
            alpha1,
            alpha2,
            alpha3,
            tau,
            Poly::constant(x1),
            Poly::constant(x2),
            Poly::constant(x3),
        )
    }

    /// The interchange `(x₂, α₂) ↔ (x₃, α₃)`, a symmetry of the integrand.
    pub fn interchanged(&self) -> Result<Self> {
        Self::new(
            self.alpha1.clone(),
            self.alpha3.clone(),
            self.alpha2.clone(),
            self.tau.clone(),
            self.x1.clone(),
            self.x3.clone(),
            self.x2.clone(),
        )
    }

    fn coords(&self) -> Result<(Rational, Rational, Rational)> {
        match (
            self.x1.as_constant(),
            self.x2.as_constant(),
            self.x3.as_constant(),
        ) {
            (Some(a), Some(b), Some(c)) => Ok((a, b, c)),
            _ => Err(Error::invalid(
                "rational matrices need numeric coordinates x1, x2, x3",
            )),
        }
    }

    /// `(x₂ - x₁, x₃ - x₁)` for numeric coordinates.
    fn gaps(&self) -> Result<(Rational, Rational)> {
        let (x1, x2, x3) = self.coords()?;
        Ok((x2 - &x1, x3 - x1))
    }

    fn t(&self, k: usize) -> Rational {
        &self.tau * int(k as i64)
    }

    fn a12(&self) -> Rational {
        &self.alpha1 + &self.alpha2
    }

    fn a13(&self) -> Rational {
        &self.alpha1 + &self.alpha3
    }

    fn a123(&self) -> Rational {
        &self.alpha1 + &self.alpha2 + &self.alpha3
    }

    /// Scalar part of `l_{ij}`, without the power of `(x₂-x₁)/(x₃-x₁)`.
    fn l_scalar(&self, n: usize, i: usize, j: usize) -> Result<Rational> {
        if i < j {
            return Ok(Rational::zero());
        }
        let den = poch_denominator(
            &(self.a12() + self.t(2 * j)),
            &self.tau,
            i - j,
            &format!("(alpha1+alpha2+{}tau; tau)_{}", 2 * j, i - j),
        )?;
        Ok(sign(i - j)
            * binomial((n - j) as i64, (n - i) as i64)
            * poch(&(&self.alpha2 + self.t(j)), &self.tau, i - j)
            / den)
    }

    /// Scalar part of `d_j`, without `(x₂-x₁)^j (x₃-x₁)^{n-j}`.
    fn d_scalar(&self, n: usize, j: usize) -> Result<Rational> {
        let den1 = poch_denominator(
            &(self.a12() + self.t(j) - &self.tau),
            &self.tau,
            j,
            &format!("(alpha1+alpha2+({j}-1)tau; tau)_{j}"),
        )?;
        let den2 = poch_denominator(
            &(self.a123() + self.t(n + j) - &self.tau),
            &self.tau,
            n - j,
            &format!("(alpha1+alpha2+alpha3+({}-1)tau; tau)_{}", n + j, n - j),
        )?;
        Ok(
            poch(&self.alpha1, &self.tau, j)
                * poch(&(self.a12() + self.t(2 * j)), &self.tau, n - j)
                / (den1 * den2),
        )
    }

    fn u_entry(&self, n: usize, i: usize, j: usize) -> Result<Rational> {
        if i > j {
            return Ok(Rational::zero());
        }
        let den = poch_denominator(
            &(self.a12() + self.t(2 * i)),
            &self.tau,
            j - i,
            &format!("(alpha1+alpha2+{}tau; tau)_{}", 2 * i, j - i),
        )?;
        Ok(sign(j - i)
            * binomial(j as i64, i as i64)
            * poch(&(&self.alpha3 + self.t(n - j)), &self.tau, j - i)
            / den)
    }
}

/// Power of a rational with a non-negative exponent.
fn rpow(base: &Rational, e: usize) -> Rational {
    num_traits::pow(base.clone(), e)
}

/// Lower-triangular factor `L` (unit diagonal).
pub fn build_l(p: &GenericParams, n: usize) -> Result<MatrixR> {
    let (g2, g3) = p.gaps()?;
    let ratio = g2 / g3;
    MatrixR::try_from_fn(n + 1, |i, j| {
        if i < j {
            return Ok(Rational::zero());
        }
        Ok(p.l_scalar(n, i, j)? * rpow(&ratio, i - j))
    })
}

/// Diagonal factor `D`.
pub fn build_d(p: &GenericParams, n: usize) -> Result<MatrixR> {
    let (g2, g3) = p.gaps()?;
    MatrixR::try_from_fn(n + 1, |i, j| {
        if i != j {
            return Ok(Rational::zero());
        }
        Ok(p.d_scalar(n, j)? * rpow(&g2, j) * rpow(&g3, n - j))
    })
}

/// Upper-triangular factor `U` (unit diagonal).
pub fn build_u(p: &GenericParams, n: usize) -> Result<MatrixR> {
    p.gaps()?;
    MatrixR::try_from_fn(n + 1, |i, j| p.u_entry(n, i, j))
}

/// `A = L D U` with the row monomial pulled out:
/// `A_{ij} = (x₂-x₁)^i (x₃-x₁)^{n-i} · s_{ij}` where `s` is a rational matrix.
///
/// This is the shape the moment chain consumes: a row vector times `A` costs
/// `n+1` polynomial products plus `O(n²)` scalar-times-polynomial updates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredA {
    pub row_factors: Vec<Poly>,
    pub scalars: MatrixR,
}

impl FactoredA {
    pub fn build(p: &GenericParams, n: usize) -> Result<Self> {
        let l = MatrixR::try_from_fn(n + 1, |i, j| p.l_scalar(n, i, j))?;
        let d: Vec<Rational> = (0..=n).map(|j| p.d_scalar(n, j)).collect::<Result<_>>()?;
        let u = MatrixR::try_from_fn(n + 1, |i, j| p.u_entry(n, i, j))?;
        let scalars = MatrixR::from_fn(n + 1, |i, j| {
            (0..=i.min(j)).fold(Rational::zero(), |acc, k| {
                acc + l.get(i, k) * &d[k] * u.get(k, j)
            })
        });
        let g2 = &p.x2 - &p.x1;
        let g3 = &p.x3 - &p.x1;
        let row_factors = (0..=n)
            .map(|i| &g2.pow(i as u32) * &g3.pow((n - i) as u32))
            .collect();
        Ok(FactoredA {
            row_factors,
            scalars,
        })
    }

    pub fn to_dense(&self) -> MatrixP {
        MatrixP::from_fn(self.scalars.order(), |i, j| {
            self.row_factors[i].scale(self.scalars.get(i, j))
        })
    }

    /// `v · A` for a row vector of polynomials.
    pub fn left_mul(&self, v: &[Poly]) -> Vec<Poly> {
        let order = self.scalars.order();
        assert_eq!(v.len(), order);
        let weighted: Vec<Poly> = v
            .iter()
            .zip(&self.row_factors)
            .map(|(vi, f)| vi * f)
            .collect();
        (0..order)
            .map(|j| {
                let mut acc = Poly::zero();
                for (i, w) in weighted.iter().enumerate() {
                    acc.add_scaled(w, self.scalars.get(i, j));
                }
                acc
            })
            .collect()
    }
}

/// The difference-system matrix `A`, entries polynomial in `x`.
pub fn build_a(p: &GenericParams, n: usize) -> Result<MatrixP> {
    Ok(FactoredA::build(p, n)?.to_dense())
}

/// `U⁻¹`, upper triangular with
/// `u*_{ij} = C(j,i) (α₃+(n-j)τ; τ)_{j-i} / (α₁+α₂+(j+i-1)τ; τ)_{j-i}`.
pub fn build_u_inverse(p: &GenericParams, n: usize) -> Result<MatrixR> {
    MatrixR::try_from_fn(n + 1, |i, j| {
        if i > j {
            return Ok(Rational::zero());
        }
        let den = poch_denominator(
            &(p.a12() + p.t(i + j) - &p.tau),
            &p.tau,
            j - i,
            &format!("(alpha1+alpha2+({}-1)tau; tau)_{}", i + j, j - i),
        )?;
        Ok(binomial(j as i64, i as i64) * poch(&(&p.alpha3 + p.t(n - j)), &p.tau, j - i) / den)
    })
}

/// Factors of the reversed-order decomposition `A = U′ D′ L′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primed {
    pub upper: MatrixR,
    pub diag: MatrixR,
    pub lower: MatrixR,
}

impl Primed {
    pub fn product(&self) -> MatrixR {
        self.upper.mul(&self.diag).mul(&self.lower)
    }
}

pub fn build_primed(p: &GenericParams, n: usize) -> Result<Primed> {
    let (g2, g3) = p.gaps()?;
    if g2.is_zero() {
        return Err(Error::singular("x2 - x1"));
    }
    let ratio = &g3 / &g2;
    let upper = MatrixR::try_from_fn(n + 1, |i, j| {
        if i > j {
            return Ok(Rational::zero());
        }
        let den = poch_denominator(
            &(p.a13() + p.t(2 * (n - j))),
            &p.tau,
            j - i,
            &format!("(alpha1+alpha3+{}tau; tau)_{}", 2 * (n - j), j - i),
        )?;
        Ok(sign(j - i)
            * binomial(j as i64, i as i64)
            * poch(&(&p.alpha3 + p.t(n - j)), &p.tau, j - i)
            / den
            * rpow(&ratio, j - i))
    })?;
    let diag = MatrixR::try_from_fn(n + 1, |i, j| {
        if i != j {
            return Ok(Rational::zero());
        }
        let den1 = poch_denominator(
            &(p.a13() + p.t(n - j) - &p.tau),
            &p.tau,
            n - j,
            &format!("(alpha1+alpha3+({}-1)tau; tau)_{}", n - j, n - j),
        )?;
        let den2 = poch_denominator(
            &(p.a123() + p.t(2 * n - j) - &p.tau),
            &p.tau,
            j,
            &format!("(alpha1+alpha2+alpha3+({}-1)tau; tau)_{j}", 2 * n - j),
        )?;
        Ok(poch(&p.alpha1, &p.tau, n - j)
            * poch(&(p.a13() + p.t(2 * (n - j))), &p.tau, j)
            * rpow(&g2, j)
            * rpow(&g3, n - j)
            / (den1 * den2))
    })?;
    let lower = MatrixR::try_from_fn(n + 1, |i, j| {
        if i < j {
            return Ok(Rational::zero());
        }
        let den = poch_denominator(
            &(p.a13() + p.t(2 * (n - i))),
            &p.tau,
            i - j,
            &format!("(alpha1+alpha3+{}tau; tau)_{}", 2 * (n - i), i - j),
        )?;
        Ok(sign(i - j)
            * binomial((n - j) as i64, (n - i) as i64)
            * poch(&(&p.alpha2 + p.t(j)), &p.tau, i - j)
            / den)
    })?;
    Ok(Primed { upper, diag, lower })
}

/// Denominator-free form `T⟨φ⟩ Ũ = ⟨φ⟩ L̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tilde {
    pub upper: MatrixR,
    pub lower: MatrixR,
}

pub fn build_tilde(p: &GenericParams, n: usize) -> Result<Tilde> {
    let (g2, g3) = p.gaps()?;
    let upper = MatrixR::from_fn(n + 1, |i, j| {
        if i > j {
            return Rational::zero();
        }
        binomial(j as i64, i as i64)
            * poch(&(p.a123() + p.t(n + j) - &p.tau), &p.tau, n - j)
            * poch(&(&p.alpha3 + p.t(n - j)), &p.tau, j - i)
            * poch(&(p.a12() + p.t(j) - &p.tau), &p.tau, i)
    });
    let lower = MatrixR::from_fn(n + 1, |i, j| {
        if i < j {
            return Rational::zero();
        }
        sign(i - j)
            * binomial((n - j) as i64, (n - i) as i64)
            * poch(&p.alpha1, &p.tau, j)
            * poch(&(&p.alpha2 + p.t(j)), &p.tau, i - j)
            * poch(&(p.a12() + p.t(i + j)), &p.tau, n - i)
            * rpow(&g3, n - i)
            * rpow(&g2, i)
    });
    Ok(Tilde { upper, lower })
}

/// `L D U` as a rational matrix.
pub fn build_a_numeric(p: &GenericParams, n: usize) -> Result<MatrixR> {
    Ok(build_l(p, n)?.mul(&build_d(p, n)?).mul(&build_u(p, n)?))
}

/// Whether `A Ũ = L̃` holds exactly.
pub fn check_tilde_consistency(p: &GenericParams, n: usize) -> Result<bool> {
    let a = build_a_numeric(p, n)?;
    let tilde = build_tilde(p, n)?;
    Ok(a.mul(&tilde.upper) == tilde.lower)
}

/// Column sums of the tilde system when `x₂ = x₃`, where every `φ_i`
/// coincides and the system collapses to one scalar equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneration {
    /// `Σ_{i≤j} ũ_{ij}` for each column `j`.
    pub upper_sums: Vec<Rational>,
    /// `Σ_{i≥j} l̃_{ij}` for each column `j`.
    pub lower_sums: Vec<Rational>,
    /// `ũ₀₀ = (α₁+α₂+α₃+(n-1)τ; τ)_n`.
    pub expected_upper: Rational,
    /// `(α₁; τ)_n (x₃-x₁)^n`.
    pub expected_lower: Rational,
    /// `S_n(α₁+1, α₂+α₃, τ) / S_n(α₁, α₂+α₃, τ)` from the Selberg recurrence.
    pub selberg_ratio: Rational,
}

impl Degeneration {
    /// Both column-sum identities hold, and in every column the collapsed
    /// equation `T⟨φ⟩ Σũ = ⟨φ⟩ Σl̃` reproduces the Selberg recurrence (scaled
    /// by `(x₃-x₁)^n`).
    pub fn holds(&self, gap: &Rational, n: usize) -> bool {
        let scale = rpow(gap, n);
        self.upper_sums.iter().all(|s| *s == self.expected_upper)
            && self.lower_sums.iter().all(|s| *s == self.expected_lower)
            && self
                .upper_sums
                .iter()
                .zip(&self.lower_sums)
                .all(|(u, l)| !u.is_zero() && l / u == &self.selberg_ratio * &scale)
    }
}

pub fn degeneration(p: &GenericParams, n: usize) -> Result<Degeneration> {
    let (x1, x2, x3) = p.coords()?;
    if x2 != x3 {
        return Err(Error::invalid("degeneration requires x2 == x3"));
    }
    let tilde = build_tilde(p, n)?;
    let upper_sums = (0..=n)
        .map(|j| (0..=j).fold(Rational::zero(), |acc, i| acc + tilde.upper.get(i, j)))
        .collect();
    let lower_sums = (0..=n)
        .map(|j| (j..=n).fold(Rational::zero(), |acc, i| acc + tilde.lower.get(i, j)))
        .collect();
    let expected_upper = poch(&(p.a123() + p.t(n) - &p.tau), &p.tau, n);
    let expected_lower = poch(&p.alpha1, &p.tau, n) * rpow(&(x3 - x1), n);
    let selberg =
        SelbergParams::new_unchecked(p.alpha1.clone(), &p.alpha2 + &p.alpha3, p.tau.clone(), n)?;
    Ok(Degeneration {
        upper_sums,
        lower_sums,
        expected_upper,
        expected_lower,
        selberg_ratio: selberg.ratio_alpha(1)?,
    })
}

/// Convenience: `degeneration(p, n)?.holds(..)`.
pub fn check_degeneration(p: &GenericParams, n: usize) -> Result<bool> {
    let (x1, _, x3) = p.coords()?;
    Ok(degeneration(p, n)?.holds(&(x3 - x1), n))
}

impl Matrix<Rational> {
    /// Whether `self · other` is the identity.
    pub fn is_inverse_of(&self, other: &MatrixR) -> bool {
        self.mul(other).is_identity()
    }
}
