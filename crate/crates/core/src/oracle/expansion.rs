use std::collections::BTreeMap;

use crate::arith::{Coefficient, Rational};
use crate::error::{Error, Result};

/// Largest number of stored terms any expansion may reach.
pub const SIZE_LIMIT: usize = 1_000_000;

/// A Laurent polynomial in `z_1, …, z_n`: exponent vectors mapped to
/// coefficients, with no stored zeros.
///
/// Coefficients are rationals by default; the moment oracle uses [`crate::Poly`]
/// coefficients so that `x` can stay symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricExpansion<C = Rational> {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, C>,
}

impl<C: Coefficient> SymmetricExpansion<C> {
    pub fn zero(nvars: usize) -> Self {
        SymmetricExpansion {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<i32>, c: C) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut out = Self::zero(nvars);
        out.add_term(exponents, c);
        out
    }

    /// `constant + slope · z_var`.
    pub fn affine(nvars: usize, var: usize, constant: C, slope: C) -> Self {
        let mut out = Self::constant(nvars, constant);
        let mut e = vec![0; nvars];
        e[var] = 1;
        out.add_term(e, slope);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> Option<&C> {
        self.terms.get(exponents)
    }

    fn add_term(&mut self, exponents: Vec<i32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exponents);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SymmetricExpansion {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, by: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(by));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
            if out.len() > SIZE_LIMIT {
                return Err(Error::SizeGuard {
                    terms: out.len(),
                    limit: SIZE_LIMIT,
                });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Product of a list of factors.
    pub fn product<'a>(nvars: usize, factors: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        C: 'a,
    {
        factors
            .into_iter()
            .try_fold(Self::one(nvars), |acc, f| acc.mul(f))
    }

    /// Relabels variables: variable `m` of `self` becomes variable
    /// `mapping[m]` of a `target_nvars`-variable expansion.
    pub fn relabel(&self, target_nvars: usize, mapping: &[usize]) -> Self {
        assert_eq!(mapping.len(), self.nvars);
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target_nvars];
            for (m, &exp) in e.iter().enumerate() {
                ne[mapping[m]] += exp;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// `f(ẑ_k)`: evaluates an `(n-1)`-variable expansion on the coordinates
    /// of `z ∈ ℂⁿ` with `z_k` deleted (0-indexed `k`).
    pub fn on_deleted(&self, k: usize) -> Self {
        let mapping: Vec<usize> = (0..self.nvars)
            .map(|m| if m < k { m } else { m + 1 })
            .collect();
        self.relabel(self.nvars + 1, &mapping)
    }

    /// `(σf)(z) = f(σ⁻¹ z)`: variable `m` becomes variable `perm[m]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.relabel(self.nvars, perm)
    }

    /// Exact quotient by `z_k - z_l`; fails if the division leaves a remainder.
    pub fn divide_by_difference(&self, k: usize, l: usize) -> Result<Self> {
        assert!(k != l && k < self.nvars && l < self.nvars);
        // group by the exponent of z_k: f = Σ_e f_e z_k^e
        let mut by_power: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[k] < 0 {
                return Err(Error::invalid(
                    "division by z_k - z_l needs non-negative powers of z_k",
                ));
            }
            let mut rest = e.clone();
            rest[k] = 0;
            by_power
                .entry(e[k])
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let top = match by_power.keys().next_back() {
            Some(&d) => d,
            None => return Ok(Self::zero(self.nvars)),
        };
        let z_l = Self::affine(self.nvars, l, C::zero(), C::one());
        // synthetic division in z_k: q_{e-1} = f_e + z_l q_e
        let mut quotient = Self::zero(self.nvars);
        let mut carry = Self::zero(self.nvars);
        for e in (1..=top).rev() {
            let f_e = by_power
                .remove(&e)
                .unwrap_or_else(|| Self::zero(self.nvars));
            carry = f_e.add(&z_l.mul(&carry)?);
            let mut shift = vec![0; self.nvars];
            shift[k] = e - 1;
            quotient = quotient.add(&carry.mul(&Self::monomial(self.nvars, shift, C::one()))?);
        }
        let f_0 = by_power
            .remove(&0)
            .unwrap_or_else(|| Self::zero(self.nvars));
        let remainder = f_0.add(&z_l.mul(&carry)?);
        if !remainder.is_empty() {
            return Err(Error::invalid("expansion is not divisible by z_k - z_l"));
        }
        Ok(quotient)
    }

    /// Converts coefficients into another ring.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SymmetricExpansion<D> {
        let mut out = SymmetricExpansion::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}
