//! Brute-force evaluation of averages over the generalised Selberg weight
//!
//! ```text
//! Φ(z) = ∏ |x₁ - z_i|^{α₁-1} z_i^{α₂-1} (1 - z_i)^{α₃-1} ∏_{j<k} (z_j - z_k)^{2τ}
//! ```
//!
//! on `[0,1]^n` (so `x₂ = 0`, `x₃ = 1`), for integer `τ` and integer `α₁`
//! where everything except the Beta weight is a polynomial. The polynomial
//! part is expanded into monomials and each monomial is averaged with the
//! exact product-Beta ratio `∏ (α₂)_{c_i} / (α₂+α₃)_{c_i}`. Nothing here goes
//! through the difference system, so the identities checked below are
//! independent evidence for it.
//!
//! All averages are normalised by `⟨1⟩`; the identities are linear and
//! homogeneous in `⟨·⟩`, so the normalisation cancels.

mod expansion;

pub use expansion::{SymmetricExpansion, SIZE_LIMIT};

use std::cell::RefCell;
use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::arith::{binomial, int, poch, poch_signed, sign, Coefficient, Poly, Rational};
use crate::error::{Error, Result};
use crate::moments::initial_vector;
use crate::selberg::SelbergParams;

/// Largest `n` and `τ` the oracle accepts.
pub const MAX_N: usize = 3;
pub const MAX_TAU: u32 = 3;

/// `∏_{j<k} (z_j - z_k)^{2τ}`.
pub fn expand_vandermonde_power(n: usize, tau: u32) -> Result<SymmetricExpansion> {
    let mut acc = SymmetricExpansion::one(n);
    for j in 0..n {
        for k in j + 1..n {
            let mut e_j = vec![0; n];
            e_j[j] = 1;
            let mut e_k = vec![0; n];
            e_k[k] = 1;
            let diff = SymmetricExpansion::monomial(n, e_j, int(1))
                .add(&SymmetricExpansion::monomial(n, e_k, int(-1)));
            acc = acc.mul(&diff.pow(2 * tau)?)?;
        }
    }
    Ok(acc)
}

/// Normalised product-Beta moment
/// `∫ ∏ z_i^{c_i} w(z_i) dz / ∫ ∏ w(z_i) dz` with `w(z) = z^{α₂-1}(1-z)^{α₃-1}`.
///
/// Negative exponents are allowed while `α₂ + c_i > 0`.
pub fn monomial_average(c: &[i32], alpha2: &Rational, alpha3: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let total = alpha2 + alpha3;
    let mut acc = Rational::one();
    for &ci in c {
        if alpha2 + int(ci as i64) <= Rational::zero() {
            return Err(Error::Divergent(format!(
                "z^{ci} against z^({alpha2}-1): exponent sum is not positive"
            )));
        }
        acc *= poch_signed(alpha2, &one, ci as i64)? / poch_signed(&total, &one, ci as i64)?;
    }
    Ok(acc)
}

/// Parameters of the oracle weight; `x₂ = 0` and `x₃ = 1` are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleParams {
    pub n: usize,
    pub tau: u32,
    pub alpha1: u32,
    pub alpha2: Rational,
    pub alpha3: Rational,
    pub x1: Rational,
}

impl OracleParams {
    pub fn new(
        n: usize,
        tau: u32,
        alpha1: u32,
        alpha2: Rational,
        alpha3: Rational,
        x1: Rational,
    ) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::invalid(format!(
                "oracle supports 1 <= n <= {MAX_N}, got {n}"
            )));
        }
        if tau == 0 || tau > MAX_TAU {
            return Err(Error::invalid(format!(
                "oracle supports integer 1 <= tau <= {MAX_TAU}, got {tau}"
            )));
        }
        if alpha1 == 0 {
            return Err(Error::invalid("alpha1 must be a positive integer"));
        }
        if alpha2 <= Rational::zero() || alpha3 <= Rational::zero() {
            return Err(Error::invalid("alpha2 and alpha3 must be positive"));
        }
        let inside = x1 > Rational::zero() && x1 < Rational::one();
        if inside && alpha1.is_multiple_of(2) {
            return Err(Error::invalid(
                "|x1 - z|^(alpha1-1) changes sign on [0,1]: need x1 outside (0,1) or alpha1 odd",
            ));
        }
        Ok(OracleParams {
            n,
            tau,
            alpha1,
            alpha2,
            alpha3,
            x1,
        })
    }

    /// The Jacobi weight `z^{a-1}(1-z)^{b-1}` with no `x₁` factor.
    pub fn jacobi(n: usize, tau: u32, a: Rational, b: Rational) -> Result<Self> {
        Self::new(n, tau, 1, a, b, Rational::zero())
    }

    pub fn x2(&self) -> Rational {
        Rational::zero()
    }

    pub fn x3(&self) -> Rational {
        Rational::one()
    }

    fn tau_r(&self) -> Rational {
        int(self.tau as i64)
    }

    fn coords(&self) -> [Rational; 3] {
        [self.x1.clone(), self.x2(), self.x3()]
    }
}

/// Precomputed polynomial part of `Φ` for one parameter tuple.
#[derive(Clone, Debug)]
pub struct Oracle {
    params: OracleParams,
    weight: SymmetricExpansion,
    norm: Rational,
    /// One-variable Beta moments by exponent.
    moments: RefCell<HashMap<i32, Rational>>,
    /// Raw averages of single monomials.
    monomials: RefCell<HashMap<Vec<i32>, Rational>>,
}

impl Oracle {
    pub fn new(params: OracleParams) -> Result<Self> {
        let n = params.n;
        // |x1 - z|^{α1-1} with the sign fixed so the factor is non-negative on [0,1]
        let slope_sign = if params.x1 <= Rational::zero() {
            int(1)
        } else {
            int(-1)
        };
        let mut weight = expand_vandermonde_power(n, params.tau)?;
        if params.alpha1 > 1 {
            for i in 0..n {
                let factor = SymmetricExpansion::affine(
                    n,
                    i,
                    -(&params.x1 * &slope_sign),
                    slope_sign.clone(),
                );
                weight = weight.mul(&factor.pow(params.alpha1 - 1)?)?;
            }
        }
        let mut oracle = Oracle {
            params,
            weight,
            norm: Rational::one(),
            moments: RefCell::default(),
            monomials: RefCell::default(),
        };
        oracle.norm = oracle.raw(&SymmetricExpansion::<Rational>::one(n))?;
        if oracle.norm.is_zero() {
            return Err(Error::invalid("oracle weight integrates to zero"));
        }
        Ok(oracle)
    }

    pub fn params(&self) -> &OracleParams {
        &self.params
    }

    /// `∫ φ Φ` divided by `B(α₂, α₃)^n` (so rational for rational inputs).
    pub fn raw<C: Coefficient>(&self, phi: &SymmetricExpansion<C>) -> Result<C> {
        assert_eq!(
            phi.nvars(),
            self.params.n,
            "phi has the wrong number of variables"
        );
        let mut total = C::zero();
        for (e_phi, c_phi) in phi.terms() {
            total = total + c_phi.scale(&self.monomial_raw(e_phi)?);
        }
        Ok(total)
    }

    /// `∫ z^e Φ / B(α₂, α₃)^n`, memoised.
    fn monomial_raw(&self, e_phi: &[i32]) -> Result<Rational> {
        if let Some(v) = self.monomials.borrow().get(e_phi) {
            return Ok(v.clone());
        }
        let mut value = Rational::zero();
        for (e_w, c_w) in self.weight.terms() {
            let mut term = c_w.clone();
            for (a, b) in e_phi.iter().zip(e_w) {
                term *= self.moment(a + b)?;
            }
            value += term;
        }
        self.monomials
            .borrow_mut()
            .insert(e_phi.to_vec(), value.clone());
        Ok(value)
    }

    fn moment(&self, c: i32) -> Result<Rational> {
        if let Some(m) = self.moments.borrow().get(&c) {
            return Ok(m.clone());
        }
        let m = monomial_average(&[c], &self.params.alpha2, &self.params.alpha3)?;
        self.moments.borrow_mut().insert(c, m.clone());
        Ok(m)
    }

    /// Normalised average `⟨φ⟩ / ⟨1⟩`.
    pub fn average<C: Coefficient>(&self, phi: &SymmetricExpansion<C>) -> Result<C> {
        Ok(self.raw(phi)?.scale(&self.norm.recip()))
    }

    /// `⟨φ_{i,j}⟩` (normalised).
    pub fn phi_average(&self, i: usize, j: usize) -> Result<Rational> {
        let [x1, x2, x3] = self.params.coords();
        self.average(&interpolation_polynomial(
            self.params.n,
            i,
            j,
            [&x1, &x2, &x3],
        )?)
    }
}

/// `⟨φ⟩ / ⟨1⟩` for a single expansion.
pub fn oracle_average<C: Coefficient>(
    phi: &SymmetricExpansion<C>,
    params: &OracleParams,
) -> Result<C> {
    Oracle::new(params.clone())?.average(phi)
}

/// `φ_{i,j}(z) = ∏_{l≤j}(z_l - x₁) · ∏_{l≤m-i}(x₂ - z_l) · ∏_{l>m-i}(x₃ - z_l)`
/// in `m` variables.
pub fn interpolation_polynomial(
    m: usize,
    i: usize,
    j: usize,
    x: [&Rational; 3],
) -> Result<SymmetricExpansion> {
    if i > m || j > m {
        return Err(Error::invalid(format!("phi_{{{i},{j}}} needs i, j <= {m}")));
    }
    let [x1, x2, x3] = x;
    let mut factors = Vec::new();
    for l in 0..j {
        factors.push(SymmetricExpansion::affine(m, l, -x1.clone(), int(1)));
    }
    for l in 0..m {
        let root = if l < m - i { x2 } else { x3 };
        factors.push(SymmetricExpansion::affine(m, l, root.clone(), int(-1)));
    }
    SymmetricExpansion::product(m, &factors)
}

/// Orbit sum `s_{i,j}(z) = Σ_{σ ∈ S_m} σ φ_{i,j}(z)`.
pub fn orbit_sum(m: usize, i: usize, j: usize, x: [&Rational; 3]) -> Result<SymmetricExpansion> {
    let phi = interpolation_polynomial(m, i, j, x)?;
    Ok((0..m)
        .permutations(m)
        .fold(SymmetricExpansion::zero(m), |acc, perm| {
            acc.add(&phi.permuted(&perm))
        }))
}

/// Two sides of an identity, compared exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn check_indices(n: usize, indices: &[usize], bound: usize, what: &str) -> Result<()> {
    if indices.iter().any(|&v| v > bound) {
        return Err(Error::invalid(format!(
            "{what}: indices {indices:?} out of range for n = {n}"
        )));
    }
    Ok(())
}

/// Index range on which the raising relation [`three_term_up`] holds:
/// `i + j ≥ n - 1`. Below it the relation fails for generic parameters.
pub fn up_admissible(n: usize, i: usize, j: usize) -> bool {
    i + j + 1 >= n
}

/// Index range on which the lowering relation [`three_term_down`] holds:
/// `i + j ≤ n - 1`. Above it the relation fails for generic parameters.
pub fn down_admissible(n: usize, i: usize, j: usize) -> bool {
    i + j < n
}

/// `(α₁+(n-j-1)τ)(x₂-x₁)⟨φ_{i+1,j}⟩ = (α₃+(n-i-1)τ)⟨φ_{i,j+1}⟩ + (α₁+α₂+(n+i-j-1)τ)⟨φ_{i+1,j+1}⟩`
pub fn three_term_up(oracle: &Oracle, i: usize, j: usize) -> Result<Comparison> {
    let p = oracle.params();
    let n = p.n;
    check_indices(n, &[i, j], n - 1, "three-term relation")?;
    let (a1, a2, a3, t) = (int(p.alpha1 as i64), &p.alpha2, &p.alpha3, p.tau_r());
    let nr = |v: i64| int(v) * &t;
    let (n_, i_, j_) = (n as i64, i as i64, j as i64);
    let lhs = (&a1 + nr(n_ - j_ - 1)) * (p.x2() - &p.x1) * oracle.phi_average(i + 1, j)?;
    let rhs = (a3 + nr(n_ - i_ - 1)) * oracle.phi_average(i, j + 1)?
        + (&a1 + a2 + nr(n_ + i_ - j_ - 1)) * oracle.phi_average(i + 1, j + 1)?;
    Ok(Comparison { lhs, rhs })
}

/// `(α₁+α₂+α₃+(2n-j-2)τ)⟨φ_{i,j+1}⟩ = (α₁+α₂+(n+i-j-1)τ)(x₃-x₁)⟨φ_{i,j}⟩ - (α₂+iτ)(x₂-x₁)⟨φ_{i+1,j}⟩`
pub fn three_term_down(oracle: &Oracle, i: usize, j: usize) -> Result<Comparison> {
    let p = oracle.params();
    let n = p.n;
    check_indices(n, &[i, j], n - 1, "three-term relation")?;
    let (a1, a2, a3, t) = (int(p.alpha1 as i64), &p.alpha2, &p.alpha3, p.tau_r());
    let nr = |v: i64| int(v) * &t;
    let (n_, i_, j_) = (n as i64, i as i64, j as i64);
    let lhs = (&a1 + a2 + a3 + nr(2 * n_ - j_ - 2)) * oracle.phi_average(i, j + 1)?;
    let rhs = (&a1 + a2 + nr(n_ + i_ - j_ - 1)) * (p.x3() - &p.x1) * oracle.phi_average(i, j)?
        - (a2 + nr(i_)) * (p.x2() - &p.x1) * oracle.phi_average(i + 1, j)?;
    Ok(Comparison { lhs, rhs })
}

pub fn check_three_term_up(i: usize, j: usize, p: &OracleParams) -> Result<bool> {
    Ok(three_term_up(&Oracle::new(p.clone())?, i, j)?.holds())
}

pub fn check_three_term_down(i: usize, j: usize, p: &OracleParams) -> Result<bool> {
    Ok(three_term_down(&Oracle::new(p.clone())?, i, j)?.holds())
}

/// The two summation identities obtained by inducting the three-term
/// relations, for `0 ≤ j ≤ k ≤ n`; returns `(up, down)`.
pub fn corollary(oracle: &Oracle, j: usize, k: usize) -> Result<(Comparison, Comparison)> {
    let p = oracle.params();
    let n = p.n;
    check_indices(n, &[j, k], n, "corollary")?;
    if j > k {
        return Err(Error::invalid(format!(
            "corollary needs j <= k, got j={j}, k={k}"
        )));
    }
    let (a1, a2, a3, t) = (int(p.alpha1 as i64), &p.alpha2, &p.alpha3, p.tau_r());
    let nr = |v: i64| int(v) * &t;
    let g2 = p.x2() - &p.x1;
    let g3 = p.x3() - &p.x1;
    let (n_, j_, k_) = (n as i64, j as i64, k as i64);
    let pw = |b: &Rational, e: usize| num_traits::pow(b.clone(), e);

    let up_lhs = poch(&(&a1 + nr(k_ - j_)), &t, j) * pw(&g2, j) * oracle.phi_average(k, n - k)?;
    let mut up_rhs = Rational::zero();
    for i in 0..=j {
        up_rhs += binomial(j_, i as i64)
            * poch(&(a3 + nr(n_ - k_)), &t, j - i)
            * poch(&(&a1 + a2 + nr(2 * k_ - j_ - 1)), &t, i)
            * oracle.phi_average(i + k - j, n - k + j)?;
    }

    let down_lhs =
        poch(&(&a1 + a2 + a3 + nr(n_ + j_ - 1)), &t, n - k) * oracle.phi_average(j, n - j)?;
    let mut down_rhs = Rational::zero();
    for i in k..=n {
        let i_ = i as i64;
        down_rhs += sign(i - k)
            * binomial(n_ - k_, n_ - i_)
            * poch(&(&a1 + a2 + nr(i_ + 2 * j_ - k_)), &t, n - i)
            * poch(&(a2 + nr(j_)), &t, i - k)
            * pw(&g3, n - i)
            * pw(&g2, i - k)
            * oracle.phi_average(i - k + j, k - j)?;
    }
    Ok((
        Comparison {
            lhs: up_lhs,
            rhs: up_rhs,
        },
        Comparison {
            lhs: down_lhs,
            rhs: down_rhs,
        },
    ))
}

pub fn check_corollary(j: usize, k: usize, p: &OracleParams) -> Result<bool> {
    let (up, down) = corollary(&Oracle::new(p.clone())?, j, k)?;
    Ok(up.holds() && down.holds())
}

/// `H = H₁ + H₂` built from the orbit sums `s^{(n-1)}_{i,j}` on deleted
/// coordinates. It is a sum of total derivatives, so `⟨H⟩ = 0`.
pub fn h_polynomial(p: &OracleParams, i: usize, j: usize) -> Result<SymmetricExpansion> {
    let n = p.n;
    check_indices(n, &[i, j], n - 1, "H")?;
    let [x1, x2, x3] = p.coords();
    let (a1, a2, a3) = (int(p.alpha1 as i64), &p.alpha2, &p.alpha3);
    let s = orbit_sum(n - 1, i, j, [&x1, &x2, &x3])?;
    let s_hat: Vec<SymmetricExpansion> = (0..n).map(|k| s.on_deleted(k)).collect();
    let root = |x: &Rational, k: usize| SymmetricExpansion::affine(n, k, x.clone(), int(-1));

    let mut h1 = SymmetricExpansion::zero(n);
    for (k, sk) in s_hat.iter().enumerate() {
        let bracket = root(&x2, k)
            .mul(&root(&x3, k))?
            .scale(&a1)
            .add(&root(&x1, k).mul(&root(&x3, k))?.scale(a2))
            .add(&root(&x1, k).mul(&root(&x2, k))?.scale(a3));
        h1 = h1.sub(&bracket.mul(sk)?);
    }

    let cubic =
        |k: usize| SymmetricExpansion::product(n, &[root(&x1, k), root(&x2, k), root(&x3, k)]);
    let mut h2 = SymmetricExpansion::zero(n);
    for k in 0..n {
        for l in k + 1..n {
            let numerator = cubic(k)?.mul(&s_hat[k])?.sub(&cubic(l)?.mul(&s_hat[l])?);
            let quotient = numerator.divide_by_difference(k, l)?;
            h2 = h2.add(&quotient.scale(&int(2 * p.tau as i64)));
        }
    }
    Ok(h1.add(&h2))
}

pub fn check_h_vanishing(i: usize, j: usize, p: &OracleParams) -> Result<bool> {
    let h = h_polynomial(p, i, j)?;
    Ok(Oracle::new(p.clone())?.raw(&h)?.is_zero())
}

/// `⟨∏_{i=1}^n (x - z_i)^μ⟩` at weight `z^{a-1}(1-z)^{b-1}`, by expansion.
pub fn oracle_moment_polynomial(
    n: usize,
    a: &Rational,
    b: &Rational,
    tau: u32,
    mu: u32,
) -> Result<Poly> {
    let oracle = Oracle::new(OracleParams::jacobi(n, tau, a.clone(), b.clone())?)?;
    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        factors.push(SymmetricExpansion::<Poly>::affine(n, i, Poly::x(), -Poly::one()).pow(mu)?);
    }
    oracle.average(&SymmetricExpansion::product(n, &factors)?)
}

/// `e_k((1-z)/z) = Σ_{|S|=k} ∏_{s∈S} (z_s^{-1} - 1)`.
pub fn elementary_of_reciprocal_gap(n: usize, k: usize) -> Result<SymmetricExpansion> {
    let mut acc = SymmetricExpansion::zero(n);
    for subset in (0..n).combinations(k) {
        let mut term = SymmetricExpansion::one(n);
        for &s in &subset {
            let mut e = vec![0; n];
            e[s] = -1;
            let factor = SymmetricExpansion::monomial(n, e, int(1))
                .add(&SymmetricExpansion::constant(n, int(-1)));
            term = term.mul(&factor)?;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Outcome of the elementary-symmetric checks for one `(k, a, b, τ, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W2Report {
    /// Oracle average of `e_k((1-z)/z)` against
    /// `C(n,k) (-1)^k (-b-(n-1)τ;τ)_k / (a-1;τ)_k`.
    pub elementary: Comparison,
    /// The initial vector component `⟨φ_k⟩` at `α = a-1` against
    /// `(-1)^{n-k} C(n,k)^{-1} S_n(a,b,τ)/S_n(a-1,b,τ) · ⟨e_k((1-z)/z)⟩`.
    pub basis_link: Comparison,
    /// The oracle's own `⟨φ_k⟩` at `α = a-1` against the initial vector,
    /// when that weight is integrable (`a > 1`).
    pub basis_oracle: Option<Comparison>,
}

impl W2Report {
    pub fn holds(&self) -> bool {
        self.elementary.holds()
            && self.basis_link.holds()
            && self.basis_oracle.as_ref().is_none_or(Comparison::holds)
    }
}

pub fn w2_report(k: usize, a: &Rational, b: &Rational, tau: u32, n: usize) -> Result<W2Report> {
    if k > n {
        return Err(Error::invalid(format!(
            "e_k needs k <= n, got k={k}, n={n}"
        )));
    }
    let t = int(tau as i64);
    let oracle = Oracle::new(OracleParams::jacobi(n, tau, a.clone(), b.clone())?)?;
    let elementary_avg = oracle.average(&elementary_of_reciprocal_gap(n, k)?)?;

    let alpha = a - int(1);
    let nm1 = int(n as i64 - 1);
    let den = poch(&alpha, &t, k);
    if den.is_zero() {
        return Err(Error::singular(format!(
            "(a-1; tau)_k = ({alpha}; {tau})_{k}"
        )));
    }
    let closed = binomial(n as i64, k as i64) * sign(k) * poch(&(-b - &t * &nm1), &t, k) / den;

    let ratio =
        SelbergParams::new_unchecked(alpha.clone(), b.clone(), t.clone(), n)?.ratio_alpha(1)?;
    let phi_k = initial_vector(n, &alpha, b, &t)?.swap_remove(k);
    let linked = sign(n - k) / binomial(n as i64, k as i64) * ratio * &elementary_avg;

    let basis_oracle = if alpha > Rational::zero() {
        let at_alpha = Oracle::new(OracleParams::jacobi(n, tau, alpha.clone(), b.clone())?)?;
        let phi = interpolation_polynomial(
            n,
            k,
            0,
            [&Rational::zero(), &Rational::zero(), &Rational::one()],
        )?;
        Some(Comparison {
            lhs: at_alpha.average(&phi)?,
            rhs: phi_k.clone(),
        })
    } else {
        None
    };

    Ok(W2Report {
        elementary: Comparison {
            lhs: elementary_avg,
            rhs: closed,
        },
        basis_link: Comparison {
            lhs: phi_k,
            rhs: linked,
        },
        basis_oracle,
    })
}

pub fn check_w2(k: usize, a: &Rational, b: &Rational, tau: u32, n: usize) -> Result<bool> {
    Ok(w2_report(k, a, b, tau, n)?.holds())
}
