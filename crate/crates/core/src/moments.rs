//! Moment polynomials `⟨∏_{j=1}^n (x - z_j)^μ⟩` by iterating the difference
//! system.
//!
//! Specialising `(α₁, α₂, α₃, x₁, x₂, x₃) = (1, α, β, x, 0, 1)` turns the
//! integrand into the Jacobi weight `z^{α-1}(1-z)^{β-1}` and the basis into
//! `φ_k = ∏_{j≤n-k}(-z_j) ∏_{j>n-k}(1-z_j)`. Each application of the shift
//! multiplies by `∏(z_j - x)` and raises `α₁` by one, so after `μ` steps
//! the first component of `(⟨φ_0⟩, …, ⟨φ_n⟩) A_1 ··· A_μ` is
//!
//! ```text
//! (-1)^{n(μ-1)} · S_n(α+1, β, τ)/S_n(α, β, τ) · ⟨∏(x - z_j)^μ⟩ at weight exponents (α+1, β).
//! ```
//!
//! Callers give the target exponents `(a, b)`; the chain runs at `α = a - 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{int, is_positive, poch, poch_denominator, sign, Poly, Rational};
use crate::difference_system::{FactoredA, GenericParams};
use crate::error::{Error, Result};
use crate::matrix::MatrixR;
use crate::selberg::SelbergParams;

/// Normalised averages `⟨φ_k⟩` at weight `z^{α-1}(1-z)^{β-1}`, `k = 0..n`:
///
/// ```text
/// ⟨φ_k⟩ = (-1)^n (α;τ)_n / (α+β+(n-1)τ;τ)_n · (-β-(n-1)τ;τ)_k / (α;τ)_k
/// ```
pub fn initial_vector(
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    tau: &Rational,
) -> Result<Vec<Rational>> {
    let nm1_tau = tau * int(n as i64 - 1);
    let den = poch_denominator(
        &(alpha + beta + &nm1_tau),
        tau,
        n,
        "(alpha+beta+(n-1)tau; tau)_n",
    )?;
    let prefactor = sign(n) * poch(alpha, tau, n) / den;
    let lowered = -beta - &nm1_tau;
    (0..=n)
        .map(|k| {
            let den = poch_denominator(alpha, tau, k, "(alpha; tau)_k")?;
            Ok(&prefactor * poch(&lowered, tau, k) / den)
        })
        .collect()
}

/// `initial_vector · A_1 · A_2 ··· A_μ`, where `A_k` is the difference-system
/// matrix at `(α₁, α₂, α₃, x₁, x₂, x₃) = (k, α, β, x, 0, 1)`.
///
/// Evaluated left to right as row-vector products; the matrices are never
/// multiplied together.
pub fn chain(
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    tau: &Rational,
    mu: usize,
) -> Result<Vec<Poly>> {
    let initial: Vec<Poly> = initial_vector(n, alpha, beta, tau)?
        .into_iter()
        .map(Poly::constant)
        .collect();
    let mut v = ScaledRow::from_polys(&initial);
    for step in 1..=mu {
        let p = GenericParams::new(
            int(step as i64),
            alpha.clone(),
            beta.clone(),
            tau.clone(),
            Poly::x(),
            Poly::zero(),
            Poly::one(),
        )?;
        let a = FactoredA::build(&p, n).map_err(|e| match e {
            Error::ParameterSingular { factor } => Error::ParameterSingular {
                factor: format!("{factor} (chain step {step})"),
            },
            other => other,
        })?;
        v = v.times(&a);
    }
    Ok(v.into_polys())
}

/// A row of polynomials stored as one rational scale times integer
/// coefficient vectors, so the inner products run on integers without
/// per-operation gcds.
struct ScaledRow {
    scale: Rational,
    polys: Vec<Vec<BigInt>>,
}

/// `p = q / d` with `q` integral; returns `(q, d)`.
fn clear_denominators(p: &Poly) -> (Vec<BigInt>, BigInt) {
    let d = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
        .collect();
    (q, d)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ScaledRow {
    fn from_polys(polys: &[Poly]) -> Self {
        let cleared: Vec<(Vec<BigInt>, BigInt)> = polys.iter().map(clear_denominators).collect();
        let common = cleared.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let polys = cleared
            .into_iter()
            .map(|(q, d)| {
                let m = &common / d;
                q.into_iter().map(|c| c * &m).collect()
            })
            .collect();
        let mut row = ScaledRow {
            scale: Rational::new(BigInt::one(), common),
            polys,
        };
        row.remove_content();
        row
    }

    /// Moves the gcd of all coefficients into `scale`.
    fn remove_content(&mut self) {
        let g = self
            .polys
            .iter()
            .flatten()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return;
        }
        for c in self.polys.iter_mut().flatten() {
            *c /= &g;
        }
        self.scale *= Rational::from_integer(g);
    }

    /// `self · A`.
    fn times(&self, a: &FactoredA) -> Self {
        let order = a.scalars.order();
        assert_eq!(self.polys.len(), order);
        // A_ij = (F_i / e_i) s_ij = F_i · N_ij / L with F_i, N_ij integral
        let (factors, row_dens): (Vec<_>, Vec<_>) =
            a.row_factors.iter().map(clear_denominators).unzip();
        let t = MatrixR::from_fn(order, |i, j| {
            a.scalars.get(i, j) / Rational::from_integer(row_dens[i].clone())
        });
        let l = t
            .rows()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let l_rat = Rational::from_integer(l.clone());
        let weighted: Vec<Vec<BigInt>> = self
            .polys
            .iter()
            .zip(&factors)
            .map(|(v, f)| int_poly_mul(v, f))
            .collect();
        let polys = (0..order)
            .map(|j| {
                let len = weighted.iter().map(Vec::len).max().unwrap_or(0);
                let mut acc = vec![BigInt::zero(); len];
                for (i, w) in weighted.iter().enumerate() {
                    let s = t.get(i, j);
                    if s.is_zero() {
                        continue;
                    }
                    let m = (s * &l_rat).to_integer();
                    for (slot, c) in acc.iter_mut().zip(w) {
                        *slot += &m * c;
                    }
                }
                acc
            })
            .collect();
        let mut row = ScaledRow {
            scale: &self.scale / l_rat,
            polys,
        };
        row.remove_content();
        row
    }

    fn into_polys(self) -> Vec<Poly> {
        let scale = self.scale;
        self.polys
            .into_iter()
            .map(|q| {
                Poly::new(
                    q.into_iter()
                        .map(|c| Rational::from_integer(c) * &scale)
                        .collect(),
                )
            })
            .collect()
    }
}

/// Target of a moment computation: `⟨∏_{j=1}^n (x - z_j)^μ⟩` at weight
/// `z^{a-1} (1-z)^{b-1} ∏|z_j - z_k|^{2τ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentRequest {
    pub n: usize,
    pub tau: Rational,
    pub a: Rational,
    pub b: Rational,
    pub mu: usize,
}

impl MomentRequest {
    pub fn new(n: usize, tau: Rational, a: Rational, b: Rational, mu: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if mu == 0 {
            return Err(Error::invalid("mu must be at least 1"));
        }
        for (name, value) in [("tau", &tau), ("alpha", &a), ("beta", &b)] {
            if !is_positive(value) {
                return Err(Error::invalid(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        Ok(MomentRequest { n, tau, a, b, mu })
    }

    fn selberg(&self) -> SelbergParams {
        SelbergParams {
            alpha: self.a.clone(),
            beta: self.b.clone(),
            tau: self.tau.clone(),
            n: self.n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentResult {
    /// Monic, degree `nμ`.
    pub poly: Poly,
    pub request: MomentRequest,
    /// `(-1)^{nμ} S_n(a+μ, b, τ) / S_n(a, b, τ)`, the expected value at `x = 0`.
    pub endpoint0: Rational,
    /// `S_n(a, b+μ, τ) / S_n(a, b, τ)`, the expected value at `x = 1`.
    pub endpoint1: Rational,
}

impl MomentResult {
    pub fn endpoint0_holds(&self) -> bool {
        self.poly.eval(&Rational::zero()) == self.endpoint0
    }

    pub fn endpoint1_holds(&self) -> bool {
        self.poly.eval(&Rational::one()) == self.endpoint1
    }

    pub fn is_monic(&self) -> bool {
        self.poly.is_monic() && self.poly.degree() == Some(self.request.n * self.request.mu)
    }
}

/// Exact `⟨∏_{j=1}^n (x - z_j)^μ⟩` for the request's weight exponents.
///
/// The chain starts at `α = a - 1`; if `(a-1; τ)_n = 0` its initial vector is
/// undefined. For `μ = 1` the closed form [`closed_form_mu1`] still applies
/// and is returned; otherwise the request is rejected.
pub fn moment_polynomial(req: &MomentRequest) -> Result<MomentResult> {
    let n = req.n;
    let alpha = &req.a - int(1);
    let beta = req.b.clone();
    let shift_ratio =
        SelbergParams::new_unchecked(alpha.clone(), beta.clone(), req.tau.clone(), n)?
            .ratio_alpha(1)?;

    let poly = if shift_ratio.is_zero() {
        if req.mu != 1 {
            return Err(Error::singular(format!(
                "(a-1; tau)_n = ({alpha}; {})_{n} in the initial vector",
                req.tau
            )));
        }
        closed_form_mu1(n, &req.a, &req.b, &req.tau)?
    } else {
        let v = chain(n, &alpha, &beta, &req.tau, req.mu)?;
        let divisor = sign(n * (req.mu - 1)) * shift_ratio;
        v[0].scale(&divisor.recip())
    };

    let s = req.selberg();
    let endpoint0 = sign(n * req.mu) * s.ratio_alpha(req.mu)?;
    let endpoint1 = s.ratio_beta(req.mu)?;
    Ok(MomentResult {
        poly,
        request: req.clone(),
        endpoint0,
        endpoint1,
    })
}

/// Terminating Gauss series `₂F₁(-m, b; c; x) = Σ_{k=0}^m (-m)_k (b)_k / ((c)_k k!) x^k`
/// with `neg_m = -m ≤ 0`.
pub fn gauss_2f1_terminating(neg_m: i64, b: &Rational, c: &Rational) -> Result<Poly> {
    if neg_m > 0 {
        return Err(Error::invalid(format!(
            "terminating series needs a non-positive upper parameter, got {neg_m}"
        )));
    }
    let m = neg_m.unsigned_abs() as usize;
    let unit = Rational::one();
    let upper = int(neg_m);
    let coeffs = (0..=m)
        .map(|k| {
            let den = poch_denominator(c, &unit, k, "(c)_k")? * poch(&unit, &unit, k);
            Ok(poch(&upper, &unit, k) * poch(b, &unit, k) / den)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// `⟨∏(x - z_j)⟩ = c̃ · ₂F₁(-n, (a+b)/τ + n - 1; a/τ; x)` with
/// `c̃ = (-1)^n (a;τ)_n / (a+b+(n-1)τ;τ)_n`, a Jacobi polynomial in `1 - 2x`.
pub fn closed_form_mu1(n: usize, a: &Rational, b: &Rational, tau: &Rational) -> Result<Poly> {
    let nm1 = int(n as i64 - 1);
    let den = poch_denominator(&(a + b + tau * &nm1), tau, n, "(a+b+(n-1)tau; tau)_n")?;
    let c_tilde = sign(n) * poch(a, tau, n) / den;
    let series = gauss_2f1_terminating(-(n as i64), &((a + b) / tau + nm1), &(a / tau))?;
    Ok(series.scale(&c_tilde))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn req(n: usize, tau: Rational, a: Rational, b: Rational, mu: usize) -> MomentRequest {
        MomentRequest::new(n, tau, a, b, mu).unwrap()
    }

    fn poly(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn initial_vector_examples() {
        // n = 1: (-α/(α+β), β/(α+β))
        let (a, b) = (rat(5, 2), rat(7, 3));
        let v = initial_vector(1, &a, &b, &rat(4, 1)).unwrap();
        assert_eq!(v, vec![-(&a) / (&a + &b), &b / (&a + &b)]);
        let v = initial_vector(1, &int(1), &int(1), &int(3)).unwrap();
        assert_eq!(v, vec![rat(-1, 2), rat(1, 2)]);
        // k = 0 component
        let (n, tau) = (4, rat(3, 2));
        let v = initial_vector(n, &a, &b, &tau).unwrap();
        let expected = sign(n) * poch(&a, &tau, n) / poch(&(&a + &b + &tau * int(3)), &tau, n);
        assert_eq!(v[0], expected);
    }

    #[test]
    fn chain_examples() {
        let (one, tau) = (int(1), rat(5, 3));
        let start = initial_vector(2, &rat(3, 2), &one, &tau).unwrap();
        let v = chain(2, &rat(3, 2), &one, &tau, 0).unwrap();
        assert_eq!(v, start.into_iter().map(Poly::constant).collect::<Vec<_>>());
        // n = 1, α = β = 1: (-1/2, 1/2) A_1, first column 2(1-x)/3 and x/3
        let v = chain(1, &one, &one, &tau, 1).unwrap();
        assert_eq!(v[0], poly(&[(-1, 3), (1, 2)]));
        let v = chain(3, &rat(3, 2), &rat(5, 2), &tau, 3).unwrap();
        assert!(v.iter().all(|p| p.degree().unwrap_or(0) <= 9));
    }

    #[test]
    fn one_variable_moments() {
        let r = moment_polynomial(&req(1, rat(7, 2), int(2), int(2), 2)).unwrap();
        assert_eq!(r.poly, poly(&[(3, 10), (-1, 1), (1, 1)]));
        let r = moment_polynomial(&req(1, int(1), int(1), int(1), 1)).unwrap();
        assert_eq!(r.poly, poly(&[(-1, 2), (1, 1)]));
        let r = moment_polynomial(&req(1, int(1), int(2), int(1), 1)).unwrap();
        assert_eq!(r.poly, poly(&[(-2, 3), (1, 1)]));
    }

    #[test]
    fn golden_polynomial() {
        let r = moment_polynomial(&req(5, int(5), int(2), int(2), 2)).unwrap();
        let expected = poly(&[
            (23, 5437500),
            (-23, 65250),
            (3197, 261000),
            (-8993, 56550),
            (2117449, 2035800),
            (-793093, 203580),
            (601937, 67860),
            (-4384, 351),
            (7457, 702),
            (-5, 1),
            (1, 1),
        ]);
        assert_eq!(r.poly, expected);
        assert!(r.endpoint0_holds() && r.endpoint1_holds() && r.is_monic());
    }

    #[test]
    fn singular_start_is_rejected_beyond_first_moment() {
        let err = moment_polynomial(&req(2, int(1), int(1), int(3), 2)).unwrap_err();
        assert!(matches!(err, Error::ParameterSingular { .. }));
        assert!(MomentRequest::new(2, int(1), int(0), int(1), 1).is_err());
        assert!(MomentRequest::new(0, int(1), int(1), int(1), 1).is_err());
        assert!(MomentRequest::new(1, int(1), int(1), int(1), 0).is_err());
    }

    #[test]
    fn gauss_series_examples() {
        let (b, c) = (rat(5, 3), rat(7, 2));
        assert_eq!(
            gauss_2f1_terminating(-1, &b, &c).unwrap(),
            Poly::linear(int(1), -(&b / &c))
        );
        assert_eq!(gauss_2f1_terminating(0, &b, &c).unwrap(), Poly::one());
        assert_eq!(
            gauss_2f1_terminating(-2, &int(1), &int(1)).unwrap(),
            poly(&[(1, 1), (-2, 1), (1, 1)])
        );
        assert!(gauss_2f1_terminating(-3, &int(1), &int(-1)).is_err());
        assert!(gauss_2f1_terminating(1, &int(1), &int(1)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_mu1(1, &int(1), &int(1), &int(1)).unwrap(),
            poly(&[(-1, 2), (1, 1)])
        );
        for n in 1..6 {
            let p = closed_form_mu1(n, &rat(5, 2), &rat(7, 2), &int(2)).unwrap();
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(n));
        }
    }

    #[test]
    fn first_moment_agrees_with_closed_form() {
        for n in 1..5 {
            for tau in [int(1), rat(3, 2)] {
                let r = moment_polynomial(&req(n, tau.clone(), rat(5, 2), int(3), 1)).unwrap();
                assert_eq!(
                    r.poly,
                    closed_form_mu1(n, &rat(5, 2), &int(3), &tau).unwrap()
                );
            }
        }
    }
}
