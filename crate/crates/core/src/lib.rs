//! Exact moments of characteristic polynomials of the Jacobi β-ensemble.
//!
//! The average `⟨∏_{j=1}^n (x - z_j)^μ⟩` over the density proportional to
//! `∏ z_i^{a-1} (1-z_i)^{b-1} ∏_{j<k} |z_j - z_k|^{2τ}` on `[0,1]^n` is a
//! polynomial of degree `nμ` in `x`. [`moments::moment_polynomial`] computes
//! it exactly by iterating an `(n+1)×(n+1)` linear difference system whose
//! matrix is known in closed form ([`difference_system`]).
//!
//! [`oracle`] is an independent brute-force evaluator (symmetric expansion
//! plus exact Beta moments) used to certify the difference system and the
//! identities it rests on at small `n`.

pub mod arith;
pub mod difference_system;
pub mod error;
pub mod matrix;
pub mod moments;
pub mod oracle;
pub mod selberg;

pub use arith::{binomial, poch, poch_signed, Poly, Rational};
pub use error::{Error, Result};
pub use matrix::{Matrix, MatrixP, MatrixR};
pub use moments::{moment_polynomial, MomentRequest, MomentResult};
pub use selberg::SelbergParams;
