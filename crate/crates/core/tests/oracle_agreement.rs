use selberg_core::arith::{int, rat, sign, Rational};
use selberg_core::moments::closed_form_mu1;
use selberg_core::oracle::{
    check_corollary, check_h_vanishing, check_w2, oracle_moment_polynomial, OracleParams,
};
use selberg_core::{moment_polynomial, MomentRequest};

fn engine(n: usize, tau: u32, a: &Rational, b: &Rational, mu: usize) -> selberg_core::Poly {
    let req = MomentRequest::new(n, int(tau as i64), a.clone(), b.clone(), mu).unwrap();
    moment_polynomial(&req).unwrap().poly
}

#[test]
fn engine_matches_brute_force_expansion() {
    for n in 1..=2 {
        for tau in 1..=2 {
            for mu in 1..=2 {
                for (a, b) in [(int(2), int(2)), (int(3), int(2))] {
                    let oracle = oracle_moment_polynomial(n, &a, &b, tau, mu).unwrap();
                    assert_eq!(
                        engine(n, tau, &a, &b, mu as usize),
                        oracle,
                        "n={n} tau={tau} mu={mu} a={a} b={b}"
                    );
                }
            }
        }
    }
}

#[test]
fn closed_form_matches_brute_force_at_mu_one() {
    for (a, b) in [(int(1), int(1)), (rat(5, 2), rat(7, 2))] {
        for n in 1..=3 {
            assert_eq!(
                closed_form_mu1(n, &a, &b, &int(1)).unwrap(),
                oracle_moment_polynomial(n, &a, &b, 1, 1).unwrap()
            );
        }
    }
}

#[test]
fn reflection_for_equal_exponents() {
    for n in 1..=4 {
        for mu in 1..=3 {
            let p = engine(n, 1, &rat(5, 2), &rat(5, 2), mu);
            assert_eq!(p.reflect(), p.scale(&sign(n * mu)), "n={n} mu={mu}");
        }
    }
}

#[test]
fn corollary_and_h_identities_hold() {
    let p = OracleParams::new(3, 1, 2, int(2), int(3), int(-1)).unwrap();
    for k in 0..=3 {
        for j in 0..=k {
            assert!(check_corollary(j, k, &p).unwrap(), "j={j} k={k}");
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            assert!(check_h_vanishing(i, j, &p).unwrap(), "i={i} j={j}");
        }
    }
}

#[test]
fn elementary_symmetric_averages() {
    for n in 1..=2 {
        for k in 0..=n {
            assert!(check_w2(k, &int(3), &int(2), 1, n).unwrap(), "n={n} k={k}");
            assert!(
                check_w2(k, &int(3), &rat(5, 2), 2, n).unwrap(),
                "n={n} k={k}"
            );
        }
    }
}
