use serde::{Deserialize, Serialize};

use selberg_core::arith::to_fraction_string;
use selberg_core::{MomentResult, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
}

impl From<bool> for Check {
    fn from(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Coeff {
    fn from(r: &Rational) -> Self {
        Coeff {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub endpoint0: Check,
    pub endpoint1: Check,
    pub monic: Check,
}

/// One computed moment polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: usize,
    pub mu: usize,
    pub tau: String,
    pub a: String,
    pub b: String,
    pub coeffs: Vec<Coeff>,
    pub checks: Checks,
}

impl From<&MomentResult> for OutputRecord {
    fn from(result: &MomentResult) -> Self {
        let req = &result.request;
        OutputRecord {
            n: req.n,
            mu: req.mu,
            tau: to_fraction_string(&req.tau),
            a: to_fraction_string(&req.a),
            b: to_fraction_string(&req.b),
            coeffs: result.poly.coeffs().iter().map(Coeff::from).collect(),
            checks: Checks {
                endpoint0: result.endpoint0_holds().into(),
                endpoint1: result.endpoint1_holds().into(),
                monic: result.is_monic().into(),
            },
        }
    }
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// One `degree num/den` line per coefficient.
    pub fn to_plain(&self) -> String {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| format!("{d} {}/{}\n", c.num, c.den))
            .collect()
    }

    pub fn all_checks_pass(&self) -> bool {
        [
            self.checks.endpoint0,
            self.checks.endpoint1,
            self.checks.monic,
        ]
        .iter()
        .all(|c| *c == Check::Pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use selberg_core::arith::{int, rat};
    use selberg_core::{moment_polynomial, MomentRequest};

    fn record(n: usize, tau: i64, a: Rational, b: Rational, mu: usize) -> OutputRecord {
        let req = MomentRequest::new(n, int(tau), a, b, mu).unwrap();
        OutputRecord::from(&moment_polynomial(&req).unwrap())
    }

    #[test]
    fn uniform_single_variable() {
        let r = record(1, 1, int(1), int(1), 1);
        assert_eq!(r.to_plain(), "0 -1/2\n1 1/1\n");
        assert!(r.all_checks_pass());
        assert_eq!(
            r.to_json(),
            r#"{"n":1,"mu":1,"tau":"1/1","a":"1/1","b":"1/1","coeffs":[{"num":"-1","den":"2"},{"num":"1","den":"1"}],"checks":{"endpoint0":"pass","endpoint1":"pass","monic":"pass"}}"#
        );
    }

    #[test]
    fn json_round_trips_byte_for_byte() {
        let r = record(3, 2, rat(5, 2), rat(7, 2), 2);
        let text = r.to_json();
        let back = OutputRecord::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        assert_eq!(r.coeffs.len(), 7);
        assert_eq!(
            r.coeffs.last().unwrap(),
            &Coeff {
                num: "1".into(),
                den: "1".into()
            }
        );
    }
}
