use std::time::Instant;

use selberg_core::{moment_polynomial, MomentRequest, Rational, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    /// Mean wall time of one full moment computation.
    pub seconds: f64,
    /// `seconds` divided by the previous row's, if any.
    pub ratio: Option<f64>,
}

/// Times `moment_polynomial` for each `n`, averaging over `repeat` runs.
pub fn bench(
    n_list: &[usize],
    mu: usize,
    tau: &Rational,
    a: &Rational,
    b: &Rational,
    repeat: usize,
) -> Result<Vec<BenchRow>> {
    let repeat = repeat.max(1);
    let mut rows: Vec<BenchRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let req = MomentRequest::new(n, tau.clone(), a.clone(), b.clone(), mu)?;
        let start = Instant::now();
        for _ in 0..repeat {
            moment_polynomial(&req)?;
        }
        let seconds = start.elapsed().as_secs_f64() / repeat as f64;
        let ratio = rows.last().map(|prev| seconds / prev.seconds);
        rows.push(BenchRow { n, seconds, ratio });
    }
    Ok(rows)
}

/// Plain-text table with columns `n`, `seconds`, `ratio`.
pub fn render(rows: &[BenchRow]) -> String {
    let mut out = format!("{:>4}  {:>12}  {:>8}\n", "n", "seconds", "ratio");
    for row in rows {
        let ratio = row
            .ratio
            .map_or_else(|| "-".to_string(), |r| format!("{r:.2}"));
        out.push_str(&format!(
            "{:>4}  {:>12.6}  {:>8}\n",
            row.n, row.seconds, ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use selberg_core::arith::int;

    #[test]
    fn one_row_per_n() {
        let rows = bench(&[1, 2, 3], 1, &int(1), &int(2), &int(2), 2).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(rows[0].ratio.is_none());
        assert!(rows[1..].iter().all(|r| r.ratio.is_some()));
        let table = render(&rows);
        assert_eq!(table.lines().count(), 4);
    }
}
