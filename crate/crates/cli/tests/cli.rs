use std::process::{Command, Output};

use selberg_cli::output::OutputRecord;

fn selberg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selberg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_golden_plain() {
    let o = selberg(&[
        "compute", "--n", "5", "--tau", "5", "--alpha", "2", "--beta", "2", "--mu", "2",
        "--format", "plain",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert_eq!(text.lines().next(), Some("0 23/5437500"));
    assert_eq!(text.lines().last(), Some("10 1/1"));
}

#[test]
fn compute_json_round_trips() {
    let o = selberg(&[
        "compute", "--n", "2", "--tau", "1/2", "--alpha", "2.5", "--beta", "3", "--mu", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let record = OutputRecord::from_json(text.trim_end()).unwrap();
    assert_eq!(record.to_json(), text.trim_end());
    assert_eq!(record.a, "5/2");
    assert_eq!(record.coeffs.len(), 7);
    assert!(record.all_checks_pass());
}

#[test]
fn uniform_first_moment() {
    let o = selberg(&[
        "compute", "--n", "1", "--tau", "1", "--alpha", "1", "--beta", "1", "--mu", "1",
        "--format", "plain",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 -1/2\n1 1/1\n");
}

#[test]
fn singular_parameters_exit_2() {
    let o = selberg(&[
        "compute", "--n", "2", "--tau", "1", "--alpha", "1", "--beta", "1", "--mu", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(a-1; tau)_n"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(selberg(&["compute", "--n", "2"]).status.code(), Some(1));
    assert_eq!(
        selberg(&["compute", "--n", "2", "--tau", "x", "--alpha", "1", "--beta", "1", "--mu", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        selberg(&["compute", "--n", "0", "--tau", "1", "--alpha", "1", "--beta", "1", "--mu", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        selberg(&["verify", "--suite", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(selberg(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_suite_reports() {
    let o = selberg(&[
        "verify", "--suite", "matrices", "--max-n", "4", "--seed", "9",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.starts_with("pass matrices: 240 exact checks"),
        "{text}"
    );
    assert_eq!(
        text,
        stdout(&selberg(&[
            "verify", "--suite", "matrices", "--max-n", "4", "--seed", "9"
        ]))
    );
    let o = selberg(&["verify", "--suite", "three-term", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("note: outside"));
}

#[test]
fn bench_table_shape() {
    let o = selberg(&["bench", "--n-list", "2,3,4", "--mu", "2", "--repeat", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].contains("seconds"));
    assert!(rows[1].trim_start().starts_with('2'));
}
