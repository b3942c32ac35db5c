//! End-to-end tests of the command-line interface: output formats,
//! determinism, and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcopy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn limit_prints_the_bound() {
    let output = run(&["limit", "--beta", "1"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "1.3862943611198906\n");
    let scaled = run(&["limit", "--beta", "2"]);
    assert_eq!(stdout(&scaled), "0.6931471805599453\n");
}

#[test]
fn report_prints_every_field() {
    let output = run(&["report", "--beta", "1", "--delta", "1"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for field in [
        "beta = 1",
        "delta = 1",
        "b = 0.2689414213699951",
        "info_bits = 0.16005846201683",
        "redundancy_n = 6.24771716158",
        "avg_energy_before = 0.2689414213699951",
        "avg_energy_after = 0.5",
        "w_per_useful_bit = 1.44358864703",
    ] {
        assert!(text.contains(field), "missing {field:?} in:\n{text}");
    }
}

#[test]
fn copy_prints_reduced_states_and_joint() {
    let output = run(&["copy", "--p0", "0.7", "--b", "0.1"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("reduced_a = [0.7, 0.3"), "{text}");
    assert!(text.contains("reduced_b = [0.66, 0.34"), "{text}");
    assert!(text.contains("joint_diagonal = [0.63"), "{text}");
    assert!(text.contains("joint =\n[0.63, 0, 0, 0]"), "{text}");
}

#[test]
fn channel_reports_zero_information_at_maximal_noise() {
    let output = run(&["channel", "--b", "0.5"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("info_bits = 0\n"), "{text}");
    assert!(text.contains("joint = [[0.25, 0.25], [0.25, 0.25]]"), "{text}");

    // Error rates above 1/2 are fine for the bare channel view.
    let negated = run(&["channel", "--b", "0.7", "--p0", "0.6"]);
    assert_eq!(negated.status.code(), Some(0));
}

#[test]
fn sweep_csv_is_deterministic_and_well_formed() {
    let args = [
        "sweep",
        "--beta",
        "1",
        "--delta-min",
        "0.01",
        "--delta-max",
        "10",
        "--steps",
        "50",
        "--log",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "CSV output must be byte-identical");

    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("delta,b,info_bits,redundancy_n,w"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|row| row.split(',').count() == 5));
    assert!(!text.ends_with(",\n"));
    assert!(text.ends_with('\n'));
}

#[test]
fn sweep_json_encodes_the_same_values_as_csv() {
    let base = [
        "sweep", "--beta", "2", "--delta-min", "0.5", "--delta-max", "5", "--steps", "7",
    ];
    let csv = stdout(&run(&base));
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let json_text = stdout(&run(&json_args));

    let document: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    assert_eq!(document["params"]["beta"], 2.0);
    assert_eq!(document["params"]["spacing"], "linear");
    let rows = document["rows"].as_array().unwrap();

    let csv_rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|line| line.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), csv_rows.len());
    for (json_row, csv_row) in rows.iter().zip(&csv_rows) {
        let columns = ["delta", "b", "info_bits", "redundancy_n", "w"];
        for (k, column) in columns.iter().enumerate() {
            let from_json = json_row[*column].as_f64().unwrap();
            assert_eq!(from_json, csv_row[k], "column {column} differs");
        }
    }
}

#[test]
fn sweep_out_writes_a_file() {
    let dir = std::env::temp_dir().join("qcopy-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let output = run(&[
        "sweep",
        "--beta",
        "1",
        "--delta-min",
        "1",
        "--delta-max",
        "2",
        "--steps",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("delta,b,info_bits,redundancy_n,w\n"));
    assert_eq!(written.lines().count(), 4);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn mc_counts_are_reproducible_across_invocations() {
    let args = ["mc", "--b", "0.1", "--trials", "200000", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("trials = 200000"), "{text}");
    assert!(text.contains("empirical_info_bits = 0.5"), "{text}");

    let other_seed = run(&["mc", "--b", "0.1", "--trials", "200000", "--seed", "8"]);
    assert_ne!(first.stdout, other_seed.stdout);
}

#[test]
fn mc_energy_reports_closed_form_and_estimate() {
    let output = run(&[
        "mc-energy",
        "--beta",
        "1",
        "--delta",
        "1",
        "--trials",
        "100000",
        "--seed",
        "3",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("closed_form_w = 1.44358864703"), "{text}");
    let empirical: f64 = text
        .lines()
        .find_map(|line| line.strip_prefix("empirical_w = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((empirical - 1.443588647).abs() < 0.05, "{empirical}");
}

#[test]
fn domain_errors_exit_2_with_one_line_diagnostics() {
    let cases: &[&[&str]] = &[
        &["limit", "--beta", "0"],
        &["limit", "--beta", "-3"],
        &["report", "--beta", "1", "--delta", "-1"],
        &["report", "--beta", "1", "--delta", "0"],
        &["sweep", "--beta", "1", "--delta-min", "0", "--delta-max", "1", "--steps", "5"],
        &["sweep", "--beta", "1", "--delta-min", "2", "--delta-max", "1", "--steps", "5"],
        &["sweep", "--beta", "1", "--delta-min", "1", "--delta-max", "2", "--steps", "1"],
        &["mc", "--b", "1.5", "--trials", "10", "--seed", "1"],
        &["mc", "--b", "0.1", "--trials", "0", "--seed", "1"],
        &["copy", "--p0", "1.3", "--b", "0.1"],
    ];
    for args in cases {
        let output = run(args);
        assert_eq!(output.status.code(), Some(2), "args: {args:?}");
        let diagnostic = stderr(&output);
        assert_eq!(diagnostic.trim_end().lines().count(), 1, "args: {args:?}: {diagnostic}");
        assert!(stdout(&output).is_empty(), "args: {args:?}");
    }
}

#[test]
fn argument_errors_exit_2() {
    for args in [&["definitely-not-a-subcommand"][..], &["sweep", "--beta", "1"][..]] {
        let output = run(args);
        assert_eq!(output.status.code(), Some(2), "args: {args:?}");
        assert!(!stderr(&output).is_empty());
    }
}

#[test]
fn help_exits_0() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("sweep"));
}
