//! End-to-end runs of the compiled binary: exit codes, output shapes,
//! and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mark_cli::report::{OrderReport, StateReport, TimelineReport, TreeReport};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mark"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn state_table_succeeds() {
    let out = run(&[
        "state",
        fixture("state_mid.csv").to_str().unwrap(),
        "--percent",
        "--ordering",
        "listed",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("ark"));
    assert!(text.contains("mark (normalized)"));
    assert!(text.contains("shannon"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let timeline = fixture("search_timeline.csv");
    let args = [
        "timeline",
        timeline.to_str().unwrap(),
        "--percent",
        "--ordering",
        "listed",
        "--normalized",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());

    let panel = fixture("panel.json");
    let json_args = ["state", panel.to_str().unwrap(), "--format", "json"];
    let a = run(&json_args);
    let b = run(&json_args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn state_json_round_trips_exactly() {
    let out = run(&[
        "state",
        fixture("panel.json").to_str().unwrap(),
        "--alpha",
        "0.5,2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let parsed: StateReport = serde_json::from_str(&text).expect("parses back");
    let re = serde_json::to_string(&parsed).unwrap();
    let reparsed: StateReport = serde_json::from_str(&re).unwrap();
    assert_eq!(parsed, reparsed);

    // The panel arrangement applied to the panel's own probabilities.
    assert_eq!(
        parsed.labels,
        ["A1", "A2", "A4", "A7", "A10", "A6", "A3", "A5", "A8", "A9"]
    );
    assert_eq!(parsed.entropy.renyi.len(), 2);
}

#[test]
fn timeline_json_and_csv_shapes() {
    let timeline = fixture("search_timeline.csv");
    let base = [
        "timeline",
        timeline.to_str().unwrap(),
        "--percent",
        "--ordering",
        "listed",
        "--normalized",
    ];
    let json_out = run(&[&base[..], &["--format", "json"]].concat());
    assert_eq!(code(&json_out), 0);
    let report: TimelineReport = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(report.states.len(), 13);
    assert_eq!(report.signature.len(), 13);
    assert!((report.signature[0].mark - 1.0).abs() < 1e-9);
    assert_eq!(report.signature[12].mark, 0.0);
    // Full span from 1 to 0, so the overall integral telescopes to the
    // total resource spend.
    assert!((report.intractability.overall.unwrap() - 12.0).abs() < 1e-9);

    let csv_out = run(&[&base[..], &["--format", "csv"]].concat());
    assert_eq!(code(&csv_out), 0);
    let text = stdout(&csv_out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("resource,mark,shannon_normalized"));
    assert_eq!(lines.count(), 13);
}

#[test]
fn tree_reports_nodes_and_generations() {
    let out = run(&[
        "tree",
        fixture("tree_leaves.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: TreeReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.depth, 2);
    assert_eq!(report.nodes.len(), 11);
    assert_eq!(report.generations.len(), 2);
    assert!((report.generations[0].score.ark() - 0.525).abs() < 1e-12);
    assert!((report.generations[1].score.ark() - 0.6266666666666667).abs() < 1e-12);

    // The partially specified tree loses its deep generation but keeps
    // scoring node challenges, and says so on stderr.
    let out = run(&[
        "tree",
        fixture("tree_main.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: TreeReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.generations.len(), 1);
    let a = report.nodes.iter().find(|n| n.label == "A").unwrap();
    assert!((a.challenge.unwrap().ark() - 0.8333333333333334).abs() < 1e-12);
    assert!(String::from_utf8_lossy(&out.stderr).contains("generation 2"));
}

#[test]
fn order_csv_and_json_agree() {
    let from_csv = run(&[
        "order",
        fixture("panel.csv").to_str().unwrap(),
        "--percent",
        "--format",
        "json",
    ]);
    let from_json = run(&[
        "order",
        fixture("panel.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&from_csv), 0);
    assert_eq!(code(&from_json), 0);
    let a: OrderReport = serde_json::from_str(&stdout(&from_csv)).unwrap();
    let b: OrderReport = serde_json::from_str(&stdout(&from_json)).unwrap();
    let labels: Vec<&str> = a.candidates.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(
        labels,
        ["A1", "A2", "A4", "A7", "A10", "A6", "A3", "A5", "A8", "A9"]
    );
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "state",
        fixture("panel.json").to_str().unwrap(),
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let _: StateReport = serde_json::from_str(&text).unwrap();
}

#[test]
fn input_problems_exit_2() {
    let cases: Vec<Vec<String>> = vec![
        // Missing file.
        vec![
            "state".into(),
            fixture("missing.csv").display().to_string(),
            "--ordering".into(),
            "listed".into(),
        ],
        // Probabilities sum to 100, not 1, without --percent.
        vec![
            "state".into(),
            fixture("state_mid.csv").display().to_string(),
            "--ordering".into(),
            "listed".into(),
        ],
        // Arrangement never guessed.
        vec![
            "state".into(),
            fixture("state_mid.csv").display().to_string(),
            "--percent".into(),
        ],
        // Composite needs a rank panel, which a state CSV cannot carry.
        vec![
            "state".into(),
            fixture("state_mid.csv").display().to_string(),
            "--percent".into(),
            "--ordering".into(),
            "composite".into(),
        ],
        // A density has no default window.
        vec![
            "state".into(),
            fixture("density_uniform.json").display().to_string(),
        ],
        // Entropy base must exceed 1.
        vec![
            "state".into(),
            fixture("panel.json").display().to_string(),
            "--log-base".into(),
            "1".into(),
        ],
        // Window bounds come as a pair.
        vec![
            "state".into(),
            fixture("panel.json").display().to_string(),
            "--ioi".into(),
            "2".into(),
        ],
        // Trees cannot live in CSV.
        vec!["tree".into(), fixture("panel.csv").display().to_string()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let out = run(&refs);
        assert_eq!(
            code(&out),
            2,
            "args {refs:?} gave {} (stderr: {})",
            code(&out),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty(), "args {refs:?} said nothing");
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["state"]);
    assert_eq!(code(&out), 2);
    let out = run(&[
        "state",
        fixture("state_mid.csv").to_str().unwrap(),
        "--ordering",
        "alphabetical",
    ]);
    assert_eq!(code(&out), 2);
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_files_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();

    let bad_number = dir.path().join("bad.csv");
    std::fs::write(&bad_number, "a,b\n0.5,oops\n").unwrap();
    let out = run(&[
        "state",
        bad_number.to_str().unwrap(),
        "--ordering",
        "listed",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("oops"));

    let bad_header = dir.path().join("bad_timeline.csv");
    std::fs::write(&bad_header, "name,cost,a,b\nx,1,0.5,0.5\ny,2,0.6,0.4\n").unwrap();
    let out = run(&[
        "timeline",
        bad_header.to_str().unwrap(),
        "--ordering",
        "listed",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("state,resource"));

    let unknown_field = dir.path().join("typo.json");
    std::fs::write(&unknown_field, r#"{"probz": [0.5, 0.5]}"#).unwrap();
    let out = run(&[
        "state",
        unknown_field.to_str().unwrap(),
        "--ordering",
        "listed",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn config_block_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("configured.json");
    std::fs::write(
        &path,
        r#"{
            "candidates": ["a", "b", "c", "d"],
            "probs": [0.4, 0.3, 0.2, 0.1],
            "config": { "ordering": "listed", "ioi": 1, "iof": 2 }
        }"#,
    )
    .unwrap();

    // No --ordering on the command line: the config block covers it.
    let out = run(&["state", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: StateReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.window.ioi(), 1.0);
    assert_eq!(report.window.iof(), 2.0);
    // ioi == iof degenerates to a single width; the flag overrides config.
    let out = run(&[
        "state",
        path.to_str().unwrap(),
        "--ioi",
        "2",
        "--iof",
        "2",
        "--format",
        "json",
    ]);
    let report: StateReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.window.ioi(), 2.0);
    // Best two-column run of [0.4, 0.3, 0.2, 0.1] is the front pair.
    assert!((report.score.ark() - 0.7).abs() < 1e-12);
}
