use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flexmove::io::{load_table, load_trace, load_trace_file, write_series};
use tempfile::TempDir;

const BEAM: &str = r#"{"l": 0.305, "b": 0.013, "h": 0.0005, "E": 2.1e11, "m_tip": 0.09}"#;

fn flexmove(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flexmove"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn workdir() -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let beam = dir.path().join("beam.json");
    fs::write(&beam, BEAM).unwrap();
    (dir, beam)
}

#[test]
fn plan_reference_move() {
    let (dir, _) = workdir();
    let out = dir.path().join("plan.csv");
    let o = flexmove(&[
        "plan",
        "--L",
        "0.41",
        "--k",
        "5.78",
        "--n",
        "2",
        "--rate",
        "1500",
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = stdout(&o);
    assert!(summary.contains("t1 = 2.174112563"));
    assert!(summary.contains("p = 2.89"));
    assert!(summary.contains("peak acceleration = 0.5450"));

    let table = load_table(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(table.header, ["t", "s", "v", "a"]);
    assert_eq!(table.rows.len(), 3262);
    assert_eq!(table.rows[0], [0.0, 0.0, 0.0, 0.0]);
    let last = table.rows.last().unwrap();
    assert!((last[1] - 0.41).abs() < 1e-6);
}

#[test]
fn plan_without_out_writes_csv_to_stdout() {
    let o = flexmove(&[
        "plan", "--L", "0.41", "--k", "5.78", "--n", "2", "--rate", "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(stderr(&o).contains("t1 ="));
}

#[test]
fn plan_rejects_resonant_multiple() {
    let o = flexmove(&["plan", "--L", "0.41", "--k", "5.78", "--n", "1"]);
    assert!(!o.status.success());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("resonant multiple"));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn plan_from_beam_matches_direct_frequency() {
    let (dir, beam) = workdir();
    let direct = dir.path().join("direct.csv");
    let from_beam = dir.path().join("beam.csv");
    let base = ["plan", "--L", "0.41", "--n", "2", "--rate", "1500"];
    let o = flexmove(&[&base[..], &["--k", "5.78", "--out", path_str(&direct)]].concat());
    assert!(o.status.success());
    let o = flexmove(
        &[
            &base[..],
            &[
                "--beam",
                path_str(&beam),
                "--mass",
                "0.09",
                "--out",
                path_str(&from_beam),
            ],
        ]
        .concat(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let a = load_table(&fs::read_to_string(direct).unwrap()).unwrap();
    let b = load_table(&fs::read_to_string(from_beam).unwrap()).unwrap();
    assert_eq!(a.rows.len(), b.rows.len());
    let t1a = a.rows.last().unwrap()[0];
    let t1b = b.rows.last().unwrap()[0];
    assert!(((t1a - t1b) / t1a).abs() < 5e-3);
    let peak = |t: &flexmove::io::Table| t.column(3).into_iter().fold(0.0f64, f64::max);
    assert!(((peak(&a) - peak(&b)) / peak(&a)).abs() < 5e-3);
}

#[test]
fn conflicting_frequency_sources() {
    let (_dir, beam) = workdir();
    let o = flexmove(&[
        "plan",
        "--L",
        "0.41",
        "--n",
        "2",
        "--k",
        "5.78",
        "--beam",
        path_str(&beam),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exactly one frequency source"));
}

#[test]
fn simulate_reports_quiescence() {
    let o = flexmove(&[
        "simulate", "--L", "0.41", "--k", "5.78", "--n", "2", "--mass", "0.09",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["quiescent"], true);
    assert!(report["amplitude"].as_f64().unwrap() <= 0.41e-6);
    assert_eq!(report["mode"], "strict");

    let o = flexmove(&[
        "simulate",
        "--L",
        "0.41",
        "--k",
        "5.78",
        "--n",
        "2.5",
        "--exploratory",
    ]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["quiescent"], false);
    assert!(report["amplitude"].as_f64().unwrap() > 1e-3);

    let o = flexmove(&["simulate", "--L", "0.41", "--k", "5.78", "--n", "2.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-integer multiple"));
}

#[test]
fn simulate_writes_traces() {
    let (dir, _) = workdir();
    let rel = dir.path().join("rel.csv");
    let tip = dir.path().join("tip.csv");
    let args = ["simulate", "--L", "0.41", "--k", "5.78", "--n", "2"];
    assert!(flexmove(&[&args[..], &["--out", path_str(&rel)]].concat())
        .status
        .success());
    assert!(
        flexmove(&[&args[..], &["--tip", "--out", path_str(&tip)]].concat())
            .status
            .success()
    );

    let rel = load_table(&fs::read_to_string(rel).unwrap()).unwrap();
    assert_eq!(rel.header, ["t", "x_r", "v_r", "a_r"]);
    assert_eq!(rel.rows.len(), 20_001);
    assert!(rel.rows.last().unwrap()[1].abs() < 1e-8);

    let trace = load_trace_file(&tip, None).unwrap();
    assert_eq!(trace.name, "a_tip");
    assert_eq!(trace.series.values()[0], 0.0);
    assert!((trace.series.rate() - 1500.0).abs() < 1e-6);
}

#[test]
fn tip_trace_round_trips_bit_identically() {
    let (dir, _) = workdir();
    let tip = dir.path().join("tip.csv");
    let o = flexmove(&[
        "simulate",
        "--L",
        "0.41",
        "--k",
        "5.78",
        "--n",
        "3",
        "--tip",
        "--out",
        path_str(&tip),
    ]);
    assert!(o.status.success());
    let original = fs::read_to_string(&tip).unwrap();
    let trace = load_trace(&original).unwrap();
    let mut again = Vec::new();
    flexmove::io::write_timed(&mut again, &trace.name, &trace.times, trace.series.values())
        .unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), original);

    // series written with its own time base also reloads to the same values
    let mut buf = Vec::new();
    write_series(&mut buf, "a_tip", &trace.series).unwrap();
    let reloaded = load_trace(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!(reloaded.series.values(), trace.series.values());
}

#[test]
fn sweep_rows_and_flags() {
    let o = flexmove(&[
        "sweep", "--L", "0.41", "--k", "5.78", "--mass", "0.09", "--n-from", "2", "--n-to", "4",
        "--step", "0.25",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = load_table(&stdout(&o)).unwrap();
    assert_eq!(table.header, ["n", "t1", "residual", "energy", "quiescent"]);
    assert_eq!(table.rows.len(), 9);
    for row in &table.rows {
        let integral = row[0].fract() == 0.0;
        assert_eq!(row[4] == 1.0, integral, "n = {}", row[0]);
    }

    let o = flexmove(&[
        "sweep", "--L", "0.41", "--k", "5.78", "--n-from", "1", "--n-to", "4", "--step", "0.25",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = flexmove(&[
        "sweep", "--L", "0.41", "--k", "5.78", "--n-from", "2", "--n-to", "4",
    ]);
    assert!(stderr(&o).contains("`step`"));
}

fn write_constant(path: &Path, value: f64, rows: usize) {
    let mut text = String::from("t,a\n");
    for i in 0..rows {
        text.push_str(&format!(
            "{},{}\n",
            flexmove::io::format_number(i as f64 / 1500.0),
            value
        ));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn filter_constant_and_tone() {
    let (dir, _) = workdir();
    let input = dir.path().join("flat.csv");
    let out = dir.path().join("flat_f.csv");
    write_constant(&input, 0.25, 500);
    let o = flexmove(&[
        "filter",
        "--input",
        path_str(&input),
        "--order",
        "4",
        "--cutoff-hz",
        "20",
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let filtered = load_trace_file(&out, None).unwrap();
    assert_eq!(filtered.series.len(), 500);
    assert!(filtered
        .series
        .values()
        .iter()
        .all(|v| (v - 0.25).abs() < 1e-12));

    // a 60 Hz tone on top of an offset is stripped by the default 20 Hz design
    let noisy = dir.path().join("noisy.csv");
    let mut text = String::from("t,a\n");
    for i in 0..3000 {
        let t = i as f64 / 1500.0;
        text.push_str(&format!(
            "{t},{}\n",
            1.0 + (std::f64::consts::TAU * 60.0 * t).sin()
        ));
    }
    fs::write(&noisy, text).unwrap();
    let o = flexmove(&["filter", "--input", path_str(&noisy)]);
    assert!(o.status.success());
    let f = load_trace(&stdout(&o)).unwrap();
    assert!(f.series.values()[500..2500]
        .iter()
        .all(|v| (v - 1.0).abs() < 1e-3));
}

#[test]
fn filter_rejects_bad_inputs() {
    let (dir, _) = workdir();
    let input = dir.path().join("flat.csv");
    write_constant(&input, 1.0, 200);
    let o = flexmove(&["filter", "--input", path_str(&input), "--cutoff-hz", "750"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Nyquist"));

    let o = flexmove(&["filter", "--input", path_str(&input), "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let missing = dir.path().join("nope.csv");
    let o = flexmove(&["filter", "--input", path_str(&missing)]);
    assert_eq!(o.status.code(), Some(1));

    let jitter = dir.path().join("jitter.csv");
    fs::write(&jitter, "t,a\n0,1\n1,1\n2.5,1\n3.5,1\n").unwrap();
    let o = flexmove(&["filter", "--input", path_str(&jitter)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-uniform"));
}

#[test]
fn report_table() {
    let (_dir, beam) = workdir();
    let o = flexmove(&["report", "--L", "0.41", "--beam", path_str(&beam)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("not reproduced"));
    assert!(text.contains("5.7801"));

    let o = flexmove(&[
        "report",
        "--L",
        "0.41",
        "--beam",
        path_str(&beam),
        "--csv",
        "--masses",
        "0.02,0.09",
    ]);
    let table = load_table(&stdout(&o)).unwrap();
    assert_eq!(table.rows.len(), 2);
    for row in &table.rows {
        assert!(row[2] <= 0.41e-6);
        assert!(row[3] > 0.0);
    }

    let o = flexmove(&["report", "--L", "0.41", "--k", "5.78"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_precedence() {
    let (dir, _) = workdir();
    let config = dir.path().join("run.json");
    fs::write(
        &config,
        r#"{"L": 0.41, "n": 3, "rate": 100, "beam": "beam.json", "m": 0.09}"#,
    )
    .unwrap();
    let o = flexmove(&["plan", "--config", path_str(&config)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("n = 3"));

    let o = flexmove(&[
        "plan",
        "--config",
        path_str(&config),
        "--n",
        "2",
        "--k",
        "5.78",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("n = 2"));
    assert!(stderr(&o).contains("k = 5.78 rad/s"));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, r#"{"L": 0.41, "speed": 3}"#).unwrap();
    let o = flexmove(&["plan", "--config", path_str(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid JSON"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let (dir, _) = workdir();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = flexmove(&[
            "simulate",
            "--L",
            "0.7",
            "--k",
            "12",
            "--n",
            "4",
            "--out",
            path_str(out),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn validation_failures_have_distinct_diagnostics() {
    let cases: [&[&str]; 7] = [
        &["plan", "--L", "0.41", "--k", "5.78", "--n", "1"],
        &["plan", "--L", "0.41", "--k", "5.78", "--n", "2.5"],
        &["plan", "--L", "0.41", "--k", "5.78"],
        &["plan", "--k", "5.78", "--n", "2"],
        &["plan", "--L", "0.41", "--n", "2"],
        &["plan", "--L", "-1", "--k", "5.78", "--n", "2"],
        &[
            "plan", "--L", "0.41", "--k", "5.78", "--n", "2", "--rate", "0",
        ],
    ];
    let mut messages: Vec<String> = cases
        .iter()
        .map(|args| {
            let o = flexmove(args);
            assert_eq!(o.status.code(), Some(2), "{args:?}");
            stderr(&o)
        })
        .collect();
    messages.sort();
    messages.dedup();
    assert_eq!(messages.len(), cases.len());
}
