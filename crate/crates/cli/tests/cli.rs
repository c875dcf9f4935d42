use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esebound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LN_FILE: &str = r#"
name = "LN rod"

[geometry]
kind = "rod"
length_m = 0.094
diameter_m = 0.016

[resonance]
frequency_hz = 35568.0
bandwidth_hz = 0.084

[power]
efficiency = 1e-8
"#;

fn temp_file(body: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("emitter.toml");
    fs::write(&path, body).unwrap();
    let p = path.to_str().unwrap().to_string();
    (dir, p)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn eval_ln_file_gives_fom() {
    let (_dir, path) = temp_file(LN_FILE);
    let o = run(&["eval", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let fom = json(&o)["fom"].as_f64().unwrap();
    assert!((fom / 0.55 - 1.0).abs() < 0.05, "{fom}");
}

#[test]
fn eval_flags_excess_over_bound() {
    let body = LN_FILE.replace("efficiency = 1e-8", "efficiency = 1e-6");
    let (_dir, path) = temp_file(&body);
    let o = run(&["eval", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exceeds CHL efficiency bound"));
}

#[test]
fn eval_clips_wide_band_emitter() {
    let body = r#"
name = "wide"
[geometry]
kind = "sphere"
radius_m = 1.0
[resonance]
frequency_hz = 1e8
bandwidth_hz = 5e7
[power]
efficiency = 0.9
"#;
    let (_dir, path) = temp_file(body);
    let o = run(&["eval", &path, "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["efficiency_bound"].as_f64(), Some(1.0));
    assert!(v["flags"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f == "efficiency bound clipped at 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate"]).status.code(), Some(0));
    assert_eq!(run(&["tables", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["eval", "/nonexistent/emitter.toml"]).status.code(),
        Some(2)
    );
    let (_dir, path) = temp_file("name = \"x\"\n[geometry]\nkind = \"cone\"\n");
    assert_eq!(run(&["eval", &path]).status.code(), Some(2));
    assert_eq!(
        run(&["atomic", "Xe", "6", "1", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["atomic", "Cs", "6", "7", "1.5"]).status.code(),
        Some(2)
    );
    let bad_range = [
        "sweep", "--param", "radius", "--from", "10", "--to", "1", "--steps", "3",
    ];
    let o = run(&[
        &bad_range[..],
        &["--frequency-hz", "76", "--bandwidth-hz", "4"],
    ]
    .concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("range"));
}

#[test]
fn machine_output_is_deterministic() {
    for args in [
        &["tables", "1", "--format", "csv"][..],
        &["tables", "3", "--format", "json"],
        &["validate", "--json"],
        &[
            "sweep",
            "--param",
            "frequency",
            "--from",
            "10",
            "--to",
            "1e4",
            "--steps",
            "25",
            "--log",
            "--bandwidth-hz",
            "1",
            "--radius-m",
            "100",
            "--format",
            "csv",
        ],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn table1_csv_contract() {
    let o = run(&["tables", "1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("table,label,column,kind,computed,printed,rel_deviation,flags")
    );
    assert!(text.contains("1,VLF,efficiency_bound,computed,1,1,0,"));
}

#[test]
fn alternate_bandwidth_moves_elf_bound() {
    let get = |interp: &str| {
        let v = json(&run(&[
            "tables",
            "1",
            "--format",
            "json",
            "--delta-f-interpretation",
            interp,
        ]));
        let row = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["label"] == "ELF")
            .unwrap()
            .clone();
        let cell = row["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["column"] == "efficiency_bound")
            .unwrap()
            .clone();
        cell["value"].as_f64().unwrap()
    };
    let primary = get("primary");
    let alternate = get("alternate");
    assert!((primary / alternate - 2.0).abs() < 1e-12);
    assert!((alternate / 1.5e-4 - 1.0).abs() < 0.05);
}

#[test]
fn table2_rows() {
    let v = json(&run(&["tables", "2", "--format", "json"]));
    let labels: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(labels.len(), 4);
    for (key, want) in [("ELF", 0.0064), ("VLF", 0.048), ("LN", 0.55)] {
        let row = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["label"].as_str().unwrap().starts_with(key))
            .unwrap();
        let fom = row["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["column"] == "fom")
            .unwrap();
        assert!(
            (fom["value"].as_f64().unwrap() / want - 1.0).abs() < 0.05,
            "{key}"
        );
        assert!(fom["rel_deviation"].is_number());
    }
}

#[test]
fn atomic_examples() {
    let v = json(&run(&["atomic", "Cs", "6", "1", "1.5", "--format", "json"]));
    assert!((v["chu_radius_bohr"].as_f64().unwrap() / 8.42 - 1.0).abs() < 0.05);
    let tau_ns = v["bounds"]["lifetime_bound"].as_f64().unwrap() * 1e9;
    assert!((tau_ns / 6.38 - 1.0).abs() < 0.05, "{tau_ns}");

    let v = json(&run(&[
        "atomic", "H", "2", "1", "0.5", "--radius", "5.477", "--format", "json",
    ]));
    assert_eq!(v["radius_source"], "given");
    assert!((v["bounds"]["lifetime_bound"].as_f64().unwrap() * 1e9 - 0.0096).abs() < 5e-5);
    assert!((v["bounds"]["dipole_bound"].as_f64().unwrap() - 9.61).abs() < 0.01);

    let v = json(&run(&["atomic", "H", "1", "0", "0.5", "--format", "json"]));
    assert!((v["chu_radius_bohr"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn a_mode_doubles_einstein_a_only() {
    let get = |mode: &str| {
        json(&run(&[
            "atomic", "H", "2", "1", "0.5", "--radius", "5.477", "--format", "json", "--a-mode",
            mode,
        ]))
    };
    let std = get("standard");
    let doubled = get("paper_factor2");
    let a = |v: &serde_json::Value| v["bounds"]["einstein_a_at_bound"].as_f64().unwrap();
    assert!((a(&doubled) / a(&std) - 2.0).abs() < 1e-12);
    assert_eq!(
        std["bounds"]["lifetime_bound"],
        doubled["bounds"]["lifetime_bound"]
    );
}

#[test]
fn sweep_contract() {
    let o = run(&[
        "sweep",
        "--param",
        "radius",
        "--from",
        "1",
        "--to",
        "1e4",
        "--steps",
        "2",
        "--frequency-hz",
        "76",
        "--bandwidth-hz",
        "4",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("frequency_hz,bandwidth_hz,radius_m"));

    let o = run(&[
        "sweep",
        "--param",
        "radius",
        "--from",
        "1",
        "--to",
        "1e4",
        "--steps",
        "50",
        "--log",
        "--frequency-hz",
        "76",
        "--bandwidth-hz",
        "4",
        "--format",
        "json",
    ]);
    let bounds: Vec<f64> = json(&o)
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["efficiency_bound"].as_f64().unwrap())
        .collect();
    assert!(bounds.windows(2).all(|w| w[1] >= w[0]));
}
