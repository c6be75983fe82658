use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclads"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn inv_examples() {
    assert_eq!(stdout(&["inv", "--perm", "3,2,1"]).trim(), "1");
    assert_eq!(stdout(&["inv", "--perm", "1,2,3"]).trim(), "0");
    let reversed = "10,9,8,7,6,5,4,3,2,1";
    assert_eq!(
        stdout(&[
            "inv",
            "--perm",
            reversed,
            "--dv",
            "-1,-3,5,3,1,-1,-3,-5,3,1"
        ])
        .trim(),
        "21"
    );
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(run(&["inv", "--perm", "1,1,2"]).status.code(), Some(2));
    assert_eq!(
        run(&["inv", "--perm", "2,1", "--dv", "2,-2,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["inv", "--perm", "2,1", "--dv", "0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["enum", "--perm", "2,1", "--mode", "lotteries"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn optimal_dv_prints_json() {
    assert_eq!(
        stdout(&["optimal-dv", "--perm", "2,3,1"]).trim(),
        "[2,-1,-1]"
    );
}

#[test]
fn enum_counts() {
    assert_eq!(
        stdout(&["enum", "--perm", "1,2,3", "--mode", "all", "--count"]).trim(),
        "1"
    );
    assert_eq!(
        stdout(&["enum", "--perm", "4,2,6,1,5,3", "--mode", "dvs", "--count"]).trim(),
        "6"
    );
    let lotteries = [
        "enum",
        "--perm",
        "3,2,1,4",
        "--mode",
        "lotteries",
        "--dv",
        "2,0,-2,0",
        "--count",
    ];
    assert_eq!(stdout(&lotteries).trim(), "2");
}

#[test]
fn enum_streams_json_lines() {
    let text = stdout(&[
        "enum",
        "--perm",
        "3,2,1,4",
        "--mode",
        "lotteries",
        "--dv",
        "2,0,-2,0",
    ]);
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    for v in &lines {
        assert_eq!(v["n"], 4);
        assert_eq!(v["word"].as_array().unwrap().len(), 3);
    }
    assert_eq!(
        text,
        stdout(&[
            "enum",
            "--perm",
            "3,2,1,4",
            "--mode",
            "lotteries",
            "--dv",
            "2,0,-2,0"
        ])
    );
}

#[test]
fn permutation_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.json");
    std::fs::write(&path, "[4,2,6,1,5,3]").unwrap();
    let args = [
        "enum",
        "--perm",
        path.to_str().unwrap(),
        "--mode",
        "dvs",
        "--count",
    ];
    assert_eq!(stdout(&args).trim(), "6");
}

#[test]
fn reconfigure_vectors() {
    let base = [
        "reconfigure",
        "dv",
        "--perm",
        "4,2,6,1,5,3",
        "--from",
        "-3,0,3,-3,0,3",
    ];
    let text = stdout(&[&base[..], &["--to", "-3,0,-3,3,0,3"]].concat());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["length"], 1);
    assert_eq!(v["steps"], serde_json::json!([{"contract": [3, 4]}]));

    let text = stdout(&[&base[..], &["--to", "-3,0,3,-3,0,3"]].concat());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["length"], 0);
}

fn first_lottery(dv: &str) -> String {
    stdout(&[
        "enum",
        "--perm",
        "4,2,6,1,5,3",
        "--mode",
        "lotteries",
        "--dv",
        dv,
    ])
    .lines()
    .next()
    .unwrap()
    .to_string()
}

#[test]
fn reconfigure_lotteries() {
    let a = first_lottery("-3,0,3,-3,0,3");
    let b = first_lottery("-3,0,-3,3,0,3");
    let out = run(&["reconfigure", "lottery", "--from", &a, "--to", &b]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unreachable"));

    let text = stdout(&["reconfigure", "lottery", "--from", &a, "--to", &a]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["length"], 0);

    let members = stdout(&[
        "enum",
        "--perm",
        "3,2,1,4",
        "--mode",
        "lotteries",
        "--dv",
        "2,0,-2,0",
    ]);
    let m: Vec<&str> = members.lines().collect();
    let text = stdout(&["reconfigure", "lottery", "--from", m[0], "--to", m[1]]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["length"], 1);
}

#[test]
fn render_examples() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.svg");
    stdout(&[
        "render",
        r#"{"n":3,"word":[]}"#,
        "--out",
        empty.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(&empty).unwrap();
    assert_eq!(svg.matches("<line").count(), 3);

    let seam = dir.path().join("seam.svg");
    stdout(&[
        "render",
        r#"{"n":2,"word":[2]}"#,
        "--out",
        seam.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(&seam).unwrap();
    assert_eq!(svg.matches(r#"class="seam""#).count(), 2);

    let input = dir.path().join("l.json");
    std::fs::write(&input, r#"{"n":5,"word":[3,1,2]}"#).unwrap();
    let from_file = stdout(&["render", input.to_str().unwrap()]);
    let commuted = stdout(&["render", r#"{"n":5,"word":[1,3,2]}"#]);
    assert_eq!(from_file, commuted);

    assert_eq!(
        run(&["render", r#"{"n":2,"word":[3]}"#]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_suites() {
    for (suite, max_n) in [
        ("longest", "8"),
        ("distances", "5"),
        ("remark", "10"),
        ("rotations", "8"),
    ] {
        let text = stdout(&["verify", suite, "--max-n", max_n]);
        assert_eq!(text.lines().last(), Some("PASS"), "{suite}");
    }
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclads"))
        .args(["verify", "enumeration", "--max-n", "4"])
        .env("CYCLADS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
