use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn cmk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmk"))
        .args(args)
        .env_remove("CMK_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn k1() -> String {
    fixture("k1.json").display().to_string()
}

fn read_json(p: &PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let o = cmk(&["validate", &k1()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("valid:"));

    let dir = TempDir::new().unwrap();
    let mut file: Value = read_json(&fixture("k1.json"));
    let crit = file["critical"].as_array_mut().unwrap();
    crit.retain(|c| c != &serde_json::json!(["F"]));
    let no_f = dir.path().join("no_f.json");
    fs::write(&no_f, file.to_string()).unwrap();
    let o = cmk(&["validate", no_f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("clause (ii)"), "{}", stdout(&o));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"vertices\": [\"A\",\n").unwrap();
    let o = cmk(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let o = cmk(&["validate", "/nonexistent/system.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn morse_writes_dot_and_json() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("g.dot");
    let json = dir.path().join("g.json");
    let o = cmk(&[
        "morse",
        &k1(),
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("4 Morse sets"));
    let dot = fs::read_to_string(&dot).unwrap();
    assert_eq!(dot.matches("->").count(), 3);
    let v = read_json(&json);
    assert_eq!(v["manifest"]["command"], "morse");
    let mut polys: Vec<&str> = v["graph"]["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["poincare"].as_str().unwrap())
        .collect();
    polys.sort();
    assert_eq!(polys, ["1", "1+t", "t", "t"]);
}

#[test]
fn morse_on_user_set_and_subcomplex() {
    let o = cmk(&["morse", &k1(), "--set", "B,F;F"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("1 Morse sets"));

    let o = cmk(&["morse", &k1(), "--set", "DE,D"]);
    assert_eq!(o.status.code(), Some(1));

    let o = cmk(&[
        "morse",
        fixture("hexagon_cls.json").to_str().unwrap(),
        "--field",
        "rational",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("P(t)=t^2"));
}

#[test]
fn index_reports_and_diagnoses() {
    let o = cmk(&["index", &k1(), "--set", "BF"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("Exit={B,F}, P(t)=t\n"),
        "{}",
        stdout(&o)
    );

    let o = cmk(&["index", &k1(), "--set", "DE,D"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("CD"), "{}", stderr(&o));

    let o = cmk(&["index", &k1(), "--set", "XY"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cmk(&[
        "index",
        fixture("hexagon.json").to_str().unwrap(),
        "--set",
        "S",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(17 simplices)"));
    assert!(out.contains("P(t)=t\n"));
    assert!(out.contains("Betti=(0,1,0)"));
}

#[test]
fn check_geometry_exit_codes() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("r.json");
    let o = cmk(&[
        "check-geometry",
        &k1(),
        "--set",
        "BF",
        "--samples",
        "1000",
        "--seed",
        "1",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("all properties pass\n"));
    let v = read_json(&json);
    assert_eq!(v["manifest"]["seed"], 1);
    assert!(v["report"]["properties"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["passed"] == true));

    let o = cmk(&["check-geometry", &k1(), "--set", "BF", "--delta", "1/4"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cmk(&["check-geometry", &k1(), "--set", "BF", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 samples"));

    let o = cmk(&["check-geometry", &k1(), "--set", "DE;D"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lift_and_project_round_trip() {
    let dir = TempDir::new().unwrap();
    let orbit = dir.path().join("orbit.json");
    let o = cmk(&[
        "lift",
        &k1(),
        "--solution",
        "(A,D,C)*",
        "--out",
        orbit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("on 3 distinct consecutive pairs"));
    let v = read_json(&orbit);
    assert_eq!(v["manifest"]["command"], "lift");
    assert_eq!(v["points"]["left"].as_array().unwrap().len(), 3);

    let o = cmk(&["project", &k1(), "--orbit-file", orbit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(A;AD;D;CD;C;AC)*\n");

    let o = cmk(&["lift", &k1(), "--solution", "(DE)*"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("on 1 distinct consecutive pairs"));

    let o = cmk(&["lift", &k1(), "--solution", "A;E"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn project_rejects_non_orbit() {
    let dir = TempDir::new().unwrap();
    let orbit = dir.path().join("orbit.json");
    fs::write(
        &orbit,
        r#"{"points": {"middle": [{"coords": {"A": "1"}}, {"coords": {"E": "1"}}]}}"#,
    )
    .unwrap();
    let o = cmk(&["project", &k1(), "--orbit-file", orbit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("step 0"), "{}", stderr(&o));

    fs::write(
        &orbit,
        r#"{"points": {"middle": [{"coords": {"A": "1/2"}}]}}"#,
    )
    .unwrap();
    let o = cmk(&["project", &k1(), "--orbit-file", orbit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproducible_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = cmk(&[
            "--reproducible",
            "check-geometry",
            &k1(),
            "--set",
            "A;AD;D;CD;C;AC",
            "--samples",
            "200",
            "--seed",
            "9",
            "--json",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        (
            stdout(&o),
            fs::read_to_string(&out).unwrap().replace(name, ""),
        )
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(a, b);
    assert!(!a.1.contains("timestamp"));

    let out = dir.path().join("c.json");
    cmk(&["morse", &k1(), "--json", out.to_str().unwrap()]);
    assert!(read_json(&out)["manifest"]["timestamp"].is_u64());
}

#[test]
fn thread_count_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_cmk"))
            .args(["check-geometry", &k1(), "--set", "DE", "--samples", "100"])
            .env("CMK_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("many").status.code(), Some(2));
}
