use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gcflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcflag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gcflag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn seed_file(name: &str, d: [&str; 5]) -> String {
    let cells = ["2,2", "1,3", "2,3", "3,3", "3,4"];
    let entries: serde_json::Map<String, Value> = cells
        .iter()
        .zip(d)
        .map(|(c, v)| (c.to_string(), Value::String(v.to_string())))
        .collect();
    let path = scratch(name);
    let json = serde_json::json!({"n": 7, "m": 2, "d": entries});
    std::fs::write(&path, json.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn fl3_potential_display() {
    let out = gcflag(&["potential", "--n", "3", "--t", "1/2"]);
    assert_eq!(code(&out), 0);
    let first = stdout(&out).lines().next().unwrap().to_string();
    assert_eq!(
        first,
        "W = (y_{1,2}/y_{1,1} + y_{1,1}/y_{2,1} + y_{1,2} + 1/y_{2,1})T^{1-t} + (1/y_{1,2} + y_{2,1})T^{1+t}"
    );
}

#[test]
fn potential_json_is_canonical() {
    let out = gcflag(&[
        "potential",
        "--n",
        "5",
        "--m",
        "2",
        "--t",
        "1/3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
}

#[test]
fn fl6_exponent_groups() {
    let out = gcflag(&["potential", "--n", "6", "--m", "2", "--t", "1/3"]);
    let numeric = stdout(&out).lines().nth(1).unwrap().to_string();
    let exps: Vec<&str> = numeric
        .split("T^{")
        .skip(1)
        .map(|s| s.split('}').next().unwrap())
        .collect();
    assert_eq!(exps, ["2/3", "1", "4/3"]);
}

#[test]
fn bulk_file_deforms_the_potential() {
    let path = scratch("bulk.json");
    let bulk = serde_json::json!({"c_hor": {}, "c_ver": {"1": {"cap": [4, 1], "terms": [[0, 1, 1, 1], [1, 1, 1, 1]]}}});
    std::fs::write(&path, bulk.to_string()).unwrap();
    let out = gcflag(&[
        "potential",
        "--n",
        "3",
        "--t",
        "1/2",
        "--bulk",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).lines().any(|l| l.starts_with("W^b = ")));
}

#[test]
fn fl7_seed_pair() {
    let rejected = gcflag(&[
        "slt",
        "--n",
        "7",
        "--m",
        "2",
        "--seed",
        &seed_file("s1.json", ["-1", "1", "1", "1", "1"]),
    ]);
    assert_eq!(code(&rejected), 1);
    let msg = stdout(&rejected);
    assert!(
        msg.contains("equation (1,4)") && msg.contains("component (1,5)"),
        "{msg}"
    );

    // every prefix generates; the failure is on the top diagonal
    let other = gcflag(&[
        "slt",
        "--n",
        "7",
        "--m",
        "2",
        "--seed",
        &seed_file("s2.json", ["-1", "1", "1", "-1", "1"]),
    ]);
    assert_eq!(code(&other), 1);
    assert!(stdout(&other).contains("top diagonal"));
}

#[test]
fn zero_seed_entry_is_a_usage_error() {
    let out = gcflag(&[
        "slt",
        "--n",
        "7",
        "--m",
        "2",
        "--seed",
        &seed_file("s0.json", ["-1", "0", "1", "1", "1"]),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn slt_grid_passes() {
    let out = gcflag(&["grid", "--n", "4..8", "--stage", "slt", "--jobs", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().count(), 9);
    assert!(stdout(&out).lines().all(|l| l.contains(" pass ")));
}

#[test]
fn certify_verify_and_tamper() {
    let path = scratch("cert62.json");
    let p = path.to_str().unwrap();
    let out = gcflag(&[
        "certify", "--n", "6", "--m", "2", "--t", "1/2", "--cap", "3", "--out", p,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&gcflag(&["verify", p])), 0);

    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // replace y_{3,2} by y_{3,2}(1 + T)
    let y = cert["point"]["3,2"].clone();
    let mut series = novikov::Series::from_json(&y).unwrap();
    let bump = novikov::Series::from_terms(
        [
            (novikov::q(0), novikov::q(1)),
            (novikov::q(1), novikov::q(1)),
        ],
        novikov::q(3),
    );
    series = &series * &bump;
    cert["point"]["3,2"] = series.to_json();
    let tampered = scratch("cert62-tampered.json");
    std::fs::write(&tampered, cert.to_string()).unwrap();
    assert_eq!(code(&gcflag(&["verify", tampered.to_str().unwrap()])), 1);

    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\"n\": 6}").unwrap();
    assert_eq!(code(&gcflag(&["verify", broken.to_str().unwrap()])), 2);
    assert_eq!(code(&gcflag(&["verify", "/nonexistent/cert.json"])), 2);
}

#[test]
fn certify_fl3_route() {
    let out = gcflag(&[
        "certify", "--n", "3", "--t", "1/4", "--cap", "3", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let cert = lift::Certificate::from_json(&serde_json::from_str(&stdout(&out)).unwrap()).unwrap();
    let y11 = &cert.point[&gcdiagram::Cell::new(1, 1)];
    assert_eq!(y11.coeff(&novikov::q(0)), novikov::q(-1));
    assert_eq!(y11.coeff(&novikov::qf(1, 2)), novikov::qf(-1, 2));
    assert!(cert.report.all_pass());
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(
        code(&gcflag(&["certify", "--n", "5", "--m", "3", "--t", "1/2"])),
        2
    );
    assert_eq!(
        code(&gcflag(&["certify", "--n", "5", "--m", "2", "--t", "1"])),
        2
    );
    assert_eq!(
        code(&gcflag(&["certify", "--n", "5", "--m", "2", "--t", "0.5"])),
        2
    );
    assert_eq!(code(&gcflag(&["diagram", "--n", "2"])), 2);
}

#[test]
fn diagrams_are_deterministic() {
    let a = gcflag(&["diagram", "--n", "3", "--format", "svg"]);
    let b = gcflag(&["diagram", "--n", "3", "--format", "svg"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert_eq!(svg.matches(r#"class="segment-marker""#).count(), 1);
    assert!(svg.contains(">I</text>"));
    let text = stdout(&gcflag(&["diagram", "--n", "7", "--format", "text"]));
    assert!(text.contains("segment I_2") && text.contains("segment I_3"));
}
