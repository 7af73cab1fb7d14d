use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").canonicalize().unwrap()
}

fn codeg() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_codeg"));
    c.env_remove("CODEG_DATA");
    c
}

fn run(args: &[&str]) -> Output {
    codeg().arg("--data").arg(data_dir()).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn decimals(text: &str) -> Vec<u64> {
    text.lines().filter_map(|l| l.split_whitespace().last()?.parse().ok()).collect()
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for e in fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let dest = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &dest);
        } else {
            fs::copy(e.path(), dest).unwrap();
        }
    }
}

#[test]
fn cod_prints_dot_notation_and_decimal() {
    let o = run(&["cod", "U3_3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(decimals(&out), vec![1008, 864, 432, 288, 224, 216, 189, 1]);
    assert!(out.lines().next().unwrap().starts_with("2^4.3^2.7"));
}

#[test]
fn cod_as_json() {
    let o = run(&["--format", "json", "cod", "U4_2"]);
    assert_eq!(code(&o), 0);
    let v: Vec<String> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 13);
    assert_eq!(v[0], "2^6.3^4");
}

#[test]
fn cod_of_a_family_point() {
    let o = run(&["cod", "Suzuki", "q2=8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(decimals(&stdout(&o)), vec![2080, 832, 455, 448, 320, 1]);
    let printed = decimals(&stdout(&run(&["cod", "PSL2_even", "q=4", "--variant", "as_printed"])));
    assert_eq!(printed, vec![20, 17, 12, 1]);
}

#[test]
fn cod_of_a_group_without_a_record_uses_the_oracle() {
    let o = run(&["cod", "S3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(decimals(&stdout(&o)), vec![3, 2, 1]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["cod", "Nope"])), 2);
    assert_eq!(code(&run(&["cod", "Suzuki", "q2"])), 2);
    assert_eq!(code(&run(&["cod", "PSL2_even", "q=4", "--variant", "bogus"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn data_directory_precedence() {
    let empty = tempfile::tempdir().unwrap();
    // no flag, no env, no ./data
    let o = codeg().current_dir(empty.path()).args(["cod", "U3_3"]).output().unwrap();
    assert_eq!(code(&o), 2);
    // env is used
    let o = codeg().current_dir(empty.path()).env("CODEG_DATA", data_dir()).args(["cod", "U3_3"]).output().unwrap();
    assert_eq!(code(&o), 0);
    // the flag wins over env
    let o = codeg()
        .current_dir(empty.path())
        .env("CODEG_DATA", data_dir())
        .arg("--data")
        .arg(empty.path())
        .args(["cod", "U3_3"])
        .output()
        .unwrap();
    assert_ne!(code(&o), 0);
    // ./data is the default
    copy_dir(&data_dir(), &empty.path().join("data"));
    let o = codeg().current_dir(empty.path()).args(["cod", "U3_3"]).output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn oracle_diff_agrees_on_small_groups() {
    for g in ["A5", "L2_7"] {
        let o = run(&["oracle", g, "--diff"]);
        assert_eq!(code(&o), 0, "{g}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("degrees match, codegrees match"));
    }
    let o = run(&["--format", "json", "oracle", "A5", "--diff"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"], 5);
    assert_eq!(v["codegrees_match"], true);
}

#[test]
fn verify_then_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["verify", "--target", "both", "--no-oracle", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("CLOSED: 41 certificates, 0 open"));

    let o = run(&["recheck", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("consistent"));

    // edited as text: a round trip through `Value` would lose wide integers
    let src = fs::read_to_string(&path).unwrap();
    let at = src.rfind("\"closed\": true").unwrap();
    let flipped = format!("{}\"closed\": false{}", &src[..at], &src[at + "\"closed\": true".len()..]);
    let bad = dir.path().join("flipped.json");
    fs::write(&bad, flipped).unwrap();
    assert_eq!(code(&run(&["recheck", bad.to_str().unwrap()])), 1);

    let newer = src.replacen("\"format_version\": 1,", "\"format_version\": 99,", 1);
    assert_ne!(newer, src);
    let bad = dir.path().join("newer.json");
    fs::write(&bad, newer).unwrap();
    assert_eq!(code(&run(&["recheck", bad.to_str().unwrap()])), 2);

    let bad = dir.path().join("truncated.json");
    fs::write(&bad, &fs::read_to_string(&path).unwrap()[..200]).unwrap();
    assert_eq!(code(&run(&["recheck", bad.to_str().unwrap()])), 2);

    assert_eq!(code(&run(&["recheck", dir.path().join("absent.json").to_str().unwrap()])), 2);
}

#[test]
fn single_target_json_on_stdout() {
    let o = run(&["verify", "--target", "U3_3", "--no-oracle", "--jobs", "1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["targets"].as_array().unwrap().len(), 1);
    assert!(v["certificates"].as_array().unwrap().iter().all(|c| c["id"].as_str().unwrap().starts_with("U3_3/")));
}

#[test]
fn job_count_does_not_change_the_report() {
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["generated_at"] = Value::Null;
        v
    };
    let one = strip(run(&["verify", "--no-oracle", "--jobs", "1"]));
    let four = strip(run(&["verify", "--no-oracle", "--jobs", "4"]));
    assert_eq!(one, four);
}

#[test]
fn missing_family_data_leaves_the_proof_open() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&data_dir(), dir.path());
    fs::remove_file(dir.path().join("families/Suzuki.toml")).unwrap();
    let o = codeg()
        .arg("--data")
        .arg(dir.path())
        .args(["verify", "--no-oracle", "-o"])
        .arg(dir.path().join("r.json"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("U3_3/suzuki") && l.contains("OPEN")), "{out}");
    // an open but honest report still rechecks
    let o = codeg().args(["recheck"]).arg(dir.path().join("r.json")).output().unwrap();
    assert_eq!(code(&o), 0);
}
