use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mei")).args(args).output().expect("run mei")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mei-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let mut k5 = String::from("5 10 0\n");
    for a in 0..5 {
        for b in a + 1..5 {
            k5.push_str(&format!("e {a} {b}\n"));
        }
    }
    let out = scratch("unused.json");
    let k5 = write("k5.txt", &k5);
    let r = mei(&["solve", "--input", s(&k5), "--out", s(&out)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("K5 or K3,3"));

    let split = write("split.txt", "4 2 0\ne 0 1\ne 2 3\n");
    assert_eq!(mei(&["solve", "--input", s(&split), "--out", s(&out)]).status.code(), Some(2));

    let bad = write("bad.txt", "3 2\ne 0 1\n");
    let r = mei(&["solve", "--input", s(&bad), "--out", s(&out)]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 1"));

    let face = scratch("face.txt");
    assert!(mei(&["gen", "--family", "II", "--l", "3", "--out", s(&face)]).status.success());
    assert_eq!(mei(&["oracle", "--input", s(&face), "--cap", "1"]).status.code(), Some(4));

    assert_eq!(mei(&["gen", "--family", "III", "--m", "3"]).status.code(), Some(1));
    assert_eq!(mei(&["solve", "--input", s(&scratch("missing.txt")), "--out", s(&out)]).status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let inst = scratch("grid.txt");
    assert!(mei(&["gen", "--family", "grid", "--w", "30", "--h", "20", "--k", "6", "--seed", "4", "--out", s(&inst)])
        .status
        .success());
    let again = mei(&["gen", "--family", "grid", "--w", "30", "--h", "20", "--k", "6", "--seed", "4"]);
    assert_eq!(std::fs::read(&inst).unwrap(), again.stdout);
    let mut seen = Vec::new();
    for name in ["a", "b"] {
        let (out, drawing) = (scratch(&format!("{name}.json")), scratch(&format!("{name}.pl")));
        let r = mei(&["solve", "--input", s(&inst), "--out", s(&out), "--dump-embedding", "--planarize", s(&drawing)]);
        assert!(r.status.success());
        seen.push((std::fs::read(&out).unwrap(), std::fs::read(&drawing).unwrap()));
    }
    assert_eq!(seen[0], seen[1]);
}

#[test]
fn gap_instance_solves_and_matches_the_oracle() {
    let inst = scratch("gap.txt");
    assert!(mei(&["gen", "--family", "II", "--l", "3", "--out", s(&inst)]).status.success());
    let out = scratch("gap.json");
    let drawing = scratch("gap.pl");
    assert!(mei(&["solve", "--input", s(&inst), "--mode", "weak", "--out", s(&out), "--planarize", s(&drawing)])
        .status
        .success());
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["total"], 3);
    assert_eq!(report["mode"], "weak");
    let text = std::fs::read_to_string(&drawing).unwrap();
    assert_eq!(text.lines().next(), Some("# dummies 3"));
    let oracle: serde_json::Value = serde_json::from_slice(&mei(&["oracle", "--input", s(&inst)]).stdout).unwrap();
    assert_eq!(oracle["ins_prime"], 0);
    assert_eq!(oracle["ins_values"], serde_json::json!([0, 0, 0]));
}

#[test]
fn bench_prints_one_row_per_size() {
    let r = mei(&["bench", "--sizes", "400,800", "--k", "2", "--repeats", "1"]);
    assert!(r.status.success());
    let text = String::from_utf8(r.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("size\tn\tmedian_ms\tratio"));
}
