use mei_demo::{generate_text, oracle_text, solve_text};

#[test]
fn interleaved_face_round_trip() {
    let text = generate_text("II", 3, 0, 0).unwrap();
    let report: serde_json::Value = serde_json::from_str(&solve_text(&text, true).unwrap()).unwrap();
    assert_eq!(report["total"], 3);
    let exact: serde_json::Value = serde_json::from_str(&oracle_text(&text).unwrap()).unwrap();
    assert_eq!(exact["ins_prime"], 0);
}

#[test]
fn lower_bound_reaches_the_report() {
    let text = generate_text("III", 2, 0, 0).unwrap();
    let report: serde_json::Value = serde_json::from_str(&solve_text(&text, false).unwrap()).unwrap();
    assert_eq!(report["lower_bound"], 4);
    assert!(report["total"].as_u64().unwrap() >= 4);
}

#[test]
fn bad_input_gives_a_message() {
    assert!(generate_text("V", 3, 0, 0).unwrap_err().contains("unknown family"));
    assert!(solve_text("3 1\n", true).unwrap_err().contains("line 1"));
    let k5 = "5 10 0\ne 0 1\ne 0 2\ne 0 3\ne 0 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
    assert_eq!(solve_text(k5, true).unwrap_err(), "graph is not planar");
}

#[test]
fn generated_text_is_repeatable() {
    assert_eq!(generate_text("random", 30, 4, 9), generate_text("random", 30, 4, 9));
    assert_eq!(generate_text("grid", 8, 3, 1), generate_text("grid", 8, 3, 1));
}
