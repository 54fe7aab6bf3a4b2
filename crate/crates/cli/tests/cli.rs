use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bzcrystal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_zero_datum() {
    let zero = r#"{"interval":{"n":0,"m":2},"norm":"e","components":[[[1],0],[[1,2],0],[[1,3],0],[[2],0],[[2,3],0],[[3],0]]}"#;
    let o = run(&["verify", "-"], Some(zero));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"valid\": true"));
}

#[test]
fn verify_reports_violations() {
    let bad = r#"{"interval":{"n":0,"m":2},"norm":"e","components":[[[1],0],[[1,2],0],[[1,3],0],[[2],-1],[[2,3],0],[[3],0]]}"#;
    let o = run(&["verify"], Some(bad));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"valid\": false"));
}

#[test]
fn apply_single_lowering() {
    let o = run(&["apply", "--l", "3", "--word", "f0"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("wt = -α̂_0"));
}

#[test]
fn counts_match_kostant() {
    let o = run(&["counts", "--l", "3", "--depth", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all 10 weights agree"));
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(run(&["verify"], Some("{")).status.code(), Some(2));
    assert_eq!(run(&["psi"], Some(r#"{"interval":{"n":0,"m":2},"a":[[1,2,-1]]}"#)).status.code(), Some(2));
    assert_eq!(run(&["apply", "--l", "3", "--word", "g0"], None).status.code(), Some(2));
    assert_eq!(run(&["apply", "--l", "3", "--word", "f5"], None).status.code(), Some(2));
}

#[test]
fn psi_round_trip() {
    let a = r#"{"interval":{"n":0,"m":2},"a":[[1,2,1],[2,3,1]]}"#;
    let m = run(&["psi"], Some(a));
    assert_eq!(m.status.code(), Some(0));
    let back = run(&["psi-inv"], Some(&stdout(&m)));
    assert_eq!(back.status.code(), Some(0));
    let x: serde_json::Value = serde_json::from_str(&stdout(&back)).unwrap();
    let y: serde_json::Value = serde_json::from_str(a).unwrap();
    assert_eq!(x, y);
}

#[test]
fn graph_output_is_deterministic() {
    let args = ["--threads", "2", "graph", "--model", "affine", "--l", "3", "--depth", "2", "--format", "json"];
    let a = stdout(&run(&args, None));
    let b = stdout(&run(&args[2..], None));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 13);
}

#[test]
fn connected_header_names_prng() {
    let o = run(&["check-connected", "--l", "3", "--trials", "4", "--len", "4", "--seed", "7"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# prng: ChaCha8 seed 7"));
}

#[test]
fn seven_conditions_pass() {
    let o = run(&["check-seven", "--l", "3", "--depth", "2"], None);
    assert_eq!(o.status.code(), Some(0));
}
