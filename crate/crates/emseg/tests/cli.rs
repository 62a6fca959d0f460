use std::path::PathBuf;

use emseg::cli::{load_ems, run_with, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN};

fn fx(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_with(
        std::iter::once("emseg").chain(args.iter().copied()),
        &mut out,
    );
    (code, String::from_utf8(out).unwrap())
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("emseg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn validate_and_psi() {
    let e1 = fx("e1.ems");
    assert_eq!(run(&["validate", &e1]).0, EXIT_OK);
    let (code, out) = run(&["psi", &e1]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "S_1 + S_3 + S_5");
    assert_eq!(run(&["psi", &fx("empty.ems")]).1.trim(), "0");
    let bad = scratch(
        "bad.ems",
        "group Sp rank 4 | ([0,0],0,+) ([1,1],0,+) ([2,2],0,-)\n",
    );
    assert_eq!(run(&["validate", &bad]).0, EXIT_INPUT);
}

#[test]
fn class_and_json() {
    let (code, out) = run(&["class", &fx("e1.ems"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["members"].as_array().unwrap().len(), 9);
    assert_eq!(v["exhausted"], true);
}

#[test]
fn class_output_is_deterministic() {
    let a = run(&["class", &fx("e1.ems"), "--group-by-C"]);
    let b = run(&["class", &fx("e1.ems"), "--group-by-C"]);
    assert_eq!(a, b);
}

#[test]
fn render_parse_round_trip() {
    let (code, drawn) = run(&["render", &fx("e1.ems")]);
    assert_eq!(code, EXIT_OK);
    let sym = scratch("e1.sym", &drawn);
    let (code, rows) = run(&["parse", &sym]);
    assert_eq!(code, EXIT_OK);
    let back = load_ems(&rows).unwrap();
    assert_eq!(
        back,
        load_ems(&std::fs::read_to_string(fx("e1.ems")).unwrap()).unwrap()
    );
}

#[test]
fn decide_verdicts() {
    for (file, want) in [
        ("so31_plus_plus_plus.lng", "NotArthurType"),
        ("so31_minus_minus_plus.lng", "NotArthurType"),
        ("so31_minus_plus_minus.lng", "ArthurType"),
        ("so31_plus_minus_minus.lng", "ArthurType"),
    ] {
        let (code, out) = run(&["decide", &fx(file), "--json"]);
        assert_eq!(code, EXIT_OK, "{file}: {out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], want, "{file}");
    }
}

#[test]
fn kernel_gaps_give_exit_two() {
    let e = scratch(
        "gap.ems",
        "group SOodd rank 8 | ([1/2,1/2],0,-) ([1/2,1/2],0,-) ([5/2,1/2],0,-)\n",
    );
    let (code, out) = run(&["class", &e]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert!(out.contains("gap: UI"), "{out}");
    let empty = scratch("empty.kernel", "# nothing\n");
    assert_eq!(
        run(&["class", &fx("e1.ems"), "--kernel", &empty]).0,
        EXIT_OK
    );
}

#[test]
fn lift_verb() {
    let (code, out) = run(&["lift", &fx("e1.ems"), "--dir", "+", "--x", "3", "--k", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("rank 5"));
    let (code, out) = run(&["lift", &fx("e1.ems"), "--dir", "+", "--x", "5", "--k", "1"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("bullet 2"));
}

#[test]
fn step2_verb() {
    let l = scratch(
        "pi.lng",
        "group SOodd rank 9 L( D[1/2,-5/2] ; (1/2)^+ (3/2)^- (3/2)^- )\n",
    );
    let (code, out) = run(&["step2", &l]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("S_3*S_2 + S_4*S_3"), "{out}");
}

#[test]
fn input_errors() {
    assert_eq!(run(&["psi", "/no/such/file"]).0, EXIT_INPUT);
    let junk = scratch("junk.ems", "group Sp rank 4 | ([0,0],0,-\n");
    let (code, out) = run(&["psi", &junk]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.starts_with("error:"));
    assert_eq!(run(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn format_detection() {
    let line = "group Sp rank 4 | ([0,0],0,-) ([1,1],0,+) ([2,2],0,-)";
    let a = load_ems(line).unwrap();
    let b = load_ems(&a.to_json()).unwrap();
    let c = load_ems(&a.to_rows_text()).unwrap();
    let d = load_ems(&emseg::multiseg::render_symbol(&a).unwrap()).unwrap();
    assert!([&b, &c, &d].iter().all(|x| **x == a));
}
