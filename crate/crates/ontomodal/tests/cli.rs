use ontomodal::model_text::parse_model;
use ontomodal_core::formula::parse;
use ontomodal_core::kripke::{eval, Assignment};
use std::io::Write;
use std::process::{Command, Stdio};

fn bin(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ontomodal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn model_block(out: &str) -> String {
    out.lines()
        .skip_while(|l| !l.ends_with("model:") && *l != "countermodel:")
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(|l| format!("{}\n", &l[2..]))
        .collect()
}

#[test]
fn valid_and_sat_examples() {
    let (code, out) = bin(&["valid", "--system", "S5", "<>[]p -> []p"], None);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: Valid"));
    let (code, out) = bin(&["sat", "--system", "T", "p & ~p"], None);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: UNSAT"));
}

#[test]
fn formula_from_stdin() {
    let (code, out) = bin(&["valid", "--system", "K", "-"], Some("[](p -> q) -> ([]p -> []q)\n"));
    assert_eq!(code, 0, "{out}");
}

#[test]
fn countermodel_evaluates_back() {
    let (code, out) = bin(&["valid", "--system", "T", "--format", "full", "<>[]p -> []p"], None);
    assert_eq!(code, 1);
    let m = parse_model(&model_block(&out)).unwrap();
    assert!(m.len() <= 3);
    assert!(!eval(&m, 0, &parse("<>[]p -> []p").unwrap(), &Assignment::default()).unwrap());
}

#[test]
fn eval_reads_model_files() {
    let dir = std::env::temp_dir().join(format!("ontomodal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.txt");
    std::fs::write(&path, "worlds: w1 w2 w3\naccess: w1->w2\ntime: w1<w2<w3\nval: p @ w2\nval: q @ w1\n").unwrap();
    let p = path.to_str().unwrap();
    let run = |w: &str, f: &str| bin(&["eval", "--model", p, "--world", w, f], None).0;
    assert_eq!(run("w1", "<>p"), 0);
    assert_eq!(run("w1", "[]~p"), 1);
    assert_eq!(run("w2", "E- q"), 0);
    assert_eq!(run("w2", "E+ q"), 1);
    assert_eq!(run("w9", "p"), 2);
    std::fs::write(&path, "worlds: w\naccess: w->v\n").unwrap();
    assert_eq!(run("w", "p"), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn parse_echoes_canonical_form() {
    let (code, out) = bin(&["parse", "-"], Some("# comment\n[]  ( p&q )\n~~p\n"));
    assert_eq!(code, 0);
    assert_eq!(out, "formula: [](p & q)\nformula: ~~p\n");
    let (code, out) = bin(&["parse", "-"], Some("p &\n"));
    assert_eq!(code, 2);
    assert!(out.starts_with("error: line 1"));
}

#[test]
fn check_proof_reports_and_exit_codes() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let t1 = format!("{dir}/scripts/v1/theorem1.proof");
    let (code, out) = bin(&["check-proof", "--system", "O", &t1], None);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: ACCEPT\npremises-used: none\ngoal-matched: yes"));
    let (code, out) = bin(&["check-proof", "--system", "S5", &t1], None);
    assert_eq!(code, 1);
    assert!(out.contains("reason: "));
    assert_eq!(bin(&["check-proof", "--system", "Z", &t1], None).0, 2);
    assert_eq!(bin(&["check-proof", "/nonexistent.proof"], None).0, 2);
}

#[test]
fn transform_proof_output_is_a_checkable_script() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let main = format!("{dir}/scripts/v1/main.proof");
    let (code, out) = bin(&["transform", "--op", "temporalize", "--proof", &main, "--into", "O_T"], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("# temporalize of"));
    let (code, _) = bin(&["check-proof", "-"], Some(&out));
    assert_eq!(code, 0);
    let (code, _) = bin(&["transform", "--op", "temporalize", "--proof", &main, "--into", "O"], None);
    assert_eq!(code, 1);
}

#[test]
fn transform_system_output_parses() {
    let (code, out) = bin(&["transform", "--op", "time-reverse", "--system", "O_T"], None);
    assert_eq!(code, 0);
    let s = ontomodal::system_text::parse_system(&out).unwrap();
    assert_eq!(s.name, "O_T_R");
}

#[test]
fn ontology_run_all_table() {
    let (code, out) = bin(&["ontology", "run-all"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" ACCEPT ")).count(), 6);
    assert!(out.contains("scripts: 6\naccepted: 6\n"));
    let (code, out) = bin(&["ontology", "show", "theorem2"], None);
    assert_eq!(code, 0);
    assert!(out.contains("premise LEMMA1-REPAIRED"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["valid", "--system", "S4", "--format", "full", "--oracle", "<>(p & <>q) -> []p"][..],
        &["ontology", "collapse"][..],
        &["transform", "--op", "break", "--system", "O"][..],
    ] {
        assert_eq!(bin(args, None), bin(args, None));
    }
}
