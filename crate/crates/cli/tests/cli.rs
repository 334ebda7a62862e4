use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const S_STAR: &str = "pseudomanifold d=1
1 2 : 0
3 4 : 1
2 : 2
2 3 : 2
4 : 3
1 4 : 3
1 : 4
3 : 5
";

fn morsecut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morsecut"))
        .args(args)
        .env_remove("MORSECUT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn watershed_of_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s_star.stk", S_STAR);
    let o = morsecut(&["watershed", &file]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "CUT-FACE 1\nCUT-FACE 3\nWATERSHED 1\nWATERSHED 3\n");
}

#[test]
fn msf_strategies_print_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s_star.stk", S_STAR);
    let a = morsecut(&["msf", &file, "--strategy", "gvf"]);
    let b = morsecut(&["msf", &file, "--strategy", "kruskal"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a),
        "MINIMUM 1 2\nMINIMUM 3 4\nFOREST-EDGE 1 2 | 2 3 : 2\nFOREST-EDGE 1 4 | 3 4 : 3\n"
    );
}

#[test]
fn gvf_lists_vectors_and_critical_simplices() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s_star.stk", S_STAR);
    let o = morsecut(&["gvf", &file]);
    assert_eq!(
        stdout(&o),
        "VECTOR 2 -> 2 3\nVECTOR 4 -> 1 4\nCRITICAL 1\nCRITICAL 3\nCRITICAL 1 2\nCRITICAL 3 4\n"
    );
}

#[test]
fn validate_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.stk", S_STAR);
    let o = morsecut(&["validate", &good]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("BASIC-STACK yes"));
    assert!(text.contains("NEGATION-BASIC-DMF yes"));

    let bad = write(dir.path(), "bad.stk", &S_STAR.replace("1 2 : 0", "1 2 : 5"));
    let o = morsecut(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("STACK no [1] is a face of [1 2] but 4 < 5"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "dup.stk", &S_STAR.replace("2 3 : 2", "3 3 : 2"));
    let o = morsecut(&["watershed", &file]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn usage_errors_exit_64_and_help_exits_0() {
    assert_eq!(morsecut(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(morsecut(&["msf"]).status.code(), Some(64));
    assert_eq!(morsecut(&["--help"]).status.code(), Some(0));
    assert_eq!(morsecut(&["--version"]).status.code(), Some(0));
}

#[test]
fn collapse_writes_a_stack_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s_star.stk", S_STAR);
    let o = morsecut(&["collapse", "--ultimate", &file]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(
        body,
        "pseudomanifold d=1\n1 : 4\n2 : 0\n3 : 5\n4 : 1\n1 2 : 0\n1 4 : 1\n2 3 : 0\n3 4 : 1\n"
    );
    let collapsed = write(dir.path(), "collapsed.stk", &text);
    assert!(morsecut(&["validate", &collapsed]).status.success());

    let one = morsecut(&["collapse", &file]);
    assert!(stdout(&one).starts_with("# collapse 2 -> 2 3\n"));
}

#[test]
fn generate_is_deterministic_and_honours_the_seed() {
    let a = morsecut(&["generate", "--kind", "torus_grid", "--n", "3", "--seed", "9"]);
    let b = morsecut(&["generate", "--kind", "torus_grid", "--n", "3", "--seed", "9"]);
    let c = morsecut(&["generate", "--kind", "torus_grid", "--n", "3", "--seed", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);

    let from_env = Command::new(env!("CARGO_BIN_EXE_morsecut"))
        .args(["generate", "--kind", "torus_grid", "--n", "3"])
        .env("MORSECUT_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, a.stdout);

    let bad = morsecut(&["generate", "--kind", "cycle", "--n", "2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn generated_files_pass_the_full_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.stk");
    let g = morsecut(&["generate", "--kind", "simplex_boundary", "--n", "4", "--seed", "3", "-o", out.to_str().unwrap()]);
    assert!(g.status.success());
    let o = morsecut(&["check", out.to_str().unwrap(), "-v"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("CLAIM")).all(|l| l.ends_with(" PASS")));
    assert!(text.contains("CLAIM t:msf-unique-and-equal PASS"));
    assert!(text.ends_with("failed=0\n"));
}

#[test]
fn corpus_check_passes() {
    let o = morsecut(&["check", "--seeds", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o), "SUMMARY claims=384 failed=0\n");
}

#[test]
fn dot_output_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s_star.stk", S_STAR);
    let dot = dir.path().join("w.dot");
    let o = morsecut(&["watershed", &file, "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph dual {"));
    assert_eq!(text.matches("color=red, style=dashed").count(), 2);
}
