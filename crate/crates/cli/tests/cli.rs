use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn sg(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("sg runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend(args);
    let o = sg(&full, "");
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

fn save(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn ps_has_no_five_flow() {
    let o = sg(&["oracle", "k-flow", "--k", "5"], &gen(&["petersen-ps"]));
    assert_eq!(o.status.code(), Some(1));
    let o = sg(&["oracle", "k-flow", "--k", "6"], &gen(&["petersen-ps"]));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn connect_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (graph, group) in [("petersen-ps", "Z6"), ("petersen-ps", "Z2xZ2xZ2"), ("petersen-2neg", "Z11")] {
        let g = gen(&[graph]);
        let o = sg(&["connect", "--group", group], &g);
        assert_eq!(o.status.code(), Some(0), "{graph} {group}");
        let cert = save(dir.path(), "cert.txt", &stdout(&o));
        let gf = save(dir.path(), "g.txt", &g);
        let v = sg(&["verify", cert.to_str().unwrap(), gf.to_str().unwrap()], "");
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
}

#[test]
fn forbidden_map_is_respected() {
    let dir = tempfile::tempdir().unwrap();
    let map: String = (0..15).map(|e| format!("{e} {}\n", e % 6)).collect();
    let f = save(dir.path(), "fbar.txt", &map);
    let o = sg(&["connect", "--group", "Z6", "--forbidden", f.to_str().unwrap()], &gen(&["petersen-ps"]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let flow: Vec<&str> = text.lines().find(|l| l.starts_with("flow")).unwrap().split_whitespace().skip(1).collect();
    assert!(flow.iter().enumerate().all(|(e, v)| *v != (e % 6).to_string()));
}

#[test]
fn ps_over_z5_is_unsat() {
    let o = sg(&["connect", "--group", "Z5"], &gen(&["petersen-ps"]));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("unsat"));
}

#[test]
fn projective_hint() {
    let dir = tempfile::tempdir().unwrap();
    let emb = save(dir.path(), "k6.emb", &gen(&["k6-projective"]));
    let dual = sg(&["dual", emb.to_str().unwrap()], "");
    assert_eq!(dual.status.code(), Some(0));
    let hint = format!("projective:{}", emb.display());
    let o = sg(&["connect", "--group", "Z7", "--hint", &hint], &stdout(&dual));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("avoid projective Z7"));
}

#[test]
fn checks() {
    assert_eq!(sg(&["check", "balance"], &gen(&["negsun", "4"])).status.code(), Some(1));
    assert_eq!(sg(&["check", "balance"], &gen(&["petersen"])).status.code(), Some(0));
    assert_eq!(sg(&["check", "unbalanced"], &gen(&["petersen-ps"])).status.code(), Some(0));
    let c = sg(&["check", "connectivity"], &gen(&["petersen"]));
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("edge-connectivity 3"));
    let c = sg(&["check", "cyclic-connectivity"], &gen(&["petersen"]));
    assert!(stdout(&c).contains("cyclic-edge-connectivity 5"));
}

#[test]
fn decompose_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (graph, mode) in [("petersen", "tree-2base"), ("petersen-ps", "tree-2base"), ("petersen-2neg", "base-sun")] {
        let g = gen(&[graph]);
        let o = sg(&["decompose", mode], &g);
        assert_eq!(o.status.code(), Some(0), "{graph} {mode}");
        let cert = save(dir.path(), "part.txt", &stdout(&o));
        let gf = save(dir.path(), "g.txt", &g);
        assert_eq!(sg(&["verify", cert.to_str().unwrap(), gf.to_str().unwrap()], "").status.code(), Some(0));
    }
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(&["petersen-ps"]);
    let text = stdout(&sg(&["connect", "--group", "Z6"], &g));
    // forbid exactly the value the flow carries on edge 0
    let flow0 = text.lines().find(|l| l.starts_with("flow")).unwrap().split(' ').nth(1).unwrap().to_string();
    let bad = text.lines().map(|l| if l.starts_with("fbar") { format!("fbar {flow0}{}", &l[6..]) } else { l.to_string() }).collect::<Vec<_>>().join("\n");
    let cert = save(dir.path(), "cert.txt", &bad);
    let gf = save(dir.path(), "g.txt", &g);
    let v = sg(&["verify", cert.to_str().unwrap(), gf.to_str().unwrap()], "");
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("edge 0 carries its forbidden value"));
}

#[test]
fn input_errors_have_line_numbers() {
    let o = sg(&["check", "balance"], "sg 2 1\ne 1 3 +\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(sg(&["connect", "--group", "Q7"], &gen(&["petersen-ps"])).status.code(), Some(2));
}

#[test]
fn size_limit_exit_code() {
    let o = sg(&["oracle", "nz-flow", "--group", "Z3", "--max-vertices", "4"], &gen(&["petersen-ps"]));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn closure_lists_steps() {
    let o = sg(&["closure", "--k", "2", "--seed-edges", "5,6,7,8,9,10,11,12,14"], &gen(&["petersen-ps"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("step cycle")));
}

#[test]
fn deterministic_output() {
    let g = gen(&["petersen-2neg"]);
    assert_eq!(stdout(&sg(&["connect", "--group", "Z13"], &g)), stdout(&sg(&["connect", "--group", "Z13"], &g)));
    let a = sg(&["oracle", "a-connected", "--group", "Z3", "--samples", "20", "--seed", "5"], &gen(&["k4-negtri"]));
    let b = sg(&["oracle", "a-connected", "--group", "Z3", "--samples", "20", "--seed", "5"], &gen(&["k4-negtri"]));
    assert_eq!(stdout(&a), stdout(&b));
}
