use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowtree")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn trees_golden() {
    assert_eq!(stdout(&["trees", "3"]), "count 3\n{{{1,3},2}}\n{{{1,2},3}}\n{{1,{2,3}}}\n");
    assert!(stdout(&["--format", "machine", "trees", "5"]).starts_with("count=105\n"));
}

#[test]
fn flow_coefficient() {
    let f = |theta: &str, mode: &str| {
        stdout(&["F", "--kronecker", "3", "--gammas", "1,0", "0,1", "--theta", theta, "--mode", mode])
    };
    for mode in ["omega", "beta"] {
        assert_eq!(f("1,-1", mode), "y^-2 + 1 + y^2\n");
        assert_eq!(f("-1,1", mode), "0\n");
    }
}

#[test]
fn dt_from_quiver_file() {
    let dir = std::env::temp_dir().join(format!("flowtree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let q = dir.join("a2.quiver");
    std::fs::write(&q, "# A2\nvertices 2\narrow 1 2 1\n").unwrap();
    let q = q.to_str().unwrap();
    assert_eq!(stdout(&["dt", "--quiver", q, "--gamma", "1,1", "--theta", "1,-1"]), "Omega_bar = 1\nOmega = 1\n");
    assert_eq!(
        stdout(&["--format", "machine", "dt", "--quiver", q, "--gamma", "1,1", "--theta", "-1,1"]),
        "omega_bar=0\nomega=0\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["trees", "0"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    assert_eq!(code(&["check", "bogus"]), Some(2));
    assert_eq!(code(&["dt", "--kronecker", "1", "--gamma", "1,1", "--theta", "1,1"]), Some(2));
    assert_eq!(code(&["F", "--kronecker", "1", "--gammas", "1,0", "--theta", "1"]), Some(2));
    assert_eq!(code(&["F", "--kronecker", "1", "--gammas", "1,0", "0,1", "--theta", "0,0"]), Some(3));
    assert_eq!(code(&["--budget", "0", "F", "--kronecker", "1", "--gammas", "1,0", "0,1", "--theta", "1,-1"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn checks_pass() {
    assert_eq!(stdout(&["check", "multicover", "--trials", "3"]), "PASS multicover trials=3\n");
    let out = stdout(&["--format", "machine", "check", "joints", "--r", "3", "--trials", "4"]);
    assert!(out.starts_with("check=joints\tstatus=pass"), "{out}");
}
