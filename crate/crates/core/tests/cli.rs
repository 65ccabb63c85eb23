use std::process::{Command, Output};

fn rdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sphere_count() {
    let o = rdlab(&["sphere-count", "--group", "free:2", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 1\n1 4\n2 12\n");
    let o = rdlab(&["sphere-count", "--group", "fpc:2,3", "--radius", "3"]);
    assert_eq!(stdout(&o), "0 1\n1 3\n2 4\n3 6\n");
}

#[test]
fn propj_and_solution_count() {
    let o = rdlab(&["propj", "--group", "free:2", "--radius", "5", "--alpha", "0", "--beta", "0", "--gamma", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass\n"));
    let o = rdlab(&["propj-check", "--group", "free:2", "--radius", "3", "--shifted"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("fail\n"));
    let o = rdlab(&["nsolutions", "--group", "free:2", "--radius", "5", "--mu", "0", "--nu", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn corrupted_constant_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = rdlab(&[
        "verify", "thm64", "--group", "free:2", "--M", "0.01", "--k", "2", "--trials", "3", "--seed", "1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["config"]["command"]["subcommand"], "verify");
    assert_eq!(lines[0]["config"]["command"]["big_m"], 0.01);
    for r in &lines[1..] {
        assert_eq!(r["verdict"], "VIOLATION");
        assert_eq!(r["seed"], 1);
        assert_eq!(r["inequality_id"], "thm64");
    }
    assert!(stdout(&o).contains("thm64"));
}

#[test]
fn probes_exit_zero_even_with_findings() {
    let o = rdlab(&["probe", "probe_mixed", "--C", "0.001", "--k", "2", "--trials", "3", "--csv", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "inequality_id,seed,trial,lhs,rhs,margin,verdict,R,residual");
    assert!(lines.all(|l| l.starts_with("probe_mixed,0,") && l.contains("VIOLATION")));
}

#[test]
fn norm_of_an_element_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shift.el");
    std::fs::write(&path, "# L_1 + L_-1\ng=(1); 1\ng=(-1); 1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = rdlab(&["norm", "--group", "zd:1", "--element-file", p, "--radius", "20", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!(value >= 2.0 * (std::f64::consts::PI / 42.0).cos() - 1e-6 && value <= 2.0);
    assert_eq!(v["kind"], "lower_bound");
    assert_eq!(v["radius"], 20);
    assert_eq!(v["monotone_history"].as_array().unwrap().len(), 3);

    let o = rdlab(&["norm", "--group", "zd:1", "--element-file", p, "--radius", "5", "--dense"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["kind"], "exact_small");
    assert!((v["value"].as_f64().unwrap() - 2.0 * (std::f64::consts::PI / 12.0).cos()).abs() < 1e-12);
}

#[test]
fn action_check() {
    let o = rdlab(&["action-check", "--group", "fpc:2,3", "--action", "perm:3:x1=(0 1),x2=(0 1 2)"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("ok\n"));
    // a 3-cycle cannot implement an element of order 2
    let o = rdlab(&["action-check", "--group", "fpc:2,3", "--action", "perm:3:x1=(0 1 2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--action"));
}

#[test]
fn operational_errors_exit_one() {
    let o = rdlab(&["sphere-count", "--group", "free:two"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    let o = rdlab(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rdlab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_rdlab"))
        .args(["verify", "cor62_free", "--k", "3", "--trials", "1"])
        .env("RDLAB_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn help_lists_defaults() {
    let o = rdlab(&["verify", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    let h = stdout(&o);
    for needle in ["[default: free:2]", "[default: 50]", "[default: gaussian]", "--N", "--M", "--lambda"] {
        assert!(h.contains(needle), "{needle}");
    }
}
