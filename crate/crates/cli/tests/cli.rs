use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_systolecalc"));
    c.env_remove("SYSTOLECALC_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn systolecalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field<'a>(table: &'a str, key: &str) -> &'a str {
    table
        .lines()
        .find_map(|l| {
            let mut parts = l.splitn(2, char::is_whitespace);
            (parts.next() == Some(key)).then(|| parts.next().unwrap().trim())
        })
        .unwrap_or_else(|| panic!("no field {key} in\n{table}"))
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().unwrap() }
    }

    fn put(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.dir.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }
}

#[test]
fn syslb_level_five() {
    let o = run(&["syslb", "--n", "2", "--p", "5", "--m", "1"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert_eq!(field(&t, "sys_lb"), "0.573414");
    assert_eq!(field(&t, "length_lb"), "1.36107");
}

#[test]
fn sl_growth_constant() {
    let o = run(&["constants", "--family", "sl", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "c1"), "0.471405");
}

#[test]
fn identity_has_length_zero() {
    let f = Files::new();
    let m = f.put("id.json", r#"{"n": 3, "entries": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let o = run(&["length", "--matrix", &m]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert_eq!(field(&t, "length"), "0");
    assert_eq!(field(&t, "class"), "Identity");
}

#[test]
fn length_json_round_trips() {
    let f = Files::new();
    let m = f.put("m.json", r#"{"n": 2, "entries": [[1,5],[5,26]]}"#);
    let o = run(&["length", "--matrix", &m, "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let len = v["length"].as_f64().unwrap();
    assert!((len - 2.0 * 13.5f64.acosh()).abs() < 1e-12);
}

#[test]
fn non_semisimple_is_a_domain_error() {
    let f = Files::new();
    let m = f.put("u.json", r#"{"n": 2, "entries": [[1,1],[0,1]]}"#);
    let o = run(&["length", "--matrix", &m]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o).lines().count(), 1);
    assert!(stdout(&o).is_empty());
}

#[test]
fn unknown_flag_exits_two_naming_it() {
    let o = run(&["syslb", "--n", "2", "--p", "5", "--m", "1", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert_eq!(e.lines().count(), 1, "{e}");
    assert!(e.contains("--bogus"));
}

#[test]
fn missing_input_names_the_flags() {
    let o = run(&["length"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert_eq!(e.lines().count(), 1, "{e}");
    assert!(e.contains("--matrix"));
}

#[test]
fn unreadable_file_is_a_usage_error() {
    let o = run(&["length", "--matrix", "/nonexistent/m.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--matrix"));
}

#[test]
fn composite_tower_prime_is_rejected() {
    let o = run(&["syslb", "--n", "2", "--p", "6", "--m", "1"]);
    assert_ne!(o.status.code(), Some(0));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn every_subcommand_has_help() {
    let cases: &[(&[&str], &[&str])] = &[
        (&["length"], &["--matrix", "--algebra", "--element", "--bits"]),
        (&["bounds"], &["--matrix", "--bits"]),
        (&["membership"], &["--level"]),
        (&["witness"], &["--p", "--m"]),
        (&["syslb"], &["--n", "--p", "--m"]),
        (&["growth"], &["--n", "--p", "--mmax"]),
        (&["constants"], &["--family", "--rank", "--degree", "--volume"]),
        (&["enumerate"], &["--level", "--height", "--algebra", "--jobs", "--budget"]),
        (&["quat", "mul"], &["--algebra", "--element", "--other"]),
        (&["quat", "norm"], &["--algebra", "--element"]),
        (&["quat", "embed"], &["--algebra", "--element"]),
    ];
    for (cmd, flags) in cases {
        let mut args = cmd.to_vec();
        args.push("--help");
        let o = run(&args);
        assert!(o.status.success(), "{cmd:?}");
        let h = stdout(&o);
        for flag in *flags {
            assert!(h.contains(flag), "{cmd:?} help lacks {flag}");
        }
        assert!(h.contains("--format"));
    }
    assert!(run(&["--help"]).status.success());
}

#[test]
fn enumerate_csv_is_deterministic() {
    let args = ["enumerate", "--level", "5", "--height", "30", "--format", "csv"];
    let a = run(&args);
    assert!(a.status.success());
    let text = stdout(&a);
    assert_eq!(
        text.lines().next().unwrap(),
        "entry_vector,trace,is_semisimple,length,witness_q,passes_cor52"
    );
    assert_eq!(text.lines().count(), 85);
    let mut par = args.to_vec();
    par.extend(["--jobs", "4"]);
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(a.stdout, run(&par).stdout);
}

#[test]
fn enumerate_json_reports_empirical_minimum() {
    let o = run(&["enumerate", "--p", "5", "--m", "1", "--height", "30", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["min_length_kind"], "empirical");
    let again = run(&["enumerate", "--p", "5", "--m", "1", "--height", "30", "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn budget_from_environment_and_flag() {
    let args = ["enumerate", "--level", "5", "--height", "30"];
    let o = bin().args(args).env("SYSTOLECALC_BUDGET", "100").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget"));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget", "1000000"]);
    let o = bin().args(&with_flag).env("SYSTOLECALC_BUDGET", "100").output().unwrap();
    assert!(o.status.success());
    let o = bin().args(args).env("SYSTOLECALC_BUDGET", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quaternion_subcommands() {
    let f = Files::new();
    let alg = f.put("alg.json", r#"{"a": 2, "b": 3}"#);
    let i = f.put("i.json", r#"{"coeffs": ["0", "1", "0", "0"]}"#);
    let j = f.put("j.json", r#"{"coeffs": ["0", "0", "1", "0"]}"#);

    let o = run(&["quat", "mul", "--algebra", &alg, "--element", &i, "--other", &j]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "coeffs"), "0 0 0 1");

    let o = run(&["quat", "norm", "--algebra", &alg, "--element", &i, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nrd"], "-2");
    assert_eq!(v["trd"], "0");

    let o = run(&["quat", "embed", "--algebra", &alg, "--element", &i, "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("real_2x2,rational_4x4"));
}

#[test]
fn csv_and_json_are_stable() {
    for fmt in ["csv", "json"] {
        let args = ["growth", "--n", "2", "--p", "5", "--mmax", "4", "--format", fmt];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
