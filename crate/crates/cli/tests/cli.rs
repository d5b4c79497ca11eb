use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const H3: &str = "field Fp 5\ndim 3\nbasis e f z\nmul e f = z\nmul f e = z\n";

fn jja(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jja"))
        .args(args)
        .env_remove("JJ_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn kv(args: &[&str]) -> (i32, String) {
    let mut all = args.to_vec();
    all.extend(["--format", "json-like-lines"]);
    let o = jja(&all);
    (o.status.code().unwrap(), stdout(&o))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_jacobi_jordan() {
    let dir = TempDir::new().unwrap();
    let h3 = write(&dir, "h3.jja", H3);
    let (code, out) = kv(&["check", s(&h3)]);
    assert_eq!(code, 0);
    assert!(out.contains("jacobi_jordan=true\n"), "{out}");

    let one_sided = write(&dir, "one.jja", "field Fp 5\ndim 3\nbasis e f z\nmul e f = z\n");
    let (code, out) = kv(&["check", s(&one_sided)]);
    assert_eq!(code, 1);
    assert!(out.contains("commutative=false\n"));
    let (code, _) = kv(&["check", s(&one_sided), "--symmetrize"]);
    assert_eq!(code, 0);

    let poly = write(&dir, "p.jja", "field Q\ndim 1\nmul b1 b1 = b1\n");
    let (code, out) = kv(&["check", s(&poly)]);
    assert_eq!(code, 1);
    assert!(out.contains("jacobi_defects=1\nfirst_jacobi_defect=b1,b1,b1\n"), "{out}");
}

#[test]
fn analyze_heisenberg() {
    let dir = TempDir::new().unwrap();
    let h3 = write(&dir, "h3.jja", H3);
    let (code, out) = kv(&["analyze", s(&h3)]);
    assert_eq!(code, 0);
    for line in ["nilpotency_step=3", "center_dim=1", "metabelian=true", "center=z", "lower_central_series=3,1,0"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in {out}");
    }
}

#[test]
fn coflag_cohomology_of_heisenberg() {
    let dir = TempDir::new().unwrap();
    let h3 = write(&dir, "h3.jja", H3);
    let (code, out) = kv(&["cohomology", s(&h3), "--coflag"]);
    assert_eq!(code, 0);
    assert!(out.contains("lambda_count=1\n"));
    assert!(out.contains("\nh2_dim=2\n"));
    let (_, out) = kv(&["cohomology", s(&h3), "--fiber", "1"]);
    assert!(out.contains("h2_dim=2\n"));
}

#[test]
fn coflag_writes_representatives_and_census() {
    let dir = TempDir::new().unwrap();
    let h3 = write(&dir, "h3.jja", H3);
    let out_dir = dir.path().join("reps");
    let (code, out) = kv(&["coflag", s(&h3), "--census", "--out-dir", s(&out_dir)]);
    assert_eq!(code, 0);
    assert!(out.contains("representatives_written=3\n"));
    assert!(out.contains("census.data=125\ncensus.gh2_classes=25\ncensus.cp_classes=4\n"), "{out}");
    for i in 1..=4 {
        let rep = out_dir.join(format!("cp_{i}.jja"));
        let (code, _) = kv(&["check", s(&rep)]);
        assert_eq!(code, 0);
    }
    // Distinct census representatives are pairwise non-isomorphic.
    let (code, _) = kv(&["iso", s(&out_dir.join("cp_2.jja")), s(&out_dir.join("cp_3.jja"))]);
    assert_eq!(code, 1);
}

#[test]
fn composite_modulus_is_an_error() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.jja", "field Fp 4\ndim 1\n");
    let o = jja(&["check", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("modulus 4"));
    let unknown = write(&dir, "u.jja", "field Q\ndim 1\nmul b1 b2 = b1\n");
    let o = jja(&["check", s(&unknown)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`b2` at 3:8"));
}

#[test]
fn iso_exit_codes() {
    let dir = TempDir::new().unwrap();
    let h3 = write(&dir, "h3.jja", H3);
    let moved = write(&dir, "h3b.jja", "field Fp 5\ndim 3\nbasis a b c\nmul a b = 2*c\nmul b a = 2*c\n");
    let a12 = write(&dir, "a12.jja", "field Fp 5\ndim 3\nmul b1 b1 = b2\n");
    let (code, out) = kv(&["iso", s(&h3), s(&moved)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isomorphic=yes\nmap="));
    let (code, out) = kv(&["iso", s(&h3), s(&a12)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("isomorphic=no\n"));
    let (code, out) = kv(&["iso", s(&h3), s(&moved), "--cap", "0"]);
    assert_eq!((code, out.as_str()), (2, "isomorphic=unknown\n"));
}

#[test]
fn aut_and_frobenius_on_a12() {
    let dir = TempDir::new().unwrap();
    let a12 = write(&dir, "a12.jja", "field Fp 5\ndim 2\nmul b1 b1 = b2\n");
    let (_, out) = kv(&["aut", s(&a12)]);
    assert_eq!(out, "order=20\nclosed=true\n");
    let (_, out) = kv(&["frobenius", s(&a12)]);
    assert!(out.contains("verdict=frobenius\n") && out.contains("invariant=true\n"), "{out}");
    let h3 = write(&dir, "h3.jja", H3);
    let (_, out) = kv(&["frobenius", s(&h3)]);
    assert!(out.contains("verdict=not_frobenius\nradical_witness=z\n"), "{out}");
}

#[test]
fn qybe_checks_and_exports() {
    let dir = TempDir::new().unwrap();
    let h3 = write(&dir, "h3.jja", H3);
    let r = dir.path().join("R.txt");
    let (_, out) = kv(&["qybe", s(&h3), "--alpha", "2", "--central", "3*z", "--export", s(&r)]);
    assert!(out.contains("qybe=true\nresidual_rank=0\n"), "{out}");
    let text = fs::read_to_string(&r).unwrap();
    assert_eq!(text.lines().count(), 9);
    // Column e⊗f: R(e⊗f) = 2 f⊗e + 3 z⊗z.
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(' ').collect()).collect();
    assert_eq!(rows[3][1], "2");
    assert_eq!(rows[8][1], "3");

    let poly = write(
        &dir,
        "x4.jja",
        "field Fp 5\ndim 3\nbasis x x2 x3\nmul x x = x2\nmul x x2 = x3\nmul x2 x = x3\n",
    );
    let (_, out) = kv(&["qybe", s(&poly)]);
    assert!(out.contains("qybe=false\n"), "{out}");
    let (_, out) = kv(&["qybe", s(&h3), "--sweep"]);
    assert!(out.contains("consistent=true\n"), "{out}");
}

#[test]
fn crossed_sample_round_trip_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let base = write(&dir, "a.jja", "field Fp 3\ndim 2\nbasis e1 e2\nmul e1 e1 = e2\n");
    let jjx = dir.path().join("s.jjx");
    let (code, _) = kv(&["crossed", "--sample-over", s(&base), "--fiber", "2", "-o", s(&jjx), "--seed", "4"]);
    assert_eq!(code, 0);
    let first = fs::read_to_string(&jjx).unwrap();
    assert!(first.contains("base a.jja\n"));
    kv(&["crossed", "--sample-over", s(&base), "--fiber", "2", "-o", s(&jjx), "--seed", "4"]);
    assert_eq!(fs::read_to_string(&jjx).unwrap(), first);

    let product = dir.path().join("p.jja");
    let (code, out) = kv(&["crossed", s(&jjx), "--roundtrip", "--product", s(&product)]);
    assert_eq!(code, 0);
    assert!(out.contains("valid=true\n") && out.contains("roundtrip=cohomologous\n"), "{out}");
    assert_eq!(kv(&["check", s(&product)]).0, 0);

    let bad = write(&dir, "bad.jjx", "base a.jja\nfiber 1\ntheta e1 e2 = v1\n");
    let (code, out) = kv(&["crossed", s(&bad)]);
    assert_eq!(code, 1);
    assert!(out.contains("failing_axioms=J1\n"), "{out}");
}

#[test]
fn seed_environment_overrides_flag() {
    let dir = TempDir::new().unwrap();
    let base = write(&dir, "a.jja", "field Fp 3\ndim 2\nbasis e1 e2\nmul e1 e1 = e2\n");
    let run = |seed: &str, env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_jja"));
        c.args(["crossed", "--sample-over", s(&base), "--fiber", "2", "--seed", seed]);
        match env {
            Some(v) => c.env("JJ_SEED", v),
            None => c.env_remove("JJ_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert_eq!(run("1", Some("7")), run("7", None));
    assert_eq!(run("1", None), run("1", None));
}

#[test]
fn census_subcommands() {
    let (_, out) = kv(&["census", "homothety", "--field", "F5", "--dim", "2"]);
    assert!(out.starts_with("classes=4\n"), "{out}");
    let (_, out) = kv(&["census", "codim1", "--field", "Fp 3", "--dim", "2"]);
    assert!(out.contains("formula_classes=17\norbit_classes=17\nagree=true\n"), "{out}");
    let (_, out) = kv(&["census", "jj", "--field", "F3", "--dim", "2", "--jobs", "2"]);
    assert!(out.contains("undecided_pairs=0\n"), "{out}");
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn family_outputs_match_golden_files() {
    let cases: &[(&str, &[&str])] = &[
        ("abelian_3_q", &["abelian", "--n", "3", "--field", "Q"]),
        ("heisenberg_1_f5", &["heisenberg", "--n", "1", "--field", "F5"]),
        ("heisenberg_2_q", &["heisenberg", "--n", "2", "--field", "Q"]),
        ("v_f_v0_f3", &["v_f_v0", "--f", "0,1;0,0", "--v0", "1,0", "--field", "F3"]),
        ("a_xyz_f5", &["a_xyz", "--x", "1,2;2,0", "--y", "0,1;1,3", "--z", "1,0;4,2", "--field", "F5"]),
        ("a12_f5", &["a12", "--field", "F5"]),
        ("heis_abc_f5", &["heis_abc", "--a", "1", "--b", "1", "--c", "0", "--field", "F5"]),
        ("a_theta_q", &["a_theta", "--theta", "1,1;1,0", "--field", "Q"]),
        ("j_t_3_2_q", &["j_t", "--n", "3", "--t", "2", "--field", "Q"]),
        ("kn_x_v0_f3", &["kn_x_v0", "--x", "0,1;0,0", "--v0", "1,0", "--field", "F3"]),
    ];
    for (name, args) in cases {
        let mut all = vec!["family"];
        all.extend_from_slice(args);
        let o = jja(&all);
        assert!(o.status.success(), "{name}");
        let expected = fs::read_to_string(golden_dir().join(format!("{name}.jja"))).unwrap();
        assert_eq!(stdout(&o), expected, "{name}");
        let path = golden_dir().join(format!("{name}.jja"));
        assert_eq!(kv(&["check", s(&path)]).0, 0, "{name}");
    }
}

#[test]
fn family_parameter_errors() {
    let o = jja(&["family", "a_theta", "--theta", "1,2;0,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not symmetric"));
    let o = jja(&["family", "kn_x_v0", "--x", "1,0;0,1", "--v0", "0,0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = jja(&["family", "heisenberg"]);
    assert_eq!(o.status.code(), Some(3));
}
