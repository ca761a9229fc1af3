//! The `synalg` binary end to end: exit codes, determinism, configuration
//! precedence and every witness id.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use synalg::io::write_element;
use synalg::random::{self, rng};
use synalg::{Element, Model, ModelShape};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn synalg(args: &[&str]) -> Output {
    synalg_env(args, &[])
}

fn synalg_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_synalg"));
    for var in ["SYNALG_SEED", "SYNALG_TRIALS", "SYNALG_SHAPE", "SYNALG_SUITES", "SYNALG_TOL", "SYNALG_CONFIG"] {
        cmd.env_remove(var);
    }
    cmd.args(args).envs(env.iter().copied()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, a: &Element) -> String {
    let path: PathBuf = dir.join(name);
    write_element(&path, a).unwrap();
    path.to_str().unwrap().to_string()
}

fn check_lines_pass(text: &str) {
    let checks: Vec<&str> = text.lines().filter(|l| l.starts_with("CHECK ")).collect();
    assert!(!checks.is_empty(), "no CHECK lines in\n{text}");
    for l in checks {
        let fields: Vec<&str> = l.split_whitespace().collect();
        assert_eq!(fields.len(), 5, "{l}");
        assert_eq!(fields[4], "PASS", "{l}");
        let (r, t): (f64, f64) = (fields[2].parse().unwrap(), fields[3].parse().unwrap());
        assert!(r <= t, "{l}");
    }
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--seed", "42", "--shape", "3", "--suites", "symmetry"];
    let (a, b) = (synalg(&args), synalg(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = synalg(&["verify", "--seed", "43", "--shape", "3", "--suites", "symmetry"]);
    assert_ne!(a.stdout, other.stdout);
    assert!(stdout(&a).lines().all(|l| l.starts_with("CHECK symmetry.") || l.starts_with("SUMMARY")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(synalg(&["verify", "--suites", "lattice,nonsense"]).status.code(), Some(2));
    assert_eq!(synalg(&["verify", "--shape", "2,0"]).status.code(), Some(2));
    assert_eq!(synalg(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(synalg(&["verify", "--tol", "nonsense=1"]).status.code(), Some(2));
    assert_eq!(synalg(&["witness", "thm5.8", "/no/such/e.mat", "/no/such/f.mat"]).status.code(), Some(2));
    assert_eq!(synalg(&["witness", "thm1.1", &fixture("e.mat"), &fixture("f.mat")]).status.code(), Some(2));
    assert_eq!(synalg(&["witness", "thm5.8", &fixture("e.mat")]).status.code(), Some(2));
    assert_eq!(synalg(&["spectra", &fixture("mo2.oml")]).status.code(), Some(2));
    assert_eq!(synalg(&[]).status.code(), Some(2));
    assert_eq!(synalg(&["--version"]).status.code(), Some(0));
}

#[test]
fn failing_checks_exit_one() {
    // a tolerance no residual can meet
    let o = synalg(&["verify", "--shape", "3", "--suites", "synalg", "--trials", "2", "--tol", "proj=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(" FAIL"));
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 5\ntrials = 2\nshape = [2, 1]\nsuites = [\"lattice\"]\n[tol]\nproj = 1e-7\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = synalg(&["verify", "--config", cfg]);
    assert_eq!(from_file.status.code(), Some(0));
    let explicit = synalg(&["verify", "--seed", "5", "--trials", "2", "--shape", "2,1", "--suites", "lattice", "--tol", "proj=1e-7"]);
    assert_eq!(from_file.stdout, explicit.stdout);
    assert!(stdout(&from_file).contains(" 1.0e-7 PASS"));

    // environment beats the file, flags beat the environment
    let env = synalg_env(&["verify", "--config", cfg], &[("SYNALG_SEED", "6")]);
    let seed6 = synalg(&["verify", "--seed", "6", "--trials", "2", "--shape", "2,1", "--suites", "lattice", "--tol", "proj=1e-7"]);
    assert_eq!(env.stdout, seed6.stdout);
    let flag = synalg_env(&["verify", "--config", cfg, "--seed", "5"], &[("SYNALG_SEED", "6")]);
    assert_eq!(flag.stdout, from_file.stdout);

    std::fs::write(dir.path().join("bad.toml"), "seeds = 1\n").unwrap();
    let bad = dir.path().join("bad.toml");
    assert_eq!(synalg(&["verify", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn worked_example_witness() {
    let o = synalg(&["witness", "thm5.8", &fixture("e.mat"), &fixture("f.mat")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# s\nshape 2\n"));
    check_lines_pass(&text);
    // the reflection through the bisector of the two lines
    let row: Vec<f64> = text.lines().nth(2).unwrap().split_whitespace().map(|w| w.parse().unwrap()).collect();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((row[0] - h).abs() < 1e-12 && (row[1] - h).abs() < 1e-12, "{row:?}");

    let o = synalg(&["witness", "thm8.5", &fixture("e.mat"), &fixture("f.mat")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# h\n") && text.contains("# s\n"));
    assert!(text.contains("CHECK witness.upper ") && text.contains("CHECK witness.lower "));
    check_lines_pass(&text);
}

#[test]
fn every_witness_id() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let shape = ModelShape::new(&[3, 2]).unwrap();
    let m = Model::new(shape.clone());
    let mut r = rng(11);
    let e = random::projection_with_ranks(&mut r, &shape, &[1, 1]).unwrap();
    let f = random::projection_with_ranks(&mut r, &shape, &[2, 1]).unwrap();
    let s = random::symmetry(&mut r, &shape).unwrap();
    let (ef, ff, sf) = (write(d, "e.mat", &e), write(d, "f.mat", &f), write(d, "s.mat", &s));

    let ws = loop {
        let ws = random::exchanged_family(&mut r, &Model::new(ModelShape::new(&[4, 3]).unwrap()), 3).unwrap();
        if ws.len() == 3 {
            break ws;
        }
    };
    let mut family = Vec::new();
    for (i, w) in ws.iter().enumerate() {
        family.push(write(d, &format!("e{i}.mat"), w.e()));
        family.push(write(d, &format!("s{i}.mat"), w.s()));
    }

    let h = random::central(&mut r, &shape);
    let dd = write(d, "d.mat", &m.projection(h.quad(&e).unwrap()).unwrap());

    let fam: Vec<&str> = family.iter().map(String::as_str).collect();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("thm5.8", vec![&ef, &ff]),
        ("thm5.9i", vec![&ef, &ff]),
        ("thm5.9ii", vec![&ef, &ff]),
        ("thm5.11", vec![&ef, &sf]),
        ("thm5.12", vec![&ef, &sf]),
        ("lem5.6", fam[..4].to_vec()),
        ("thm5.15", fam.clone()),
        ("thm8.3", vec![&ef, &ff]),
        ("thm8.5", vec![&ef, &ff]),
        ("thm8.6", vec![&ef, &dd]),
    ];
    for (id, files) in cases {
        let mut args = vec!["witness", id];
        args.extend(files);
        let o = synalg(&args);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&o.stderr));
        check_lines_pass(&stdout(&o));
    }

    // complements: e and a projection with the complementary block ranks
    let g = random::projection_with_ranks(&mut r, &shape, &[2, 1]).unwrap();
    let gf = write(d, "g.mat", &g);
    let o = synalg(&["witness", "thm5.9iii", &ef, &gf]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    check_lines_pass(&stdout(&o));

    // a broken precondition is a domain error
    let o = synalg(&["witness", "thm5.9iii", &ef, &ef]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn spectra_examples() {
    let o = synalg(&["spectra", &fixture("identity.mat")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let jumps: Vec<&str> = text.lines().filter(|l| l.starts_with("jump ")).collect();
    assert_eq!(jumps.len(), 1);
    assert!(jumps[0].starts_with("jump 1.0000000000000000e0 rank 3"));

    let o = synalg(&["spectra", &fixture("diag.mat")]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("jump ")).count(), 2);
    assert!(text.contains("lower -1.0000000000000000e0") && text.contains("upper 2.0000000000000000e0"));

    let dir = tempfile::tempdir().unwrap();
    let a = random::symmetric(&mut rng(4), &ModelShape::square(4).unwrap());
    let path = write(dir.path(), "a.mat", &a);
    let o = synalg(&["spectra", &path]);
    assert_eq!(o.status.code(), Some(0));
    check_lines_pass(&stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("jump ")).count(), 4);
}

#[test]
fn lattice_compare_and_equiv() {
    let (p, q) = (fixture("p22.mat"), fixture("q22.mat"));
    let o = synalg(&["lattice", &p, &q]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("gamma p0 [1,1]") && text.contains("gamma p1 [1,0]"));
    assert!(text.contains("join p0 p1 ranks [2,1]") && text.contains("meet p0 p1 ranks [0,0]"));
    assert!(text.contains("sasaki p0 p1 ranks [1,0]"));

    let o = synalg(&["compare", &p, &q]);
    assert_eq!(o.status.code(), Some(0));
    check_lines_pass(&stdout(&o));

    // p has ranks [1,1], q has [1,0]
    let o = synalg(&["equiv", &p, &q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not equivalent: block 1"));
    let o = synalg(&["equiv", &fixture("e.mat"), &fixture("f.mat")]);
    assert_eq!(o.status.code(), Some(0));
    check_lines_pass(&stdout(&o));
}

#[test]
fn oml_commands() {
    let o = synalg(&["oml", "verify", &fixture("mo2.oml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("distributive     FAILS"));
    assert_eq!(synalg(&["oml", "verify", &fixture("hexagon.oml")]).status.code(), Some(1));
    assert_eq!(synalg(&["oml", "verify", &fixture("boolean2.oml")]).status.code(), Some(0));

    let o = synalg(&["oml", "report", &fixture("mo2.oml"), "a", "b"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("compatible false"));
    assert!(text.contains("sasaki a b = a\n"));
    assert_eq!(synalg(&["oml", "report", &fixture("mo2.oml"), "a", "zz"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let o = synalg(&["oml", "gen", "mo", "4"]);
    let path = dir.path().join("mo4.oml");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = synalg(&["oml", "verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("elements 10\n"));
}
