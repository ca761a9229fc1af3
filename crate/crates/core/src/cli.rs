//! The `synalg` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! construction's precondition does not hold, 2 for usage and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::forge::{ExchangeWitness, PerspectivityWitness};
use crate::io::{format_element, read_element};
use crate::model::Model;
use crate::oml::{FiniteOml, OrthoPoset};
use crate::projection::Projection;
use crate::report::Report;
use crate::shape::ModelShape;
use crate::suites::{self, Suite, SuiteConfig};
use crate::tol::Tolerances;

#[derive(Debug, Parser)]
#[command(name = "synalg", version, about = "Synaptic algebras of symmetric block-diagonal matrices")]
struct Cli {
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", global = true, env = "SYNALG_TOL", value_delimiter = ',', value_name = "NAME=VALUE")]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the randomized property suites.
    Verify(VerifyArgs),
    /// Build a witness from matrix files and check its contract.
    Witness {
        /// One of thm5.8, thm5.9i, thm5.9ii, thm5.9iii, thm5.11, thm5.12,
        /// lem5.6, thm5.15, thm8.3, thm8.5, thm8.6.
        id: String,
        files: Vec<PathBuf>,
    },
    /// Spectral resolution of an element.
    Spectra { file: PathBuf },
    /// Covers, meets, joins and Sasaki images of projection files.
    Lattice {
        files: Vec<PathBuf>,
        /// Print matrices, not only block ranks.
        #[arg(long)]
        matrices: bool,
    },
    /// Generalized comparability of two projections.
    Compare { e: PathBuf, f: PathBuf },
    /// A symmetry chain carrying `e` onto `f`, if the block ranks agree.
    Equiv { e: PathBuf, f: PathBuf },
    /// Finite orthomodular lattices.
    Oml {
        #[command(subcommand)]
        command: OmlCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OmlCommand {
    /// Check the axioms of a lattice file.
    Verify { file: PathBuf },
    /// Compatibility, Sasaki images and perspectivity of two elements.
    Report { file: PathBuf, p: String, q: String },
    /// Print a generated lattice in the file format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// The Boolean algebra with `n` atoms.
    Boolean { n: usize },
    /// `MO_n`: `n` incompatible pairs of atoms.
    Mo { n: usize },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, env = "SYNALG_SEED")]
    seed: Option<u64>,
    #[arg(long, env = "SYNALG_TRIALS")]
    trials: Option<usize>,
    /// Block sizes, e.g. `2,3`.
    #[arg(long, env = "SYNALG_SHAPE")]
    shape: Option<String>,
    /// Comma-separated suite names or `all`.
    #[arg(long, env = "SYNALG_SUITES")]
    suites: Option<String>,
    /// TOML file with `seed`, `trials`, `shape`, `suites` and a `[tol]`
    /// table; flags and environment variables take precedence.
    #[arg(long, env = "SYNALG_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    seed: Option<u64>,
    trials: Option<usize>,
    shape: Option<ListOrString<usize>>,
    suites: Option<ListOrString<String>>,
    tol: Option<Tolerances>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ListOrString<T> {
    List(Vec<T>),
    Text(String),
}

impl ConfigFile {
    fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))
    }
}

impl VerifyArgs {
    fn config(&self, tol_overrides: &[String]) -> Result<SuiteConfig> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let mut cfg = SuiteConfig::default();
        if let Some(seed) = self.seed.or(file.seed) {
            cfg.seed = seed;
        }
        if let Some(trials) = self.trials.or(file.trials) {
            cfg.trials = trials;
        }
        match (&self.shape, file.shape) {
            (Some(s), _) => cfg.shape = s.parse()?,
            (None, Some(ListOrString::Text(s))) => cfg.shape = s.parse()?,
            (None, Some(ListOrString::List(blocks))) => cfg.shape = ModelShape::new(&blocks)?,
            (None, None) => {}
        }
        match (&self.suites, file.suites) {
            (Some(s), _) => cfg.suites = Suite::parse_list(s)?,
            (None, Some(ListOrString::Text(s))) => cfg.suites = Suite::parse_list(&s)?,
            (None, Some(ListOrString::List(names))) => cfg.suites = Suite::parse_list(&names.join(","))?,
            (None, None) => {}
        }
        if let Some(t) = file.tol {
            cfg.tol = t;
        }
        for o in tol_overrides {
            cfg.tol.apply_override(o)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs the command line on `args` (program name first), writing to the
/// process's stdout and stderr. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Parse { .. }
        | Error::Config(_)
        | Error::InvalidShape(_)
        | Error::UnknownSuite(_)
        | Error::UnknownTolerance(_)
        | Error::UnknownWitness(_)
        | Error::UnknownElement(_)
        | Error::ShapeMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::OffBlock { .. }
        | Error::NotSymmetric { .. } => 2,
        _ => 1,
    }
}

fn verdict(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let mut tol = Tolerances::default();
    if let Command::Verify(_) = cli.command {
        // applied on top of the config file instead
    } else {
        for o in &cli.tol {
            tol.apply_override(o)?;
        }
    }
    match cli.command {
        Command::Verify(args) => {
            let cfg = args.config(&cli.tol)?;
            let report = suites::run(&cfg)?;
            writeln!(out, "{report}")?;
            Ok(verdict(&report))
        }
        Command::Witness { id, files } => witness(&id, &files, tol, out),
        Command::Spectra { file } => spectra(&file, tol, out),
        Command::Lattice { files, matrices } => lattice(&files, matrices, tol, out),
        Command::Compare { e, f } => witness("thm8.5", &[e, f], tol, out),
        Command::Equiv { e, f } => equiv(&e, &f, tol, out),
        Command::Oml { command } => oml(command, out),
    }
}

/// Reads elements that must share one shape, and the model on that shape.
fn load(files: &[PathBuf], tol: Tolerances) -> Result<(Model, Vec<Element>)> {
    let elems: Vec<Element> = files.iter().map(|f| read_element(f, &tol)).collect::<Result<_>>()?;
    let shape = elems.first().map(|a| a.shape().clone()).ok_or_else(|| Error::Config("no input files".into()))?;
    for a in &elems {
        a.same_shape(&Element::zero(&shape))?;
    }
    Ok((Model::with_tolerances(shape, tol), elems))
}

fn expect_files(id: &str, files: &[PathBuf], n: usize) -> Result<()> {
    if files.len() != n {
        return Err(Error::Config(format!("`{id}` takes {n} file(s), got {}", files.len())));
    }
    Ok(())
}

fn print(out: &mut dyn Write, label: &str, a: &Element) -> Result<()> {
    writeln!(out, "# {label}")?;
    write!(out, "{}", format_element(a))?;
    Ok(())
}

fn projections(m: &Model, elems: Vec<Element>) -> Result<Vec<Projection>> {
    elems.into_iter().map(|a| m.projection(a)).collect()
}

/// Alternating `e_i`, `s_i` files: exchanged pairs `(e_i, s_i e_i s_i)`.
fn exchanged_pairs(m: &Model, elems: Vec<Element>) -> Result<Vec<ExchangeWitness>> {
    if elems.is_empty() || !elems.len().is_multiple_of(2) {
        return Err(Error::Config("expected pairs of projection and symmetry files".into()));
    }
    let mut it = elems.into_iter();
    let mut out = Vec::new();
    while let (Some(e), Some(s)) = (it.next(), it.next()) {
        let e = m.projection(e)?;
        let s = m.symmetry(s)?;
        let f = m.projection(s.apply(&e))?;
        out.push(ExchangeWitness::new(s, e, f, m)?);
    }
    Ok(out)
}

fn witness(id: &str, files: &[PathBuf], tol: Tolerances, out: &mut dyn Write) -> Result<i32> {
    const IDS: [&str; 11] = ["thm5.8", "thm5.9i", "thm5.9ii", "thm5.9iii", "thm5.11", "thm5.12", "lem5.6", "thm5.15", "thm8.3", "thm8.5", "thm8.6"];
    if !IDS.contains(&id) {
        return Err(Error::UnknownWitness(id.to_string()));
    }
    let (m, elems) = load(files, tol)?;
    let t = m.tol().proj;
    let mut r = Report::new();
    let suite = "witness";
    match id {
        "thm5.8" => {
            expect_files(id, files, 2)?;
            let [e, f] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
            let s = m.exchange_efe_fef(&e, &f)?;
            print(out, "s", &s)?;
            r.record(suite, "exchange_efe_fef", s.apply(&e.quad_unchecked(&f)).dist(&f.quad_unchecked(&e)), t);
            r.record(suite, "symmetry", s.residual(), t);
        }
        "thm5.9i" | "thm5.9ii" => {
            expect_files(id, files, 2)?;
            let [e, f] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
            let w = if id == "thm5.9i" { m.sasaki_exchange(&e, &f)? } else { m.parallelogram_exchange(&e, &f)? };
            print(out, "s", w.s())?;
            print(out, "e1", w.e())?;
            print(out, "f1", w.f())?;
            r.record(suite, "exchange", w.residual(), t);
        }
        "thm5.9iii" => {
            expect_files(id, files, 2)?;
            let [e, f] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
            let s = m.complement_exchange(&e, &f)?;
            print(out, "s", &s)?;
            r.record(suite, "exchange_with_complement", s.apply(&e).dist(&f.ortho()), t);
        }
        "thm5.11" | "thm5.12" => {
            expect_files(id, files, 4 / 2)?;
            let w = exchanged_pairs(&m, elems)?.remove(0);
            let pw = m.strong_perspectivity(&w)?;
            print(out, "f", w.f())?;
            if id == "thm5.11" {
                print(out, "k", &pw.complement)?;
                complement_lines(&m, &mut r, &pw)?;
            } else {
                let lifted = m.lift_perspectivity(&pw)?;
                let (s1, s2) = m.perspective_to_chain(&lifted)?;
                print(out, "k", &lifted.complement)?;
                print(out, "s1", &s1)?;
                print(out, "s2", &s2)?;
                complement_lines(&m, &mut r, &lifted)?;
                r.record(suite, "chain", s2.apply(&s1.apply(w.e())).dist(w.f()), t);
                if m.orthogonal(w.e(), w.f()) {
                    let s = m.orthogonal_chain_to_symmetry(w.e(), w.f(), &s1, &s2)?;
                    print(out, "s", &s)?;
                    r.record(suite, "single_symmetry", s.apply(w.e()).dist(w.f()), t);
                }
            }
        }
        "lem5.6" => {
            expect_files(id, files, 4)?;
            let ws = exchanged_pairs(&m, elems)?;
            let s = m.finite_additivity(&ws[0], &ws[1])?;
            print(out, "s", &s)?;
            let e = ws[0].e().element() + ws[1].e().element();
            let f = ws[0].f().element() + ws[1].f().element();
            r.record(suite, "exchange_sums", s.apply(&e).dist(&f), t);
        }
        "thm5.15" => {
            let ws = exchanged_pairs(&m, elems)?;
            let fx = m.family_additivity_detailed(&ws)?;
            print(out, "s", &fx.symmetry)?;
            let e = ws.iter().fold(m.zero(), |acc, w| acc + w.e().element());
            let f = ws.iter().fold(m.zero(), |acc, w| acc + w.f().element());
            r.record(suite, "exchange_sums", fx.symmetry.apply(&e).dist(&f), t);
            for (name, v) in &fx.identities {
                r.record(suite, &format!("identity {name}"), *v, t);
            }
        }
        "thm8.3" => {
            expect_files(id, files, 2)?;
            let [e, f] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
            let d = m.orthogonal_decomposition(&e, &f)?;
            for (label, x) in [("e1", &d.e1), ("e2", &d.e2), ("f1", &d.f1), ("f2", &d.f2)] {
                print(out, label, x)?;
            }
            print(out, "s", &d.s)?;
            r.record(suite, "decomposition", d.residual(&e, &f), t);
            r.flag(suite, "remainders_unrelated", !m.related(&d.e2, &d.f2));
        }
        "thm8.5" => {
            expect_files(id, files, 2)?;
            let [e, f] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
            let c = m.generalized_comparability(&e, &f)?;
            print(out, "h", &c.h)?;
            print(out, "s", &c.s)?;
            let (upper, lower) = c.residuals(&m)?;
            r.record(suite, "upper", upper, m.tol().psd);
            r.record(suite, "lower", lower, m.tol().psd);
            r.flag(suite, "central", m.is_central(&c.h));
            r.record(suite, "symmetry", c.s.residual(), t);
        }
        "thm8.6" => {
            expect_files(id, files, 2)?;
            let [p, d] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
            let c = m.relative_center_witness(&p, &d)?;
            print(out, "c", &c)?;
            r.record(suite, "meet", m.meet(&c, &p)?.dist(&d), t);
        }
        _ => unreachable!("checked against IDS"),
    }
    writeln!(out, "{r}")?;
    Ok(verdict(&r))
}

fn complement_lines(m: &Model, r: &mut Report, pw: &PerspectivityWitness) -> Result<()> {
    let c = m.perspectivity_residuals(pw)?;
    let t = m.tol().proj;
    r.record("witness", "e_join", c.e_join, t);
    r.record("witness", "f_join", c.f_join, t);
    r.record("witness", "e_meet", c.e_meet, t);
    r.record("witness", "f_meet", c.f_meet, t);
    Ok(())
}

fn spectra(file: &Path, tol: Tolerances, out: &mut dyn Write) -> Result<i32> {
    let (m, elems) = load(&[file.to_path_buf()], tol)?;
    let a = &elems[0];
    let res = m.spectral_resolution(a)?;
    writeln!(out, "lower {:.16e}", res.lower)?;
    writeln!(out, "upper {:.16e}", res.upper)?;
    for j in &res.jumps {
        writeln!(out, "jump {:.16e} rank {}", j.value, j.projection.rank())?;
    }
    let mut r = Report::new();
    r.record("spectra", "reconstruction", res.reconstruct().dist(a), m.tol().proj);
    writeln!(out, "{r}")?;
    Ok(verdict(&r))
}

fn ranks(p: &Projection) -> String {
    let r: Vec<String> = p.block_ranks().iter().map(|r| r.to_string()).collect();
    format!("[{}]", r.join(","))
}

fn lattice(files: &[PathBuf], matrices: bool, tol: Tolerances, out: &mut dyn Write) -> Result<i32> {
    let (m, elems) = load(files, tol)?;
    let ps = projections(&m, elems)?;
    for (i, f) in files.iter().enumerate() {
        writeln!(out, "p{i} {} ranks {}", f.display(), ranks(&ps[i]))?;
    }
    let show = |out: &mut dyn Write, label: String, p: &Projection| -> Result<()> {
        writeln!(out, "{label} ranks {}", ranks(p))?;
        if matrices {
            write!(out, "{}", format_element(p))?;
        }
        Ok(())
    };
    for (i, p) in ps.iter().enumerate() {
        let mask: Vec<&str> = m.projection_cover(p).mask().iter().map(|&b| if b { "1" } else { "0" }).collect();
        writeln!(out, "gamma p{i} [{}]", mask.join(","))?;
    }
    for i in 0..ps.len() {
        for j in 0..ps.len() {
            if i < j {
                show(out, format!("meet p{i} p{j}"), &m.meet(&ps[i], &ps[j])?)?;
                show(out, format!("join p{i} p{j}"), &m.join(&ps[i], &ps[j])?)?;
            }
            if i != j {
                show(out, format!("sasaki p{i} p{j}"), &m.sasaki(&ps[i], &ps[j])?)?;
            }
        }
    }
    Ok(0)
}

fn equiv(e: &Path, f: &Path, tol: Tolerances, out: &mut dyn Write) -> Result<i32> {
    let (m, elems) = load(&[e.to_path_buf(), f.to_path_buf()], tol)?;
    let [e, f] = <[Projection; 2]>::try_from(projections(&m, elems)?).expect("two files");
    match m.equal_rank_chain(&e, &f) {
        Ok(w) => {
            writeln!(out, "equivalent: chain of {} symmetries", w.chain.len())?;
            for (i, s) in w.chain.syms().iter().enumerate() {
                print(out, &format!("s{}", i + 1), s)?;
            }
            let mut r = Report::new();
            r.record("equiv", "chain", w.residual(), m.tol().proj);
            writeln!(out, "{r}")?;
            Ok(verdict(&r))
        }
        Err(Error::RankMismatch { block, left, right }) => {
            writeln!(out, "not equivalent: block {block} has rank {left} in e and {right} in f")?;
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn oml(command: OmlCommand, out: &mut dyn Write) -> Result<i32> {
    match command {
        OmlCommand::Verify { file } => {
            let report = OrthoPoset::load(&file)?.verify();
            writeln!(out, "{report}")?;
            Ok(if report.is_oml() { 0 } else { 1 })
        }
        OmlCommand::Report { file, p, q } => {
            let l = FiniteOml::load(&file)?;
            let (a, b) = (l.element(&p)?, l.element(&q)?);
            let r = l.pair_report(a, b);
            let name = |x: Option<usize>| x.map_or("none".to_string(), |x| l.name(x).to_string());
            writeln!(out, "compatible {}", r.compatible)?;
            writeln!(out, "sasaki {p} {q} = {}", l.name(r.sasaki_pq))?;
            writeln!(out, "sasaki {q} {p} = {}", l.name(r.sasaki_qp))?;
            writeln!(out, "common complement {}", name(r.perspective))?;
            writeln!(out, "common complement below join {}", name(r.strongly_perspective))?;
            Ok(0)
        }
        OmlCommand::Gen { family } => {
            let l = match family {
                GenFamily::Boolean { n } if n <= 12 => FiniteOml::boolean(n),
                GenFamily::Boolean { n } => return Err(Error::Config(format!("boolean {n}: at most 12 atoms"))),
                GenFamily::Mo { n } => FiniteOml::mo(n),
            };
            write!(out, "{}", l.to_text())?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("synalg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["verify", "--suites", "bogus"]).0, 2);
        assert_eq!(run_capture(&["verify", "--shape", "0"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["witness", "thm9.9", "a.mat"]).0, 2);
        assert_eq!(run_capture(&["spectra", "/nonexistent/x.mat"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn small_verify_passes() {
        let (code, out, _) = run_capture(&["verify", "--seed", "1", "--trials", "3", "--shape", "2", "--suites", "synalg,lattice"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().last().unwrap().starts_with("SUMMARY"));
        assert!(out.lines().all(|l| l.starts_with("CHECK synalg.") || l.starts_with("CHECK lattice.") || l.starts_with("SUMMARY")));
    }

    #[test]
    fn generated_lattices_parse_back() {
        let (code, text, _) = run_capture(&["oml", "gen", "mo", "3"]);
        assert_eq!(code, 0);
        assert_eq!(FiniteOml::parse(&text).unwrap().len(), 8);
    }
}
