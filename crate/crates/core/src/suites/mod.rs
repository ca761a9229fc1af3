//! Seeded randomized property suites.
//!
//! Each suite runs `trials` independent trials, every one with its own RNG
//! seeded from `(seed, suite, trial)`. Trials may run in parallel; their
//! reports are merged in trial order, so the output only depends on the
//! configuration.

mod comparability;
mod lattice;
mod oml;
mod symmetry;
mod synalg;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::random::{self, SeededRng};
use crate::report::Report;
use crate::shape::ModelShape;
use crate::tol::Tolerances;

pub use comparability::invariant_is_central_suite;
pub use lattice::gamma_props_suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Synalg,
    Lattice,
    Symmetry,
    Comparability,
    Oml,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Synalg, Suite::Lattice, Suite::Symmetry, Suite::Comparability, Suite::Oml];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Synalg => "synalg",
            Suite::Lattice => "lattice",
            Suite::Symmetry => "symmetry",
            Suite::Comparability => "comparability",
            Suite::Oml => "oml",
        }
    }

    /// Parses a comma-separated list; `all` expands to every suite.
    /// Duplicates are dropped, order is kept.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for word in text.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            let add: Vec<Suite> = if word == "all" { Suite::ALL.to_vec() } else { vec![word.parse()?] };
            for s in add {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownSuite(text.to_string()));
        }
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub shape: ModelShape,
    pub tol: Tolerances,
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 50,
            shape: ModelShape::new(&[2, 3]).expect("valid shape"),
            tol: Tolerances::default(),
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl SuiteConfig {
    pub fn model(&self) -> Model {
        Model::with_tolerances(self.shape.clone(), self.tol)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn run(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut report = Report::new();
    for &suite in &cfg.suites {
        report.merge(run_suite(cfg, suite));
    }
    Ok(report)
}

pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Report {
    match suite {
        Suite::Synalg => synalg::run(cfg),
        Suite::Lattice => lattice::run(cfg),
        Suite::Symmetry => symmetry::run(cfg),
        Suite::Comparability => comparability::run(cfg),
        Suite::Oml => oml::run(cfg),
    }
}

/// A check recorder bound to one suite name.
pub(crate) struct Checks<'a> {
    pub suite: &'static str,
    pub report: &'a mut Report,
}

impl Checks<'_> {
    pub fn record(&mut self, name: &str, residual: f64, tol: f64) {
        self.report.record(self.suite, name, residual, tol);
    }

    pub fn flag(&mut self, name: &str, holds: bool) {
        self.report.flag(self.suite, name, holds);
    }

    pub fn result(&mut self, name: &str, residual: Result<f64>, tol: f64) {
        self.report.result(self.suite, name, residual, tol);
    }

    /// A boolean property whose evaluation may fail; a failure counts
    /// against it.
    pub fn flag_result(&mut self, name: &str, holds: Result<bool>) {
        self.flag(name, holds.unwrap_or(false));
    }
}

/// Runs `trial` for every trial index in parallel and merges the reports in
/// order. An error escaping a trial is recorded as `<suite>.trial`.
pub(crate) fn trials<F>(cfg: &SuiteConfig, suite: &'static str, trial: F) -> Report
where
    F: Fn(&Model, &mut SeededRng, &mut Checks<'_>, usize) -> Result<()> + Sync,
{
    let model = cfg.model();
    let parts: Vec<Report> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = random::rng(random::derive_seed(cfg.seed, suite, t as u64));
            let mut report = Report::new();
            let mut checks = Checks { suite, report: &mut report };
            let outcome = trial(&model, &mut rng, &mut checks, t);
            checks.flag("trial", outcome.is_ok());
            report
        })
        .collect();
    let mut out = Report::new();
    for r in parts {
        out.merge(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(Suite::parse_list("oml, synalg,oml").unwrap(), vec![Suite::Oml, Suite::Synalg]);
        assert!(matches!(Suite::parse_list("synalg,bogus"), Err(Error::UnknownSuite(s)) if s == "bogus"));
        assert!(Suite::parse_list("").is_err());
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = SuiteConfig { trials: 0, ..SuiteConfig::default() };
        assert!(run(&cfg).is_err());
    }
}
