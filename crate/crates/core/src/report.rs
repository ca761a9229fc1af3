//! Line-oriented check reports.
//!
//! Every line reads `CHECK <suite>.<name> <residual> <tol> PASS|FAIL`. A
//! check seen several times (once per trial) keeps its worst residual, and
//! lines keep the order in which checks first appeared, so a report only
//! depends on its inputs.

use std::fmt;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportLine {
    pub suite: String,
    pub name: String,
    pub residual: f64,
    pub tol: f64,
}

impl ReportLine {
    /// NaN residuals fail.
    pub fn passed(&self) -> bool {
        self.residual <= self.tol
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "CHECK {}.{} {:.3e} {:.1e} {verdict}", self.suite, self.name, self.residual, self.tol)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a residual, keeping the worst one per `(suite, name)`.
    /// Whitespace in names becomes `_` and parentheses are dropped, so a
    /// line always splits into five fields.
    pub fn record(&mut self, suite: &str, name: &str, residual: f64, tol: f64) {
        let name = clean_name(name);
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        match self.lines.iter_mut().find(|l| l.suite == suite && l.name == name) {
            Some(l) => {
                l.residual = l.residual.max(residual);
                l.tol = l.tol.min(tol);
            }
            None => self.lines.push(ReportLine { suite: suite.into(), name, residual, tol }),
        }
    }

    /// A boolean property as residual 0 (holds) or 1 (fails) against 0.
    pub fn flag(&mut self, suite: &str, name: &str, holds: bool) {
        self.record(suite, name, if holds { 0.0 } else { 1.0 }, 0.0);
    }

    /// A computed residual; a construction error counts as an infinite one.
    pub fn result(&mut self, suite: &str, name: &str, residual: Result<f64>, tol: f64) {
        self.record(suite, name, residual.unwrap_or(f64::INFINITY), tol);
    }

    pub fn merge(&mut self, other: Report) {
        for l in other.lines {
            self.record(&l.suite, &l.name, l.residual, l.tol);
        }
    }

    pub fn lines(&self) -> &[ReportLine] {
        &self.lines
    }

    pub fn get(&self, suite: &str, name: &str) -> Option<&ReportLine> {
        self.lines.iter().find(|l| l.suite == suite && l.name == name)
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(ReportLine::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.passed())
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

fn clean_name(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for ch in name.chars() {
        match ch {
            '(' | ')' | ',' => {}
            c if c.is_whitespace() => {
                if !out.ends_with('_') {
                    out.push('_');
                }
            }
            c => out.push(c),
        }
    }
    out
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        let failed = self.failures().count();
        write!(f, "SUMMARY {} checks, {} failed", self.lines.len(), failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn worst_residual_and_order() {
        let mut r = Report::new();
        r.record("a", "x", 1e-12, 1e-8);
        r.record("a", "y", 1e-3, 1e-8);
        r.record("a", "x", 1e-10, 1e-8);
        r.flag("b", "z", true);
        assert_eq!(r.lines()[0].residual, 1e-10);
        assert_eq!(r.lines()[1].name, "y");
        assert!(!r.passed());
        assert_eq!(r.to_string().lines().next().unwrap(), "CHECK a.x 1.000e-10 1.0e-8 PASS");
        assert!(r.to_string().ends_with("SUMMARY 3 checks, 1 failed"));
    }

    #[test]
    fn errors_and_nan_fail() {
        let mut r = Report::new();
        r.result("a", "e", Err(Error::ZeroInput), 1.0);
        r.record("a", "n", f64::NAN, 1.0);
        assert_eq!(r.failures().count(), 2);
    }

    #[test]
    fn names_have_no_spaces() {
        let mut r = Report::new();
        r.flag("oml", "mo2.sasaki (iv)", true);
        assert_eq!(r.lines()[0].name, "mo2.sasaki_iv");
    }
}
