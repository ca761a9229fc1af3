//! Finite orthomodular lattices given by tables, independent of any
//! matrix model.
//!
//! A file is loaded into an [`OrthoPoset`], which may violate any axiom.
//! [`OrthoPoset::verify`] reports on every axiom; a poset that passes
//! becomes a [`FiniteOml`] with precomputed meet and join tables, on which
//! the lattice theory (Sasaki maps, compatibility, center, intervals,
//! perspectivity) is evaluated by exhaustive search.

mod bridge;
mod gen;
mod parse;
mod theory;

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::random;

pub use bridge::ProjectionOml;
pub use theory::{PairReport, SixPiece};

/// The closure of `ps` under the lattice operations, capped at
/// [`EXHAUSTIVE_CAP`] elements.
pub fn oml_from_projections(model: &crate::model::Model, ps: &[crate::projection::Projection]) -> Result<ProjectionOml> {
    ProjectionOml::close(model, ps, EXHAUSTIVE_CAP)
}

/// Elements are indices into the element table.
pub type El = usize;

/// Default element count up to which `O(n^3)` checks are exhaustive.
pub const EXHAUSTIVE_CAP: usize = 64;

/// Outcome of one axiom or property check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds,
    Fails(String),
    /// Not evaluated because a prerequisite failed.
    Skipped(&'static str),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// Fraction of the tuples that were examined; 1 when exhaustive.
    pub coverage: f64,
}

impl Check {
    fn exhaustive(name: &str, verdict: Verdict) -> Self {
        Self { name: name.to_string(), verdict, coverage: 1.0 }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cov = if self.coverage < 1.0 { format!(" (coverage {:.3})", self.coverage) } else { String::new() };
        match &self.verdict {
            Verdict::Holds => write!(f, "{:<16} holds{cov}", self.name),
            Verdict::Fails(w) => write!(f, "{:<16} FAILS at {w}{cov}", self.name),
            Verdict::Skipped(why) => write!(f, "{:<16} skipped ({why})", self.name),
        }
    }
}

/// Axiom checks plus the distributive and modular flags.
#[derive(Debug, Clone)]
pub struct OmlReport {
    pub elements: usize,
    pub checks: Vec<Check>,
    pub distributive: Check,
    pub modular: Check,
}

impl OmlReport {
    pub fn is_oml(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.holds()).collect()
    }
}

impl fmt::Display for OmlReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "elements {}", self.elements)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "{}", self.distributive)?;
        writeln!(f, "{}", self.modular)?;
        write!(f, "orthomodular lattice: {}", if self.is_oml() { "yes" } else { "no" })
    }
}

/// How much of an `O(n^3)` search to run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Exhaustive up to this many elements, sampled beyond.
    pub cap: usize,
    /// Seed for the sampled regime.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { cap: EXHAUSTIVE_CAP, seed: 0 }
    }
}

/// A finite poset with a partial map `⊥`, as read from a file. Nothing
/// about it is assumed.
#[derive(Debug, Clone)]
pub struct OrthoPoset {
    names: Vec<String>,
    index: HashMap<String, El>,
    /// Reflexive-transitive closure of the declared order.
    leq: Vec<bool>,
    ortho: Vec<Option<El>>,
    bottom: Option<El>,
    top: Option<El>,
}

/// Triples `(a, b, c)` to examine: all of them, or a seeded sample of
/// `cap^3` when the lattice is larger than `cap`.
fn triples(n: usize, opts: VerifyOptions) -> (Vec<(El, El, El)>, f64) {
    if n <= opts.cap {
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push((a, b, c));
                }
            }
        }
        (out, 1.0)
    } else {
        let m = opts.cap * opts.cap * opts.cap;
        let mut rng = random::rng(opts.seed);
        let out: Vec<_> = (0..m).map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))).collect();
        (out, m as f64 / (n as f64).powi(3))
    }
}

impl OrthoPoset {
    /// Builds the reflexive-transitive closure of `relations`.
    pub fn new(
        names: Vec<String>,
        relations: &[(El, El)],
        ortho: Vec<Option<El>>,
        bottom: Option<El>,
        top: Option<El>,
    ) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate element `{name}`")));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut poset = Self { names, index, leq, ortho, bottom, top };
        if poset.bottom.is_none() {
            poset.bottom = (0..n).find(|&x| (0..n).all(|y| poset.le(x, y)));
        }
        if poset.top.is_none() {
            poset.top = (0..n).find(|&x| (0..n).all(|y| poset.le(y, x)));
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Result<El> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn le(&self, a: El, b: El) -> bool {
        self.leq[a * self.len() + b]
    }

    fn glb(&self, a: El, b: El) -> Option<El> {
        let n = self.len();
        let lower: Vec<El> = (0..n).filter(|&x| self.le(x, a) && self.le(x, b)).collect();
        lower.iter().copied().find(|&x| lower.iter().all(|&y| self.le(y, x)))
    }

    fn lub(&self, a: El, b: El) -> Option<El> {
        let n = self.len();
        let upper: Vec<El> = (0..n).filter(|&x| self.le(a, x) && self.le(b, x)).collect();
        upper.iter().copied().find(|&x| upper.iter().all(|&y| self.le(x, y)))
    }

    fn tables(&self) -> (Vec<Option<El>>, Vec<Option<El>>) {
        let n = self.len();
        let mut meet = vec![None; n * n];
        let mut join = vec![None; n * n];
        for a in 0..n {
            for b in a..n {
                let m = self.glb(a, b);
                let j = self.lub(a, b);
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        (meet, join)
    }

    pub fn verify(&self) -> OmlReport {
        self.verify_with(VerifyOptions::default())
    }

    pub fn verify_with(&self, opts: VerifyOptions) -> OmlReport {
        let n = self.len();
        let name = |x: El| self.names[x].as_str();
        let (meet, join) = self.tables();
        let mt = |a: El, b: El| meet[a * n + b];
        let jn = |a: El, b: El| join[a * n + b];
        let mut checks = Vec::new();

        let mut order = Verdict::Holds;
        'outer: for a in 0..n {
            for b in (a + 1)..n {
                if self.le(a, b) && self.le(b, a) {
                    order = Verdict::Fails(format!("{} <= {} <= {}", name(a), name(b), name(a)));
                    break 'outer;
                }
            }
        }
        let is_order = order.holds();
        checks.push(Check::exhaustive("partial order", order));

        let bounded = match (self.bottom, self.top) {
            (Some(z), Some(o)) => match (0..n).find(|&x| !self.le(z, x) || !self.le(x, o)) {
                None => Verdict::Holds,
                Some(x) => Verdict::Fails(format!("{} not between {} and {}", name(x), name(z), name(o))),
            },
            (None, _) => Verdict::Fails("no least element".into()),
            (_, None) => Verdict::Fails("no greatest element".into()),
        };
        let is_bounded = bounded.holds();
        checks.push(Check::exhaustive("bounded", bounded));

        let lattice = if !is_order {
            Verdict::Skipped("not a partial order")
        } else {
            let mut v = Verdict::Holds;
            'l: for a in 0..n {
                for b in a..n {
                    if mt(a, b).is_none() {
                        v = Verdict::Fails(format!("no meet of {} and {}", name(a), name(b)));
                        break 'l;
                    }
                    if jn(a, b).is_none() {
                        v = Verdict::Fails(format!("no join of {} and {}", name(a), name(b)));
                        break 'l;
                    }
                }
            }
            v
        };
        let is_lattice = lattice.holds() && is_bounded;
        checks.push(Check::exhaustive("lattice", lattice));

        let total = match (0..n).find(|&x| self.ortho[x].is_none()) {
            None => Verdict::Holds,
            Some(x) => Verdict::Fails(format!("{} has no orthocomplement", name(x))),
        };
        let has_ortho = total.holds();
        checks.push(Check::exhaustive("ortho total", total));
        let o = |x: El| self.ortho[x].expect("checked total");

        let involutive = if !has_ortho {
            Verdict::Skipped("ortho not total")
        } else {
            match (0..n).find(|&x| o(o(x)) != x) {
                None => Verdict::Holds,
                Some(x) => Verdict::Fails(format!("{x}'' = {}", name(o(o(x))), x = name(x))),
            }
        };
        let is_involutive = involutive.holds();
        checks.push(Check::exhaustive("involutive", involutive));

        let reversing = if !has_ortho {
            Verdict::Skipped("ortho not total")
        } else {
            let mut v = Verdict::Holds;
            'r: for a in 0..n {
                for b in 0..n {
                    if self.le(a, b) && !self.le(o(b), o(a)) {
                        v = Verdict::Fails(format!("{} <= {} but not {}' <= {}'", name(a), name(b), name(b), name(a)));
                        break 'r;
                    }
                }
            }
            v
        };
        let is_reversing = reversing.holds();
        checks.push(Check::exhaustive("order reversing", reversing));

        let complement = if !(has_ortho && is_lattice) {
            Verdict::Skipped("needs a bounded lattice with total ortho")
        } else {
            let (z, one) = (self.bottom.unwrap(), self.top.unwrap());
            match (0..n).find(|&x| mt(x, o(x)) != Some(z) || jn(x, o(x)) != Some(one)) {
                None => Verdict::Holds,
                Some(x) => Verdict::Fails(format!("{} and {}'", name(x), name(x))),
            }
        };
        let is_complemented = complement.holds();
        checks.push(Check::exhaustive("complement", complement));

        let ortho_ok = is_lattice && is_involutive && is_reversing && is_complemented;
        let orthomodular = if !ortho_ok {
            Verdict::Skipped("needs an ortholattice")
        } else {
            let mut v = Verdict::Holds;
            'm: for p in 0..n {
                for q in 0..n {
                    if self.le(p, q) && jn(p, mt(q, o(p)).unwrap()) != Some(q) {
                        v = Verdict::Fails(format!("p={}, q={}", name(p), name(q)));
                        break 'm;
                    }
                }
            }
            v
        };
        checks.push(Check::exhaustive("orthomodular", orthomodular));

        // De Morgan on every subset of at most three elements
        let de_morgan = if !ortho_ok {
            Check::exhaustive("de morgan", Verdict::Skipped("needs an ortholattice"))
        } else {
            let (ts, coverage) = triples(n, opts);
            let bad = ts.iter().find(|&&(a, b, c)| {
                let j = jn(jn(a, b).unwrap(), c).unwrap();
                let m = mt(mt(o(a), o(b)).unwrap(), o(c)).unwrap();
                let j2 = mt(mt(a, b).unwrap(), c).unwrap();
                let m2 = jn(jn(o(a), o(b)).unwrap(), o(c)).unwrap();
                o(j) != m || o(j2) != m2
            });
            let verdict = match bad {
                None => Verdict::Holds,
                Some(&(a, b, c)) => Verdict::Fails(format!("{{{}, {}, {}}}", name(a), name(b), name(c))),
            };
            Check { name: "de morgan".into(), verdict, coverage }
        };
        checks.push(de_morgan);

        let (distributive, modular) = if !is_lattice {
            (
                Check::exhaustive("distributive", Verdict::Skipped("not a lattice")),
                Check::exhaustive("modular", Verdict::Skipped("not a lattice")),
            )
        } else {
            let (ts, coverage) = triples(n, opts);
            let m = |a, b| mt(a, b).unwrap();
            let j = |a, b| jn(a, b).unwrap();
            let dist = ts.iter().find(|&&(p, q, r)| m(j(p, q), r) != j(m(p, r), m(q, r)));
            let modl = ts.iter().find(|&&(p, q, r)| self.le(p, r) && j(p, m(q, r)) != m(j(p, q), r));
            let verdict = |bad: Option<&(El, El, El)>| match bad {
                None => Verdict::Holds,
                Some(&(p, q, r)) => Verdict::Fails(format!("p={}, q={}, r={}", name(p), name(q), name(r))),
            };
            (
                Check { name: "distributive".into(), verdict: verdict(dist), coverage },
                Check { name: "modular".into(), verdict: verdict(modl), coverage },
            )
        };

        OmlReport { elements: n, checks, distributive, modular }
    }
}

/// A verified finite orthomodular lattice with meet and join tables.
#[derive(Debug, Clone)]
pub struct FiniteOml {
    names: Vec<String>,
    index: HashMap<String, El>,
    leq: Vec<bool>,
    ortho: Vec<El>,
    meet: Vec<El>,
    join: Vec<El>,
    bottom: El,
    top: El,
}

impl FiniteOml {
    /// Accepts a poset only if every axiom holds.
    pub fn new(poset: OrthoPoset) -> Result<Self> {
        Self::with_options(poset, VerifyOptions::default())
    }

    pub fn with_options(poset: OrthoPoset, opts: VerifyOptions) -> Result<Self> {
        let report = poset.verify_with(opts);
        if !report.is_oml() {
            let failed: Vec<String> = report.failures().iter().map(|c| c.to_string()).collect();
            return Err(Error::NotOml(failed.join("; ")));
        }
        let (meet, join) = poset.tables();
        Ok(Self {
            names: poset.names,
            index: poset.index,
            leq: poset.leq,
            ortho: poset.ortho.into_iter().map(|x| x.expect("verified")).collect(),
            meet: meet.into_iter().map(|x| x.expect("verified")).collect(),
            join: join.into_iter().map(|x| x.expect("verified")).collect(),
            bottom: poset.bottom.expect("verified"),
            top: poset.top.expect("verified"),
        })
    }

    /// The underlying poset, e.g. to re-run the axiom report.
    pub fn to_poset(&self) -> OrthoPoset {
        OrthoPoset {
            names: self.names.clone(),
            index: self.index.clone(),
            leq: self.leq.clone(),
            ortho: self.ortho.iter().map(|&x| Some(x)).collect(),
            bottom: Some(self.bottom),
            top: Some(self.top),
        }
    }

    pub fn verify(&self) -> OmlReport {
        self.to_poset().verify()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<El> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: El) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Result<El> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> El {
        self.bottom
    }

    pub fn top(&self) -> El {
        self.top
    }

    pub fn le(&self, a: El, b: El) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn ortho(&self, a: El) -> El {
        self.ortho[a]
    }

    pub fn meet(&self, a: El, b: El) -> El {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: El, b: El) -> El {
        self.join[a * self.len() + b]
    }

    pub fn meet_all(&self, xs: &[El]) -> El {
        xs.iter().fold(self.top, |acc, &x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: &[El]) -> El {
        xs.iter().fold(self.bottom, |acc, &x| self.join(acc, x))
    }

    pub fn orthogonal(&self, a: El, b: El) -> bool {
        self.le(a, self.ortho(b))
    }

    /// Elements of the interval `[0, p]`.
    pub fn below(&self, p: El) -> Vec<El> {
        self.elements().filter(|&x| self.le(x, p)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_lattices_verify() {
        for n in 1..=4 {
            let b = FiniteOml::boolean(n);
            let r = b.verify();
            assert!(r.is_oml(), "{r}");
            assert!(r.distributive.holds());
            assert_eq!(b.len(), 1 << n);
        }
        let mo2 = FiniteOml::mo(2);
        let r = mo2.verify();
        assert!(r.is_oml());
        assert!(!r.distributive.holds());
        assert!(r.modular.holds());
        assert_eq!(FiniteOml::mo(7).len(), 16);
    }

    #[test]
    fn non_involutive_fixture_is_reported() {
        let text = "elem 0 a b 1\nleq 0 a\nleq 0 b\nleq a 1\nleq b 1\northo 0 1\northo 1 0\northo a b\northo b b\n";
        let poset = OrthoPoset::parse(text).unwrap();
        let r = poset.verify();
        assert!(!r.is_oml());
        let inv = r.checks.iter().find(|c| c.name == "involutive").unwrap();
        assert!(!inv.holds());
        assert!(matches!(FiniteOml::new(poset), Err(Error::NotOml(_))));
    }

    #[test]
    fn non_lattice_is_reported() {
        // two incomparable upper bounds of a and b
        let text = "elem 0 a b c d 1\nleq 0 a\nleq 0 b\nleq a c\nleq a d\nleq b c\nleq b d\nleq c 1\nleq d 1\n";
        let r = OrthoPoset::parse(text).unwrap().verify();
        let lattice = r.checks.iter().find(|c| c.name == "lattice").unwrap();
        assert!(!lattice.holds());
    }

    #[test]
    fn sampled_regime_reports_coverage() {
        let b = FiniteOml::boolean(3);
        let r = b.to_poset().verify_with(VerifyOptions { cap: 4, seed: 1 });
        let dm = r.checks.iter().find(|c| c.name == "de morgan").unwrap();
        assert!(dm.holds() && dm.coverage < 1.0);
    }
}
