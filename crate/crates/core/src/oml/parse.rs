//! The line-oriented lattice file format.
//!
//! ```text
//! # MO2
//! elem 0 a a' b b' 1
//! bottom 0
//! top 1
//! leq a 1          # declaring top/bottom already implies these
//! ortho a a'
//! ortho b b'
//! ortho 0 1
//! ```
//!
//! `leq` lines may give only covering pairs; the closure is computed.
//! `ortho x y` sets `x' = y`, and also `y' = x` unless `y` has its own
//! `ortho` line. Missing `top`/`bottom` are inferred from the order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{El, FiniteOml, OrthoPoset};
use crate::error::{Error, Result};

impl OrthoPoset {
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, El> = HashMap::new();
        let mut relations = Vec::new();
        let mut explicit: Vec<(El, El)> = Vec::new();
        let mut top = None;
        let mut bottom = None;
        let lookup = |index: &HashMap<String, El>, line: usize, name: &str| {
            index.get(name).copied().ok_or_else(|| Error::parse(line, format!("unknown element `{name}`")))
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let keyword = words.next().expect("nonempty");
            let args: Vec<&str> = words.collect();
            let arity = |k: usize| {
                if args.len() == k {
                    Ok(())
                } else {
                    Err(Error::parse(line, format!("`{keyword}` takes {k} argument(s), got {}", args.len())))
                }
            };
            match keyword {
                "elem" => {
                    if args.is_empty() {
                        return Err(Error::parse(line, "`elem` needs at least one name"));
                    }
                    for name in args {
                        if index.contains_key(name) {
                            return Err(Error::parse(line, format!("duplicate element `{name}`")));
                        }
                        index.insert(name.to_string(), names.len());
                        names.push(name.to_string());
                    }
                }
                "leq" => {
                    arity(2)?;
                    relations.push((lookup(&index, line, args[0])?, lookup(&index, line, args[1])?));
                }
                "ortho" => {
                    arity(2)?;
                    explicit.push((lookup(&index, line, args[0])?, lookup(&index, line, args[1])?));
                }
                "top" => {
                    arity(1)?;
                    top = Some(lookup(&index, line, args[0])?);
                }
                "bottom" => {
                    arity(1)?;
                    bottom = Some(lookup(&index, line, args[0])?);
                }
                other => return Err(Error::parse(line, format!("unknown keyword `{other}`"))),
            }
        }
        let n = names.len();
        let mut ortho = vec![None; n];
        for &(a, b) in &explicit {
            ortho[a] = Some(b);
        }
        for &(a, b) in &explicit {
            if !explicit.iter().any(|&(x, _)| x == b) {
                ortho[b] = Some(a);
            }
        }
        if let Some(z) = bottom {
            relations.extend((0..n).map(|x| (z, x)));
        }
        if let Some(o) = top {
            relations.extend((0..n).map(|x| (x, o)));
        }
        OrthoPoset::new(names, &relations, ortho, bottom, top)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

impl FiniteOml {
    pub fn parse(text: &str) -> Result<Self> {
        FiniteOml::new(OrthoPoset::parse(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The lattice in file format, with covering pairs only.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names = self.names();
        let _ = writeln!(out, "elem {}", names.join(" "));
        let _ = writeln!(out, "bottom {}", self.name(self.bottom()));
        let _ = writeln!(out, "top {}", self.name(self.top()));
        for a in self.elements() {
            for b in self.elements() {
                if a != b && self.covers(a, b) && a != self.bottom() && b != self.top() {
                    let _ = writeln!(out, "leq {} {}", self.name(a), self.name(b));
                }
            }
        }
        for a in self.elements() {
            let _ = writeln!(out, "ortho {} {}", self.name(a), self.name(self.ortho(a)));
        }
        out
    }

    /// `a < b` with nothing strictly between.
    pub fn covers(&self, a: El, b: El) -> bool {
        a != b && self.le(a, b) && !self.elements().any(|c| c != a && c != b && self.le(a, c) && self.le(c, b))
    }
}
