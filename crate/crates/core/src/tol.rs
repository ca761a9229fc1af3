//! Numerical tolerances shared by every operation on a model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances used when deciding algebraic predicates numerically.
///
/// The defaults sit about two orders of magnitude above the accuracy of the
/// Jacobi eigensolver in double precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Max-entry asymmetry accepted for an [`Element`](crate::Element).
    pub sym: f64,
    /// Residual for idempotence, involution and witness contracts.
    pub proj: f64,
    /// Relative threshold below which an eigenvalue counts as zero.
    pub rank: f64,
    /// Slack on the minimum eigenvalue when testing `a <= b`.
    pub psd: f64,
    /// Relative commutator threshold.
    pub comm: f64,
    /// Smallest |eigenvalue| accepted by `inverse`.
    pub inv: f64,
    /// Relative width for merging eigenvalues into one spectral jump.
    pub cluster: f64,
    /// Relative reconstruction error accepted from the eigensolver.
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sym: 1e-10,
            proj: 1e-8,
            rank: 1e-10,
            psd: 1e-9,
            comm: 1e-9,
            inv: 1e-10,
            cluster: 1e-9,
            eig: 1e-8,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 8] = ["sym", "proj", "rank", "psd", "comm", "inv", "cluster", "eig"];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "sym" => &mut self.sym,
            "proj" => &mut self.proj,
            "rank" => &mut self.rank,
            "psd" => &mut self.psd,
            "comm" => &mut self.comm,
            "inv" => &mut self.inv,
            "cluster" => &mut self.cluster,
            "eig" => &mut self.eig,
            _ => return Err(Error::UnknownTolerance(name.to_string())),
        };
        *slot = value;
        Ok(())
    }

    /// Applies an override written as `name=value`.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::UnknownTolerance(assignment.to_string()))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::UnknownTolerance(assignment.to_string()))?;
        self.set(name.trim(), value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        t.apply_override("psd=1e-6").unwrap();
        assert_eq!(t.psd, 1e-6);
        assert!(t.apply_override("bogus=1").is_err());
        assert!(t.apply_override("psd").is_err());
    }
}
