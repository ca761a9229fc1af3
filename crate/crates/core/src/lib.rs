//! Synaptic algebras realized as real symmetric block-diagonal matrices.
//!
//! The crate provides the spectral calculus of such an algebra, the
//! orthomodular lattice of its projections, explicit symmetry witnesses for
//! exchange and perspectivity, the comparability theory of projections, and
//! an engine for abstract finite orthomodular lattices.

pub mod cli;
pub mod comparability;
pub mod eigen;
pub mod element;
pub mod error;
pub mod forge;
pub mod io;
pub mod lattice;
pub mod model;
pub mod oml;
pub mod projection;
pub mod random;
pub mod report;
pub mod shape;
pub mod spectral;
pub mod suites;
pub mod tol;

pub use comparability::{ComparabilityResult, CoverSamples, Decomposition, EquivalenceWitness, SymmetryChain};
pub use eigen::{eig_sym, EigenDecomposition, EigenPair};
pub use element::{env_mul, symmetrize_sum, Element, EnvelopingElement};
pub use error::{Error, Result};
pub use forge::{ComplementResiduals, ExchangeWitness, FamilyExchange, PerspectivityWitness};
pub use lattice::{CentralProjection, IntervalModel};
pub use model::Model;
pub use projection::{PartialSymmetry, Projection, Symmetry};
pub use report::{Report, ReportLine};
pub use shape::ModelShape;
pub use spectral::{Jump, SpectralResolution};
pub use suites::{Suite, SuiteConfig};
pub use tol::Tolerances;
