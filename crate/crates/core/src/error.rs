use thiserror::Error;

use crate::shape::ModelShape;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: ModelShape, right: ModelShape },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("matrix is {rows}x{cols}, shape expects {n}x{n}")]
    DimensionMismatch { rows: usize, cols: usize, n: usize },

    #[error("entry ({row},{col}) lies outside the diagonal blocks but equals {value}")]
    OffBlock { row: usize, col: usize, value: f64 },

    #[error("matrix is not symmetric (asymmetry {residual:.3e} > {tol:.1e})")]
    NotSymmetric { residual: f64, tol: f64 },

    #[error("element is not a projection (|p^2 - p| = {residual:.3e} > {tol:.1e})")]
    NotProjection { residual: f64, tol: f64 },

    #[error("element is not a symmetry (|s^2 - 1| = {residual:.3e} > {tol:.1e})")]
    NotSymmetry { residual: f64, tol: f64 },

    #[error("element is not a partial symmetry (t^2 is not a projection: {residual:.3e} > {tol:.1e})")]
    NotPartialSymmetry { residual: f64, tol: f64 },

    #[error("element is not positive (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("element is not invertible (smallest |eigenvalue| {smallest:.3e})")]
    NotInvertible { smallest: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("projection is not below the interval top")]
    NotBelow,

    #[error("projections are not complements (meet residual {meet:.3e}, join residual {join:.3e})")]
    NotComplements { meet: f64, join: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("rank mismatch in block {block}: {left} vs {right}")]
    RankMismatch { block: usize, left: usize, right: usize },

    #[error("projection is not central in the interval model")]
    NotCentralInInterval,

    #[error("zero projection where a nonzero one is required")]
    ZeroInput,

    #[error("degenerate interval: the top projection is zero")]
    DegenerateInterval,

    #[error("closure exceeded the cap of {cap} elements")]
    ClosureExplosion { cap: usize },

    #[error("not an orthomodular lattice: {0}")]
    NotOml(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),

    #[error("unknown witness id `{0}`")]
    UnknownWitness(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
