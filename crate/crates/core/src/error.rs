use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not skew-symmetric: asymmetry {asymmetry:e} exceeds {threshold:e}")]
    NotSkew { asymmetry: f64, threshold: f64 },

    #[error("Pfaffian of odd dimension {0} is undefined")]
    OddDimension(usize),

    #[error("dimension {dim} exceeds the oracle cutoff {cutoff}")]
    AboveOracleCutoff { dim: usize, cutoff: usize },

    #[error("singular matrix")]
    Singular,

    #[error("quaternionic dimension must be positive")]
    ZeroDimension,

    #[error("zero coefficient vector does not define an induced complex structure")]
    ZeroCoefficients,

    #[error("structure identity violated: {0}")]
    Structure(String),

    #[error("|lambda| = {0} is not 1")]
    NotUnit(f64),

    #[error("metric is not symmetric positive-definite")]
    MetricNotPositive,

    #[error("basis columns are linearly dependent (condition {0:e})")]
    RankDeficient(f64),

    #[error("span is not I-complex (residual {0:e})")]
    NotComplex(f64),

    #[error("symplectic degree undefined for odd complex dimension {0}")]
    OddComplexDimension(usize),

    #[error("degenerate lattice")]
    DegenerateLattice,

    #[error("subspace is not contained in the outer subspace (residual {0:e})")]
    NotContained(f64),

    #[error("restricted holomorphic symplectic form is degenerate")]
    DegenerateSymplectic,

    #[error("{0}")]
    Chain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
