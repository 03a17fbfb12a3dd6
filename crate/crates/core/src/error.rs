use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("wrong name of a wavelet family: {0}")]
    UnknownFamily(String),

    #[error("degenerate scaling filter: entries sum to zero")]
    DegenerateFilter,

    #[error("Impossible to construct scaling function: eigenvalue 1 must have multiplicity 1 (found {0})")]
    EigenMultiplicity(usize),

    #[error("Impossible to construct scaling function: eigenvector at eigenvalue 1 sums to zero")]
    ZeroSumEigenvector,

    #[error("refinement level u must be at least 1")]
    ZeroRefinementLevel,

    #[error("I expect b>0 (got {0})")]
    NonPositiveTranslation(f64),

    #[error("Choose b such that 1/b = 2^r for some integer r >= 0 (got b = {0})")]
    NonDyadicTranslation(f64),

    #[error("no inner functions for these values of levels j, increase j")]
    NoInnerFunctions,

    #[error("small number of points N_b for these values of j and b (need r = {r} >= max(j) + r_b = {needed})")]
    TooFewPoints { r: u32, needed: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cosine atom count M_c = {m_c} exceeds segment length N_b = {n_b}")]
    TooManyCosineAtoms { m_c: usize, n_b: usize },

    #[error("signal of length {len} is shorter than one segment of {n_b} samples")]
    EmptyPartition { len: usize, n_b: usize },

    #[error("tolerance must be nonnegative and finite (got {0})")]
    NegativeTolerance(f64),

    #[error("initial atom index {index} is out of range for a dictionary with {cols} columns")]
    AtomOutOfRange { index: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("PRD is undefined for a signal with zero norm")]
    UndefinedPrd,

    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: cannot parse {token:?} as a number")]
    Parse {
        path: PathBuf,
        line: usize,
        token: String,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
