use thiserror::Error;

/// Errors raised by the state constructors and entanglement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DickeError {
    #[error("unsupported spin: twice-spin {0} is not one of 1, 2, 3, 4")]
    UnsupportedSpin(u32),

    #[error("cannot parse spin `{0}` (expected 1/2, 1, 3/2 or 2)")]
    BadSpinLiteral(String),

    #[error("cannot parse magnetization `{0}`")]
    BadMagnetizationLiteral(String),

    #[error("particle count must be at least 1")]
    NoParticles,

    #[error("magnetization out of range: |2M| = {twice_m} exceeds 2sN = {limit}")]
    MagnetizationOutOfRange { twice_m: i64, limit: i64 },

    #[error("magnetization parity mismatch: 2M = {twice_m} but 2sN = {twice_j}")]
    MagnetizationParity { twice_m: i64, twice_j: i64 },

    #[error("occupation vector {0} is not in the basis of the requested (N, M) subspace")]
    NotInBasis(String),

    #[error("occupation vector has {got} levels, species has {expected}")]
    LevelCountMismatch { expected: usize, got: usize },

    #[error("level 2m = {0} is outside the single-particle range")]
    LevelOutOfRange(i64),

    #[error("level 2m = {0} appears more than once; antisymmetric states need distinct levels")]
    RepeatedLevel(i64),

    #[error("antisymmetric states need between 2 and {max} particles, got {got}")]
    AntisymParticleCount { got: usize, max: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not square or has the wrong size")]
    BadShape,

    #[error("unknown state name `{0}`")]
    UnknownState(String),

    #[error("coefficients violate |c1|^2 + |c2|^2 = 1 (got {0})")]
    CoefficientConstraint(f64),

    #[error("operation requires spin 1, got twice-spin {0}")]
    RequiresSpinOne(u32),

    #[error("brute-force reduction supports at most {max} particles, got {got}")]
    TooManyParticles { got: u32, max: u32 },

    #[error("expansion mixes magnetizations or species")]
    InconsistentExpansion,

    #[error("exact amplitudes {0} and {1} are not commensurate square roots")]
    Incommensurate(String, String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("missing data file: {0}")]
    MissingData(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, DickeError>;
