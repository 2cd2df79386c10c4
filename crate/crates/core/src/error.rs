use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("halfspace system is unbounded")]
    Unbounded,

    #[error("halfspace system is infeasible")]
    Empty,

    #[error("point set does not span the ambient space")]
    DegenerateHull,

    #[error("zero vector is not a valid {0}")]
    ZeroVector(&'static str),

    #[error("rays do not span the ambient space")]
    NotFullDimensional,

    #[error("cone contains the line through {0:?}")]
    NotStrictlyConvex(Vec<i64>),

    #[error("generator {0} lies outside the cone")]
    GeneratorOutsideCone(String),

    #[error("regions or ideals live in different cones")]
    ConeMismatch,

    #[error("ideals live in different semigroups")]
    SemigroupMismatch,

    #[error("region is not cobounded: extreme ray {ray:?} carries no generator")]
    NotCobounded { ray: Vec<i64> },

    #[error("scale factor must be nonnegative, got {0}")]
    NegativeScale(String),

    #[error("expected {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("covolume is not the fitted polynomial at {at:?}: sample {sample}, fit {fit}")]
    FitMismatch { at: Vec<u64>, sample: String, fit: String },

    #[error("grid radius {radius} too small, need at least {needed}")]
    GridTooSmall { radius: u64, needed: u64 },

    #[error("exponent {0:?} is not in the semigroup")]
    AlphaOutsideSemigroup(Vec<i64>),

    #[error("ideal must have at least one generator")]
    EmptyIdeal,

    #[error("ideal is not m-primary: extreme ray {ray:?} carries no generator")]
    NotMPrimary { ray: Vec<i64> },

    #[error("staircase exploration exceeded the cap of {0} points")]
    ExplorationCap(usize),

    #[error("n-th difference of the Hilbert-Samuel function did not stabilize up to k = {0}")]
    NoStabilization(u32),

    #[error("mixed multiplicity polarization sum {0} is not divisible by n!")]
    NonIntegerResult(String),

    #[error("integer overflow converting {0}")]
    Overflow(String),

    #[error("instance generation failed for seed {seed}: {reason}")]
    GenerationFailed { seed: u64, reason: String },

    #[error("invalid input: {0}")]
    Input(String),
}
