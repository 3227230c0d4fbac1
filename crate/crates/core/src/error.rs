use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("exponent vector has {got} slots, expected {expected}")]
    ExponentArity { expected: usize, got: usize },

    #[error("exponent {exponent} of `{var}` is not divisible by {root}")]
    OddExponent { var: String, exponent: i64, root: u32 },

    #[error("series factor has a term of non-positive degree {degree}")]
    NonConvergentGrading { degree: i64 },

    #[error("expected a monomial")]
    NotAMonomial,

    #[error("matrix is not invertible over its entry ring")]
    NotInvertible,

    #[error("element is not a unit")]
    NotAUnit,

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("unsupported cyclotomic order {0}")]
    UnsupportedOrder(u32),

    #[error("value has a nonzero imaginary part")]
    ImaginaryResidue,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid plane partition: {0}")]
    InvalidPartition(String),

    #[error("partition does not fit in box {x}x{y}x{z}")]
    DoesNotFit { x: usize, y: usize, z: usize },

    #[error("not a perfect matching of the region: {0}")]
    NotAMatching(String),

    #[error("hexagons are not adjacent: {0}")]
    NotAdjacent(String),

    #[error("configurations live on different regions")]
    RegionMismatch,

    #[error("not a valid double dimer configuration: {0}")]
    NotADoubleDimer(String),

    #[error("not a simple loop: {0}")]
    NotALoop(String),

    #[error("loop is not the only loop of any squished configuration in the box")]
    LoopNotRealizable,

    #[error("edge is not horizontal")]
    NotHorizontal,

    #[error("edge lies outside the region")]
    EdgeOutsideRegion,

    #[error("region is not simply connected")]
    NotSimplyConnected,

    #[error("weight on an edge is zero")]
    ZeroWeight,

    #[error("weight on an edge is negative; square roots are taken over the positive reals")]
    NegativeWeight,

    #[error("box sides must be even, got {x}x{y}x{z}")]
    OddBox { x: usize, y: usize, z: usize },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
