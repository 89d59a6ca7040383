use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("could not parse permutation: {0}")]
    ParsePermutation(String),

    #[error("could not parse pattern: {0}")]
    ParsePattern(String),

    #[error("could not parse composition: {0}")]
    ParseComposition(String),

    #[error("permutation is not normalized: {0}")]
    NotNormalized(String),

    #[error("permutation is empty")]
    EmptyPermutation,

    #[error("illegal hook ({sw}, {ne}): {reason}")]
    IllegalHook { sw: usize, ne: usize, reason: String },

    #[error("index {0} is not a tail-bound descent")]
    NotTailBoundDescent(usize),

    #[error("requested length {requested} exceeds the brute-force cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("compositions have mismatched shape: {0}")]
    MismatchedComposition(String),

    #[error("series division requires an invertible constant term")]
    DivisionByNonUnit,

    #[error("series valuation {found} is below the required {required}")]
    ValuationTooLow { required: usize, found: usize },

    #[error("series composition requires the inner series to vanish at 0")]
    CompositionRequiresZeroConstant,

    #[error("series square root requires constant term 1")]
    SqrtRequiresUnitConstant,

    #[error("kernel-root iteration failed to converge within the order budget")]
    KernelNonConvergence,

    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
}
