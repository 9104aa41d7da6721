use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GkzError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("sublattice of rank {rank} in Z^{dim} has infinite index")]
    InfiniteIndex { rank: usize, dim: usize },

    #[error("non-generic heights: lower cell {cell:?} is not a simplex")]
    NonGeneric { cell: Vec<usize> },

    #[error("degenerate sector: {0}")]
    DegenerateSector(String),

    #[error("columns {0:?} are linearly dependent")]
    SingularSimplex(Vec<usize>),

    #[error("vector {0:?} is not in the relation lattice")]
    NotInLattice(Vec<i64>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resonant parameter: {0}")]
    Resonant(String),

    #[error("T-resonant parameter ({0}); use the logarithmic basis construction")]
    TResonant(String),

    #[error("every term of the truncated series vanishes for this exponent vector")]
    DegenerateGamma,

    #[error("the zero operator has no valuation")]
    ZeroOperator,

    #[error("resonance obstruction: facet form {facet:?} vanishes on alpha - u")]
    ResonanceObstruction { facet: Vec<BigInt> },

    #[error("effort bound of {rounds} raising rounds exceeded")]
    EffortExceeded { rounds: usize, trace: Vec<String> },

    #[error("epsilon order {eps_order} is too small for {b} resonating simplices")]
    InsufficientOrder { eps_order: usize, b: usize },

    #[error("pole at epsilon = 0 in the coefficient of term {0:?}")]
    EpsilonPole(Vec<i64>),

    #[error("no generic perturbation direction found among the candidates")]
    NoGenericDirection,

    #[error("value {0} does not fit in a machine integer")]
    Overflow(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl GkzError {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, GkzError::Internal(_) | GkzError::EpsilonPole(_))
    }
}

pub type Result<T> = std::result::Result<T, GkzError>;
