use thiserror::Error;

/// Errors raised by the integrality engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("form not avoidable: {0:?} vanishes on the whole subspace")]
    FormNotAvoidable(Vec<i64>),

    #[error("group too large: closure exceeds {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("non-invertible generator: {0}")]
    NonInvertibleGenerator(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("representation is not symmetric")]
    NotSymmetric,

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Weyl action does not permute the partition classes")]
    ActionNotPermuting,

    #[error("k not quasi-invariant under {0}")]
    KNotQuasiInvariant(String),

    #[error("denominator does not clear in induction from cocharacter {0:?}")]
    DenominatorDoesNotClear(Vec<i64>),

    #[error("lift does not preserve the induction image in polynomial degree {degree}")]
    LiftNotPreserving { degree: usize },

    #[error("complement ill-defined: negative dimension {dim} in shifted degree {degree}")]
    ComplementIllDefined { degree: i64, dim: i64 },

    #[error("BPS character supported outside the finite window, in shifted degree {0}")]
    UnboundedSupport(i64),

    #[error("non-integral isotypic dimension in shifted degree {0}")]
    NonIntegralDimension(i64),

    #[error("expected a rank-1 torus, found {0}")]
    NotRankOne(String),

    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
