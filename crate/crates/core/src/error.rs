use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("weight is not integral: {0}")]
    NotIntegral(String),
    #[error("weight is not dominant integral: {0}")]
    NotDominant(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("no integer solution for K_{{2rho}} exponents")]
    NoK2RhoSolution,
    #[error("relation check failed: {0}")]
    RelationFailure(String),
    #[error("module isomorphism not found: {0}")]
    IsoNotFound(String),
    #[error("self-duality matrix does not match the expected antidiagonal form: {0}")]
    ConventionFailure(String),
    #[error("zero quantum superdimension for {0}")]
    ZeroSuperdimension(String),
    #[error("nonzero Cartan-product homomorphism expected, got zero")]
    ZeroCartanProduct,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
