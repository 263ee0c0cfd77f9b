use crate::exactlin::LinAlgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("not a monomorphism: {0}")]
    NotMono(String),
    #[error("not an epimorphism: {0}")]
    NotEpi(String),
    #[error("not exact: {0}")]
    NotExact(String),
    #[error("not a chain complex: {0}")]
    NotComplex(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("invalid ring: {0}")]
    BadRing(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
