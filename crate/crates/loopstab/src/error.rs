use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("denominator vanishes at the requested point")]
    DenominatorVanishes,
    #[error("evaluation requested at the symbolic point")]
    SymbolicPoint,
    #[error("point {0} is not on the unit circle")]
    NotOnCircle(String),
    #[error("generator is not invertible: {0}")]
    NotInvertible(String),
    #[error("matrix does not square to one")]
    BadInvolution,
    #[error("finite block of the operator is singular")]
    SingularFiniteBlock,
    #[error("inverse hint does not match the symbol: {0}")]
    HintMismatch(String),
    #[error("middle block of the stripe perturbation is singular")]
    SingularMiddleBlock,
    #[error("operator is not a finite perturbation of Q")]
    NotAPerturbation,
    #[error("path endpoints do not match")]
    EndpointMismatch,
    #[error("index map is not a bijection: {0}")]
    NotBijective(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("wrong perturbation kind: {0}")]
    WrongKind(String),
    #[error("stripe class violated: {0}")]
    StripeClassViolation(String),
    #[error("loop has no invertible leading coefficient")]
    NoInvertibleLeadingStructure,
    #[error("window mismatch")]
    WindowMismatch,
    #[error("unbound variable: {0}")]
    UnboundVariable(String),
    #[error("loop unit lacks builder provenance")]
    NotBuilderUnit,
    #[error("invalid finiteness class: {0}")]
    BadClass(String),
    #[error("not an involution")]
    NotInvolution,
}

pub type Result<T> = std::result::Result<T, Error>;
