use thiserror::Error;

/// Errors raised by the library. Variant names are stable and are reported
/// verbatim by the CLI as the domain-error kind.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("involution is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("involution does not square to the identity: {0}")]
    NotAnInvolution(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("the inversion involution is only an automorphism of abelian groups")]
    InversionOnNonabelian,
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("subgroup is not stable under the involution: {0}")]
    NotSigmaStable(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element {element} is not a 1-cocycle: {reason}")]
    NotACocycle { element: usize, reason: String },
    #[error("not a ±1 character: {0}")]
    NotACharacter(String),
    #[error("character is not invariant under the involution: {0}")]
    NotEquivariant(String),
    #[error("not a valid equivariant action: {0}")]
    NotAnAction(String),
    #[error("normal subgroup does not act freely: {0}")]
    NotFree(String),
    #[error("a quadratic form must have rank at least 1")]
    EmptyForm,
    #[error("unknown group kind `{0}`")]
    UnknownKind(String),
    #[error("matrix is singular")]
    Singular,
    #[error("witness case `{0}` not found")]
    CaseNotFound(String),
    #[error("computation exceeds configured limits: {0}")]
    CapExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotAnAutomorphism(_) => "NotAnAutomorphism",
            Error::NotAnInvolution(_) => "NotAnInvolution",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::InversionOnNonabelian => "InversionOnNonabelian",
            Error::NotNormal(_) => "NotNormal",
            Error::NotSigmaStable(_) => "NotSigmaStable",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotACocycle { .. } => "NotACocycle",
            Error::NotACharacter(_) => "NotACharacter",
            Error::NotEquivariant(_) => "NotEquivariant",
            Error::NotAnAction(_) => "NotAnAction",
            Error::NotFree(_) => "NotFree",
            Error::EmptyForm => "EmptyForm",
            Error::UnknownKind(_) => "UnknownKind",
            Error::Singular => "Singular",
            Error::CaseNotFound(_) => "CaseNotFound",
            Error::CapExceeded(_) => "CapExceeded",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
