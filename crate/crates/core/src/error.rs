//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("R-matrix is not involutive: R^2 e_{witness} != e_{witness}")]
    NotInvolutive { witness: usize },
    #[error("R-matrix is not unitary: column {witness} of R^dagger R differs from the identity")]
    NotUnitary { witness: usize },
    #[error("Yang-Baxter equation fails on basis vector e_{witness} of V^(x)3")]
    YbeFails { witness: usize },
    #[error("block dimensions are not integral: {0}")]
    NonIntegralBlocks(String),
    #[error("Thoma parameters are not of Yang-Baxter type: {0}")]
    NotYangBaxterType(String),
    #[error("permutation support exceeds level {level}: {detail}")]
    SupportExceedsLevel { level: usize, detail: String },
    #[error("no Thoma parameter candidate matches the cycle characters")]
    NoMatch,
    #[error("ambiguous Thoma extraction: {0} and {1}")]
    AmbiguousMatch(String, String),

    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown catalog name {0:?}")]
    UnknownCatalogName(String),
    #[error("irrep list is incomplete: sum of squared dimensions {sum} != group order {order}")]
    IncompleteIrrepList { sum: usize, order: usize },
    #[error("not a homomorphism: image({0}*{1}) != image({0})*image({1})")]
    NotHomomorphism(usize, usize),
    #[error("image of element {0} is not unitary")]
    NotUnitaryImage(usize),
    #[error("representation is not irreducible: character norm {0}")]
    NotIrreducible(String),

    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("supports are not disjoint: {0}")]
    SupportsNotDisjoint(String),
    #[error("invalid wreath element: {0}")]
    InvalidElement(String),

    #[error("pi is not a representation: {0}")]
    NotRepresentation(String),
    #[error("extended reflection equation fails for (t, t') = ({t}, {t_prime}) on basis vector e_{witness}")]
    ExtendedReFails { t: usize, t_prime: usize, witness: usize },

    #[error("parameter list {0} is not non-increasing")]
    NotNonIncreasing(String),
    #[error("total parameter mass {0} exceeds one")]
    MassExceedsOne(String),
    #[error("negative parameter entry at {0}")]
    NegativeEntry(String),
    #[error("unknown irrep label {0:?}")]
    UnknownIrrepLabel(String),
    #[error("parameters are not Yang-Baxter admissible: {0}")]
    NotAdmissible(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Variant name, as used by expectation files.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ConductorMismatch { .. } => "ConductorMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInvolutive { .. } => "NotInvolutive",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::YbeFails { .. } => "YbeFails",
            Error::NonIntegralBlocks { .. } => "NonIntegralBlocks",
            Error::NotYangBaxterType { .. } => "NotYangBaxterType",
            Error::SupportExceedsLevel { .. } => "SupportExceedsLevel",
            Error::NoMatch => "NoMatch",
            Error::AmbiguousMatch { .. } => "AmbiguousMatch",
            Error::NotAGroup { .. } => "NotAGroup",
            Error::UnknownCatalogName { .. } => "UnknownCatalogName",
            Error::IncompleteIrrepList { .. } => "IncompleteIrrepList",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::NotUnitaryImage { .. } => "NotUnitaryImage",
            Error::NotIrreducible { .. } => "NotIrreducible",
            Error::GroupMismatch => "GroupMismatch",
            Error::SupportsNotDisjoint { .. } => "SupportsNotDisjoint",
            Error::InvalidElement { .. } => "InvalidElement",
            Error::NotRepresentation { .. } => "NotRepresentation",
            Error::ExtendedReFails { .. } => "ExtendedReFails",
            Error::NotNonIncreasing { .. } => "NotNonIncreasing",
            Error::MassExceedsOne { .. } => "MassExceedsOne",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::UnknownIrrepLabel { .. } => "UnknownIrrepLabel",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::Schema { .. } => "Schema",
            Error::Internal { .. } => "Internal",
        }
    }
}
