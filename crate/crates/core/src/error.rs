use thiserror::Error;

/// Axiom violated by a candidate open-set family.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceViolation {
    #[error("the empty set is not open")]
    MissingEmpty,
    #[error("the full point set is not open")]
    MissingFull,
    #[error("opens not closed under union: {0:?} and {1:?}")]
    UnionNotOpen(Vec<String>, Vec<String>),
    #[error("opens not closed under intersection: {0:?} and {1:?}")]
    IntersectionNotOpen(Vec<String>, Vec<String>),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("open set mentions unknown point {0:?}")]
    UnknownLabel(String),
    #[error("{0} points exceed the supported maximum of 64")]
    TooManyPoints(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(#[from] SpaceViolation),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
