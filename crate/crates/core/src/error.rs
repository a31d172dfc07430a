use thiserror::Error;

use crate::abelian::GroupError;
use crate::chains::ChainError;
use crate::spaces::SpaceError;

/// Errors split into two families: malformed input, and refusals where a
/// theorem hypothesis is missing or an operand lies outside what the
/// computation can vouch for.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub fn refused(reason: impl Into<String>) -> Self {
        Error::Refused(reason.into())
    }

    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Refused(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
