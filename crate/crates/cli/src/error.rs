use thiserror::Error;

use crate::ast::Pos;

/// Anything wrong with a spec document, before any check runs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{pos}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax { pos: Pos, expected: Vec<String>, found: String },
    #[error("{pos}: unknown {kind} `{name}`")]
    Resolution { pos: Pos, kind: &'static str, name: String },
    #[error("{pos}: `{name}` takes {expected} arguments, got {found}")]
    Arity { pos: Pos, name: String, expected: String, found: usize },
    #[error("{pos}: {message}")]
    Invalid { pos: Pos, message: String },
}

impl SpecError {
    pub fn pos(&self) -> Pos {
        match self {
            SpecError::Syntax { pos, .. }
            | SpecError::Resolution { pos, .. }
            | SpecError::Arity { pos, .. }
            | SpecError::Invalid { pos, .. } => *pos,
        }
    }

    pub(crate) fn invalid(pos: Pos, message: impl Into<String>) -> Self {
        SpecError::Invalid { pos, message: message.into() }
    }
}
