use std::fmt;

use thiserror::Error;

use crate::term::Pos;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{pos}: lexical error: {msg}")]
    Lex { pos: Pos, msg: String },

    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },

    #[error("{pos}: {msg}")]
    Module { pos: Pos, msg: String },

    #[error("{0}")]
    Resolve(String),

    #[error("{pos}: foreign interface: {msg}")]
    Foreign { pos: Pos, msg: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub fn module(pos: Pos, msg: impl Into<String>) -> Self {
        Error::Module {
            pos,
            msg: msg.into(),
        }
    }

    pub fn foreign(pos: Pos, msg: impl Into<String>) -> Self {
        Error::Foreign {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Non-fatal diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub pos: Option<Pos>,
    pub message: String,
}

impl Warning {
    pub fn new(pos: Option<Pos>, message: impl Into<String>) -> Self {
        Warning {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "{p}: warning: {}", self.message),
            None => write!(f, "warning: {}", self.message),
        }
    }
}
