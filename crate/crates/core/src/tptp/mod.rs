//! Tokenization, parsing and serialization of untyped first-order TPTP
//! formulas, in the two source formats used for training: `standard`
//! (bracketed infix) and `prefix` (bracket-free Polish notation).

mod ast;
mod lexer;
mod parser;
mod render;
mod statements;

pub use ast::{BinaryOp, FormulaAst, Quantifier};
pub use lexer::tokenize;
pub use parser::parse;
pub use render::{render_standard, to_prefix};
pub use statements::{Role, Statement, StatementSet};

use std::fmt;

/// Which serialization a token sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TokenFormat {
    /// Infix TPTP syntax with brackets and commas.
    Standard,
    /// Polish prefix notation; contains no brackets or commas.
    Prefix,
}

/// An ordered list of tokens together with its format tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSeq {
    pub tokens: Vec<String>,
    pub format: TokenFormat,
}

impl TokenSeq {
    pub fn new(tokens: Vec<String>, format: TokenFormat) -> Self {
        TokenSeq { tokens, format }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens joined with single spaces.
    pub fn joined(&self) -> String {
        self.tokens.join(" ")
    }
}

impl fmt::Display for TokenSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.joined())
    }
}

/// Errors from lexing, parsing or statement-file reading.
#[derive(Debug)]
pub enum TptpError {
    /// Illegal character in the input, with its byte offset.
    Lexical { offset: usize, ch: char },
    /// Unexpected token while parsing.
    Parse {
        index: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    /// Malformed `fof(...)` record in a statements file.
    Record { line: usize, msg: String },
    Io(std::io::Error),
}

impl fmt::Display for TptpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TptpError::Lexical { offset, ch } => {
                write!(f, "illegal character {ch:?} at byte offset {offset}")
            }
            TptpError::Parse {
                index,
                found,
                expected,
            } => write!(
                f,
                "parse error at token {index}: found {found:?}, expected one of [{}]",
                expected.join(", ")
            ),
            TptpError::Record { line, msg } => write!(f, "line {line}: {msg}"),
            TptpError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for TptpError {}

impl From<std::io::Error> for TptpError {
    fn from(e: std::io::Error) -> Self {
        TptpError::Io(e)
    }
}
