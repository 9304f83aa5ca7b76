//! The session language: declarations of varieties, maps, groups and
//! actions followed by `cmd` lines that run toolkit operations.
//!
//! ```text
//! var x y
//! variety X = affine(x, y)
//! map s : X -> X = (1/x, 1/y)
//! cmd breg s
//! ```

pub mod ast;
mod check;
pub mod lexer;
mod parser;
mod printer;

use std::fmt;

pub use ast::*;
pub use check::{check, command_spec, is_xreg, CommandSpec, Entry, Kind, Symbols};
pub use lexer::Span;
pub use parser::{parse_syntax, MAX_DEPTH, MAX_EXPONENT};
pub use printer::{print_expr, print_item, print_session, print_value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    UseBeforeDeclare,
    WrongKind,
    Duplicate,
}

/// A positioned parse or resolution failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
    /// Tokens that would have been accepted, for syntax errors.
    pub expected: Vec<String>,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { kind, line: span.line, col: span.col, message: message.into(), expected: Vec::new() }
    }

    pub fn with_expected(mut self, expected: Vec<String>) -> Self {
        self.expected = expected;
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

/// Parses a session and resolves every name against earlier declarations.
pub fn parse_session(text: &str) -> Result<Session, Diagnostic> {
    let session = parse_syntax(text)?;
    check(&session)?;
    Ok(session)
}
