//! Line-oriented presentation language.
//!
//! ```text
//! name weyl
//! gens x1 x2
//! rel x2 x1 = x1 x2 - 1
//! calculus theorem
//! ```

mod doc;
mod expr;
mod lexer;
mod render;

use std::fmt;

pub use doc::{parse_presentation, CalculusDoc, Options, PresentationDoc};
pub use expr::{eval_in, parse_expr, Expr};
pub use render::render_presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    Syntax,
    Undeclared,
    Duplicate,
    RelationOrder,
    RelationShape,
    ZeroCoefficient,
    Block,
    Reserved,
    Invalid,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "syntax",
            Code::Undeclared => "undeclared",
            Code::Duplicate => "duplicate",
            Code::RelationOrder => "relation-order",
            Code::RelationShape => "relation-shape",
            Code::ZeroCoefficient => "zero-coefficient",
            Code::Block => "block",
            Code::Reserved => "reserved",
            Code::Invalid => "invalid",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {code}: {message}")]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>, line: usize, column: usize) -> Self {
        Self { code, message: message.into(), line, column }
    }
}
