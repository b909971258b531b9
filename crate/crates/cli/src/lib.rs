//! A small declarative language for rings, double extensions and dcv candidates, and the
//! `dore` command line built on it.

pub mod ast;
pub mod cli;
pub mod commands;
mod error;
pub mod parser;
pub mod resolve;

pub use ast::SpecDocument;
pub use commands::{run_document, run_spec, Command, CommandOutput, RunConfig, RunError, SearchRequest};
pub use error::SpecError;
pub use parser::{parse_expr, parse_spec};
pub use resolve::{resolve, Model};
