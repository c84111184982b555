//! File formats and command implementations behind the `vickset` binary.

pub mod commands;
pub mod error;
pub mod expr;
pub mod instance;
pub mod report;
pub mod text;

pub use error::{CliError, CliResult};
pub use expr::eval_expression;
pub use text::{parse_value, serialize_value};
