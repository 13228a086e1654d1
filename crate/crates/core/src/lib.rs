//! Behavior trees over a three-valued status algebra.
//!
//! - [`status`]: the `F`/`U`/`T` status type and its operators.
//! - [`engine`]: stateless expression ticking, stateful composites, traces.
//! - [`dsl`]: lexer, parser, printer and evaluator for status expressions.
//! - [`sim`]: a deterministic world simulator with coffee and forager scenarios.
//! - [`cli`]: the command implementations behind the `status-logic` binary.

pub mod cli;
pub mod dsl;
pub mod engine;
pub mod sim;
pub mod status;

pub use status::Status;
