//! Library surface of the `tdho` command-line tool, split out so the
//! integration tests can drive the validation suite directly.

pub mod commands;
pub mod config;
pub mod csvout;
pub mod error;
pub mod validation;
