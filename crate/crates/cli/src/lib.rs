//! Command-line front end: JSON documents and subcommands.

pub mod commands;
pub mod doc;

pub use commands::{exit, exit_code};
pub use doc::{Document, Loaded, SpecDocument};
