//! Command-line surface for singlink: file formats, renderings and subcommands.

pub mod commands;
pub mod formats;
pub mod render;
