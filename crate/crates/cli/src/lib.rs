//! Support code for the `fatpoints` command-line tool.

pub mod grid;
