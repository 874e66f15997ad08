//! Standard-library companion to `frankl-forge-core`: the S/F text format,
//! report rendering (human, JSON, CSV), and the command-line interface.

pub mod cli;
pub mod report;
pub mod sf;
