//! File formats, verification suites and the command-line front end for
//! [`ulrich_core`].

pub mod candidate;
pub mod cli;
pub mod codec;
pub mod config;
pub mod suites;
pub mod transcript;

pub use ulrich_core;
