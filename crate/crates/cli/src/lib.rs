//! Library side of the `galois` command: polynomial parsing, the analysis
//! pipeline and report rendering.

pub mod analyze;
pub mod lemmas;
pub mod parse;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VERIFICATION_FAILED: i32 = 2;
    pub const UNDECIDED: i32 = 3;
}

pub use analyze::{analyze, AnalyzeConfig, Analyzed};
pub use parse::{parse_polynomial, ParseError};
