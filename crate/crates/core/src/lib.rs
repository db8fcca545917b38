//! Exact splitting fields, automorphism groups and verification of the
//! Galois correspondence over the rationals, plus an independent finite
//! field engine.

pub mod arith;
pub mod correspondence;
pub mod error;
pub mod exec;
pub mod finite_fields;
pub mod groups;
pub mod homs;
pub mod number_field;

pub use error::{GaloisError, Result};
pub use exec::Execution;
