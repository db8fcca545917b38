//! Exact arithmetic substrate: rationals, dense polynomials, linear algebra.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod reconstruct;

pub use field::{Field, Rationals};
pub use matrix::{kernel_basis, Matrix, QVec};
pub use poly::{poly_divrem, poly_gcd, Poly, PolyRing, QPoly};
pub use reconstruct::rational_reconstruct;
