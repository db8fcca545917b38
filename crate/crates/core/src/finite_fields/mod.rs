//! Finite fields `F_{p^n}`, built independently of the number field code so
//! they can serve as a separate check on the correspondence.

pub mod fq;
pub mod lemmas;

pub use fq::{is_prime, prime_powers_up_to, Fq, DEFAULT_FIELD_SIZE_CAP};
pub use lemmas::{
    frobenius_group, union_check_subfields, union_check_subspaces, verify_correspondence_fq, sweep, LemmaSweep,
};
