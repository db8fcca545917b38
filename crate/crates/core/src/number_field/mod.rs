//! Number fields: simple extensions of Q, towers, certified embeddings,
//! exact in-field root finding, factorization and splitting fields.

pub mod numeric;
pub mod roots;
pub mod simple;
pub mod splitting;
pub mod tower;

use num_bigint::BigInt;

pub use roots::{factor_over_field, roots_in_field, LPoly};
pub use simple::{ArithOp, ComplexApprox, FieldElement, Place, SimpleField};
pub use splitting::{splitting_field, splitting_field_with, SplittingField, SplittingOptions};
pub use tower::{collapse_primitive, Collapsed, FieldTower};

use crate::error::{GaloisError, Result};

/// Working precision ladder for certified numerics: start, doubling, cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            start_bits: 128,
            cap_bits: 8192,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, cap_bits: u32) -> Result<Self> {
        if start_bits < 32 || start_bits > cap_bits {
            return Err(GaloisError::InvalidInput(format!(
                "precision start {start_bits} must be at least 32 and at most the cap {cap_bits}"
            )));
        }
        Ok(Self {
            start_bits,
            cap_bits,
        })
    }

    pub fn ladder(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap_bits;
        std::iter::successors(Some(self.start_bits), move |&b| b.checked_mul(2).filter(|&n| n <= cap))
    }
}

/// Extra structure carried by a splitting field: the split polynomial, its
/// roots as field elements, and the generator as an integer combination of
/// roots (`sum c * roots[i]`).
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingData {
    pub polynomial: crate::arith::QPoly,
    pub roots: Vec<FieldElement>,
    pub generator: Vec<(BigInt, usize)>,
}

/// Certified approximations of the complex roots of the defining polynomial.
pub fn complex_embeddings(field: &SimpleField, precision_bits: u32) -> Result<Vec<ComplexApprox>> {
    let policy = field.policy();
    let mut bits = precision_bits.max(32);
    loop {
        if let Some(e) = field.embeddings_at(bits) {
            return Ok(e.roots.iter().map(|b| ComplexApprox::from_ball(b, bits)).collect());
        }
        bits = bits.saturating_mul(2);
        if bits > policy.cap_bits {
            return Err(GaloisError::Undecided {
                bits: policy.cap_bits,
                candidate: format!("root separation of {}", field.modulus()),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QPoly;

    #[test]
    fn ladder_doubles_to_cap() {
        let p = PrecisionPolicy::default();
        assert_eq!(p.ladder().collect::<Vec<_>>(), vec![128, 256, 512, 1024, 2048, 4096, 8192]);
        assert!(PrecisionPolicy::new(256, 128).is_err());
    }

    #[test]
    fn embedding_examples() {
        let f = SimpleField::new(QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let e = complex_embeddings(&f, 128).unwrap();
        assert_eq!(e.len(), 2);
        assert!((e[0].re_f64() + std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((e[1].re_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);

        let lin = SimpleField::new(QPoly::from_ints(&[-5, 1])).unwrap();
        let e = complex_embeddings(&lin, 128).unwrap();
        assert_eq!(e[0].real, crate::arith::field::int(5));
        assert_eq!(e[0].error_radius, 0.0);

        let c = SimpleField::new(QPoly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
        let e = complex_embeddings(&c, 128).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [(-h, -h), (-h, h), (h, -h), (h, h)];
        for (a, (re, im)) in e.iter().zip(expect) {
            assert!((a.re_f64() - re).abs() < 1e-15 && (a.im_f64() - im).abs() < 1e-15);
        }
    }
}
