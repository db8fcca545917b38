use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Recovers a small-denominator rational from a high-precision approximation.
///
/// Walks the continued-fraction convergents `p/q` of `x` with `q <= denominator_bound`
/// and returns the first with `|x - p/q| < 1 / (2 q denominator_bound)`.
/// The caller must still verify the result exactly.
pub fn rational_reconstruct(x: &BigRational, denominator_bound: &BigInt) -> Option<BigRational> {
    if denominator_bound < &BigInt::one() {
        return None;
    }
    // convergents h_k / k_k
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > denominator_bound {
            break;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let candidate = BigRational::new(h.clone(), k.clone());
        let threshold = BigRational::new(BigInt::one(), BigInt::from(2) * &k * denominator_bound);
        if (x - &candidate).abs() < threshold {
            return Some(candidate);
        }
        num = std::mem::replace(&mut den, r);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use proptest::prelude::*;

    fn decimal(s: &str) -> BigRational {
        let (int_part, frac) = s.split_once('.').unwrap();
        let digits = format!("{int_part}{frac}");
        BigRational::new(digits.parse().unwrap(), BigInt::from(10).pow(frac.len() as u32))
    }

    #[test]
    fn examples() {
        let ten = BigInt::from(10);
        assert_eq!(rational_reconstruct(&decimal("0.5000000000"), &ten), Some(rat(1, 2)));
        assert_eq!(rational_reconstruct(&decimal("0.3333333333333"), &ten), Some(rat(1, 3)));
        assert_eq!(rational_reconstruct(&decimal("0.7071067811865"), &ten), None);
        assert_eq!(rational_reconstruct(&decimal("-2.2500000000001"), &ten), Some(rat(-9, 4)));
    }

    /// Brute force over all q <= 10 confirms no p/q is close enough to sqrt(2)/2.
    #[test]
    fn irrational_has_no_candidate_by_enumeration() {
        let x = decimal("0.7071067811865");
        for q in 1..=10i64 {
            for p in 0..=q {
                let c = rat(p, q);
                let threshold = rat(1, 2 * q * 10);
                assert!((&x - &c).abs() >= threshold, "{p}/{q}");
            }
        }
    }

    proptest! {
        #[test]
        fn exact_inputs_come_back(p in -50i64..=50, q in 1i64..=50, extra in 0i64..=20) {
            let x = rat(p, q);
            let bound = BigInt::from(q + extra);
            prop_assert_eq!(rational_reconstruct(&x, &bound), Some(x));
        }
    }
}
