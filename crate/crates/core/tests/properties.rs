//! Randomized properties of the exact arithmetic, checked against direct
//! definitions.

use galois_core::arith::{Field, PolyRing, QPoly};
use galois_core::correspondence::{verify_fundamental_theorem, VerifyOptions};
use galois_core::finite_fields::Fq;
use galois_core::number_field::roots::lift;
use galois_core::number_field::{splitting_field, FieldElement, FieldTower, SimpleField};
use galois_core::{Execution, GaloisError};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn cube_root_two() -> SimpleField {
    SimpleField::new(QPoly::from_ints(&[-2, 0, 0, 1])).unwrap()
}

fn element(l: &SimpleField, c: &[(i64, i64)]) -> FieldElement {
    let coords = c
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect();
    l.element(coords).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..=30, 1i64..=7), 3)
}

fn is_square(n: i64) -> bool {
    n >= 0 && (0..=n).take_while(|k| k * k <= n).any(|k| k * k == n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in coords(), b in coords(), c in coords()) {
        let l = cube_root_two();
        let (a, b, c) = (element(&l, &a), element(&l, &b), element(&l, &c));
        prop_assert_eq!(l.mul(&l.mul(&a, &b), &c), l.mul(&a, &l.mul(&b, &c)));
        prop_assert_eq!(l.mul(&a, &l.add(&b, &c)), l.add(&l.mul(&a, &b), &l.mul(&a, &c)));
        prop_assert_eq!(l.mul(&a, &b), l.mul(&b, &a));
    }

    #[test]
    fn inverses(a in coords()) {
        let l = cube_root_two();
        let a = element(&l, &a);
        match l.inv(&a) {
            Some(i) => prop_assert_eq!(l.mul(&a, &i), l.one()),
            None => prop_assert!(l.is_zero(&a)),
        }
    }

    #[test]
    fn minimal_polynomial_annihilates(a in coords()) {
        let l = cube_root_two();
        let a = element(&l, &a);
        let m = l.minimal_polynomial(&a);
        prop_assert!(m.degree() == Some(1) || m.degree() == Some(3));
        let ring = PolyRing::new(&l);
        prop_assert!(l.is_zero(&ring.eval(&lift(&m, &l), &a)));
    }

    #[test]
    fn prime_field_matches_modular_arithmetic(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13, 101]), a in 0u32..101, b in 0u32..101) {
        let f = Fq::new(p, 1).unwrap();
        let (a, b) = (a % p, b % p);
        prop_assert_eq!(f.mul(a, b), a * b % p);
        prop_assert_eq!(f.add(a, b), (a + b) % p);
    }

    #[test]
    fn frobenius_fixes_everything_after_n_steps(k in 0usize..40) {
        let fields = [(2, 5), (3, 3), (5, 2), (2, 6), (7, 2)];
        let (p, n) = fields[k % fields.len()];
        let f = Fq::new(p, n).unwrap();
        let q = f.size() as u64;
        for x in f.elements() {
            prop_assert_eq!(f.pow(x, q), x);
        }
    }

    #[test]
    fn biquadratic_degree(a in -20i64..=20, b in -20i64..=20) {
        prop_assume!(a != 0 && b != 0 && !is_square(a));
        let qa = FieldTower::rationals().adjoin_rational(&QPoly::from_ints(&[-a, 0, 1])).unwrap();
        let second = qa.adjoin_rational(&QPoly::from_ints(&[-b, 0, 1]));
        let reducible = is_square(b) || is_square(a * b);
        match second {
            Ok(t) => {
                prop_assert!(!reducible);
                prop_assert_eq!(t.degree(), 4);
            }
            Err(GaloisError::Reducible { .. }) => prop_assert!(reducible),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let l = splitting_field(&QPoly::from_ints(&[-2, 0, 0, 1])).unwrap().field;
    let run = |execution| {
        verify_fundamental_theorem(&l, VerifyOptions { execution, ..Default::default() })
            .unwrap()
            .report
    };
    assert_eq!(run(Execution::Parallel), run(Execution::Sequential));
}
