//! Dense univariate polynomials over any [`Field`].

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{rational_string, Field, Rationals};
use crate::error::{GaloisError, Result};

/// Coefficients lowest degree first; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

pub type QPoly = Poly<BigRational>;

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl QPoly {
    /// Builds a rational polynomial, trimming trailing zeros.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        PolyRing::new(&Rationals).poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_rationals(coeffs.iter().map(|&c| super::field::int(c)).collect())
    }

    /// Renders in the same syntax the polynomial parser accepts.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&rational_string(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rational_string(&mag), mono));
            }
        }
        out
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

/// Polynomial arithmetic over a borrowed coefficient field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn poly(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.poly(vec![c])
    }

    /// `x - c`
    pub fn linear(&self, c: &F::Elem) -> Poly<F::Elem> {
        Poly {
            coeffs: vec![self.field.neg(c), self.field.one()],
        }
    }

    pub fn monomial(&self, c: F::Elem, deg: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); deg];
        coeffs.push(c);
        self.poly(coeffs)
    }

    pub fn map_from_rational(&self, p: &QPoly) -> Poly<F::Elem> {
        self.poly(p.coeffs.iter().map(|c| self.field.from_rational(c)).collect())
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.field.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.poly(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.poly(a.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(x, y);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &t);
            }
        }
        self.poly(coeffs)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u32) -> Poly<F::Elem> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Long division; `num = den * q + r` with `deg r < deg den`.
    pub fn divrem(
        &self,
        num: &Poly<F::Elem>,
        den: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let dd = den.degree().ok_or(GaloisError::DivisionByZero)?;
        let lead_inv = self
            .field
            .inv(den.leading().expect("nonzero"))
            .ok_or(GaloisError::DivisionByZero)?;
        let mut rem = num.coeffs.clone();
        if rem.len() <= dd {
            return Ok((self.zero(), self.poly(rem)));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + dd], &lead_inv);
            if !self.field.is_zero(&c) {
                for (j, d) in den.coeffs.iter().enumerate() {
                    let t = self.field.mul(&c, d);
                    rem[k + j] = self.field.sub(&rem[k + j], &t);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((self.poly(quot), self.poly(rem)))
    }

    pub fn rem(&self, num: &Poly<F::Elem>, den: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(num, den)?.1)
    }

    /// Quotient when `den` divides `num` exactly.
    pub fn exact_div(&self, num: &Poly<F::Elem>, den: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(num, den).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading() {
            None => self.zero(),
            Some(l) => {
                let inv = self.field.inv(l).expect("leading coefficient is nonzero");
                self.scale(&inv, a)
            }
        }
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.leading().is_some_and(|l| self.field.is_one(l))
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if a.is_zero() && b.is_zero() {
            return Err(GaloisError::ZeroGcd);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y)?;
            x = y;
            y = self.monic(&r);
        }
        Ok(self.monic(&x))
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>)> {
        if a.is_zero() && b.is_zero() {
            return Err(GaloisError::ZeroGcd);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self
            .field
            .inv(r0.leading().expect("nonzero gcd"))
            .expect("nonzero leading coefficient");
        Ok((
            self.scale(&inv, &r0),
            self.scale(&inv, &s0),
            self.scale(&inv, &t0),
        ))
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_int(i as i64), c))
            .collect();
        self.poly(coeffs)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs.iter().rev().fold(self.field.zero(), |acc, c| {
            self.field.add(&self.field.mul(&acc, x), c)
        })
    }

    /// `a / gcd(a, a')`, made monic.
    pub fn squarefree_part(&self, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if a.is_zero() {
            return Err(GaloisError::InvalidInput("zero polynomial".into()));
        }
        let g = self.gcd(a, &self.derivative(a))?;
        let (q, _) = self.divrem(a, &g)?;
        Ok(self.monic(&q))
    }

    pub fn is_squarefree(&self, a: &Poly<F::Elem>) -> Result<bool> {
        let g = self.gcd(a, &self.derivative(a))?;
        Ok(g.degree() == Some(0))
    }

    pub fn product<'b>(&self, polys: impl IntoIterator<Item = &'b Poly<F::Elem>>) -> Poly<F::Elem>
    where
        F::Elem: 'b,
    {
        polys.into_iter().fold(self.one(), |acc, p| self.mul(&acc, p))
    }
}

pub fn poly_divrem(num: &QPoly, den: &QPoly) -> Result<(QPoly, QPoly)> {
    PolyRing::new(&Rationals).divrem(num, den)
}

pub fn poly_gcd(a: &QPoly, b: &QPoly) -> Result<QPoly> {
    PolyRing::new(&Rationals).gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};
    use proptest::prelude::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn divrem_examples() {
        assert_eq!(poly_divrem(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), (q(&[1, 1]), q(&[])));
        let f = q(&[3, 0, -7, 2]);
        assert_eq!(poly_divrem(&f, &q(&[1])).unwrap(), (f.clone(), q(&[])));
        // x^3 - 2 = (x^2 + 1) x + (-x - 2)
        assert_eq!(
            poly_divrem(&q(&[-2, 0, 0, 1]), &q(&[1, 0, 1])).unwrap(),
            (q(&[0, 1]), q(&[-2, -1]))
        );
        assert_eq!(poly_divrem(&f, &q(&[])), Err(GaloisError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 0, 0, 1])).unwrap(), q(&[-1, 1]));
        let f = q(&[4, 0, 2]);
        assert_eq!(poly_gcd(&f, &q(&[])).unwrap(), q(&[2, 0, 1]));
        assert_eq!(poly_gcd(&q(&[1, 0, 0, 0, 1]), &q(&[0, 0, 0, 4])).unwrap(), q(&[1]));
        assert_eq!(poly_gcd(&q(&[]), &q(&[])), Err(GaloisError::ZeroGcd));
    }

    #[test]
    fn ext_gcd_bezout() {
        let ring = PolyRing::new(&Rationals);
        let a = q(&[0, 1]);
        let b = q(&[-2, 0, 0, 1]);
        let (g, s, t) = ring.ext_gcd(&a, &b).unwrap();
        assert_eq!(g, q(&[1]));
        assert_eq!(ring.add(&ring.mul(&s, &a), &ring.mul(&t, &b)), g);
        // x^{-1} = x^2 / 2 mod x^3 - 2
        assert_eq!(ring.rem(&s, &b).unwrap(), QPoly::from_rationals(vec![int(0), int(0), rat(1, 2)]));
    }

    #[test]
    fn display_round_trip_syntax() {
        assert_eq!(q(&[1, 0, -10, 0, 1]).to_string(), "x^4 - 10*x^2 + 1");
        assert_eq!(q(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(QPoly::from_rationals(vec![rat(-1, 2), int(1)]).to_string(), "x - 1/2");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-20i64..=20, 1i64..=4), 0..=max_deg + 1)
            .prop_map(|v| QPoly::from_rationals(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn divrem_identity(a in arb_poly(10), b in arb_poly(6)) {
            prop_assume!(!b.is_zero());
            let ring = PolyRing::new(&Rationals);
            let (quot, r) = ring.divrem(&a, &b).unwrap();
            prop_assert_eq!(ring.add(&ring.mul(&b, &quot), &r), a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(12), b in arb_poly(12), c in arb_poly(3)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let ring = PolyRing::new(&Rationals);
            let (a, b) = if c.is_zero() { (a, b) } else { (ring.mul(&a, &c), ring.mul(&b, &c)) };
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = ring.gcd(&a, &b).unwrap();
            prop_assert!(ring.rem(&a, &g).unwrap().is_zero());
            prop_assert!(ring.rem(&b, &g).unwrap().is_zero());
            if !c.is_zero() && !a.is_zero() && !b.is_zero() {
                prop_assert!(ring.rem(&g, &c).unwrap().is_zero());
            }
        }
    }
}
