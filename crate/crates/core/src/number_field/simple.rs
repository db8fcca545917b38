use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::numeric::{isolate_roots, Ball, Prec};
use super::{PrecisionPolicy, SplittingData};
use crate::arith::field::{rational_string, Field, Rationals};
use crate::arith::matrix::{Matrix, QVec};
use crate::arith::poly::{PolyRing, QPoly};
use crate::error::{GaloisError, Result};

/// An element of a number field, as coordinates in its power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coords: QVec,
    owner: u64,
}

impl FieldElement {
    pub(crate) fn with_owner(coords: QVec, owner: u64) -> Self {
        Self { coords, owner }
    }

    pub fn owner(&self) -> u64 {
        self.owner
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(Zero::is_zero)
    }

    pub fn coords_string(&self) -> Vec<String> {
        self.coords.iter().map(rational_string).collect()
    }
}

/// One real embedding, or a pair of complex conjugate embeddings
/// `(upper, lower)` with the first having positive imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Real(usize),
    Complex(usize, usize),
}

impl Place {
    pub fn representative(&self) -> usize {
        match *self {
            Place::Real(j) | Place::Complex(j, _) => j,
        }
    }
}

/// Certified complex roots of the defining polynomial at one precision.
#[derive(Debug, Clone)]
pub struct EmbeddingData {
    pub bits: u32,
    pub roots: Vec<Ball>,
    pub places: Vec<Place>,
}

/// Approximation of a complex number with a certified error radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexApprox {
    pub real: BigRational,
    pub imaginary: BigRational,
    pub error_radius: f64,
    pub precision_bits: u32,
}

impl ComplexApprox {
    pub fn from_ball(b: &Ball, bits: u32) -> Self {
        let den = BigInt::one() << bits as usize;
        Self {
            real: BigRational::new(b.c.re.clone(), den.clone()),
            imaginary: BigRational::new(b.c.im.clone(), den),
            error_radius: b.rad,
            precision_bits: bits,
        }
    }

    pub fn re_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.real).unwrap_or(f64::NAN)
    }

    pub fn im_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.imaginary).unwrap_or(f64::NAN)
    }
}

/// `Q[x] / (f)` for a monic integral irreducible `f`.
pub struct SimpleField {
    modulus: QPoly,
    degree: usize,
    fingerprint: u64,
    /// `x^(n+i)` reduced into the power basis, for `i < n - 1`.
    reduction: Vec<QVec>,
    policy: PrecisionPolicy,
    embeddings: Mutex<BTreeMap<u32, Arc<EmbeddingData>>>,
    pub(crate) splitting: Option<SplittingData>,
}

impl std::fmt::Debug for SimpleField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimpleField")
            .field("modulus", &self.modulus.to_string())
            .field("degree", &self.degree)
            .finish()
    }
}

impl Clone for SimpleField {
    fn clone(&self) -> Self {
        Self {
            modulus: self.modulus.clone(),
            degree: self.degree,
            fingerprint: self.fingerprint,
            reduction: self.reduction.clone(),
            policy: self.policy,
            embeddings: Mutex::new(self.embeddings.lock().expect("cache lock").clone()),
            splitting: self.splitting.clone(),
        }
    }
}

fn is_integral(p: &QPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_integer())
}

impl SimpleField {
    /// Builds `Q[x]/(f)`, certifying that `f` is irreducible over Q.
    pub fn new(modulus: QPoly) -> Result<Self> {
        Self::with_policy(modulus, PrecisionPolicy::default())
    }

    pub fn with_policy(modulus: QPoly, policy: PrecisionPolicy) -> Result<Self> {
        let field = Self::trusted(modulus, policy)?;
        if field.degree > 1 {
            let q = Self::rationals_with(policy);
            let g = PolyRing::new(&q).map_from_rational(&field.modulus);
            let factors = super::roots::factor_over_field(&g, &q, super::roots::DEFAULT_FACTOR_CAP)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                let factor = &factors[0].0;
                let as_q = QPoly::from_rationals(factor.coeffs().iter().map(|c| c.coords[0].clone()).collect());
                return Err(GaloisError::Reducible {
                    factor: as_q.to_string(),
                });
            }
        }
        Ok(field)
    }

    /// The rationals, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::rationals_with(PrecisionPolicy::default())
    }

    pub fn rationals_with(policy: PrecisionPolicy) -> Self {
        Self::trusted(QPoly::from_ints(&[0, 1]), policy).expect("x is monic")
    }

    /// Skips the irreducibility certificate; the caller guarantees it
    /// (e.g. `f` is the minimal polynomial of an element).
    pub(crate) fn trusted(modulus: QPoly, policy: PrecisionPolicy) -> Result<Self> {
        let degree = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| GaloisError::InvalidInput("defining polynomial must have degree >= 1".into()))?;
        if !modulus.leading().is_some_and(One::is_one) || !is_integral(&modulus) {
            return Err(GaloisError::InvalidInput(format!(
                "defining polynomial {modulus} must be monic with integer coefficients"
            )));
        }
        let mut hasher = DefaultHasher::new();
        modulus.hash(&mut hasher);
        let fingerprint = hasher.finish();
        let n = degree;
        let mut reduction: Vec<QVec> = Vec::with_capacity(n.saturating_sub(1));
        if n >= 1 {
            let mut cur: QVec = modulus.coeffs()[..n].iter().map(|c| -c).collect();
            for _ in 0..n.saturating_sub(1) {
                reduction.push(cur.clone());
                // multiply by x and reduce
                let top = cur[n - 1].clone();
                let mut next = vec![BigRational::zero(); n];
                for i in (1..n).rev() {
                    next[i] = cur[i - 1].clone();
                }
                if !top.is_zero() {
                    for (i, x) in next.iter_mut().enumerate() {
                        *x -= &top * &modulus.coeffs()[i];
                    }
                }
                cur = next;
            }
        }
        Ok(Self {
            modulus,
            degree,
            fingerprint,
            reduction,
            policy,
            embeddings: Mutex::new(BTreeMap::new()),
            splitting: None,
        })
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    pub fn splitting_data(&self) -> Option<&SplittingData> {
        self.splitting.as_ref()
    }

    pub fn element(&self, coords: QVec) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(GaloisError::InvalidInput(format!(
                "{} coordinates for a degree {} field",
                coords.len(),
                self.degree
            )));
        }
        Ok(FieldElement {
            coords,
            owner: self.fingerprint,
        })
    }

    pub(crate) fn wrap(&self, coords: QVec) -> FieldElement {
        debug_assert_eq!(coords.len(), self.degree);
        FieldElement {
            coords,
            owner: self.fingerprint,
        }
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.degree];
        if self.degree == 1 {
            c[0] = -self.modulus.coeffs()[0].clone();
        } else {
            c[1] = BigRational::one();
        }
        self.wrap(c)
    }

    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.degree];
        c[i] = BigRational::one();
        self.wrap(c)
    }

    /// Reduces a polynomial in the generator into the power basis.
    pub fn from_poly(&self, p: &QPoly) -> FieldElement {
        let mut out = vec![BigRational::zero(); self.degree];
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < self.degree {
                out[i] += c;
            } else if self.degree == 1 {
                out[0] += c * self.generator().coords[0].pow(i as i32);
            } else {
                for (o, r) in out.iter_mut().zip(&self.reduction[i - self.degree]) {
                    *o += c * r;
                }
            }
        }
        self.wrap(out)
    }

    pub fn to_poly(&self, a: &FieldElement) -> QPoly {
        QPoly::from_rationals(a.coords.clone())
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.owner != self.fingerprint || a.coords.len() != self.degree {
            return Err(GaloisError::OwnerMismatch);
        }
        Ok(())
    }

    /// Matrix of multiplication by `a` (columns are images of basis powers).
    pub fn mul_matrix(&self, a: &FieldElement) -> Matrix {
        let cols: Vec<QVec> = (0..self.degree)
            .map(|i| self.mul(a, &self.basis_element(i)).coords)
            .collect();
        Matrix::from_columns(self.degree, &cols).expect("square")
    }

    /// Minimal polynomial over Q: the first linear dependence among powers.
    pub fn minimal_polynomial(&self, a: &FieldElement) -> QPoly {
        minimal_polynomial_by(self.degree, self.one().coords, |v| {
            self.mul(&self.wrap(v.to_vec()), a).coords
        })
    }

    /// Certified numeric roots of the defining polynomial at `bits` of
    /// precision, sorted by (real, imaginary); `None` if certification fails.
    pub fn embeddings_at(&self, bits: u32) -> Option<Arc<EmbeddingData>> {
        if let Some(e) = self.embeddings.lock().expect("cache lock").get(&bits) {
            return Some(e.clone());
        }
        let prec = Prec::new(bits);
        let coeffs: Vec<Ball> = self
            .modulus
            .coeffs()
            .iter()
            .map(|c| prec.from_rational(c))
            .collect();
        let mut roots = isolate_roots(prec, &coeffs)?;
        roots.sort_by(|a, b| compare_balls(a, b, bits));
        let places = classify_places(&roots, bits)?;
        let data = Arc::new(EmbeddingData { bits, roots, places });
        self.embeddings
            .lock()
            .expect("cache lock")
            .insert(bits, data.clone());
        Some(data)
    }

    /// First precision in the policy ladder at which the embeddings certify.
    pub fn embeddings(&self) -> Result<Arc<EmbeddingData>> {
        for bits in self.policy.ladder() {
            if let Some(e) = self.embeddings_at(bits) {
                return Ok(e);
            }
        }
        Err(GaloisError::Undecided {
            bits: self.policy.cap_bits,
            candidate: format!("root separation of {}", self.modulus),
        })
    }

    /// Value of `a` under the embedding sending the generator to `root`.
    pub fn eval_at(&self, a: &FieldElement, root: &Ball, bits: u32) -> Ball {
        Prec::new(bits).eval_rational(&a.coords, root)
    }

    /// Orders elements by their value under embedding 0, ascending by
    /// (real, imaginary).
    pub fn sort_canonically(&self, elems: &mut [FieldElement]) -> Result<()> {
        for bits in self.policy.ladder() {
            let Some(emb) = self.embeddings_at(bits) else {
                continue;
            };
            let values: Vec<Ball> = elems
                .iter()
                .map(|e| self.eval_at(e, &emb.roots[0], bits))
                .collect();
            // every pair of distinct elements must be separated
            let separated = (0..elems.len()).all(|i| {
                (i + 1..elems.len()).all(|j| elems[i] == elems[j] || values[i].disjoint_from(&values[j], bits))
            });
            if !separated {
                continue;
            }
            let mut idx: Vec<usize> = (0..elems.len()).collect();
            idx.sort_by(|&i, &j| compare_balls(&values[i], &values[j], bits));
            let sorted: Vec<FieldElement> = idx.iter().map(|&i| elems[i].clone()).collect();
            elems.clone_from_slice(&sorted);
            return Ok(());
        }
        Err(GaloisError::Undecided {
            bits: self.policy.cap_bits,
            candidate: "canonical ordering of field elements".into(),
        })
    }

    pub fn elem_arith(&self, a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => Field::sub(self, a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => {
                let inv = self.inv(b).ok_or(GaloisError::DivisionByZero)?;
                self.mul(a, &inv)
            }
        })
    }

    pub(crate) fn with_splitting(mut self, data: SplittingData) -> Self {
        self.splitting = Some(data);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Compares by real part, falling back to imaginary part when the real
/// parts cannot be separated.
pub(crate) fn compare_balls(a: &Ball, b: &Ball, bits: u32) -> Ordering {
    let sep = |x: &BigInt, y: &BigInt| -> Option<Ordering> {
        let d = x - y;
        let lower = Ball::exact(super::numeric::Cfx { re: d.clone(), im: BigInt::zero() })
            .c
            .abs_lower(bits);
        (lower > (a.rad + b.rad) * (1.0 + 1e-9)).then(|| if d.is_negative() { Ordering::Less } else { Ordering::Greater })
    };
    sep(&a.c.re, &b.c.re)
        .or_else(|| sep(&a.c.im, &b.c.im))
        .unwrap_or(Ordering::Equal)
}

fn classify_places(roots: &[Ball], bits: u32) -> Option<Vec<Place>> {
    let mut places = Vec::new();
    for (j, r) in roots.iter().enumerate() {
        let conj = r.conj();
        let hits: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, o)| o.overlaps(&conj, bits))
            .map(|(k, _)| k)
            .collect();
        if hits.len() != 1 {
            return None;
        }
        let partner = hits[0];
        if partner == j {
            if r.certainly_nonreal(bits) {
                return None;
            }
            places.push(Place::Real(j));
        } else {
            if !r.certainly_nonreal(bits) {
                return None;
            }
            if !r.c.im.is_negative() {
                places.push(Place::Complex(j, partner));
            }
        }
    }
    Some(places)
}

/// Minimal polynomial from repeated multiplication in a `dim`-dimensional
/// Q-algebra: the first `k` with `1, a, ..., a^k` dependent.
pub fn minimal_polynomial_by(dim: usize, one: QVec, mut times_a: impl FnMut(&[BigRational]) -> QVec) -> QPoly {
    let mut powers = vec![one];
    loop {
        let next = times_a(powers.last().expect("nonempty"));
        powers.push(next);
        let k = powers.len() - 1;
        let m = Matrix::from_columns(dim, &powers).expect("consistent");
        let kernel = m.kernel_basis();
        if let Some(v) = kernel.first() {
            // the first dependence has a nonzero top coefficient
            let top = v[k].clone();
            return QPoly::from_rationals(v.iter().map(|c| c / &top).collect());
        }
        assert!(k <= dim, "more than dim independent powers");
    }
}

impl Field for SimpleField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.wrap(vec![BigRational::zero(); self.degree])
    }

    fn one(&self) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.degree];
        c[0] = BigRational::one();
        self.wrap(c)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.wrap(a.coords.iter().map(|x| -x).collect())
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.degree;
        if n == 1 {
            return self.wrap(vec![&a.coords[0] * &b.coords[0]]);
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: QVec = prod[..n].to_vec();
        for (k, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduction[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        self.wrap(out)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree == 1 {
            return Some(self.wrap(vec![a.coords[0].recip()]));
        }
        let ring = PolyRing::new(&Rationals);
        let (g, s, _) = ring.ext_gcd(&self.to_poly(a), &self.modulus).ok()?;
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_poly(&s))
    }

    fn from_rational(&self, q: &BigRational) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.degree];
        c[0] = q.clone();
        self.wrap(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};

    fn field(c: &[i64]) -> SimpleField {
        SimpleField::new(QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let l = field(&[-2, 0, 1]);
        let a = l.generator();
        assert_eq!(l.elem_arith(&a, &a, ArithOp::Mul).unwrap(), l.from_int(2));
        let zero = l.zero();
        assert_eq!(l.elem_arith(&a, &zero, ArithOp::Add).unwrap(), a);
        assert_eq!(l.elem_arith(&a, &zero, ArithOp::Div), Err(GaloisError::DivisionByZero));
    }

    #[test]
    fn cube_root_inverse() {
        let l = field(&[-2, 0, 0, 1]);
        let inv = l.inv(&l.generator()).unwrap();
        assert_eq!(inv.coords, vec![int(0), int(0), rat(1, 2)]);
    }

    #[test]
    fn owner_mismatch() {
        let a = field(&[-2, 0, 1]);
        let b = field(&[-3, 0, 1]);
        assert_eq!(
            a.elem_arith(&a.generator(), &b.generator(), ArithOp::Add),
            Err(GaloisError::OwnerMismatch)
        );
    }

    #[test]
    fn minimal_polynomials() {
        let l = field(&[-2, 0, 0, 1]);
        assert_eq!(l.minimal_polynomial(&l.from_int(3)), QPoly::from_ints(&[-3, 1]));
        assert_eq!(l.minimal_polynomial(&l.generator()), QPoly::from_ints(&[-2, 0, 0, 1]));
        let sq = l.mul(&l.generator(), &l.generator());
        assert_eq!(l.minimal_polynomial(&sq), QPoly::from_ints(&[-4, 0, 0, 1]));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let err = SimpleField::new(QPoly::from_ints(&[-4, 0, 1])).unwrap_err();
        assert!(matches!(err, GaloisError::Reducible { .. }), "{err:?}");
        assert!(SimpleField::new(QPoly::from_rationals(vec![rat(-1, 2), int(0), int(1)])).is_err());
    }

    #[test]
    fn embeddings_sorted_and_classified() {
        let l = field(&[-2, 0, 1]);
        let e = l.embeddings().unwrap();
        assert!(e.roots[0].re_f64(e.bits) < 0.0);
        assert_eq!(e.places, vec![Place::Real(0), Place::Real(1)]);
        let c = field(&[1, 0, 0, 0, 1]);
        let e = c.embeddings().unwrap();
        assert_eq!(e.places.len(), 2);
        assert!(e.places.iter().all(|p| matches!(p, Place::Complex(..))));
    }
}
