//! Fixed fields, stabilizers and the lattice operations on intermediate
//! fields of a Galois extension, plus the verifier for the correspondence.

mod report;
mod verify;

use num_rational::BigRational;

use crate::arith::field::{common_denominator, Field};
use crate::arith::matrix::{echelon_basis, in_span, intersect_spans, solve_in_columns, Matrix, QVec};
use crate::arith::poly::{PolyRing, QPoly};
use crate::error::{GaloisError, Result};
use crate::groups::Subgroup;
use crate::homs::Embedding;
use crate::number_field::tower::vectors_of_norm;
use crate::number_field::{FieldElement, LPoly, PrecisionPolicy, SimpleField};

pub use report::{CorrespondenceReport, FieldSummary, GroupSummary, LatticeEntry, LatticeSummary, Verdict, WorkCounters};
pub use verify::{verify_fundamental_theorem, Analysis, VerifyOptions};

/// A subfield of `L`, stored as the echelon basis of its Q-span.
#[derive(Debug, Clone, PartialEq)]
pub struct IntermediateField {
    basis: Vec<QVec>,
    primitive: FieldElement,
    min_poly: QPoly,
    owner: u64,
}

impl IntermediateField {
    /// The subfield spanned by `vectors`, which must be closed under
    /// multiplication and contain 1.
    pub fn from_span(l: &SimpleField, vectors: &[QVec]) -> Result<Self> {
        let n = l.degree();
        let basis = echelon_basis(n, vectors);
        if !in_span(&basis, &l.one().coords) {
            return Err(GaloisError::InvariantViolation("subspace does not contain 1".into()));
        }
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let p = l.mul(&l.wrap(a.clone()), &l.wrap(b.clone()));
                if !in_span(&basis, &p.coords) {
                    return Err(GaloisError::InvariantViolation(
                        "subspace is not closed under multiplication".into(),
                    ));
                }
            }
        }
        let (primitive, min_poly) = find_primitive(l, &basis);
        Ok(Self {
            basis,
            primitive,
            min_poly,
            owner: l.fingerprint(),
        })
    }

    pub fn whole(l: &SimpleField) -> Self {
        let vectors: Vec<QVec> = (0..l.degree()).map(|i| l.basis_element(i).coords).collect();
        Self::from_span(l, &vectors).expect("L is a field")
    }

    pub fn rationals(l: &SimpleField) -> Self {
        Self::from_span(l, &[l.one().coords]).expect("Q is a field")
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn primitive(&self) -> &FieldElement {
        &self.primitive
    }

    /// Monic with integer coefficients.
    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        in_span(&self.basis, v)
    }

    pub fn is_subfield_of(&self, other: &IntermediateField) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Coordinates of `x` in the powers of the primitive element.
    pub fn coordinates_of(&self, l: &SimpleField, x: &FieldElement) -> Option<QVec> {
        if !self.contains(&x.coords) {
            return None;
        }
        let mut cols = Vec::with_capacity(self.degree());
        let mut p = l.one();
        for _ in 0..self.degree() {
            cols.push(p.coords.clone());
            p = l.mul(&p, &self.primitive);
        }
        solve_in_columns(l.degree(), &cols, &x.coords)
    }

    /// `Q[x]/(min_poly)`, isomorphic to this subfield.
    pub fn as_simple_field(&self, policy: PrecisionPolicy) -> SimpleField {
        SimpleField::trusted(self.min_poly.clone(), policy).expect("minimal polynomials are monic and integral")
    }
}

/// Primitive element of a subfield by search over integer combinations of
/// the echelon basis, rescaled to an algebraic integer.
fn find_primitive(l: &SimpleField, basis: &[QVec]) -> (FieldElement, QPoly) {
    let d = basis.len();
    if d == 1 {
        return (l.zero(), QPoly::from_ints(&[0, 1]));
    }
    // reversed so that earlier (lower) basis vectors are tried first
    for m in 1.. {
        for c in vectors_of_norm(d, m) {
            let mut theta = l.zero();
            for (ci, b) in c.iter().rev().zip(basis) {
                if *ci != 0 {
                    theta = l.add(&theta, &l.mul(&l.from_int(*ci), &l.wrap(b.clone())));
                }
            }
            let mp = l.minimal_polynomial(&theta);
            if mp.degree() != Some(d) {
                continue;
            }
            let den = common_denominator(mp.coeffs().iter());
            let dq = BigRational::from_integer(den);
            let theta = l.mul(&l.from_rational(&dq), &theta);
            let scaled = QPoly::from_rationals(
                mp.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x * dq.pow((d - i) as i32))
                    .collect(),
            );
            return (theta, scaled);
        }
    }
    unreachable!("every subfield of a number field has a primitive element")
}

/// Elements of `L` fixed by every automorphism in `h`.
pub fn fixed_field(l: &SimpleField, homs: &[Embedding], h: &Subgroup) -> Result<IntermediateField> {
    let n = l.degree();
    let mut rows: Vec<QVec> = Vec::new();
    for &i in h.members() {
        let m = homs[i].matrix.sub(&Matrix::identity(n))?;
        for r in 0..n {
            rows.push(m.row(r).to_vec());
        }
    }
    let stacked = Matrix::from_rows(&rows)?;
    let kernel = stacked.kernel_basis();
    let e = IntermediateField::from_span(l, &kernel)?;
    if e.degree() * h.order() != n {
        return Err(GaloisError::InvariantViolation(format!(
            "fixed field of a subgroup of order {} has degree {} in a field of degree {n}",
            h.order(),
            e.degree()
        )));
    }
    Ok(e)
}

/// Automorphisms fixing `e` pointwise.
pub fn stabilizer(homs: &[Embedding], e: &IntermediateField) -> Subgroup {
    let members = homs
        .iter()
        .enumerate()
        .filter(|(_, s)| e.basis().iter().all(|b| s.apply_vec(b) == *b))
        .map(|(i, _)| i)
        .collect();
    Subgroup::from_members(members)
}

/// Smallest subfield containing both.
pub fn compositum(l: &SimpleField, a: &IntermediateField, b: &IntermediateField) -> Result<IntermediateField> {
    let n = l.degree();
    let mut span: Vec<QVec> = echelon_basis(n, &[a.basis(), b.basis()].concat());
    loop {
        let mut vectors = span.clone();
        for (i, x) in span.iter().enumerate() {
            for y in &span[i..] {
                vectors.push(l.mul(&l.wrap(x.clone()), &l.wrap(y.clone())).coords);
            }
        }
        let next = echelon_basis(n, &vectors);
        if next.len() == span.len() {
            break;
        }
        span = next;
    }
    IntermediateField::from_span(l, &span)
}

pub fn intersect(l: &SimpleField, a: &IntermediateField, b: &IntermediateField) -> Result<IntermediateField> {
    IntermediateField::from_span(l, &intersect_spans(l.degree(), a.basis(), b.basis()))
}

/// `prod_{s in H} (T - s(a))`, with the check that its coefficients are
/// fixed by `H` and that it vanishes at `a`.
pub fn proof_polynomial(
    l: &SimpleField,
    homs: &[Embedding],
    h: &Subgroup,
    fixed: &IntermediateField,
    a: &FieldElement,
) -> Result<LPoly> {
    let ring = PolyRing::new(l);
    let factors: Vec<LPoly> = h.members().iter().map(|&i| ring.linear(&homs[i].apply(l, a))).collect();
    let p = ring.product(factors.iter());
    for (k, c) in p.coeffs().iter().enumerate() {
        if !fixed.contains(&c.coords) {
            return Err(GaloisError::InvariantViolation(format!(
                "coefficient of T^{k} lies outside the fixed field"
            )));
        }
    }
    if !l.is_zero(&ring.eval(&p, a)) {
        return Err(GaloisError::InvariantViolation("proof polynomial does not vanish".into()));
    }
    Ok(p)
}

/// Deterministic sample elements for proof polynomials: the generator `a`,
/// `a^2`, and `a + a^2`.
pub fn sample_elements(l: &SimpleField) -> Vec<FieldElement> {
    let a = l.generator();
    let b = l.mul(&a, &a);
    let s = l.add(&a, &b);
    vec![a, b, s]
}
