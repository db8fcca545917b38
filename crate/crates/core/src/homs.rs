//! Field homomorphisms `L -> L`, determined by the image of the generator.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::field::Field;
use crate::arith::matrix::{Matrix, QVec};
use crate::arith::poly::{PolyRing, QPoly};
use crate::arith::Rationals;
use crate::correspondence::IntermediateField;
use crate::error::{GaloisError, Result};
use crate::groups::{compose_perm, Perm, PermGroup, DEFAULT_GROUP_CAP};
use crate::number_field::numeric::Prec;
use crate::number_field::roots::lift;
use crate::number_field::{roots_in_field, FieldElement, SimpleField};

/// A homomorphism `L -> L` sending the generator to `image`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub image: FieldElement,
    /// Columns are the coordinates of `image^i`.
    pub matrix: Matrix,
    /// Action on the canonical roots: root `j` maps to root `permutation[j]`.
    pub permutation: Option<Perm>,
    owner: u64,
}

impl Embedding {
    /// Builds the homomorphism from a root of the defining polynomial.
    pub fn from_image(l: &SimpleField, image: FieldElement) -> Result<Self> {
        let roots = canonical_roots(l)?;
        Self::with_roots(l, image, &roots)
    }

    /// Like [`Embedding::from_image`], recording the action on `roots`.
    pub fn with_roots(l: &SimpleField, image: FieldElement, roots: &[FieldElement]) -> Result<Self> {
        let ring = PolyRing::new(l);
        if !l.is_zero(&ring.eval(&lift(l.modulus(), l), &image)) {
            return Err(GaloisError::InvalidInput(
                "generator image is not a root of the defining polynomial".into(),
            ));
        }
        let n = l.degree();
        let mut cols = Vec::with_capacity(n);
        let mut p = l.one();
        for _ in 0..n {
            cols.push(p.coords.clone());
            p = l.mul(&p, &image);
        }
        let matrix = Matrix::from_columns(n, &cols)?;
        let mut e = Self {
            image,
            matrix,
            permutation: None,
            owner: l.fingerprint(),
        };
        let perm: Option<Perm> = roots
            .iter()
            .map(|r| {
                let img = e.apply(l, r);
                roots.iter().position(|s| *s == img)
            })
            .collect();
        e.permutation = perm;
        Ok(e)
    }

    pub fn apply(&self, l: &SimpleField, a: &FieldElement) -> FieldElement {
        l.wrap(self.matrix.mul_vec(&a.coords).expect("dimension"))
    }

    pub fn apply_vec(&self, v: &[BigRational]) -> QVec {
        self.matrix.mul_vec(v).expect("dimension")
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.rows())
    }
}

/// Roots that automorphisms permute: the roots of the split polynomial for a
/// splitting field, otherwise the roots of the defining polynomial in `L`.
pub fn canonical_roots(l: &SimpleField) -> Result<Vec<FieldElement>> {
    match l.splitting_data() {
        Some(d) => Ok(d.roots.clone()),
        None => roots_in_field(&lift(l.modulus(), l), l),
    }
}

/// All homomorphisms `L -> L` over Q, in canonical order of the generator
/// images.
pub fn enumerate_endomorphisms(l: &SimpleField) -> Result<Vec<Embedding>> {
    let images = roots_in_field(&lift(l.modulus(), l), l)?;
    images.into_iter().map(|r| Embedding::from_image(l, r)).collect()
}

/// Homomorphisms fixing `fixing` pointwise: the roots in `L` of the minimal
/// polynomial of the generator over `fixing`.
pub fn enumerate_fixing(l: &SimpleField, fixing: &IntermediateField) -> Result<Vec<Embedding>> {
    let all = enumerate_endomorphisms(l)?;
    let relative = relative_minimal_polynomial(l, fixing)?;
    let images = roots_in_field(&relative, l)?;
    let out: Vec<Embedding> = all.into_iter().filter(|e| images.contains(&e.image)).collect();
    for e in &out {
        if fixing.basis().iter().any(|b| e.apply_vec(b) != *b) {
            return Err(GaloisError::InvariantViolation(
                "root of the relative minimal polynomial moves the base field".into(),
            ));
        }
    }
    Ok(out)
}

/// Minimal polynomial of the generator of `L` over the subfield `E`: the
/// first monic dependence of `1, a, a^2, …` over `E`.
pub fn relative_minimal_polynomial(l: &SimpleField, e: &IntermediateField) -> Result<crate::number_field::LPoly> {
    let n = l.degree();
    let a = l.generator();
    let basis: Vec<FieldElement> = e.basis().iter().map(|b| l.wrap(b.clone())).collect();
    // columns b_j * a^i for i <= k, j over the basis; look for a dependence
    // with the top power's coefficient fixed to 1
    let mut power = l.one();
    let mut powers = vec![power.clone()];
    for k in 1..=n {
        power = l.mul(&power, &a);
        powers.push(power.clone());
        let mut cols: Vec<QVec> = Vec::new();
        for p in &powers[..k] {
            for b in &basis {
                cols.push(l.mul(b, p).coords);
            }
        }
        cols.push(powers[k].coords.clone());
        let m = Matrix::from_columns(n, &cols)?;
        let last = cols.len() - 1;
        if let Some(v) = m.kernel_basis().into_iter().find(|v| !v[last].is_zero()) {
            let sol: QVec = v.iter().map(|x| x / &v[last]).collect();
            let mut coeffs = Vec::with_capacity(k + 1);
            for i in 0..k {
                let mut c = l.zero();
                for (j, b) in basis.iter().enumerate() {
                    let s = l.from_rational(&sol[i * basis.len() + j]);
                    c = l.add(&c, &l.mul(&s, b));
                }
                coeffs.push(c);
            }
            coeffs.push(l.one());
            return Ok(PolyRing::new(l).poly(coeffs));
        }
    }
    Err(GaloisError::InvariantViolation("no relative minimal polynomial found".into()))
}

/// Asserts every endomorphism is invertible.
pub fn certify_automorphisms(homs: Vec<Embedding>) -> Result<Vec<Embedding>> {
    for (i, h) in homs.iter().enumerate() {
        if h.matrix.determinant()?.is_zero() {
            return Err(GaloisError::InvariantViolation(format!(
                "endomorphism {i} has a singular matrix"
            )));
        }
    }
    Ok(homs)
}

/// `s ∘ t`.
pub fn compose(l: &SimpleField, s: &Embedding, t: &Embedding) -> Result<Embedding> {
    if s.owner != t.owner || s.owner != l.fingerprint() {
        return Err(GaloisError::OwnerMismatch);
    }
    let image = s.apply(l, &t.image);
    let matrix = s.matrix.mul(&t.matrix)?;
    let permutation = match (&s.permutation, &t.permutation) {
        (Some(p), Some(q)) => Some(compose_perm(p, q)),
        _ => None,
    };
    Ok(Embedding {
        image,
        matrix,
        permutation,
        owner: s.owner,
    })
}

/// Image of a subfield's primitive element.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub image: FieldElement,
    /// Coordinates of the image in powers of the subfield's primitive
    /// element, when the image lies in the subfield.
    pub coords_in_subfield: Option<QVec>,
    pub stabilizes: bool,
}

pub fn restrict(l: &SimpleField, s: &Embedding, e: &IntermediateField) -> Restriction {
    let image = s.apply(l, e.primitive());
    let coords_in_subfield = e.coordinates_of(l, &image);
    Restriction {
        stabilizes: coords_in_subfield.is_some(),
        image,
        coords_in_subfield,
    }
}

/// `L` is normal over Q iff its defining polynomial splits in `L`.
pub fn is_normal(l: &SimpleField) -> Result<bool> {
    Ok(roots_in_field(&lift(l.modulus(), l), l)?.len() == l.degree())
}

/// Squarefree test via `gcd(f, f') = 1`.
pub fn separability_check(f: &QPoly) -> bool {
    let ring = PolyRing::new(&Rationals);
    !f.is_zero() && ring.is_squarefree(f).unwrap_or(false)
}

/// Whether every automorphism takes the same value on `a`.
pub fn verify_ground(l: &SimpleField, homs: &[Embedding], a: &FieldElement) -> bool {
    let images: BTreeSet<Vec<String>> = homs.iter().map(|h| h.apply(l, a).coords_string()).collect();
    images.len() <= 1
}

/// The automorphisms as a permutation group on the canonical roots, indexed
/// in the same order as `homs`.
pub fn automorphism_group(homs: &[Embedding]) -> Result<PermGroup> {
    let perms: Vec<Perm> = homs
        .iter()
        .map(|h| {
            h.permutation
                .clone()
                .ok_or_else(|| GaloisError::InvariantViolation("automorphism does not permute the roots".into()))
        })
        .collect::<Result<_>>()?;
    if perms.len() > DEFAULT_GROUP_CAP {
        return Err(GaloisError::Capacity {
            what: "automorphism group order",
            actual: perms.len(),
            cap: DEFAULT_GROUP_CAP,
        });
    }
    let degree = perms.first().map_or(0, Vec::len);
    PermGroup::new(degree, perms)
}

/// The right action of the automorphisms on the complex embeddings of `L`:
/// entry `[h][j]` is the index `k` with `embedding_j ∘ h = embedding_k`.
/// Computed from certified numerics only.
pub fn embedding_action(l: &SimpleField, homs: &[Embedding]) -> Result<Vec<Vec<usize>>> {
    'ladder: for bits in l.policy().ladder() {
        let Some(emb) = l.embeddings_at(bits) else {
            continue;
        };
        let prec = Prec::new(bits);
        let mut out = Vec::with_capacity(homs.len());
        for h in homs {
            let mut row = Vec::with_capacity(emb.roots.len());
            for root in &emb.roots {
                let v = prec.eval_rational(&h.image.coords, root);
                let hits: Vec<usize> = emb
                    .roots
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.overlaps(&v, bits))
                    .map(|(k, _)| k)
                    .collect();
                if hits.len() != 1 {
                    continue 'ladder;
                }
                row.push(hits[0]);
            }
            out.push(row);
        }
        return Ok(out);
    }
    Err(GaloisError::Undecided {
        bits: l.policy().cap_bits,
        candidate: "action of automorphisms on complex embeddings".into(),
    })
}

/// Whether the automorphisms act transitively on the complex embeddings.
pub fn acts_transitively(l: &SimpleField, homs: &[Embedding]) -> Result<bool> {
    let action = embedding_action(l, homs)?;
    let mut orbit: BTreeSet<usize> = action.iter().map(|row| row[0]).collect();
    orbit.insert(0);
    Ok(orbit.len() == l.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::splitting_field;

    fn field(c: &[i64]) -> SimpleField {
        SimpleField::new(QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn sqrt2_endomorphisms() {
        let l = field(&[-2, 0, 1]);
        let homs = certify_automorphisms(enumerate_endomorphisms(&l).unwrap()).unwrap();
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().any(Embedding::is_identity));
        let neg = homs.iter().find(|h| !h.is_identity()).unwrap();
        assert_eq!(neg.image, l.neg(&l.generator()));
        let sq = compose(&l, neg, neg).unwrap();
        assert!(sq.is_identity());
        assert!(is_normal(&l).unwrap());
        assert!(acts_transitively(&l, &homs).unwrap());
        assert!(!verify_ground(&l, &homs, &l.generator()));
        assert!(verify_ground(&l, &homs, &l.from_int(7)));
    }

    #[test]
    fn rationals_have_identity_only() {
        let q = SimpleField::rationals();
        let homs = enumerate_endomorphisms(&q).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_identity());
    }

    #[test]
    fn cube_root_field_is_rigid() {
        let l = field(&[-2, 0, 0, 1]);
        let homs = enumerate_endomorphisms(&l).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(!is_normal(&l).unwrap());
        assert!(!acts_transitively(&l, &homs).unwrap());
    }

    #[test]
    fn x4_plus_1_is_normal() {
        let l = field(&[1, 0, 0, 0, 1]);
        assert!(is_normal(&l).unwrap());
        let homs = enumerate_endomorphisms(&l).unwrap();
        assert_eq!(homs.len(), 4);
        assert!(acts_transitively(&l, &homs).unwrap());
    }

    #[test]
    fn splitting_field_of_x3_minus_2() {
        let s = splitting_field(&QPoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let homs = certify_automorphisms(enumerate_endomorphisms(&s.field).unwrap()).unwrap();
        assert_eq!(homs.len(), 6);
        let g = automorphism_group(&homs).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // an order-3 element composed with itself has order 3 again and
        // with a transposition gives an element of order 2
        let r = (0..6).find(|&i| g.element_order(i) == 3).unwrap();
        let t = (0..6).find(|&i| g.element_order(i) == 2).unwrap();
        assert_eq!(g.element_order(g.mul(r, t)), 2);
        let c = compose(&s.field, &homs[r], &homs[t]).unwrap();
        assert_eq!(c.permutation.as_ref(), Some(g.element(g.mul(r, t))));
    }

    #[test]
    fn separability() {
        assert!(separability_check(&QPoly::from_ints(&[-2, 0, 1])));
        assert!(!separability_check(&QPoly::from_ints(&[1, -2, 1])));
        assert!(separability_check(&QPoly::from_ints(&[1, 0, 0, 0, 1])));
    }
}
