//! Iterated simple extensions `Q = L_0 ⊆ L_1 ⊆ … ⊆ L_k` and their collapse
//! to a single primitive element.
//!
//! Coordinates use the power-product basis `a_1^e_1 ⋯ a_k^e_k`, indexed by
//! `sum e_i D_{i-1}` where `D_i` is the degree of `L_i`; the top generator is
//! the most significant digit.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::roots::{factor_over_field, DEFAULT_FACTOR_CAP};
use super::simple::{minimal_polynomial_by, FieldElement, SimpleField};
use super::PrecisionPolicy;
use crate::arith::field::{common_denominator, rational_string, Field};
use crate::arith::matrix::{Matrix, QVec};
use crate::arith::poly::{Poly, PolyRing, QPoly};
use crate::error::{GaloisError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub name: String,
    /// Monic defining polynomial; coefficient `i` holds coordinates in the
    /// level below.
    pub poly: Vec<QVec>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
}

#[derive(Debug, Clone)]
pub struct FieldTower {
    levels: Vec<Level>,
    dims: Vec<usize>,
    fingerprint: u64,
    policy: PrecisionPolicy,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        Self::with_policy(PrecisionPolicy::default())
    }

    pub fn with_policy(policy: PrecisionPolicy) -> Self {
        Self::from_levels(Vec::new(), policy)
    }

    fn from_levels(levels: Vec<Level>, policy: PrecisionPolicy) -> Self {
        let mut dims = vec![1];
        for l in &levels {
            dims.push(dims.last().unwrap() * l.degree());
        }
        let mut h = DefaultHasher::new();
        "tower".hash(&mut h);
        for l in &levels {
            l.poly.hash(&mut h);
        }
        Self {
            levels,
            dims,
            fingerprint: h.finish(),
            policy,
        }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn degree(&self) -> usize {
        *self.dims.last().unwrap()
    }

    /// Degree of the field generated by the first `depth` levels.
    pub fn degree_at(&self, depth: usize) -> usize {
        self.dims[depth]
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Field arithmetic on the whole tower.
    pub fn top(&self) -> TowerLevel<'_> {
        TowerLevel {
            tower: self,
            depth: self.levels.len(),
        }
    }

    pub fn level(&self, depth: usize) -> TowerLevel<'_> {
        assert!(depth <= self.levels.len());
        TowerLevel { tower: self, depth }
    }

    pub fn element(&self, coords: QVec) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(GaloisError::InvalidInput(format!(
                "{} coordinates for a degree {} tower",
                coords.len(),
                self.degree()
            )));
        }
        Ok(FieldElement::with_owner(coords, self.fingerprint))
    }

    pub(crate) fn wrap(&self, coords: QVec) -> FieldElement {
        FieldElement::with_owner(coords, self.fingerprint)
    }

    /// The generator `a_i` of level `i` (1-based).
    pub fn generator(&self, i: usize) -> FieldElement {
        assert!(i >= 1 && i <= self.levels.len());
        let mut c = vec![BigRational::zero(); self.degree()];
        c[self.dims[i - 1]] = BigRational::one();
        self.wrap(c)
    }

    /// Embeds coordinates from depth `depth` into the full tower.
    pub fn lift_from(&self, depth: usize, coords: &[BigRational]) -> QVec {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[..self.dims[depth]].clone_from_slice(coords);
        c
    }

    pub fn elem_arith(&self, a: &FieldElement, b: &FieldElement, op: super::ArithOp) -> Result<FieldElement> {
        for x in [a, b] {
            if x.owner() != self.fingerprint || x.coords.len() != self.degree() {
                return Err(GaloisError::OwnerMismatch);
            }
        }
        let top = self.top();
        let c = match op {
            super::ArithOp::Add => top.add(&a.coords, &b.coords),
            super::ArithOp::Sub => top.sub(&a.coords, &b.coords),
            super::ArithOp::Mul => top.mul(&a.coords, &b.coords),
            super::ArithOp::Div => {
                let inv = top.inv(&b.coords).ok_or(GaloisError::DivisionByZero)?;
                top.mul(&a.coords, &inv)
            }
        };
        Ok(self.wrap(c))
    }

    pub fn minimal_polynomial(&self, a: &FieldElement) -> QPoly {
        let top = self.top();
        minimal_polynomial_by(self.degree(), top.one(), |v| top.mul(&v.to_vec(), &a.coords))
    }

    /// Human-readable form of an element in the generator names.
    pub fn element_string(&self, coords: &[BigRational]) -> String {
        let mut terms = Vec::new();
        for (idx, c) in coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut rest = idx;
            let mut mono = Vec::new();
            for (i, l) in self.levels.iter().enumerate().rev() {
                let e = rest / self.dims[i];
                rest %= self.dims[i];
                match e {
                    0 => {}
                    1 => mono.insert(0, l.name.clone()),
                    _ => mono.insert(0, format!("{}^{e}", l.name)),
                }
            }
            let mag = rational_string(&c.abs());
            let body = match (mono.is_empty(), c.abs().is_one()) {
                (true, _) => mag,
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, body)) in terms.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    /// Adjoins a root of `g`, certifying that `g` is irreducible over the
    /// current top field.
    pub fn adjoin_root(&self, g: &Poly<FieldElement>) -> Result<FieldTower> {
        let deg = g.degree().unwrap_or(0);
        if deg < 2 {
            return Err(GaloisError::InvalidInput(format!(
                "adjoined polynomial must have degree at least 2, got {deg}"
            )));
        }
        if !self.is_one(g.leading().unwrap()) {
            return Err(GaloisError::InvalidInput("adjoined polynomial must be monic".into()));
        }
        let collapsed = collapse_primitive(self);
        let l = &collapsed.simple;
        let lg = PolyRing::new(l).poly(g.coeffs().iter().map(|c| collapsed.tower_to_simple(c)).collect());
        let factors = factor_over_field(&lg, l, DEFAULT_FACTOR_CAP)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            let f = &factors[0].0;
            let coeffs: Vec<String> = f
                .coeffs()
                .iter()
                .map(|c| self.element_string(&collapsed.simple_to_tower(c).coords))
                .collect();
            return Err(GaloisError::Reducible {
                factor: poly_string(&coeffs),
            });
        }
        Ok(self.adjoin_trusted(g))
    }

    /// Adjoins without the irreducibility certificate.
    pub(crate) fn adjoin_trusted(&self, g: &Poly<FieldElement>) -> FieldTower {
        let mut levels = self.levels.clone();
        levels.push(Level {
            name: format!("a{}", levels.len() + 1),
            poly: g.coeffs().iter().map(|c| c.coords.clone()).collect(),
        });
        Self::from_levels(levels, self.policy)
    }

    /// Adjoins a root of a rational polynomial.
    pub fn adjoin_rational(&self, g: &QPoly) -> Result<FieldTower> {
        self.adjoin_root(&PolyRing::new(self).map_from_rational(g))
    }
}

fn poly_string(coeffs: &[String]) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (i, c.as_str()) {
            (0, _) => format!("({c})"),
            (_, "1") => mono,
            _ => format!("({c})*{mono}"),
        });
    }
    terms.join(" + ")
}

/// Field operations at one depth of a tower, on raw coordinate vectors.
#[derive(Debug, Clone, Copy)]
pub struct TowerLevel<'a> {
    tower: &'a FieldTower,
    depth: usize,
}

impl TowerLevel<'_> {
    fn dim(&self) -> usize {
        self.tower.dims[self.depth]
    }

    fn below(&self) -> Self {
        TowerLevel {
            tower: self.tower,
            depth: self.depth - 1,
        }
    }

    fn chunks(&self, a: &[BigRational]) -> Vec<QVec> {
        let d = self.tower.dims[self.depth - 1];
        a.chunks(d).map(<[BigRational]>::to_vec).collect()
    }
}

impl Field for TowerLevel<'_> {
    type Elem = QVec;

    fn zero(&self) -> QVec {
        vec![BigRational::zero(); self.dim()]
    }

    fn one(&self) -> QVec {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }

    fn is_zero(&self, a: &QVec) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &QVec, b: &QVec) -> QVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &QVec, b: &QVec) -> QVec {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn neg(&self, a: &QVec) -> QVec {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &QVec, b: &QVec) -> QVec {
        if self.depth == 0 {
            return vec![&a[0] * &b[0]];
        }
        let below = self.below();
        let level = &self.tower.levels[self.depth - 1];
        let d = level.degree();
        let (ac, bc) = (self.chunks(a), self.chunks(b));
        let mut prod = vec![below.zero(); 2 * d - 1];
        for (i, x) in ac.iter().enumerate() {
            if below.is_zero(x) {
                continue;
            }
            for (j, y) in bc.iter().enumerate() {
                if !below.is_zero(y) {
                    prod[i + j] = below.add(&prod[i + j], &below.mul(x, y));
                }
            }
        }
        for j in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[j], below.zero());
            if below.is_zero(&c) {
                continue;
            }
            for (i, g) in level.poly[..d].iter().enumerate() {
                prod[j - d + i] = below.sub(&prod[j - d + i], &below.mul(&c, g));
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    fn inv(&self, a: &QVec) -> Option<QVec> {
        if self.is_zero(a) {
            return None;
        }
        if self.depth == 0 {
            return Some(vec![a[0].recip()]);
        }
        let below = self.below();
        let ring = PolyRing::new(&below);
        let level = &self.tower.levels[self.depth - 1];
        let pa = ring.poly(self.chunks(a));
        let g = ring.poly(level.poly.clone());
        let (gcd, s, _) = ring.ext_gcd(&pa, &g).ok()?;
        debug_assert_eq!(gcd.degree(), Some(0));
        let mut out = s.into_coeffs();
        out.resize(level.degree(), below.zero());
        Some(out.concat())
    }

    fn from_rational(&self, q: &BigRational) -> QVec {
        let mut v = self.zero();
        v[0] = q.clone();
        v
    }
}

/// Arithmetic on tower elements (the top level).
impl Field for FieldTower {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.wrap(self.top().zero())
    }
    fn one(&self) -> FieldElement {
        self.wrap(self.top().one())
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        self.top().is_zero(&a.coords)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(self.top().add(&a.coords, &b.coords))
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(self.top().sub(&a.coords, &b.coords))
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.wrap(self.top().neg(&a.coords))
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.wrap(self.top().mul(&a.coords, &b.coords))
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.top().inv(&a.coords).map(|c| self.wrap(c))
    }
    fn from_rational(&self, q: &BigRational) -> FieldElement {
        self.wrap(self.top().from_rational(q))
    }
}

/// A tower presented as `Q(theta)` with exact coordinate maps.
#[derive(Debug, Clone)]
pub struct Collapsed {
    pub simple: SimpleField,
    /// Columns: powers of the primitive element in tower coordinates.
    pub to_tower: Matrix,
    pub to_simple: Matrix,
    /// `theta = sum combo[i] * a_(i+1)`.
    pub combo: Vec<BigInt>,
    pub primitive: FieldElement,
    tower_fingerprint: u64,
}

impl Collapsed {
    pub fn tower_to_simple(&self, a: &FieldElement) -> FieldElement {
        debug_assert_eq!(a.owner(), self.tower_fingerprint);
        self.simple.wrap(self.to_simple.mul_vec(&a.coords).expect("dimension"))
    }

    pub fn simple_to_tower(&self, a: &FieldElement) -> FieldElement {
        FieldElement::with_owner(self.to_tower.mul_vec(&a.coords).expect("dimension"), self.tower_fingerprint)
    }
}

/// Integer vectors of length `k` with max-norm exactly `m`, lexicographic in
/// the value order `0, 1, -1, 2, -2, …`.
pub(crate) fn vectors_of_norm(k: usize, m: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=m).flat_map(|v| [v, -v]))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let v: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if v.iter().any(|x| x.abs() == m) {
            out.push(v);
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] + 1 < values.len()) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = 0;
        }
    }
    out
}

/// Finds a primitive element by deterministic search and presents the
/// tower as a simple extension.
pub fn collapse_primitive(tower: &FieldTower) -> Collapsed {
    let n = tower.degree();
    let k = tower.levels().len();
    let top = tower.top();
    if k == 0 {
        return Collapsed {
            simple: SimpleField::rationals_with(tower.policy()),
            to_tower: Matrix::identity(1),
            to_simple: Matrix::identity(1),
            combo: Vec::new(),
            primitive: tower.wrap(vec![BigRational::zero()]),
            tower_fingerprint: tower.fingerprint(),
        };
    }
    let gens: Vec<FieldElement> = (1..=k).map(|i| tower.generator(i)).collect();
    for m in 1.. {
        for c in vectors_of_norm(k, m) {
            let mut theta = top.zero();
            for (ci, g) in c.iter().zip(&gens) {
                if *ci != 0 {
                    theta = top.add(&theta, &top.mul(&top.from_int(*ci), &g.coords));
                }
            }
            let theta = tower.wrap(theta);
            let minpoly = tower.minimal_polynomial(&theta);
            if minpoly.degree() != Some(n) {
                continue;
            }
            return finish_collapse(tower, &c, theta, &minpoly);
        }
    }
    unreachable!("characteristic zero towers always have a primitive element")
}

fn finish_collapse(tower: &FieldTower, c: &[i64], theta: FieldElement, minpoly: &QPoly) -> Collapsed {
    let n = tower.degree();
    let top = tower.top();
    // rescale so the defining polynomial has integer coefficients
    let d = common_denominator(minpoly.coeffs().iter());
    let dq = BigRational::from_integer(d.clone());
    let theta = tower.wrap(top.mul(&top.from_rational(&dq), &theta.coords));
    let modulus = QPoly::from_rationals(
        minpoly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, x)| x * dq.pow((n - i) as i32))
            .collect(),
    );
    let simple = SimpleField::trusted(modulus, tower.policy()).expect("monic integral minimal polynomial");
    let mut cols = Vec::with_capacity(n);
    let mut p = top.one();
    for _ in 0..n {
        cols.push(p.clone());
        p = top.mul(&p, &theta.coords);
    }
    let to_tower = Matrix::from_columns(n, &cols).expect("square");
    let to_simple = to_tower.inverse().expect("powers of a primitive element form a basis");
    Collapsed {
        simple,
        to_tower,
        to_simple,
        combo: c.iter().map(|x| BigInt::from(*x) * &d).collect(),
        primitive: theta,
        tower_fingerprint: tower.fingerprint(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};

    fn sqrt2_sqrt3() -> FieldTower {
        FieldTower::rationals()
            .adjoin_rational(&QPoly::from_ints(&[-2, 0, 1]))
            .unwrap()
            .adjoin_rational(&QPoly::from_ints(&[-3, 0, 1]))
            .unwrap()
    }

    #[test]
    fn degrees_multiply() {
        let t = sqrt2_sqrt3();
        assert_eq!(t.degree(), 4);
        assert_eq!(t.degree_at(1), 2);
    }

    #[test]
    fn reducible_adjunction_is_rejected() {
        let err = FieldTower::rationals()
            .adjoin_rational(&QPoly::from_ints(&[-4, 0, 1]))
            .unwrap_err();
        assert!(matches!(err, GaloisError::Reducible { .. }));
        let q2 = FieldTower::rationals().adjoin_rational(&QPoly::from_ints(&[-2, 0, 1])).unwrap();
        // x^2 - 8 = (x - 2 a1)(x + 2 a1)
        assert!(q2.adjoin_rational(&QPoly::from_ints(&[-8, 0, 1])).is_err());
    }

    #[test]
    fn tower_arithmetic() {
        let t = sqrt2_sqrt3();
        let (a, b) = (t.generator(1), t.generator(2));
        let ab = t.elem_arith(&a, &b, super::super::ArithOp::Mul).unwrap();
        let sq = t.elem_arith(&ab, &ab, super::super::ArithOp::Mul).unwrap();
        assert_eq!(sq.coords, t.lift_from(0, &[int(6)]));
        let inv = t.elem_arith(&t.wrap(t.top().one()), &ab, super::super::ArithOp::Div).unwrap();
        // 1/(a b) = a b / 6
        let expect: QVec = ab.coords.iter().map(|x| x * rat(1, 6)).collect();
        assert_eq!(inv.coords, expect);
        assert_eq!(t.element_string(&ab.coords), "a1*a2");
    }

    #[test]
    fn collapse_sqrt2_sqrt3() {
        let t = sqrt2_sqrt3();
        let c = collapse_primitive(&t);
        assert_eq!(c.simple.modulus(), &QPoly::from_ints(&[1, 0, -10, 0, 1]));
        assert_eq!(c.combo, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(c.to_simple.mul(&c.to_tower).unwrap(), Matrix::identity(4));
        assert_eq!(c.to_tower.mul(&c.to_simple).unwrap(), Matrix::identity(4));
    }

    #[test]
    fn collapse_trivial_tower() {
        let c = collapse_primitive(&FieldTower::rationals());
        assert_eq!(c.simple.degree(), 1);
        assert_eq!(c.to_tower, Matrix::identity(1));
    }

    #[test]
    fn collapse_cube_root_and_omega() {
        let t = FieldTower::rationals()
            .adjoin_rational(&QPoly::from_ints(&[-2, 0, 0, 1]))
            .unwrap()
            .adjoin_rational(&QPoly::from_ints(&[1, 1, 1]))
            .unwrap();
        let c = collapse_primitive(&t);
        assert_eq!(c.simple.degree(), 6);
        let m = c.simple.minimal_polynomial(&c.simple.generator());
        assert_eq!(m.degree(), Some(6));
        assert_eq!(c.to_simple.mul(&c.to_tower).unwrap(), Matrix::identity(6));
    }

    #[test]
    fn rational_level_coefficients_are_rescaled() {
        let t = FieldTower::rationals()
            .adjoin_rational(&QPoly::from_rationals(vec![rat(-1, 2), int(0), int(1)]))
            .unwrap();
        let c = collapse_primitive(&t);
        assert!(c.simple.modulus().coeffs().iter().all(|x| x.is_integer()));
        assert_eq!(c.simple.modulus(), &QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(c.combo, vec![BigInt::from(2)]);
    }

    #[test]
    fn norm_order() {
        assert_eq!(vectors_of_norm(2, 1), vec![
            vec![0, 1],
            vec![0, -1],
            vec![1, 0],
            vec![1, 1],
            vec![1, -1],
            vec![-1, 0],
            vec![-1, 1],
            vec![-1, -1]
        ]);
    }
}
