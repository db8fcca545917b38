use num_bigint::BigInt;
use num_traits::Zero;

use super::roots::{factor_over_field, LPoly, DEFAULT_FACTOR_CAP};
use super::simple::{FieldElement, SimpleField};
use super::tower::{collapse_primitive, Collapsed, FieldTower};
use super::{PrecisionPolicy, SplittingData};
use crate::arith::field::{Field, Rationals};
use crate::arith::poly::{PolyRing, QPoly};
use crate::error::{GaloisError, Result};

pub const DEFAULT_POLY_DEGREE_CAP: usize = 8;
pub const DEFAULT_FIELD_DEGREE_CAP: usize = 24;

/// Limits for splitting field construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingOptions {
    pub max_poly_degree: usize,
    pub max_field_degree: usize,
    pub policy: PrecisionPolicy,
}

impl Default for SplittingOptions {
    fn default() -> Self {
        Self {
            max_poly_degree: DEFAULT_POLY_DEGREE_CAP,
            max_field_degree: DEFAULT_FIELD_DEGREE_CAP,
            policy: PrecisionPolicy::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SplittingField {
    pub polynomial: QPoly,
    pub tower: FieldTower,
    pub collapsed: Collapsed,
    /// The collapsed field, carrying the roots for fast root finding.
    pub field: SimpleField,
    /// All roots of the polynomial, canonically ordered.
    pub roots: Vec<FieldElement>,
}

impl SplittingField {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

pub fn splitting_field(f: &QPoly) -> Result<SplittingField> {
    splitting_field_with(f, SplittingOptions::default())
}

pub fn splitting_field_with(f: &QPoly, opts: SplittingOptions) -> Result<SplittingField> {
    let qring = PolyRing::new(&Rationals);
    let deg = f
        .degree()
        .ok_or_else(|| GaloisError::InvalidInput("the zero polynomial has no splitting field".into()))?;
    if deg == 0 {
        return Err(GaloisError::InvalidInput("constant polynomial has no roots".into()));
    }
    if deg > opts.max_poly_degree {
        return Err(GaloisError::Capacity {
            what: "polynomial degree",
            actual: deg,
            cap: opts.max_poly_degree,
        });
    }
    let f = qring.monic(f);
    if !qring.is_squarefree(&f)? {
        return Err(GaloisError::NotSquarefree {
            squarefree_part: qring.squarefree_part(&f)?.to_string(),
        });
    }

    let mut tower = FieldTower::with_policy(opts.policy);
    let mut collapsed = collapse_primitive(&tower);
    let mut roots: Vec<FieldElement> = Vec::new();
    let mut unsplit: LPoly = PolyRing::new(&collapsed.simple).map_from_rational(&f);
    loop {
        let l = &collapsed.simple;
        let factors = factor_over_field(&unsplit, l, DEFAULT_FACTOR_CAP.max(deg))?;
        let mut nonlinear: Vec<LPoly> = Vec::new();
        for (p, _) in factors {
            if p.degree() == Some(1) {
                roots.push(l.neg(&p.coeffs()[0]));
            } else {
                nonlinear.push(p);
            }
        }
        let Some(next) = nonlinear.iter().min_by_key(|p| p.degree()).cloned() else {
            break;
        };
        let new_degree = tower.degree() * next.degree().unwrap();
        if new_degree > opts.max_field_degree {
            return Err(GaloisError::Capacity {
                what: "splitting field degree",
                actual: new_degree,
                cap: opts.max_field_degree,
            });
        }
        let over_tower = PolyRing::new(&tower).poly(next.coeffs().iter().map(|c| collapsed.simple_to_tower(c)).collect());
        let depth = tower.levels().len();
        let new_tower = tower.adjoin_trusted(&over_tower);
        let new_collapsed = collapse_primitive(&new_tower);
        let carry = |a: &FieldElement| -> FieldElement {
            let t = collapsed.simple_to_tower(a);
            new_collapsed.tower_to_simple(&new_tower.wrap(new_tower.lift_from(depth, &t.coords)))
        };
        let nl = &new_collapsed.simple;
        let new_root = new_collapsed.tower_to_simple(&new_tower.generator(depth + 1));
        roots = roots.iter().map(carry).collect();
        let rest = PolyRing::new(nl).product(nonlinear.iter().map(|p| PolyRing::new(nl).poly(p.coeffs().iter().map(carry).collect())).collect::<Vec<_>>().iter());
        let nring = PolyRing::new(nl);
        unsplit = nring
            .exact_div(&rest, &nring.linear(&new_root))
            .ok_or_else(|| GaloisError::InvariantViolation("adjoined generator is not a root".into()))?;
        roots.push(new_root);
        tower = new_tower;
        collapsed = new_collapsed;
        if unsplit.degree() == Some(0) {
            break;
        }
    }

    let l = &collapsed.simple;
    if roots.len() != deg {
        return Err(GaloisError::InvariantViolation(format!(
            "found {} roots of a degree {deg} polynomial",
            roots.len()
        )));
    }
    l.sort_canonically(&mut roots)?;
    let ring = PolyRing::new(l);
    let product = ring.product(roots.iter().map(|r| ring.linear(r)).collect::<Vec<_>>().iter());
    if product != ring.map_from_rational(&f) {
        return Err(GaloisError::InvariantViolation(
            "product of linear factors differs from the polynomial".into(),
        ));
    }

    let mut generator = Vec::new();
    for (i, c) in collapsed.combo.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = collapsed.tower_to_simple(&tower.generator(i + 1));
        let idx = roots
            .iter()
            .position(|r| *r == g)
            .ok_or_else(|| GaloisError::InvariantViolation("tower generator is not a root".into()))?;
        generator.push((c.clone(), idx));
    }
    check_generator(l, &roots, &generator)?;
    let field = collapsed.simple.clone().with_splitting(SplittingData {
        polynomial: f.clone(),
        roots: roots.clone(),
        generator,
    });
    Ok(SplittingField {
        polynomial: f,
        tower,
        collapsed,
        field,
        roots,
    })
}

fn check_generator(l: &SimpleField, roots: &[FieldElement], generator: &[(BigInt, usize)]) -> Result<()> {
    let mut value = l.zero();
    for (c, i) in generator {
        value = l.add(&value, &l.mul(&l.from_rational(&num_rational::BigRational::from_integer(c.clone())), &roots[*i]));
    }
    if value != l.generator() {
        return Err(GaloisError::InvariantViolation(
            "primitive element is not the recorded combination of roots".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(c: &[i64]) -> SplittingField {
        splitting_field(&QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn quadratic() {
        let s = split(&[-2, 0, 1]);
        assert_eq!(s.degree(), 2);
        let a = s.field.generator();
        assert_eq!(s.roots, vec![a.clone(), s.field.neg(&a)]);
    }

    #[test]
    fn cube_root_of_two() {
        let s = split(&[-2, 0, 0, 1]);
        assert_eq!(s.degree(), 6);
        assert_eq!(s.roots.len(), 3);
        assert_eq!(s.tower.levels().len(), 2);
    }

    #[test]
    fn cyclotomic_eighth() {
        let s = split(&[1, 0, 0, 0, 1]);
        assert_eq!(s.degree(), 4);
        assert_eq!(s.tower.levels().len(), 1);
    }

    #[test]
    fn rational_roots_give_q() {
        let s = split(&[-2, 1, 1]);
        assert_eq!(s.degree(), 1);
        assert_eq!(s.roots.len(), 2);
    }

    #[test]
    fn squarefree_required() {
        let err = splitting_field(&QPoly::from_ints(&[1, -2, 1])).unwrap_err();
        assert!(matches!(err, GaloisError::NotSquarefree { .. }));
    }

    #[test]
    fn degree_cap() {
        let err = splitting_field(&QPoly::from_ints(&[1; 10])).unwrap_err();
        assert!(matches!(err, GaloisError::Capacity { .. }));
    }
}
