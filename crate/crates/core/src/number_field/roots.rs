//! Exact factorization and root finding over a simple number field, guided
//! by certified numerics.
//!
//! A monic `g` over `L = Q(a)` is rescaled so its coefficients lie in `Z[a]`.
//! Every monic factor `h` of the rescaled polynomial then has coefficients
//! `s` with `s * f'(a)` in `Z[a]`, and the coordinates of `s * f'(a)` are the
//! traces `sum_j phi_j(s) e_k(a_j)` where `f(x)/(x - a) = sum_k e_k(a) x^k`.
//! Choosing a root subset per embedding fixes every `phi_j(s)`, so each
//! choice yields balls that either certainly miss the integers (rejected) or
//! pin down a unique integer vector, which is then checked by exact division.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::numeric::{integer_test, isolate_roots, Ball, IntegerTest, Prec};
use super::simple::{EmbeddingData, FieldElement, Place, SimpleField};
use crate::arith::field::{common_denominator, Field};
use crate::arith::poly::{Poly, PolyRing};
use crate::error::{GaloisError, Result};

/// Polynomial with coefficients in a number field.
pub type LPoly = Poly<FieldElement>;

pub const DEFAULT_FACTOR_CAP: usize = 12;

/// Upper limit on root-subset combinations examined per search.
const LEAF_BUDGET: u128 = 5_000_000;

/// All `c` in `L` with `g(c) = 0`, canonically ordered.
pub fn roots_in_field(g: &LPoly, l: &SimpleField) -> Result<Vec<FieldElement>> {
    let ring = PolyRing::new(l);
    let Some(deg) = g.degree() else {
        return Err(GaloisError::InvalidInput("roots of the zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let g = ring.monic(g);
    let mut roots = match splitting_candidates(&g, l) {
        Some(r) => r,
        None => {
            let sq = ring.squarefree_part(&g)?;
            if sq.degree() == Some(1) {
                vec![l.neg(&sq.coeffs()[0])]
            } else {
                search_with_escalation(&sq, l, Mode::Roots)?
                    .into_iter()
                    .map(|h| l.neg(&h.coeffs()[0]))
                    .collect()
            }
        }
    };
    for r in &roots {
        if !l.is_zero(&ring.eval(&g, r)) {
            return Err(GaloisError::InvariantViolation("reported root does not vanish".into()));
        }
    }
    if roots.len() > deg {
        return Err(GaloisError::InvariantViolation(format!(
            "{} roots for a degree {deg} polynomial",
            roots.len()
        )));
    }
    l.sort_canonically(&mut roots)?;
    Ok(roots)
}

/// Monic irreducible factors of `g` over `L` with multiplicities; their
/// product is `monic(g)`.
pub fn factor_over_field(g: &LPoly, l: &SimpleField, cap: usize) -> Result<Vec<(LPoly, usize)>> {
    let ring = PolyRing::new(l);
    let deg = g
        .degree()
        .ok_or_else(|| GaloisError::InvalidInput("factorization of the zero polynomial".into()))?;
    if deg > cap {
        return Err(GaloisError::Capacity {
            what: "polynomial degree for factorization",
            actual: deg,
            cap,
        });
    }
    let g = ring.monic(g);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let sq = ring.squarefree_part(&g)?;
    let irreducible = if sq.degree() == Some(1) {
        vec![sq]
    } else {
        search_with_escalation(&sq, l, Mode::Factors)?
    };
    let mut out = Vec::with_capacity(irreducible.len());
    for p in irreducible {
        let mut rest = g.clone();
        let mut mult = 0;
        while let Some(q) = ring.exact_div(&rest, &p) {
            rest = q;
            mult += 1;
        }
        out.push((p, mult));
    }
    let product = out.iter().fold(ring.one(), |acc, (p, e)| {
        ring.mul(&acc, &ring.pow(p, *e as u32))
    });
    if product != g {
        return Err(GaloisError::InvariantViolation(
            "factor product differs from the input".into(),
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Only linear factors.
    Roots,
    /// Complete factorization into irreducibles.
    Factors,
}

enum Attempt {
    Done(Vec<LPoly>),
    NeedPrecision(String),
}

fn search_with_escalation(g: &LPoly, l: &SimpleField, mode: Mode) -> Result<Vec<LPoly>> {
    let (scaled, scale) = integralize(g, l);
    let mut last = String::new();
    for bits in l.policy().ladder() {
        let Some(emb) = l.embeddings_at(bits) else {
            last = format!("embeddings of {}", l.modulus());
            continue;
        };
        match attempt(&scaled, l, &emb, mode)? {
            Attempt::Done(factors) => {
                return Ok(factors.iter().map(|h| unscale(h, &scale, l)).collect());
            }
            Attempt::NeedPrecision(what) => last = what,
        }
    }
    Err(GaloisError::Undecided {
        bits: l.policy().cap_bits,
        candidate: last,
    })
}

/// Rescales monic `g` to `D^m g(x/D)` with coefficients in `Z[a]`.
fn integralize(g: &LPoly, l: &SimpleField) -> (LPoly, BigInt) {
    let m = g.degree().expect("nonzero");
    let d = common_denominator(g.coeffs()[..m].iter().flat_map(|c| c.coords.iter()));
    let coeffs = g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let f = BigRational::from_integer(d.pow((m - i) as u32));
            l.mul(&l.from_rational(&f), c)
        })
        .collect();
    (PolyRing::new(l).poly(coeffs), d)
}

/// Inverse of [`integralize`] for a monic factor of degree `s`.
fn unscale(h: &LPoly, d: &BigInt, l: &SimpleField) -> LPoly {
    let s = h.degree().expect("nonzero");
    let d = BigRational::from_integer(d.clone());
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let f = d.pow(i as i32 - s as i32);
            l.mul(&l.from_rational(&f), c)
        })
        .collect();
    PolyRing::new(l).poly(coeffs)
}

struct PlaceData {
    place: Place,
    /// Roots of the embedded polynomial at the representative embedding.
    roots: Vec<Ball>,
    /// `e_k(a_j)` for the representative embedding.
    trace_weights: Vec<Ball>,
}

fn attempt(g: &LPoly, l: &SimpleField, emb: &EmbeddingData, mode: Mode) -> Result<Attempt> {
    let prec = Prec::new(emb.bits);
    let n = l.degree();
    let f = l.modulus().coeffs();
    let mut places = Vec::with_capacity(emb.places.len());
    for &place in &emb.places {
        let alpha = &emb.roots[place.representative()];
        let coeffs: Vec<Ball> = g
            .coeffs()
            .iter()
            .map(|c| l.eval_at(c, alpha, emb.bits))
            .collect();
        let Some(roots) = isolate_roots(prec, &coeffs) else {
            return Ok(Attempt::NeedPrecision(format!(
                "root separation of an embedded polynomial of degree {}",
                g.degree().unwrap_or(0)
            )));
        };
        // synthetic division of f by (x - alpha)
        let mut weights = vec![prec.zero(); n];
        let mut acc = prec.from_rational(&f[n]);
        for k in (0..n).rev() {
            weights[k] = acc.clone();
            acc = prec.add(&prec.from_rational(&f[k]), &prec.mul(&acc, alpha));
        }
        places.push(PlaceData {
            place,
            roots,
            trace_weights: weights,
        });
    }
    let f_prime_inv = {
        let fp = PolyRing::new(&crate::arith::Rationals).derivative(l.modulus());
        l.inv(&l.from_poly(&fp)).expect("separable modulus")
    };
    let ring = PolyRing::new(l);
    let mut remaining = g.clone();
    let mut alive: Vec<Vec<usize>> = places.iter().map(|p| (0..p.roots.len()).collect()).collect();
    let mut found = Vec::new();
    let mut size = 1;
    loop {
        let deg = remaining.degree().expect("nonzero");
        if deg == 0 {
            break;
        }
        if mode == Mode::Factors && 2 * size > deg {
            found.push(remaining);
            break;
        }
        if mode == Mode::Roots && size > 1 {
            break;
        }
        if deg == 1 {
            found.push(remaining);
            break;
        }
        let search = SubsetSearch {
            l,
            prec,
            places: &places,
            alive: &alive,
            size,
            f_prime_inv: &f_prime_inv,
            remaining: &remaining,
        };
        search.check_budget()?;
        match search.run() {
            Search::Found(h, chosen) => {
                remaining = ring.exact_div(&remaining, &h).expect("verified divisor");
                for (a, c) in alive.iter_mut().zip(chosen) {
                    a.retain(|i| !c.contains(i));
                }
                found.push(h);
            }
            Search::Exhausted => size += 1,
            Search::Undecided => {
                return Ok(Attempt::NeedPrecision(format!(
                    "factor of size {size} of {}",
                    display_lpoly(&remaining)
                )))
            }
        }
    }
    Ok(Attempt::Done(found))
}

enum Search {
    Found(LPoly, Vec<Vec<usize>>),
    Exhausted,
    Undecided,
}

struct SubsetSearch<'a> {
    l: &'a SimpleField,
    prec: Prec,
    places: &'a [PlaceData],
    alive: &'a [Vec<usize>],
    size: usize,
    f_prime_inv: &'a FieldElement,
    remaining: &'a LPoly,
}

/// Per-place choice: root indices plus their elementary symmetric functions.
struct Choice {
    indices: Vec<usize>,
    sym: Vec<Ball>,
}

impl SubsetSearch<'_> {
    fn choices(&self, p: usize) -> Vec<Choice> {
        let data = &self.places[p];
        let bits = self.prec.bits;
        let pool: Vec<usize> = match data.place {
            // a linear factor at a real place needs a possibly-real root
            Place::Real(_) if self.size == 1 => self.alive[p]
                .iter()
                .copied()
                .filter(|&i| !data.roots[i].certainly_nonreal(bits))
                .collect(),
            _ => self.alive[p].clone(),
        };
        let mut out = Vec::new();
        for subset in combinations(&pool, self.size) {
            let mut sym = vec![self.prec.one()];
            for &i in &subset {
                let z = &data.roots[i];
                let mut next = sym.clone();
                next.push(self.prec.zero());
                for t in 1..next.len() {
                    next[t] = self.prec.add(&sym.get(t).cloned().unwrap_or_else(|| self.prec.zero()), &self.prec.mul(z, &sym[t - 1]));
                }
                sym = next;
            }
            if matches!(data.place, Place::Real(_)) && sym.iter().any(|b| b.certainly_nonreal(bits)) {
                continue;
            }
            out.push(Choice {
                indices: subset,
                sym: sym[1..].to_vec(),
            });
        }
        out
    }

    fn check_budget(&self) -> Result<()> {
        let mut leaves: u128 = 1;
        for a in self.alive {
            leaves = leaves.saturating_mul(binomial(a.len(), self.size));
        }
        if leaves > LEAF_BUDGET {
            return Err(GaloisError::Capacity {
                what: "root-subset combinations",
                actual: usize::try_from(leaves).unwrap_or(usize::MAX),
                cap: LEAF_BUDGET as usize,
            });
        }
        Ok(())
    }

    fn run(&self) -> Search {
        let choices: Vec<Vec<Choice>> = (0..self.places.len()).map(|p| self.choices(p)).collect();
        let n = self.l.degree();
        let acc = vec![vec![self.prec.zero(); n]; self.size];
        let mut path = Vec::with_capacity(self.places.len());
        let mut undecided = false;
        if let Some(found) = self.dfs(&choices, 0, acc, &mut path, &mut undecided) {
            return found;
        }
        if undecided {
            Search::Undecided
        } else {
            Search::Exhausted
        }
    }

    fn dfs(
        &self,
        choices: &[Vec<Choice>],
        depth: usize,
        acc: Vec<Vec<Ball>>,
        path: &mut Vec<usize>,
        undecided: &mut bool,
    ) -> Option<Search> {
        if depth == self.places.len() {
            return self.leaf(choices, &acc, path, undecided);
        }
        let data = &self.places[depth];
        for (ci, choice) in choices[depth].iter().enumerate() {
            let mut next = acc.clone();
            for (t, e) in choice.sym.iter().enumerate() {
                for (k, w) in data.trace_weights.iter().enumerate() {
                    let term = self.prec.mul(e, w);
                    let term = match data.place {
                        Place::Real(_) => term,
                        Place::Complex(..) => term.twice_real(),
                    };
                    next[t][k] = self.prec.add(&next[t][k], &term);
                }
            }
            path.push(ci);
            let r = self.dfs(choices, depth + 1, next, path, undecided);
            path.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    fn leaf(
        &self,
        choices: &[Vec<Choice>],
        acc: &[Vec<Ball>],
        path: &[usize],
        undecided: &mut bool,
    ) -> Option<Search> {
        let bits = self.prec.bits;
        let mut ints: Vec<Vec<BigInt>> = Vec::with_capacity(acc.len());
        let mut unsure = false;
        for row in acc {
            let mut v = Vec::with_capacity(row.len());
            for b in row {
                match integer_test(b, bits) {
                    IntegerTest::Rejected => return None,
                    IntegerTest::Undecided => unsure = true,
                    IntegerTest::Candidate(c) => v.push(c),
                }
            }
            ints.push(v);
        }
        if unsure {
            *undecided = true;
            return None;
        }
        let l = self.l;
        let s = self.size;
        let mut coeffs = vec![l.zero(); s + 1];
        coeffs[s] = l.one();
        for (t, c) in ints.iter().enumerate() {
            let traced = l.wrap(c.iter().map(|x| BigRational::from_integer(x.clone())).collect());
            let sigma = l.mul(&traced, self.f_prime_inv);
            // (-1)^t e_t is the coefficient of x^(s-t)
            let t1 = t + 1;
            coeffs[s - t1] = if t1 % 2 == 1 { l.neg(&sigma) } else { sigma };
        }
        let h = PolyRing::new(l).poly(coeffs);
        let ring = PolyRing::new(l);
        ring.exact_div(self.remaining, &h)?;
        let chosen = path
            .iter()
            .zip(choices)
            .map(|(&ci, c)| c[ci].indices.clone())
            .collect();
        Some(Search::Found(h, chosen))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// k-subsets of `pool` in lexicographic order of positions.
fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > pool.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + pool.len() - k) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Splitting-field shortcut: when `g` divides the defining polynomial, its
/// roots are among the images of the generator under root permutations.
fn splitting_candidates(g: &LPoly, l: &SimpleField) -> Option<Vec<FieldElement>> {
    let data = l.splitting_data()?;
    let ring = PolyRing::new(l);
    let modulus = ring.map_from_rational(l.modulus());
    ring.exact_div(&modulus, g)?;
    let indices: Vec<usize> = data.generator.iter().map(|(_, i)| *i).collect();
    let mut out: Vec<FieldElement> = Vec::new();
    for assignment in injections(indices.len(), data.roots.len()) {
        let mut value = l.zero();
        for ((c, _), &target) in data.generator.iter().zip(&assignment) {
            let term = l.mul(&l.from_rational(&BigRational::from_integer(c.clone())), &data.roots[target]);
            value = l.add(&value, &term);
        }
        if !out.contains(&value) && l.is_zero(&ring.eval(g, &value)) {
            out.push(value);
        }
    }
    Some(out)
}

/// All injective maps `{0..k} -> {0..n}` in lexicographic order.
pub(crate) fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, n, &mut cur, &mut out);
    out
}

pub(crate) fn display_lpoly(p: &LPoly) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .map(|(i, c)| format!("[{}]*x^{i}", c.coords_string().join(",")))
        .collect();
    terms.join(" + ")
}

/// Converts a rational polynomial into a polynomial over `l`.
pub fn lift(p: &crate::arith::QPoly, l: &SimpleField) -> LPoly {
    PolyRing::new(l).map_from_rational(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;
    use crate::arith::QPoly;

    fn field(c: &[i64]) -> SimpleField {
        SimpleField::new(QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn roots_of_x2_minus_2_in_q_sqrt2() {
        let l = field(&[-2, 0, 1]);
        let roots = roots_in_field(&lift(&QPoly::from_ints(&[-2, 0, 1]), &l), &l).unwrap();
        let a = l.generator();
        assert_eq!(roots, vec![a.clone(), l.neg(&a)]);
    }

    #[test]
    fn x2_minus_3_has_no_root_in_q_sqrt2() {
        let l = field(&[-2, 0, 1]);
        assert!(roots_in_field(&lift(&QPoly::from_ints(&[-3, 0, 1]), &l), &l).unwrap().is_empty());
    }

    #[test]
    fn cube_root_field_has_one_cube_root() {
        let l = field(&[-2, 0, 0, 1]);
        let roots = roots_in_field(&lift(l.modulus(), &l), &l).unwrap();
        assert_eq!(roots, vec![l.generator()]);
    }

    #[test]
    fn x4_plus_1_splits_in_its_own_field() {
        let l = field(&[1, 0, 0, 0, 1]);
        let roots = roots_in_field(&lift(l.modulus(), &l), &l).unwrap();
        assert_eq!(roots.len(), 4);
        let a = l.generator();
        let a3 = l.pow(&a, 3);
        for r in [a.clone(), a3.clone(), l.neg(&a), l.neg(&a3)] {
            assert!(roots.contains(&r));
        }
    }

    #[test]
    fn factor_over_q() {
        let q = SimpleField::rationals();
        let f = factor_over_field(&lift(&QPoly::from_ints(&[-4, 0, 1]), &q), &q, 12).unwrap();
        assert_eq!(f.len(), 2);
        let irreducible = factor_over_field(&lift(&QPoly::from_ints(&[1, 0, 0, 0, 1]), &q), &q, 12).unwrap();
        assert_eq!(irreducible.len(), 1);
        let sq = factor_over_field(&lift(&QPoly::from_ints(&[1, -2, 1]), &q), &q, 12).unwrap();
        assert_eq!(sq, vec![(lift(&QPoly::from_ints(&[-1, 1]), &q), 2)]);
    }

    #[test]
    fn x4_minus_10x2_plus_1_over_q_sqrt2() {
        let l = field(&[-2, 0, 1]);
        let g = lift(&QPoly::from_ints(&[1, 0, -10, 0, 1]), &l);
        let factors = factor_over_field(&g, &l, 12).unwrap();
        assert_eq!(factors.len(), 2);
        let ring = PolyRing::new(&l);
        let two_a = l.mul(&l.from_int(2), &l.generator());
        let p1 = ring.poly(vec![l.from_int(-1), l.neg(&two_a), l.one()]);
        let p2 = ring.poly(vec![l.from_int(-1), two_a, l.one()]);
        assert!(factors.iter().any(|(p, e)| *p == p1 && *e == 1));
        assert!(factors.iter().any(|(p, e)| *p == p2 && *e == 1));
        assert_eq!(ring.mul(&p1, &p2), g);
    }

    #[test]
    fn degree_cap() {
        let q = SimpleField::rationals();
        let g = lift(&QPoly::from_ints(&[1; 14]), &q);
        assert!(matches!(factor_over_field(&g, &q, 12), Err(GaloisError::Capacity { .. })));
    }

    #[test]
    fn rational_coefficients_are_rescaled() {
        let q = SimpleField::rationals();
        let g = lift(&QPoly::from_rationals(vec![crate::arith::field::rat(-1, 4), int(0), int(1)]), &q);
        let roots = roots_in_field(&g, &q).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1].coords[0], crate::arith::field::rat(1, 2));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(combinations(&[0, 1, 2, 3], 2).len(), 6);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(injections(2, 3).len(), 6);
    }
}
