//! Exhaustive finite checks: the Frobenius correspondence, fields that are
//! not unions of proper subfields, and minimal subspace covers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::fq::{gcd, prime_powers_up_to, Fq};
use crate::error::{GaloisError, Result};
use crate::exec::Execution;

/// The `n` Frobenius powers of `F_{p^n}`, verified distinct and additive
/// and multiplicative on every pair.
pub fn frobenius_group(f: &Fq) -> Result<Vec<Vec<u32>>> {
    let maps: Vec<Vec<u32>> = (0..f.n()).map(|k| f.frobenius(k)).collect();
    let distinct: BTreeSet<&Vec<u32>> = maps.iter().collect();
    if distinct.len() != maps.len() {
        return Err(GaloisError::InvariantViolation("Frobenius powers coincide".into()));
    }
    // the identity (k = 0) is trivially a homomorphism
    for m in &maps[1..] {
        for a in f.elements() {
            for b in f.elements() {
                let (ma, mb) = (m[a as usize], m[b as usize]);
                if m[f.add(a, b) as usize] != f.add(ma, mb) || m[f.mul(a, b) as usize] != f.mul(ma, mb) {
                    return Err(GaloisError::InvariantViolation(format!(
                        "Frobenius power fails to be a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
    }
    Ok(maps)
}

/// Elements fixed by `x -> x^(p^d)`.
pub fn fixed_set(f: &Fq, d: u32) -> Vec<u32> {
    let e = (f.p() as u64).pow(d);
    f.elements().filter(|&x| f.pow(x, e) == x).collect()
}

fn is_subfield(f: &Fq, set: &[u32]) -> bool {
    let members: BTreeSet<u32> = set.iter().copied().collect();
    members.contains(&0)
        && members.contains(&1)
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| members.contains(&f.add(a, b)) && members.contains(&f.mul(a, b))))
}

/// All subgroups of `Z/n` by exhaustive search over subsets.
fn cyclic_subgroups(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let set: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if set.iter().all(|&a| set.iter().all(|&b| mask >> ((a + b) % n) & 1 == 1)) {
            out.push(set);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqCorrespondence {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub generator: u32,
    pub frobenius_order: usize,
    /// `(subgroup order, fixed set size)` per subgroup of the Frobenius group.
    pub pairs: Vec<(usize, usize)>,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Exhaustive check that subgroups of `<Frobenius>` and subfields
/// correspond as the fundamental theorem predicts.
pub fn verify_correspondence_fq(f: &Fq) -> Result<FqCorrespondence> {
    let maps = frobenius_group(f)?;
    let n = f.n();
    let mut witnesses = Vec::new();
    for d in 1..=n {
        let size = fixed_set(f, d).len();
        let expect = (f.p() as usize).pow(gcd(d as usize, n as usize) as u32);
        if size != expect {
            witnesses.push(format!("Frobenius^{d} fixes {size} elements, expected {expect}"));
        }
    }
    let subgroups = cyclic_subgroups(n);
    let fixed: Vec<Vec<u32>> = subgroups
        .iter()
        .map(|h| {
            f.elements()
                .filter(|&x| h.iter().all(|&k| maps[k as usize][x as usize] == x))
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    for (h, s) in subgroups.iter().zip(&fixed) {
        let index = n as usize / h.len();
        pairs.push((h.len(), s.len()));
        if !is_subfield(f, s) {
            witnesses.push(format!("fixed set of a subgroup of order {} is not a subfield", h.len()));
        }
        if s.len() != (f.p() as usize).pow(index as u32) {
            witnesses.push(format!("subgroup of index {index} fixes {} elements", s.len()));
        }
        let stab: Vec<u32> = (0..n)
            .filter(|&k| s.iter().all(|&x| maps[k as usize][x as usize] == x))
            .collect();
        if stab != *h {
            witnesses.push(format!("stabilizer of the fixed set of {h:?} is {stab:?}"));
        }
    }
    // the subfields are exactly the fixed sets: every subfield size p^d with
    // d | n occurs once
    let sizes: BTreeSet<usize> = fixed.iter().map(Vec::len).collect();
    if sizes.len() != fixed.len() {
        witnesses.push("two subgroups share a fixed field".into());
    }
    for (i, a) in subgroups.iter().enumerate() {
        for (j, b) in subgroups.iter().enumerate() {
            let sub = a.iter().all(|x| b.contains(x));
            let sup = fixed[j].iter().all(|x| fixed[i].binary_search(x).is_ok());
            if sub != sup {
                witnesses.push(format!("inclusion is not reversed for subgroups {i} and {j}"));
            }
        }
    }
    Ok(FqCorrespondence {
        p: f.p(),
        n,
        modulus: f.modulus().to_vec(),
        generator: f.generator(),
        frobenius_order: maps.len(),
        pairs,
        pass: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionCheck {
    pub proper_subfields: Vec<usize>,
    pub union_size: usize,
    pub field_size: usize,
    pub proper: bool,
}

/// Whether the union of all proper subfields misses some element.
pub fn union_check_subfields(f: &Fq) -> UnionCheck {
    let n = f.n();
    let mut union = BTreeSet::new();
    let mut sizes = Vec::new();
    for d in (1..n).filter(|d| n % d == 0) {
        let s = fixed_set(f, d);
        sizes.push(s.len());
        union.extend(s);
    }
    UnionCheck {
        proper_subfields: sizes,
        union_size: union.len(),
        field_size: f.size(),
        proper: union.len() < f.size(),
    }
}

/// Smallest number of proper subspaces of `F_q^dim` covering it; `None`
/// when `dim = 1` (the only proper subspace is zero).
///
/// Every proper subspace lies in a hyperplane, so the search runs over sets
/// of hyperplanes in increasing size.
pub fn union_check_subspaces(q: usize, dim: u32, cap: usize) -> Result<Option<usize>> {
    let total = q.checked_pow(dim).filter(|&t| t <= cap).ok_or(GaloisError::Capacity {
        what: "vector space size",
        actual: q.saturating_pow(dim),
        cap,
    })?;
    let (p, n) = prime_powers_up_to(q)
        .into_iter()
        .find(|&(p, n)| (p as usize).pow(n) == q)
        .ok_or_else(|| GaloisError::InvalidInput(format!("{q} is not a prime power")))?;
    if dim <= 1 {
        return Ok(None);
    }
    let f = Fq::new(p, n)?;
    let vector = |mut v: usize| -> Vec<u32> {
        (0..dim)
            .map(|_| {
                let c = (v % q) as u32;
                v /= q;
                c
            })
            .collect()
    };
    let vectors: Vec<Vec<u32>> = (0..total).map(vector).collect();
    // hyperplanes as kernels of functionals, deduplicated by member set
    let mut hyperplanes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for phi in vectors.iter().skip(1) {
        let kernel: Vec<usize> = (0..total)
            .filter(|&i| {
                vectors[i]
                    .iter()
                    .zip(phi)
                    .fold(0, |acc, (&x, &c)| f.add(acc, f.mul(x, c)))
                    == 0
            })
            .collect();
        hyperplanes.insert(kernel);
    }
    let hyperplanes: Vec<Vec<usize>> = hyperplanes.into_iter().collect();
    for k in 1..=hyperplanes.len() {
        if covers_with(&hyperplanes, k, 0, &mut vec![false; total], 0) {
            return Ok(Some(k));
        }
    }
    unreachable!("all hyperplanes together cover the space")
}

fn covers_with(planes: &[Vec<usize>], k: usize, start: usize, covered: &mut [bool], used: usize) -> bool {
    if used == k {
        return covered.iter().all(|&c| c);
    }
    for i in start..planes.len() {
        let newly: Vec<usize> = planes[i].iter().copied().filter(|&v| !covered[v]).collect();
        for &v in &newly {
            covered[v] = true;
        }
        if covers_with(planes, k, i + 1, covered, used + 1) {
            return true;
        }
        for &v in &newly {
            covered[v] = false;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSweepEntry {
    pub q: usize,
    pub correspondence: FqCorrespondence,
    pub union: UnionCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub q: usize,
    pub dim: u32,
    pub min_cover: Option<usize>,
    pub expected: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSweep {
    pub fields: Vec<FieldSweepEntry>,
    pub covers: Vec<CoverEntry>,
}

impl LemmaSweep {
    pub fn passed(&self) -> bool {
        self.fields.iter().all(|f| f.correspondence.pass && f.union.proper) && self.covers.iter().all(|c| c.pass)
    }
}

/// Every `F_{p^n}` with `p^n <= p_max`, and the plane covers for prime
/// powers `q <= q_max`.
pub fn sweep(p_max: usize, q_max: usize, exec: Execution) -> Result<LemmaSweep> {
    let cap = super::fq::DEFAULT_FIELD_SIZE_CAP;
    if p_max > cap {
        return Err(GaloisError::Capacity {
            what: "largest field in the sweep",
            actual: p_max,
            cap,
        });
    }
    let fields: Vec<Result<FieldSweepEntry>> = exec.map(&prime_powers_up_to(p_max), |&(p, n)| {
        let f = Fq::new(p, n)?;
        Ok(FieldSweepEntry {
            q: f.size(),
            correspondence: verify_correspondence_fq(&f)?,
            union: union_check_subfields(&f),
        })
    });
    let fields = fields.into_iter().collect::<Result<Vec<_>>>()?;
    let mut covers = Vec::new();
    for (p, n) in prime_powers_up_to(q_max) {
        let q = (p as usize).pow(n);
        let min_cover = union_check_subspaces(q, 2, cap)?;
        covers.push(CoverEntry {
            q,
            dim: 2,
            min_cover,
            expected: q + 1,
            pass: min_cover == Some(q + 1),
        });
    }
    Ok(LemmaSweep { fields, covers })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_group(&Fq::new(2, 1).unwrap()).unwrap().len(), 1);
        assert_eq!(frobenius_group(&Fq::new(2, 2).unwrap()).unwrap().len(), 2);
        let f16 = Fq::new(2, 4).unwrap();
        let maps = frobenius_group(&f16).unwrap();
        assert_eq!(maps.len(), 4);
        // cyclic: composing the generator with itself k times gives power k
        let frob = &maps[1];
        let mut cur: Vec<u32> = f16.elements().collect();
        for m in &maps {
            assert_eq!(&cur, m);
            cur = cur.iter().map(|&x| frob[x as usize]).collect();
        }
    }

    #[test]
    fn correspondence_examples() {
        for (p, n, count) in [(2, 2, 2), (2, 4, 3), (2, 6, 4)] {
            let r = verify_correspondence_fq(&Fq::new(p, n).unwrap()).unwrap();
            assert!(r.pass, "{:?}", r.witnesses);
            assert_eq!(r.pairs.len(), count);
        }
    }

    #[test]
    fn union_examples() {
        let u = union_check_subfields(&Fq::new(2, 2).unwrap());
        assert_eq!((u.union_size, u.proper), (2, true));
        let u = union_check_subfields(&Fq::new(2, 1).unwrap());
        assert_eq!((u.union_size, u.proper), (0, true));
        let u = union_check_subfields(&Fq::new(2, 6).unwrap());
        assert_eq!((u.union_size, u.proper), (10, true));
    }

    #[test]
    fn plane_covers() {
        assert_eq!(union_check_subspaces(2, 2, 4096).unwrap(), Some(3));
        assert_eq!(union_check_subspaces(3, 2, 4096).unwrap(), Some(4));
        assert_eq!(union_check_subspaces(4, 2, 4096).unwrap(), Some(5));
        assert_eq!(union_check_subspaces(3, 1, 4096).unwrap(), None);
        assert!(union_check_subspaces(6, 2, 4096).is_err());
    }

    #[test]
    fn empty_sweep() {
        let s = sweep(1, 1, Execution::Sequential).unwrap();
        assert!(s.fields.is_empty() && s.covers.is_empty() && s.passed());
    }
}
