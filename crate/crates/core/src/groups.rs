//! Finite permutation groups at desk scale: closure, the full subgroup
//! lattice, normality, cosets and quotients.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{GaloisError, Result};

/// A permutation of `0..n` in image form: `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

pub const DEFAULT_GROUP_CAP: usize = 48;

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose_perm(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert_perm(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl PermGroup {
    /// Checks that `elements` are distinct permutations of `0..degree`
    /// forming a group, and precomputes the Cayley table.
    pub fn new(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, p) in elements.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GaloisError::InvalidInput(format!("{p:?} is not a permutation of {degree} points")));
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(GaloisError::InvalidInput(format!("duplicate element {p:?}")));
            }
        }
        let identity = *index
            .get(&identity_perm(degree))
            .ok_or_else(|| GaloisError::InvariantViolation("group lacks the identity".into()))?;
        let mut table = Vec::with_capacity(elements.len());
        for p in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for q in &elements {
                let pq = compose_perm(p, q);
                let k = *index
                    .get(&pq)
                    .ok_or_else(|| GaloisError::InvariantViolation(format!("not closed: {p:?} * {q:?}")))?;
                row.push(k);
            }
            table.push(row);
        }
        Ok(Self {
            degree,
            elements,
            index,
            table,
            identity,
        })
    }

    /// The group generated by `gens` inside the symmetric group.
    pub fn generated(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        let mut elements = vec![identity_perm(degree)];
        let mut seen: BTreeSet<Perm> = elements.iter().cloned().collect();
        let mut queue: VecDeque<Perm> = elements.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose_perm(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(GaloisError::Capacity {
                            what: "group order",
                            actual: seen.len(),
                            cap,
                        });
                    }
                    elements.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Self::new(degree, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table[a]
            .iter()
            .position(|&k| k == self.identity)
            .expect("group element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members((0..self.order()).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_members(vec![self.identity])
    }

    /// Smallest subgroup containing `gens` (breadth-first saturation).
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut members = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            members: members.into_iter().collect(),
        }
    }

    /// The subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = a.members.iter().chain(&b.members).copied().collect();
        self.closure(&gens)
    }

    pub fn meet(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup::from_members(a.members.iter().filter(|x| b.contains(**x)).copied().collect())
    }

    /// Every subgroup once: cyclic subgroups, then pairwise joins to a
    /// fixpoint. Sorted by order, then by member indices.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order() > cap {
            return Err(GaloisError::Capacity {
                what: "group order for subgroup enumeration",
                actual: self.order(),
                cap,
            });
        }
        let mut found: BTreeSet<Vec<usize>> = (0..self.order()).map(|a| self.closure(&[a]).members).collect();
        let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut next = Vec::new();
            for a in &frontier {
                for b in &current {
                    let j = self.join(&Subgroup { members: a.clone() }, &Subgroup { members: b.clone() });
                    if found.insert(j.members.clone()) {
                        next.push(j.members);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        Ok(out)
    }

    /// Closure, identity and inverse checks.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inverse(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal_subgroup(&self, h: &Subgroup) -> bool {
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            h.members.iter().all(|&x| h.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    /// Index and left cosets `gH`, each sorted, ordered by smallest member.
    pub fn index_and_cosets(&self, h: &Subgroup) -> (usize, Vec<Vec<usize>>) {
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.order()];
        for g in 0..self.order() {
            if assigned[g] {
                continue;
            }
            let mut c: Vec<usize> = h.members.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                assigned[x] = true;
            }
            cosets.push(c);
        }
        (self.order() / h.order(), cosets)
    }

    /// `G/H` as permutations of the left cosets by left translation, with the
    /// projection `G -> G/H` as element indices.
    pub fn quotient_group(&self, h: &Subgroup) -> Result<(PermGroup, Vec<usize>)> {
        if !self.is_normal_subgroup(h) {
            return Err(GaloisError::InvalidInput("quotient by a non-normal subgroup".into()));
        }
        let (_, cosets) = self.index_and_cosets(h);
        let mut coset_of = vec![0; self.order()];
        for (ci, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = ci;
            }
        }
        let mut perms: Vec<Perm> = Vec::new();
        let mut projection = Vec::with_capacity(self.order());
        for g in 0..self.order() {
            let p: Perm = cosets.iter().map(|c| coset_of[self.mul(g, c[0])]).collect();
            let k = match perms.iter().position(|q| *q == p) {
                Some(k) => k,
                None => {
                    perms.push(p);
                    perms.len() - 1
                }
            };
            projection.push(k);
        }
        Ok((PermGroup::new(cosets.len(), perms)?, projection))
    }

    /// Checks a map between groups for being a homomorphism and computes its
    /// kernel and image.
    pub fn check_epimorphism(&self, codomain: &PermGroup, map: &[usize]) -> EpiCheck {
        let mut failing_pair = None;
        'outer: for a in 0..self.order() {
            for b in 0..self.order() {
                if map[self.mul(a, b)] != codomain.mul(map[a], map[b]) {
                    failing_pair = Some((a, b));
                    break 'outer;
                }
            }
        }
        let kernel = Subgroup::from_members(
            (0..self.order()).filter(|&a| map[a] == codomain.identity()).collect(),
        );
        let image: BTreeSet<usize> = map.iter().copied().collect();
        EpiCheck {
            is_hom: failing_pair.is_none(),
            failing_pair,
            surjective: image.len() == codomain.order(),
            kernel,
            image: image.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpiCheck {
    pub is_hom: bool,
    pub failing_pair: Option<(usize, usize)>,
    pub kernel: Subgroup,
    pub image: Vec<usize>,
    pub surjective: bool,
}

/// A subgroup, identified by its sorted member indices in the parent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::generated(3, &[vec![1, 0, 2], vec![1, 2, 0]], 48).unwrap()
    }

    fn klein() -> PermGroup {
        PermGroup::generated(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], 48).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = s3();
        assert_eq!(g.closure(&[]).order(), 1);
        let three_cycle = g.index_of(&[1, 2, 0]).unwrap();
        assert_eq!(g.closure(&[three_cycle]).order(), 3);
        let t = g.index_of(&[1, 0, 2]).unwrap();
        assert_eq!(g.closure(&[t, three_cycle]).order(), 6);
    }

    #[test]
    fn subgroup_counts() {
        let trivial = PermGroup::new(1, vec![vec![0]]).unwrap();
        assert_eq!(trivial.all_subgroups(48).unwrap().len(), 1);
        let subs = s3().all_subgroups(48).unwrap();
        assert_eq!(subs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(klein().all_subgroups(48).unwrap().len(), 5);
    }

    #[test]
    fn normality() {
        let g = s3();
        let subs = g.all_subgroups(48).unwrap();
        let normal: Vec<usize> = subs.iter().filter(|h| g.is_normal_subgroup(h)).map(Subgroup::order).collect();
        assert_eq!(normal, vec![1, 3, 6]);
    }

    #[test]
    fn cosets_and_quotients() {
        let g = s3();
        let subs = g.all_subgroups(48).unwrap();
        let (idx, cosets) = g.index_and_cosets(&subs[1]);
        assert_eq!(idx, 3);
        assert!(cosets.iter().all(|c| c.len() == 2));
        assert_eq!(g.index_and_cosets(&g.whole()).0, 1);
        assert_eq!(klein().index_and_cosets(&klein().trivial()).0, 4);

        let (q, proj) = g.quotient_group(&subs[4]).unwrap();
        assert_eq!(q.order(), 2);
        let check = g.check_epimorphism(&q, &proj);
        assert!(check.is_hom && check.surjective);
        assert_eq!(check.kernel, subs[4]);
        assert_eq!(g.quotient_group(&g.whole()).unwrap().0.order(), 1);
        assert!(g.quotient_group(&subs[1]).is_err());
        let k = klein();
        let ks = k.all_subgroups(48).unwrap();
        assert_eq!(k.quotient_group(&ks[1]).unwrap().0.order(), 2);
    }

    #[test]
    fn epimorphism_checks() {
        let g = s3();
        let id: Vec<usize> = (0..6).collect();
        let e = g.check_epimorphism(&g, &id);
        assert!(e.is_hom && e.surjective && e.kernel.order() == 1);

        let c2 = PermGroup::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let sign: Vec<usize> = g
            .elements()
            .iter()
            .map(|p| usize::from(p.iter().enumerate().filter(|(i, &x)| x != *i).count() == 2))
            .collect();
        let e = g.check_epimorphism(&c2, &sign);
        assert!(e.is_hom && e.surjective);
        assert_eq!(e.kernel.order(), 3);

        let k = klein();
        // send exactly one non-identity element to the generator of C2
        let bad: Vec<usize> = (0..4).map(|i| usize::from(i == 1)).collect();
        let e = k.check_epimorphism(&c2, &bad);
        assert!(!e.is_hom);
        assert!(e.failing_pair.is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let s4 = PermGroup::generated(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], 48).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(matches!(s4.all_subgroups(12), Err(GaloisError::Capacity { .. })));
        assert_eq!(s4.all_subgroups(48).unwrap().len(), 30);
    }
}
