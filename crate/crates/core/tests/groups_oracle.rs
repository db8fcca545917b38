//! Subgroup lattices checked against exhaustive subset search.

use std::collections::BTreeSet;

use galois_core::groups::{compose_perm, Perm, PermGroup};

fn brute_force(g: &PermGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let closed = set.iter().all(|&a| {
            set.iter().all(|&b| {
                let c = compose_perm(g.element(a), g.element(b));
                mask >> g.index_of(&c).unwrap() & 1 == 1
            })
        });
        if closed {
            out.insert(set);
        }
    }
    out
}

fn cycle(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn check(g: &PermGroup, expected: usize) {
    let subs: BTreeSet<Vec<usize>> = g.all_subgroups(48).unwrap().iter().map(|h| h.members().to_vec()).collect();
    let brute = brute_force(g);
    assert_eq!(subs, brute);
    assert_eq!(subs.len(), expected);
}

#[test]
fn small_groups_match_brute_force() {
    // (generators on n points, subgroup count)
    check(&PermGroup::generated(1, &[], 48).unwrap(), 1);
    check(&PermGroup::generated(5, &[cycle(5)], 48).unwrap(), 2);
    check(&PermGroup::generated(6, &[cycle(6)], 48).unwrap(), 4);
    check(&PermGroup::generated(3, &[cycle(3), vec![1, 0, 2]], 48).unwrap(), 6);
    // dihedral of order 8
    check(&PermGroup::generated(4, &[cycle(4), vec![0, 3, 2, 1]], 48).unwrap(), 10);
    // quaternion-free abelian Z/2 x Z/4
    check(&PermGroup::generated(6, &[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]], 48).unwrap(), 8);
    // A4 has 10 subgroups
    check(&PermGroup::generated(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], 48).unwrap(), 10);
    // dihedral of order 12
    check(&PermGroup::generated(6, &[cycle(6), vec![0, 5, 4, 3, 2, 1]], 48).unwrap(), 16);
}

#[test]
fn normality_matches_conjugation() {
    let d4 = PermGroup::generated(4, &[cycle(4), vec![0, 3, 2, 1]], 48).unwrap();
    for h in d4.all_subgroups(48).unwrap() {
        let conj_closed = (0..d4.order()).all(|g| {
            h.members()
                .iter()
                .all(|&x| h.contains(d4.mul(d4.mul(g, x), d4.inverse(g))))
        });
        assert_eq!(d4.is_normal_subgroup(&h), conj_closed);
    }
}

#[test]
fn quotients_have_index_order() {
    let s3 = PermGroup::generated(3, &[cycle(3), vec![1, 0, 2]], 48).unwrap();
    for h in s3.all_subgroups(48).unwrap() {
        if !s3.is_normal_subgroup(&h) {
            continue;
        }
        let (q, proj) = s3.quotient_group(&h).unwrap();
        assert_eq!(q.order() * h.order(), 6);
        let check = s3.check_epimorphism(&q, &proj);
        assert!(check.is_hom && check.surjective);
        assert_eq!(check.kernel, h);
    }
}
