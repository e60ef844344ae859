use std::collections::BTreeSet;

use birkhoff_core::perm::{all_subgroups, closure, symmetric_group, Permutation, DEFAULT_SUBGROUP_BOUND};

fn as_sets(groups: &[birkhoff_core::PermutationGroup]) -> BTreeSet<Vec<Permutation>> {
    groups.iter().map(|h| h.elements().to_vec()).collect()
}

#[test]
fn s3_subgroups_match_closed_subsets() {
    let s3 = symmetric_group(3);
    let elems = s3.elements();
    let mut oracle = BTreeSet::new();
    for mask in 0u32..(1 << elems.len()) {
        let subset: Vec<Permutation> = (0..elems.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| elems[k].clone())
            .collect();
        let closed = !subset.is_empty()
            && subset
                .iter()
                .all(|a| subset.iter().all(|b| subset.contains(&a.compose(b))));
        if closed {
            oracle.insert(subset);
        }
    }
    let ours = all_subgroups(&s3, DEFAULT_SUBGROUP_BOUND).unwrap();
    assert_eq!(ours.len(), 6);
    assert_eq!(as_sets(&ours), oracle);
}

#[test]
fn s4_subgroups_match_two_generated_closures() {
    // Every subgroup of S_4 is generated by at most two elements.
    let s4 = symmetric_group(4);
    let mut oracle = BTreeSet::new();
    for a in s4.elements() {
        for b in s4.elements() {
            oracle.insert(closure(&[a.clone(), b.clone()]).unwrap().elements().to_vec());
        }
    }
    let ours = all_subgroups(&s4, DEFAULT_SUBGROUP_BOUND).unwrap();
    assert_eq!(ours.len(), 30);
    assert_eq!(as_sets(&ours), oracle);
}
