use std::collections::BTreeSet;

use birkhoff_core::birkhoff::{decompose_symmetry, SymmetricEnumeration, SymmetryDecomposition};
use birkhoff_core::combsym::{comb_automorphisms, comb_equivalent};
use birkhoff_core::exactnum::{affine_dimension, rank, Rational, RationalMatrix};
use birkhoff_core::hull::IncidenceStructure;
use birkhoff_core::perm::{all_subgroups, closure, regular_subgroups, symmetric_group, DEFAULT_SUBGROUP_BOUND};
use birkhoff_core::{Permutation, PermutationGroup};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(small_rational(), rows * cols)
        .prop_map(move |e| RationalMatrix::new(rows, cols, e).unwrap())
}

fn any_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(small_rational(), dim), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in any_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert!(rank(&m) <= m.rows().min(m.cols()));
    }

    #[test]
    fn affine_dimension_is_affinely_invariant(
        (pts, shift, a) in (1usize..=4).prop_flat_map(|d| (points(d), proptest::collection::vec(small_rational(), d), matrix(d, d)))
    ) {
        prop_assume!(a.is_invertible());
        let before = affine_dimension(&pts).unwrap();
        let moved: Vec<Vec<Rational>> = pts
            .iter()
            .map(|p| {
                (0..p.len())
                    .map(|r| (0..p.len()).map(|c| a.get(r, c) * &p[c]).sum::<Rational>() + &shift[r])
                    .collect()
            })
            .collect();
        prop_assert_eq!(affine_dimension(&moved).unwrap(), before);
        prop_assert!(before < pts.len());
    }

    #[test]
    fn rational_addition_matches_cross_multiplication(a in small_rational(), b in small_rational()) {
        let sum = &a + &b;
        let numer: BigInt = a.numer() * b.denom() + b.numer() * a.denom();
        let denom: BigInt = a.denom() * b.denom();
        prop_assert_eq!(sum.numer() * &denom, numer * sum.denom());
    }

    #[test]
    fn closure_is_idempotent(gens in proptest::collection::vec(permutation(5), 1..4)) {
        let g = closure(&gens).unwrap();
        let again = closure(g.elements()).unwrap();
        prop_assert_eq!(g.elements(), again.elements());
        prop_assert_eq!(120 % g.order(), 0);
    }

    #[test]
    fn regular_subgroups_act_regularly(gens in proptest::collection::vec(permutation(6), 1..3)) {
        let g = closure(&gens).unwrap();
        for u in regular_subgroups(&g).unwrap() {
            prop_assert_eq!(u.order(), 6);
            prop_assert_eq!(u.orbit(0).len(), 6);
            prop_assert!(u.elements().iter().all(|x| x.is_identity() || x.fixed_points() == 0));
            prop_assert!(u.is_subgroup_of(&g));
        }
    }

    #[test]
    fn decomposition_round_trips(sigma in permutation(4), tau in permutation(4), inverted in any::<bool>()) {
        let d = SymmetryDecomposition { sigma, tau, epsilon: if inverted { -1 } else { 1 } };
        let sn = SymmetricEnumeration::new(4);
        let alpha = d.to_vertex_permutation(&sn);
        prop_assert_eq!(decompose_symmetry(4, &alpha).unwrap(), d);
    }

    #[test]
    fn relabelled_incidence_is_equivalent(relabel in permutation(6)) {
        let b3 = birkhoff_core::birkhoff::analytic_incidence(3).unwrap();
        let rows: Vec<Vec<usize>> = b3.rows().iter().map(|r| r.iter().map(|&v| relabel.apply(v)).collect()).collect();
        let moved = IncidenceStructure::new(6, rows).unwrap();
        let beta = comb_equivalent(&b3, &moved).expect("relabelling is an equivalence");
        let mapped: BTreeSet<Vec<usize>> = b3
            .rows()
            .iter()
            .map(|r| {
                let mut m: Vec<usize> = r.iter().map(|&v| beta.apply(v)).collect();
                m.sort_unstable();
                m
            })
            .collect();
        let target: BTreeSet<Vec<usize>> = moved.rows().iter().cloned().collect();
        prop_assert_eq!(mapped, target);
        let back = beta.inverse().compose(&relabel);
        prop_assert!(comb_automorphisms(&b3).unwrap().contains(&back));
    }
}

#[test]
fn subgroup_lists_are_closed_under_conjugation() {
    for g in [symmetric_group(4), birkhoff_core::groups::dihedral_group(4)] {
        let subs = all_subgroups(&g, DEFAULT_SUBGROUP_BOUND).unwrap();
        let set: BTreeSet<Vec<Permutation>> = subs.iter().map(|h| h.elements().to_vec()).collect();
        for h in &subs {
            for x in g.elements() {
                let mut c: Vec<Permutation> = h.elements().iter().map(|y| x.conjugate(y)).collect();
                c.sort();
                assert!(set.contains(&c));
            }
        }
        let orders: BTreeSet<usize> = subs.iter().map(PermutationGroup::order).collect();
        assert!(orders.iter().all(|k| g.order() % k == 0));
    }
}
