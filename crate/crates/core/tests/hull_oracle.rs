mod common;

use birkhoff_core::exactnum::{int, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn hull_matches_brute_force_on_random_polytopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..200 {
        let points = common::random_polytope(&mut rng);
        if let Err(msg) = common::oracle_agrees(&points) {
            panic!("case {case}: {msg}: {points:?}");
        }
    }
}

#[test]
fn cube_and_cross_polytope() {
    let cube: Vec<Vec<Rational>> = (0..8)
        .map(|m| (0..3).map(|b| int((m >> b) & 1)).collect())
        .collect();
    common::oracle_agrees(&cube).unwrap();
    let p = birkhoff_core::hull::facet_enumeration(&cube).unwrap();
    assert_eq!(p.facets.len(), 6);

    let mut cross = Vec::new();
    for axis in 0..3 {
        for s in [-1, 1] {
            let mut v = vec![int(0); 3];
            v[axis] = int(s);
            cross.push(v);
        }
    }
    common::oracle_agrees(&cross).unwrap();
    assert_eq!(birkhoff_core::hull::facet_enumeration(&cross).unwrap().facets.len(), 8);
}

#[test]
fn interior_points_are_not_vertices() {
    let mut pts: Vec<Vec<Rational>> = vec![vec![int(0), int(0)], vec![int(4), int(0)], vec![int(0), int(4)]];
    pts.push(vec![int(1), int(1)]);
    common::oracle_agrees(&pts).unwrap();
    let p = birkhoff_core::hull::facet_enumeration(&pts).unwrap();
    assert!(!p.points_are_vertices());
}
