//! Shared oracles for integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use birkhoff_core::exactnum::{affine_dimension, Rational};
use birkhoff_core::hull::Facet;
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Determinant by Laplace expansion along the first row.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::from_integer(1.into()),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&c| !m[0][c].is_zero())
            .map(|c| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(Rational::zero(), |a, b| a + b),
    }
}

fn primitive_facet(normal: Vec<Rational>, offset: Rational) -> (Vec<BigInt>, BigInt) {
    let lcm = normal
        .iter()
        .chain(std::iter::once(&offset))
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &Rational| (x * Rational::from_integer(lcm.clone())).to_integer();
    let mut ints: Vec<BigInt> = normal.iter().map(scale).collect();
    let mut b = scale(&offset);
    let g = ints.iter().chain(std::iter::once(&b)).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    for x in ints.iter_mut() {
        *x /= &g;
    }
    b /= &g;
    (ints, b)
}

/// Facets of a full-dimensional point set in `ℝ^d`: every hyperplane through
/// `d` affinely independent points that has all points on one side.
/// Normals come from cofactors of the difference vectors.
pub fn brute_force_facets(points: &[Vec<Rational>]) -> BTreeSet<(Vec<BigInt>, BigInt)> {
    let d = points[0].len();
    let mut out = BTreeSet::new();
    for combo in (0..points.len()).combinations(d) {
        let base = &points[combo[0]];
        let diffs: Vec<Vec<Rational>> = combo[1..]
            .iter()
            .map(|&k| points[k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal: Vec<Rational> = (0..d)
            .map(|c| {
                let minor: Vec<Vec<Rational>> = diffs
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let v = det(&minor);
                if c % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let value = |p: &Vec<Rational>| -> Rational { normal.iter().zip(p).map(|(a, b)| a * b).sum() };
        let offset = value(base);
        let above = points.iter().any(|p| value(p) > offset);
        let below = points.iter().any(|p| value(p) < offset);
        match (above, below) {
            (false, _) => {
                out.insert(primitive_facet(normal, offset));
            }
            (true, false) => {
                out.insert(primitive_facet(normal.iter().map(|x| -x).collect(), -offset));
            }
            (true, true) => {}
        }
    }
    out
}

pub fn facet_key(f: &Facet) -> (Vec<BigInt>, BigInt) {
    primitive_facet(f.normal.clone(), f.offset.clone())
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())
}

/// A random full-dimensional point set in dimension `1..=3` with at most 8
/// points; duplicates are removed.
pub fn random_polytope(rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    loop {
        let d = rng.gen_range(1..=3);
        let count = rng.gen_range(d + 1..=8);
        let points: Vec<Vec<Rational>> = (0..count)
            .map(|_| (0..d).map(|_| small_rational(rng)).collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if affine_dimension(&points).ok() == Some(d) {
            return points;
        }
    }
}

pub fn oracle_agrees(points: &[Vec<Rational>]) -> Result<(), String> {
    let p = birkhoff_core::hull::facet_enumeration(points).map_err(|e| e.to_string())?;
    let ours: BTreeSet<_> = p.facets.iter().map(facet_key).collect();
    if ours.len() != p.facets.len() {
        return Err("duplicate facets".into());
    }
    let oracle = brute_force_facets(points);
    if ours != oracle {
        return Err(format!("hull gave {} facets, oracle {}", ours.len(), oracle.len()));
    }
    for (k, f) in p.facets.iter().enumerate() {
        let tight: Vec<usize> = (0..points.len()).filter(|&v| f.slack(&points[v]).is_zero()).collect();
        if tight != p.tight_set(k) {
            return Err(format!("incidence of facet {k} is wrong"));
        }
        if points.iter().any(|x| f.slack(x).is_negative()) {
            return Err(format!("facet {k} is violated"));
        }
    }
    Ok(())
}
