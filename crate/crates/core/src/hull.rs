//! Exact facet enumeration for small polytopes given by their vertices.
//!
//! The points are first mapped to an affine chart in which they are
//! full-dimensional (the pivot coordinates of the difference space). Facets
//! are then the extreme rays of the polar cone `{(a₀, a) : a₀ + a·y ≥ 0 ∀y}`,
//! found by the double description method with integer rays and
//! combinatorial adjacency. Each chart inequality is lifted back to ambient
//! coordinates with its normal projected orthogonally onto the direction space
//! of the affine hull, so the ambient normal does not depend on the chart.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exactnum::{self, clear_denominators, dot, primitive, Rational, RationalMatrix};
use crate::{Error, Result};

pub const MAX_HULL_POINTS: usize = 30;
pub const MAX_HULL_DIM: usize = 10;

/// The inequality `normal · x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Facet {
    pub fn slack(&self, point: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, point)
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    pub ambient_dim: usize,
    pub affine_dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<Facet>,
    /// `incidence[f][v]` is true when vertex `v` lies on facet `f`.
    pub incidence: Vec<Vec<bool>>,
}

impl Polytope {
    pub fn tight_set(&self, facet: usize) -> Vec<usize> {
        self.incidence[facet]
            .iter()
            .enumerate()
            .filter_map(|(v, &t)| t.then_some(v))
            .collect()
    }

    /// Whether every listed point is a vertex: the facets through it meet in
    /// that point alone.
    pub fn points_are_vertices(&self) -> bool {
        if self.affine_dim == 0 {
            return self.vertices.len() == 1;
        }
        let n = self.vertices.len();
        (0..n).all(|v| {
            let mut common = vec![true; n];
            for row in self.incidence.iter().filter(|row| row[v]) {
                for (c, &t) in common.iter_mut().zip(row) {
                    *c &= t;
                }
            }
            common.iter().filter(|&&c| c).count() == 1
        })
    }
}

/// Vertex-facet incidence with the geometry stripped: each row is the sorted
/// set of vertices on one facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceStructure {
    n_vertices: usize,
    rows: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Rows are sorted internally and sorted among themselves; duplicates are
    /// kept so that validation can report them.
    pub fn new(n_vertices: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut rows = rows;
        for row in rows.iter_mut() {
            row.sort_unstable();
            row.dedup();
            if let Some(&v) = row.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::NotAPolytopeIncidence(format!(
                    "vertex {v} out of range for {n_vertices} vertices"
                )));
            }
        }
        rows.sort();
        Ok(Self { n_vertices, rows })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_facets(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn has_duplicate_rows(&self) -> bool {
        self.rows.windows(2).any(|w| w[0] == w[1])
    }

    /// For every vertex, the sorted list of facets containing it.
    pub fn vertex_facets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_vertices];
        for (f, row) in self.rows.iter().enumerate() {
            for &v in row {
                out[v].push(f);
            }
        }
        out
    }
}

pub fn incidence_of(polytope: &Polytope) -> IncidenceStructure {
    let mut rows: Vec<Vec<usize>> = (0..polytope.facets.len()).map(|f| polytope.tight_set(f)).collect();
    rows.sort();
    rows.dedup();
    IncidenceStructure {
        n_vertices: polytope.vertices.len(),
        rows,
    }
}

pub fn facet_enumeration(vertices: &[Vec<Rational>]) -> Result<Polytope> {
    if vertices.len() > MAX_HULL_POINTS {
        return Err(Error::Precondition(format!(
            "hull supports at most {MAX_HULL_POINTS} points, got {}",
            vertices.len()
        )));
    }
    let Some(base) = vertices.first() else {
        return Err(Error::NoPoints);
    };
    let ambient_dim = base.len();
    let diffs = exactnum::differences(vertices, base)?;
    let (basis, pivots) = exactnum::row_echelon_basis(&diffs, ambient_dim);
    let d = pivots.len();
    if d > MAX_HULL_DIM {
        return Err(Error::Precondition(format!(
            "hull supports affine dimension at most {MAX_HULL_DIM}, got {d}"
        )));
    }
    let mut facets = if d == 0 {
        Vec::new()
    } else {
        let chart: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
            .collect();
        let lift = Lift::new(&basis, base)?;
        double_description(&chart)
            .into_iter()
            .map(|ray| lift.lift(&ray, &pivots, ambient_dim))
            .collect::<Result<Vec<_>>>()?
    };
    facets.sort();
    let incidence = facets
        .iter()
        .map(|f| vertices.iter().map(|v| f.slack(v).is_zero()).collect())
        .collect();
    Ok(Polytope {
        ambient_dim,
        affine_dim: d,
        vertices: vertices.to_vec(),
        facets,
        incidence,
    })
}

/// Orthogonal projection onto the row space of an echelon basis.
struct Lift<'a> {
    basis: &'a [Vec<Rational>],
    gram: RationalMatrix,
    base: &'a [Rational],
}

impl<'a> Lift<'a> {
    fn new(basis: &'a [Vec<Rational>], base: &'a [Rational]) -> Result<Self> {
        let b = RationalMatrix::from_rows(basis)?;
        let gram = b.mul(&b.transpose())?;
        Ok(Self { basis, gram, base })
    }

    /// Turns the chart ray `(r₀, r)`, meaning `r₀ + r·y ≥ 0`, into an ambient
    /// facet `normal·x ≤ offset` with a primitive integer normal.
    fn lift(&self, ray: &[BigInt], pivots: &[usize], ambient: usize) -> Result<Facet> {
        let mut w = vec![Rational::zero(); ambient];
        for (k, &c) in pivots.iter().enumerate() {
            w[c] = Rational::from_integer(-&ray[k + 1]);
        }
        let rhs: Vec<Rational> = self.basis.iter().map(|row| dot(row, &w)).collect();
        let coeffs = exactnum::solve(&self.gram, &rhs)?;
        let mut projected = vec![Rational::zero(); ambient];
        for (row, c) in self.basis.iter().zip(&coeffs) {
            for (p, x) in projected.iter_mut().zip(row) {
                *p += c * x;
            }
        }
        let shift: Vec<Rational> = projected.iter().zip(&w).map(|(a, b)| a - b).collect();
        let offset = Rational::from_integer(ray[0].clone()) + dot(&shift, self.base);

        let mut scaled = clear_denominators(&projected);
        primitive(&mut scaled);
        let k = scaled
            .iter()
            .position(|x| !x.is_zero())
            .expect("lifted facet normal is nonzero");
        let factor = Rational::from_integer(scaled[k].clone()) / &projected[k];
        Ok(Facet {
            normal: scaled.into_iter().map(Rational::from_integer).collect(),
            offset: offset * factor,
        })
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays `(r₀, r)` of `{a₀ + a·y ≥ 0 for every chart point y}` for
/// full-dimensional `points`. Each ray is a facet of their convex hull.
fn double_description(points: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    let d = points[0].len();
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut h = vec![Rational::from_integer(BigInt::from(1))];
            h.extend(p.iter().cloned());
            clear_denominators(&h)
        })
        .collect();
    let m = rows.len();

    // Initial simplicial cone from d+1 linearly independent constraints.
    let mut initial: Vec<usize> = Vec::new();
    for i in 0..m {
        let mut trial: Vec<Vec<Rational>> = initial.iter().map(|&k| to_rational(&rows[k])).collect();
        trial.push(to_rational(&rows[i]));
        if exactnum::rank(&RationalMatrix::from_rows(&trial).expect("equal lengths")) == trial.len() {
            initial.push(i);
            if initial.len() == d + 1 {
                break;
            }
        }
    }
    debug_assert_eq!(initial.len(), d + 1, "chart points must be full-dimensional");
    let a0 = RationalMatrix::from_rows(&initial.iter().map(|&k| to_rational(&rows[k])).collect::<Vec<_>>())
        .expect("square");
    let inv = exactnum::inverse(&a0).expect("independent rows");
    let mut processed = FixedBitSet::with_capacity(m);
    for &k in &initial {
        processed.insert(k);
    }
    let mut rays: Vec<Ray> = (0..=d)
        .map(|j| {
            let column: Vec<Rational> = (0..=d).map(|r| inv.get(r, j).clone()).collect();
            let mut coords = clear_denominators(&column);
            primitive(&mut coords);
            let mut zeros = FixedBitSet::with_capacity(m);
            for (idx, &k) in initial.iter().enumerate() {
                if idx != j {
                    zeros.insert(k);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        processed.insert(i);
        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(row, &r.coords)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if d >= 1 && common.count_ones(..) + 1 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == q || !common.is_subset(&rays[k].zeros));
                if !adjacent {
                    continue;
                }
                let mut coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(x, y)| &values[p] * x - &values[q] * y)
                    .collect();
                primitive(&mut coords);
                common.insert(i);
                created.push(Ray { coords, zeros: common });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_zero() {
                r.zeros.insert(i);
                next.push(r);
            } else if values[k].is_positive() {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }
    rays.into_iter().map(|r| r.coords).collect()
}

fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn unit_square() {
        let p = facet_enumeration(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(p.facets.len(), 4);
        assert!((0..4).all(|f| p.tight_set(f).len() == 2));
        let inc = incidence_of(&p);
        assert_eq!((inc.n_facets(), inc.n_vertices()), (4, 4));
        assert!(p.points_are_vertices());
        // -x <= 0 is one of the facets
        assert!(p.facets.contains(&Facet {
            normal: vec![int(-1), int(0)],
            offset: int(0)
        }));
    }

    #[test]
    fn simplex_and_point() {
        let s = facet_enumeration(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(s.facets.len(), 4);
        let point = facet_enumeration(&pts(&[&[2, 3], &[2, 3]])).unwrap();
        assert_eq!((point.affine_dim, point.facets.len()), (0, 0));
        assert!(matches!(facet_enumeration(&[]), Err(Error::NoPoints)));
    }

    #[test]
    fn segment_embedded_in_space() {
        let p = facet_enumeration(&pts(&[&[0, 0, 0], &[2, 2, 2]])).unwrap();
        assert_eq!(p.affine_dim, 1);
        assert_eq!(p.facets.len(), 2);
        // normals lie on the line direction
        for f in &p.facets {
            assert!(f.normal[0] == f.normal[1] && f.normal[1] == f.normal[2]);
        }
    }

    #[test]
    fn non_vertex_points_are_detected() {
        let p = facet_enumeration(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 0]])).unwrap();
        assert_eq!(p.facets.len(), 3);
        assert!(!p.points_are_vertices());
    }

    #[test]
    fn duplicate_rows_are_kept_for_validation() {
        let inc = IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(inc.has_duplicate_rows());
        assert!(IncidenceStructure::new(2, vec![vec![2]]).is_err());
    }
}
