//! The Birkhoff polytope `B_n` and its facet system.
//!
//! Vertices are the permutation matrices `P(π)` with `P(π)[i][j] = 1` iff
//! `π(i) = j`, listed in the canonical order of `S_n` (sorted image arrays).
//! The facet `a_ij = 0` has tight set `F_ij = {π : π(i) ≠ j}`; we work with the
//! complements `A_ij = {π : π(i) = j}`. Indices are 0-based.
//!
//! Every combinatorial symmetry has the form `π ↦ σ π^ε τ`;
//! [`decompose_symmetry`] recovers the triple from the action on the `A_ij`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::combsym::comb_automorphisms;
use crate::exactnum::{int, Rational, RationalMatrix};
use crate::hull::{facet_enumeration, incidence_of, IncidenceStructure};
use crate::perm::{symmetric_group, Permutation, PermutationGroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FacetLabel {
    pub i: usize,
    pub j: usize,
}

fn check_vertex_range(n: usize) -> Result<()> {
    if !(1..=5).contains(&n) {
        return Err(Error::Precondition(format!("n must be in 1..=5, got {n}")));
    }
    Ok(())
}

/// `S_n` in canonical order together with a lookup from permutation to index.
#[derive(Clone, Debug)]
pub struct SymmetricEnumeration {
    pub n: usize,
    pub group: PermutationGroup,
    index: HashMap<Permutation, usize>,
}

impl SymmetricEnumeration {
    pub fn new(n: usize) -> Self {
        let group = symmetric_group(n);
        let index = group
            .elements()
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        Self { n, group, index }
    }

    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element(&self, k: usize) -> &Permutation {
        &self.group.elements()[k]
    }

    pub fn index_of(&self, p: &Permutation) -> usize {
        self.index[p]
    }
}

pub fn permutation_matrix(p: &Permutation) -> RationalMatrix {
    let n = p.degree();
    let mut rows = vec![vec![int(0); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[p.apply(i)] = int(1);
    }
    RationalMatrix::from_rows(&rows).expect("square")
}

pub fn birkhoff_vertices(n: usize) -> Result<Vec<RationalMatrix>> {
    check_vertex_range(n)?;
    Ok(symmetric_group(n).elements().iter().map(permutation_matrix).collect())
}

/// Row-major vectorized vertices of `B_n`.
pub fn birkhoff_points(n: usize) -> Result<Vec<Vec<Rational>>> {
    Ok(birkhoff_vertices(n)?.iter().map(RationalMatrix::vectorize).collect())
}

fn facet_sets(sn: &SymmetricEnumeration) -> BTreeMap<FacetLabel, Vec<usize>> {
    let n = sn.n;
    let mut out: BTreeMap<FacetLabel, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            out.insert(FacetLabel { i, j }, Vec::new());
        }
    }
    for (k, p) in sn.group.elements().iter().enumerate() {
        for i in 0..n {
            out.get_mut(&FacetLabel { i, j: p.apply(i) })
                .expect("all labels present")
                .push(k);
        }
    }
    out
}

/// `A_ij = {π : π(i) = j}` as sorted index sets into the `S_n` enumeration.
pub fn analytic_facet_sets(n: usize) -> Result<BTreeMap<FacetLabel, Vec<usize>>> {
    if n < 3 {
        return Err(Error::FacetDescriptionNeedsThree);
    }
    check_vertex_range(n)?;
    Ok(facet_sets(&SymmetricEnumeration::new(n)))
}

/// Incidence structure of `B_n` built from the analytic facets `F_ij`
/// (complements of `A_ij`), without a hull computation.
pub fn analytic_incidence(n: usize) -> Result<IncidenceStructure> {
    let sets = analytic_facet_sets(n)?;
    let total: usize = (1..=n).product();
    let rows = sets
        .values()
        .map(|a| {
            let a: BTreeSet<usize> = a.iter().copied().collect();
            (0..total).filter(|k| !a.contains(k)).collect()
        })
        .collect();
    IncidenceStructure::new(total, rows)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub n: usize,
    pub cases_checked: usize,
    /// `(n-1)!` and `(n-2)!`.
    pub diagonal_value: usize,
    pub generic_value: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// Checks `|A_ij ∩ A_kl|` against the four-case formula for all `n⁴` index
/// quadruples.
pub fn verify_intersection_table(n: usize) -> Result<TableReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::Precondition(format!("intersection table supports n in 3..=5, got {n}")));
    }
    let sets = analytic_facet_sets(n)?;
    let members: BTreeMap<FacetLabel, BTreeSet<usize>> = sets
        .iter()
        .map(|(l, s)| (*l, s.iter().copied().collect()))
        .collect();
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for (a, sa) in &members {
        for (b, sb) in &members {
            cases += 1;
            let expected = match (a.i == b.i, a.j == b.j) {
                (true, true) => factorial(n - 1),
                (true, false) | (false, true) => 0,
                (false, false) => factorial(n - 2),
            };
            let actual = sa.intersection(sb).count();
            if actual != expected {
                mismatches.push(format!(
                    "|A_{}{} ∩ A_{}{}| = {actual}, expected {expected}",
                    a.i, a.j, b.i, b.j
                ));
            }
        }
    }
    Ok(TableReport {
        n,
        cases_checked: cases,
        diagonal_value: factorial(n - 1),
        generic_value: factorial(n - 2),
        pass: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformReport {
    pub n: usize,
    /// `(σ, τ, (i, j))` triples checked for `σ A_ij τ⁻¹ = A_{τ(i), σ(j)}`.
    pub triples_checked: usize,
    pub inversions_checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Checks `σ A_ij τ⁻¹ = A_{τ(i),σ(j)}` for every `σ, τ ∈ S_n` and every
/// label, and `A_ij⁻¹ = A_ji`.
pub fn verify_transformation_law(n: usize) -> Result<TransformReport> {
    if !(3..=4).contains(&n) {
        return Err(Error::Precondition(format!("transformation law supports n in 3..=4, got {n}")));
    }
    let sn = SymmetricEnumeration::new(n);
    let sets = facet_sets(&sn);
    let mut failures = Vec::new();
    let mut triples = 0;
    for sigma in sn.group.elements() {
        for tau in sn.group.elements() {
            let tau_inv = tau.inverse();
            for (label, members) in &sets {
                triples += 1;
                let mut image: Vec<usize> = members
                    .iter()
                    .map(|&k| sn.index_of(&sigma.compose(sn.element(k)).compose(&tau_inv)))
                    .collect();
                image.sort_unstable();
                let target = FacetLabel {
                    i: tau.apply(label.i),
                    j: sigma.apply(label.j),
                };
                if image != sets[&target] {
                    failures.push(format!(
                        "σ={sigma} τ={tau}: σA_{}{}τ⁻¹ ≠ A_{}{}",
                        label.i, label.j, target.i, target.j
                    ));
                }
            }
        }
    }
    let mut inversions = 0;
    for (label, members) in &sets {
        inversions += 1;
        let mut image: Vec<usize> = members.iter().map(|&k| sn.index_of(&sn.element(k).inverse())).collect();
        image.sort_unstable();
        if image != sets[&FacetLabel { i: label.j, j: label.i }] {
            failures.push(format!("A_{}{}⁻¹ ≠ A_{}{}", label.i, label.j, label.j, label.i));
        }
    }
    Ok(TransformReport {
        n,
        triples_checked: triples,
        inversions_checked: inversions,
        pass: failures.is_empty(),
        failures,
    })
}

/// The normal form `α(π) = σ π^ε τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymmetryDecomposition {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub epsilon: i8,
}

impl SymmetryDecomposition {
    pub fn apply(&self, pi: &Permutation) -> Permutation {
        let core = if self.epsilon < 0 { pi.inverse() } else { pi.clone() };
        self.sigma.compose(&core).compose(&self.tau)
    }

    /// The vertex permutation of `B_n` this triple induces.
    pub fn to_vertex_permutation(&self, sn: &SymmetricEnumeration) -> Permutation {
        Permutation::from_images(
            sn.group
                .elements()
                .iter()
                .map(|p| sn.index_of(&self.apply(p)))
                .collect(),
        )
        .expect("σ π^ε τ is a bijection of S_n")
    }
}

/// Recovers `(σ, τ, ε)` from a vertex permutation `alpha` of `B_n`.
///
/// 1. Each `α(A_ij)` must be some `A_kl`.
/// 2. If `α(A_00)` and `α(A_01)` share a row index, rows go to rows and
///    `ε = +1`; if they share a column index, `ε = -1` and `α` is replaced
///    by `α ∘ ι`.
/// 3. Now `α(A_ij) = A_{τ⁻¹(i), σ(j)}`: `σ` is read off the column map and
///    `τ` is the inverse of the row map.
/// 4. The triple is checked pointwise on all of `S_n`.
pub fn decompose_symmetry(n: usize, alpha: &Permutation) -> Result<SymmetryDecomposition> {
    if !(3..=5).contains(&n) {
        return Err(Error::Precondition(format!("decomposition supports n in 3..=5, got {n}")));
    }
    Decomposer::new(n).decompose(alpha)
}

/// Precomputed data for decomposing many symmetries of one `B_n`.
pub struct Decomposer {
    sn: SymmetricEnumeration,
    sets: BTreeMap<FacetLabel, Vec<usize>>,
    by_set: HashMap<Vec<usize>, FacetLabel>,
    inverted: Vec<usize>,
}

impl Decomposer {
    pub fn new(n: usize) -> Self {
        let sn = SymmetricEnumeration::new(n);
        let sets = facet_sets(&sn);
        let by_set = sets.iter().map(|(l, s)| (s.clone(), *l)).collect();
        let inverted = (0..sn.len()).map(|k| sn.index_of(&sn.element(k).inverse())).collect();
        Self { sn, sets, by_set, inverted }
    }

    fn images(&self, map: impl Fn(usize) -> usize) -> Result<BTreeMap<FacetLabel, FacetLabel>> {
        let mut out = BTreeMap::new();
        for (label, members) in &self.sets {
            let mut image: Vec<usize> = members.iter().map(|&k| map(k)).collect();
            image.sort_unstable();
            let Some(target) = self.by_set.get(&image) else {
                return Err(Error::NotAFacetSymmetry(format!(
                    "the image of A_{}{} is not of the form A_kl",
                    label.i, label.j
                )));
            };
            out.insert(*label, *target);
        }
        Ok(out)
    }

    pub fn decompose(&self, alpha: &Permutation) -> Result<SymmetryDecomposition> {
        let (n, sn) = (self.sn.n, &self.sn);
        if alpha.degree() != sn.len() {
            return Err(Error::Precondition(format!(
                "alpha must permute the {} vertices of B_{n}, got degree {}",
                sn.len(),
                alpha.degree()
            )));
        }
        let direct = self.images(|k| alpha.apply(k))?;
        let first = direct[&FacetLabel { i: 0, j: 0 }];
        let second = direct[&FacetLabel { i: 0, j: 1 }];
        let (epsilon, images) = if first.i == second.i {
            (1, direct)
        } else if first.j == second.j {
            (-1, self.images(|k| alpha.apply(self.inverted[k]))?)
        } else {
            return Err(Error::Inconsistent(
                "A_00 and A_01 are mapped to sets that are neither in one row nor in one column".into(),
            ));
        };
        let row_map: Vec<usize> = (0..n).map(|i| images[&FacetLabel { i, j: 0 }].i).collect();
        let col_map: Vec<usize> = (0..n).map(|j| images[&FacetLabel { i: 0, j }].j).collect();
        let (Ok(row), Ok(sigma)) = (Permutation::from_images(row_map), Permutation::from_images(col_map)) else {
            return Err(Error::Inconsistent("induced index maps are not bijections".into()));
        };
        let decomposition = SymmetryDecomposition {
            sigma,
            tau: row.inverse(),
            epsilon,
        };
        for (k, p) in sn.group.elements().iter().enumerate() {
            if sn.index_of(&decomposition.apply(p)) != alpha.apply(k) {
                return Err(Error::Inconsistent(format!(
                    "σ π^ε τ disagrees with alpha at π = {p}"
                )));
            }
        }
        Ok(decomposition)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryGroupReport {
    pub n: usize,
    /// `"hull"` when facets come from exact facet enumeration, `"analytic"`
    /// when they are the sets `F_ij`.
    pub facet_source: &'static str,
    pub n_vertices: usize,
    pub n_facets: usize,
    pub affine_dim: Option<usize>,
    pub facets_match_analytic: bool,
    pub order: usize,
    pub expected_order: usize,
    pub decomposed: usize,
    pub distinct_triples: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Computes the combinatorial automorphism group of `B_n`, checks its order
/// against `2(n!)²` and decomposes every element. For `n ∈ {3, 4}` the facets
/// come from the hull of the vertices; for `n = 5` the analytic facet sets are
/// used.
pub fn verify_symmetry_group(n: usize) -> Result<SymmetryGroupReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::Precondition(format!("symmetry group check supports n in 3..=5, got {n}")));
    }
    let analytic = analytic_incidence(n)?;
    let (inc, source, affine_dim) = if n <= 4 {
        let polytope = facet_enumeration(&birkhoff_points(n)?)?;
        (incidence_of(&polytope), "hull", Some(polytope.affine_dim))
    } else {
        (analytic.clone(), "analytic", None)
    };
    let mut failures = Vec::new();
    let facets_match_analytic = inc == analytic;
    if !facets_match_analytic {
        failures.push("facet tight sets differ from the sets F_ij".into());
    }
    let group = comb_automorphisms(&inc)?;
    let expected_order = 2 * factorial(n) * factorial(n);
    if group.order() != expected_order {
        failures.push(format!("order {} != {expected_order}", group.order()));
    }
    let decomposer = Decomposer::new(n);
    let mut triples = BTreeSet::new();
    let mut decomposed = 0;
    for alpha in group.vertex_permutations.elements() {
        match decomposer.decompose(alpha) {
            Ok(d) => {
                decomposed += 1;
                triples.insert(d);
            }
            Err(e) => failures.push(format!("alpha {alpha}: {e}")),
        }
    }
    if triples.len() != expected_order {
        failures.push(format!("{} distinct triples, expected {expected_order}", triples.len()));
    }
    Ok(SymmetryGroupReport {
        n,
        facet_source: source,
        n_vertices: inc.n_vertices(),
        n_facets: inc.n_facets(),
        affine_dim,
        facets_match_analytic,
        order: group.order(),
        expected_order,
        decomposed,
        distinct_triples: triples.len(),
        pass: failures.is_empty(),
        failures,
    })
}
