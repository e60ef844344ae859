//! Representation polytopes `P(D) = conv{D(g)}` of finite rational matrix
//! groups, and their comparison with Birkhoff polytopes.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::birkhoff::{birkhoff_points, permutation_matrix};
use crate::combsym::{comb_automorphisms, comb_equivalent};
use crate::exactnum::{int, Rational, RationalMatrix};
use crate::format::MatrixGroupDocument;
use crate::gamma::GroupLabelling;
use crate::groups::{cyclic_group, klein_four_group};
use crate::hull::{facet_enumeration, incidence_of, IncidenceStructure, Polytope};
use crate::perm::{symmetric_group, Permutation, PermutationGroup};
use crate::{Error, Result};

pub const DEFAULT_MATRIX_GROUP_BOUND: usize = 500;

const C6_FIXTURE: &str = include_str!("../fixtures/c6_paper.json");

/// A finite matrix group. `elements[0]` is the identity and the remaining
/// matrices are in increasing order; vertex `k` of the representation
/// polytope is `elements[k]`.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub dim: usize,
    pub elements: Vec<RationalMatrix>,
    /// The left regular action `x ↦ g·x` on element indices. Because
    /// `λ_g(0) = g`, the canonical labels of this group coincide with the
    /// element indices.
    pub element_group: PermutationGroup,
    pub labelling: GroupLabelling,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &RationalMatrix) -> Option<usize> {
        self.elements.iter().position(|x| x == m)
    }

    /// `D(g)ᵀ = D(g⁻¹)` for every element.
    pub fn is_orthogonal(&self) -> bool {
        (0..self.order()).all(|g| self.elements[g].transpose() == self.elements[self.labelling.inv(g)])
    }
}

/// Closure of `generators` under multiplication, by breadth-first search.
pub fn matrix_closure(generators: &[RationalMatrix], bound: usize) -> Result<MatrixGroup> {
    let Some(first) = generators.first() else {
        return Err(Error::Precondition("at least one generator is required".into()));
    };
    let dim = first.rows();
    for g in generators {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.rows().max(g.cols()),
            });
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    let identity = RationalMatrix::identity(dim);
    let mut seen = vec![identity.clone()];
    let mut index: HashMap<RationalMatrix, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(k) = queue.pop_front() {
        for g in generators {
            let next = seen[k].mul(g)?;
            if !index.contains_key(&next) {
                if seen.len() == bound {
                    return Err(Error::NotFinite(bound));
                }
                index.insert(next.clone(), seen.len());
                queue.push_back(seen.len());
                seen.push(next);
            }
        }
    }
    let identity = seen.swap_remove(0);
    seen.sort();
    let mut elements = vec![identity];
    elements.extend(seen);
    let index: HashMap<&RationalMatrix, usize> = elements.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let order = elements.len();
    let regular = |a: usize| -> Result<Permutation> {
        let images = elements
            .iter()
            .map(|x| Ok(index[&elements[a].mul(x)?]))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    };
    let actions = (0..order).map(regular).collect::<Result<Vec<_>>>()?;
    let element_group = PermutationGroup::from_elements(order, actions)?;
    let labelling = GroupLabelling::new(&element_group);
    debug_assert!((0..order).all(|k| labelling.element(k).apply(0) == k));
    Ok(MatrixGroup {
        dim,
        elements,
        element_group,
        labelling,
    })
}

/// `P(D)` with vertices in element order. Errors if some matrix is not a
/// vertex, which cannot happen for a finite group.
pub fn representation_polytope(m: &MatrixGroup) -> Result<Polytope> {
    let points: Vec<Vec<Rational>> = m.elements.iter().map(RationalMatrix::vectorize).collect();
    let p = facet_enumeration(&points)?;
    if !p.points_are_vertices() {
        return Err(Error::Inconsistent("some group element is not a vertex of P(D)".into()));
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaActsReport {
    pub group_order: usize,
    pub automorphism_order: usize,
    pub lambda_pass: bool,
    pub rho_pass: bool,
    /// `ι` is required exactly when the representation is orthogonal, so that
    /// `ι` is realized by transposition.
    pub iota_required: bool,
    pub iota_member: bool,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Checks that every `λ_g`, `ρ_g` (and `ι`, reported separately) acting on
/// vertex labels is a combinatorial symmetry of `P(D)`.
pub fn verify_gamma_acts(m: &MatrixGroup) -> Result<GammaActsReport> {
    let polytope = representation_polytope(m)?;
    let aut = comb_automorphisms(&incidence_of(&polytope))?;
    let lab = &m.labelling;
    let mut failures = Vec::new();
    let mut lambda_pass = true;
    let mut rho_pass = true;
    for g in 0..m.order() {
        if !aut.contains(&lab.left(g)) {
            lambda_pass = false;
            failures.push(format!("λ of element {g} is not a symmetry"));
        }
        if !aut.contains(&lab.right(g)) {
            rho_pass = false;
            failures.push(format!("ρ of element {g} is not a symmetry"));
        }
    }
    let iota_required = m.is_orthogonal();
    let iota_member = aut.contains(&lab.inversion());
    if iota_required && !iota_member {
        failures.push("ι is not a symmetry although D is orthogonal".into());
    }
    Ok(GammaActsReport {
        group_order: m.order(),
        automorphism_order: aut.order(),
        lambda_pass,
        rho_pass,
        iota_required,
        iota_member,
        pass: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub generators: Vec<RationalMatrix>,
    /// Order of the abstract group; a closure of any other order means the
    /// entry is not a faithful representation of it.
    pub expected_order: usize,
    pub expected_equivalent: Option<bool>,
}

impl CatalogEntry {
    pub fn from_document(doc: &MatrixGroupDocument, expected_equivalent: Option<bool>) -> Result<Self> {
        let generators = doc.matrices()?;
        let name = doc.name.clone().unwrap_or_else(|| "unnamed".into());
        let expected_order = match doc.order {
            Some(k) => k,
            None => matrix_closure(&generators, DEFAULT_MATRIX_GROUP_BOUND)?.order(),
        };
        Ok(Self {
            name,
            generators,
            expected_order,
            expected_equivalent,
        })
    }
}

pub fn c6_exceptional_document() -> MatrixGroupDocument {
    MatrixGroupDocument::parse(C6_FIXTURE).expect("shipped fixture parses")
}

fn permutation_rep(g: &PermutationGroup) -> Vec<RationalMatrix> {
    g.generator_permutations().iter().map(permutation_matrix).collect()
}

fn regular_rep(g: &PermutationGroup) -> Vec<RationalMatrix> {
    let lab = GroupLabelling::new(g);
    g.generator_permutations()
        .iter()
        .map(|p| permutation_matrix(&lab.left(lab.label_of(p).expect("generator is an element"))))
        .collect()
}

fn with_sign(g: &PermutationGroup) -> Vec<RationalMatrix> {
    g.generator_permutations()
        .iter()
        .map(|p| {
            let n = p.degree();
            let odd = p.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 1;
            let mut rows = permutation_matrix(p).row_vecs();
            for r in rows.iter_mut() {
                r.push(int(0));
            }
            let mut last = vec![int(0); n + 1];
            last[n] = int(if odd { -1 } else { 1 });
            rows.push(last);
            RationalMatrix::from_rows(&rows).expect("square")
        })
        .collect()
}

/// The shipped catalog for `B_3` and `B_4`, each entry with its expected
/// outcome.
pub fn default_catalog(n: usize) -> Result<Vec<CatalogEntry>> {
    let entry = |name: &str, generators: Vec<RationalMatrix>, order: usize, eq: bool| CatalogEntry {
        name: name.into(),
        generators,
        expected_order: order,
        expected_equivalent: Some(eq),
    };
    match n {
        3 => {
            let s3 = symmetric_group(3);
            Ok(vec![
                entry("S3 standard", permutation_rep(&s3), 6, true),
                CatalogEntry::from_document(&c6_exceptional_document(), Some(true))?,
                entry("C6 regular", permutation_rep(&cyclic_group(6)), 6, false),
                entry("S3 regular", regular_rep(&s3), 6, false),
                entry("C4 permutation", permutation_rep(&cyclic_group(4)), 4, false),
                entry("C2xC2 permutation", permutation_rep(&klein_four_group()), 4, false),
            ])
        }
        4 => {
            let s4 = symmetric_group(4);
            Ok(vec![
                entry("S4 standard", permutation_rep(&s4), 24, true),
                entry("S4 standard plus sign", with_sign(&s4), 24, false),
            ])
        }
        _ => Err(Error::Precondition(format!("catalogs exist for n in {{3, 4}}, got {n}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub order: usize,
    pub dim: usize,
    pub affine_dim: usize,
    pub n_vertices: usize,
    pub n_facets: usize,
    pub equivalent: bool,
    /// `witness[k]` is the vertex of `B_n` matched with element `k`.
    pub witness: Option<Vec<usize>>,
    /// For equivalent entries: conjugating the automorphism group of `P(D)`
    /// by the witness gives exactly the automorphism group of `B_n`.
    pub automorphisms_conjugate: Option<bool>,
    pub expected_equivalent: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub birkhoff_facets: usize,
    pub birkhoff_automorphism_order: usize,
    pub entries: Vec<EntryResult>,
    pub pass: bool,
}

fn birkhoff_incidence(n: usize) -> Result<IncidenceStructure> {
    Ok(incidence_of(&facet_enumeration(&birkhoff_points(n)?)?))
}

/// Compares the polytope of every catalog entry with `B_n`.
pub fn uniqueness_check(n: usize, catalog: &[CatalogEntry]) -> Result<UniquenessReport> {
    if !(3..=4).contains(&n) {
        return Err(Error::Precondition(format!("uniqueness check supports n in {{3, 4}}, got {n}")));
    }
    let target = birkhoff_incidence(n)?;
    let target_aut = comb_automorphisms(&target)?;
    let mut entries = Vec::new();
    for e in catalog {
        let m = matrix_closure(&e.generators, DEFAULT_MATRIX_GROUP_BOUND)?;
        if m.order() != e.expected_order {
            return Err(Error::Unfaithful(format!(
                "{}: generators close to order {}, expected {}",
                e.name,
                m.order(),
                e.expected_order
            )));
        }
        let polytope = representation_polytope(&m)?;
        let inc = incidence_of(&polytope);
        let witness = comb_equivalent(&inc, &target);
        let automorphisms_conjugate = match &witness {
            Some(beta) => {
                let aut = comb_automorphisms(&inc)?;
                let beta_inv = beta.inverse();
                Some(
                    aut.order() == target_aut.order()
                        && aut
                            .vertex_permutations
                            .elements()
                            .iter()
                            .all(|a| target_aut.contains(&beta.compose(a).compose(&beta_inv))),
                )
            }
            None => None,
        };
        let equivalent = witness.is_some();
        let pass = e.expected_equivalent.is_none_or(|x| x == equivalent) && automorphisms_conjugate != Some(false);
        entries.push(EntryResult {
            name: e.name.clone(),
            order: m.order(),
            dim: m.dim,
            affine_dim: polytope.affine_dim,
            n_vertices: polytope.vertices.len(),
            n_facets: polytope.facets.len(),
            equivalent,
            witness: witness.map(|w| w.images().to_vec()),
            automorphisms_conjugate,
            expected_equivalent: e.expected_equivalent,
            pass,
        });
    }
    Ok(UniquenessReport {
        n,
        birkhoff_facets: target.n_facets(),
        birkhoff_automorphism_order: target_aut.order(),
        pass: entries.iter().all(|e| e.pass),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_standard() -> MatrixGroup {
        matrix_closure(&permutation_rep(&symmetric_group(3)), DEFAULT_MATRIX_GROUP_BOUND).unwrap()
    }

    fn c6_exceptional() -> MatrixGroup {
        matrix_closure(&c6_exceptional_document().matrices().unwrap(), DEFAULT_MATRIX_GROUP_BOUND).unwrap()
    }

    #[test]
    fn closures() {
        assert_eq!(matrix_closure(&[RationalMatrix::identity(3)], 10).unwrap().order(), 1);
        assert_eq!(s3_standard().order(), 6);
        let c6 = c6_exceptional();
        assert_eq!(c6.order(), 6);
        assert!(c6.elements[0].is_identity());
        assert!(c6.element_group.is_abelian());
        let singular = RationalMatrix::from_integers(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(matrix_closure(&[singular], 10).unwrap_err(), Error::NotInvertible);
        let shear = RationalMatrix::from_integers(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(matrix_closure(&[shear], 50).unwrap_err(), Error::NotFinite(50));
    }

    #[test]
    fn polytopes() {
        let p = representation_polytope(&s3_standard()).unwrap();
        assert_eq!((p.facets.len(), p.affine_dim), (9, 4));
        let p = representation_polytope(&c6_exceptional()).unwrap();
        assert_eq!((p.vertices.len(), p.affine_dim), (6, 4));
        let trivial = matrix_closure(&[RationalMatrix::identity(2)], 10).unwrap();
        let p = representation_polytope(&trivial).unwrap();
        assert_eq!((p.facets.len(), p.affine_dim), (0, 0));
    }

    #[test]
    fn gamma_acts() {
        let r = verify_gamma_acts(&s3_standard()).unwrap();
        assert!(r.pass && r.iota_required && r.iota_member);
        let r = verify_gamma_acts(&c6_exceptional()).unwrap();
        assert!(r.pass && r.lambda_pass && r.rho_pass && !r.iota_required);
        let trivial = matrix_closure(&[RationalMatrix::identity(2)], 10).unwrap();
        assert!(verify_gamma_acts(&trivial).unwrap().pass);
    }

    #[test]
    fn catalog_for_b3() {
        let r = uniqueness_check(3, &default_catalog(3).unwrap()).unwrap();
        assert!(r.pass, "{:#?}", r.entries);
        let c6 = &r.entries[1];
        assert!(c6.equivalent && c6.witness.is_some() && c6.automorphisms_conjugate == Some(true));
        assert_eq!(r.entries[2].n_facets, 6);
    }

    #[test]
    fn unfaithful_entries_are_rejected() {
        let entry = CatalogEntry {
            name: "trivial C2".into(),
            generators: vec![RationalMatrix::identity(3)],
            expected_order: 2,
            expected_equivalent: None,
        };
        assert!(matches!(uniqueness_check(3, &[entry]), Err(Error::Unfaithful(_))));
    }
}
