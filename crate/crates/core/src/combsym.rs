//! Combinatorial automorphisms and equivalences of polytopes, computed from
//! vertex-facet incidence.
//!
//! A vertex bijection `π` is combinatorial when some facet bijection `ψ`
//! satisfies `v ∈ f ⇔ π(v) ∈ ψ(f)`. Facet rows are pairwise distinct for a
//! polytope, so `ψ` is forced by `π` whenever it exists.
//!
//! The search assigns vertices one at a time. For every facet of the source
//! it keeps the set of target facets still consistent with the partial map;
//! an empty set cuts the branch. Vertices and facets are first coloured by
//! joint iterated refinement on both structures (vertex degree, facet size,
//! then multisets of neighbour colours) and only same-coloured images are
//! tried. Once every facet has a single candidate the remaining vertex images
//! are read off from their facet sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::hull::IncidenceStructure;
use crate::perm::{Permutation, PermutationGroup};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CombAutGroup {
    pub vertex_permutations: PermutationGroup,
    /// `facet_permutations[k]` is the facet action of
    /// `vertex_permutations.elements()[k]`, on the incidence rows.
    pub facet_permutations: Vec<Permutation>,
}

impl CombAutGroup {
    pub fn order(&self) -> usize {
        self.vertex_permutations.order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.vertex_permutations.contains(p)
    }

    pub fn facet_action(&self, p: &Permutation) -> Option<&Permutation> {
        self.vertex_permutations
            .elements()
            .binary_search(p)
            .ok()
            .map(|k| &self.facet_permutations[k])
    }
}

pub fn comb_automorphisms(inc: &IncidenceStructure) -> Result<CombAutGroup> {
    if inc.has_duplicate_rows() {
        return Err(Error::NotAPolytopeIncidence("duplicate facet rows".into()));
    }
    let nv = inc.n_vertices();
    if nv > 1 && inc.vertex_facets().iter().any(|fs| fs.len() == inc.n_facets()) {
        return Err(Error::NotAPolytopeIncidence(
            "a vertex lies on every facet".into(),
        ));
    }
    let mut found = Search::new(inc, inc).run(false);
    found.sort();
    let (vertex, facet): (Vec<Permutation>, Vec<Permutation>) = found.into_iter().unzip();
    let vertex_permutations = PermutationGroup::from_elements(nv, vertex)?;
    debug_assert_eq!(vertex_permutations.order(), facet.len());
    Ok(CombAutGroup {
        vertex_permutations,
        facet_permutations: facet,
    })
}

/// A vertex bijection from `p` to `q` (`β[v]` is the image of vertex `v`)
/// extending to a facet bijection that preserves incidence, if one exists.
pub fn comb_equivalent(p: &IncidenceStructure, q: &IncidenceStructure) -> Option<Permutation> {
    let dedup = |s: &IncidenceStructure| {
        let mut rows = s.rows().to_vec();
        rows.dedup();
        IncidenceStructure::new(s.n_vertices(), rows).expect("rows already validated")
    };
    let (p, q) = (dedup(p), dedup(q));
    Search::new(&p, &q)
        .run(true)
        .into_iter()
        .next()
        .map(|(v, _)| v)
}

struct Coloring {
    vertex: Vec<u32>,
    facet: Vec<u32>,
}

/// Side tag (vertex 0, facet 1), previous colour, sorted neighbour colours.
type Key = (u8, u32, Vec<u32>);

/// Joint colour refinement of several incidence structures, so that colours
/// are comparable across them.
fn refine(sides: &[&IncidenceStructure]) -> Vec<Coloring> {
    let vfacets: Vec<Vec<Vec<usize>>> = sides.iter().map(|s| s.vertex_facets()).collect();
    let mut colors: Vec<Coloring> = sides
        .iter()
        .zip(&vfacets)
        .map(|(s, vf)| Coloring {
            vertex: vf.iter().map(|fs| fs.len() as u32).collect(),
            facet: s.rows().iter().map(|r| r.len() as u32).collect(),
        })
        .collect();
    // Vertex and facet colours live in separate namespaces.
    let mut classes = 0;
    loop {
        let mut keys: BTreeSet<Key> = BTreeSet::new();
        let mut pending: Vec<(Vec<Key>, Vec<Key>)> = Vec::new();
        for ((s, vf), c) in sides.iter().zip(&vfacets).zip(&colors) {
            let vkeys: Vec<_> = vf
                .iter()
                .enumerate()
                .map(|(v, fs)| {
                    let mut nb: Vec<u32> = fs.iter().map(|&f| c.facet[f]).collect();
                    nb.sort_unstable();
                    (0u8, c.vertex[v], nb)
                })
                .collect();
            let fkeys: Vec<_> = s
                .rows()
                .iter()
                .enumerate()
                .map(|(f, row)| {
                    let mut nb: Vec<u32> = row.iter().map(|&v| c.vertex[v]).collect();
                    nb.sort_unstable();
                    (1u8, c.facet[f], nb)
                })
                .collect();
            keys.extend(vkeys.iter().cloned());
            keys.extend(fkeys.iter().cloned());
            pending.push((vkeys, fkeys));
        }
        let ids: BTreeMap<&Key, u32> =
            keys.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let next: Vec<Coloring> = pending
            .iter()
            .map(|(vk, fk)| Coloring {
                vertex: vk.iter().map(|k| ids[k]).collect(),
                facet: fk.iter().map(|k| ids[k]).collect(),
            })
            .collect();
        colors = next;
        if keys.len() == classes {
            return colors;
        }
        classes = keys.len();
    }
}

/// Vertices in the order they are branched on. Each step picks, among the
/// smallest colour classes, the vertex that best refines the partition of
/// facets by incidence with the vertices chosen so far, so facet images
/// become forced early.
fn branching_order(p: &IncidenceStructure, vertex_colors: &[u32]) -> Vec<usize> {
    let nv = p.n_vertices();
    let class_size = |c: u32| vertex_colors.iter().filter(|&&x| x == c).count();
    let vf = p.vertex_facets();
    let on: Vec<FixedBitSet> = vf
        .iter()
        .map(|fs| {
            let mut b = FixedBitSet::with_capacity(p.n_facets());
            fs.iter().for_each(|&f| b.insert(f));
            b
        })
        .collect();
    let mut part = vec![0u32; p.n_facets()];
    let mut remaining: Vec<usize> = (0..nv).collect();
    let mut order = Vec::with_capacity(nv);
    let split = |part: &[u32], v: usize, on: &[FixedBitSet]| -> Vec<u32> {
        let keys: Vec<(u32, bool)> = (0..part.len()).map(|f| (part[f], on[v].contains(f))).collect();
        let ids: BTreeMap<(u32, bool), u32> = keys
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        keys.iter().map(|k| ids[k]).collect()
    };
    // Number of facets already separated from all others, then number of parts.
    let score = |part: &[u32]| {
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        part.iter().for_each(|&c| *sizes.entry(c).or_default() += 1);
        (sizes.values().filter(|&&s| s == 1).count(), sizes.len())
    };
    while !remaining.is_empty() {
        let best = if score(&part).0 == p.n_facets() {
            0
        } else {
            (0..remaining.len())
                .min_by_key(|&k| {
                    let v = remaining[k];
                    (
                        class_size(vertex_colors[v]),
                        std::cmp::Reverse(score(&split(&part, v, &on))),
                        v,
                    )
                })
                .expect("non-empty")
        };
        let v = remaining.remove(best);
        part = split(&part, v, &on);
        order.push(v);
    }
    order
}

fn histogram(values: &[u32]) -> Vec<u32> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v
}

struct Search<'a> {
    p: &'a IncidenceStructure,
    q: &'a IncidenceStructure,
    /// `p_in[f][v]`: vertex `v` of `p` lies on facet `f`.
    p_in: Vec<FixedBitSet>,
    q_in: Vec<FixedBitSet>,
    /// Facets of `q` through each vertex of `q`.
    q_facets_of: Vec<FixedBitSet>,
    q_by_facets: Option<HashMap<Vec<usize>, usize>>,
    p_vertex_facets: Vec<Vec<usize>>,
    colors: Vec<Coloring>,
    order: Vec<usize>,
    stop_at_first: bool,
    found: Vec<(Permutation, Permutation)>,
}

impl<'a> Search<'a> {
    fn new(p: &'a IncidenceStructure, q: &'a IncidenceStructure) -> Self {
        let nv = p.n_vertices();
        let p_in = p
            .rows()
            .iter()
            .map(|row| {
                let mut b = FixedBitSet::with_capacity(nv);
                row.iter().for_each(|&v| b.insert(v));
                b
            })
            .collect();
        let q_in = q
            .rows()
            .iter()
            .map(|row| {
                let mut b = FixedBitSet::with_capacity(q.n_vertices());
                row.iter().for_each(|&v| b.insert(v));
                b
            })
            .collect();
        let q_vf = q.vertex_facets();
        let q_facets_of = q_vf
            .iter()
            .map(|fs| {
                let mut b = FixedBitSet::with_capacity(q.n_facets());
                fs.iter().for_each(|&f| b.insert(f));
                b
            })
            .collect();
        let by_facets: HashMap<Vec<usize>, usize> =
            q_vf.iter().enumerate().map(|(v, fs)| (fs.clone(), v)).collect();
        let q_by_facets = (by_facets.len() == q.n_vertices()).then_some(by_facets);
        let colors = refine(&[p, q]);
        let order = branching_order(p, &colors[0].vertex);
        Self {
            p,
            q,
            p_in,
            q_in,
            q_facets_of,
            q_by_facets,
            p_vertex_facets: p.vertex_facets(),
            colors,
            order,
            stop_at_first: false,
            found: Vec::new(),
        }
    }

    fn run(mut self, stop_at_first: bool) -> Vec<(Permutation, Permutation)> {
        self.stop_at_first = stop_at_first;
        let (p, q) = (self.p, self.q);
        if p.n_vertices() != q.n_vertices()
            || p.n_facets() != q.n_facets()
            || histogram(&self.colors[0].vertex) != histogram(&self.colors[1].vertex)
            || histogram(&self.colors[0].facet) != histogram(&self.colors[1].facet)
        {
            return Vec::new();
        }
        let nf = q.n_facets();
        let cand: Vec<FixedBitSet> = (0..p.n_facets())
            .map(|f| {
                let mut b = FixedBitSet::with_capacity(nf);
                for g in 0..nf {
                    if self.colors[1].facet[g] == self.colors[0].facet[f] {
                        b.insert(g);
                    }
                }
                b
            })
            .collect();
        let mut vmap = vec![usize::MAX; p.n_vertices()];
        let mut used = FixedBitSet::with_capacity(q.n_vertices());
        self.extend(0, &cand, &mut vmap, &mut used);
        self.found
    }

    fn done(&self) -> bool {
        self.stop_at_first && !self.found.is_empty()
    }

    fn extend(&mut self, depth: usize, cand: &[FixedBitSet], vmap: &mut Vec<usize>, used: &mut FixedBitSet) {
        if self.done() {
            return;
        }
        if depth == self.order.len() {
            self.record(cand, vmap);
            return;
        }
        if self.q_by_facets.is_some() && cand.iter().all(|c| c.count_ones(..) == 1) {
            self.complete_forced(depth, cand, vmap, used);
            return;
        }
        let v = self.order[depth];
        let color = self.colors[0].vertex[v];
        // Facets whose image is already fixed restrict where `v` can go.
        let mut allowed = FixedBitSet::with_capacity(self.q.n_vertices());
        allowed.insert_range(..);
        allowed.difference_with(used);
        for (f, c) in cand.iter().enumerate() {
            let mut ones = c.ones();
            if let (Some(g), None) = (ones.next(), ones.next()) {
                if self.p_in[f].contains(v) {
                    allowed.intersect_with(&self.q_in[g]);
                } else {
                    allowed.difference_with(&self.q_in[g]);
                }
            }
        }
        for w in allowed.ones() {
            if self.colors[1].vertex[w] != color {
                continue;
            }
            let Some(next) = self.narrow(cand, v, w) else {
                continue;
            };
            vmap[v] = w;
            used.insert(w);
            self.extend(depth + 1, &next, vmap, used);
            used.set(w, false);
            vmap[v] = usize::MAX;
            if self.done() {
                return;
            }
        }
    }

    /// Facet candidates after additionally mapping `v ↦ w`.
    fn narrow(&self, cand: &[FixedBitSet], v: usize, w: usize) -> Option<Vec<FixedBitSet>> {
        let through_w = &self.q_facets_of[w];
        let mut next = Vec::with_capacity(cand.len());
        let mut singles = FixedBitSet::with_capacity(self.q.n_facets());
        for (f, c) in cand.iter().enumerate() {
            let mut c = c.clone();
            if self.p_in[f].contains(v) {
                c.intersect_with(through_w);
            } else {
                c.difference_with(through_w);
            }
            match c.count_ones(..) {
                0 => return None,
                1 => {
                    let g = c.ones().next().expect("one element");
                    if singles.put(g) {
                        return None;
                    }
                }
                _ => {}
            }
            next.push(c);
        }
        Some(next)
    }

    /// Every facet image is fixed; the unassigned vertices must go to the
    /// vertex with the mapped facet set.
    fn complete_forced(&mut self, depth: usize, cand: &[FixedBitSet], vmap: &mut [usize], used: &mut FixedBitSet) {
        let psi: Vec<usize> = cand.iter().map(|c| c.ones().next().expect("singleton")).collect();
        let index = self.q_by_facets.as_ref().expect("checked by caller");
        let mut assigned = Vec::new();
        let mut ok = true;
        for &v in &self.order[depth..] {
            let mut target: Vec<usize> = self.p_vertex_facets[v].iter().map(|&f| psi[f]).collect();
            target.sort_unstable();
            match index.get(&target) {
                Some(&w) if !used.contains(w) && self.colors[1].vertex[w] == self.colors[0].vertex[v] => {
                    vmap[v] = w;
                    used.insert(w);
                    assigned.push(v);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        // With every facet image fixed, the map is an isomorphism iff each
        // facet row is carried onto its image row.
        if ok && self.preserves_rows(&psi, vmap) {
            self.record(cand, vmap);
        }
        for v in assigned {
            used.set(vmap[v], false);
            vmap[v] = usize::MAX;
        }
    }

    fn preserves_rows(&self, psi: &[usize], vmap: &[usize]) -> bool {
        self.p.rows().iter().zip(psi).all(|(row, &g)| {
            let target = &self.q_in[g];
            row.len() == self.q.rows()[g].len() && row.iter().all(|&v| target.contains(vmap[v]))
        })
    }

    fn record(&mut self, cand: &[FixedBitSet], vmap: &[usize]) {
        let psi: Vec<usize> = cand
            .iter()
            .map(|c| {
                debug_assert_eq!(c.count_ones(..), 1);
                c.ones().next().expect("complete maps leave one candidate per facet")
            })
            .collect();
        let (Ok(pi), Ok(psi)) = (Permutation::from_images(vmap.to_vec()), Permutation::from_images(psi)) else {
            return;
        };
        self.found.push((pi, psi));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> IncidenceStructure {
        IncidenceStructure::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
    }

    fn simplex(k: usize) -> IncidenceStructure {
        let rows = (0..=k)
            .map(|skip| (0..=k).filter(|&v| v != skip).collect())
            .collect();
        IncidenceStructure::new(k + 1, rows).unwrap()
    }

    #[test]
    fn square_has_dihedral_symmetry() {
        let g = comb_automorphisms(&square()).unwrap();
        assert_eq!(g.order(), 8);
        let rot = Permutation::from_images(vec![1, 2, 3, 0]).unwrap();
        assert!(g.contains(&rot));
        assert!(!g.contains(&Permutation::from_images(vec![1, 0, 2, 3]).unwrap()));
        assert!(g.facet_action(&rot).is_some());
    }

    #[test]
    fn simplex_symmetry_is_full() {
        assert_eq!(comb_automorphisms(&simplex(2)).unwrap().order(), 6);
        assert_eq!(comb_automorphisms(&simplex(3)).unwrap().order(), 24);
    }

    #[test]
    fn equivalence_examples() {
        let sq = square();
        assert!(comb_equivalent(&sq, &sq).is_some());
        assert!(comb_equivalent(&sq, &simplex(3)).is_none());
        // relabelled square
        let other = IncidenceStructure::new(4, vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]]).unwrap();
        let beta = comb_equivalent(&sq, &other).unwrap();
        for row in sq.rows() {
            let mut image: Vec<usize> = row.iter().map(|&v| beta.apply(v)).collect();
            image.sort_unstable();
            assert!(other.rows().contains(&image));
        }
    }

    #[test]
    fn invalid_incidence_is_rejected() {
        let dup = IncidenceStructure::new(3, vec![vec![0, 1], vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(comb_automorphisms(&dup), Err(Error::NotAPolytopeIncidence(_))));
        let all = IncidenceStructure::new(2, vec![vec![0, 1]]).unwrap();
        assert!(comb_automorphisms(&all).is_err());
    }
}
