//! Permutations and finite permutation groups stored as explicit element
//! lists.
//!
//! Composition follows function notation: `a.compose(&b)` is `a ∘ b`, i.e.
//! `b` is applied first. Elements of a [`PermutationGroup`] are kept sorted
//! lexicographically by image array, so the identity is always element 0.
//!
//! Heavy computations (centralizers, subgroup enumeration, regular subgroups)
//! go through a [`GroupTable`], which indexes the elements and caches the full
//! multiplication table.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default order bound for [`all_subgroups`].
pub const DEFAULT_SUBGROUP_BOUND: usize = 200;
/// Order bound for [`regular_subgroups`].
pub const REGULAR_SEARCH_ORDER_BOUND: usize = 1500;
/// Degree bound for [`regular_subgroups`].
pub const REGULAR_SEARCH_DEGREE_BOUND: usize = 24;

/// A bijection of `{0, …, m-1}`; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears twice in cycle notation"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses disjoint cycle notation such as `"(0 1)(2 3)"`; `"()"` is the
    /// identity. `degree` of `None` uses the largest point mentioned plus one.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let needed = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        let degree = degree.unwrap_or(needed);
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Self) -> Self {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Nontrivial cycles, each starting at its smallest point, in order of
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_cycles(s, None)
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' in {text:?}")));
        };
        let Some(end) = body.find(')') else {
            return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
        };
        let points = body[..end]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(cycles)
}

/// A generator with a human-readable tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedGenerator {
    pub tag: String,
    pub permutation: Permutation,
}

/// A finite permutation group with its full, sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<TaggedGenerator>,
}

impl PermutationGroup {
    /// The group generated by `generators`, acting on `degree` points.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        let tagged = generators
            .iter()
            .enumerate()
            .map(|(i, p)| TaggedGenerator {
                tag: format!("g{i}"),
                permutation: p.clone(),
            })
            .collect();
        Self::generate_tagged(degree, tagged)
    }

    pub fn generate_tagged(degree: usize, generators: Vec<TaggedGenerator>) -> Result<Self> {
        for g in &generators {
            if g.permutation.degree() != degree {
                return Err(Error::MixedDegrees(degree, g.permutation.degree()));
            }
        }
        let gens: Vec<&Permutation> = generators.iter().map(|g| &g.permutation).collect();
        let elements = closure_elements(degree, &gens);
        Ok(Self {
            degree,
            elements,
            generators,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            elements: vec![Permutation::identity(degree)],
            generators: Vec::new(),
        }
    }

    /// Wraps an element list that is claimed to be a group. A small generating
    /// set is extracted greedily and the claim is verified by closure.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if let Some(p) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::MixedDegrees(degree, p.degree()));
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for p in &elements {
            if !current.contains(p) {
                gens.push(p.clone());
                let refs: Vec<&Permutation> = gens.iter().collect();
                current = closure_elements(degree, &refs).into_iter().collect();
            }
        }
        if current.len() != elements.len() {
            return Err(Error::NotASubgroup(format!(
                "element list of size {} generates a group of order {}",
                elements.len(),
                current.len()
            )));
        }
        Ok(Self {
            degree,
            elements,
            generators: gens
                .into_iter()
                .enumerate()
                .map(|(i, p)| TaggedGenerator {
                    tag: format!("g{i}"),
                    permutation: p,
                })
                .collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[TaggedGenerator] {
        &self.generators
    }

    pub fn generator_permutations(&self) -> Vec<Permutation> {
        self.generators.iter().map(|g| g.permutation.clone()).collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_permutations();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.is_abelian()
            && self
                .elements
                .iter()
                .all(|p| p.compose(p).is_identity())
    }

    /// Whether the group acts transitively with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        if self.order() != self.degree {
            return false;
        }
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        for p in &self.elements {
            let x = p.apply(0);
            if seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Orbit of `point` under the group.
    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        self.elements.iter().map(|p| p.apply(point)).collect()
    }
}

/// Serialized as a summary: degree, order and generators in cycle notation.
impl Serialize for PermutationGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.permutation.to_string())
            .collect();
        let mut s = serializer.serialize_struct("PermutationGroup", 3)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("generators", &gens)?;
        s.end()
    }
}

/// Breadth-first closure starting from the identity; result sorted.
fn closure_elements(degree: usize, gens: &[&Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    queue.sort();
    queue
}

/// The group generated by `generators`. The degree is taken from the first
/// generator; an empty list is rejected because the degree is then unknown.
pub fn closure(generators: &[Permutation]) -> Result<PermutationGroup> {
    let Some(first) = generators.first() else {
        return Err(Error::Precondition(
            "closure of an empty generator list needs an explicit degree".into(),
        ));
    };
    PermutationGroup::generate(first.degree(), generators)
}

/// `C_G(H)`: elements of `G` commuting with every generator of `H`.
pub fn centralizer(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("H is not contained in G".into()));
    }
    let gens = if h.generators().is_empty() {
        h.elements().to_vec()
    } else {
        h.generator_permutations()
    };
    let elements = g
        .elements()
        .iter()
        .filter(|x| gens.iter().all(|y| x.commutes_with(y)))
        .cloned()
        .collect();
    PermutationGroup::from_elements(g.degree(), elements)
}

/// Indexed view of a permutation group with a cached multiplication table.
///
/// Element `i` is `group.elements()[i]`; index 0 is the identity. Subsets of
/// the group are represented as sorted index lists.
#[derive(Clone, Debug)]
pub struct GroupTable {
    group: PermutationGroup,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

pub type Subset = Vec<u32>;

impl GroupTable {
    pub fn new(group: &PermutationGroup) -> Self {
        let n = group.order();
        let index: HashMap<Permutation, u32> = group
            .elements()
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in group.elements() {
            for b in group.elements() {
                mul.push(index[&a.compose(b)]);
            }
        }
        let inv = group
            .elements()
            .iter()
            .map(|a| index[&a.inverse()])
            .collect();
        Self {
            group: group.clone(),
            index,
            mul,
            inv,
        }
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.group.elements()[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Closure of `gens` as a sorted index list.
    pub fn closure(&self, gens: &[u32]) -> Subset {
        self.closure_bounded(gens, |_| true)
            .expect("unbounded closure cannot be rejected")
    }

    /// Closure that calls `accept` on every new element and aborts with
    /// `None` as soon as it returns false.
    pub fn closure_bounded(&self, gens: &[u32], mut accept: impl FnMut(u32) -> bool) -> Option<Subset> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        if !accept(0) {
            return None;
        }
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    if !accept(y) {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        Some(queue)
    }

    pub fn full(&self) -> Subset {
        (0..self.order() as u32).collect()
    }

    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        let members = self.membership(set);
        set.first() == Some(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| members[self.mul(a, b) as usize]))
    }

    pub fn membership(&self, set: &[u32]) -> Vec<bool> {
        let mut m = vec![false; self.order()];
        for &x in set {
            m[x as usize] = true;
        }
        m
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[u32]) -> Subset {
        (0..self.order() as u32)
            .filter(|&g| set.iter().all(|&h| self.commute(g, h)))
            .collect()
    }

    pub fn center(&self) -> Subset {
        let full = self.full();
        self.centralizer(&full)
    }

    pub fn conjugate_set(&self, set: &[u32], g: u32) -> Subset {
        let gi = self.inv(g);
        let mut out: Subset = set.iter().map(|&h| self.mul(self.mul(g, h), gi)).collect();
        out.sort_unstable();
        out
    }

    /// `N_G(H)` for a subgroup `H`.
    pub fn normalizer(&self, set: &[u32]) -> Subset {
        (0..self.order() as u32)
            .filter(|&g| self.conjugate_set(set, g) == set)
            .collect()
    }

    /// Normal closure of `set` inside the subgroup `within`.
    pub fn normal_closure(&self, set: &[u32], within: &[u32]) -> Subset {
        let mut gens: Vec<u32> = Vec::new();
        for &g in within {
            for &h in set {
                gens.push(self.mul(self.mul(g, h), self.inv(g)));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Set product `HK = {hk}`, sorted.
    pub fn set_product(&self, h: &[u32], k: &[u32]) -> Subset {
        let mut seen = vec![false; self.order()];
        for &a in h {
            for &b in k {
                seen[self.mul(a, b) as usize] = true;
            }
        }
        (0..self.order() as u32).filter(|&x| seen[x as usize]).collect()
    }

    pub fn subgroup(&self, set: &[u32]) -> PermutationGroup {
        let elements = set.iter().map(|&i| self.element(i).clone()).collect();
        PermutationGroup::from_elements(self.group.degree(), elements)
            .expect("index set passed to subgroup() must be a subgroup")
    }

    /// Every subgroup, by cyclic extension: each subgroup `⟨H, g⟩` is reached
    /// from a smaller subgroup `H`, starting at the trivial group.
    pub fn all_subgroups(&self) -> Vec<Subset> {
        let mut found: HashSet<Subset> = HashSet::new();
        let trivial: Subset = vec![0];
        found.insert(trivial.clone());
        let mut layer: Vec<(Subset, Vec<u32>)> = vec![(trivial, Vec::new())];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (h, gens) in &layer {
                let members = self.membership(h);
                for g in 0..self.order() as u32 {
                    if members[g as usize] {
                        continue;
                    }
                    let mut ext = gens.clone();
                    ext.push(g);
                    let k = self.closure(&ext);
                    if found.insert(k.clone()) {
                        next.push((k, ext));
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Subset> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Every subgroup of order equal to the degree that acts regularly.
    ///
    /// Fiber search: a regular subgroup `U` contains exactly one element
    /// mapping point 0 to `x`, for every `x`. The search keeps a partial
    /// subgroup `S ≤ U`, picks the least point not yet reached from 0, and
    /// branches over the fixed-point-free elements sending 0 there. A branch
    /// is cut as soon as two elements of the closure send 0 to the same point
    /// (a nontrivial stabilizer). Every regular subgroup is reached along
    /// exactly one path, because each step's point and element are determined
    /// by `U`.
    pub fn regular_subgroups(&self) -> Vec<Subset> {
        let m = self.group.degree();
        let mut out = Vec::new();
        if m == 0 || !self.order().is_multiple_of(m) {
            return out;
        }
        let mut fibers: Vec<Vec<u32>> = vec![Vec::new(); m];
        for (i, p) in self.group.elements().iter().enumerate() {
            let x = p.apply(0);
            if x != 0 && p.fixed_points() == 0 {
                fibers[x].push(i as u32);
            }
        }
        let base_images: Vec<usize> = self.group.elements().iter().map(|p| p.apply(0)).collect();
        self.regular_search(&[0], &mut Vec::new(), &fibers, &base_images, m, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn regular_search(
        &self,
        current: &[u32],
        gens: &mut Vec<u32>,
        fibers: &[Vec<u32>],
        base_images: &[usize],
        m: usize,
        out: &mut Vec<Subset>,
    ) {
        if current.len() == m {
            out.push(current.to_vec());
            return;
        }
        let mut reached = vec![false; m];
        for &u in current {
            reached[base_images[u as usize]] = true;
        }
        let target = reached
            .iter()
            .position(|&r| !r)
            .expect("partial subgroup smaller than the degree leaves a point unreached");
        for &g in &fibers[target] {
            gens.push(g);
            let mut hit = vec![false; m];
            let grown = self.closure_bounded(gens, |u| {
                let x = base_images[u as usize];
                !std::mem::replace(&mut hit[x], true)
            });
            if let Some(grown) = grown {
                self.regular_search(&grown, gens, fibers, base_images, m, out);
            }
            gens.pop();
        }
    }
}

/// Every subgroup of `g` exactly once, sorted by order and then by element
/// indices. Fails when `|G|` exceeds `bound`.
pub fn all_subgroups(g: &PermutationGroup, bound: usize) -> Result<Vec<PermutationGroup>> {
    if g.order() > bound {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound,
        });
    }
    let table = GroupTable::new(g);
    Ok(table
        .all_subgroups()
        .iter()
        .map(|s| table.subgroup(s))
        .collect())
}

/// All regular subgroups of `g` in its action on `g.degree()` points.
pub fn regular_subgroups(g: &PermutationGroup) -> Result<Vec<PermutationGroup>> {
    if g.order() > REGULAR_SEARCH_ORDER_BOUND || g.degree() > REGULAR_SEARCH_DEGREE_BOUND {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound: REGULAR_SEARCH_ORDER_BOUND,
        });
    }
    let table = GroupTable::new(g);
    Ok(table
        .regular_subgroups()
        .iter()
        .map(|s| table.subgroup(s))
        .collect())
}

/// Symmetric group on `n` points.
pub fn symmetric_group(n: usize) -> PermutationGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(TaggedGenerator {
            tag: "(0 1)".into(),
            permutation: Permutation::from_cycles(n, &[vec![0, 1]]).expect("valid transposition"),
        });
    }
    if n >= 3 {
        gens.push(TaggedGenerator {
            tag: "n-cycle".into(),
            permutation: Permutation::from_cycles(n, &[(0..n).collect()]).expect("valid cycle"),
        });
    }
    PermutationGroup::generate_tagged(n, gens).expect("generators share the degree")
}
