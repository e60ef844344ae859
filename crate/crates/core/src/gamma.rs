//! The permutation group `Γ(G) = ⟨λ_g, ρ_g, ι⟩ ≤ Sym(G)`, where
//! `λ_g(x) = gx`, `ρ_g(x) = xg⁻¹` and `ι(x) = x⁻¹`.
//!
//! Elements of `G` are identified with `{0, …, |G|-1}` through a
//! [`GroupLabelling`]; every permutation in this module acts on those labels.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::perm::{GroupTable, Permutation, PermutationGroup, TaggedGenerator};
use crate::{Error, Result};

pub const GAMMA_ORDER_BOUND: usize = 30;
pub const NORMALIZER_ORDER_BOUND: usize = 6;

/// A fixed bijection between the elements of an abstract group and
/// `{0, …, |G|-1}`. Index `i` is the `i`-th element in canonical (sorted)
/// order, so index 0 is the identity.
#[derive(Clone, Debug)]
pub struct GroupLabelling {
    table: GroupTable,
}

impl GroupLabelling {
    pub fn new(group: &PermutationGroup) -> Self {
        Self {
            table: GroupTable::new(group),
        }
    }

    pub fn group(&self) -> &PermutationGroup {
        self.table.group()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element(&self, label: usize) -> &Permutation {
        self.table.element(label as u32)
    }

    pub fn label_of(&self, p: &Permutation) -> Option<usize> {
        self.table.index_of(p).map(|i| i as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a as u32, b as u32) as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.table.inv(a as u32) as usize
    }

    /// `λ_g : x ↦ gx`.
    pub fn left(&self, g: usize) -> Permutation {
        self.label_map(|x| self.mul(g, x))
    }

    /// `ρ_g : x ↦ xg⁻¹`.
    pub fn right(&self, g: usize) -> Permutation {
        let gi = self.inv(g);
        self.label_map(|x| self.mul(x, gi))
    }

    /// `ι : x ↦ x⁻¹`.
    pub fn inversion(&self) -> Permutation {
        self.label_map(|x| self.inv(x))
    }

    fn label_map(&self, f: impl Fn(usize) -> usize) -> Permutation {
        Permutation::from_images((0..self.len()).map(f).collect())
            .expect("group multiplication by a fixed element is a bijection")
    }
}

#[derive(Clone, Debug)]
pub struct GammaGroup {
    pub base: GroupLabelling,
    pub gamma: PermutationGroup,
    pub lambda_sub: PermutationGroup,
    pub rho_sub: PermutationGroup,
    pub iota: Permutation,
}

/// Builds `Γ(G)` on the labels of `G`. Generators are tagged `λ[...]`,
/// `ρ[...]` (one per generator of `G`) and `ι`.
pub fn build_gamma(g: &PermutationGroup) -> Result<GammaGroup> {
    if g.order() > GAMMA_ORDER_BOUND {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound: GAMMA_ORDER_BOUND,
        });
    }
    let base = GroupLabelling::new(g);
    let n = base.len();
    let group_gens: Vec<usize> = if g.generators().is_empty() {
        (1..n).collect()
    } else {
        g.generators()
            .iter()
            .map(|t| base.label_of(&t.permutation).expect("generator lies in its group"))
            .collect()
    };
    let lambda_gens: Vec<TaggedGenerator> = group_gens
        .iter()
        .map(|&x| TaggedGenerator {
            tag: format!("λ[{}]", base.element(x)),
            permutation: base.left(x),
        })
        .collect();
    let rho_gens: Vec<TaggedGenerator> = group_gens
        .iter()
        .map(|&x| TaggedGenerator {
            tag: format!("ρ[{}]", base.element(x)),
            permutation: base.right(x),
        })
        .collect();
    let iota = base.inversion();
    let mut all = lambda_gens.clone();
    all.extend(rho_gens.iter().cloned());
    all.push(TaggedGenerator {
        tag: "ι".into(),
        permutation: iota.clone(),
    });
    Ok(GammaGroup {
        gamma: PermutationGroup::generate_tagged(n, all)?,
        lambda_sub: PermutationGroup::generate_tagged(n, lambda_gens)?,
        rho_sub: PermutationGroup::generate_tagged(n, rho_gens)?,
        iota,
        base,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WreathStatus {
    Pass,
    Fail,
    HypothesisViolated,
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathReport {
    pub input_group: String,
    pub group_order: usize,
    pub center_order: usize,
    /// `2|G|²/|Z(G)|`; `None` when the hypothesis fails.
    pub expected: Option<usize>,
    pub actual: usize,
    /// The same formula evaluated even when the hypothesis fails.
    pub formula_value: usize,
    /// Whether `λ_z ρ_z = id` for every central `z`.
    pub kernel_verified: bool,
    pub status: WreathStatus,
    pub pass: bool,
}

/// Compares `|Γ(G)|` with `|G ≀ C_2| / |Z|`, `Z = {(z, z) : z ∈ Z(G)}`.
///
/// For an elementary abelian 2-group the report carries the
/// `hypothesis-violated` status instead of a verdict; `pass` is then true
/// because nothing was claimed.
pub fn verify_wreath_quotient(g: &PermutationGroup, input_group: &str) -> Result<WreathReport> {
    let gamma = build_gamma(g)?;
    let center = gamma.base.table().center();
    let n = g.order();
    let formula_value = 2 * n * n / center.len();
    let kernel_verified = center.iter().all(|&z| {
        let z = z as usize;
        gamma.base.left(z).compose(&gamma.base.right(z)).is_identity()
    });
    let actual = gamma.gamma.order();
    let (expected, status) = if g.is_elementary_abelian_2() {
        (None, WreathStatus::HypothesisViolated)
    } else if actual == formula_value && kernel_verified {
        (Some(formula_value), WreathStatus::Pass)
    } else {
        (Some(formula_value), WreathStatus::Fail)
    };
    Ok(WreathReport {
        input_group: input_group.to_string(),
        group_order: n,
        center_order: center.len(),
        expected,
        actual,
        formula_value,
        kernel_verified,
        status,
        pass: status != WreathStatus::Fail,
    })
}

/// Two regular subgroups of `Γ(G)` that centralize each other. `first` and
/// `second` may coincide (an abelian regular subgroup commutes with itself).
#[derive(Clone, Debug)]
pub struct CommutingPair {
    pub first: PermutationGroup,
    pub second: PermutationGroup,
}

impl CommutingPair {
    pub fn is_self_paired(&self) -> bool {
        self.first == self.second
    }
}

/// Every unordered pair `{U, V}` of regular subgroups of `Γ(G)` with
/// `[U, V] = 1`, including `U = V`.
pub fn commuting_regular_pairs(gamma: &GammaGroup) -> Result<Vec<CommutingPair>> {
    Ok(commuting_pairs_among(&crate::perm::regular_subgroups(&gamma.gamma)?))
}

fn commuting_pairs_among(regular: &[PermutationGroup]) -> Vec<CommutingPair> {
    let gens: Vec<Vec<Permutation>> = regular.iter().map(|u| u.generator_permutations()).collect();
    let mut pairs = Vec::new();
    for i in 0..regular.len() {
        for j in i..regular.len() {
            let commute = gens[i]
                .iter()
                .all(|a| gens[j].iter().all(|b| a.commutes_with(b)));
            if commute {
                pairs.push(CommutingPair {
                    first: regular[i].clone(),
                    second: regular[j].clone(),
                });
            }
        }
    }
    pairs
}

#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub first: &'static str,
    pub second: &'static str,
    pub self_paired: bool,
    pub first_generators: Vec<String>,
    pub second_generators: Vec<String>,
    /// `(|U_L|, |U_R|)` for self-paired `U` inside `λ(G)ρ(G)`.
    pub projection_orders: Option<(usize, usize)>,
    /// Class of `first` under conjugation by `λ(G)ρ(G)`.
    pub lambda_rho_class: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularPairsReport {
    pub input_group: String,
    pub group_order: usize,
    pub gamma_order: usize,
    pub regular_subgroups: usize,
    pub pairs: Vec<PairSummary>,
    pub lambda_rho_present: bool,
    /// Distinct projection orders among self-paired subgroups other than
    /// `λ(G)` and `ρ(G)`, each with the number of `λ(G)ρ(G)`-classes
    /// realising it.
    pub exceptional_shapes: Vec<((usize, usize), usize)>,
    /// Pairs that are neither `{λ(G), ρ(G)}` nor self-paired.
    pub unexpected: Vec<String>,
    pub pass: bool,
}

/// Runs [`commuting_regular_pairs`] on `Γ(G)` and summarises the result.
/// Passes when `{λ(G), ρ(G)}` is found and every other pair is self-paired.
pub fn regular_pairs_report(g: &PermutationGroup, input_group: &str) -> Result<RegularPairsReport> {
    let gamma = build_gamma(g)?;
    let regular = crate::perm::regular_subgroups(&gamma.gamma)?;
    let pairs = commuting_pairs_among(&regular);
    let mut lr_gens = gamma.lambda_sub.generator_permutations();
    lr_gens.extend(gamma.rho_sub.generator_permutations());
    let lambda_rho = PermutationGroup::generate(gamma.base.len(), &lr_gens)?;
    let firsts: Vec<PermutationGroup> = pairs.iter().map(|p| p.first.clone()).collect();
    let classes = conjugacy_classes_under(&lambda_rho, &firsts);
    let cycle_strings = |u: &PermutationGroup| -> Vec<String> {
        u.generator_permutations().iter().map(|p| p.to_string()).collect()
    };
    let is_lambda_rho = |p: &CommutingPair| {
        let (a, b) = (p.first.elements(), p.second.elements());
        let (l, r) = (gamma.lambda_sub.elements(), gamma.rho_sub.elements());
        (a == l && b == r) || (a == r && b == l)
    };
    let mut summaries = Vec::new();
    let mut unexpected = Vec::new();
    let mut shapes: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for (p, &class) in pairs.iter().zip(&classes) {
        let projection = if p.is_self_paired() { projection_orders(&gamma, &p.first) } else { None };
        if !is_lambda_rho(p) {
            if !p.is_self_paired() {
                unexpected.push(format!("{:?} with {:?}", cycle_strings(&p.first), cycle_strings(&p.second)));
            } else if let Some(shape) = projection {
                shapes.entry(shape).or_default().insert(class);
            }
        }
        summaries.push(PairSummary {
            first: classify_regular(&gamma, &p.first),
            second: classify_regular(&gamma, &p.second),
            self_paired: p.is_self_paired(),
            first_generators: cycle_strings(&p.first),
            second_generators: cycle_strings(&p.second),
            projection_orders: projection,
            lambda_rho_class: class,
        });
    }
    let lambda_rho_present = pairs.iter().any(is_lambda_rho);
    Ok(RegularPairsReport {
        input_group: input_group.to_string(),
        group_order: g.order(),
        gamma_order: gamma.gamma.order(),
        regular_subgroups: regular.len(),
        pairs: summaries,
        lambda_rho_present,
        exceptional_shapes: shapes.into_iter().map(|(k, v)| (k, v.len())).collect(),
        pass: lambda_rho_present && unexpected.is_empty(),
        unexpected,
    })
}

/// Coarse label for a regular subgroup of `Γ(G)` used in reports.
pub fn classify_regular(gamma: &GammaGroup, u: &PermutationGroup) -> &'static str {
    if u.elements() == gamma.lambda_sub.elements() && u.elements() == gamma.rho_sub.elements() {
        "lambda=rho"
    } else if u.elements() == gamma.lambda_sub.elements() {
        "lambda"
    } else if u.elements() == gamma.rho_sub.elements() {
        "rho"
    } else if u.elements().iter().any(|p| p.order() == u.order()) {
        "cyclic"
    } else if u.is_abelian() {
        "abelian"
    } else {
        "other"
    }
}

/// Orders of the projections `U_L`, `U_R` of a subgroup `U ≤ λ(G)ρ(G)`,
/// where `U_L = {g : λ_g ρ_h ∈ U for some h}` and symmetrically for `U_R`.
/// Returns `None` when some element of `U` is not of the form `λ_g ρ_h`.
pub fn projection_orders(gamma: &GammaGroup, u: &PermutationGroup) -> Option<(usize, usize)> {
    let n = gamma.base.len();
    let mut left = HashSet::new();
    let mut right = HashSet::new();
    for x in u.elements() {
        let (g, h) = (0..n)
            .cartesian_product(0..n)
            .find(|&(g, h)| gamma.base.left(g).compose(&gamma.base.right(h)) == *x)?;
        left.insert(g);
        right.insert(h);
    }
    Some((left.len(), right.len()))
}

/// Partitions `subgroups` into classes of subgroups conjugate under `Γ(G)`;
/// returns the class index of each entry.
pub fn conjugacy_classes(gamma: &GammaGroup, subgroups: &[PermutationGroup]) -> Vec<usize> {
    conjugacy_classes_under(&gamma.gamma, subgroups)
}

/// As [`conjugacy_classes`], conjugating by the elements of `by`.
pub fn conjugacy_classes_under(by: &PermutationGroup, subgroups: &[PermutationGroup]) -> Vec<usize> {
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut next = 0;
    for i in 0..subgroups.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let conjugates: HashSet<Vec<Permutation>> = by
            .elements()
            .iter()
            .map(|g| {
                let mut c: Vec<Permutation> =
                    subgroups[i].elements().iter().map(|h| g.conjugate(h)).collect();
                c.sort();
                c
            })
            .collect();
        for j in i..subgroups.len() {
            if class_of[j] == usize::MAX && conjugates.contains(subgroups[j].elements()) {
                class_of[j] = next;
            }
        }
        next += 1;
    }
    class_of
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizerReport {
    pub input_group: String,
    pub gamma_order: usize,
    pub normalizer_order: usize,
    pub aut_order: usize,
    pub aut_gamma_order: usize,
    pub pass: bool,
}

/// `N_{Sym(G)}(Γ(G))` by scanning all of `Sym(G)`, compared as a set with
/// `Aut(G)·Γ(G)` where `Aut(G)` is found by scanning label bijections that
/// fix the identity and respect multiplication.
pub fn normalizer_in_full_symmetric(g: &PermutationGroup, input_group: &str) -> Result<NormalizerReport> {
    if g.order() > NORMALIZER_ORDER_BOUND {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound: NORMALIZER_ORDER_BOUND,
        });
    }
    let gamma = build_gamma(g)?;
    let n = g.order();
    let gamma_gens = gamma.gamma.generator_permutations();
    let mut normalizer: Vec<Permutation> = Vec::new();
    let mut automorphisms: Vec<Permutation> = Vec::new();
    for images in (0..n).permutations(n) {
        let pi = Permutation::from_images(images).expect("itertools yields bijections");
        if gamma_gens.iter().all(|x| gamma.gamma.contains(&pi.conjugate(x))) {
            normalizer.push(pi.clone());
        }
        let is_aut = pi.apply(0) == 0
            && (0..n).all(|a| {
                (0..n).all(|b| pi.apply(gamma.base.mul(a, b)) == gamma.base.mul(pi.apply(a), pi.apply(b)))
            });
        if is_aut {
            automorphisms.push(pi);
        }
    }
    let mut product: Vec<Permutation> = automorphisms
        .iter()
        .cartesian_product(gamma.gamma.elements())
        .map(|(a, x)| a.compose(x))
        .collect();
    product.sort();
    product.dedup();
    normalizer.sort();
    Ok(NormalizerReport {
        input_group: input_group.to_string(),
        gamma_order: gamma.gamma.order(),
        normalizer_order: normalizer.len(),
        aut_order: automorphisms.len(),
        aut_gamma_order: product.len(),
        pass: normalizer == product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic_group, klein_four_group};
    use crate::perm::symmetric_group;

    #[test]
    fn gamma_orders() {
        assert_eq!(build_gamma(&cyclic_group(2)).unwrap().gamma.order(), 2);
        let v4 = build_gamma(&klein_four_group()).unwrap();
        assert_eq!(v4.gamma.order(), 4);
        assert!(v4.iota.is_identity());
        assert_eq!(v4.lambda_sub.elements(), v4.rho_sub.elements());
        assert_eq!(build_gamma(&symmetric_group(3)).unwrap().gamma.order(), 72);
        assert!(matches!(
            build_gamma(&symmetric_group(5)),
            Err(Error::GroupTooLarge { order: 120, .. })
        ));
    }

    #[test]
    fn left_and_right_actions_commute_and_iota_swaps_them() {
        let gamma = build_gamma(&symmetric_group(3)).unwrap();
        let b = &gamma.base;
        for g in 0..6 {
            for h in 0..6 {
                assert!(b.left(g).commutes_with(&b.right(h)));
            }
            assert_eq!(gamma.iota.compose(&b.left(g)).compose(&gamma.iota), b.right(g));
        }
    }

    #[test]
    fn wreath_reports() {
        let s3 = verify_wreath_quotient(&symmetric_group(3), "S3").unwrap();
        assert_eq!((s3.expected, s3.actual, s3.status), (Some(72), 72, WreathStatus::Pass));
        let c6 = verify_wreath_quotient(&cyclic_group(6), "C6").unwrap();
        assert_eq!((c6.expected, c6.actual, c6.status), (Some(12), 12, WreathStatus::Pass));
        let v4 = verify_wreath_quotient(&klein_four_group(), "C2xC2").unwrap();
        assert_eq!(v4.status, WreathStatus::HypothesisViolated);
        assert_eq!((v4.actual, v4.formula_value), (4, 8));
    }

    #[test]
    fn c2_has_one_self_paired_regular_subgroup() {
        let gamma = build_gamma(&cyclic_group(2)).unwrap();
        let pairs = commuting_regular_pairs(&gamma).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].is_self_paired());
        assert_eq!(pairs[0].first.elements(), gamma.lambda_sub.elements());
        assert_eq!(classify_regular(&gamma, &pairs[0].first), "lambda=rho");
    }

    #[test]
    fn s3_pairs_report() {
        let r = regular_pairs_report(&symmetric_group(3), "S3").unwrap();
        assert!(r.pass && r.lambda_rho_present);
        assert_eq!(r.regular_subgroups, 8);
        assert_eq!(r.pairs.len(), 7);
        assert_eq!(r.exceptional_shapes, vec![((2, 3), 1), ((3, 2), 1)]);
    }

    #[test]
    fn normalizer_small_cases() {
        let s3 = normalizer_in_full_symmetric(&symmetric_group(3), "S3").unwrap();
        assert_eq!((s3.normalizer_order, s3.aut_gamma_order, s3.pass), (72, 72, true));
        let c3 = normalizer_in_full_symmetric(&cyclic_group(3), "C3").unwrap();
        assert_eq!((c3.normalizer_order, c3.aut_gamma_order, c3.pass), (6, 6, true));
        let c2 = normalizer_in_full_symmetric(&cyclic_group(2), "C2").unwrap();
        assert_eq!((c2.normalizer_order, c2.pass), (2, true));
        assert!(normalizer_in_full_symmetric(&symmetric_group(4), "S4").is_err());
    }
}
