//! Chermak-Delgado measure `m_G(H) = |H|·|C_G(H)|` and the lattice of its
//! maximizers.

use std::collections::HashSet;

use serde::Serialize;

use crate::perm::{GroupTable, PermutationGroup, Subset, DEFAULT_SUBGROUP_BOUND};
use crate::{Error, Result};

pub fn cd_measure(g: &PermutationGroup, h: &PermutationGroup) -> Result<usize> {
    let c = crate::perm::centralizer(g, h)?;
    Ok(h.order() * c.order())
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeMember {
    pub label: String,
    pub order: usize,
    pub centralizer_order: usize,
    pub group: PermutationGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdReport {
    pub input_group: String,
    pub group_order: usize,
    pub subgroup_count: usize,
    pub max_measure: usize,
    pub lattice: Vec<LatticeMember>,
    /// Intersections, set products and centralizers of members are members,
    /// and every set product is a subgroup.
    pub closure_pass: bool,
    /// Every member is subnormal.
    pub subnormal_pass: bool,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// `"1"` for the trivial group, `whole` for the full group, otherwise the
/// generators in angle brackets.
pub fn subgroup_label(table: &GroupTable, set: &[u32], whole: &str) -> String {
    if set.len() == 1 {
        return "1".into();
    }
    if set.len() == table.order() {
        return whole.into();
    }
    let h = table.subgroup(set);
    let gens: Vec<String> = h.generators().iter().map(|g| g.permutation.to_string()).collect();
    format!("<{}>", gens.join(", "))
}

/// Subnormality via the descending series `G = H_0 ≥ H_1 ≥ …`, where
/// `H_{i+1}` is the normal closure of `H` in `H_i`. `H` is subnormal exactly
/// when the series stabilizes at `H`.
pub fn is_subnormal(table: &GroupTable, h: &[u32]) -> bool {
    let mut current = table.full();
    loop {
        let next = table.normal_closure(h, &current);
        if next == current {
            return current == h;
        }
        current = next;
    }
}

fn intersect(a: &[u32], b: &[u32]) -> Subset {
    let bs: HashSet<u32> = b.iter().copied().collect();
    a.iter().copied().filter(|x| bs.contains(x)).collect()
}

pub(crate) struct Measured {
    pub subgroups: Vec<Subset>,
    pub centralizers: Vec<Subset>,
}

pub(crate) fn measure_all(table: &GroupTable) -> Measured {
    let subgroups = table.all_subgroups();
    let centralizers = subgroups.iter().map(|h| table.centralizer(h)).collect();
    Measured {
        subgroups,
        centralizers,
    }
}

impl Measured {
    pub fn measure(&self, i: usize) -> usize {
        self.subgroups[i].len() * self.centralizers[i].len()
    }
}

pub fn cd_lattice(g: &PermutationGroup, input_group: &str) -> Result<CdReport> {
    cd_lattice_bounded(g, input_group, DEFAULT_SUBGROUP_BOUND)
}

pub fn cd_lattice_bounded(g: &PermutationGroup, input_group: &str, bound: usize) -> Result<CdReport> {
    if g.order() > bound {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound,
        });
    }
    let table = GroupTable::new(g);
    let measured = measure_all(&table);
    let max_measure = (0..measured.subgroups.len())
        .map(|i| measured.measure(i))
        .max()
        .expect("the trivial subgroup is always present");
    let members: Vec<usize> = (0..measured.subgroups.len())
        .filter(|&i| measured.measure(i) == max_measure)
        .collect();
    let in_lattice: HashSet<&Subset> = members.iter().map(|&i| &measured.subgroups[i]).collect();

    let mut failures = Vec::new();
    let label = |s: &[u32]| subgroup_label(&table, s, input_group);
    for &i in &members {
        let h = &measured.subgroups[i];
        if !in_lattice.contains(&measured.centralizers[i]) {
            failures.push(format!("C_G({}) is not in the lattice", label(h)));
        }
        for &j in &members {
            let k = &measured.subgroups[j];
            let meet = intersect(h, k);
            if !in_lattice.contains(&meet) {
                failures.push(format!("{} ∩ {} is not in the lattice", label(h), label(k)));
            }
            let product = table.set_product(h, k);
            if !table.is_subgroup(&product) {
                failures.push(format!("{}{} is not a subgroup", label(h), label(k)));
            } else if !in_lattice.contains(&product) {
                failures.push(format!("{}{} is not in the lattice", label(h), label(k)));
            }
        }
    }
    let closure_pass = failures.is_empty();
    let mut subnormal_pass = true;
    for &i in &members {
        if !is_subnormal(&table, &measured.subgroups[i]) {
            subnormal_pass = false;
            failures.push(format!("{} is not subnormal", label(&measured.subgroups[i])));
        }
    }

    let lattice = members
        .iter()
        .map(|&i| LatticeMember {
            label: label(&measured.subgroups[i]),
            order: measured.subgroups[i].len(),
            centralizer_order: measured.centralizers[i].len(),
            group: table.subgroup(&measured.subgroups[i]),
        })
        .collect();
    Ok(CdReport {
        input_group: input_group.to_string(),
        group_order: g.order(),
        subgroup_count: measured.subgroups.len(),
        max_measure,
        lattice,
        closure_pass,
        subnormal_pass,
        pass: closure_pass && subnormal_pass,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerEstimateReport {
    pub n: usize,
    pub group_order: usize,
    pub subgroup_count: usize,
    pub max_measure: usize,
    /// Orders of the subgroups attaining `|U||C(U)| = |G|`.
    pub equality_orders: Vec<usize>,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Checks `|U|·|C_{S_n}(U)| ≤ n!` for every `U ≤ S_n`, with equality only at
/// `U = 1` and `U = S_n`. `bound` caps `n!` as for subgroup enumeration.
pub fn verify_sn_cent_est(n: usize, bound: usize) -> Result<CentralizerEstimateReport> {
    if !(4..=5).contains(&n) {
        return Err(Error::Precondition(format!(
            "symmetric-group centralizer estimate supports n in {{4, 5}}, got {n}"
        )));
    }
    let g = crate::perm::symmetric_group(n);
    if g.order() > bound {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound,
        });
    }
    let table = GroupTable::new(&g);
    let measured = measure_all(&table);
    let order = g.order();
    let whole = format!("S{n}");
    let mut violations = Vec::new();
    let mut equality_orders = Vec::new();
    for i in 0..measured.subgroups.len() {
        let h = &measured.subgroups[i];
        let m = measured.measure(i);
        if m > order {
            violations.push(format!(
                "{} has measure {m} > {order}",
                subgroup_label(&table, h, &whole)
            ));
        } else if m == order {
            equality_orders.push(h.len());
            if h.len() != 1 && h.len() != order {
                violations.push(format!(
                    "{} attains equality",
                    subgroup_label(&table, h, &whole)
                ));
            }
        }
    }
    let max_measure = (0..measured.subgroups.len())
        .map(|i| measured.measure(i))
        .max()
        .unwrap_or(0);
    Ok(CentralizerEstimateReport {
        n,
        group_order: order,
        subgroup_count: measured.subgroups.len(),
        max_measure,
        pass: violations.is_empty() && equality_orders == vec![1, order],
        equality_orders,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic_group, dihedral_group, klein_four_group};
    use crate::perm::{symmetric_group, Permutation};

    #[test]
    fn measure_examples() {
        let s3 = symmetric_group(3);
        assert_eq!(cd_measure(&s3, &PermutationGroup::trivial(3)).unwrap(), 6);
        let a3 = PermutationGroup::generate(3, &[Permutation::parse_cycles("(0 1 2)", Some(3)).unwrap()]).unwrap();
        assert_eq!(cd_measure(&s3, &a3).unwrap(), 9);
        let d4 = dihedral_group(4);
        let t = GroupTable::new(&d4);
        let z = t.subgroup(&t.center());
        assert_eq!(cd_measure(&d4, &z).unwrap(), 2 * 8);
        let outside = PermutationGroup::generate(3, &[Permutation::parse_cycles("(0 1)", Some(3)).unwrap()]).unwrap();
        assert!(cd_measure(&a3, &outside).is_err());
    }

    #[test]
    fn lattice_of_s3_is_a3() {
        let r = cd_lattice(&symmetric_group(3), "S3").unwrap();
        assert_eq!(r.max_measure, 9);
        assert_eq!(r.lattice.len(), 1);
        assert_eq!(r.lattice[0].order, 3);
        assert!(r.pass);
    }

    #[test]
    fn lattice_of_s4_is_trivial_and_whole() {
        let r = cd_lattice(&symmetric_group(4), "S4").unwrap();
        let labels: Vec<&str> = r.lattice.iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, ["1", "S4"]);
        assert_eq!(r.max_measure, 24);
        assert!(r.pass);
    }

    #[test]
    fn abelian_lattice_is_the_group() {
        for g in [cyclic_group(6), klein_four_group(), cyclic_group(4)] {
            let r = cd_lattice(&g, "A").unwrap();
            assert_eq!(r.max_measure, g.order() * g.order());
            assert_eq!(r.lattice.len(), 1);
            assert_eq!(r.lattice[0].order, g.order());
        }
    }

    #[test]
    fn subnormal_detects_non_normalizer_chains() {
        // <(0 1)(2 3)> is subnormal in S_4 (inside V_4) but its iterated
        // normalizers stop at a Sylow 2-subgroup.
        let s4 = symmetric_group(4);
        let t = GroupTable::new(&s4);
        let x = t.index_of(&Permutation::parse_cycles("(0 1)(2 3)", Some(4)).unwrap()).unwrap();
        let h = t.closure(&[x]);
        assert!(is_subnormal(&t, &h));
        let y = t.index_of(&Permutation::parse_cycles("(0 1)", Some(4)).unwrap()).unwrap();
        assert!(!is_subnormal(&t, &t.closure(&[y])));
    }

    #[test]
    fn sn_cent_est_range() {
        assert!(verify_sn_cent_est(4, DEFAULT_SUBGROUP_BOUND).unwrap().pass);
        assert!(verify_sn_cent_est(5, 100).is_err());
        assert!(verify_sn_cent_est(3, DEFAULT_SUBGROUP_BOUND).is_err());
        assert!(verify_sn_cent_est(6, DEFAULT_SUBGROUP_BOUND).is_err());
    }
}
