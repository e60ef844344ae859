//! Built-in permutation groups addressed by short names.

use crate::perm::{symmetric_group, Permutation, PermutationGroup, TaggedGenerator};

pub const BUILTIN_NAMES: &[&str] = &["s3", "s4", "s5", "c2", "c3", "c4", "c6", "v4", "d4", "q8"];

/// Display name used in reports (`"S4"` for `s4`, and so on).
pub fn display_name(name: &str) -> String {
    match name.to_ascii_lowercase().as_str() {
        "v4" | "c2xc2" => "C2xC2".to_string(),
        other => other.to_ascii_uppercase(),
    }
}

pub fn named_group(name: &str) -> Option<PermutationGroup> {
    let lower = name.to_ascii_lowercase();
    Some(match lower.as_str() {
        "s3" => symmetric_group(3),
        "s4" => symmetric_group(4),
        "s5" => symmetric_group(5),
        "c2" => cyclic_group(2),
        "c3" => cyclic_group(3),
        "c4" => cyclic_group(4),
        "c6" => cyclic_group(6),
        "v4" | "c2xc2" => klein_four_group(),
        "d4" => dihedral_group(4),
        "q8" => quaternion_group(),
        _ => return None,
    })
}

fn tagged(degree: usize, cycles: &[&[usize]]) -> TaggedGenerator {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    let permutation = Permutation::from_cycles(degree, &cycles).expect("built-in generator");
    TaggedGenerator {
        tag: permutation.to_string(),
        permutation,
    }
}

/// Cyclic group of order `k` acting regularly on `k` points.
pub fn cyclic_group(k: usize) -> PermutationGroup {
    let cycle: Vec<usize> = (0..k).collect();
    let gens = if k >= 2 { vec![tagged(k, &[&cycle])] } else { Vec::new() };
    PermutationGroup::generate_tagged(k, gens).expect("built-in group")
}

/// `⟨(0 1)(2 3), (0 2)(1 3)⟩`.
pub fn klein_four_group() -> PermutationGroup {
    PermutationGroup::generate_tagged(
        4,
        vec![tagged(4, &[&[0, 1], &[2, 3]]), tagged(4, &[&[0, 2], &[1, 3]])],
    )
    .expect("built-in group")
}

/// Symmetries of a `k`-gon, order `2k`.
pub fn dihedral_group(k: usize) -> PermutationGroup {
    let rotation: Vec<usize> = (0..k).collect();
    let reflection: Vec<Vec<usize>> = (1..k)
        .filter_map(|i| {
            let j = k - i;
            (i < j).then(|| vec![i, j])
        })
        .collect();
    let reflection =
        Permutation::from_cycles(k, &reflection).expect("built-in reflection is a bijection");
    PermutationGroup::generate_tagged(
        k,
        vec![
            tagged(k, &[&rotation]),
            TaggedGenerator {
                tag: reflection.to_string(),
                permutation: reflection,
            },
        ],
    )
    .expect("built-in group")
}

/// Quaternion group in its left regular action on `{±1, ±i, ±j, ±k}`.
///
/// Point `2b + s` is the unit with basis `b` (`1, i, j, k`) and sign `s`
/// (0 positive, 1 negative).
pub fn quaternion_group() -> PermutationGroup {
    // basis product table: (sign, basis) of e_a * e_b
    const TABLE: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let left = |basis: usize| {
        let images = (0..8)
            .map(|x| {
                let (b, s) = (x / 2, x % 2 == 1);
                let (neg, c) = TABLE[basis][b];
                2 * c + usize::from(neg ^ s)
            })
            .collect();
        let permutation = Permutation::from_images(images).expect("unit multiplication is a bijection");
        TaggedGenerator {
            tag: permutation.to_string(),
            permutation,
        }
    };
    PermutationGroup::generate_tagged(8, vec![left(1), left(2)]).expect("built-in group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let orders: Vec<usize> = BUILTIN_NAMES
            .iter()
            .map(|n| named_group(n).unwrap().order())
            .collect();
        assert_eq!(orders, vec![6, 24, 120, 2, 3, 4, 6, 4, 8, 8]);
        assert!(named_group("nope").is_none());
    }

    #[test]
    fn quaternion_has_a_single_involution() {
        let q8 = quaternion_group();
        assert!(!q8.is_abelian());
        let involutions = q8
            .elements()
            .iter()
            .filter(|p| !p.is_identity() && p.compose(p).is_identity())
            .count();
        assert_eq!(involutions, 1);
        assert!(q8.is_regular());
    }

    #[test]
    fn dihedral_is_nonabelian_of_order_eight() {
        let d4 = dihedral_group(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert!(klein_four_group().is_elementary_abelian_2());
        assert!(!cyclic_group(4).is_elementary_abelian_2());
    }
}
