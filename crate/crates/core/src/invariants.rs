//! Class-count invariants: the rank of the centre of the unit group, the
//! cut predicate, conjugating exponent sets and exponent comparisons.

use serde::Serialize;

use crate::arith::{euler_totient, gcd, prime_factors};
use crate::group::FiniteGroup;
use crate::snf::AbelianGroupType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub group: String,
    pub n_conj: usize,
    pub n_real: usize,
    pub n_rational: usize,
    /// `n_real - n_rational`, the rank of the centre of `V(ZG)`.
    pub rank_center: usize,
    /// No nontrivial central units: `rank_center = 0`.
    pub is_cut: bool,
    pub exp_g: u64,
    pub exp_g_ab: u64,
}

pub fn rank_center(group: &FiniteGroup) -> RankReport {
    let n_conj = group.conjugacy_classes().len();
    let n_real = group.real_classes().len();
    let n_rational = group.rational_classes().len();
    debug_assert!(n_rational <= n_real && n_real <= n_conj);
    let rank = n_real - n_rational;
    RankReport {
        group: group.label(),
        n_conj,
        n_real,
        n_rational,
        rank_center: rank,
        is_cut: rank == 0,
        exp_g: group.exponent() as u64,
        exp_g_ab: group.abelian_quotient().torsion_exponent(),
    }
}

/// `{1 <= l <= n : g ~ g^l}` for `n = |g|`, in increasing order.
pub fn l_set(group: &FiniteGroup, g: usize) -> Vec<u64> {
    let n = group.element_order(g);
    let classes = group.conjugacy_classes();
    let class = classes.block_of(g);
    let powers = group.powers(g);
    (1..=n)
        .filter(|&l| classes.block_of(powers[l % n]) == class)
        .map(|l| l as u64)
        .collect()
}

/// Whether a residue set mod `n` contains 1 and is closed under products.
pub fn is_unit_subgroup(n: u64, set: &[u64]) -> bool {
    let reduce = |x: u64| if n == 1 { 1 } else { x % n };
    let members: Vec<u64> = set.iter().map(|&x| reduce(x)).collect();
    members.contains(&reduce(1))
        && members.iter().all(|&x| gcd(x, n) == 1)
        && members
            .iter()
            .all(|&x| members.iter().all(|&y| members.contains(&reduce(x * y))))
}

/// Number of real classes inside the rational class of `g`:
/// `phi(n) / |L|` when `-1` lies in `L`, else `phi(n) / (2 |L|)`.
pub fn real_in_rational_count(group: &FiniteGroup, g: usize) -> usize {
    let n = group.element_order(g) as u64;
    let l = l_set(group, g);
    let minus_one = if n <= 2 { 1 } else { n - 1 };
    let phi = euler_totient(n) as usize;
    if l.contains(&minus_one) {
        phi / l.len()
    } else {
        phi / (2 * l.len())
    }
}

/// The same count read off the class partitions.
pub fn real_in_rational_count_direct(group: &FiniteGroup, g: usize) -> usize {
    let real = group.real_classes();
    let rational = group.rational_classes();
    let block = rational.block_of(g);
    let mut seen: Vec<usize> = rational.blocks[block].iter().map(|&x| real.block_of(x)).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// `sum over rational classes of (real classes inside - 1)`, which equals
/// `n_real - n_rational`.
pub fn telescoping_sum(group: &FiniteGroup) -> usize {
    group
        .rational_classes()
        .blocks
        .iter()
        .map(|b| real_in_rational_count(group, b[0]) - 1)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentComparison {
    /// Exponent of the torsion part of the abelian group compared.
    pub exp_torsion: u64,
    pub exp_g: u64,
    pub exp_g_ab: u64,
    /// Torsion exponent equals `exp(G/G')`.
    pub e1: bool,
    /// Torsion exponent divides `exp(G)`.
    pub e2: bool,
    /// Every prime dividing the torsion order divides `|G|`.
    pub p: bool,
}

pub fn exponent_compare(group: &FiniteGroup, a: &AbelianGroupType) -> ExponentComparison {
    let exp_torsion = a.torsion_exponent();
    let exp_g = group.exponent() as u64;
    let exp_g_ab = group.abelian_quotient().torsion_exponent();
    let order = group.order() as u64;
    ExponentComparison {
        exp_torsion,
        exp_g,
        exp_g_ab,
        e1: exp_torsion == exp_g_ab,
        e2: exp_g.is_multiple_of(exp_torsion),
        p: prime_factors(a.torsion_order())
            .iter()
            .all(|q| order.is_multiple_of(*q)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, catalog_names};

    #[test]
    fn rank_examples() {
        for name in ["T", "A4", "D12", "C5", "D10", "D14", "D22", "D26"] {
            let r = rank_center(&builtin(name).unwrap());
            let expected = match name {
                "C5" => 1,
                "D10" => 1,
                "D14" => 2,
                "D22" => 4,
                "D26" => 5,
                _ => 0,
            };
            assert_eq!(r.rank_center, expected, "{name}");
            assert_eq!(r.is_cut, expected == 0);
        }
    }

    #[test]
    fn l_set_examples() {
        let g = builtin("D16+").unwrap();
        assert_eq!(l_set(&g, g.generator("a").unwrap()), vec![1, 5]);
        let c = builtin("C7").unwrap();
        assert_eq!(l_set(&c, 3), vec![1]);
        assert_eq!(l_set(&c, 0), vec![1]);
    }

    #[test]
    fn counts_agree_on_catalog() {
        for name in catalog_names(16) {
            let g = builtin(&name).unwrap();
            for x in 0..g.order() {
                let n = g.element_order(x) as u64;
                assert!(is_unit_subgroup(n, &l_set(&g, x)), "{name} g{x}");
                assert_eq!(
                    real_in_rational_count(&g, x),
                    real_in_rational_count_direct(&g, x),
                    "{name} g{x}"
                );
            }
            assert_eq!(telescoping_sum(&g), rank_center(&g).rank_center, "{name}");
        }
    }

    #[test]
    fn exponent_examples() {
        let s3 = builtin("S3").unwrap();
        let c = exponent_compare(&s3, &AbelianGroupType::from_cyclic_orders(0, &[2, 2]));
        assert!(c.e1 && c.e2 && c.p);
        let t = builtin("T").unwrap();
        let c = exponent_compare(&t, &AbelianGroupType::from_cyclic_orders(0, &[4, 2]));
        assert_eq!((c.exp_torsion, c.exp_g_ab), (4, 4));
        assert!(c.e1);
        let d = builtin("D16+").unwrap();
        let c = exponent_compare(&d, &AbelianGroupType::from_cyclic_orders(1, &[4, 2, 2, 2, 2, 2]));
        assert!(c.e1 && c.e2 && c.p);
        let c = exponent_compare(&s3, &AbelianGroupType::from_cyclic_orders(0, &[5]));
        assert!(!c.e1 && !c.e2 && !c.p);
        assert!(!is_unit_subgroup(8, &[1, 3, 5]));
    }
}
