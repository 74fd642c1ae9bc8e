//! Exhaustive identity sweeps over groups.
//!
//! Every sweep enumerates parameter tuples in a fixed order and reports the
//! number of identities checked together with every failure.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{euler_totient, gcd, mod_pow};
use crate::catalog::{builtin_arc, catalog_names};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::units::{
    conjugation_exponent, minimal_exponent, verify_bass_commutators, verify_bass_conjugation, verify_bass_rule,
    verify_bicyclic_commutators, BassRule, IdentityCheck,
};

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub group: String,
    pub g: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub check: IdentityCheck,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub checked: usize,
    pub failed: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    fn record(&mut self, group: &FiniteGroup, g: usize, h: Option<usize>, check: IdentityCheck) {
        self.checked += 1;
        if !check.holds {
            self.failed.push(SweepFailure {
                group: group.label(),
                g,
                h,
                check,
            });
        }
    }

    fn merge(&mut self, other: SweepReport) {
        self.checked += other.checked;
        self.failed.extend(other.failed);
    }
}

/// All catalog groups of order at most `max_order`.
pub fn catalog_groups(max_order: usize) -> Result<Vec<Arc<FiniteGroup>>> {
    catalog_names(max_order).iter().map(|n| builtin_arc(n)).collect()
}

/// Units modulo `n` in `1..n`, or `[1]` when `n = 1`.
fn coprime_residues(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&k| gcd(k, n) == 1).collect()
}

/// The exponents swept for a tuple: the minimal admissible one and
/// `phi(n)`. `phi(n)` is dropped when it violates the tuple's constraints.
fn exponents(n: u64, ks: &[u64], even: bool) -> Vec<u64> {
    let mut out = vec![minimal_exponent(n, ks, even).expect("coprime residues")];
    let phi = euler_totient(n);
    let ok = (!even || phi.is_multiple_of(2)) && ks.iter().all(|&k| mod_pow(k, phi, n) == 1 % n);
    if ok && !out.contains(&phi) {
        out.push(phi);
    }
    out
}

/// Every admissible parameter tuple of `rule` for an element of order `n`.
pub fn rule_tuples(rule: u8, n: u64) -> Result<Vec<BassRule>> {
    let ks = coprime_residues(n);
    let mut out = Vec::new();
    match rule {
        1 => {
            for &k in &ks {
                for m in exponents(n, &[k], false) {
                    out.push(BassRule::Congruent { k, l: k + n, m });
                }
            }
        }
        2 => {
            for &k in &ks {
                let ms = exponents(n, &[k], false);
                for &m in &ms {
                    for &m2 in &ms {
                        out.push(BassRule::AddExponents { k: k as i64, m, m2 });
                    }
                }
            }
        }
        3 => {
            for &k in &ks {
                for &l in &ks {
                    for m in exponents(n, &[k, l], false) {
                        out.push(BassRule::Compose {
                            k: k as i64,
                            l: l as i64,
                            m,
                        });
                    }
                }
            }
        }
        4 => {
            for m in exponents(n, &[1], false) {
                out.push(BassRule::One { m });
            }
        }
        5 => {
            let minus = if n == 1 { 1 } else { n - 1 };
            for m in exponents(n, &[minus], true) {
                out.push(BassRule::MinusOne { m });
            }
        }
        6 => {
            for &k in &ks {
                for m in exponents(n, &[k], false) {
                    for i in 1..=3 {
                        out.push(BassRule::Power { k: k as i64, m, i });
                    }
                }
            }
        }
        7 => {
            for &k in &ks {
                for m in exponents(n, &[k], false) {
                    out.push(BassRule::Inverse { k: k as i64, m });
                }
            }
        }
        8 => {
            for &k in &ks {
                for m in exponents(n, &[k], true) {
                    out.push(BassRule::Reflect { k: k as i64, m });
                }
            }
        }
        other => return Err(Error::Precondition(format!("no Bass rule {other}; rules are 1..8"))),
    }
    Ok(out)
}

/// Runs `per_group` on every group on its own thread and concatenates the
/// reports in input order.
fn over_groups(
    groups: &[Arc<FiniteGroup>],
    per_group: impl Fn(&Arc<FiniteGroup>) -> Result<SweepReport> + Sync,
) -> Result<SweepReport> {
    let results: Vec<Result<SweepReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = groups.iter().map(|g| s.spawn(|| per_group(g))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep thread")).collect()
    });
    let mut total = SweepReport::default();
    for r in results {
        total.merge(r?);
    }
    Ok(total)
}

/// Bass rule `rule` for every element of every group and every admissible tuple.
pub fn sweep_bass_rule(groups: &[Arc<FiniteGroup>], rule: u8) -> Result<SweepReport> {
    rule_tuples(rule, 1)?;
    over_groups(groups, |group| {
        let mut report = SweepReport::default();
        for g in 0..group.order() {
            for tuple in rule_tuples(rule, group.element_order(g) as u64)? {
                report.record(group, g, None, verify_bass_rule::<BigInt>(group, g, &tuple)?);
            }
        }
        Ok(report)
    })
}

/// The bicyclic commutator identity for every ordered pair of every group.
pub fn sweep_bicyclic_commutators(groups: &[Arc<FiniteGroup>]) -> Result<SweepReport> {
    over_groups(groups, |group| {
        let mut report = SweepReport::default();
        for g in 0..group.order() {
            for h in 0..group.order() {
                report.record(group, g, Some(h), verify_bicyclic_commutators::<BigInt>(group, g, h)?);
            }
        }
        Ok(report)
    })
}

/// Pairs `(g, h)` with `g^h = g^l`, together with `l`.
fn normalizing_pairs(group: &FiniteGroup) -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for g in 0..group.order() {
        for h in 0..group.order() {
            if let Some(l) = conjugation_exponent(group, g, h) {
                let n = group.element_order(g) as u64;
                out.push((g, h, if n == 1 { 1 } else { l }));
            }
        }
    }
    out
}

/// The Bass commutator identity for every `(g, h, l)` with `g^h = g^l`.
pub fn sweep_bass_commutators(groups: &[Arc<FiniteGroup>]) -> Result<SweepReport> {
    over_groups(groups, |group| {
        let mut report = SweepReport::default();
        for (g, h, l) in normalizing_pairs(group) {
            let n = group.element_order(g) as u64;
            for m in exponents(n, &[l], false) {
                report.record(
                    group,
                    g,
                    Some(h),
                    verify_bass_commutators::<BigInt>(group, g, l as i64, m, h)?,
                );
            }
        }
        Ok(report)
    })
}

/// Both Bass conjugation identities for every `(g, h, l)` with `g^h = g^l`
/// and every `k` coprime to `|g|`.
pub fn sweep_bass_conjugation(groups: &[Arc<FiniteGroup>]) -> Result<SweepReport> {
    over_groups(groups, |group| {
        let mut report = SweepReport::default();
        for (g, h, l) in normalizing_pairs(group) {
            let n = group.element_order(g) as u64;
            for k in coprime_residues(n) {
                for m in exponents(n, &[k, l], false) {
                    for check in verify_bass_conjugation::<BigInt>(group, g, k as i64, l as i64, m, h)? {
                        report.record(group, g, Some(h), check);
                    }
                }
            }
        }
        Ok(report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_respect_admissibility() {
        for rule in 1..=8 {
            for n in 1..=16u64 {
                for t in rule_tuples(rule, n).unwrap() {
                    t.check_admissible(n).unwrap();
                }
            }
        }
        assert!(rule_tuples(9, 4).is_err());
        // order 2 with phi = 1 keeps only the even exponent for the sign rules
        assert_eq!(rule_tuples(5, 2).unwrap(), vec![BassRule::MinusOne { m: 2 }]);
        assert_eq!(rule_tuples(3, 5).unwrap().len(), 4 * 2 + 12);
    }

    #[test]
    fn small_sweeps_pass() {
        let groups = vec![builtin_arc("S3").unwrap(), builtin_arc("C6").unwrap()];
        for rule in 1..=8 {
            let r = sweep_bass_rule(&groups, rule).unwrap();
            assert!(r.passed() && r.checked > 0, "rule {rule}");
        }
        let r = sweep_bicyclic_commutators(&groups).unwrap();
        assert_eq!(r.checked, 36 + 36);
        assert!(r.passed());
        assert!(sweep_bass_commutators(&groups).unwrap().passed());
        assert!(sweep_bass_conjugation(&groups).unwrap().passed());
    }
}
