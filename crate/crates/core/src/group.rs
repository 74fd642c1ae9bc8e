//! Finite groups as validated Cayley tables, and their class data.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};
use crate::snf::AbelianGroupType;

/// Above this order associativity is not re-checked on construction.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// A finite group on `0..order`, index 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: Option<String>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    generators: Vec<(String, usize)>,
    presentation: Option<Presentation>,
}

impl FiniteGroup {
    /// Validates a Cayley table: identity at index 0, Latin square,
    /// inverses, and associativity (for orders up to
    /// [`ASSOCIATIVITY_CHECK_LIMIT`]).
    pub fn from_table(name: Option<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if n == 0 {
            return bad("empty table".into());
        }
        if let Some(i) = table.iter().position(|row| row.len() != n) {
            return bad(format!("row {i} has wrong length"));
        }
        for (i, row) in table.iter().enumerate() {
            if row[0] != i || table[0][i] != i {
                return bad(format!("index 0 is not the identity at {i}"));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return bad(format!("row {i} is not a permutation"));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return bad(format!("column {j} is not a permutation"));
                }
                seen[row[j]] = true;
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return bad(format!("not associative at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        }
        let inverses: Vec<usize> = (0..n)
            .map(|g| table[g].iter().position(|&x| x == 0).expect("latin square"))
            .collect();
        let orders = (0..n)
            .map(|g| {
                let mut k = 1;
                let mut x = g;
                while x != 0 {
                    x = table[x][g];
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup {
            name,
            table,
            inverses,
            orders,
            generators: Vec::new(),
            presentation: None,
        })
    }

    /// Attaches generator names (used by the element parser).
    pub fn with_generators(mut self, generators: Vec<(String, usize)>) -> Result<Self> {
        if let Some((name, _)) = generators.iter().find(|(_, g)| *g >= self.order()) {
            return Err(Error::InvalidGroup(format!("generator {name} out of range")));
        }
        self.generators = generators;
        Ok(self)
    }

    /// Attaches a defining presentation on the named generators; every
    /// relator must evaluate to the identity.
    pub fn with_presentation(mut self, p: Presentation) -> Result<Self> {
        let mut images = Vec::new();
        for name in p.generators() {
            images.push(
                self.generator(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?,
            );
        }
        for r in p.relators() {
            if self.evaluate(r, &images) != 0 {
                return Err(Error::InvalidGroup(format!(
                    "relator {} does not hold",
                    p.format_word(r)
                )));
            }
        }
        self.presentation = Some(p);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("group of order {}", self.order()))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().find(|(n, _)| n == name).map(|&(_, g)| g)
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let n = self.orders[a] as i64;
        let e = k.rem_euclid(n);
        let mut x = 0;
        for _ in 0..e {
            x = self.table[x][a];
        }
        x
    }

    /// `h^-1 g h`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `g^-1 h^-1 g h`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.inv(g), self.conjugate(g, h))
    }

    /// Evaluates a word with generator `i` sent to `images[i]`.
    pub fn evaluate(&self, w: &Word, images: &[usize]) -> usize {
        w.evaluate(0, |g, e| self.pow(images[g], e), |a, b| self.mul(*a, *b))
    }

    /// The cyclic subgroup `<g>` as the list `1, g, g^2, ...`.
    pub fn powers(&self, g: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = g;
        while x != 0 {
            out.push(x);
            x = self.mul(x, g);
        }
        out
    }

    /// Smallest subgroup containing `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_normalized_by(&self, subgroup: &[usize], g: usize) -> bool {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        subgroup.iter().all(|&h| set.contains(&self.conjugate(h, g)))
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let comms: BTreeSet<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// Invariant factors of `G/G'`.
    ///
    /// For each prime `p`, the number of cosets killed by `p^k` is
    /// `p^(sum_i min(k, e_i))`, which recovers the cyclic `p`-parts.
    pub fn abelian_quotient(&self) -> AbelianGroupType {
        let derived = self.derived_subgroup();
        let mut in_derived = vec![false; self.order()];
        for &d in &derived {
            in_derived[d] = true;
        }
        let index = self.order() / derived.len();
        let mut orders = Vec::new();
        for p in prime_factors(index as u64) {
            let p = p as usize;
            let log_count = |k: u32| -> u32 {
                let e = p.pow(k) as i64;
                let hits = (0..self.order()).filter(|&g| in_derived[self.pow(g, e)]).count();
                let cosets = hits / derived.len();
                cosets.ilog(p)
            };
            let mut k = 1;
            let mut prev = 0;
            let mut at_least: Vec<u32> = Vec::new();
            loop {
                let cur = log_count(k);
                if cur == prev {
                    break;
                }
                at_least.push(cur - prev);
                prev = cur;
                k += 1;
            }
            // at_least[k-1] = number of cyclic factors of order >= p^k
            for (k, &count) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..count - next {
                    orders.push((p as u64).pow(k as u32 + 1));
                }
            }
        }
        AbelianGroupType::from_cyclic_orders(0, &orders)
    }

    pub fn conjugacy_classes(&self) -> ClassPartition {
        self.partition(ClassKind::Conjugacy, |g| {
            (0..self.order()).map(|h| self.conjugate(g, h)).collect()
        })
    }

    /// Blocks `g^G ∪ (g^-1)^G`.
    pub fn real_classes(&self) -> ClassPartition {
        self.partition(ClassKind::Real, |g| {
            (0..self.order())
                .flat_map(|h| [self.conjugate(g, h), self.conjugate(self.inv(g), h)])
                .collect()
        })
    }

    /// Blocks `∪_{gcd(i,|g|)=1} (g^i)^G`.
    pub fn rational_classes(&self) -> ClassPartition {
        self.partition(ClassKind::Rational, |g| {
            let n = self.element_order(g);
            (1..=n)
                .filter(|i| i.gcd(&n) == 1)
                .flat_map(|i| {
                    let gi = self.pow(g, i as i64);
                    (0..self.order()).map(move |h| self.conjugate(gi, h))
                })
                .collect()
        })
    }

    fn partition(&self, kind: ClassKind, orbit: impl Fn(usize) -> BTreeSet<usize>) -> ClassPartition {
        let n = self.order();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for g in 0..n {
            if block_of[g] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = orbit(g).into_iter().collect();
            for &m in &members {
                block_of[m] = blocks.len();
            }
            blocks.push(members);
        }
        ClassPartition { kind, blocks, block_of }
    }

    /// Reads the JSON group format `{"name", "order", "table"}`, optionally
    /// with `"generators": {"a": 1, ...}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GroupJson = serde_json::from_str(text)?;
        if raw.order != raw.table.len() {
            return Err(Error::InvalidGroup(format!(
                "order {} but table has {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        let g = FiniteGroup::from_table(raw.name, raw.table)?;
        let mut gens: Vec<(String, usize)> = raw.generators.unwrap_or_default().into_iter().collect();
        gens.sort_by_key(|(_, i)| *i);
        g.with_generators(gens)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "order": self.order(),
            "table": self.table,
            "generators": self.generators.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
        })
    }
}

#[derive(Deserialize)]
struct GroupJson {
    #[serde(default)]
    name: Option<String>,
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    generators: Option<std::collections::BTreeMap<String, usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Conjugacy,
    Real,
    Rational,
}

/// A partition of the group; blocks ordered by their least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub kind: ClassKind,
    pub blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, g: usize) -> usize {
        self.block_of[g]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Every block of `self` lies inside one block of `coarser`.
    pub fn refines(&self, coarser: &ClassPartition) -> bool {
        self.blocks.iter().all(|b| {
            let target = coarser.block_of(b[0]);
            b.iter().all(|&g| coarser.block_of(g) == target)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_table() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    #[test]
    fn table_validation_catches_defects() {
        assert!(FiniteGroup::from_table(None, c2_table()).is_ok());
        assert!(FiniteGroup::from_table(None, vec![]).is_err());
        assert!(FiniteGroup::from_table(None, vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(None, vec![vec![1, 0], vec![0, 1]]).is_err());
        // Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(None, loop5).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn json_round_trip_and_order_check() {
        let g = FiniteGroup::from_table(Some("C2".into()), c2_table())
            .unwrap()
            .with_generators(vec![("a".into(), 1)])
            .unwrap();
        let back = FiniteGroup::from_json(&g.to_json().to_string()).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"name": "x", "order": 3, "table": [[0,1],[1,0]]}"#;
        assert!(FiniteGroup::from_json(bad).is_err());
    }
}
