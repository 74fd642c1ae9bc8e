//! Presentations of normalized unit groups `V(ZG) = K x| G` for a few small
//! groups, with their stated abelianizations, ring-level checks of the
//! conjugation relations, and additive characters on the presentations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::catalog::builtin_arc;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::parse::parse_element;
use crate::presentation::{Presentation, SemidirectData, Word};
use crate::ring::Unit;
use crate::snf::{abelianization, AbelianGroupType};
use crate::units::{bicyclic_unit, BicyclicSpec, IdentityCheck};

const DATA: &[(&str, &str)] = &[
    ("V(ZS3)", include_str!("../data/v_zs3.json")),
    ("V(ZD8)", include_str!("../data/v_zd8.json")),
    ("V(ZT)", include_str!("../data/v_zt.json")),
    ("V(ZP)", include_str!("../data/v_zp.json")),
    ("V(ZD16+)", include_str!("../data/v_zd16plus.json")),
];

/// The unit of `ZP` (`P = <a, b | a^4, b^4, a^b = a^-1>`) listed as the
/// ninth free generator of the complement.
pub const V9: &str = "1 + (2 - 20a - 9b + 18ab)(1 - a^2)(1 + b^2)";

#[derive(Deserialize)]
struct EntryHeader {
    id: String,
    group: String,
    origin: String,
    expected: AbelianGroupType,
}

/// One embedded unit-group presentation.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    /// Catalog name of the finite group `G`.
    pub group: String,
    pub origin: String,
    /// The abelianization stated for this presentation.
    pub expected: AbelianGroupType,
    pub data: SemidirectData,
}

impl CatalogEntry {
    pub fn presentation(&self) -> Presentation {
        self.data.assemble().with_origin(self.id.clone())
    }

    pub fn abelianization(&self) -> Result<AbelianGroupType> {
        abelianization(&self.presentation())
    }
}

fn load(text: &str) -> Result<CatalogEntry> {
    let header: EntryHeader = serde_json::from_str(text)?;
    Ok(CatalogEntry {
        id: header.id,
        group: header.group,
        origin: header.origin,
        // stored factors need not form a divisibility chain
        expected: AbelianGroupType::from_cyclic_orders(header.expected.free_rank, &header.expected.invariant_factors),
        data: SemidirectData::from_json(text)?,
    })
}

pub fn catalog_ids() -> Vec<&'static str> {
    DATA.iter().map(|(id, _)| *id).collect()
}

/// Looks up an entry by id (`V(ZS3)`) or by group name (`S3`).
pub fn catalog_entry(key: &str) -> Result<CatalogEntry> {
    let text = DATA
        .iter()
        .find(|(id, _)| *id == key || id.strip_prefix("V(Z").and_then(|s| s.strip_suffix(')')) == Some(key))
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::UnknownEntry(key.to_string()))?;
    load(text)
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    DATA.iter()
        .map(|(_, t)| load(t).expect("embedded data is valid"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub id: String,
    pub computed: AbelianGroupType,
    pub expected: AbelianGroupType,
    pub matches: bool,
}

/// Abelianizes every embedded entry and compares with the stated value.
pub fn verify_catalog() -> Result<Vec<EntryCheck>> {
    catalog_entries()
        .into_iter()
        .map(|e| {
            let computed = e.abelianization()?;
            Ok(EntryCheck {
                matches: computed == e.expected,
                id: e.id,
                computed,
                expected: e.expected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RingPresentationReport {
    pub id: String,
    pub checks: Vec<IdentityCheck>,
}

impl RingPresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Fiber generators realized as ring elements: `u_i = b(a, a^i b)`.
fn bicyclic_fiber(group: &Arc<FiniteGroup>, count: usize) -> Result<Vec<Unit<BigInt>>> {
    let a = group
        .generator("a")
        .ok_or_else(|| Error::UnknownGenerator("a".into()))?;
    let b = group
        .generator("b")
        .ok_or_else(|| Error::UnknownGenerator("b".into()))?;
    (0..count)
        .map(|i| {
            let h = group.mul(group.pow(a, i as i64), b);
            Ok(bicyclic_unit(group, &BicyclicSpec::new(group, a, h)?))
        })
        .collect()
}

/// Checks every conjugation relation `x^g = w` of the data as an equality
/// in `ZG`, with fiber generators assigned the given units.
pub fn verify_action_in_ring(
    group: &Arc<FiniteGroup>,
    data: &SemidirectData,
    fiber: &[Unit<BigInt>],
) -> Result<Vec<IdentityCheck>> {
    if fiber.len() != data.fiber_generators().len() {
        return Err(Error::Precondition("one unit per fiber generator".into()));
    }
    let base = data.base();
    let mut checks = Vec::new();
    for (x, name) in data.fiber_generators().iter().enumerate() {
        for (gi, gname) in base.generators().iter().enumerate() {
            let g = group
                .generator(gname)
                .ok_or_else(|| Error::UnknownGenerator(gname.clone()))?;
            let lhs = fiber[x].conjugate(&Unit::group_element(group, g));
            let w = data.action(x, gi);
            let rhs = w.evaluate(Unit::one(group), |f, e| fiber[f].pow(e), |p, q| p.mul(q));
            let words = Presentation::new(data.fiber_generators().to_vec(), vec![w.clone()])?;
            checks.push(IdentityCheck::compare(
                format!("{name}^{gname} = {}", words.format_word(w)),
                lhs.value(),
                rhs.value(),
            ));
        }
    }
    Ok(checks)
}

/// Ring-level check of the entries whose fiber generators are explicit
/// bicyclic units (`V(ZS3)` and `V(ZD8)`).
pub fn verify_ring_presentation(key: &str) -> Result<RingPresentationReport> {
    let entry = catalog_entry(key)?;
    if entry.group != "S3" && entry.group != "D8" {
        return Err(Error::UnknownEntry(format!(
            "{}: fiber generators are not explicit ring elements",
            entry.id
        )));
    }
    let group = builtin_arc(&entry.group)?;
    let fiber = bicyclic_fiber(&group, entry.data.fiber_generators().len())?;
    Ok(RingPresentationReport {
        checks: verify_action_in_ring(&group, &entry.data, &fiber)?,
        id: entry.id,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct V9Report {
    pub element: String,
    pub augmentation: String,
    pub is_unit: bool,
    pub inverse: Option<String>,
    pub inverse_verified: bool,
}

/// Parses [`V9`] in `ZP`, tests it for invertibility and checks the computed
/// inverse on both sides.
pub fn verify_v9() -> Result<V9Report> {
    let group = builtin_arc("P")?;
    let v = parse_element::<BigInt>(&group, V9)?;
    let is_unit = v.is_unit();
    let (inverse, verified) = if is_unit {
        let inv = v.inverse()?;
        let ok = Unit::with_inverse(v.clone(), inv.clone()).is_ok();
        (Some(inv.display()), ok)
    } else {
        (None, false)
    };
    Ok(V9Report {
        element: v.display(),
        augmentation: v.augment().to_string(),
        is_unit,
        inverse,
        inverse_verified: verified,
    })
}

/// An additive character `generator -> Z`.
pub type WeightVector = BTreeMap<String, i64>;

/// The character on the `V(ZD16+)` presentation: `+1` on `S0, S2, R1, R3`,
/// `-1` on `S1, S3, R0, R2`, `0` on every other generator.
pub fn d16_plus_weights() -> WeightVector {
    let entry = catalog_entry("V(ZD16+)").expect("embedded entry");
    let mut w: WeightVector = entry
        .presentation()
        .generators()
        .iter()
        .map(|g| (g.clone(), 0))
        .collect();
    for g in ["S0", "S2", "R1", "R3"] {
        w.insert(g.into(), 1);
    }
    for g in ["S1", "S3", "R0", "R2"] {
        w.insert(g.into(), -1);
    }
    w
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaReport {
    /// Every relator has weighted exponent sum zero.
    pub homomorphism: bool,
    /// Some generator has nonzero weight, so the image is infinite cyclic.
    pub nontrivial: bool,
    pub relators: usize,
    /// `(relator index, relator, weighted sum)` for every violated relator.
    pub violations: Vec<(usize, String, i64)>,
}

/// Whether `w` extends to a homomorphism from the presented group to `Z`.
pub fn kappa_verify(p: &Presentation, w: &WeightVector) -> Result<KappaReport> {
    let weights: Vec<i64> = p
        .generators()
        .iter()
        .map(|g| w.get(g).copied().ok_or_else(|| Error::UncoveredGenerator(g.clone())))
        .collect::<Result<_>>()?;
    if let Some(extra) = w.keys().find(|k| p.generator_index(k).is_none()) {
        return Err(Error::UnknownGenerator(extra.clone()));
    }
    let weigh = |r: &Word| -> i64 { r.pairs().iter().map(|&(g, e)| weights[g] * e).sum() };
    let violations: Vec<(usize, String, i64)> = p
        .relators()
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let s = weigh(r);
            (s != 0).then(|| (i, p.format_word(r), s))
        })
        .collect();
    Ok(KappaReport {
        homomorphism: violations.is_empty(),
        nontrivial: weights.iter().any(|&x| x != 0),
        relators: p.relators().len(),
        violations,
    })
}

/// Reads a weight vector from JSON (`{"S0": 1, "R0": -1, ...}`).
pub fn weights_from_json(text: &str) -> Result<WeightVector> {
    Ok(serde_json::from_str(text)?)
}
