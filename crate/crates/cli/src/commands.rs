use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use unitforge::dihedral::{closure_trials, decomposition_trials, residue_u1_group, witness_trials};
use unitforge::invariants::{
    is_unit_subgroup, l_set, rank_center, real_in_rational_count, real_in_rational_count_direct, telescoping_sum,
};
use unitforge::presentation::presentation_from_json;
use unitforge::sweep::{
    catalog_groups, sweep_bass_commutators, sweep_bass_conjugation, sweep_bass_rule, sweep_bicyclic_commutators,
    SweepReport,
};
use unitforge::unit_groups::{catalog_entry, d16_plus_weights, kappa_verify, verify_catalog, weights_from_json};
use unitforge::units::{bass, bicyclic_power, BassSpec, BicyclicSpec};
use unitforge::{
    abelianization, builtin, builtin_arc, catalog_names, parse_group_element, ElementNames, FiniteGroup,
    GroupRingElement, Int, Presentation, RealCycloRing,
};

use crate::report::Outcome;

/// A catalog name, or a path to a group table in JSON.
pub fn load_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let group = FiniteGroup::from_json(&text).with_context(|| format!("parsing {spec}"))?;
        return Ok(Arc::new(group));
    }
    Ok(builtin_arc(spec)?)
}

pub fn groups_list(max_order: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for name in catalog_names(max_order) {
        let g = builtin(&name)?;
        let r = rank_center(&g);
        out.line(format!(
            "{name:<8} order {:>2}  {}  rank {}",
            g.order(),
            if g.is_abelian() { "abelian    " } else { "non-abelian" },
            r.rank_center
        ));
        rows.push(json!({
            "name": name,
            "order": g.order(),
            "abelian": g.is_abelian(),
            "rank_center": r.rank_center,
        }));
    }
    out.set("groups", rows);
    Ok(out)
}

pub fn group_info(spec: &str) -> Result<Outcome> {
    let g = load_group(spec)?;
    let names = ElementNames::new(&g);
    let r = rank_center(&g);
    let mut out = Outcome::default();
    let generators: serde_json::Map<String, Value> = g
        .generators()
        .iter()
        .map(|(n, i)| (n.clone(), json!(names.name(*i))))
        .collect();
    let ab = g.abelian_quotient();
    out.set("group", r.group.clone());
    out.set("order", g.order());
    out.set("abelian", g.is_abelian());
    out.set("exponent", r.exp_g);
    out.set("generators", Value::Object(generators));
    out.set("center_order", g.center().len());
    out.set("derived_order", g.derived_subgroup().len());
    out.set("abelian_quotient", ab.to_string());
    out.set("exp_g_ab", r.exp_g_ab);
    out.set("n_conj", r.n_conj);
    out.set("n_real", r.n_real);
    out.set("n_rational", r.n_rational);
    out.set("rank_center", r.rank_center);
    out.set("is_cut", r.is_cut);
    out.line(format!("{} of order {}, exponent {}", r.group, g.order(), r.exp_g));
    out.line(format!("G/G' = {ab}"));
    out.line(format!(
        "classes: {} conjugacy, {} real, {} rational",
        r.n_conj, r.n_real, r.n_rational
    ));
    out.line(format!("rank of the centre {}, cut {}", r.rank_center, r.is_cut));
    Ok(out)
}

fn unit_check(out: &mut Outcome, value: &GroupRingElement, inverse: &GroupRingElement) {
    let holds = (value * inverse).is_one() && (inverse * value).is_one();
    out.check(holds, || json!({ "check": "two-sided inverse" }));
}

pub fn units_bicyclic(group: &str, g: &str, h: &str, power: i64) -> Result<Outcome> {
    let group = load_group(group)?;
    let (gi, hi) = (parse_group_element(&group, g)?, parse_group_element(&group, h)?);
    let spec = BicyclicSpec::new(&group, gi, hi)?;
    let value: GroupRingElement = bicyclic_power(&group, &spec, power);
    let inverse: GroupRingElement = bicyclic_power(&group, &spec, -power);
    let mut out = Outcome::default();
    unit_check(&mut out, &value, &inverse);
    out.set("unit", value.display());
    out.set("inverse", inverse.display());
    out.set("trivial", value.is_one());
    out.line(format!("b({g}, {h})^{power} = {}", value.display()));
    out.line(format!("inverse = {}", inverse.display()));
    Ok(out)
}

pub fn units_bass(group: &str, g: &str, k: i64, m: Option<u64>) -> Result<Outcome> {
    let group = load_group(group)?;
    let gi = parse_group_element(&group, g)?;
    let spec = BassSpec::new(&group, gi, k, m)?;
    let u = bass::<Int>(&group, &spec)?;
    let mut out = Outcome::default();
    unit_check(&mut out, u.value(), u.inverse());
    out.set("k", spec.k);
    out.set("m", spec.m);
    out.set("n", spec.n);
    out.set("unit", u.value().display());
    out.set("inverse", u.inverse().display());
    out.line(format!("u_{{{},{}}}({g}) = {}", spec.k, spec.m, u.value().display()));
    out.line(format!("inverse = {}", u.inverse().display()));
    Ok(out)
}

/// Which identity family `verify` sweeps.
#[derive(Clone, Copy, Debug)]
pub enum Family {
    BassRule(u8),
    BicyclicCommutators,
    BassCommutators,
    BassConjugation,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::BassRule(r) => write!(f, "Bass rule {r}"),
            Family::BicyclicCommutators => f.write_str("bicyclic commutator products"),
            Family::BassCommutators => f.write_str("Bass unit commutators"),
            Family::BassConjugation => f.write_str("Bass unit conjugation"),
        }
    }
}

pub fn verify(family: Family, group: Option<&str>, max_order: usize) -> Result<Outcome> {
    let groups = match group {
        Some(spec) => vec![load_group(spec)?],
        None => catalog_groups(max_order)?,
    };
    let report = match family {
        Family::BassRule(rule) => sweep_bass_rule(&groups, rule)?,
        Family::BicyclicCommutators => sweep_bicyclic_commutators(&groups)?,
        Family::BassCommutators => sweep_bass_commutators(&groups)?,
        Family::BassConjugation => sweep_bass_conjugation(&groups)?,
    };
    let mut out = sweep_outcome(&groups, report);
    let labels: Vec<String> = groups.iter().map(|g| g.label()).collect();
    out.set("groups", labels.clone());
    out.set("family", family.to_string());
    out.line(format!("{family} over {} groups: {}", groups.len(), labels.join(" ")));
    Ok(out)
}

fn sweep_outcome(groups: &[Arc<FiniteGroup>], report: SweepReport) -> Outcome {
    let names: HashMap<String, ElementNames> = groups.iter().map(|g| (g.label(), ElementNames::new(g))).collect();
    let failures = report
        .failed
        .iter()
        .map(|f| {
            let mut v = serde_json::to_value(f).expect("failures serialize");
            if let (Some(n), Value::Object(map)) = (names.get(&f.group), &mut v) {
                map.insert("g_name".into(), json!(n.name(f.g)));
                if let Some(h) = f.h {
                    map.insert("h_name".into(), json!(n.name(h)));
                }
            }
            v
        })
        .collect();
    Outcome {
        checked: report.checked,
        failures,
        ..Outcome::default()
    }
}

fn read_presentation(source: &str) -> Result<(Presentation, Option<unitforge::AbelianGroupType>)> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        return Ok((
            presentation_from_json(&text).with_context(|| format!("parsing {source}"))?,
            None,
        ));
    }
    match catalog_entry(source) {
        Ok(e) => Ok((e.presentation(), Some(e.expected))),
        Err(_) if source.ends_with(".json") || source.contains('/') => bail!("cannot read {source}: no such file"),
        Err(e) => Err(e.into()),
    }
}

pub fn abelianize(source: &str) -> Result<Outcome> {
    let (p, expected) = read_presentation(source)?;
    let a = abelianization(&p)?;
    let mut out = Outcome::default();
    out.set("generators", p.generators().len());
    out.set("relators", p.relators().len());
    out.set("abelianization", a.to_string());
    out.set("free_rank", a.free_rank);
    out.set("invariant_factors", a.invariant_factors.clone());
    out.set("torsion_exponent", a.torsion_exponent());
    out.line(format!(
        "{} generators, {} relators: {a}",
        p.generators().len(),
        p.relators().len()
    ));
    if let Some(e) = expected {
        out.set("stated", e.to_string());
        out.line(format!("stated value {e}"));
    }
    Ok(out)
}

pub fn catalog_verify() -> Result<Outcome> {
    let mut out = Outcome::default();
    let checks = verify_catalog()?;
    for c in &checks {
        out.check(c.matches, || serde_json::to_value(c).expect("checks serialize"));
        let verdict = if c.matches { "matches" } else { "DIFFERS from" };
        out.line(format!("{:<10} {} {verdict} {}", c.id, c.computed, c.expected));
    }
    out.set("entries", serde_json::to_value(&checks)?);
    Ok(out)
}

pub fn kappa(id: &str, weights: Option<&str>) -> Result<Outcome> {
    let entry = catalog_entry(id)?;
    let w = match weights {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            weights_from_json(&text)?
        }
        None if entry.group == "D16+" => d16_plus_weights(),
        None => bail!("no default weights for {}; pass --weights", entry.id),
    };
    let r = kappa_verify(&entry.presentation(), &w)?;
    let mut out = Outcome::default();
    for (index, relator, sum) in &r.violations {
        out.failures
            .push(json!({ "relator": index, "word": relator, "weight": sum }));
    }
    out.checked = r.relators;
    out.check(r.nontrivial, || json!({ "check": "nontrivial image" }));
    out.set("homomorphism", r.homomorphism);
    out.set("nontrivial", r.nontrivial);
    out.set("relators", r.relators);
    out.line(format!(
        "{}: {} relators, homomorphism {}, nontrivial {}",
        entry.id, r.relators, r.homomorphism, r.nontrivial
    ));
    if r.homomorphism && r.nontrivial {
        out.line("the abelianization is infinite");
    }
    Ok(out)
}

pub fn invariants(spec: &str) -> Result<Outcome> {
    let g = load_group(spec)?;
    let names = ElementNames::new(&g);
    let r = rank_center(&g);
    let mut out = Outcome::default();
    let mut classes = Vec::new();
    for block in &g.conjugacy_classes().blocks {
        let x = block[0];
        let n = g.element_order(x) as u64;
        let l = l_set(&g, x);
        let formula = real_in_rational_count(&g, x);
        let direct = real_in_rational_count_direct(&g, x);
        out.check(
            is_unit_subgroup(n, &l),
            || json!({ "check": "L-set subgroup", "element": names.name(x) }),
        );
        out.check(formula == direct, || {
            json!({ "check": "real classes in rational class", "element": names.name(x), "formula": formula, "direct": direct })
        });
        out.line(format!(
            "{:<10} order {n:>2}  L = {l:?}  real classes in rational class {formula}",
            names.name(x)
        ));
        classes.push(json!({
            "representative": names.name(x),
            "order": n,
            "size": block.len(),
            "l_set": l,
            "real_in_rational": formula,
        }));
    }
    let tele = telescoping_sum(&g);
    out.check(
        tele == r.rank_center,
        || json!({ "check": "telescoping sum", "sum": tele }),
    );
    out.line(format!(
        "{}: {} real, {} rational classes, rank of the centre {}",
        r.group, r.n_real, r.n_rational, r.rank_center
    ));
    out.set("classes", classes);
    out.set("rank", serde_json::to_value(&r)?);
    Ok(out)
}

pub fn dihedral_verify(p: u64, trials: u64, seed: u64) -> Result<Outcome> {
    let ring = RealCycloRing::<Int>::new(p)?;
    let mut out = Outcome::default();
    let witness = witness_trials(&ring, trials, seed)?;
    let decomposition = decomposition_trials(&ring, trials, seed);
    let closure = closure_trials(&ring, trials, seed);
    for (class, summary) in [
        ("witness", &witness.summary),
        ("decomposition", &decomposition),
        ("closure", &closure),
    ] {
        out.checked += summary.trials;
        out.failures
            .extend(summary.failures.iter().map(|t| json!({ "class": class, "trial": t })));
        out.line(format!("{class:<14} {}/{} trials pass", summary.passed, summary.trials));
    }
    let residue = residue_u1_group(p)?;
    out.check(
        residue.passed(),
        || json!({ "class": "residue_group", "report": residue }),
    );
    let psi: Vec<String> = ring.psi().iter().map(|c| c.to_string()).collect();
    out.line(format!("psi coefficients (constant first) {}", psi.join(" ")));
    out.line(format!(
        "residue group of order {}, cyclic {}",
        residue.order, residue.cyclic
    ));
    let e: Vec<String> = witness.observed_e.iter().map(|(k, v)| format!("{k} x{v}")).collect();
    out.line(format!("observed e by branch: {}", e.join(", ")));
    out.set("p", p);
    out.set("trials", trials);
    out.set("psi", psi);
    out.set("witness", serde_json::to_value(&witness)?);
    out.set("decomposition", serde_json::to_value(&decomposition)?);
    out.set("closure", serde_json::to_value(&closure)?);
    out.set("residue_group", serde_json::to_value(&residue)?);
    Ok(out)
}
