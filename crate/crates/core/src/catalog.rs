//! Built-in groups.
//!
//! Every catalog group is built by closing its generators inside a concrete
//! model (residues, metacyclic normal forms, permutations, direct products)
//! in breadth-first order, so indices are reproducible. Each carries a
//! defining presentation whose relators are checked against the table.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::presentation::Presentation;

/// Largest order accepted by the parametrized families.
pub const MAX_ORDER: usize = 64;

/// Named groups outside the parametrized families, with their aliases.
const NAMED: &[(&str, &[&str])] = &[
    ("S3", &["[6,1]"]),
    ("Q8", &["[8,4]"]),
    ("Q16", &["[16,9]"]),
    ("A4", &["[12,3]"]),
    ("T", &["[12,1]"]),
    ("H", &["[16,3]"]),
    ("P", &["[16,4]"]),
    ("D16+", &["[16,6]"]),
    ("D16-", &["[16,8]"]),
    ("Q8xC2", &["[16,12]"]),
    ("D8xC2", &["[16,11]"]),
    ("D", &["[16,13]"]),
];

/// Builds a catalog group by name (`C12`, `D10`, `Dic3`, `S3`, `D16+`,
/// `[16,6]`, ...).
pub fn builtin(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let canonical = NAMED
        .iter()
        .find(|(n, aliases)| *n == name || aliases.contains(&name))
        .map(|(n, _)| *n)
        .unwrap_or(if name == "[16,7]" { "D16" } else { name });
    let group = match canonical {
        "S3" => metacyclic("S3", 3, 2, 0, 2),
        "Q8" => dicyclic(2).map(|g| rename(g, "Q8")),
        "Q16" => dicyclic(4).map(|g| rename(g, "Q16")),
        "T" => dicyclic(3).map(|g| rename(g, "T")),
        "A4" => alternating4(),
        "H" => group_16_3(),
        "P" => metacyclic("P", 4, 4, 0, 3),
        "D16+" => metacyclic("D16+", 8, 2, 0, 5),
        "D16-" => metacyclic("D16-", 8, 2, 0, 3),
        "Q8xC2" => direct_product("Q8xC2", &builtin("Q8")?, &cyclic_named(2, &["c"])?),
        "D8xC2" => direct_product("D8xC2", &builtin("D8")?, &cyclic_named(2, &["c"])?),
        "D" => group_16_13(),
        other => family(other).ok_or_else(unknown)?,
    }?;
    Ok(group)
}

/// Shared handle, the form ring elements hold.
pub fn builtin_arc(name: &str) -> Result<Arc<FiniteGroup>> {
    builtin(name).map(Arc::new)
}

fn family(name: &str) -> Option<Result<FiniteGroup>> {
    let parse = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|s| s.parse().ok())
    };
    if let Some(n) = parse("Dic") {
        return (n >= 1 && 4 * n <= MAX_ORDER).then(|| dicyclic(n));
    }
    if let Some(n) = parse("C") {
        return (1..=MAX_ORDER)
            .contains(&n)
            .then(|| cyclic_named(n, &["a"]).map(|g| rename(g, name)));
    }
    if let Some(order) = parse("D") {
        if order < 2 || order % 2 != 0 || order > MAX_ORDER {
            return None;
        }
        let n = order / 2;
        return Some(metacyclic(name, n, 2, 0, (n as i64 - 1).max(0)));
    }
    None
}

/// Distinct catalog groups of order at most `max_order`, one name per
/// isomorphism type (`S3` rather than `D6`, `T` rather than `Dic3`).
pub fn catalog_names(max_order: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_order.min(MAX_ORDER) {
        out.push(format!("C{n}"));
    }
    for order in (4..=max_order.min(MAX_ORDER)).step_by(2) {
        out.push(if order == 6 { "S3".into() } else { format!("D{order}") });
    }
    for n in 2..=max_order.min(MAX_ORDER) / 4 {
        out.push(match n {
            2 => "Q8".into(),
            3 => "T".into(),
            4 => "Q16".into(),
            _ => format!("Dic{n}"),
        });
    }
    if max_order >= 12 {
        out.push("A4".into());
    }
    if max_order >= 16 {
        for n in ["H", "P", "D16+", "D16-", "Q8xC2", "D8xC2", "D"] {
            out.push(n.into());
        }
    }
    out
}

fn rename(mut g: FiniteGroup, name: &str) -> FiniteGroup {
    g = FiniteGroup::from_table(Some(name.to_string()), g.table().to_vec())
        .expect("valid table")
        .with_generators(g.generators().to_vec())
        .expect("valid generators")
        .with_presentation(g.presentation().cloned().expect("catalog presentation"))
        .expect("relators hold");
    g
}

/// Breadth-first closure of `gens` under `mul` inside a concrete model.
fn close<E: Clone + Eq + Hash>(
    name: &str,
    identity: E,
    gens: &[(&str, E)],
    mul: impl Fn(&E, &E) -> E,
    presentation: Presentation,
) -> Result<FiniteGroup> {
    let mut elements = vec![identity];
    let mut index: HashMap<E, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut i = 0;
    while i < elements.len() {
        for (_, s) in gens {
            let y = mul(&elements[i], s);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        i += 1;
        if elements.len() > MAX_ORDER * MAX_ORDER {
            return Err(Error::InvalidGroup(format!("{name} does not close")));
        }
    }
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&mul(a, b)]).collect())
        .collect();
    let generators = gens.iter().map(|(n, e)| (n.to_string(), index[e])).collect();
    FiniteGroup::from_table(Some(name.to_string()), table)?
        .with_generators(generators)?
        .with_presentation(presentation)
}

fn cyclic_named(n: usize, names: &[&str]) -> Result<FiniteGroup> {
    let a = names[0];
    let p = Presentation::from_named(&[a], &[&[(a, n as i64)]])?;
    close(&format!("C{n}"), 0usize, &[(a, 1 % n)], |x, y| (x + y) % n, p)
}

/// `<a, b | a^n = 1, b^m = a^t, a^b = a^r>` with elements `b^j a^i`.
///
/// `b^-1 a b = a^r` gives `a^i b^l = b^l a^(i r^l)`, hence
/// `(b^j a^i)(b^l a^k) = b^(j+l) a^(i r^l + k)`, folding `b^m = a^t`.
fn metacyclic(name: &str, n: usize, m: usize, t: usize, r: i64) -> Result<FiniteGroup> {
    let r = r.rem_euclid(n as i64) as usize;
    let rpow = |l: usize| (0..l).fold(1 % n, |acc, _| acc * r % n);
    let mul = |x: &(usize, usize), y: &(usize, usize)| {
        let (j, i) = *x;
        let (l, k) = *y;
        let mut a = (i * rpow(l) + k) % n;
        let mut b = j + l;
        if b >= m {
            b -= m;
            a = (a + t) % n;
        }
        (b, a)
    };
    let p = Presentation::from_named(
        &["a", "b"],
        &[
            &[("a", n as i64)],
            &[("b", m as i64), ("a", -(t as i64))],
            &[("b", -1), ("a", 1), ("b", 1), ("a", -(r as i64))],
        ],
    )?;
    close(name, (0, 0), &[("a", (0, 1 % n)), ("b", (1 % m, 0))], mul, p)
}

/// `<a, b | a^(2n) = 1, b^2 = a^n, a^b = a^-1>`, order `4n`.
fn dicyclic(n: usize) -> Result<FiniteGroup> {
    metacyclic(&format!("Dic{n}"), 2 * n, 2, n, -1)
}

type Perm = Vec<u8>;

/// `(p * q)(x) = q(p(x))`: apply `p` first.
fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

fn perm_group(name: &str, gens: &[(&str, &[u8])], p: Presentation) -> Result<FiniteGroup> {
    let degree = gens[0].1.len();
    let identity: Perm = (0..degree as u8).collect();
    let gens: Vec<(&str, Perm)> = gens.iter().map(|(n, g)| (*n, g.to_vec())).collect();
    close(name, identity, &gens, compose, p)
}

fn alternating4() -> Result<FiniteGroup> {
    let p = Presentation::from_named(
        &["x", "y"],
        &[
            &[("x", 3)],
            &[("y", 2)],
            &[("x", 1), ("y", 1), ("x", 1), ("y", 1), ("x", 1), ("y", 1)],
        ],
    )?;
    perm_group("A4", &[("x", &[1, 2, 0, 3]), ("y", &[1, 0, 3, 2])], p)
}

/// `[16,3] = <a, b | a^4 = b^4 = (ab)^2 = 1, (a^2)^b = a^2>`, realized in
/// its regular permutation representation.
fn group_16_3() -> Result<FiniteGroup> {
    let p = Presentation::from_named(
        &["a", "b"],
        &[
            &[("a", 4)],
            &[("b", 4)],
            &[("a", 1), ("b", 1), ("a", 1), ("b", 1)],
            &[("a", -2), ("b", -1), ("a", 2), ("b", 1)],
        ],
    )?;
    perm_group(
        "H",
        &[
            ("a", &[1, 5, 0, 9, 8, 2, 4, 3, 12, 11, 13, 7, 6, 15, 10, 14]),
            ("b", &[3, 6, 8, 10, 0, 11, 13, 1, 14, 2, 4, 15, 5, 7, 9, 12]),
        ],
        p,
    )
}

/// `[16,13] = <a, b, c | a^2 = b^2 = c^4 = 1, a^c = a, b^c = b, a^b = c^2 a>`,
/// the central product of `C4` and `D8`.
fn group_16_13() -> Result<FiniteGroup> {
    let p = Presentation::from_named(
        &["a", "b", "c"],
        &[
            &[("a", 2)],
            &[("b", 2)],
            &[("c", 4)],
            &[("a", -1), ("c", -1), ("a", 1), ("c", 1)],
            &[("b", -1), ("c", -1), ("b", 1), ("c", 1)],
            &[("b", -1), ("a", 1), ("b", 1), ("a", -1), ("c", -2)],
        ],
    )?;
    perm_group(
        "D",
        &[
            ("a", &[1, 0, 8, 6, 7, 12, 3, 4, 2, 14, 13, 15, 5, 10, 9, 11]),
            ("b", &[2, 5, 0, 9, 10, 1, 13, 14, 15, 3, 4, 12, 11, 6, 7, 8]),
            ("c", &[3, 6, 9, 11, 0, 13, 15, 1, 14, 12, 2, 4, 10, 8, 5, 7]),
        ],
        p,
    )
}

/// `G x K` generated by the generators of both factors; the presentation
/// adds commuting relators between the two generator sets.
fn direct_product(name: &str, g: &FiniteGroup, k: &FiniteGroup) -> Result<FiniteGroup> {
    let pg = g.presentation().expect("catalog presentation");
    let pk = k.presentation().expect("catalog presentation");
    let ng = pg.generators().len();
    let mut generators = pg.generators().to_vec();
    generators.extend(pk.generators().iter().cloned());
    let mut relators = pg.relators().to_vec();
    relators.extend(pk.relators().iter().map(|w| w.shifted(ng)));
    for i in 0..ng {
        for j in 0..pk.generators().len() {
            let x = crate::presentation::Word::generator(i, 1);
            let y = crate::presentation::Word::generator(ng + j, 1);
            relators.push(x.inverse().concat(&y.inverse()).concat(&x).concat(&y));
        }
    }
    let p = Presentation::new(generators, relators)?;
    let mut gens: Vec<(String, (usize, usize))> = g.generators().iter().map(|(n, x)| (n.clone(), (*x, 0))).collect();
    gens.extend(k.generators().iter().map(|(n, y)| (n.clone(), (0, *y))));
    let refs: Vec<(&str, (usize, usize))> = gens.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    close(name, (0, 0), &refs, |x, y| (g.mul(x.0, y.0), k.mul(x.1, y.1)), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_have_expected_orders() {
        let expected = [
            ("S3", 6),
            ("Q8", 8),
            ("Q16", 16),
            ("A4", 12),
            ("T", 12),
            ("H", 16),
            ("P", 16),
            ("D16+", 16),
            ("D16", 16),
            ("D16-", 16),
            ("Q8xC2", 16),
            ("D8xC2", 16),
            ("D", 16),
            ("C1", 1),
            ("C64", 64),
            ("Dic5", 20),
            ("D4", 4),
            ("[12,1]", 12),
        ];
        for (name, order) in expected {
            let g = builtin(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn unknown_names_fail() {
        for name in ["Z17!", "C0", "C65", "D7", "D66", "Dic0", "Dic17", "", "Cx"] {
            assert_eq!(builtin(name), Err(Error::UnknownGroup(name.into())), "{name}");
        }
    }

    #[test]
    fn identity_is_index_zero_and_orders_divide() {
        for name in catalog_names(16) {
            let g = builtin(&name).unwrap();
            assert_eq!(g.mul(0, 0), 0);
            assert_eq!(g.order() % g.exponent(), 0, "{name}");
        }
    }

    #[test]
    fn catalog_listing_is_duplicate_free() {
        let names = catalog_names(16);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(names.len(), 16 + 7 + 3 + 1 + 7);
    }
}
