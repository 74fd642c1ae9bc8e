//! Bicyclic and Bass units, their rules, and the commutator identities
//! they satisfy, each checked as an exact equality in `ZG`.
//!
//! Conventions: `x^y = y^-1 x y` and `[x, y] = x^-1 x^y`.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{euler_totient, gcd, mod_inverse, mod_pow, modulo, multiplicative_order};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::{Element, Unit};
use crate::scalar::Scalar;

/// Parameters of `b(g, h) = 1 + (1 - h) g h~`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BicyclicSpec {
    pub g: usize,
    pub h: usize,
    /// Order of `h`.
    pub n: usize,
}

impl BicyclicSpec {
    pub fn new(group: &FiniteGroup, g: usize, h: usize) -> Result<Self> {
        check_element(group, g)?;
        check_element(group, h)?;
        Ok(BicyclicSpec {
            g,
            h,
            n: group.element_order(h),
        })
    }
}

/// Parameters of `u_{k,m}(g) = (1 + g + ... + g^(k-1))^m + ((1 - k^m)/n) g~`.
///
/// `k` is kept in `1..=max(n - 1, 1)`; `gcd(k, n) = 1` and `k^m = 1 mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BassSpec {
    pub g: usize,
    /// Order of `g`.
    pub n: usize,
    pub k: u64,
    pub m: u64,
}

impl BassSpec {
    /// Normalizes `k` modulo the order of `g`; `m` defaults to `phi(n)`.
    pub fn new(group: &FiniteGroup, g: usize, k: i64, m: Option<u64>) -> Result<Self> {
        check_element(group, g)?;
        let n = group.element_order(g);
        let k = normalize_k(k, n as u64);
        let m = m.unwrap_or_else(|| euler_totient(n as u64));
        check_bass_parameters(n as u64, k, m)?;
        Ok(BassSpec { g, n, k, m })
    }
}

/// Representative of `k mod n` in `1..=n`; `1` when `n = 1`.
pub fn normalize_k(k: i64, n: u64) -> u64 {
    modulo(k - 1, n) + 1
}

fn check_element(group: &FiniteGroup, g: usize) -> Result<()> {
    if g < group.order() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "element index {g} out of range for order {}",
            group.order()
        )))
    }
}

fn check_bass_parameters(n: u64, k: u64, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Inadmissible("m must be positive".into()));
    }
    if gcd(k, n) != 1 {
        return Err(Error::Inadmissible(format!("k = {k} is not coprime to n = {n}")));
    }
    if mod_pow(k, m, n) != 1 % n {
        return Err(Error::Inadmissible(format!("{k}^{m} is not 1 mod {n}")));
    }
    Ok(())
}

/// Smallest `m >= 1` with `k^m = 1 mod n` for every `k` given, doubled to
/// an even value when `even` is set.
pub fn minimal_exponent(n: u64, ks: &[u64], even: bool) -> Result<u64> {
    let mut m = 1u64;
    for &k in ks {
        let s = multiplicative_order(k, n)
            .ok_or_else(|| Error::Inadmissible(format!("k = {k} is not coprime to n = {n}")))?;
        m = m / gcd(m, s) * s;
    }
    if even && m % 2 == 1 {
        m *= 2;
    }
    Ok(m)
}

/// If `g^h = g^l` for some `l`, returns `l` in `0..|g|`.
pub fn conjugation_exponent(group: &FiniteGroup, g: usize, h: usize) -> Option<u64> {
    let target = group.conjugate(g, h);
    group.powers(g).iter().position(|&x| x == target).map(|l| l as u64)
}

pub fn bicyclic<T: Scalar>(group: &Arc<FiniteGroup>, spec: &BicyclicSpec) -> Element<T> {
    bicyclic_power(group, spec, 1)
}

/// `b(g, h)^j = 1 + j (1 - h) g h~`, valid for every integer `j` since the
/// nilpotent part squares to zero.
pub fn bicyclic_power<T: Scalar>(group: &Arc<FiniteGroup>, spec: &BicyclicSpec, j: i64) -> Element<T> {
    let one = Element::one(group);
    let h = Element::basis(group, spec.h);
    let nil = &(&(&one - &h) * &Element::basis(group, spec.g)) * &Element::tilde(group, spec.h);
    &one + &nil.scale(&T::from(j))
}

/// The bicyclic unit with inverse `1 - (1 - h) g h~`.
pub fn bicyclic_unit<T: Scalar>(group: &Arc<FiniteGroup>, spec: &BicyclicSpec) -> Unit<T> {
    Unit::with_inverse(bicyclic(group, spec), bicyclic_power(group, spec, -1)).expect("bicyclic inverse formula")
}

/// The Bass formula for any positive `k` coprime to `n` with `k^m = 1 mod n`,
/// without reducing `k`.
pub fn bass_raw<T: Scalar>(group: &Arc<FiniteGroup>, g: usize, k: u64, m: u64) -> Result<Element<T>> {
    check_element(group, g)?;
    let n = group.element_order(g) as u64;
    check_bass_parameters(n, k, m)?;
    let powers = group.powers(g);
    let partial = Element::from_terms(group, (0..k as usize).map(|j| (powers[j % powers.len()], T::one())));
    let km = T::from(k as i64).pow_u32(u32::try_from(m).map_err(|_| Error::Overflow(format!("exponent m = {m}")))?);
    let coeff = (T::one() - km) / T::from(n as i64);
    Ok(&partial.pow(m) + &Element::tilde(group, g).scale(&coeff))
}

/// The Bass unit of `spec`, with inverse `u_{k^-1,m}(g^k)` verified by
/// multiplication.
pub fn bass<T: Scalar>(group: &Arc<FiniteGroup>, spec: &BassSpec) -> Result<Unit<T>> {
    let n = spec.n as u64;
    let value = bass_raw(group, spec.g, spec.k, spec.m)?;
    let k_inv = normalize_k(mod_inverse(spec.k, n).unwrap_or(1) as i64, n);
    let inverse = bass_raw(group, group.pow(spec.g, spec.k as i64), k_inv, spec.m)?;
    Unit::with_inverse(value, inverse)
}

fn bass_unit<T: Scalar>(group: &Arc<FiniteGroup>, g: usize, k: i64, m: u64) -> Result<Unit<T>> {
    bass(group, &BassSpec::new(group, g, k, Some(m))?)
}

/// Outcome of one exact identity check.
///
/// Dense coefficient vectors of both sides and of their difference are kept
/// only when the identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lhs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rhs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub difference: Vec<String>,
}

impl IdentityCheck {
    pub fn compare<T: Scalar>(label: impl Into<String>, lhs: &Element<T>, rhs: &Element<T>) -> Self {
        let holds = lhs == rhs;
        let dense = |e: &Element<T>| e.to_dense().iter().map(T::to_string).collect::<Vec<_>>();
        let (l, r, d) = if holds {
            (vec![], vec![], vec![])
        } else {
            (dense(lhs), dense(rhs), dense(&(lhs - rhs)))
        };
        IdentityCheck {
            label: label.into(),
            holds,
            lhs: l,
            rhs: r,
            difference: d,
        }
    }
}

/// The eight rules for Bass units. Parameters are integers; `k` and `l` are
/// reduced modulo `|g|` except where a rule compares unreduced values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum BassRule {
    /// `u_{k,m}(g) = u_{l,m}(g)` for `k = l mod n`, both by the unreduced formula.
    Congruent { k: u64, l: u64, m: u64 },
    /// `u_{k,m}(g) u_{k,m'}(g) = u_{k,m+m'}(g)`.
    AddExponents { k: i64, m: u64, m2: u64 },
    /// `u_{k,m}(g) u_{l,m}(g^k) = u_{kl,m}(g)`.
    Compose { k: i64, l: i64, m: u64 },
    /// `u_{1,m}(g) = 1`.
    One { m: u64 },
    /// `u_{-1,m}(g) = (-g)^-m`, for even `m`.
    MinusOne { m: u64 },
    /// `u_{k,m}(g)^i = u_{k,im}(g)`.
    Power { k: i64, m: u64, i: u64 },
    /// `u_{k,m}(g)^-1 = u_{k',m}(g^k)` with `k k' = 1 mod n`.
    Inverse { k: i64, m: u64 },
    /// `u_{n-k,m}(g) = u_{k,m}(g) g^(-km)`, for even `m`.
    Reflect { k: i64, m: u64 },
}

impl BassRule {
    /// Rule number `1..=8` in the order listed above.
    pub fn number(&self) -> u8 {
        match self {
            BassRule::Congruent { .. } => 1,
            BassRule::AddExponents { .. } => 2,
            BassRule::Compose { .. } => 3,
            BassRule::One { .. } => 4,
            BassRule::MinusOne { .. } => 5,
            BassRule::Power { .. } => 6,
            BassRule::Inverse { .. } => 7,
            BassRule::Reflect { .. } => 8,
        }
    }

    /// Builds rule `number` from loose parameters; unused ones are ignored
    /// and missing ones default (`l = k + n` for rule 1, `m' = m`, `i = 2`).
    pub fn from_number(
        number: u8,
        n: u64,
        k: i64,
        l: Option<i64>,
        m: u64,
        m2: Option<u64>,
        i: Option<u64>,
    ) -> Result<Self> {
        Ok(match number {
            1 => {
                let k = normalize_k(k, n);
                let l = l.map_or(k + n, |l| l.max(1) as u64);
                BassRule::Congruent { k, l, m }
            }
            2 => BassRule::AddExponents {
                k,
                m,
                m2: m2.unwrap_or(m),
            },
            3 => BassRule::Compose {
                k,
                l: l.unwrap_or(k),
                m,
            },
            4 => BassRule::One { m },
            5 => BassRule::MinusOne { m },
            6 => BassRule::Power {
                k,
                m,
                i: i.unwrap_or(2),
            },
            7 => BassRule::Inverse { k, m },
            8 => BassRule::Reflect { k, m },
            other => return Err(Error::Precondition(format!("no Bass rule {other}; rules are 1..8"))),
        })
    }

    pub fn label(&self) -> String {
        match *self {
            BassRule::Congruent { k, l, m } => format!("u[{k},{m}] = u[{l},{m}]"),
            BassRule::AddExponents { k, m, m2 } => format!("u[{k},{m}] u[{k},{m2}] = u[{k},{}]", m + m2),
            BassRule::Compose { k, l, m } => format!("u[{k},{m}](g) u[{l},{m}](g^{k}) = u[{},{m}](g)", k * l),
            BassRule::One { m } => format!("u[1,{m}] = 1"),
            BassRule::MinusOne { m } => format!("u[-1,{m}](g) = (-g)^-{m}"),
            BassRule::Power { k, m, i } => format!("u[{k},{m}]^{i} = u[{k},{}]", i * m),
            BassRule::Inverse { k, m } => format!("u[{k},{m}](g)^-1 = u[{k}^-1,{m}](g^{k})"),
            BassRule::Reflect { k, m } => format!("u[n-{k},{m}](g) = u[{k},{m}](g) g^-{}", k as i128 * m as i128),
        }
    }

    /// Checks the parameter constraints of the rule for `|g| = n`.
    pub fn check_admissible(&self, n: u64) -> Result<()> {
        let needs_even = |m: u64| {
            if m.is_multiple_of(2) {
                Ok(())
            } else {
                Err(Error::Inadmissible(format!(
                    "m = {m} is odd; the rule needs (-1)^m = 1"
                )))
            }
        };
        match *self {
            BassRule::Congruent { k, l, m } => {
                if k == 0 || l == 0 || (k as i128 - l as i128).rem_euclid(n as i128) != 0 {
                    return Err(Error::Inadmissible(format!("{k} and {l} are not congruent mod {n}")));
                }
                check_bass_parameters(n, k, m)?;
                check_bass_parameters(n, l, m)
            }
            BassRule::AddExponents { k, m, m2 } => {
                check_bass_parameters(n, normalize_k(k, n), m)?;
                check_bass_parameters(n, normalize_k(k, n), m2)
            }
            BassRule::Compose { k, l, m } => {
                check_bass_parameters(n, normalize_k(k, n), m)?;
                check_bass_parameters(n, normalize_k(l, n), m)
            }
            BassRule::One { m } => check_bass_parameters(n, 1, m),
            BassRule::MinusOne { m } => {
                needs_even(m)?;
                check_bass_parameters(n, normalize_k(-1, n), m)
            }
            BassRule::Power { k, m, i } => {
                if i == 0 {
                    return Err(Error::Inadmissible("i must be positive".into()));
                }
                check_bass_parameters(n, normalize_k(k, n), m)
            }
            BassRule::Inverse { k, m } => check_bass_parameters(n, normalize_k(k, n), m),
            BassRule::Reflect { k, m } => {
                needs_even(m)?;
                check_bass_parameters(n, normalize_k(k, n), m)
            }
        }
    }
}

/// Verifies one Bass rule at `g`.
pub fn verify_bass_rule<T: Scalar>(group: &Arc<FiniteGroup>, g: usize, rule: &BassRule) -> Result<IdentityCheck> {
    check_element(group, g)?;
    let n = group.element_order(g) as u64;
    rule.check_admissible(n)?;
    let (lhs, rhs) = match *rule {
        BassRule::Congruent { k, l, m } => (bass_raw(group, g, k, m)?, bass_raw(group, g, l, m)?),
        BassRule::AddExponents { k, m, m2 } => {
            let a = bass_unit::<T>(group, g, k, m)?;
            let b = bass_unit::<T>(group, g, k, m2)?;
            (a.mul(&b).into_value(), bass_unit(group, g, k, m + m2)?.into_value())
        }
        BassRule::Compose { k, l, m } => {
            let gk = group.pow(g, k);
            let a = bass_unit::<T>(group, g, k, m)?;
            let b = bass_unit::<T>(group, gk, l, m)?;
            let kl = (modulo(k, n) * modulo(l, n)) as i64;
            (a.mul(&b).into_value(), bass_unit(group, g, kl, m)?.into_value())
        }
        BassRule::One { m } => (bass_unit(group, g, 1, m)?.into_value(), Element::one(group)),
        BassRule::MinusOne { m } => {
            let minus_g = Element::basis(group, g).negate();
            let rhs = Unit::with_inverse(minus_g.clone(), minus_g.inverse()?)?.pow(-(m as i64));
            (bass_unit(group, g, -1, m)?.into_value(), rhs.into_value())
        }
        BassRule::Power { k, m, i } => {
            let u = bass_unit::<T>(group, g, k, m)?;
            (
                u.pow(i as i64).into_value(),
                bass_unit(group, g, k, i * m)?.into_value(),
            )
        }
        BassRule::Inverse { k, m } => {
            let u: Element<T> = bass_raw(group, g, normalize_k(k, n), m)?;
            let k_inv = mod_inverse(modulo(k, n), n).unwrap_or(0) as i64;
            let rhs = bass_unit(group, group.pow(g, k), k_inv, m)?.into_value();
            (u.inverse()?, rhs)
        }
        BassRule::Reflect { k, m } => {
            let k_red = normalize_k(k, n);
            let lhs = bass_unit::<T>(group, g, n as i64 - k_red as i64, m)?.into_value();
            let shift = group.pow(g, -((modulo(k, n) * (m % n.max(1))) as i64));
            let rhs = bass_unit::<T>(group, g, k, m)?.value().right_shift(shift);
            (lhs, rhs)
        }
    };
    Ok(IdentityCheck::compare(rule.label(), &lhs, &rhs))
}

/// `prod_{k=1..n} [b^-1, h^k] = b^n` for `b = b(g, h)` and `n = |h|`.
pub fn verify_bicyclic_commutators<T: Scalar>(group: &Arc<FiniteGroup>, g: usize, h: usize) -> Result<IdentityCheck> {
    let spec = BicyclicSpec::new(group, g, h)?;
    let b = bicyclic_unit::<T>(group, &spec);
    let b_inv = b.inv();
    let mut product = Unit::one(group);
    for k in 1..=spec.n as i64 {
        let hk = Unit::group_element(group, group.pow(h, k));
        product = product.mul(&b_inv.commutator(&hk));
    }
    let rhs = bicyclic_power(group, &spec, spec.n as i64);
    Ok(IdentityCheck::compare(
        format!("prod [b(g{g},g{h})^-1, h^k] = b^{}", spec.n),
        product.value(),
        &rhs,
    ))
}

fn conjugation_precondition(group: &FiniteGroup, g: usize, h: usize, l: i64) -> Result<u64> {
    check_element(group, g)?;
    check_element(group, h)?;
    let n = group.element_order(g) as u64;
    let l = modulo(l, n);
    if group.conjugate(g, h) != group.pow(g, l as i64) {
        return Err(Error::Precondition(format!("g{g}^g{h} is not g{g}^{l}")));
    }
    Ok(n)
}

/// `prod_{i=1..s-1} [u^-1, h^i] = u^s` for `u = u_{l,m}(g)`, where
/// `g^h = g^l` and `s` is the order of `l` modulo `|g|`.
pub fn verify_bass_commutators<T: Scalar>(
    group: &Arc<FiniteGroup>,
    g: usize,
    l: i64,
    m: u64,
    h: usize,
) -> Result<IdentityCheck> {
    let n = conjugation_precondition(group, g, h, l)?;
    let u = bass_unit::<T>(group, g, l, m)?;
    let s = multiplicative_order(modulo(l, n), n)
        .ok_or_else(|| Error::Inadmissible(format!("l = {l} is not coprime to {n}")))?;
    let u_inv = u.inv();
    let mut product = Unit::one(group);
    for i in 1..s as i64 {
        let hi = Unit::group_element(group, group.pow(h, i));
        product = product.mul(&u_inv.commutator(&hi));
    }
    Ok(IdentityCheck::compare(
        format!("prod [u[{l},{m}](g{g})^-1, h^i] = u^{s}"),
        product.value(),
        u.pow(s as i64).value(),
    ))
}

/// `u_{k,m}(g)^h = u_{k,m}(g^l)` and `u_{k,m}(g^l) u_{l,m}(g) = u_{kl,m}(g)`,
/// where `g^h = g^l`.
pub fn verify_bass_conjugation<T: Scalar>(
    group: &Arc<FiniteGroup>,
    g: usize,
    k: i64,
    l: i64,
    m: u64,
    h: usize,
) -> Result<[IdentityCheck; 2]> {
    let n = conjugation_precondition(group, g, h, l)?;
    let gl = group.pow(g, l);
    let u_k = bass_unit::<T>(group, g, k, m)?;
    let u_k_gl = bass_unit::<T>(group, gl, k, m)?;
    let u_l = bass_unit::<T>(group, g, l, m)?;
    let kl = (modulo(k, n) * modulo(l, n)) as i64;
    let u_kl = bass_unit::<T>(group, g, kl, m)?;
    let first = IdentityCheck::compare(
        format!("u[{k},{m}](g{g})^g{h} = u[{k},{m}](g{g}^{l})"),
        u_k.conjugate(&Unit::group_element(group, h)).value(),
        u_k_gl.value(),
    );
    let second = IdentityCheck::compare(
        format!("u[{k},{m}](g{g}^{l}) u[{l},{m}](g{g}) = u[{kl},{m}](g{g})"),
        u_k_gl.mul(&u_l).value(),
        u_kl.value(),
    );
    Ok([first, second])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_arc;
    use crate::parse::parse_element;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type E = Element<BigInt>;

    /// Dense convolution straight off the Cayley table.
    fn oracle_mul(g: &FiniteGroup, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; g.order()];
        for (a, xa) in x.iter().enumerate() {
            for (b, yb) in y.iter().enumerate() {
                out[g.table()[a][b]] += xa * yb;
            }
        }
        out
    }

    fn dense(e: &E) -> Vec<i64> {
        e.to_dense().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn bicyclic_in_s3_matches_expansion() {
        let g = builtin_arc("S3").unwrap();
        let (a, b) = (g.generator("a").unwrap(), g.generator("b").unwrap());
        let mut one = vec![0; 6];
        one[0] = 1;
        let mut one_minus_b = one.clone();
        one_minus_b[b] -= 1;
        let mut ga = vec![0; 6];
        ga[a] = 1;
        let mut b_sum = one.clone();
        b_sum[b] += 1;
        let mut expected = oracle_mul(&g, &oracle_mul(&g, &one_minus_b, &ga), &b_sum);
        expected[0] += 1;
        let spec = BicyclicSpec::new(&g, a, b).unwrap();
        let got: E = bicyclic(&g, &spec);
        assert_eq!(dense(&got), expected);
        let frozen: E = parse_element(&g, "1 + a - a^2 + a*b - a^2*b").unwrap();
        assert_eq!(got, frozen);
    }

    #[test]
    fn bicyclic_trivial_iff_normalizing() {
        for name in ["S3", "D8", "Q8", "A4", "D16+"] {
            let g = builtin_arc(name).unwrap();
            for x in 0..g.order() {
                for y in 0..g.order() {
                    let spec = BicyclicSpec::new(&g, x, y).unwrap();
                    let b: Element<i64> = bicyclic(&g, &spec);
                    let normalizes = g.is_normalized_by(&g.powers(y), x);
                    assert_eq!(b.is_one(), normalizes, "{name} g{x} g{y}");
                    assert_eq!(b.augment(), 1);
                }
            }
        }
    }

    #[test]
    fn bass_order_five_matches_expansion() {
        let g = builtin_arc("C5").unwrap();
        let a = g.generator("a").unwrap();
        let spec = BassSpec::new(&g, a, 2, Some(4)).unwrap();
        let u = bass::<BigInt>(&g, &spec).unwrap();
        // (1 + a)^4 - 3 (1 + a + ... + a^4), expanded independently
        let mut s = vec![0i64; 5];
        s[0] = 1;
        s[a] += 1;
        let mut p = s.clone();
        for _ in 0..3 {
            p = oracle_mul(&g, &p, &s);
        }
        let expected: Vec<i64> = p.iter().map(|c| c - 3).collect();
        assert_eq!(dense(u.value()), expected);
        let frozen: E = parse_element(&g, "-2 + a + 3a^2 + a^3 - 2a^4").unwrap();
        assert_eq!(u.value(), &frozen);
        assert!(u.value().is_unit());
    }

    #[test]
    fn bass_triviality() {
        let g = builtin_arc("C12").unwrap();
        let a = g.generator("a").unwrap();
        for k in [1i64, 5, 7, 11] {
            let u = bass::<BigInt>(&g, &BassSpec::new(&g, a, k, None).unwrap()).unwrap();
            let trivial = u.value().support_len() == 1;
            assert_eq!(trivial, k == 1 || k == 11, "k = {k}");
        }
        let one = bass::<BigInt>(&g, &BassSpec::new(&g, a, 13, Some(3)).unwrap()).unwrap();
        assert!(one.value().is_one());
    }

    #[test]
    fn bass_parameter_errors() {
        let g = builtin_arc("C8").unwrap();
        let a = g.generator("a").unwrap();
        assert!(matches!(BassSpec::new(&g, a, 2, None), Err(Error::Inadmissible(_))));
        assert!(matches!(BassSpec::new(&g, a, 3, Some(1)), Err(Error::Inadmissible(_))));
        assert!(matches!(BassSpec::new(&g, 99, 3, None), Err(Error::Precondition(_))));
        assert_eq!(BassSpec::new(&g, a, -1, None).unwrap().k, 7);
        assert_eq!(BassSpec::new(&g, a, 11, None).unwrap().k, 3);
        let c1 = builtin_arc("C1").unwrap();
        assert_eq!(BassSpec::new(&c1, 0, 5, None).unwrap().k, 1);
    }

    #[test]
    fn odd_m_is_rejected_by_sign_rules() {
        let g = builtin_arc("C2").unwrap();
        for rule in [BassRule::MinusOne { m: 1 }, BassRule::Reflect { k: 1, m: 3 }] {
            assert!(matches!(
                verify_bass_rule::<BigInt>(&g, 1, &rule),
                Err(Error::Inadmissible(_))
            ));
        }
        let c8 = builtin_arc("C8").unwrap();
        let r = BassRule::Reflect { k: 3, m: 1 };
        assert!(matches!(
            verify_bass_rule::<BigInt>(&c8, 1, &r),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn rules_on_order_eight() {
        let g = builtin_arc("C8").unwrap();
        let a = g.generator("a").unwrap();
        let rules = [
            BassRule::Congruent { k: 3, l: 11, m: 2 },
            BassRule::AddExponents { k: 3, m: 2, m2: 4 },
            BassRule::Compose { k: 3, l: 5, m: 2 },
            BassRule::One { m: 3 },
            BassRule::MinusOne { m: 2 },
            BassRule::Power { k: 5, m: 2, i: 3 },
            BassRule::Inverse { k: 3, m: 4 },
            BassRule::Reflect { k: 3, m: 2 },
        ];
        for (i, rule) in rules.iter().enumerate() {
            assert_eq!(rule.number() as usize, i + 1);
            let check = verify_bass_rule::<BigInt>(&g, a, rule).unwrap();
            assert!(check.holds, "{}", check.label);
        }
    }

    #[test]
    fn failed_checks_carry_both_sides() {
        let g = builtin_arc("C3").unwrap();
        let one: E = Element::one(&g);
        let two = one.scale(&BigInt::from(2));
        let c = IdentityCheck::compare("x", &one, &two);
        assert!(!c.holds);
        assert_eq!(c.lhs, vec!["1", "0", "0"]);
        assert_eq!(c.rhs, vec!["2", "0", "0"]);
        assert_eq!(c.difference, vec!["-1", "0", "0"]);
    }

    #[test]
    fn bicyclic_commutators_in_s3() {
        let g = builtin_arc("S3").unwrap();
        let (a, b) = (g.generator("a").unwrap(), g.generator("b").unwrap());
        assert!(verify_bicyclic_commutators::<BigInt>(&g, a, b).unwrap().holds);
        let check = verify_bicyclic_commutators::<BigInt>(&g, b, a).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn bass_commutators_examples() {
        let g = builtin_arc("D16+").unwrap();
        let (a, b) = (g.generator("a").unwrap(), g.generator("b").unwrap());
        assert_eq!(conjugation_exponent(&g, a, b), Some(5));
        assert!(verify_bass_commutators::<BigInt>(&g, a, 5, 2, b).unwrap().holds);
        let [x, y] = verify_bass_conjugation::<BigInt>(&g, a, 3, 5, 2, b).unwrap();
        assert!(x.holds && y.holds);
        assert!(matches!(
            verify_bass_commutators::<BigInt>(&g, a, 3, 2, b),
            Err(Error::Precondition(_))
        ));

        let d10 = builtin_arc("D10").unwrap();
        let (r, s) = (d10.generator("a").unwrap(), d10.generator("b").unwrap());
        assert_eq!(d10.element_order(r), 5);
        assert!(verify_bass_commutators::<BigInt>(&d10, r, 4, 2, s).unwrap().holds);
    }

    #[test]
    fn minimal_exponents() {
        assert_eq!(minimal_exponent(8, &[3, 5], false).unwrap(), 2);
        assert_eq!(minimal_exponent(5, &[2], false).unwrap(), 4);
        assert_eq!(minimal_exponent(2, &[1], true).unwrap(), 2);
        assert!(minimal_exponent(6, &[2], false).is_err());
    }

    proptest! {
        #[test]
        fn bicyclic_linear_powers(gi in 0usize..16, hi in 0usize..16, j in -5i64..=5, k in -5i64..=5) {
            let g = builtin_arc("D16+").unwrap();
            let spec = BicyclicSpec::new(&g, gi, hi).unwrap();
            let bj: Element<i64> = bicyclic_power(&g, &spec, j);
            let bk: Element<i64> = bicyclic_power(&g, &spec, k);
            prop_assert_eq!(&bj * &bk, bicyclic_power(&g, &spec, j + k));
            let u = bicyclic_unit::<i64>(&g, &spec);
            prop_assert_eq!(u.pow(j).into_value(), bj);
        }

        #[test]
        fn bass_units_invert(name in prop::sample::select(vec!["C7", "C9", "C10", "C16", "D16-", "Q16"]), gi in 0usize..16, k in 1i64..16) {
            let g = builtin_arc(name).unwrap();
            let x = gi % g.order();
            let n = g.element_order(x) as u64;
            prop_assume!(gcd(modulo(k, n), n) == 1 || n == 1);
            let u = bass::<BigInt>(&g, &BassSpec::new(&g, x, k, None).unwrap()).unwrap();
            prop_assert!(u.value().is_unit());
            prop_assert_eq!(u.value().augment(), BigInt::from(1));
        }
    }
}
