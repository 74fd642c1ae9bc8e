//! Finite presentations: words, relators and semidirect assembly.
//!
//! Words are stored as run-length `(generator, exponent)` pairs referring to
//! a generator index of the owning presentation. The JSON forms use
//! generator names:
//!
//! ```json
//! {"generators": ["x", "y"], "relators": [[["x", 1], ["y", -2]]]}
//! ```
//!
//! A semidirect description adds `fiber_generators`, `fiber_relators` and an
//! `action` map `fiber generator -> base generator -> word`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A freely reduced word in indexed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize, exp: i64) -> Self {
        Word::from_pairs([(g, exp)])
    }

    /// Builds a word, merging adjacent runs and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, exp)) if *last == g => {
                    *exp += e;
                    if *exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    pub fn pairs(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `by^-1 * self * by`
    pub fn conjugate_by(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Shifts every generator index by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word(self.0.iter().map(|&(g, e)| (g + offset, e)).collect())
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0; generators];
        for &(g, e) in &self.0 {
            sums[g] += e;
        }
        sums
    }

    /// Evaluates the word under `image` using a caller-supplied monoid.
    pub fn evaluate<E: Clone>(&self, identity: E, image: impl Fn(usize, i64) -> E, mul: impl Fn(&E, &E) -> E) -> E {
        self.0.iter().fold(identity, |acc, &(g, e)| mul(&acc, &image(g, e)))
    }
}

/// A finite presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    origin: Option<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        for r in &relators {
            if let Some(&(g, _)) = r.pairs().iter().find(|&&(g, _)| g >= n) {
                return Err(Error::UnknownGenerator(format!("#{g}")));
            }
        }
        Ok(Presentation {
            generators,
            relators,
            origin: None,
        })
    }

    /// Convenience constructor from named words such as `&[("a", 3)]`.
    pub fn from_named(generators: &[&str], relators: &[&[(&str, i64)]]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relators
            .iter()
            .map(|r| parse_named(&gens, r.iter().map(|&(n, e)| (n, e))))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(gens, words)
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = Some(origin.into());
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn origin(&self) -> Option<&str> {
        self.origin.as_deref()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn word(&self, pairs: &[(&str, i64)]) -> Result<Word> {
        parse_named(&self.generators, pairs.iter().copied())
    }

    /// The same presentation with a different relator list.
    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self> {
        let mut p = Presentation::new(self.generators.clone(), relators)?;
        p.origin = self.origin.clone();
        Ok(p)
    }

    /// Rows are relators, columns generators, entries exponent sums.
    pub fn relation_matrix<T: Scalar>(&self) -> Matrix<T> {
        let n = self.generators.len();
        let sums: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        Matrix::from_fn(sums.len(), n, |i, j| T::from(sums[i][j]))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.pairs()
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.generators[g].clone()
                } else {
                    format!("{}^{}", self.generators[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson = serde_json::from_str(text)?;
        raw.into_presentation()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|w| self.named_pairs(w)).collect(),
            origin: self.origin.clone(),
        };
        serde_json::to_value(json).expect("presentation serializes")
    }

    fn named_pairs(&self, w: &Word) -> Vec<(String, i64)> {
        w.pairs()
            .iter()
            .map(|&(g, e)| (self.generators[g].clone(), e))
            .collect()
    }
}

fn parse_named<'a>(generators: &[String], pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Result<Word> {
    let mut out = Vec::new();
    for (name, e) in pairs {
        let idx = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        out.push((idx, e));
    }
    Ok(Word::from_pairs(out))
}

type NamedWord = Vec<(String, i64)>;

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<NamedWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<String>,
}

impl PresentationJson {
    fn into_presentation(self) -> Result<Presentation> {
        let relators = self
            .relators
            .iter()
            .map(|r| parse_named(&self.generators, r.iter().map(|(n, e)| (n.as_str(), *e))))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Presentation::new(self.generators, relators)?;
        p.origin = self.origin;
        Ok(p)
    }
}

/// A group `F ⋊ G` given by a presentation of `G`, fiber generators with
/// their own relators, and the conjugation action `x^g = w` of each base
/// generator `g` on each fiber generator `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectData {
    base: Presentation,
    fiber_generators: Vec<String>,
    fiber_relators: Vec<Word>,
    /// `action[x][g]` is the word in fiber generators equal to `x^g`.
    action: Vec<Vec<Word>>,
}

impl SemidirectData {
    pub fn new(
        base: Presentation,
        fiber_generators: Vec<String>,
        fiber_relators: Vec<Word>,
        action: Vec<Vec<Word>>,
    ) -> Result<Self> {
        let nf = fiber_generators.len();
        let nb = base.generators().len();
        if action.len() != nf {
            return Err(Error::MissingAction {
                fiber: fiber_generators.get(action.len()).cloned().unwrap_or_default(),
                base: base.generators().first().cloned().unwrap_or_default(),
            });
        }
        for (x, row) in action.iter().enumerate() {
            if row.len() != nb {
                return Err(Error::MissingAction {
                    fiber: fiber_generators[x].clone(),
                    base: base.generators()[row.len().min(nb.saturating_sub(1))].clone(),
                });
            }
        }
        let all_words = fiber_relators.iter().chain(action.iter().flatten());
        for w in all_words {
            if let Some(&(g, _)) = w.pairs().iter().find(|&&(g, _)| g >= nf) {
                return Err(Error::UnknownGenerator(format!("fiber #{g}")));
            }
        }
        Ok(SemidirectData {
            base,
            fiber_generators,
            fiber_relators,
            action,
        })
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn fiber_generators(&self) -> &[String] {
        &self.fiber_generators
    }

    pub fn fiber_relators(&self) -> &[Word] {
        &self.fiber_relators
    }

    /// The word for `x^g` (fiber generator `x`, base generator `g`).
    pub fn action(&self, fiber: usize, base: usize) -> &Word {
        &self.action[fiber][base]
    }

    pub fn set_action(&mut self, fiber: usize, base: usize, word: Word) {
        self.action[fiber][base] = word;
    }

    /// One presentation on base generators followed by fiber generators.
    ///
    /// Relators are the base relators, the fiber relators, and
    /// `g^-1 x g w^-1` for every action entry `x^g = w`.
    pub fn assemble(&self) -> Presentation {
        let nb = self.base.generators().len();
        let mut generators = self.base.generators().to_vec();
        generators.extend(self.fiber_generators.iter().cloned());
        let mut relators = self.base.relators().to_vec();
        relators.extend(self.fiber_relators.iter().map(|w| w.shifted(nb)));
        for (x, row) in self.action.iter().enumerate() {
            for (g, w) in row.iter().enumerate() {
                let conj = Word::generator(nb + x, 1).conjugate_by(&Word::generator(g, 1));
                relators.push(conj.concat(&w.shifted(nb).inverse()));
            }
        }
        let mut p = Presentation::new(generators, relators).expect("indices are in range");
        p.origin = self.base.origin.clone();
        p
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SemidirectJson = serde_json::from_str(text)?;
        raw.into_data()
    }
}

#[derive(Deserialize)]
struct SemidirectJson {
    generators: Vec<String>,
    relators: Vec<NamedWord>,
    fiber_generators: Vec<String>,
    #[serde(default)]
    fiber_relators: Vec<NamedWord>,
    action: BTreeMap<String, BTreeMap<String, NamedWord>>,
    #[serde(default)]
    origin: Option<String>,
}

impl SemidirectJson {
    fn into_data(self) -> Result<SemidirectData> {
        let base = PresentationJson {
            generators: self.generators,
            relators: self.relators,
            origin: self.origin,
        }
        .into_presentation()?;
        let fiber = &self.fiber_generators;
        let to_word = |w: &NamedWord| parse_named(fiber, w.iter().map(|(n, e)| (n.as_str(), *e)));
        let fiber_relators = self.fiber_relators.iter().map(to_word).collect::<Result<Vec<_>>>()?;
        for (x, row) in &self.action {
            if !fiber.contains(x) {
                return Err(Error::UnknownGenerator(x.clone()));
            }
            if let Some(g) = row.keys().find(|g| base.generator_index(g).is_none()) {
                return Err(Error::UnknownGenerator(g.clone()));
            }
        }
        let mut action = Vec::with_capacity(fiber.len());
        for x in fiber {
            let row = self.action.get(x);
            let mut words = Vec::with_capacity(base.generators().len());
            for g in base.generators() {
                let w = row.and_then(|r| r.get(g)).ok_or_else(|| Error::MissingAction {
                    fiber: x.clone(),
                    base: g.clone(),
                })?;
                words.push(to_word(w)?);
            }
            action.push(words);
        }
        SemidirectData::new(base, self.fiber_generators.clone(), fiber_relators, action)
    }
}

/// Reads either schema: a semidirect description (has an `action` key) is
/// assembled into a single presentation.
pub fn presentation_from_json(text: &str) -> Result<Presentation> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("action").is_some() {
        Ok(SemidirectData::from_json(text)?.assemble())
    } else {
        Presentation::from_json(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_reduce_freely() {
        let w = Word::from_pairs([(0, 2), (0, -2), (1, 1), (1, 0), (1, 2)]);
        assert_eq!(w.pairs(), &[(1, 3)]);
        let x = Word::from_pairs([(0, 1), (1, -1)]);
        assert!(x.concat(&x.inverse()).is_empty());
        assert_eq!(x.pow(-2), x.inverse().concat(&x.inverse()));
    }

    #[test]
    fn unknown_generators_are_rejected() {
        assert_eq!(
            Presentation::from_named(&["a"], &[&[("b", 1)]]),
            Err(Error::UnknownGenerator("b".into()))
        );
        let text = r#"{"generators": ["a"], "relators": [[["z", 1]]]}"#;
        assert!(matches!(Presentation::from_json(text), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn empty_fiber_assembles_to_base() {
        let base = Presentation::from_named(&["a"], &[&[("a", 3)]]).unwrap();
        let sd = SemidirectData::new(base.clone(), vec![], vec![], vec![]).unwrap();
        assert_eq!(sd.assemble(), base);
    }

    #[test]
    fn missing_action_entry_is_an_error() {
        let text = r#"{
            "generators": ["a", "b"], "relators": [],
            "fiber_generators": ["x"],
            "action": {"x": {"a": [["x", 1]]}}
        }"#;
        assert_eq!(
            SemidirectData::from_json(text),
            Err(Error::MissingAction {
                fiber: "x".into(),
                base: "b".into()
            })
        );
    }

    #[test]
    fn action_relators_have_conjugation_shape() {
        let text = r#"{
            "generators": ["a"], "relators": [[["a", 2]]],
            "fiber_generators": ["x", "y"],
            "action": {"x": {"a": [["y", 1]]}, "y": {"a": [["x", 1]]}}
        }"#;
        let p = presentation_from_json(text).unwrap();
        assert_eq!(p.generators(), &["a", "x", "y"]);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.format_word(&p.relators()[1]), "a^-1*x*a*y^-1");
    }

    #[test]
    fn json_round_trip() {
        let p = Presentation::from_named(&["x", "y"], &[&[("x", 1), ("y", -2)]]).unwrap();
        let back = Presentation::from_json(&p.to_json().to_string()).unwrap();
        assert_eq!(p, back);
    }
}
