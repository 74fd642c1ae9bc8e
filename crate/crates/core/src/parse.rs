//! Textual group ring elements, e.g. `1 + a - a^2 + a*b - 3*a^2*b` or
//! `1 + (2 - 20a - 9b + 18ab)(1 - a^2)(1 + b^2)`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := [+|-] term { (+|-) term }
//! term   := factor { [*] factor }        juxtaposition multiplies
//! factor := atom [ ^ [-] integer ]
//! atom   := integer | generator | ( expr )
//! ```
//!
//! Generator names are matched longest-first against the group's named
//! generators, so `ab` reads as `a*b` when `a` and `b` are generators.
//! Groups without named generators accept `g<index>` atoms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::Element;
use crate::scalar::Scalar;

/// Names for every group element.
///
/// An element reachable as an ordered power product `a^i*b^j*...` with
/// `0 <= i < |a|`, ... takes the one of least total exponent; every other
/// element takes a shortest breadth-first generator word.
pub struct ElementNames {
    names: Vec<String>,
}

/// Bound on the number of ordered power products enumerated.
const MAX_POWER_PRODUCTS: usize = 1 << 14;

impl ElementNames {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let gens = group.generators();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(vec![]);
        let orders: Vec<usize> = gens.iter().map(|(_, g)| group.element_order(*g)).collect();
        if orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o))
            .is_some_and(|t| t <= MAX_POWER_PRODUCTS)
        {
            let mut products: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
            for (k, (_, s)) in gens.iter().enumerate() {
                let mut next = Vec::with_capacity(products.len() * orders[k]);
                for (x, w) in &products {
                    let (mut y, mut w2) = (*x, w.clone());
                    for _ in 0..orders[k] {
                        next.push((y, w2.clone()));
                        y = group.mul(y, *s);
                        w2.push(k);
                    }
                }
                products = next;
            }
            products.sort_by_key(|(_, w)| w.len());
            for (x, w) in products {
                if words[x].is_none() {
                    words[x] = Some(w);
                }
            }
        }
        let mut queue = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut bfs: Vec<Option<Vec<usize>>> = vec![None; n];
        bfs[0] = Some(vec![]);
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, (_, s)) in gens.iter().enumerate() {
                let y = group.mul(x, *s);
                if !seen[y] {
                    seen[y] = true;
                    let mut w = bfs[x].clone().unwrap();
                    w.push(k);
                    bfs[y] = Some(w);
                    queue.push(y);
                }
            }
            i += 1;
        }
        let names = words
            .into_iter()
            .zip(bfs)
            .enumerate()
            .map(|(idx, (w, b))| match w.or(b) {
                Some(w) if w.is_empty() => "1".to_string(),
                Some(w) => format_runs(&w, gens),
                None => format!("g{idx}"),
            })
            .collect();
        ElementNames { names }
    }

    pub fn name(&self, g: usize) -> String {
        self.names[g].clone()
    }
}

fn format_runs(word: &[usize], gens: &[(String, usize)]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let name = &gens[word[i]].0;
        parts.push(if j - i == 1 {
            name.clone()
        } else {
            format!("{name}^{}", j - i)
        });
        i = j;
    }
    parts.join("*")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str, group: &FiniteGroup) -> Result<Vec<(usize, Tok)>> {
    let mut gens: Vec<(&str, usize)> = group.generators().iter().map(|(n, g)| (n.as_str(), *g)).collect();
    gens.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
    let err = |offset: usize, message: String| Error::Parse { offset, message };
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < text.len() {
        let rest = &text[pos..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{b7}' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            pos += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            let len = rest.bytes().take_while(u8::is_ascii_digit).count();
            let v = rest[..len]
                .parse::<i64>()
                .map_err(|_| err(pos, "integer literal too large".into()))?;
            out.push((pos, Tok::Int(v)));
            pos += len;
            continue;
        }
        if let Some((name, g)) = gens.iter().find(|(n, _)| rest.starts_with(n)) {
            out.push((pos, Tok::Gen(*g)));
            pos += name.len();
            continue;
        }
        if let Some(digits) = rest.strip_prefix('g') {
            let len = digits.bytes().take_while(u8::is_ascii_digit).count();
            if len > 0 {
                let idx: usize = digits[..len]
                    .parse()
                    .map_err(|_| err(pos, "bad element index".into()))?;
                if idx >= group.order() {
                    return Err(err(pos, format!("element index {idx} out of range")));
                }
                out.push((pos, Tok::Gen(idx)));
                pos += 1 + len;
                continue;
            }
        }
        return Err(err(pos, format!("unexpected `{c}`")));
    }
    Ok(out)
}

struct Parser<'a, T: Scalar> {
    group: &'a Arc<FiniteGroup>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<'a, T: Scalar> Parser<'a, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn fail<R>(&self, message: &str) -> Result<R> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Element<T>> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.negate() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element<T>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Int(_) | Tok::Gen(_) | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element<T>> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let Some(Tok::Int(k)) = self.peek().cloned() else {
            return self.fail("expected an exponent");
        };
        self.pos += 1;
        let k = if neg { -k } else { k };
        base.power(k).or_else(|e| match e {
            Error::NotUnit => self.fail("negative power of a non-unit"),
            other => Err(other),
        })
    }

    fn atom(&mut self) -> Result<Element<T>> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Element::constant(self.group, T::from(v)))
            }
            Some(Tok::Gen(g)) => {
                self.pos += 1;
                Ok(Element::basis(self.group, g))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => self.fail("expected a term"),
        }
    }
}

/// Parses an element of `ZG` against the group's generator names.
pub fn parse_element<T: Scalar>(group: &Arc<FiniteGroup>, text: &str) -> Result<Element<T>> {
    let toks = lex(text, group)?;
    let mut p = Parser {
        group,
        toks,
        pos: 0,
        end: text.len(),
        _marker: std::marker::PhantomData,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

/// Parses a single group element written as a word, e.g. `a^2*b`.
pub fn parse_group_element(group: &Arc<FiniteGroup>, text: &str) -> Result<usize> {
    let e: Element<i64> = parse_element(group, text)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((g, c)), None) if *c == 1 => Ok(g),
        _ => Err(Error::Parse {
            offset: 0,
            message: format!("`{text}` is not a group element"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_arc;

    #[test]
    fn display_and_parse_agree() {
        let g = builtin_arc("S3").unwrap();
        let text = "1 + a - a^2 + a*b - a^2*b";
        let e: Element<i64> = parse_element(&g, text).unwrap();
        assert_eq!(e.support_len(), 5);
        let back: Element<i64> = parse_element(&g, &e.display()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn juxtaposition_and_parentheses() {
        let g = builtin_arc("P").unwrap();
        let a: Element<i64> = parse_element(&g, "(1 + a)(1 - a)").unwrap();
        let b: Element<i64> = parse_element(&g, "1 - a^2").unwrap();
        assert_eq!(a, b);
        let c: Element<i64> = parse_element(&g, "18ab").unwrap();
        let d: Element<i64> = parse_element(&g, "18 * a * b").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn negative_powers() {
        let g = builtin_arc("S3").unwrap();
        let x: Element<i64> = parse_element(&g, "a^-1").unwrap();
        let y: Element<i64> = parse_element(&g, "a^2").unwrap();
        assert_eq!(x, y);
        let err = parse_element::<i64>(&g, "(1 + b)^-1").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn errors_carry_offsets() {
        let g = builtin_arc("S3").unwrap();
        assert_eq!(
            parse_element::<i64>(&g, "1 + q"),
            Err(Error::Parse {
                offset: 4,
                message: "unexpected `q`".into()
            })
        );
        assert!(parse_element::<i64>(&g, "(1 + a").is_err());
        assert!(parse_element::<i64>(&g, "1 +").is_err());
        assert!(parse_element::<i64>(&g, "a b )").is_err());
    }

    #[test]
    fn every_catalog_element_round_trips() {
        for name in crate::catalog::catalog_names(16) {
            let g = builtin_arc(&name).unwrap();
            let names = ElementNames::new(&g);
            for x in 0..g.order() {
                assert_eq!(parse_group_element(&g, &names.name(x)).unwrap(), x, "{name}");
            }
        }
    }

    #[test]
    fn group_words() {
        let g = builtin_arc("S3").unwrap();
        let ab = parse_group_element(&g, "a*b").unwrap();
        assert_eq!(ab, g.mul(g.generator("a").unwrap(), g.generator("b").unwrap()));
        assert!(parse_group_element(&g, "1 + a").is_err());
    }
}
