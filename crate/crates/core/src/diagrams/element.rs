//! Finite linear combinations of diagrams with loop-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, Word};
use super::poly::LoopPoly;
use crate::error::{Error, Result};

/// Formal sum of diagrams. Terms may have different boundary words (the
/// image of `phi` mixes them); [`Element::by_word`] splits by word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Diagram, LoopPoly>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// The empty diagram, the unit for both products.
    pub fn one() -> Self {
        Element::diagram(Diagram::empty())
    }

    pub fn diagram(d: Diagram) -> Self {
        Self::term(d, LoopPoly::one())
    }

    pub fn term(d: Diagram, c: LoopPoly) -> Self {
        let mut e = Element::zero();
        e.add_term(d, c);
        e
    }

    pub fn cup(c: char) -> Self {
        Element::diagram(Diagram::cup(c))
    }

    pub fn add_term(&mut self, d: Diagram, c: LoopPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &LoopPoly) {
        for (d, x) in &other.terms {
            self.add_term(d.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &LoopPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> LoopPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &LoopPoly) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_int(&self, n: i64) -> Element {
        self.scale(&LoopPoly::integer(n))
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &LoopPoly::one());
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &LoopPoly::integer(-1));
        out
    }

    /// Components grouped by boundary word.
    pub fn by_word(&self) -> BTreeMap<Word, Element> {
        let mut out: BTreeMap<Word, Element> = BTreeMap::new();
        for (d, c) in &self.terms {
            out.entry(d.word().clone())
                .or_default()
                .add_term(d.clone(), c.clone());
        }
        out
    }

    /// The common boundary word, if the element is homogeneous and nonzero.
    pub fn word(&self) -> Option<Word> {
        let words = self.by_word();
        if words.len() == 1 {
            words.into_keys().next()
        } else {
            None
        }
    }

    /// Largest boundary length present.
    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Diagram::len).max()
    }

    /// Terms with the given boundary length.
    pub fn component_of_len(&self, len: usize) -> Element {
        let mut out = Element::zero();
        for (d, c) in self.terms.iter().filter(|(d, _)| d.len() == len) {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let groups: Vec<ElementJson> = self
            .by_word()
            .into_iter()
            .map(|(word, e)| ElementJson {
                word: word.to_string(),
                terms: e
                    .terms
                    .iter()
                    .map(|(d, c)| TermJson {
                        pairs: d.pairs(),
                        coeff: c.clone(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(groups).unwrap_or_default()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Element> {
        let groups: Vec<ElementJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("diagram element: {e}")))?;
        let mut out = Element::zero();
        for g in groups {
            for t in g.terms {
                let d = Diagram::from_pairs(Word::new(&g.word), &t.pairs)?;
                out.add_term(d, t.coeff);
            }
        }
        Ok(out)
    }
}

/// One homogeneous component as stored on disk: `{word, terms: [{pairs, coeff}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub word: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub pairs: Vec<(usize, usize)>,
    pub coeff: LoopPoly,
}

impl From<Diagram> for Element {
    fn from(d: Diagram) -> Self {
        Element::diagram(d)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{d}]")?;
        }
        Ok(())
    }
}

/// Rational multiple of an element, convenient in tests.
pub fn rational_multiple(e: &Element, r: BigRational) -> Element {
    e.scale(&LoopPoly::constant(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_prunes_terms() {
        let x = Element::cup('c');
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.add(&x).coefficient(&Diagram::cup('c')), LoopPoly::integer(2));
    }

    #[test]
    fn json_round_trip() {
        let mut x = Element::cup('c').scale(&LoopPoly::delta('d'));
        x.add_term(Diagram::empty(), "d_c^2+1".parse().unwrap());
        let v = x.to_json_value();
        assert_eq!(Element::from_json_value(&v).unwrap(), x);
        assert_eq!(x.by_word().len(), 2);
        assert_eq!(x.word(), None);
        assert_eq!(Element::cup('c').word(), Some(Word::new("cc")));
    }
}
