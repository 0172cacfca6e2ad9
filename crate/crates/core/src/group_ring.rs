//! The integral group ring Z[π_g] on normal-form words, and Fox calculus.
//!
//! Text syntax: a signed sum of `<int>*<word>` terms, e.g. `1*1-1*a1b1A1`;
//! `0` is the zero element.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{check_genus, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    genus: u32,
    /// Normal-form words with nonzero coefficients, in shortlex order.
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero(genus: u32) -> Self {
        GroupRingElement { genus, terms: BTreeMap::new() }
    }

    pub fn one(genus: u32) -> Self {
        Self::from_word(&Word::identity(genus))
    }

    /// The element 1·N(w).
    pub fn from_word(w: &Word) -> Self {
        let mut x = Self::zero(w.genus());
        x.add_term(w.normal_form(), BigInt::one());
        x
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(&w.normal_form()).cloned().unwrap_or_default()
    }

    /// Add `c·w` where `w` is already a normal form.
    pub(crate) fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(format!("genus {}", self.genus), format!("genus {}", other.genus)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.genus);
        if c.is_zero() {
            return out;
        }
        for (w, d) in &self.terms {
            out.terms.insert(w.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.genus);
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                out.add_term(x.mul_normal(y), c * d);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let w = w.normal_form();
        let mut out = Self::zero(self.genus);
        for (x, c) in &self.terms {
            out.add_term(w.mul_normal(x), c.clone());
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image in Z under the character sending generators in `set` to -1.
    pub fn sign_evaluate(&self, set: &impl Fn(Generator) -> bool) -> BigInt {
        self.terms
            .iter()
            .map(|(w, c)| if w.sign_in(set) < 0 { -c } else { c.clone() })
            .sum()
    }

    pub fn parse(text: &str, genus: u32) -> Result<Self> {
        check_genus(genus)?;
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(Self::zero(genus));
        }
        if t.is_empty() {
            return Err(Error::Parse("empty group ring element".into()));
        }
        let mut out = Self::zero(genus);
        let mut rest = t.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(Error::Parse(format!("expected + or - in {text:?}"))),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (c, w) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term {term:?} is not of the form <int>*<word>")))?;
            let mut c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if neg {
                c = -c;
            }
            let w = Word::parse(w, genus)?;
            out.add_term(w.normal_form(), c);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                write!(f, "-{}*{w}", -c)?;
            } else if k == 0 {
                write!(f, "{c}*{w}")?;
            } else {
                write!(f, "+{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Fox derivative ∂w/∂u of the literal (unreduced) word `w`, with terms
/// normalized: ∂(v_1...v_n)/∂u = Σ_k v_1...v_{k-1} ∂v_k/∂u, where
/// ∂u/∂u = 1 and ∂ū/∂u = -ū.
pub fn fox_derivative(w: &Word, u: Generator) -> GroupRingElement {
    let g = w.genus();
    let mut out = GroupRingElement::zero(g);
    let ls = w.letters();
    for (k, l) in ls.iter().enumerate() {
        if l.generator() != u {
            continue;
        }
        if l.inverted {
            out.add_term(w.prefix(k + 1).normal_form(), BigInt::from(-1));
        } else {
            out.add_term(w.prefix(k).normal_form(), BigInt::one());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::relator;

    #[test]
    fn text_roundtrip() {
        let x = GroupRingElement::parse("1*1-1*a1b1A1", 2).unwrap();
        assert_eq!(x.to_string(), "1*1-1*a1b1A1");
        let y = GroupRingElement::parse("-2*a2b2 + 3*1", 2).unwrap();
        assert_eq!(y.to_string(), "3*1-2*b1a1B1A1b2a2");
        assert_eq!(GroupRingElement::parse("0", 2).unwrap().to_string(), "0");
        assert!(GroupRingElement::parse("1*c1", 2).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = GroupRingElement::parse("1*a1-1*a1", 2).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn fox_of_relator_genus_two() {
        // ∂R/∂a_1 = 1 - a_1 b_1 ā_1 and ∂R/∂b_2 = P_1 a_2 - 1.
        let r = relator(2);
        assert_eq!(fox_derivative(&r, Generator::a(1)).to_string(), "1*1-1*a1b1A1");
        assert_eq!(fox_derivative(&r, Generator::b(2)).to_string(), "-1*1+1*a1b1A1B1a2");
    }
}
