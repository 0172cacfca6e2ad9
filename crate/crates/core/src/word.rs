//! Letters and words in the standard generators a_i, b_i of the surface
//! group of genus g, and the special words used by the contracting homotopy.
//!
//! Text syntax: `1` is the empty word, otherwise a concatenation of tokens
//! `[abAB]<index>` where an upper-case letter is the inverse generator.
//! So `a2b1A2B1` is a_2 b_1 ā_2 b̄_1.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    A,
    B,
}

/// A generator a_i or b_i (never inverted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub index: u32,
}

impl Generator {
    pub fn a(index: u32) -> Self {
        Generator { kind: GenKind::A, index }
    }

    pub fn b(index: u32) -> Self {
        Generator { kind: GenKind::B, index }
    }

    /// The partner generator: a_k <-> b_k.
    pub fn hat(self) -> Self {
        let kind = match self.kind {
            GenKind::A => GenKind::B,
            GenKind::B => GenKind::A,
        };
        Generator { kind, index: self.index }
    }

    pub fn letter(self) -> Letter {
        Letter { kind: self.kind, index: self.index, inverted: false }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let l = Letter::parse(s)?;
        if l.inverted {
            return Err(Error::Parse(format!("expected a generator, got inverse letter {s}")));
        }
        Ok(l.generator())
    }

    /// All 2g generators in the order a_1, b_1, ..., a_g, b_g.
    pub fn all(genus: u32) -> Vec<Generator> {
        (1..=genus).flat_map(|i| [Generator::a(i), Generator::b(i)]).collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letter().fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: GenKind,
    pub index: u32,
    pub inverted: bool,
}

impl Letter {
    pub fn new(kind: GenKind, index: u32, inverted: bool) -> Self {
        Letter { kind, index, inverted }
    }

    pub fn a(index: u32) -> Self {
        Letter::new(GenKind::A, index, false)
    }

    pub fn b(index: u32) -> Self {
        Letter::new(GenKind::B, index, false)
    }

    pub fn inv(self) -> Self {
        Letter { inverted: !self.inverted, ..self }
    }

    pub fn generator(self) -> Generator {
        Generator { kind: self.kind, index: self.index }
    }

    fn parse(s: &str) -> Result<Self> {
        let mut w = parse_letters(s)?;
        if w.len() != 1 {
            return Err(Error::Parse(format!("expected a single letter, got {s:?}")));
        }
        Ok(w.pop().unwrap())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.kind, self.inverted) {
            (GenKind::A, false) => 'a',
            (GenKind::A, true) => 'A',
            (GenKind::B, false) => 'b',
            (GenKind::B, true) => 'B',
        };
        write!(f, "{c}{}", self.index)
    }
}

fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty word (write 1 for the identity)".into()));
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (kind, inverted) = match bytes[i] {
            b'a' => (GenKind::A, false),
            b'A' => (GenKind::A, true),
            b'b' => (GenKind::B, false),
            b'B' => (GenKind::B, true),
            c => {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} at offset {i} in {s:?}",
                    c as char
                )))
            }
        };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if start == i {
            return Err(Error::Parse(format!("missing index after letter at offset {} in {s:?}", start - 1)));
        }
        let index: u32 = s[start..i]
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in {s:?}")))?;
        if index == 0 {
            return Err(Error::Parse(format!("generator indices start at 1 in {s:?}")));
        }
        out.push(Letter { kind, index, inverted });
    }
    Ok(out)
}

pub fn check_genus(genus: u32) -> Result<()> {
    if genus < 2 {
        Err(Error::BadGenus(genus))
    } else {
        Ok(())
    }
}

/// A word over the alphabet of genus `genus`. Not necessarily reduced.
///
/// Words are ordered shortlex: by genus, then length, then letterwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    genus: u32,
    letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus
            .cmp(&other.genus)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity(genus: u32) -> Self {
        Word { genus, letters: Vec::new() }
    }

    pub fn from_letters(genus: u32, letters: Vec<Letter>) -> Result<Self> {
        check_genus(genus)?;
        if let Some(l) = letters.iter().find(|l| l.index > genus) {
            return Err(Error::IndexOutOfRange { index: l.index, genus });
        }
        Ok(Word { genus, letters })
    }

    /// Internal constructor for letter lists already known to be in range.
    pub(crate) fn raw(genus: u32, letters: Vec<Letter>) -> Self {
        Word { genus, letters }
    }

    pub fn letter(genus: u32, l: Letter) -> Self {
        Word { genus, letters: vec![l] }
    }

    pub fn parse(text: &str, genus: u32) -> Result<Self> {
        Word::from_letters(genus, parse_letters(text)?)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Literal inverse: reversed with every letter inverted.
    pub fn inverse(&self) -> Word {
        Word::raw(self.genus, self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    /// Literal concatenation, no reduction.
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.genus, other.genus);
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word::raw(self.genus, letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word::raw(self.genus, letters)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::raw(self.genus, self.letters[..n].to_vec())
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.letters.ends_with(&suffix.letters)
    }

    /// Normal form under the complete rewriting system for this genus.
    ///
    /// Panics if the fuel bound is exhausted, which would mean the rewriting
    /// system is not terminating; use [`Word::try_normal_form`] to observe
    /// that as an error instead.
    pub fn normal_form(&self) -> Word {
        self.try_normal_form().expect("rewriting system failed to terminate")
    }

    pub fn try_normal_form(&self) -> Result<Word> {
        let rules = rewriting::rules(self.genus);
        let letters = rules.normalize(&self.letters)?;
        Ok(Word::raw(self.genus, letters))
    }

    pub fn is_normal(&self) -> bool {
        rewriting::rules(self.genus).is_irreducible(&self.letters)
    }

    /// Normal form of the product, assuming `self` is already normal.
    pub fn mul_normal(&self, other: &Word) -> Word {
        let rules = rewriting::rules(self.genus);
        let letters = rules
            .normalize_onto(self.letters.clone(), &other.letters)
            .expect("rewriting system failed to terminate");
        Word::raw(self.genus, letters)
    }

    /// Number of letters whose generator lies in `set`, mod 2, as a sign.
    pub fn sign_in(&self, set: &impl Fn(Generator) -> bool) -> i32 {
        let odd = self.letters.iter().filter(|l| set(l.generator())).count() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }

    /// Exponent sum of a generator.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| if l.inverted { -1 } else { 1 })
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// True when N(y) is a literal suffix of N(x). Both inputs must already be
/// normal forms.
pub fn ends_like(x: &Word, y: &Word) -> Result<bool> {
    if x.genus != y.genus {
        return Err(Error::GenusMismatch(x.to_string(), y.to_string()));
    }
    for w in [x, y] {
        if !w.is_normal() {
            return Err(Error::NotNormal(w.to_string()));
        }
    }
    Ok(x.ends_with(y))
}

/// [x, y] = x y x̄ ȳ.
pub(crate) fn comm(x: Letter, y: Letter) -> Vec<Letter> {
    vec![x, y, x.inv(), y.inv()]
}

/// c_l = [a_l, b_l] = a_l b_l ā_l b̄_l.
pub fn c_word(genus: u32, l: u32) -> Word {
    Word::raw(genus, comm(Letter::a(l), Letter::b(l)))
}

/// P_l = c_1 ... c_l (literal; not a normal form when l = g).
pub fn p_word(genus: u32, l: u32) -> Word {
    let mut letters = Vec::new();
    for i in 1..=l {
        letters.extend(comm(Letter::a(i), Letter::b(i)));
    }
    Word::raw(genus, letters)
}

/// The defining relator R_g = P_g.
pub fn relator(genus: u32) -> Word {
    p_word(genus, genus)
}

/// U = ā_g P̄_{g-1}.
pub fn u_word(genus: u32) -> Word {
    let mut letters = vec![Letter::a(genus).inv()];
    letters.extend_from_slice(p_word(genus, genus - 1).inverse().letters());
    Word::raw(genus, letters)
}

/// T_n = (a_g P_{g-1})^n a_g.
pub fn t_word(genus: u32, n: usize) -> Word {
    let mut block = vec![Letter::a(genus)];
    block.extend_from_slice(p_word(genus, genus - 1).letters());
    let mut w = Word::raw(genus, block).pow(n);
    w.letters.push(Letter::a(genus));
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialWord {
    U,
    T(usize),
    P(u32),
    C(u32),
    Relator,
}

/// The named special words. U, T_n, P_l and c_l with l < g are returned as
/// normal forms (and checked to be fixed by the rewriting system); P_g,
/// c_g and the relator are returned literally since they are not reduced.
pub fn special_word(kind: SpecialWord, genus: u32) -> Result<Word> {
    check_genus(genus)?;
    let (w, normal) = match kind {
        SpecialWord::U => (u_word(genus), true),
        SpecialWord::T(n) => (t_word(genus, n), true),
        SpecialWord::P(l) | SpecialWord::C(l) if l > genus => {
            return Err(Error::IndexOutOfRange { index: l, genus })
        }
        SpecialWord::P(l) => (p_word(genus, l), l < genus),
        SpecialWord::C(l) => {
            if l == 0 {
                return Err(Error::IndexOutOfRange { index: 0, genus });
            }
            (c_word(genus, l), l < genus)
        }
        SpecialWord::Relator => (relator(genus), false),
    };
    if normal {
        debug_assert_eq!(w.normal_form(), w, "special word {w} should be a normal form");
    }
    Ok(w)
}

/// Suffix shape of a normal form that decides the value of s_1 on β_g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuffixClass {
    /// Ends like T_n but not T_{n+1}.
    EndsLikeT(usize),
    /// Ends like U^n but not U^{n+1}, with n >= 1.
    EndsLikeU(usize),
    Neither,
}

/// Classify a normal-form word by its maximal T_n or U^n suffix.
pub fn classify_s1_suffix(y: &Word) -> SuffixClass {
    let g = y.genus;
    let ls = y.letters();
    if ls.last() == Some(&Letter::a(g)) {
        // T_{n+1} = a_g P_{g-1} T_n, so peel blocks a_g P_{g-1} off the end.
        let p = p_word(g, g - 1);
        let mut block = vec![Letter::a(g)];
        block.extend_from_slice(p.letters());
        let mut end = ls.len() - 1;
        let mut n = 0;
        while end >= block.len() && ls[end - block.len()..end] == block[..] {
            end -= block.len();
            n += 1;
        }
        return SuffixClass::EndsLikeT(n);
    }
    let u = u_word(g);
    let ul = u.letters();
    let mut end = ls.len();
    let mut n = 0;
    while end >= ul.len() && ls[end - ul.len()..end] == ul[..] {
        end -= ul.len();
        n += 1;
    }
    if n >= 1 {
        SuffixClass::EndsLikeU(n)
    } else {
        SuffixClass::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_format_roundtrip() {
        let w = Word::parse("a2b1A2B1", 2).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "a2b1A2B1");
        assert_eq!(Word::parse("1", 3).unwrap().to_string(), "1");
        assert!(Word::parse("a3", 2).is_err());
        assert!(Word::parse("c1", 2).is_err());
        assert!(Word::parse("a", 2).is_err());
        assert!(Word::parse("a0", 2).is_err());
        assert!(Word::parse("a1", 1).is_err());
    }

    #[test]
    fn special_words_genus_two() {
        assert_eq!(u_word(2).to_string(), "A2b1a1B1A1");
        assert_eq!(t_word(2, 0).to_string(), "a2");
        assert_eq!(t_word(2, 1).to_string(), "a2a1b1A1B1a2");
        assert_eq!(relator(2).to_string(), "a1b1A1B1a2b2A2B2");
    }

    #[test]
    fn classify_examples() {
        let g = 3;
        assert_eq!(classify_s1_suffix(&t_word(g, 0)), SuffixClass::EndsLikeT(0));
        assert_eq!(classify_s1_suffix(&t_word(g, 3)), SuffixClass::EndsLikeT(3));
        let y = Word::parse("b1", g).unwrap().concat(&t_word(g, 2));
        assert_eq!(classify_s1_suffix(&y), SuffixClass::EndsLikeT(2));
        assert_eq!(classify_s1_suffix(&u_word(g).pow(4)), SuffixClass::EndsLikeU(4));
        assert_eq!(classify_s1_suffix(&Word::identity(g)), SuffixClass::Neither);
        assert_eq!(classify_s1_suffix(&Word::parse("a1", g).unwrap()), SuffixClass::Neither);
    }

    #[test]
    fn ends_like_requires_normal_forms() {
        let x = Word::parse("b1a2", 2).unwrap();
        let y = Word::parse("a2", 2).unwrap();
        assert!(ends_like(&x, &y).unwrap());
        let bad = Word::parse("a2b2", 2).unwrap();
        assert!(matches!(ends_like(&bad, &y), Err(Error::NotNormal(_))));
    }
}
