//! Sign-twisted coefficient systems Z_S, where the generators in S act by -1.
//!
//! Syntax: factors separated by `|`, each a comma-separated list of
//! generators or `-` for the empty set, e.g. `a1,b2|a3` or `-|b1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{check_genus, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSet {
    genus: u32,
    members: BTreeSet<Generator>,
}

impl SignSet {
    pub fn empty(genus: u32) -> Self {
        SignSet { genus, members: BTreeSet::new() }
    }

    pub fn new(genus: u32, members: impl IntoIterator<Item = Generator>) -> Result<Self> {
        check_genus(genus)?;
        let members: BTreeSet<Generator> = members.into_iter().collect();
        if let Some(g) = members.iter().find(|g| g.index == 0 || g.index > genus) {
            return Err(Error::IndexOutOfRange { index: g.index, genus });
        }
        Ok(SignSet { genus, members })
    }

    pub fn parse(s: &str, genus: u32) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return SignSet::new(genus, []);
        }
        let gens = s.split(',').map(|t| Generator::parse(t.trim())).collect::<Result<Vec<_>>>()?;
        SignSet::new(genus, gens)
    }

    /// All 2^{2g} subsets, in order of their bit masks over a_1, b_1, ..., a_g, b_g.
    pub fn all(genus: u32) -> Vec<SignSet> {
        let gens = Generator::all(genus);
        (0u64..1 << gens.len())
            .map(|mask| SignSet {
                genus,
                members: gens.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, g)| *g).collect(),
            })
            .collect()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.members.contains(&g)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = Generator> + '_ {
        self.members.iter().copied()
    }

    /// (-1)^{number of letters of w whose generator lies in S}.
    pub fn sign(&self, w: &Word) -> i32 {
        if self.members.is_empty() {
            return 1;
        }
        w.sign_in(&|g| self.members.contains(&g))
    }

    pub fn symmetric_difference(&self, other: &SignSet) -> SignSet {
        assert_eq!(self.genus, other.genus);
        SignSet { genus: self.genus, members: self.members.symmetric_difference(&other.members).copied().collect() }
    }
}

impl fmt::Display for SignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.members.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for SignSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One sign set per tensor factor; the module Z_{S_1} ⊗ ... ⊗ Z_{S_n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientSystem {
    sets: Vec<SignSet>,
}

impl CoefficientSystem {
    pub fn new(sets: Vec<SignSet>) -> Self {
        CoefficientSystem { sets }
    }

    pub fn trivial(genera: &[u32]) -> Self {
        CoefficientSystem { sets: genera.iter().map(|&g| SignSet::empty(g)).collect() }
    }

    pub fn parse(s: &str, genera: &[u32]) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != genera.len() {
            return Err(Error::Parse(format!(
                "coefficient system {s:?} has {} factors, expected {}",
                parts.len(),
                genera.len()
            )));
        }
        let sets = parts.iter().zip(genera).map(|(p, &g)| SignSet::parse(p, g)).collect::<Result<Vec<_>>>()?;
        Ok(CoefficientSystem { sets })
    }

    pub fn genera(&self) -> Vec<u32> {
        self.sets.iter().map(|s| s.genus).collect()
    }

    pub fn sets(&self) -> &[SignSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &SignSet {
        &self.sets[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.sets.iter().all(|s| s.is_empty())
    }

    /// Coefficients of a product: factorwise symmetric difference.
    pub fn tensor(&self, other: &CoefficientSystem) -> Result<CoefficientSystem> {
        if self.genera() != other.genera() {
            return Err(Error::CoefficientMismatch(format!("{self} vs {other}")));
        }
        Ok(CoefficientSystem {
            sets: self.sets.iter().zip(&other.sets).map(|(a, b)| a.symmetric_difference(b)).collect(),
        })
    }

    /// Sign by which the tuple of group elements acts.
    pub fn sign(&self, words: &[Word]) -> i32 {
        self.sets.iter().zip(words).map(|(s, w)| s.sign(w)).product()
    }

    /// Concatenate the factors of two systems.
    pub fn concat(&self, other: &CoefficientSystem) -> CoefficientSystem {
        CoefficientSystem { sets: self.sets.iter().chain(&other.sets).cloned().collect() }
    }
}

impl fmt::Display for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl Serialize for CoefficientSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let c = CoefficientSystem::parse("a1,b2|-", &[2, 3]).unwrap();
        assert_eq!(c.to_string(), "a1,b2|-");
        assert!(CoefficientSystem::parse("a3|-", &[2, 3]).is_err());
        assert!(CoefficientSystem::parse("a1", &[2, 3]).is_err());
        assert!(CoefficientSystem::parse("A1|-", &[2, 3]).is_err());
    }

    #[test]
    fn signs() {
        let s = SignSet::parse("a1", 2).unwrap();
        assert_eq!(s.sign(&Word::parse("a1b1A1", 2).unwrap()), 1);
        assert_eq!(s.sign(&Word::parse("a1b1", 2).unwrap()), -1);
        assert_eq!(SignSet::all(2).len(), 16);
    }

    #[test]
    fn tensor_is_symmetric_difference() {
        let x = CoefficientSystem::parse("a1,b1|a2", &[2, 2]).unwrap();
        let y = CoefficientSystem::parse("a1|a2,b2", &[2, 2]).unwrap();
        assert_eq!(x.tensor(&y).unwrap().to_string(), "b1|b2");
    }
}
