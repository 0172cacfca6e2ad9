//! Hermiller's complete rewriting system for the surface group of genus g.
//!
//! Rules, in their fixed order:
//! the 4g free reductions x x̄ -> 1, then
//!
//! * (R5) a_g b_g -> [b_{g-1}, a_{g-1}] ... [b_1, a_1] b_g a_g
//! * (R6) ā_g b̄_g -> b̄_g ā_g [b_{g-1}, a_{g-1}] ... [b_1, a_1]
//! * (R7) a_g b̄_g -> b̄_g [a_1, b_1] ... [a_{g-1}, b_{g-1}] a_g
//! * (R8) ā_g [b_{g-1}, a_{g-1}] ... [b_1, a_1] b_g -> b_g ā_g

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{check_genus, comm, GenKind, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub label: String,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    genus: u32,
    rules: Vec<Rule>,
    /// Rule indices grouped by the last letter of their left side.
    by_last: HashMap<Letter, Vec<usize>>,
}

/// Redex selection for the literal one-step rewriting used in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Redex with the smallest start position; ties broken by rule order.
    Leftmost,
    /// Redex with the largest start position; ties broken by rule order.
    Rightmost,
}

fn fuel_for(len: usize) -> usize {
    10 * (len + 1) * (len + 1)
}

impl RuleSet {
    pub fn new(genus: u32) -> Result<Self> {
        check_genus(genus)?;
        let g = genus;
        let a = Letter::a;
        let b = Letter::b;
        let mut rules = Vec::new();
        for i in 1..=g {
            for x in [a(i), a(i).inv(), b(i), b(i).inv()] {
                rules.push(Rule {
                    label: format!("free {x}{}", x.inv()),
                    lhs: vec![x, x.inv()],
                    rhs: vec![],
                });
            }
        }
        // [b_{g-1}, a_{g-1}] ... [b_1, a_1], the literal inverse of P_{g-1}.
        let pbar: Vec<Letter> = (1..g).rev().flat_map(|i| comm(b(i), a(i))).collect();
        let p: Vec<Letter> = (1..g).flat_map(|i| comm(a(i), b(i))).collect();
        let cat = |parts: &[&[Letter]]| parts.concat();
        rules.push(Rule {
            label: "R5".into(),
            lhs: vec![a(g), b(g)],
            rhs: cat(&[&pbar, &[b(g), a(g)]]),
        });
        rules.push(Rule {
            label: "R6".into(),
            lhs: vec![a(g).inv(), b(g).inv()],
            rhs: cat(&[&[b(g).inv(), a(g).inv()], &pbar]),
        });
        rules.push(Rule {
            label: "R7".into(),
            lhs: vec![a(g), b(g).inv()],
            rhs: cat(&[&[b(g).inv()], &p, &[a(g)]]),
        });
        rules.push(Rule {
            label: "R8".into(),
            lhs: cat(&[&[a(g).inv()], &pbar, &[b(g)]]),
            rhs: vec![b(g), a(g).inv()],
        });
        let mut by_last: HashMap<Letter, Vec<usize>> = HashMap::new();
        for (k, r) in rules.iter().enumerate() {
            by_last.entry(*r.lhs.last().unwrap()).or_default().push(k);
        }
        Ok(RuleSet { genus, rules, by_last })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Rule index whose left side is a suffix of `stack`, preferring the
    /// longest (earliest starting) match, then rule order.
    fn suffix_match(&self, stack: &[Letter]) -> Option<usize> {
        let last = stack.last()?;
        let mut best: Option<usize> = None;
        for &k in self.by_last.get(last)? {
            let lhs = &self.rules[k].lhs;
            if stack.ends_with(lhs) {
                match best {
                    Some(j) if self.rules[j].lhs.len() >= lhs.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Normal form of a letter sequence.
    ///
    /// Scans left to right keeping an irreducible prefix on a stack; each
    /// incoming letter can only complete a redex ending at the top, which is
    /// then replaced and its right side pushed back onto the input. The
    /// number of rule applications is bounded by 10 (len + 1)^2.
    pub fn normalize(&self, letters: &[Letter]) -> Result<Vec<Letter>> {
        self.normalize_onto(Vec::with_capacity(letters.len()), letters)
    }

    /// Like [`RuleSet::normalize`] for `prefix ++ letters`, where `prefix`
    /// must already be irreducible.
    pub fn normalize_onto(&self, prefix: Vec<Letter>, letters: &[Letter]) -> Result<Vec<Letter>> {
        let fuel = fuel_for(prefix.len() + letters.len());
        let mut stack = prefix;
        let mut pending: Vec<Letter> = letters.iter().rev().copied().collect();
        let mut steps = 0usize;
        while let Some(l) = pending.pop() {
            stack.push(l);
            if let Some(k) = self.suffix_match(&stack) {
                steps += 1;
                if steps > fuel {
                    return Err(Error::FuelExhausted { fuel });
                }
                let rule = &self.rules[k];
                stack.truncate(stack.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
            }
        }
        Ok(stack)
    }

    pub fn is_irreducible(&self, letters: &[Letter]) -> bool {
        (1..=letters.len()).all(|end| self.suffix_match(&letters[..end]).is_none())
    }

    /// All redexes as (start, rule index), sorted by start then rule order.
    pub fn redexes(&self, letters: &[Letter]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for start in 0..letters.len() {
            for (k, r) in self.rules.iter().enumerate() {
                if letters[start..].starts_with(&r.lhs) {
                    out.push((start, k));
                }
            }
        }
        out
    }

    fn apply_at(&self, letters: &[Letter], start: usize, k: usize) -> Vec<Letter> {
        let r = &self.rules[k];
        let mut out = letters[..start].to_vec();
        out.extend_from_slice(&r.rhs);
        out.extend_from_slice(&letters[start + r.lhs.len()..]);
        out
    }

    /// One rewriting step with the given strategy, or None if irreducible.
    pub fn step(&self, letters: &[Letter], strategy: Strategy) -> Option<Vec<Letter>> {
        let rs = self.redexes(letters);
        let pick = match strategy {
            Strategy::Leftmost => rs.first().copied(),
            Strategy::Rightmost => {
                let last_start = rs.last()?.0;
                rs.iter().copied().find(|&(s, _)| s == last_start)
            }
        }?;
        Some(self.apply_at(letters, pick.0, pick.1))
    }

    /// Rewrite to normal form one literal step at a time.
    pub fn rewrite_with(&self, letters: &[Letter], strategy: Strategy) -> Result<Vec<Letter>> {
        let fuel = fuel_for(letters.len());
        let mut cur = letters.to_vec();
        for _ in 0..=fuel {
            match self.step(&cur, strategy) {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
        Err(Error::FuelExhausted { fuel })
    }

    /// Enumerate and resolve every critical pair (overlaps and inclusions
    /// of left sides).
    pub fn check_local_confluence(&self) -> ConfluenceReport {
        let mut report = ConfluenceReport { genus: self.genus, pairs: 0, failures: Vec::new() };
        let n = self.rules.len();
        for i in 0..n {
            for j in 0..n {
                let li = &self.rules[i].lhs;
                let lj = &self.rules[j].lhs;
                // Proper overlaps: a suffix of li equals a prefix of lj.
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let mut overlap = li.clone();
                        overlap.extend_from_slice(&lj[k..]);
                        let left = self.apply_at(&overlap, 0, i);
                        let right = self.apply_at(&overlap, li.len() - k, j);
                        self.resolve(&mut report, i, j, overlap, left, right);
                    }
                }
                // Inclusions: lj occurs inside li.
                if i != j && lj.len() <= li.len() {
                    for start in 0..=li.len() - lj.len() {
                        if li[start..start + lj.len()] == lj[..] {
                            let left = self.apply_at(li, 0, i);
                            let right = self.apply_at(li, start, j);
                            self.resolve(&mut report, i, j, li.clone(), left, right);
                        }
                    }
                }
            }
        }
        report
    }

    fn resolve(
        &self,
        report: &mut ConfluenceReport,
        i: usize,
        j: usize,
        overlap: Vec<Letter>,
        left: Vec<Letter>,
        right: Vec<Letter>,
    ) {
        report.pairs += 1;
        let nl = self.normalize(&left);
        let nr = self.normalize(&right);
        if nl.is_err() || nl != nr {
            let show = |v: &Result<Vec<Letter>>| match v {
                Ok(ls) => Word::raw(self.genus, ls.clone()).to_string(),
                Err(e) => e.to_string(),
            };
            report.failures.push(CriticalPairFailure {
                rules: (self.rules[i].label.clone(), self.rules[j].label.clone()),
                overlap: Word::raw(self.genus, overlap).to_string(),
                left: show(&nl),
                right: show(&nr),
            });
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPairFailure {
    pub rules: (String, String),
    pub overlap: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub genus: u32,
    pub pairs: usize,
    pub failures: Vec<CriticalPairFailure>,
}

impl ConfluenceReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StrategyReport {
    pub genus: u32,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Words whose leftmost, rightmost and stack normal forms differ.
    pub failures: Vec<String>,
}

impl StrategyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Normalize `samples` random unreduced words of length at most `max_len`
/// with leftmost and rightmost literal rewriting and with the stack
/// normalizer, and compare.
pub fn verify_strategies(genus: u32, samples: usize, max_len: usize, seed: u64) -> Result<StrategyReport> {
    check_genus(genus)?;
    let rs = rules(genus);
    let failures: Vec<Option<String>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let len = rng.gen_range(0..=max_len);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    let kind = if rng.gen_bool(0.5) { GenKind::A } else { GenKind::B };
                    Letter::new(kind, rng.gen_range(1..=genus), rng.gen_bool(0.5))
                })
                .collect();
            let fast = rs.normalize(&letters);
            let left = rs.rewrite_with(&letters, Strategy::Leftmost);
            let right = rs.rewrite_with(&letters, Strategy::Rightmost);
            match (fast, left, right) {
                (Ok(f), Ok(l), Ok(r)) if f == l && l == r => None,
                _ => Some(Word::raw(genus, letters).to_string()),
            }
        })
        .collect();
    Ok(StrategyReport { genus, samples, max_len, seed, failures: failures.into_iter().flatten().collect() })
}

/// Shared rule set for a genus. Panics if `genus < 2`.
pub fn rules(genus: u32) -> Arc<RuleSet> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<RuleSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().unwrap().get(&genus) {
        return r.clone();
    }
    let r = Arc::new(RuleSet::new(genus).expect("genus must be at least 2"));
    cache.write().unwrap().entry(genus).or_insert(r).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str, g: u32) -> String {
        Word::parse(s, g).unwrap().normal_form().to_string()
    }

    #[test]
    fn rule_examples_genus_two() {
        assert_eq!(nf("a2b2", 2), "b1a1B1A1b2a2");
        assert_eq!(nf("A2B2", 2), "B2A2b1a1B1A1");
        assert_eq!(nf("a2B2", 2), "B2a1b1A1B1a2");
        assert_eq!(nf("A2b1a1B1A1b2", 2), "b2A2");
        assert_eq!(nf("a1A1b2B2", 2), "1");
    }

    #[test]
    fn relator_is_trivial() {
        for g in 2..=5 {
            assert!(crate::word::relator(g).normal_form().is_empty(), "genus {g}");
        }
    }

    #[test]
    fn rule_count() {
        for g in 2..=4 {
            assert_eq!(RuleSet::new(g).unwrap().rules().len(), 4 * g as usize + 4);
        }
    }

    #[test]
    fn critical_pairs_resolve() {
        for g in 2..=5 {
            let r = RuleSet::new(g).unwrap().check_local_confluence();
            assert!(r.ok(), "{:?}", r.failures);
            assert!(r.pairs > 0);
        }
    }

    #[test]
    fn literal_strategies_agree_with_stack() {
        let g = 2;
        let rs = rules(g);
        let w = Word::parse("a2a2b2b2A1b2", g).unwrap();
        let fast = rs.normalize(w.letters()).unwrap();
        assert_eq!(rs.rewrite_with(w.letters(), Strategy::Leftmost).unwrap(), fast);
        assert_eq!(rs.rewrite_with(w.letters(), Strategy::Rightmost).unwrap(), fast);
    }

    #[test]
    fn random_words_are_strategy_independent() {
        let r = verify_strategies(3, 200, 30, 7).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
    }
}
