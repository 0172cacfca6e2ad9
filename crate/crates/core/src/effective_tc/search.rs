//! Exhaustive search for nonvanishing products of degree-one classes of
//! π_g × π_g, flagging which factors are (effective) zero-divisors.
//!
//! A coefficient menu lists the systems to draw classes from, one `S1|S2`
//! per line, `#` starting a comment. For each system the pool holds ν (when
//! the system is nontrivial on both factors) and the sums of at most two
//! presentation generators of H^1 with coefficients ±1, deduplicated by class.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::{is_effective_zero_divisor, is_zero_divisor, MuData};
use crate::cohomology::group::ClassCoordinates;
use crate::cohomology::{cohomology_group, cup_two_factor, named_cocycle, Cochain, CoefficientSystem, CohomologyPresentation, NamedCocycle};
use crate::error::{Error, Result};

/// Parse a coefficient menu for π_g × π_g.
pub fn parse_menu(text: &str, genus: u32) -> Result<Vec<CoefficientSystem>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        out.push(CoefficientSystem::parse(line, &[genus, genus])?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PoolEntry {
    pub label: String,
    pub coeffs: String,
    #[serde(skip)]
    pub cocycle: Cochain,
    pub zero_divisor: bool,
    /// `None` when no μ data applies to these coefficients.
    pub effective: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TupleResult {
    pub members: Vec<String>,
    pub coeffs: String,
    pub product: ClassCoordinates,
    pub all_zero_divisors: bool,
    pub all_effective: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub genus: u32,
    pub tuple_len: usize,
    pub pool: Vec<PoolEntry>,
    pub tuples_checked: usize,
    pub nonvanishing: Vec<TupleResult>,
}

/// Degree-one classes with coefficients `coeffs`, labelled.
pub fn build_pool(coeffs: &CoefficientSystem, wide: bool) -> Result<Vec<(String, Cochain)>> {
    let h = cohomology_group(coeffs, 1);
    let gens = &h.generators;
    let mut raw: Vec<(String, Cochain)> = Vec::new();
    if !coeffs.set(0).is_empty() && !coeffs.set(1).is_empty() {
        raw.push((format!("nu[{coeffs}]"), named_cocycle(NamedCocycle::Nu, coeffs)?));
    }
    let name = |i: usize| format!("h{i}[{coeffs}]");
    for (i, g) in gens.iter().enumerate() {
        raw.push((name(i), g.clone()));
    }
    let max_terms = if wide { 3 } else { 2 };
    for size in 2..=max_terms {
        for idx in combinations(gens.len(), size) {
            // the first term keeps sign +, the rest range over ±
            for signs in 0..1usize << (size - 1) {
                let mut f = gens[idx[0]].clone();
                let mut label = name(idx[0]);
                for (k, &j) in idx[1..].iter().enumerate() {
                    let neg = signs >> k & 1 == 1;
                    let c = if neg { -BigInt::one() } else { BigInt::one() };
                    f.add_scaled(&gens[j], &c)?;
                    label.push_str(if neg { "-" } else { "+" });
                    label.push_str(&name(j));
                }
                raw.push((label, f));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (label, f) in raw {
        let co = h.class_coordinates(&f)?;
        if co.is_zero() {
            continue;
        }
        let key: Vec<BigInt> = co.torsion.iter().chain(&co.free).cloned().collect();
        if seen.insert(key) {
            out.push((label, f));
        }
    }
    Ok(out)
}

/// Increasing index tuples of the given size.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nondecreasing index tuples, i.e. multisets.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Search all multisets of `tuple_len` pool classes for a nonzero product.
///
/// Effective zero-divisor verdicts use `mu` when given, otherwise
/// [`MuData::Trivial`] for trivial coefficients; for twisted classes without
/// μ data the verdict is left open.
pub fn search_product_length(
    genus: u32,
    menu: &[CoefficientSystem],
    tuple_len: usize,
    mu: Option<&MuData>,
    wide: bool,
) -> Result<SearchReport> {
    crate::word::check_genus(genus)?;
    let mut pool = Vec::new();
    for coeffs in menu {
        if coeffs.genera() != [genus, genus] {
            return Err(Error::CoefficientMismatch(format!("menu entry {coeffs} is not over ({genus},{genus})")));
        }
        for (label, f) in build_pool(coeffs, wide)? {
            let zero_divisor = is_zero_divisor(&f)?;
            let data = match mu {
                Some(m) => Some(m),
                None if coeffs.is_trivial() => Some(&MuData::Trivial),
                None => None,
            };
            let effective = match data {
                Some(m) => Some(is_effective_zero_divisor(&f, m, &label)?.verdict),
                None => None,
            };
            pool.push(PoolEntry { label, coeffs: coeffs.to_string(), cocycle: f, zero_divisor, effective });
        }
    }
    let tuples = if tuple_len == 0 { Vec::new() } else { multisets(pool.len(), tuple_len) };
    let mut groups: BTreeMap<CoefficientSystem, Option<CohomologyPresentation>> = BTreeMap::new();
    let mut tuple_coeffs = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut c = pool[t[0]].cocycle.coeffs().clone();
        for &i in &t[1..] {
            c = c.tensor(pool[i].cocycle.coeffs())?;
        }
        groups.entry(c.clone()).or_insert(None);
        tuple_coeffs.push(c);
    }
    // products above degree 4 vanish for dimensional reasons
    if tuple_len <= 4 {
        let built: Vec<_> = groups.keys().cloned().collect::<Vec<_>>().into_par_iter().map(|c| {
            let h = cohomology_group(&c, tuple_len);
            (c, h)
        }).collect();
        for (c, h) in built {
            groups.insert(c, Some(h));
        }
    }
    let results: Vec<Option<TupleResult>> = tuples
        .par_iter()
        .zip(&tuple_coeffs)
        .map(|(t, c)| -> Result<Option<TupleResult>> {
            let Some(h) = &groups[c] else { return Ok(None) };
            let mut p = pool[t[0]].cocycle.clone();
            for &i in &t[1..] {
                p = cup_two_factor(&p, &pool[i].cocycle)?;
                if p.is_zero() {
                    return Ok(None);
                }
            }
            let product = h.class_coordinates(&p)?;
            if product.is_zero() {
                return Ok(None);
            }
            let members: Vec<&PoolEntry> = t.iter().map(|&i| &pool[i]).collect();
            let all_effective = members.iter().try_fold(true, |acc, m| m.effective.map(|e| acc && e));
            Ok(Some(TupleResult {
                members: members.iter().map(|m| m.label.clone()).collect(),
                coeffs: c.to_string(),
                product,
                all_zero_divisors: members.iter().all(|m| m.zero_divisor),
                all_effective,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SearchReport {
        genus,
        tuple_len,
        tuples_checked: tuples.len(),
        pool,
        nonvanishing: results.into_iter().flatten().collect(),
    })
}
