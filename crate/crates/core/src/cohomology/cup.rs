//! Cochain-level cup products.
//!
//! Conventions: for a diagonal Δ(b) = Σ c (w, w')·(x ⊗ y),
//! (u ⌣ v)(b) = (-1)^{|u||v|} Σ c u(w x) v(w' y), the group elements acting
//! through the sign characters. This gives β_i^* ⌣ α_i^* = ω^* for trivial
//! coefficients.
//!
//! The cross product t(f ⊗ h) of single-factor cochains is the graded tensor
//! morphism (-1)^{|f||h|} f ⊗ h, so (x ⊗ y)^* = (-1)^{|x||y|} t(x^* ⊗ y^*).

use std::sync::{Arc, OnceLock, RwLock};
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::cochain::Cochain;
use super::coeffs::{CoefficientSystem, SignSet};
use crate::diagonal::{diagonal_closed_form, shuffle_diagonal, Diagonal};
use crate::error::{Error, Result};
use crate::resolution::{basis_of, BasisSymbol, TensorBasisSymbol};
use crate::word::{Generator, GenKind};

fn odd(a: usize, b: usize) -> bool {
    a * b % 2 == 1
}

/// Dualize a diagonal over n factors: the cup product of cochains over n
/// factors.
pub fn cup_via_diagonal(u: &Cochain, v: &Cochain, diag: &Diagonal) -> Result<Cochain> {
    let genera = diag.genera().to_vec();
    if u.genera() != genera || v.genera() != genera {
        return Err(Error::CoefficientMismatch(format!("{} and {} over {:?}", u.coeffs(), v.coeffs(), genera)));
    }
    let n = genera.len();
    let coeffs = u.coeffs().tensor(v.coeffs())?;
    let k = u.degree() + v.degree();
    let mut out = Cochain::zero(&coeffs, k);
    if u.is_zero() || v.is_zero() {
        return Ok(out);
    }
    let neg = odd(u.degree(), v.degree());
    for b in basis_of(&genera, k) {
        let mut total = BigInt::zero();
        for (cell, c) in diag.image(&b).terms() {
            let x = TensorBasisSymbol(cell.symbol.0[..n].to_vec());
            if x.degree() != u.degree() {
                continue;
            }
            let y = TensorBasisSymbol(cell.symbol.0[n..].to_vec());
            let ux = u.value(&x);
            if ux.is_zero() {
                continue;
            }
            let vy = v.value(&y);
            if vy.is_zero() {
                continue;
            }
            let s = u.coeffs().sign(&cell.words[..n]) * v.coeffs().sign(&cell.words[n..]);
            let term = c * ux * vy;
            if s < 0 {
                total -= term;
            } else {
                total += term;
            }
        }
        out.add_value(b, if neg { -total } else { total });
    }
    Ok(out)
}

/// Pull back a cochain over the doubled genera of `diag` along Δ:
/// (Δ^*f)(b) = Σ c f(w x ⊗ w' y). Coefficients combine factorwise
/// (S_1 ⊖ S_{n+1}, ...). Δ^*(t(u ⊗ v)) = u ⌣ v.
pub fn pullback_via_diagonal(f: &Cochain, diag: &Diagonal) -> Result<Cochain> {
    let genera = diag.genera().to_vec();
    let n = genera.len();
    if f.genera() != diag.doubled_genera() {
        return Err(Error::GenusMismatch(format!("{:?}", f.genera()), format!("{:?}", diag.doubled_genera())));
    }
    let left = CoefficientSystem::new(f.coeffs().sets()[..n].to_vec());
    let right = CoefficientSystem::new(f.coeffs().sets()[n..].to_vec());
    let coeffs = left.tensor(&right)?;
    let mut out = Cochain::zero(&coeffs, f.degree());
    if f.is_zero() || f.degree() > 2 * n {
        return Ok(out);
    }
    for b in basis_of(&genera, f.degree()) {
        let mut total = BigInt::zero();
        for (cell, c) in diag.image(&b).terms() {
            let v = f.value(&cell.symbol);
            if v.is_zero() {
                continue;
            }
            if f.coeffs().sign(&cell.words) < 0 {
                total -= c * v;
            } else {
                total += c * v;
            }
        }
        out.add_value(b, total);
    }
    Ok(out)
}

type Cache<K> = OnceLock<RwLock<HashMap<K, Arc<Diagonal>>>>;

fn cached_closed_form(genus: u32) -> Arc<Diagonal> {
    static CACHE: Cache<u32> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().unwrap().get(&genus) {
        return d.clone();
    }
    let d = Arc::new(diagonal_closed_form(genus));
    cache.write().unwrap().insert(genus, d.clone());
    d
}

fn cached_shuffle(g1: u32, g2: u32) -> Arc<Diagonal> {
    static CACHE: Cache<(u32, u32)> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().unwrap().get(&(g1, g2)) {
        return d.clone();
    }
    let d = Arc::new(shuffle_diagonal(g1, g2));
    cache.write().unwrap().insert((g1, g2), d.clone());
    d
}

/// Cup product of single-factor cochains through the closed-form diagonal.
pub fn cup_single(u: &Cochain, v: &Cochain) -> Result<Cochain> {
    let g = single_genus(u)?;
    cup_via_diagonal(u, v, &cached_closed_form(g))
}

/// Cup product of two-factor cochains through the shuffled diagonal.
pub fn cup_two_factor_direct(u: &Cochain, v: &Cochain) -> Result<Cochain> {
    let genera = u.genera();
    if genera.len() != 2 {
        return Err(Error::Unsupported(format!("two-factor cup over genera {genera:?}")));
    }
    cup_via_diagonal(u, v, &cached_shuffle(genera[0], genera[1]))
}

/// Δ^* for cochains over (g, g).
pub fn pullback_diagonal(f: &Cochain) -> Result<Cochain> {
    let genera = f.genera();
    if genera.len() != 2 || genera[0] != genera[1] {
        return Err(Error::GenusMismatch(format!("{}", genera[0]), format!("{:?}", genera)));
    }
    pullback_via_diagonal(f, &cached_closed_form(genera[0]))
}

fn single_genus(u: &Cochain) -> Result<u32> {
    match u.genera()[..] {
        [g] => Ok(g),
        ref gs => Err(Error::Unsupported(format!("single-factor operation over genera {gs:?}"))),
    }
}

/// The cross product t(f ⊗ h) over (g_1, g_2): on x ⊗ y it takes the value
/// (-1)^{|f||h|} f(x) h(y).
pub fn cross(f: &Cochain, h: &Cochain) -> Cochain {
    let coeffs = f.coeffs().concat(h.coeffs());
    let mut out = Cochain::zero(&coeffs, f.degree() + h.degree());
    let neg = odd(f.degree(), h.degree());
    for (x, a) in f.values() {
        for (y, b) in h.values() {
            let sym = TensorBasisSymbol(x.0.iter().chain(&y.0).copied().collect());
            let v = a * b;
            out.add_value(sym, if neg { -v } else { v });
        }
    }
    out
}

/// Write a two-factor cochain as Σ c_i t(f_i ⊗ h_i) with f_i, h_i dual basis
/// cochains.
pub fn decompose(f: &Cochain) -> Result<Vec<(BigInt, Cochain, Cochain)>> {
    if f.coeffs().sets().len() != 2 {
        return Err(Error::Unsupported("decomposition needs two factors".into()));
    }
    let c1 = CoefficientSystem::new(vec![f.coeffs().set(0).clone()]);
    let c2 = CoefficientSystem::new(vec![f.coeffs().set(1).clone()]);
    Ok(f.values()
        .map(|(sym, c)| {
            let (x, y) = (sym.0[0], sym.0[1]);
            let sign = if odd(x.degree(), y.degree()) { -c } else { c.clone() };
            (sign, Cochain::dual(&c1, TensorBasisSymbol(vec![x])), Cochain::dual(&c2, TensorBasisSymbol(vec![y])))
        })
        .collect())
}

/// Two-factor cup product by the diagram route: decompose both operands
/// along t ⊗ t, swap the middle factors with the Koszul sign, multiply
/// factorwise with the closed-form tables and reassemble through t.
pub fn cup_two_factor(u: &Cochain, v: &Cochain) -> Result<Cochain> {
    let coeffs = u.coeffs().tensor(v.coeffs())?;
    let mut out = Cochain::zero(&coeffs, u.degree() + v.degree());
    for (c, u1, u2) in decompose(u)? {
        for (e, v1, v2) in decompose(v)? {
            let p1 = cup_closed_form(&u1, &v1)?;
            if p1.is_zero() {
                continue;
            }
            let p2 = cup_closed_form(&u2, &v2)?;
            let mut k = &c * &e;
            if odd(u2.degree(), v1.degree()) {
                k = -k;
            }
            out.add_scaled(&cross(&p1, &p2), &k)?;
        }
    }
    Ok(out)
}

fn set_of(u: &Cochain) -> &SignSet {
    u.coeffs().set(0)
}

/// The letter ℓ for a greek symbol λ.
fn letter_of(s: BasisSymbol) -> Generator {
    s.generator().expect("greek symbol")
}

/// δ(λ_r, μ_s) in its uncorrected form, kept for comparison with
/// [`delta_corrected`].
pub fn delta_table(lam: BasisSymbol, mu: BasisSymbol, s1: &SignSet, s2: &SignSet) -> i64 {
    let g = s1.genus();
    let (lr, ms) = (letter_of(lam), letter_of(mu));
    let (r, s) = (lr.index, ms.index);
    let in1 = |x: Generator| s1.contains(x);
    let in2 = |x: Generator| s2.contains(x);
    let pm = |c: bool| if c { 2 } else { -2 };
    let (a, b) = (Generator::a, Generator::b);
    let mut d = 0;
    match (lr.kind, ms.kind) {
        (GenKind::A, GenKind::A) => {
            if r < s && in1(b(r)) {
                d -= 2;
            }
            if r <= s && s < g && in1(b(r)) {
                d += pm(in2(b(s)));
            }
        }
        (GenKind::A, GenKind::B) => {
            if r < s && in1(b(r)) {
                d -= pm(in2(a(s)));
            }
            if r <= s && s < g && in1(b(r)) {
                d += 2;
            }
            if r == s {
                d += if in2(a(r)) { 1 } else { -1 };
            }
        }
        (GenKind::B, GenKind::A) => {
            if r < s && in1(a(r)) {
                d += 2;
            }
            if r <= s && s < g && in1(a(r)) {
                d -= pm(in2(b(s)));
            }
            if r == s {
                d -= if in2(b(r)) { 1 } else { -1 };
            }
        }
        (GenKind::B, GenKind::B) => {
            if r < s && in1(a(r)) {
                d += pm(in2(a(s)));
            }
            if r <= s && s < g && in1(a(r)) {
                d -= 2;
            }
        }
    }
    d
}

/// δ(λ_r, μ_s) read off the closed-form Δ(ω). With s(x) = ±1 the sign
/// by which x acts on Z_{S_2} and [P] the indicator of P:
///
/// * δ(α_r, α_s) = 2[b_r ∈ S_1](-[r < s] + [r ≤ s < g] s(b_s))
/// * δ(α_r, β_s) = 2[b_r ∈ S_1](-[r < s] s(a_s) + [r ≤ s < g]) - [r = s] s(a_r)
/// * δ(β_r, α_s) = 2[a_r ∈ S_1]([r < s] - [r ≤ s < g] s(b_s)) + [r = s] s(b_r)
/// * δ(β_r, β_s) = 2[a_r ∈ S_1]([r < s] s(a_s) - [r ≤ s < g])
///
/// This differs from [`delta_table`] exactly in the four ±2 braces that
/// depend on S_2, whose signs are reversed there.
pub fn delta_corrected(lam: BasisSymbol, mu: BasisSymbol, s1: &SignSet, s2: &SignSet) -> i64 {
    let g = s1.genus();
    let (lr, ms) = (letter_of(lam), letter_of(mu));
    let (r, s) = (lr.index, ms.index);
    let sg = |x: Generator| if s2.contains(x) { -1 } else { 1 };
    let ind = |p: bool| p as i64;
    let before = ind(r < s);
    let upto = ind(r <= s && s < g);
    let diag = ind(r == s);
    let (a, b) = (Generator::a, Generator::b);
    match (lr.kind, ms.kind) {
        (GenKind::A, GenKind::A) => 2 * ind(s1.contains(b(r))) * (-before + upto * sg(b(s))),
        (GenKind::A, GenKind::B) => 2 * ind(s1.contains(b(r))) * (-before * sg(a(s)) + upto) - diag * sg(a(r)),
        (GenKind::B, GenKind::A) => 2 * ind(s1.contains(a(r))) * (before - upto * sg(b(s))) + diag * sg(b(r)),
        (GenKind::B, GenKind::B) => 2 * ind(s1.contains(a(r))) * (before * sg(a(s)) - upto),
    }
}

/// Which δ table [`cup_closed_form_with`] reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaTable {
    Uncorrected,
    Corrected,
}

/// Product of two dual basis cochains from the tables.
fn table_product(x: BasisSymbol, y: BasisSymbol, s1: &SignSet, s2: &SignSet, table: DeltaTable) -> Option<(i64, BasisSymbol)> {
    use BasisSymbol::*;
    let g = s1.genus();
    match (x, y) {
        (Chi, t) => Some((1, t)),
        (l, Chi) if l.degree() == 1 => Some((if s2.contains(letter_of(l)) { -1 } else { 1 }, l)),
        (Omega, Chi) => {
            let flip = s2.contains(Generator::a(g)) != s2.contains(Generator::b(g));
            Some((if flip { -1 } else { 1 }, Omega))
        }
        (l, m) if l.degree() == 1 && m.degree() == 1 => {
            let d = match table {
                DeltaTable::Uncorrected => delta_table(l, m, s1, s2),
                DeltaTable::Corrected => delta_corrected(l, m, s1, s2),
            };
            Some((d, Omega))
        }
        _ => None,
    }
}

/// Single-factor cup product read from the closed-form tables.
pub fn cup_closed_form_with(u: &Cochain, v: &Cochain, table: DeltaTable) -> Result<Cochain> {
    single_genus(u)?;
    single_genus(v)?;
    let coeffs = u.coeffs().tensor(v.coeffs())?;
    let mut out = Cochain::zero(&coeffs, u.degree() + v.degree());
    for (x, a) in u.values() {
        for (y, b) in v.values() {
            if let Some((c, z)) = table_product(x.0[0], y.0[0], set_of(u), set_of(v), table) {
                out.add_value(TensorBasisSymbol(vec![z]), a * b * c);
            }
        }
    }
    Ok(out)
}

/// Single-factor cup product from the closed-form tables with the corrected
/// δ signs, which agree with dualizing the closed-form diagonal.
pub fn cup_closed_form(u: &Cochain, v: &Cochain) -> Result<Cochain> {
    cup_closed_form_with(u, v, DeltaTable::Corrected)
}

/// One mismatch between a table entry and the dualized diagonal.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TableMismatch {
    pub coeffs: String,
    pub left: String,
    pub right: String,
    pub table: String,
    pub dualized: String,
}

/// Compare table products with the dualization on all pairs of dual basis
/// cochains, for the given pair of sign sets.
pub fn table_mismatches(s1: &SignSet, s2: &SignSet, table: DeltaTable) -> Vec<TableMismatch> {
    let g = s1.genus();
    let c1 = CoefficientSystem::new(vec![s1.clone()]);
    let c2 = CoefficientSystem::new(vec![s2.clone()]);
    let mut out = Vec::new();
    for x in BasisSymbol::all(g) {
        for y in BasisSymbol::all(g) {
            let u = Cochain::dual(&c1, TensorBasisSymbol(vec![x]));
            let v = Cochain::dual(&c2, TensorBasisSymbol(vec![y]));
            let t = cup_closed_form_with(&u, &v, table).unwrap();
            let d = cup_single(&u, &v).unwrap();
            if t != d {
                out.push(TableMismatch {
                    coeffs: format!("{s1}|{s2}"),
                    left: x.to_string(),
                    right: y.to_string(),
                    table: t.to_string().trim().replace('\n', "; "),
                    dualized: d.to_string().trim().replace('\n', "; "),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str, g: u32) -> CoefficientSystem {
        CoefficientSystem::parse(s, &[g]).unwrap()
    }

    fn dual(coeffs: &CoefficientSystem, s: &str) -> Cochain {
        Cochain::dual(coeffs, TensorBasisSymbol::parse(s, &coeffs.genera()).unwrap())
    }

    #[test]
    fn beta_alpha_is_omega() {
        let t = c("-", 2);
        let p = cup_single(&dual(&t, "beta1"), &dual(&t, "alpha1")).unwrap();
        assert_eq!(p, dual(&t, "omega"));
        let q = cup_single(&dual(&t, "alpha1"), &dual(&t, "beta1")).unwrap();
        assert_eq!(q, dual(&t, "omega").scale(&BigInt::from(-1)));
    }

    #[test]
    fn omega_chi_sign() {
        let u = dual(&c("-", 2), "omega");
        let v = dual(&c("a2", 2), "chi");
        let p = cup_closed_form(&u, &v).unwrap();
        assert_eq!(p.value(&TensorBasisSymbol(vec![BasisSymbol::Omega])), BigInt::from(-1));
        assert_eq!(p, cup_single(&u, &v).unwrap());
    }

    #[test]
    fn corrected_tables_match_dualization() {
        for g in [2, 3] {
            for s1 in SignSet::all(g).iter().step_by(5) {
                for s2 in SignSet::all(g).iter().step_by(7) {
                    assert!(table_mismatches(s1, s2, DeltaTable::Corrected).is_empty(), "{s1}|{s2}");
                }
            }
        }
    }

    #[test]
    fn diagram_route_matches_shuffle() {
        let g = [2, 2];
        let s = CoefficientSystem::parse("a1|b2", &g).unwrap();
        let s2 = CoefficientSystem::parse("b1,a2|a1", &g).unwrap();
        for k in 0..=2 {
            for x in basis_of(&g, k) {
                for y in basis_of(&g, 2) {
                    let u = Cochain::dual(&s, x.clone());
                    let v = Cochain::dual(&s2, y);
                    assert_eq!(cup_two_factor(&u, &v).unwrap(), cup_two_factor_direct(&u, &v).unwrap());
                }
            }
        }
    }

    #[test]
    fn pullback_of_cross_is_cup() {
        let t = c("a1", 2);
        let t2 = c("b2", 2);
        let u = dual(&t, "beta1");
        let v = dual(&t2, "alpha2");
        let x = cross(&u, &v);
        assert_eq!(pullback_diagonal(&x).unwrap(), cup_single(&u, &v).unwrap());
    }
}
