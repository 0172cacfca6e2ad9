//! The contracting homotopy s of M^g and the induced homotopies u on
//! M^{g_1} ⊗ ... ⊗ M^{g_n} and w on (M ⊗ M).
//!
//! On one factor:
//!
//! * s_{-1}(1) = χ;
//! * s_0(yχ) = Σ_j ℓ_1...ℓ_{j-1} s_0(ℓ_j χ) over the normal form ℓ_1...ℓ_k
//!   of y, with s_0(xχ) = ξ and s_0(x̄χ) = -x̄ξ for a generator x with dual
//!   symbol ξ;
//! * s_1(yλ) = 0 unless λ = β_g, and s_1(yβ_g) is
//!   (y Σ_{i=1}^{n+1} U^i)ω when y ends like T_n but not T_{n+1},
//!   -(y Σ_{i=0}^{n-1} Ū^i)ω when y ends like U^n but not U^{n+1} (n >= 1),
//!   and 0 otherwise.
//!
//! These are Z-linear, not equivariant, so they act on the Z-basis cells.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::resolution::{
    basis_of, tensor_differential, BasisSymbol, Cell, ChainElement, FactorTerms, TensorBasisSymbol,
};
use crate::word::{classify_s1_suffix, t_word, u_word, GenKind, Letter, SuffixClass, Word};

/// s applied to the single-factor cell yλ (y a normal form).
pub fn s_factor(y: &Word, sym: BasisSymbol) -> FactorTerms {
    let g = y.genus();
    match sym {
        BasisSymbol::Chi => {
            let mut out = Vec::with_capacity(y.len());
            for (j, l) in y.letters().iter().enumerate() {
                let xi = BasisSymbol::of_generator(l.generator());
                if l.inverted {
                    out.push((y.prefix(j + 1), xi, BigInt::from(-1)));
                } else {
                    out.push((y.prefix(j), xi, BigInt::one()));
                }
            }
            out
        }
        BasisSymbol::Beta(i) if i == g => match classify_s1_suffix(y) {
            SuffixClass::EndsLikeT(n) => {
                let u = u_word(g);
                let mut cur = y.clone();
                (1..=n + 1)
                    .map(|_| {
                        cur = cur.mul_normal(&u);
                        (cur.clone(), BasisSymbol::Omega, BigInt::one())
                    })
                    .collect()
            }
            SuffixClass::EndsLikeU(n) => {
                let ubar = u_word(g).inverse();
                let mut cur = y.clone();
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    if i > 0 {
                        cur = cur.mul_normal(&ubar);
                    }
                    out.push((cur.clone(), BasisSymbol::Omega, BigInt::from(-1)));
                }
                out
            }
            SuffixClass::Neither => Vec::new(),
        },
        _ => Vec::new(),
    }
}

/// s_{-1}(n) = n·(χ ⊗ ... ⊗ χ).
pub fn s_minus1(genera: &[u32], n: &BigInt) -> ChainElement {
    ChainElement::basis(genera, TensorBasisSymbol::chis(genera.len())).scale(n)
}

/// The tensor homotopy
/// u(y_1 ⊗ ... ⊗ y_n) = Σ_i (s_{-1}ε)(y_1) ⊗ ... ⊗ (s_{-1}ε)(y_{i-1}) ⊗ s(y_i) ⊗ y_{i+1} ⊗ ... ⊗ y_n.
/// For a single factor this is s itself.
pub fn u(x: &ChainElement) -> ChainElement {
    let genera = x.genera().to_vec();
    let mut out = ChainElement::zero(&genera, x.degree() + 1);
    for (cell, c) in x.terms() {
        u_cell_into(&genera, cell, c, &mut out);
    }
    out
}

fn u_cell_into(genera: &[u32], cell: &Cell, c: &BigInt, out: &mut ChainElement) {
    for i in 0..genera.len() {
        for (w, t, e) in s_factor(&cell.words[i], cell.symbol.0[i]) {
            let mut words = cell.words.clone();
            let mut sym = cell.symbol.clone();
            for j in 0..i {
                words[j] = Word::identity(genera[j]);
            }
            words[i] = w;
            sym.0[i] = t;
            out.add_cell(Cell::new(words, sym), c * e);
        }
        if cell.symbol.0[i].degree() > 0 {
            break;
        }
    }
}

pub fn s0(x: &ChainElement) -> ChainElement {
    assert_eq!(x.genera().len(), 1);
    assert_eq!(x.degree(), 0);
    u(x)
}

pub fn s1(x: &ChainElement) -> ChainElement {
    assert_eq!(x.genera().len(), 1);
    assert_eq!(x.degree(), 1);
    u(x)
}

/// The homotopy on M ⊗ M, where M has `n` factors and `x` is stored over
/// 2n factors: w(z_1 ⊗ z_2) = u(z_1) ⊗ z_2 + (u_{-1}ε)(z_1) ⊗ u(z_2).
pub fn w(x: &ChainElement, n: usize) -> ChainElement {
    let genera = x.genera().to_vec();
    assert_eq!(genera.len(), 2 * n);
    let (g1, g2) = genera.split_at(n);
    let mut out = ChainElement::zero(&genera, x.degree() + 1);
    for (cell, c) in x.terms() {
        let (z1, z2) = ChainElement::split_cell(cell, n);
        let mut left = ChainElement::zero(g1, z1.symbol.degree() + 1);
        u_cell_into(g1, &z1, &BigInt::one(), &mut left);
        for (l, e) in left.terms() {
            out.add_cell(join(l, &z2), c * e);
        }
        if z1.symbol.degree() == 0 {
            let mut right = ChainElement::zero(g2, z2.symbol.degree() + 1);
            u_cell_into(g2, &z2, &BigInt::one(), &mut right);
            let chis = Cell::basis(g1, TensorBasisSymbol::chis(n));
            for (r, e) in right.terms() {
                out.add_cell(join(&chis, r), c * e);
            }
        }
    }
    out
}

pub(crate) fn join(a: &Cell, b: &Cell) -> Cell {
    let mut words = a.words.clone();
    words.extend(b.words.iter().cloned());
    let mut sym = a.symbol.0.clone();
    sym.extend(b.symbol.0.iter().copied());
    Cell::new(words, TensorBasisSymbol(sym))
}

/// d h + h d - (id - h_{-1}ε) on x, which is zero for a contracting
/// homotopy h.
pub fn homotopy_defect(x: &ChainElement, h: impl Fn(&ChainElement) -> ChainElement) -> ChainElement {
    let mut lhs = tensor_differential(&h(x));
    if x.degree() > 0 {
        lhs.add_scaled(&h(&tensor_differential(x)), &BigInt::one());
    }
    let mut rhs = x.clone();
    if x.degree() == 0 {
        rhs.add_scaled(&s_minus1(x.genera(), &x.augmentation()), &BigInt::from(-1));
    }
    lhs.sub(&rhs)
}

/// Random normal-form word of length at most `max_len` before reduction.
pub fn random_word<R: Rng>(rng: &mut R, genus: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let kind = if rng.gen_bool(0.5) { GenKind::A } else { GenKind::B };
            Letter::new(kind, rng.gen_range(1..=genus), rng.gen_bool(0.5))
        })
        .collect();
    Word::from_letters(genus, letters).unwrap().normal_form()
}

/// Random word biased towards the suffix shapes T_n and U^n that make s_1
/// nonzero.
pub fn adversarial_word<R: Rng>(rng: &mut R, genus: u32, max_len: usize) -> Word {
    let prefix = random_word(rng, genus, max_len);
    let n = rng.gen_range(0..=4usize);
    let tail = match rng.gen_range(0..3) {
        0 => t_word(genus, n),
        1 => u_word(genus).pow(n.max(1)),
        _ => return prefix,
    };
    prefix.concat(&tail).normal_form()
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub genera: Vec<u32>,
    /// Whether this checks u on M or w on M ⊗ M.
    pub square: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ContractionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_cell(rng: &mut ChaCha8Rng, genera: &[u32], degree: usize, max_len: usize) -> Cell {
    let syms = basis_of(genera, degree);
    let symbol = syms[rng.gen_range(0..syms.len())].clone();
    let words = genera.iter().map(|&g| adversarial_word(rng, g, max_len)).collect();
    Cell::new(words, symbol)
}

/// Check the contracting-homotopy identity of u on M^{genera} (or of w on
/// M^{genera} ⊗ M^{genera} when `square`) on `samples` random cells of each
/// degree. Deterministic for a given seed.
pub fn verify_contracting(genera: &[u32], square: bool, samples: usize, max_len: usize, seed: u64) -> ContractionReport {
    let n = genera.len();
    let full: Vec<u32> = if square { genera.iter().chain(genera).copied().collect() } else { genera.to_vec() };
    let top = 2 * full.len();
    let jobs: Vec<(usize, u64)> = (0..=top).flat_map(|k| (0..samples as u64).map(move |i| (k, i))).collect();
    let results: Vec<Option<String>> = jobs
        .par_iter()
        .map(|&(k, i)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 40) ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let cell = random_cell(&mut rng, &full, k, max_len);
            let mut x = ChainElement::zero(&full, k);
            x.add_cell(cell.clone(), BigInt::one());
            let defect = if square { homotopy_defect(&x, |y| w(y, n)) } else { homotopy_defect(&x, u) };
            if defect.is_zero() {
                None
            } else {
                let ws: Vec<String> = cell.words.iter().map(|w| w.to_string()).collect();
                Some(format!("({}) . {}", ws.join(","), cell.symbol))
            }
        })
        .collect();
    ContractionReport {
        genera: genera.to_vec(),
        square,
        checked: results.len(),
        failures: results.into_iter().flatten().collect(),
    }
}

/// The value s_1(yβ_g) as a single-factor chain.
pub fn s1_beta_g(y: &Word) -> ChainElement {
    let g = y.genus();
    let mut out = ChainElement::zero(&[g], 2);
    for (w, t, e) in s_factor(&y.normal_form(), BasisSymbol::Beta(g)) {
        out.add_cell(Cell::new(vec![w], TensorBasisSymbol(vec![t])), e);
    }
    out
}

/// s_0(yχ) as a single-factor chain.
pub fn s0_of(y: &Word) -> ChainElement {
    let g = y.genus();
    let mut out = ChainElement::zero(&[g], 1);
    for (w, t, e) in s_factor(&y.normal_form(), BasisSymbol::Chi) {
        out.add_cell(Cell::new(vec![w], TensorBasisSymbol(vec![t])), e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::d;
    use crate::word::p_word;

    fn chain(s: &str, g: u32) -> ChainElement {
        ChainElement::parse(s, &[g]).unwrap()
    }

    fn word(s: &str, g: u32) -> Word {
        Word::parse(s, g).unwrap()
    }

    #[test]
    fn s0_examples() {
        assert_eq!(s0_of(&word("a1", 2)), chain("1 * (1) . alpha1", 2));
        assert_eq!(s0_of(&word("A1", 2)), chain("-1 * (A1) . alpha1", 2));
        assert_eq!(s0_of(&word("b2a1", 2)), chain("1 * (1) . beta2\n1 * (b2) . alpha1", 2));
        assert!(s0_of(&Word::identity(2)).is_zero());
    }

    #[test]
    fn s1_examples() {
        let g = 2;
        let u = u_word(g);
        // y = a_g = T_0: s_1 = (a_g U) ω.
        assert_eq!(s1_beta_g(&word("a2", g)), chain(&format!("1 * ({}) . omega", word("a2", g).concat(&u).normal_form()), g));
        // y = U: s_1 = -Uω.
        assert_eq!(s1_beta_g(&u), chain(&format!("-1 * ({u}) . omega"), g));
        assert!(s1_beta_g(&word("b1", g)).is_zero());
    }

    #[test]
    fn powers_of_a_g_bar() {
        // s_0(ā_g^m χ) = -(ā_g + ... + ā_g^m) α_g
        let g = 3;
        for m in 1..5 {
            let y = word("A3", g).pow(m);
            let mut want = ChainElement::zero(&[g], 1);
            for k in 1..=m {
                want.add_cell(Cell::new(vec![word("A3", g).pow(k)], TensorBasisSymbol(vec![BasisSymbol::Alpha(g)])), BigInt::from(-1));
            }
            assert_eq!(s0_of(&y), want);
            // and with b_g in front: s_0(b_g ā_g^m χ) = β_g - b_g(ā_g + ... + ā_g^m) α_g
            let y2 = word("b3", g).concat(&y);
            let mut want2 = chain("1 * (1) . beta3", g);
            want2.add_scaled(&want.act(&[word("b3", g)]), &BigInt::one());
            assert_eq!(s0_of(&y2), want2);
        }
    }

    #[test]
    fn u_relations() {
        for g in 2..=4 {
            let u = u_word(g);
            let ubar = u.inverse();
            let ag = Word::letter(g, Letter::a(g));
            let bg = Word::letter(g, Letter::b(g));
            // N(U^m b_g) = b_g ā_g^m
            for m in 0..4 {
                assert_eq!(u.pow(m).concat(&bg).normal_form(), bg.concat(&ag.inverse().pow(m)));
            }
            // s_0(Ū χ) = -Ū s_0(U χ)
            assert_eq!(s0_of(&ubar), s0_of(&u).act(std::slice::from_ref(&ubar)).scale(&BigInt::from(-1)));
            // s_0(a_g U χ) = α_g + a_g s_0(U χ)
            let lhs = s0_of(&ag.concat(&u));
            let mut rhs = ChainElement::basis(&[g], TensorBasisSymbol(vec![BasisSymbol::Alpha(g)]));
            rhs.add_scaled(&s0_of(&u).act(std::slice::from_ref(&ag)), &BigInt::one());
            assert_eq!(lhs, rhs);
            // s_0(U^{m+1} χ) = (1 + U + ... + U^m) s_0(U χ)
            for m in 0..3 {
                let mut rhs = ChainElement::zero(&[g], 1);
                for k in 0..=m {
                    rhs.add_scaled(&s0_of(&u).act(&[u.pow(k)]), &BigInt::one());
                }
                assert_eq!(s0_of(&u.pow(m + 1)), rhs);
            }
            // s_0(Ū χ) = d_2(ω) + b_g α_g + (1 - Ū) β_g
            let mut rhs = d(&chain("1 * (1) . omega", g));
            rhs.add_scaled(&ChainElement::from_cell(&[g], std::slice::from_ref(&bg), TensorBasisSymbol(vec![BasisSymbol::Alpha(g)])).unwrap(), &BigInt::one());
            let beta = TensorBasisSymbol(vec![BasisSymbol::Beta(g)]);
            rhs.add_scaled(&ChainElement::basis(&[g], beta.clone()), &BigInt::one());
            rhs.add_scaled(&ChainElement::from_cell(&[g], std::slice::from_ref(&ubar), beta).unwrap(), &BigInt::from(-1));
            assert_eq!(s0_of(&ubar), rhs);
            // N(Ū) = P_{g-1} a_g
            assert_eq!(ubar.normal_form(), p_word(g, g - 1).concat(&ag));
        }
    }

    #[test]
    fn small_contracting_checks() {
        let r = verify_contracting(&[2], false, 40, 12, 7);
        assert!(r.ok(), "{:?}", r.failures);
        let r = verify_contracting(&[2, 2], false, 10, 8, 7);
        assert!(r.ok(), "{:?}", r.failures);
        let r = verify_contracting(&[2], true, 10, 8, 7);
        assert!(r.ok(), "{:?}", r.failures);
    }
}
