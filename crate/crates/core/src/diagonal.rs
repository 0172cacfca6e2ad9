//! Diagonal approximations Δ: M → M ⊗ M, equivariant for the diagonal
//! action.
//!
//! * [`diagonal_generic`] lifts by the contracting homotopy w of M ⊗ M:
//!   Δ_0(χ...χ) = (χ...χ) ⊗ (χ...χ) and Δ_q(b) = w(Δ_{q-1}(d b)).
//! * [`diagonal_closed_form`] is the explicit single-factor formula.
//! * [`shuffle_diagonal`] builds the diagonal of M^{g_1} ⊗ M^{g_2} as
//!   (1 ⊗ T ⊗ 1)(Δ^{g_1} ⊗ Δ^{g_2}), with T(x ⊗ y) = (-1)^{|x||y|} y ⊗ x.
//!
//! A diagonal over n factors is stored as the images of the basis symbols,
//! as chains over the 2n factors (g_1, ..., g_n, g_1, ..., g_n).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::homotopy::{join, random_word, w};
use crate::resolution::{basis_of, tensor_differential, BasisSymbol, Cell, ChainElement, TensorBasisSymbol};
use crate::word::{c_word, check_genus, p_word, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonal {
    genera: Vec<u32>,
    images: BTreeMap<TensorBasisSymbol, ChainElement>,
}

impl Diagonal {
    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn doubled_genera(&self) -> Vec<u32> {
        self.genera.iter().chain(&self.genera).copied().collect()
    }

    pub fn image(&self, b: &TensorBasisSymbol) -> &ChainElement {
        &self.images[b]
    }

    pub fn images(&self) -> impl Iterator<Item = (&TensorBasisSymbol, &ChainElement)> {
        self.images.iter()
    }

    /// Equivariant extension: Δ(y b) = (y, y)·Δ(b).
    pub fn apply(&self, x: &ChainElement) -> ChainElement {
        assert_eq!(x.genera(), &self.genera[..]);
        let mut out = ChainElement::zero(&self.doubled_genera(), x.degree());
        for (cell, c) in x.terms() {
            let img = &self.images[&cell.symbol];
            let ys: Vec<Word> = cell.words.iter().chain(&cell.words).cloned().collect();
            if cell.words.iter().all(|y| y.is_empty()) {
                out.add_scaled(img, c);
            } else {
                out.add_scaled(&img.act(&ys), c);
            }
        }
        out
    }
}

/// The diagonal lifted through the contracting homotopy w of M ⊗ M.
pub fn diagonal_generic(genera: &[u32]) -> Diagonal {
    for &g in genera {
        check_genus(g).expect("genus");
    }
    let n = genera.len();
    let mut diag = Diagonal { genera: genera.to_vec(), images: BTreeMap::new() };
    let doubled = diag.doubled_genera();
    for k in 0..=2 * n {
        for b in basis_of(genera, k) {
            let img = if k == 0 {
                let chis = Cell::basis(genera, b.clone());
                let mut x = ChainElement::zero(&doubled, 0);
                x.add_cell(join(&chis, &chis), BigInt::one());
                x
            } else {
                let db = tensor_differential(&ChainElement::basis(genera, b.clone()));
                w(&diag.apply(&db), n)
            };
            diag.images.insert(b, img);
        }
    }
    diag
}

/// Single-factor chain Σ c·(w λ) from literal words.
fn chain1(g: u32, terms: &[(i64, Word, BasisSymbol)]) -> ChainElement {
    let deg = terms.first().map_or(0, |t| t.2.degree());
    let mut x = ChainElement::zero(&[g], deg);
    for (c, wd, s) in terms {
        x.add_cell(Cell::new(vec![wd.normal_form()], TensorBasisSymbol(vec![*s])), BigInt::from(*c));
    }
    x
}

/// x ⊗ y for chains over genera A and B, as a chain over A ++ B.
pub fn tensor(x: &ChainElement, y: &ChainElement) -> ChainElement {
    let genera: Vec<u32> = x.genera().iter().chain(y.genera()).copied().collect();
    let mut out = ChainElement::zero(&genera, x.degree() + y.degree());
    for (a, c) in x.terms() {
        for (b, e) in y.terms() {
            out.add_cell(join(a, b), c * e);
        }
    }
    out
}

/// The explicit diagonal of M^g:
///
/// * Δ(χ) = χ ⊗ χ, Δ(α_i) = α_i ⊗ a_iχ + χ ⊗ α_i, Δ(β_i) = β_i ⊗ b_iχ + χ ⊗ β_i,
/// * Δ(ω) = Σ_{i<g} (Σ_{j≤i} P_{j-1}((1 - c_j b_j)α_j + (a_j - c_j)β_j)) ⊗ P_i(α_{i+1} - b_iα_i + a_{i+1}β_{i+1} - β_i)
///   + Σ_{i≤g} (P_{i-1}α_i ⊗ P_{i-1}a_iβ_i - P_iβ_i ⊗ P_i b_iα_i) + χ ⊗ ω + ω ⊗ b_g a_g χ.
pub fn diagonal_closed_form(genus: u32) -> Diagonal {
    check_genus(genus).expect("genus");
    let g = genus;
    let one = Word::identity(g);
    let l = |x: Letter| Word::letter(g, x);
    let (a, b) = (|i| l(Letter::a(i)), |i| l(Letter::b(i)));
    let p = |i| p_word(g, i);
    let c = |i| c_word(g, i);
    use BasisSymbol::{Alpha, Beta, Chi, Omega};

    let mut images = BTreeMap::new();
    let sym = |s| TensorBasisSymbol(vec![s]);
    let chi = chain1(g, &[(1, one.clone(), Chi)]);
    images.insert(sym(Chi), tensor(&chi, &chi));
    for i in 1..=g {
        for (s, x) in [(Alpha(i), a(i)), (Beta(i), b(i))] {
            let img = tensor(&chain1(g, &[(1, one.clone(), s)]), &chain1(g, &[(1, x, Chi)]))
                .add(&tensor(&chi, &chain1(g, &[(1, one.clone(), s)])));
            images.insert(sym(s), img);
        }
    }

    let mut dw = ChainElement::zero(&[g, g], 2);
    let mut left = ChainElement::zero(&[g], 1);
    for i in 1..g {
        let j = i;
        let pj = p(j - 1);
        left = left.add(&chain1(
            g,
            &[
                (1, pj.clone(), Alpha(j)),
                (-1, pj.concat(&c(j)).concat(&b(j)), Alpha(j)),
                (1, pj.concat(&a(j)), Beta(j)),
                (-1, pj.concat(&c(j)), Beta(j)),
            ],
        ));
        let pi = p(i);
        let right = chain1(
            g,
            &[
                (1, pi.clone(), Alpha(i + 1)),
                (-1, pi.concat(&b(i)), Alpha(i)),
                (1, pi.concat(&a(i + 1)), Beta(i + 1)),
                (-1, pi.clone(), Beta(i)),
            ],
        );
        dw = dw.add(&tensor(&left, &right));
    }
    for i in 1..=g {
        let (pm, pi) = (p(i - 1), p(i));
        dw = dw.add(&tensor(&chain1(g, &[(1, pm.clone(), Alpha(i))]), &chain1(g, &[(1, pm.concat(&a(i)), Beta(i))])));
        dw = dw.sub(&tensor(&chain1(g, &[(1, pi.clone(), Beta(i))]), &chain1(g, &[(1, pi.concat(&b(i)), Alpha(i))])));
    }
    dw = dw.add(&tensor(&chi, &chain1(g, &[(1, one.clone(), Omega)])));
    dw = dw.add(&tensor(&chain1(g, &[(1, one.clone(), Omega)]), &chain1(g, &[(1, b(g).concat(&a(g)), Chi)])));
    images.insert(sym(Omega), dw);
    Diagonal { genera: vec![g], images }
}

/// The diagonal of M^{g_1} ⊗ M^{g_2} built from the closed-form factor
/// diagonals and the symmetry T.
pub fn shuffle_diagonal(g1: u32, g2: u32) -> Diagonal {
    let d1 = diagonal_closed_form(g1);
    let d2 = diagonal_closed_form(g2);
    let genera = vec![g1, g2];
    let doubled = vec![g1, g2, g1, g2];
    let mut images = BTreeMap::new();
    for k in 0..=4 {
        for b in basis_of(&genera, k) {
            let x = d1.image(&TensorBasisSymbol(vec![b.0[0]]));
            let z = d2.image(&TensorBasisSymbol(vec![b.0[1]]));
            let mut img = ChainElement::zero(&doubled, k);
            for (xc, c) in x.terms() {
                let (x1, x2) = ChainElement::split_cell(xc, 1);
                for (zc, e) in z.terms() {
                    let (z1, z2) = ChainElement::split_cell(zc, 1);
                    let odd = x2.symbol.degree() * z1.symbol.degree() % 2 == 1;
                    let coef = if odd { -(c * e) } else { c * e };
                    img.add_cell(join(&join(&x1, &z1), &join(&x2, &z2)), coef);
                }
            }
            images.insert(b, img);
        }
    }
    Diagonal { genera, images }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalReport {
    pub genera: Vec<u32>,
    pub counit_failures: Vec<String>,
    pub chain_map_failures: Vec<String>,
    pub equivariance_failures: Vec<String>,
    /// Basis symbols where the closed form and the generic lift differ
    /// (single factor only).
    pub closed_form_mismatches: Vec<String>,
}

impl DiagonalReport {
    pub fn ok(&self) -> bool {
        self.counit_failures.is_empty()
            && self.chain_map_failures.is_empty()
            && self.equivariance_failures.is_empty()
            && self.closed_form_mismatches.is_empty()
    }
}

/// (ε ⊗ 1)Δ(x) or (1 ⊗ ε)Δ(x): drop one half where it is all χ.
pub fn counit(y: &ChainElement, n: usize, left: bool) -> ChainElement {
    let genera = y.genera().to_vec();
    let (drop, keep) = if left { (0..n, n..2 * n) } else { (n..2 * n, 0..n) };
    let kept: Vec<u32> = genera[keep.clone()].to_vec();
    let mut out = ChainElement::zero(&kept, y.degree());
    for (cell, c) in y.terms() {
        if cell.symbol.0[drop.clone()].iter().all(|s| *s == BasisSymbol::Chi) {
            out.add_cell(
                Cell::new(cell.words[keep.clone()].to_vec(), TensorBasisSymbol(cell.symbol.0[keep.clone()].to_vec())),
                c.clone(),
            );
        }
    }
    out
}

/// Counit, chain-map and equivariance checks for a diagonal on all basis
/// symbols and on `samples` random translates of each.
pub fn verify_diagonal(diag: &Diagonal, samples: usize, seed: u64) -> DiagonalReport {
    let genera = diag.genera().to_vec();
    let n = genera.len();
    let mut report = DiagonalReport {
        genera: genera.clone(),
        counit_failures: Vec::new(),
        chain_map_failures: Vec::new(),
        equivariance_failures: Vec::new(),
        closed_form_mismatches: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (b, img) in diag.images() {
        let x = ChainElement::basis(&genera, b.clone());
        if counit(img, n, true) != x || counit(img, n, false) != x {
            report.counit_failures.push(b.to_string());
        }
        for t in 0..=samples {
            let ys: Vec<Word> = if t == 0 {
                genera.iter().map(|&g| Word::identity(g)).collect()
            } else {
                genera.iter().map(|&g| random_word(&mut rng, g, 10)).collect()
            };
            let yx = x.act(&ys);
            let lhs = tensor_differential(&diag.apply(&yx));
            let rhs = diag.apply(&tensor_differential(&yx));
            if lhs != rhs {
                report.chain_map_failures.push(format!("{b} translated by {ys:?}"));
            }
            let ys2: Vec<Word> = ys.iter().chain(&ys).cloned().collect();
            if diag.apply(&yx) != img.act(&ys2) {
                report.equivariance_failures.push(b.to_string());
            }
        }
    }
    if n == 1 {
        let generic = diagonal_generic(&genera);
        for (b, img) in diag.images() {
            if generic.image(b) != img {
                report.closed_form_mismatches.push(b.to_string());
            }
        }
    }
    report
}
