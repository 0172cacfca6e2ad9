//! Endomorphisms of π_g, their lifts to the resolution and the induced maps
//! on cochains.
//!
//! File format: one line per generator, `a1 -> <word>` or `b2 -> <word>`;
//! blank lines and `#` comments are ignored. Every generator must appear.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cohomology::{Cochain, CoefficientSystem, SignSet};
use crate::error::{Error, Result};
use crate::homotopy::{s0_of, s1};
use crate::resolution::{d, BasisSymbol, ChainElement, TensorBasisSymbol};
use crate::word::{check_genus, GenKind, Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupEndomorphism {
    genus: u32,
    images: BTreeMap<Generator, Word>,
}

impl GroupEndomorphism {
    /// Checks that the relator maps to the identity.
    pub fn new(genus: u32, images: BTreeMap<Generator, Word>) -> Result<Self> {
        check_genus(genus)?;
        for g in Generator::all(genus) {
            match images.get(&g) {
                None => return Err(Error::Parse(format!("no image given for {g}"))),
                Some(w) if w.genus() != genus => {
                    return Err(Error::GenusMismatch(w.genus().to_string(), genus.to_string()))
                }
                _ => {}
            }
        }
        if images.len() != 2 * genus as usize {
            return Err(Error::Parse("images given for generators out of range".into()));
        }
        let mu = GroupEndomorphism { genus, images };
        let r = mu.apply(&crate::word::relator(genus));
        if !r.is_empty() {
            return Err(Error::RelatorNotPreserved(r.to_string()));
        }
        Ok(mu)
    }

    pub fn identity(genus: u32) -> Self {
        let images = Generator::all(genus).into_iter().map(|g| (g, Word::letter(genus, g.letter()))).collect();
        GroupEndomorphism { genus, images }
    }

    /// x ↦ w x w̄.
    pub fn inner(w: &Word) -> Self {
        let g = w.genus();
        let wi = w.inverse();
        let images = Generator::all(g)
            .into_iter()
            .map(|x| (x, w.concat(&Word::letter(g, x.letter())).concat(&wi).normal_form()))
            .collect();
        GroupEndomorphism { genus: g, images }
    }

    pub fn parse(text: &str, genus: u32) -> Result<Self> {
        let mut images = BTreeMap::new();
        for line in text.lines().map(|l| l.split('#').next().unwrap().trim()).filter(|l| !l.is_empty()) {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `<generator> -> <word>`, got {line:?}")))?;
            let g = Generator::parse(lhs.trim())?;
            let w = Word::parse(rhs.trim(), genus)?;
            if images.insert(g, w).is_some() {
                return Err(Error::Parse(format!("{g} given twice")));
            }
        }
        Self::new(genus, images)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn image(&self, g: Generator) -> &Word {
        &self.images[&g]
    }

    fn letter_image(&self, l: Letter) -> Word {
        let w = &self.images[&l.generator()];
        if l.inverted {
            w.inverse()
        } else {
            w.clone()
        }
    }

    /// μ_*(w), in normal form.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity(self.genus);
        for &l in w.letters() {
            out = out.concat(&self.letter_image(l));
        }
        out.normal_form()
    }

    /// The set of generators acting by -1 on the pullback of Z_S along μ.
    pub fn pull_back_signs(&self, s: &SignSet) -> SignSet {
        let members = Generator::all(self.genus).into_iter().filter(|g| s.sign(self.image(*g)) < 0);
        SignSet::new(self.genus, members).expect("valid generators")
    }

    pub fn lift(&self) -> LiftedEndomorphism {
        LiftedEndomorphism::new(self.clone())
    }
}

/// Exponent sums of a word in every generator.
fn exponent_vector(w: &Word) -> Vec<i64> {
    Generator::all(w.genus()).into_iter().map(|g| w.exponent_sum(g)).collect()
}

/// Whether w is almost paired with unpaired letter `l`. The pairing is
/// unordered, so this holds exactly when the exponent sums of w are those
/// of l; they do not depend on the word chosen for the group element.
pub fn is_almost_paired(w: &Word, l: Letter) -> bool {
    exponent_vector(w) == exponent_vector(&Word::letter(w.genus(), l))
}

/// Chain map (μ_0, μ_1, μ_2) over μ_*: μ_0(χ) = χ and
/// μ_q(b) = s_{q-1}(μ_{q-1}(d b)) on basis elements.
#[derive(Debug, Clone)]
pub struct LiftedEndomorphism {
    pub mu: GroupEndomorphism,
    images: BTreeMap<BasisSymbol, ChainElement>,
}

impl LiftedEndomorphism {
    fn new(mu: GroupEndomorphism) -> Self {
        let g = mu.genus;
        let mut lifted = LiftedEndomorphism { mu, images: BTreeMap::new() };
        lifted.images.insert(BasisSymbol::Chi, ChainElement::basis(&[g], TensorBasisSymbol::chis(1)));
        for gen in Generator::all(g) {
            // s_0((μ(ℓ) - 1) χ) = s_0(μ(ℓ) χ) since s_0(χ) = 0
            let img = s0_of(lifted.mu.image(gen));
            lifted.images.insert(BasisSymbol::of_generator(gen), img);
        }
        let domega = d(&ChainElement::basis(&[g], TensorBasisSymbol(vec![BasisSymbol::Omega])));
        let img = s1(&lifted.apply(&domega));
        lifted.images.insert(BasisSymbol::Omega, img);
        lifted
    }

    pub fn genus(&self) -> u32 {
        self.mu.genus
    }

    pub fn image(&self, b: BasisSymbol) -> &ChainElement {
        &self.images[&b]
    }

    /// μ_q(y b) = μ_*(y) μ_q(b), extended linearly.
    pub fn apply(&self, x: &ChainElement) -> ChainElement {
        let g = self.genus();
        assert_eq!(x.genera(), &[g]);
        let mut out = ChainElement::zero(&[g], x.degree());
        for (cell, c) in x.terms() {
            let img = &self.images[&cell.symbol.0[0]];
            let y = self.mu.apply(&cell.words[0]);
            out.add_scaled(&img.act(&[y]), c);
        }
        out
    }

    /// d μ_q = μ_{q-1} d on every basis element.
    pub fn is_chain_map(&self) -> bool {
        let g = self.genus();
        BasisSymbol::all(g).into_iter().all(|b| {
            let x = ChainElement::basis(&[g], TensorBasisSymbol(vec![b]));
            d(&self.apply(&x)) == self.apply(&d(&x))
        })
    }

    /// μ^*: cochains with coefficients Z_S to cochains with coefficients in
    /// the pullback of Z_S, (μ^*f)(b) = f(μ(b)).
    pub fn pull_back(&self, f: &Cochain) -> Result<Cochain> {
        let g = self.genus();
        if f.genera() != [g] {
            return Err(Error::GenusMismatch(format!("{:?}", f.genera()), g.to_string()));
        }
        let s = f.coeffs().set(0);
        let coeffs = CoefficientSystem::new(vec![self.mu.pull_back_signs(s)]);
        let mut out = Cochain::zero(&coeffs, f.degree());
        for b in BasisSymbol::all(g).into_iter().filter(|b| b.degree() == f.degree()) {
            out.add_value(TensorBasisSymbol(vec![b]), f.evaluate(self.image(b)));
        }
        Ok(out)
    }

    /// (1 ⊗ μ)^* on cochains over (g', g): the value on x ⊗ y is
    /// f(x ⊗ μ(y)). μ has degree zero, so no Koszul sign appears.
    pub fn pull_back_second(&self, f: &Cochain) -> Result<Cochain> {
        let g = self.genus();
        let genera = f.genera();
        if genera.len() != 2 || genera[1] != g {
            return Err(Error::GenusMismatch(format!("{genera:?}"), g.to_string()));
        }
        let (s1, s2) = (f.coeffs().set(0), f.coeffs().set(1));
        let coeffs = CoefficientSystem::new(vec![s1.clone(), self.mu.pull_back_signs(s2)]);
        let mut out = Cochain::zero(&coeffs, f.degree());
        for b in crate::resolution::basis_of(&genera, f.degree()) {
            let (x, y) = (b.0[0], b.0[1]);
            let mut total = BigInt::zero();
            for (cell, c) in self.image(y).terms() {
                let v = f.value(&TensorBasisSymbol(vec![x, cell.symbol.0[0]]));
                if v.is_zero() {
                    continue;
                }
                if s2.sign(&cell.words[0]) < 0 {
                    total -= c * v;
                } else {
                    total += c * v;
                }
            }
            out.add_value(b, total);
        }
        Ok(out)
    }
}

/// Result of validating a supplied μ against the almost-paired shape.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub genus: u32,
    /// Generators whose image is not almost paired with the expected letter.
    pub unpaired_mismatches: Vec<String>,
    /// Whether the trivial-coefficient dual of μ_1 equals the involution
    /// α_i^* ↦ -α_{g-i+1}^*, β_i^* ↦ β_{g-i+1}^*.
    pub dual_matches: bool,
}

impl ShapeReport {
    pub fn ok(&self) -> bool {
        self.unpaired_mismatches.is_empty() && self.dual_matches
    }
}

/// Expected unpaired letter: ā_{g-i+1} for a_i and b_{g-i+1} for b_i.
pub fn expected_letter(genus: u32, g: Generator) -> Letter {
    let k = genus - g.index + 1;
    match g.kind {
        GenKind::A => Letter::a(k).inv(),
        GenKind::B => Letter::b(k),
    }
}

pub fn validate_shape(lifted: &LiftedEndomorphism) -> Result<ShapeReport> {
    let genus = lifted.genus();
    let unpaired_mismatches = Generator::all(genus)
        .into_iter()
        .filter(|g| !is_almost_paired(lifted.mu.image(*g), expected_letter(genus, *g)))
        .map(|g| format!("{g} -> {}", lifted.mu.image(g)))
        .collect();
    let coeffs = CoefficientSystem::trivial(&[genus]);
    let mut dual_matches = true;
    for g in Generator::all(genus) {
        let f = Cochain::dual(&coeffs, TensorBasisSymbol(vec![BasisSymbol::of_generator(g)]));
        if lifted.pull_back(&f)? != super::mu_star_trivial(&f)? {
            dual_matches = false;
        }
    }
    Ok(ShapeReport { genus, unpaired_mismatches, dual_matches })
}

/// Collect the cells of μ_q(b) for display.
pub fn describe_lift(lifted: &LiftedEndomorphism) -> Vec<(String, String)> {
    BasisSymbol::all(lifted.genus())
        .into_iter()
        .map(|b| (b.to_string(), lifted.image(b).to_string().trim().replace('\n', " + ")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_group;
    use crate::resolution::basis_of;

    fn reflection(g: u32) -> GroupEndomorphism {
        // a_i ↦ ā_k, b_i ↦ a_k b_k ā_k with k = g - i + 1; the relator goes
        // to its inverse.
        let mut text = String::new();
        for i in 1..=g {
            let k = g - i + 1;
            text += &format!("a{i} -> A{k}\nb{i} -> a{k}b{k}A{k}\n");
        }
        GroupEndomorphism::parse(&text, g).unwrap()
    }

    #[test]
    fn identity_lift_is_identity() {
        let l = GroupEndomorphism::identity(2).lift();
        for b in BasisSymbol::all(2) {
            assert_eq!(l.image(b), &ChainElement::basis(&[2], TensorBasisSymbol(vec![b])), "{b}");
        }
    }

    #[test]
    fn lifts_are_chain_maps() {
        for g in [2, 3] {
            assert!(reflection(g).lift().is_chain_map());
            assert!(GroupEndomorphism::inner(&Word::parse("a1b2", g).unwrap()).lift().is_chain_map());
        }
    }

    #[test]
    fn bad_images_rejected() {
        assert!(matches!(GroupEndomorphism::parse("a1 -> a1\nb1 -> b1\na2 -> a2\nb2 -> a1", 2), Err(Error::RelatorNotPreserved(_))));
        assert!(GroupEndomorphism::parse("a1 -> a1", 2).is_err());
    }

    #[test]
    fn shape_validation() {
        let r = validate_shape(&reflection(3).lift()).unwrap();
        assert!(r.ok(), "{r:?}");
        let r = validate_shape(&GroupEndomorphism::identity(2).lift()).unwrap();
        assert!(!r.ok());
    }

    #[test]
    fn inner_automorphism_acts_trivially() {
        let g = 2;
        let lift = GroupEndomorphism::inner(&Word::parse("a1", g).unwrap()).lift();
        let coeffs = CoefficientSystem::trivial(&[g]);
        for k in 0..=2 {
            let h = cohomology_group(&coeffs, k);
            for b in basis_of(&[g], k) {
                let f = Cochain::dual(&coeffs, b);
                let pulled = lift.pull_back(&f).unwrap();
                assert_eq!(h.class_coordinates(&pulled).unwrap(), h.class_coordinates(&f).unwrap());
            }
        }
    }

    #[test]
    fn explicit_reflection_agrees_on_obstruction_classes() {
        use crate::effective_tc::{is_effective_zero_divisor, obstruction_classes, pullback_twisted_diagonal, MuData};
        for g in [2, 3] {
            let mu = MuData::Explicit(Box::new(reflection(g).lift()));
            for (name, f) in obstruction_classes(g) {
                let r = is_effective_zero_divisor(&f, &mu, &name).unwrap();
                assert!(r.verdict, "genus {g} class {name}");
            }
            let id = MuData::Explicit(Box::new(GroupEndomorphism::identity(g).lift()));
            let c = CoefficientSystem::parse("a1|b1", &[g, g]).unwrap();
            for b in basis_of(&[g, g], 2) {
                let f = Cochain::dual(&c, b);
                assert_eq!(pullback_twisted_diagonal(&f, &id).unwrap(), crate::cohomology::pullback_diagonal(&f).unwrap());
            }
        }
    }
}
