//! Effective zero-divisors for the antipodal action on Σ_g.
//!
//! A class of π_g × π_g is an effective zero-divisor when it pulls back to
//! zero along both the diagonal Δ and the twisted diagonal Δ'' = (1 × μ)Δ.
//! At cochain level (Δ'')^* = Δ^* ∘ (1 ⊗ μ^*). With trivial coefficients μ^*
//! on degree-one cochains only depends on the action of μ_* on H_1, which
//! gives [`mu_star_trivial`]; twisted coefficients need explicit words for
//! μ_*, read from a file by [`GroupEndomorphism::parse`].

pub mod endomorphism;
pub mod search;

use num_bigint::BigInt;
use serde::Serialize;

pub use endomorphism::{is_almost_paired, validate_shape, GroupEndomorphism, LiftedEndomorphism, ShapeReport};
pub use search::{search_product_length, SearchReport};

use crate::cohomology::group::{ser_ints, ClassCoordinates};
use crate::cohomology::{cohomology_group, cup_two_factor, cup_two_factor_direct, pullback_diagonal, Cochain, CoefficientSystem};
use crate::error::{Error, Result};
use crate::resolution::{BasisSymbol, TensorBasisSymbol};

/// α_i^* ↦ -α_{g-i+1}^*, β_i^* ↦ β_{g-i+1}^* on degree-one cochains with
/// trivial coefficients; the identity in degree zero.
pub fn mu_star_trivial(f: &Cochain) -> Result<Cochain> {
    let genera = f.genera();
    let [g] = genera[..] else {
        return Err(Error::Unsupported("mu_star_trivial acts on one factor".into()));
    };
    if !f.coeffs().is_trivial() {
        return Err(Error::Unsupported("mu_star_trivial needs trivial coefficients".into()));
    }
    let mut out = Cochain::zero(f.coeffs(), f.degree());
    for (sym, c) in f.values() {
        let (s, c) = map_symbol(g, sym.0[0], c)?;
        out.add_value(TensorBasisSymbol(vec![s]), c);
    }
    Ok(out)
}

fn map_symbol(g: u32, s: BasisSymbol, c: &BigInt) -> Result<(BasisSymbol, BigInt)> {
    Ok(match s {
        BasisSymbol::Chi => (s, c.clone()),
        BasisSymbol::Alpha(i) => (BasisSymbol::Alpha(g - i + 1), -c),
        BasisSymbol::Beta(i) => (BasisSymbol::Beta(g - i + 1), c.clone()),
        BasisSymbol::Omega => {
            return Err(Error::Unsupported("mu_star_trivial is only known in degrees 0 and 1".into()))
        }
    })
}

/// The data used for μ^*.
#[derive(Debug, Clone)]
pub enum MuData {
    /// The cochain map [`mu_star_trivial`]; trivial coefficients only.
    Trivial,
    /// The dual of an explicit lift.
    Explicit(Box<LiftedEndomorphism>),
}

/// (1 ⊗ μ^*) on a cochain over (g, g).
pub fn one_tensor_mu_star(f: &Cochain, mu: &MuData) -> Result<Cochain> {
    let genera = f.genera();
    if genera.len() != 2 || genera[0] != genera[1] {
        return Err(Error::GenusMismatch(format!("{genera:?}"), "two equal genera".into()));
    }
    match mu {
        MuData::Explicit(l) => l.pull_back_second(f),
        MuData::Trivial => {
            if !f.coeffs().is_trivial() {
                return Err(Error::Unsupported(
                    "twisted coefficients need an explicit endomorphism (--mu)".into(),
                ));
            }
            let mut out = Cochain::zero(f.coeffs(), f.degree());
            for (sym, c) in f.values() {
                let (y, c) = map_symbol(genera[1], sym.0[1], c)?;
                out.add_value(TensorBasisSymbol(vec![sym.0[0], y]), c);
            }
            Ok(out)
        }
    }
}

/// (Δ'')^* = Δ^* ∘ (1 ⊗ μ^*).
pub fn pullback_twisted_diagonal(f: &Cochain, mu: &MuData) -> Result<Cochain> {
    pullback_diagonal(&one_tensor_mu_star(f, mu)?)
}

fn coordinates(f: &Cochain) -> Result<ClassCoordinates> {
    if f.degree() > 2 {
        return Ok(ClassCoordinates { torsion: vec![], free: vec![] });
    }
    cohomology_group(f.coeffs(), f.degree()).class_coordinates(f)
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroDivisorReport {
    pub class: String,
    pub coeffs: String,
    pub diagonal: ClassCoordinates,
    pub twisted_diagonal: ClassCoordinates,
    pub verdict: bool,
}

/// Whether the class of the cocycle `c` lies in ker Δ^* ∩ ker (Δ'')^*.
pub fn is_effective_zero_divisor(c: &Cochain, mu: &MuData, label: &str) -> Result<ZeroDivisorReport> {
    if !c.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let diagonal = coordinates(&pullback_diagonal(c)?)?;
    let twisted_diagonal = coordinates(&pullback_twisted_diagonal(c, mu)?)?;
    let verdict = diagonal.is_zero() && twisted_diagonal.is_zero();
    Ok(ZeroDivisorReport {
        class: label.to_string(),
        coeffs: c.coeffs().to_string(),
        diagonal,
        twisted_diagonal,
        verdict,
    })
}

/// Whether the class of `c` vanishes under Δ^*.
pub fn is_zero_divisor(c: &Cochain) -> Result<bool> {
    Ok(coordinates(&pullback_diagonal(c)?)?.is_zero())
}

fn dual2(coeffs: &CoefficientSystem, terms: &[(i64, BasisSymbol, BasisSymbol)]) -> Cochain {
    let mut f = Cochain::zero(coeffs, terms[0].1.degree() + terms[0].2.degree());
    for &(c, x, y) in terms {
        f.add_value(TensorBasisSymbol(vec![x, y]), BigInt::from(c));
    }
    f
}

/// The classes a, b, c over π_g × π_g with trivial coefficients.
pub fn obstruction_classes(g: u32) -> [(String, Cochain); 3] {
    use BasisSymbol::*;
    let t = CoefficientSystem::trivial(&[g, g]);
    let a = dual2(&t, &[(1, Alpha(1), Chi), (-1, Chi, Alpha(1)), (1, Chi, Alpha(g)), (-1, Alpha(g), Chi)]);
    let b = dual2(&t, &[(1, Beta(1), Chi), (-1, Chi, Beta(1)), (1, Beta(g), Chi), (-1, Chi, Beta(g))]);
    let c = dual2(&t, &[(1, Beta(1), Alpha(1)), (-1, Beta(g), Alpha(g))]);
    [("a".into(), a), ("b".into(), b), ("c".into(), c)]
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub genus: u32,
    pub classes: Vec<ZeroDivisorReport>,
    pub product: String,
    /// Diagram route and direct dualization of the shuffled diagonal agree.
    pub routes_agree: bool,
    pub product_is_twice_tau: bool,
    #[serde(serialize_with = "ser_ints")]
    pub h4_coordinates: Vec<BigInt>,
    pub product_length: usize,
    pub certificate: Option<String>,
}

impl ObstructionReport {
    pub fn ok(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Check that a, b, c are effective zero-divisors and that abc is twice
/// (ω ⊗ ω)^*, a nonzero class of H^4 ≅ Z.
pub fn verify_obstruction(g: u32) -> Result<ObstructionReport> {
    crate::word::check_genus(g)?;
    let [a, b, c] = obstruction_classes(g);
    let classes = [&a, &b, &c]
        .iter()
        .map(|(name, f)| is_effective_zero_divisor(f, &MuData::Trivial, name))
        .collect::<Result<Vec<_>>>()?;
    let ab = cup_two_factor(&a.1, &b.1)?;
    let abc = cup_two_factor(&ab, &c.1)?;
    let direct = cup_two_factor_direct(&cup_two_factor_direct(&a.1, &b.1)?, &c.1)?;
    let t = CoefficientSystem::trivial(&[g, g]);
    let tau = dual2(&t, &[(1, BasisSymbol::Omega, BasisSymbol::Omega)]);
    let product_is_twice_tau = abc == tau.scale(&BigInt::from(2));
    let h4 = cohomology_group(&t, 4).class_coordinates(&abc)?;
    let nonzero = !h4.is_zero();
    let all_effective = classes.iter().all(|r| r.verdict);
    let product_length = classes.len();
    let certificate = (all_effective && nonzero && abc == direct)
        .then(|| format!("product = {}; secat >= {product_length}", render_product(&abc)));
    Ok(ObstructionReport {
        genus: g,
        classes,
        product: abc.to_string().trim().replace('\n', " + "),
        routes_agree: abc == direct,
        product_is_twice_tau,
        h4_coordinates: h4.free,
        product_length,
        certificate,
    })
}

/// `2*(omega(x)omega)^*` style rendering of a cochain.
pub fn render_product(f: &Cochain) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = f.values().map(|(s, c)| format!("{c}*({s})^*")).collect();
    parts.join(" + ")
}
