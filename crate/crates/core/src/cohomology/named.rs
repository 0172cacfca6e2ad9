//! Explicit cocycles: the pivot tables for H^1(π_g; Z_S), the classes ν,
//! λ'_i, μ''_j, λ̄'_i, μ̄''_j and τ over π_{g_1} × π_{g_2}, and checks that
//! the named sets are bases of the groups computed by Smith normal form.
//!
//! Names: `sigma`, `sigma<i>`, `alphabar<i>`, `betabar<i>` (one factor);
//! `nu`, `tau`, `alpha'<i>`, `beta'<i>`, `alpha''<j>`, `beta''<j>`,
//! `alphabar'<i>`, `betabar'<i>`, `alphabar''<j>`, `betabar''<j>` (two).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cochain::Cochain;
use super::coeffs::{CoefficientSystem, SignSet};
use super::cup::cross;
use super::group::{cohomology_group, CohomologyPresentation};
use super::smith::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::resolution::{BasisSymbol, TensorBasisSymbol};
use crate::word::{GenKind, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedCocycle {
    Sigma,
    SigmaI(u32),
    AlphaBar(u32),
    BetaBar(u32),
    Nu,
    /// λ'_i for the generator ℓ_i of the first factor.
    Prime(Generator),
    /// μ''_j for the generator m_j of the second factor.
    DoublePrime(Generator),
    /// λ̄'_i
    BarPrime(Generator),
    /// μ̄''_j
    BarDoublePrime(Generator),
    Tau,
}

fn greek(g: Generator) -> &'static str {
    match g.kind {
        GenKind::A => "alpha",
        GenKind::B => "beta",
    }
}

impl fmt::Display for NamedCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedCocycle::*;
        match *self {
            Sigma => write!(f, "sigma"),
            SigmaI(i) => write!(f, "sigma{i}"),
            AlphaBar(i) => write!(f, "alphabar{i}"),
            BetaBar(i) => write!(f, "betabar{i}"),
            Nu => write!(f, "nu"),
            Tau => write!(f, "tau"),
            Prime(g) => write!(f, "{}'{}", greek(g), g.index),
            DoublePrime(g) => write!(f, "{}''{}", greek(g), g.index),
            BarPrime(g) => write!(f, "{}bar'{}", greek(g), g.index),
            BarDoublePrime(g) => write!(f, "{}bar''{}", greek(g), g.index),
        }
    }
}

impl NamedCocycle {
    pub fn parse(s: &str) -> Result<Self> {
        use NamedCocycle::*;
        let bad = || Error::Parse(format!("unknown cocycle name {s:?}"));
        match s {
            "sigma" => return Ok(Sigma),
            "nu" => return Ok(Nu),
            "tau" => return Ok(Tau),
            _ => {}
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (head, digits) = s.split_at(split);
        let i: u32 = digits.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        let (name, primes) = match head.find('\'') {
            Some(p) => (&head[..p], &head[p..]),
            None => (head, ""),
        };
        let (base, bar) = match name.strip_suffix("bar") {
            Some(b) => (b, true),
            None => (name, false),
        };
        let gen = match base {
            "alpha" => Generator::a(i),
            "beta" => Generator::b(i),
            "sigma" if !bar && primes.is_empty() => return Ok(SigmaI(i)),
            _ => return Err(bad()),
        };
        Ok(match (bar, primes) {
            (true, "") if gen.kind == GenKind::A => AlphaBar(i),
            (true, "") => BetaBar(i),
            (false, "'") => Prime(gen),
            (false, "''") => DoublePrime(gen),
            (true, "'") => BarPrime(gen),
            (true, "''") => BarDoublePrime(gen),
            _ => return Err(bad()),
        })
    }

    pub fn factors(&self) -> usize {
        use NamedCocycle::*;
        match self {
            Sigma | SigmaI(_) | AlphaBar(_) | BetaBar(_) => 1,
            _ => 2,
        }
    }
}

/// The partition class of an index i with respect to S.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexClass {
    Y,
    A,
    B,
    N,
}

pub fn index_class(s: &SignSet, i: u32) -> IndexClass {
    match (s.contains(Generator::a(i)), s.contains(Generator::b(i))) {
        (true, true) => IndexClass::Y,
        (true, false) => IndexClass::A,
        (false, true) => IndexClass::B,
        (false, false) => IndexClass::N,
    }
}

/// The pivot: smallest i_0 with a_{i_0} ∈ S, otherwise smallest i_0 with
/// b_{i_0} ∈ S.
pub fn pivot(s: &SignSet) -> Option<Generator> {
    let g = s.genus();
    (1..=g)
        .map(Generator::a)
        .find(|x| s.contains(*x))
        .or_else(|| (1..=g).map(Generator::b).find(|x| s.contains(*x)))
}

fn sym1(s: BasisSymbol) -> TensorBasisSymbol {
    TensorBasisSymbol(vec![s])
}

fn sym2(x: BasisSymbol, y: BasisSymbol) -> TensorBasisSymbol {
    TensorBasisSymbol(vec![x, y])
}

fn eps(g: Generator) -> i64 {
    match g.kind {
        GenKind::A => 1,
        GenKind::B => -1,
    }
}

fn greek_of(g: Generator) -> BasisSymbol {
    BasisSymbol::of_generator(g)
}

fn combo1(coeffs: &CoefficientSystem, terms: &[(i64, BasisSymbol)]) -> Cochain {
    let mut f = Cochain::zero(coeffs, 1);
    for &(c, s) in terms {
        f.add_value(sym1(s), BigInt::from(c));
    }
    f
}

fn nonempty(s: &SignSet) -> Result<()> {
    if s.is_empty() {
        Err(Error::Unsupported("the named cocycle needs a nonempty sign set".into()))
    } else {
        Ok(())
    }
}

fn single_factor(coeffs: &CoefficientSystem, name: NamedCocycle) -> Result<Cochain> {
    use BasisSymbol::{Alpha, Beta};
    use IndexClass::*;
    let s = coeffs.set(0);
    nonempty(s)?;
    let g = s.genus();
    let check = |i: u32| {
        if i == 0 || i > g {
            Err(Error::IndexOutOfRange { index: i, genus: g })
        } else {
            Ok(())
        }
    };
    let p = pivot(s).expect("nonempty");
    let i0 = p.index;
    let case_a = p.kind == GenKind::A;
    Ok(match name {
        NamedCocycle::Sigma => {
            let terms: Vec<(i64, BasisSymbol)> = s.members().map(|x| (1, greek_of(x))).collect();
            combo1(coeffs, &terms)
        }
        NamedCocycle::SigmaI(i) => {
            check(i)?;
            match index_class(s, i) {
                Y => combo1(coeffs, &[(1, Alpha(i)), (1, Beta(i))]),
                A => combo1(coeffs, &[(1, Alpha(i))]),
                B => combo1(coeffs, &[(1, Beta(i))]),
                N => combo1(coeffs, &[]),
            }
        }
        NamedCocycle::AlphaBar(i) => {
            check(i)?;
            match (case_a, index_class(s, i)) {
                (_, N) => combo1(coeffs, &[(1, Alpha(i))]),
                (true, Y | A) | (false, A) => combo1(coeffs, &[]),
                (true, B) => combo1(coeffs, &[(1, Alpha(i)), (1, Beta(i0))]),
                (false, Y | B) => combo1(coeffs, &[(1, Alpha(i)), (-1, Alpha(i0))]),
            }
        }
        NamedCocycle::BetaBar(i) => {
            check(i)?;
            match (case_a, index_class(s, i)) {
                (_, N) => combo1(coeffs, &[(1, Beta(i))]),
                (true, Y | A) => combo1(coeffs, &[(1, Beta(i)), (-1, Beta(i0))]),
                (true, B) | (false, Y | B) => combo1(coeffs, &[]),
                (false, A) => combo1(coeffs, &[(1, Beta(i)), (1, Alpha(i0))]),
            }
        }
        _ => unreachable!(),
    })
}

/// ℓ_0 (or m_0): the smallest-index generator whose hat lies in S.
pub fn hat_pivot(s: &SignSet) -> Option<Generator> {
    Generator::all(s.genus()).into_iter().find(|x| s.contains(x.hat()))
}

fn two_factor(coeffs: &CoefficientSystem, name: NamedCocycle) -> Result<Cochain> {
    use BasisSymbol::{Chi, Omega};
    let (s1, s2) = (coeffs.set(0), coeffs.set(1));
    let check = |x: Generator, s: &SignSet| {
        if x.index == 0 || x.index > s.genus() {
            Err(Error::IndexOutOfRange { index: x.index, genus: s.genus() })
        } else {
            Ok(())
        }
    };
    let mut f = Cochain::zero(coeffs, 0);
    let put = |f: &mut Cochain, c: i64, x: BasisSymbol, y: BasisSymbol| {
        let s = sym2(x, y);
        if f.is_zero() {
            *f = Cochain::zero(coeffs, s.degree());
        }
        f.add_value(s, BigInt::from(c));
    };
    if name == NamedCocycle::Tau {
        put(&mut f, 1, Omega, Omega);
        return Ok(f);
    }
    nonempty(s1)?;
    nonempty(s2)?;
    let degree = match name {
        NamedCocycle::Nu => 1,
        NamedCocycle::Prime(_) | NamedCocycle::DoublePrime(_) => 2,
        _ => 3,
    };
    f = Cochain::zero(coeffs, degree);
    match name {
        NamedCocycle::Nu => {
            for l in s1.members() {
                put(&mut f, 1, greek_of(l), Chi);
            }
            for m in s2.members() {
                put(&mut f, 1, Chi, greek_of(m));
            }
        }
        NamedCocycle::Prime(l) => {
            check(l, s1)?;
            for m in s2.members() {
                put(&mut f, 1, greek_of(l), greek_of(m));
            }
            if s1.contains(l.hat()) {
                put(&mut f, eps(l), Omega, Chi);
            }
        }
        NamedCocycle::DoublePrime(m) => {
            check(m, s2)?;
            for l in s1.members() {
                put(&mut f, 1, greek_of(l), greek_of(m));
            }
            if s2.contains(m.hat()) {
                put(&mut f, -eps(m), Chi, Omega);
            }
        }
        NamedCocycle::BarPrime(l) => {
            check(l, s1)?;
            let m0 = hat_pivot(s2).expect("nonempty");
            put(&mut f, eps(l), greek_of(l), Omega);
            if s1.contains(l.hat()) {
                put(&mut f, -eps(m0), Omega, greek_of(m0));
            }
        }
        NamedCocycle::BarDoublePrime(m) => {
            check(m, s2)?;
            let l0 = hat_pivot(s1).expect("nonempty");
            if s2.contains(m.hat()) {
                put(&mut f, eps(l0), greek_of(l0), Omega);
            }
            put(&mut f, -eps(m), Omega, greek_of(m));
        }
        _ => unreachable!(),
    }
    Ok(f)
}

/// The displayed cochain for `name` over `coeffs`; errors when the name
/// does not fit the number of factors or needs a nonempty sign set.
pub fn named_cocycle(name: NamedCocycle, coeffs: &CoefficientSystem) -> Result<Cochain> {
    let n = coeffs.sets().len();
    if n != name.factors() {
        return Err(Error::Unsupported(format!("{name} is defined over {} factor(s), got {n}", name.factors())));
    }
    let f = if n == 1 { single_factor(coeffs, name)? } else { two_factor(coeffs, name)? };
    debug_assert!(f.is_cocycle(), "{name} over {coeffs}");
    Ok(f)
}

/// Free part of the H^1 basis for one nonempty S, in the order σ_i, ᾱ_i,
/// β̄_i.
pub fn h1_free_basis(s: &SignSet) -> Result<Vec<NamedCocycle>> {
    use IndexClass::*;
    nonempty(s)?;
    let p = pivot(s).unwrap();
    let i0 = p.index;
    let case_a = p.kind == GenKind::A;
    let idx = |keep: &dyn Fn(IndexClass) -> bool, skip_pivot: bool| -> Vec<u32> {
        (1..=s.genus()).filter(|&i| keep(index_class(s, i)) && !(skip_pivot && i == i0)).collect()
    };
    let mut out: Vec<NamedCocycle> =
        idx(&|c| c != N, true).into_iter().map(NamedCocycle::SigmaI).collect();
    if case_a {
        out.extend(idx(&|c| matches!(c, B | N), false).into_iter().map(NamedCocycle::AlphaBar));
        out.extend(idx(&|c| matches!(c, Y | A | N), true).into_iter().map(NamedCocycle::BetaBar));
    } else {
        out.extend(idx(&|c| matches!(c, Y | B | N), true).into_iter().map(NamedCocycle::AlphaBar));
        out.extend(idx(&|c| matches!(c, A | N), false).into_iter().map(NamedCocycle::BetaBar));
    }
    Ok(out)
}

/// All 2(g_1 + g_2) generators λ'_i, μ''_j of the torsion of H^2.
pub fn h2_torsion_generators(g1: u32, g2: u32) -> Vec<NamedCocycle> {
    Generator::all(g1)
        .into_iter()
        .map(NamedCocycle::Prime)
        .chain(Generator::all(g2).into_iter().map(NamedCocycle::DoublePrime))
        .collect()
}

/// The torsion basis of H^2: drop λ'_i for the first ℓ_i ∈ S_1.
pub fn h2_torsion_basis(s1: &SignSet, s2: &SignSet) -> Result<Vec<NamedCocycle>> {
    nonempty(s1)?;
    nonempty(s2)?;
    let first = s1.members().next().unwrap();
    Ok(h2_torsion_generators(s1.genus(), s2.genus()).into_iter().filter(|n| *n != NamedCocycle::Prime(first)).collect())
}

/// The H^3 basis: all λ̄'_i and all μ̄''_j except μ̄''_0 (which equals λ̄'_0).
pub fn h3_basis(s1: &SignSet, s2: &SignSet) -> Result<Vec<NamedCocycle>> {
    nonempty(s1)?;
    nonempty(s2)?;
    let m0 = hat_pivot(s2).unwrap();
    Ok(Generator::all(s1.genus())
        .into_iter()
        .map(NamedCocycle::BarPrime)
        .chain(Generator::all(s2.genus()).into_iter().filter(|m| *m != m0).map(NamedCocycle::BarDoublePrime))
        .collect())
}

/// Exterior products of the free H^1 bases of the two factors.
pub fn h2_free_basis(coeffs: &CoefficientSystem) -> Result<Vec<Cochain>> {
    let c1 = CoefficientSystem::new(vec![coeffs.set(0).clone()]);
    let c2 = CoefficientSystem::new(vec![coeffs.set(1).clone()]);
    let b1 = h1_free_basis(coeffs.set(0))?;
    let b2 = h1_free_basis(coeffs.set(1))?;
    let mut out = Vec::new();
    for x in &b1 {
        let f = named_cocycle(*x, &c1)?;
        for y in &b2 {
            out.push(cross(&f, &named_cocycle(*y, &c2)?));
        }
    }
    Ok(out)
}

/// Outcome of checking a named family against a computed presentation.
#[derive(Debug, Clone, Serialize)]
pub struct BasisCheck {
    pub coeffs: String,
    pub degree: usize,
    pub group: String,
    pub all_cocycles: bool,
    /// Named torsion classes have zero free part and span the 2-torsion.
    pub torsion_ok: bool,
    /// Named free classes have a unimodular matrix of free coordinates.
    pub free_ok: bool,
    pub expected_shape: bool,
}

impl BasisCheck {
    pub fn ok(&self) -> bool {
        self.all_cocycles && self.torsion_ok && self.free_ok && self.expected_shape
    }
}

/// Rank over F_2 of integer vectors.
pub fn rank_mod2(rows: &[Vec<BigInt>]) -> usize {
    let two = BigInt::from(2);
    let mut m: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|x| !(x % &two).is_zero()).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn unimodular(rows: &[Vec<BigInt>]) -> bool {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return false;
    }
    let mut m = IntMatrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    let s = smith_normal_form(&m);
    s.rank() == n && s.diagonal.iter().all(|d| d.abs().is_one())
}

/// Check torsion representatives and free representatives against `h`.
pub fn check_family(h: &CohomologyPresentation, torsion: &[Cochain], free: &[Cochain], shape: (usize, usize)) -> BasisCheck {
    let all_cocycles = torsion.iter().chain(free).all(|f| f.is_cocycle());
    let mut torsion_ok = false;
    let mut free_ok = false;
    if all_cocycles {
        let tc: Vec<_> = torsion.iter().map(|f| h.class_coordinates(f).unwrap()).collect();
        torsion_ok = tc.iter().all(|c| c.free.iter().all(|x| x.is_zero()))
            && h.torsion.iter().all(|d| *d == BigInt::from(2))
            && tc.len() == h.torsion.len()
            && rank_mod2(&tc.iter().map(|c| c.torsion.clone()).collect::<Vec<_>>()) == h.torsion.len();
        let fc: Vec<Vec<BigInt>> = free.iter().map(|f| h.class_coordinates(f).unwrap().free).collect();
        free_ok = fc.len() == h.free_rank && (h.free_rank == 0 || unimodular(&fc));
    }
    BasisCheck {
        coeffs: h.coeffs.to_string(),
        degree: h.degree,
        group: h.describe(),
        all_cocycles,
        torsion_ok,
        free_ok,
        expected_shape: h.free_rank == shape.0 && h.torsion.len() == shape.1,
    }
}

fn named_all(names: &[NamedCocycle], coeffs: &CoefficientSystem) -> Result<Vec<Cochain>> {
    names.iter().map(|n| named_cocycle(*n, coeffs)).collect()
}

/// Check the named bases in every degree for a single nonempty S.
pub fn check_single_factor(s: &SignSet) -> Result<Vec<BasisCheck>> {
    let coeffs = CoefficientSystem::new(vec![s.clone()]);
    let g = s.genus() as usize;
    let h0 = cohomology_group(&coeffs, 0);
    let h1 = cohomology_group(&coeffs, 1);
    let h2 = cohomology_group(&coeffs, 2);
    let sigma = named_cocycle(NamedCocycle::Sigma, &coeffs)?;
    let free = named_all(&h1_free_basis(s)?, &coeffs)?;
    let omega = Cochain::dual(&coeffs, sym1(BasisSymbol::Omega));
    Ok(vec![
        check_family(&h0, &[], &[], (0, 0)),
        check_family(&h1, &[sigma], &free, (2 * g - 2, 1)),
        check_family(&h2, &[omega], &[], (0, 1)),
    ])
}

/// Check ν, the H^2 free and torsion bases, the H^3 basis and τ for
/// nonempty S_1, S_2.
pub fn check_two_factor(coeffs: &CoefficientSystem) -> Result<Vec<BasisCheck>> {
    let (s1, s2) = (coeffs.set(0), coeffs.set(1));
    let (g1, g2) = (s1.genus() as usize, s2.genus() as usize);
    let t = 2 * (g1 + g2) - 1;
    let h: Vec<CohomologyPresentation> = (0..=4).map(|k| cohomology_group(coeffs, k)).collect();
    let nu = named_cocycle(NamedCocycle::Nu, coeffs)?;
    let t2 = named_all(&h2_torsion_basis(s1, s2)?, coeffs)?;
    let f2 = h2_free_basis(coeffs)?;
    let t3 = named_all(&h3_basis(s1, s2)?, coeffs)?;
    let tau = named_cocycle(NamedCocycle::Tau, coeffs)?;
    Ok(vec![
        check_family(&h[0], &[], &[], (0, 0)),
        check_family(&h[1], &[nu], &[], (0, 1)),
        check_family(&h[2], &t2, &f2, (4 * (g1 - 1) * (g2 - 1), t)),
        check_family(&h[3], &t3, &[], (0, t)),
        check_family(&h[4], &[tau], &[], (0, 1)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for s in ["sigma", "sigma2", "alphabar1", "betabar3", "nu", "tau", "alpha'1", "beta''2", "alphabar'3", "betabar''1"] {
            assert_eq!(NamedCocycle::parse(s).unwrap().to_string(), s);
        }
        assert!(NamedCocycle::parse("gamma1").is_err());
        assert!(NamedCocycle::parse("alpha1").is_err());
    }

    #[test]
    fn sigma_example() {
        let c = CoefficientSystem::parse("a1,b2", &[2]).unwrap();
        let f = named_cocycle(NamedCocycle::Sigma, &c).unwrap();
        assert_eq!(f.to_string(), "1 alpha1\n1 beta2\n");
    }

    #[test]
    fn nu_example() {
        let c = CoefficientSystem::parse("a1|a1", &[2, 2]).unwrap();
        let f = named_cocycle(NamedCocycle::Nu, &c).unwrap();
        assert_eq!(f.to_string(), "1 chi(x)alpha1\n1 alpha1(x)chi\n");
    }

    #[test]
    fn single_factor_bases() {
        for s in SignSet::all(2).into_iter().skip(1) {
            for c in check_single_factor(&s).unwrap() {
                assert!(c.ok(), "{c:?}");
            }
        }
    }

    #[test]
    fn two_factor_bases() {
        let c = CoefficientSystem::parse("a1,b2|b1", &[2, 2]).unwrap();
        for r in check_two_factor(&c).unwrap() {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn h2_generators_have_one_relation() {
        let c = CoefficientSystem::parse("a1|a2,b1", &[2, 2]).unwrap();
        let h = cohomology_group(&c, 2);
        let all = named_all(&h2_torsion_generators(2, 2), &c).unwrap();
        let coords: Vec<_> = all.iter().map(|f| h.class_coordinates(f).unwrap().torsion).collect();
        assert_eq!(coords.len(), 8);
        assert_eq!(rank_mod2(&coords), 7);
    }
}
