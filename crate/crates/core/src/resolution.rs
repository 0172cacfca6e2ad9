//! The free resolution M^g of Z over Z[π_g] and its tensor products.
//!
//! M^g has basis χ in degree 0, α_i, β_i in degree 1 and ω in degree 2, with
//!
//! * d(α_i) = (a_i - 1)χ, d(β_i) = (b_i - 1)χ,
//! * d(ω) = Σ_i (∂R/∂a_i α_i + ∂R/∂b_i β_i).
//!
//! The differential on M_0 is zero (the complex is the deleted resolution).
//! A chain of M^{g_1} ⊗ ... ⊗ M^{g_n} is stored over its Z-basis: a tuple of
//! normal-form words (one per factor) together with a tuple of basis
//! symbols. Tensor differentials carry the Koszul sign of the preceding
//! factors.
//!
//! Text syntax, one term per line: `<int> * (<word>,...,<word>) . <sym>(x)...(x)<sym>`
//! with symbols `chi`, `alpha<i>`, `beta<i>`, `omega`; `0` is the zero chain.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_ring::fox_derivative;
use crate::word::{check_genus, relator, Generator, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisSymbol {
    Chi,
    Alpha(u32),
    Beta(u32),
    Omega,
}

impl BasisSymbol {
    pub fn degree(self) -> usize {
        match self {
            BasisSymbol::Chi => 0,
            BasisSymbol::Alpha(_) | BasisSymbol::Beta(_) => 1,
            BasisSymbol::Omega => 2,
        }
    }

    /// Position in χ < α_1 < β_1 < ... < α_g < β_g < ω.
    fn rank(self) -> u64 {
        match self {
            BasisSymbol::Chi => 0,
            BasisSymbol::Alpha(i) => 2 * i as u64 - 1,
            BasisSymbol::Beta(i) => 2 * i as u64,
            BasisSymbol::Omega => u64::MAX,
        }
    }

    /// The degree-one symbol dual to a generator: a_i -> α_i, b_i -> β_i.
    pub fn of_generator(g: Generator) -> Self {
        match g.kind {
            crate::word::GenKind::A => BasisSymbol::Alpha(g.index),
            crate::word::GenKind::B => BasisSymbol::Beta(g.index),
        }
    }

    /// The generator of a degree-one symbol.
    pub fn generator(self) -> Option<Generator> {
        match self {
            BasisSymbol::Alpha(i) => Some(Generator::a(i)),
            BasisSymbol::Beta(i) => Some(Generator::b(i)),
            _ => None,
        }
    }

    /// All symbols of one factor of genus g, in basis order.
    pub fn all(genus: u32) -> Vec<BasisSymbol> {
        let mut v = vec![BasisSymbol::Chi];
        for i in 1..=genus {
            v.push(BasisSymbol::Alpha(i));
            v.push(BasisSymbol::Beta(i));
        }
        v.push(BasisSymbol::Omega);
        v
    }

    pub fn parse(s: &str, genus: u32) -> Result<Self> {
        let s = s.trim();
        let idx = |rest: &str| -> Result<u32> {
            let i: u32 = rest.parse().map_err(|_| Error::Parse(format!("bad basis symbol {s:?}")))?;
            if i == 0 || i > genus {
                return Err(Error::IndexOutOfRange { index: i, genus });
            }
            Ok(i)
        };
        match s {
            "chi" => Ok(BasisSymbol::Chi),
            "omega" => Ok(BasisSymbol::Omega),
            _ if s.starts_with("alpha") => Ok(BasisSymbol::Alpha(idx(&s[5..])?)),
            _ if s.starts_with("beta") => Ok(BasisSymbol::Beta(idx(&s[4..])?)),
            _ => Err(Error::Parse(format!("bad basis symbol {s:?}"))),
        }
    }
}

impl Ord for BasisSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for BasisSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::Chi => write!(f, "chi"),
            BasisSymbol::Alpha(i) => write!(f, "alpha{i}"),
            BasisSymbol::Beta(i) => write!(f, "beta{i}"),
            BasisSymbol::Omega => write!(f, "omega"),
        }
    }
}

/// A tuple of basis symbols, one per tensor factor, ordered left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorBasisSymbol(pub Vec<BasisSymbol>);

impl TensorBasisSymbol {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|s| s.degree()).sum()
    }

    pub fn chis(n: usize) -> Self {
        TensorBasisSymbol(vec![BasisSymbol::Chi; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(s: &str, genera: &[u32]) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split("(x)").collect();
        if parts.len() != genera.len() {
            return Err(Error::Parse(format!(
                "symbol {s:?} has {} factors, expected {}",
                parts.len(),
                genera.len()
            )));
        }
        let syms = parts
            .iter()
            .zip(genera)
            .map(|(p, &g)| BasisSymbol::parse(p, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(TensorBasisSymbol(syms))
    }
}

impl fmt::Display for TensorBasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "(x)")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Tensor basis symbols of total degree k over the given genera, in
/// lexicographic order of the factor symbols.
pub fn basis_of(genera: &[u32], k: usize) -> Vec<TensorBasisSymbol> {
    fn go(genera: &[u32], k: usize, cur: &mut Vec<BasisSymbol>, out: &mut Vec<TensorBasisSymbol>) {
        let Some((&g, rest)) = genera.split_first() else {
            if k == 0 {
                out.push(TensorBasisSymbol(cur.clone()));
            }
            return;
        };
        for s in BasisSymbol::all(g) {
            if s.degree() <= k && k - s.degree() <= 2 * rest.len() {
                cur.push(s);
                go(rest, k - s.degree(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(genera, k, &mut Vec::new(), &mut out);
    out
}

/// A Z-basis element y_1 λ_1 ⊗ ... ⊗ y_n λ_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub words: Vec<Word>,
    pub symbol: TensorBasisSymbol,
}

impl Cell {
    pub fn new(words: Vec<Word>, symbol: TensorBasisSymbol) -> Self {
        Cell { words, symbol }
    }

    /// The cell with identity words.
    pub fn basis(genera: &[u32], symbol: TensorBasisSymbol) -> Self {
        Cell { words: genera.iter().map(|&g| Word::identity(g)).collect(), symbol }
    }
}

/// A homogeneous chain of M^{g_1} ⊗ ... ⊗ M^{g_n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElement {
    genera: Vec<u32>,
    degree: usize,
    terms: BTreeMap<Cell, BigInt>,
}

impl ChainElement {
    pub fn zero(genera: &[u32], degree: usize) -> Self {
        ChainElement { genera: genera.to_vec(), degree, terms: BTreeMap::new() }
    }

    /// The basis element with identity group elements.
    pub fn basis(genera: &[u32], symbol: TensorBasisSymbol) -> Self {
        let mut x = Self::zero(genera, symbol.degree());
        x.add_cell(Cell::basis(genera, symbol), BigInt::one());
        x
    }

    /// 1·(N(w_1) λ_1 ⊗ ... ⊗ N(w_n) λ_n).
    pub fn from_cell(genera: &[u32], words: &[Word], symbol: TensorBasisSymbol) -> Result<Self> {
        if words.len() != genera.len() || symbol.len() != genera.len() {
            return Err(Error::Parse("cell arity does not match genera".into()));
        }
        for (w, &g) in words.iter().zip(genera) {
            if w.genus() != g {
                return Err(Error::GenusMismatch(w.to_string(), format!("genus {g}")));
            }
        }
        let mut x = Self::zero(genera, symbol.degree());
        x.add_cell(Cell::new(words.iter().map(|w| w.normal_form()).collect(), symbol), BigInt::one());
        Ok(x)
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cell, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: &Cell) -> BigInt {
        self.terms.get(cell).cloned().unwrap_or_default()
    }

    /// Add `c·cell`; the words of `cell` must be normal forms and its
    /// degree must match.
    pub fn add_cell(&mut self, cell: Cell, c: BigInt) {
        assert_eq!(cell.symbol.degree(), self.degree, "inhomogeneous chain");
        assert_eq!(cell.words.len(), self.genera.len(), "cell arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(cell) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ChainElement, c: &BigInt) {
        assert_eq!(self.genera, other.genera, "genera mismatch");
        if other.is_zero() {
            return;
        }
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for (cell, d) in &other.terms {
            self.add_cell(cell.clone(), d * c);
        }
    }

    pub fn add(&self, other: &ChainElement) -> ChainElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn sub(&self, other: &ChainElement) -> ChainElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(-1));
        out
    }

    pub fn scale(&self, c: &BigInt) -> ChainElement {
        let mut out = Self::zero(&self.genera, self.degree);
        out.add_scaled(self, c);
        out
    }

    /// Left action of a tuple of group elements, factor by factor.
    pub fn act(&self, ys: &[Word]) -> ChainElement {
        assert_eq!(ys.len(), self.genera.len());
        let ys: Vec<Word> = ys.iter().map(|y| y.normal_form()).collect();
        let mut out = Self::zero(&self.genera, self.degree);
        for (cell, c) in &self.terms {
            let words = ys.iter().zip(&cell.words).map(|(y, w)| y.mul_normal(w)).collect();
            out.add_cell(Cell::new(words, cell.symbol.clone()), c.clone());
        }
        out
    }

    /// Product of the factor augmentations: Σ of coefficients in degree 0,
    /// zero in positive degree.
    pub fn augmentation(&self) -> BigInt {
        if self.degree > 0 {
            return BigInt::zero();
        }
        self.terms.values().sum()
    }

    /// Split each cell into its first `n` factors and the rest.
    pub(crate) fn split_cell(cell: &Cell, n: usize) -> (Cell, Cell) {
        (
            Cell::new(cell.words[..n].to_vec(), TensorBasisSymbol(cell.symbol.0[..n].to_vec())),
            Cell::new(cell.words[n..].to_vec(), TensorBasisSymbol(cell.symbol.0[n..].to_vec())),
        )
    }

    pub fn parse(text: &str, genera: &[u32]) -> Result<Self> {
        for &g in genera {
            check_genus(g)?;
        }
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        if lines.is_empty() || lines == ["0"] {
            return Ok(Self::zero(genera, 0));
        }
        let mut out: Option<ChainElement> = None;
        for line in lines {
            let bad = || Error::Parse(format!("bad chain line {line:?}"));
            let (c, rest) = line.split_once('*').ok_or_else(bad)?;
            let c: BigInt = c.trim().parse().map_err(|_| bad())?;
            let (ws, sym) = rest.split_once(')').ok_or_else(bad)?;
            let sym = sym.trim().strip_prefix('.').ok_or_else(bad)?;
            let ws = ws.trim().strip_prefix('(').ok_or_else(bad)?;
            let words = ws
                .split(',')
                .zip(genera)
                .map(|(w, &g)| Word::parse(w, g).map(|w| w.normal_form()))
                .collect::<Result<Vec<_>>>()?;
            if words.len() != genera.len() || ws.split(',').count() != genera.len() {
                return Err(bad());
            }
            let sym = TensorBasisSymbol::parse(sym, genera)?;
            let x = out.get_or_insert_with(|| Self::zero(genera, sym.degree()));
            if sym.degree() != x.degree {
                return Err(Error::DegreeMismatch { expected: x.degree, got: sym.degree() });
            }
            x.add_cell(Cell::new(words, sym), c);
        }
        Ok(out.unwrap())
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (cell, c) in &self.terms {
            let ws: Vec<String> = cell.words.iter().map(|w| w.to_string()).collect();
            writeln!(f, "{c} * ({}) . {}", ws.join(","), cell.symbol)?;
        }
        Ok(())
    }
}

/// One factor's boundary of a basis symbol, as (word, symbol, coefficient).
pub type FactorTerms = Vec<(Word, BasisSymbol, BigInt)>;

fn omega_boundary(genus: u32) -> Arc<FactorTerms> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FactorTerms>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&genus) {
        return v.clone();
    }
    let r = relator(genus);
    let mut terms = Vec::new();
    for gen in Generator::all(genus) {
        for (w, c) in fox_derivative(&r, gen).terms() {
            terms.push((w.clone(), BasisSymbol::of_generator(gen), c.clone()));
        }
    }
    let v = Arc::new(terms);
    cache.write().unwrap().entry(genus).or_insert(v).clone()
}

/// d of a single-factor basis symbol (with identity group element).
pub fn factor_boundary(genus: u32, s: BasisSymbol) -> Arc<FactorTerms> {
    let id = Word::identity(genus);
    let edge = |l: Letter| {
        Arc::new(vec![
            (Word::letter(genus, l), BasisSymbol::Chi, BigInt::one()),
            (id.clone(), BasisSymbol::Chi, BigInt::from(-1)),
        ])
    };
    match s {
        BasisSymbol::Chi => Arc::new(Vec::new()),
        BasisSymbol::Alpha(i) => edge(Letter::a(i)),
        BasisSymbol::Beta(i) => edge(Letter::b(i)),
        BasisSymbol::Omega => omega_boundary(genus),
    }
}

/// Koszul-signed differential of M^{g_1} ⊗ ... ⊗ M^{g_n}.
pub fn tensor_differential(x: &ChainElement) -> ChainElement {
    let genera = x.genera.clone();
    if x.degree == 0 {
        return ChainElement::zero(&genera, 0);
    }
    let mut out = ChainElement::zero(&genera, x.degree - 1);
    for (cell, c) in &x.terms {
        let mut preceding = 0usize;
        for (i, &s) in cell.symbol.0.iter().enumerate() {
            if s.degree() > 0 {
                let sign = if preceding % 2 == 1 { -c.clone() } else { c.clone() };
                for (w, t, e) in factor_boundary(genera[i], s).iter() {
                    let mut words = cell.words.clone();
                    words[i] = cell.words[i].mul_normal(w);
                    let mut sym = cell.symbol.clone();
                    sym.0[i] = *t;
                    out.add_cell(Cell::new(words, sym), &sign * e);
                }
            }
            preceding += s.degree();
        }
    }
    out
}

/// The differential of a single factor M^g.
pub fn d(x: &ChainElement) -> ChainElement {
    assert_eq!(x.genera.len(), 1, "d expects a single factor");
    tensor_differential(x)
}
