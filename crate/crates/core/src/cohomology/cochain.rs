//! Equivariant cochains Hom(M_k^{g_1,...,g_n}, Z_{S_1} ⊗ ... ⊗ Z_{S_n}),
//! stored by their values on the basis symbols.
//!
//! The coboundary is (δf)(x) = (-1)^{k+1} f(dx) for f of degree k.
//!
//! Text syntax, one term per line: `<int> <sym>(x)...(x)<sym>`, meaning
//! that multiple of the dual basis cochain; `0` is the zero cochain.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coeffs::CoefficientSystem;
use super::smith::IntMatrix;
use crate::error::{Error, Result};
use crate::resolution::{basis_of, tensor_differential, ChainElement, TensorBasisSymbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    coeffs: CoefficientSystem,
    values: BTreeMap<TensorBasisSymbol, BigInt>,
}

impl Cochain {
    pub fn zero(coeffs: &CoefficientSystem, degree: usize) -> Self {
        Cochain { degree, coeffs: coeffs.clone(), values: BTreeMap::new() }
    }

    /// The dual basis cochain b^*.
    pub fn dual(coeffs: &CoefficientSystem, b: TensorBasisSymbol) -> Self {
        let mut f = Self::zero(coeffs, b.degree());
        f.add_value(b, BigInt::one());
        f
    }

    /// Build from a coordinate vector over `basis_of(genera, degree)`.
    pub fn from_vector(coeffs: &CoefficientSystem, degree: usize, v: &[BigInt]) -> Self {
        let basis = basis_of(&coeffs.genera(), degree);
        assert_eq!(basis.len(), v.len());
        let mut f = Self::zero(coeffs, degree);
        for (b, c) in basis.into_iter().zip(v) {
            f.add_value(b, c.clone());
        }
        f
    }

    pub fn to_vector(&self) -> Vec<BigInt> {
        basis_of(&self.coeffs.genera(), self.degree).iter().map(|b| self.value(b)).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &CoefficientSystem {
        &self.coeffs
    }

    pub fn genera(&self) -> Vec<u32> {
        self.coeffs.genera()
    }

    pub fn values(&self) -> impl Iterator<Item = (&TensorBasisSymbol, &BigInt)> {
        self.values.iter()
    }

    pub fn value(&self, b: &TensorBasisSymbol) -> BigInt {
        self.values.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add_value(&mut self, b: TensorBasisSymbol, c: BigInt) {
        assert_eq!(b.degree(), self.degree, "inhomogeneous cochain");
        if c.is_zero() {
            return;
        }
        match self.values.entry(b) {
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

    fn check(&self, other: &Cochain) -> Result<()> {
        if self.coeffs != other.coeffs {
            return Err(Error::CoefficientMismatch(format!("{} vs {}", self.coeffs, other.coeffs)));
        }
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &BigInt) -> Result<()> {
        self.check(other)?;
        if self.is_zero() {
            self.degree = other.degree;
        }
        for (b, v) in &other.values {
            self.add_value(b.clone(), v * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(-1))?;
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Cochain {
        let mut out = Cochain::zero(&self.coeffs, self.degree);
        out.add_scaled(self, c).unwrap();
        out
    }

    /// f(x) for a chain x of the same degree, with group elements acting
    /// through the sign characters.
    pub fn evaluate(&self, x: &ChainElement) -> BigInt {
        let mut total = BigInt::zero();
        if x.degree() != self.degree {
            return total;
        }
        for (cell, c) in x.terms() {
            if let Some(v) = self.values.get(&cell.symbol) {
                let s = self.coeffs.sign(&cell.words);
                if s < 0 {
                    total -= c * v;
                } else {
                    total += c * v;
                }
            }
        }
        total
    }

    pub fn coboundary(&self) -> Cochain {
        let genera = self.genera();
        let k = self.degree;
        let mut out = Cochain::zero(&self.coeffs, k + 1);
        if self.is_zero() {
            return out;
        }
        for b in basis_of(&genera, k + 1) {
            let v = self.evaluate(&tensor_differential(&ChainElement::basis(&genera, b.clone())));
            out.add_value(b, if k.is_multiple_of(2) { -v } else { v });
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    pub fn parse(text: &str, coeffs: &CoefficientSystem) -> Result<Self> {
        let genera = coeffs.genera();
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        if lines.is_empty() || lines == ["0"] {
            return Ok(Self::zero(coeffs, 0));
        }
        let mut out: Option<Cochain> = None;
        for line in lines {
            let (c, sym) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad cochain line {line:?}")))?;
            let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient in {line:?}")))?;
            let sym = TensorBasisSymbol::parse(sym, &genera)?;
            let f = out.get_or_insert_with(|| Self::zero(coeffs, sym.degree()));
            if sym.degree() != f.degree {
                return Err(Error::DegreeMismatch { expected: f.degree, got: sym.degree() });
            }
            f.add_value(sym, c);
        }
        Ok(out.unwrap())
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return writeln!(f, "0");
        }
        for (b, c) in &self.values {
            writeln!(f, "{c} {b}")?;
        }
        Ok(())
    }
}

/// Matrix of δ: C^k -> C^{k+1} in the dual bases (columns indexed by
/// `basis_of(k)`, rows by `basis_of(k+1)`).
pub fn coboundary_matrix(coeffs: &CoefficientSystem, k: usize) -> IntMatrix {
    let genera = coeffs.genera();
    let src = basis_of(&genera, k);
    let dst = basis_of(&genera, k + 1);
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    let index: BTreeMap<&TensorBasisSymbol, usize> = src.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let sign = if k.is_multiple_of(2) { -1 } else { 1 };
    for (r, b) in dst.iter().enumerate() {
        let db = tensor_differential(&ChainElement::basis(&genera, b.clone()));
        for (cell, c) in db.terms() {
            let col = index[&cell.symbol];
            let s = coeffs.sign(&cell.words) * sign;
            m[(r, col)] += c * s;
        }
    }
    m
}
