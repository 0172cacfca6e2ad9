//! Cohomology groups H^k(π_{g_1,...,g_n}; Z_S) by Smith normal form, with
//! representing cocycles and coordinates of classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::cochain::{coboundary_matrix, Cochain};
use super::coeffs::CoefficientSystem;
use super::smith::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::resolution::basis_of;

/// H^k ≅ Z_{d_1} ⊕ ... ⊕ Z_{d_t} ⊕ Z^r with chosen generating cocycles.
#[derive(Debug, Clone)]
pub struct CohomologyPresentation {
    pub coeffs: CoefficientSystem,
    pub degree: usize,
    /// Orders d_i > 1 of the cyclic torsion summands, d_1 | d_2 | ...
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
    /// Representing cocycles: one per torsion summand, then one per free
    /// summand.
    pub generators: Vec<Cochain>,
    v_inv: IntMatrix,
    kernel_offset: usize,
    p: IntMatrix,
    /// Diagonal of the Smith form of the image in kernel coordinates,
    /// padded with zeros to the kernel rank.
    e: Vec<BigInt>,
}

/// Coordinates of a cohomology class: residues modulo the torsion orders,
/// then integers for the free part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCoordinates {
    #[serde(serialize_with = "ser_ints")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints")]
    pub free: Vec<BigInt>,
}

pub(crate) fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(|x| x.is_zero())
    }
}

impl fmt::Display for ClassCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
        let r: Vec<String> = self.free.iter().map(|x| x.to_string()).collect();
        write!(f, "torsion [{}] free [{}]", t.join(", "), r.join(", "))
    }
}

impl CohomologyPresentation {
    /// e.g. `Z^2 + Z_2`, or `0`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        let mut k = 0;
        while k < self.torsion.len() {
            let d = &self.torsion[k];
            let n = self.torsion[k..].iter().take_while(|x| *x == d).count();
            parts.push(if n == 1 { format!("Z_{d}") } else { format!("Z_{d}^{n}") });
            k += n;
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Number of Z_2 summands.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|d| **d == BigInt::from(2)).count()
    }

    pub fn torsion_generators(&self) -> &[Cochain] {
        &self.generators[..self.torsion.len()]
    }

    pub fn free_generators(&self) -> &[Cochain] {
        &self.generators[self.torsion.len()..]
    }

    /// Coordinates of the class of the cocycle `f`.
    pub fn class_coordinates(&self, f: &Cochain) -> Result<ClassCoordinates> {
        if f.coeffs() != &self.coeffs {
            return Err(Error::CoefficientMismatch(format!("{} vs {}", f.coeffs(), self.coeffs)));
        }
        if !f.is_zero() && f.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: f.degree() });
        }
        let v = if f.is_zero() {
            vec![BigInt::zero(); self.v_inv.cols()]
        } else {
            f.to_vector()
        };
        let z = self.v_inv.mul_vec(&v);
        if z[..self.kernel_offset].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotCocycle);
        }
        let y = self.p.mul_vec(&z[self.kernel_offset..]);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (yj, ej) in y.iter().zip(&self.e) {
            if ej.is_zero() {
                free.push(yj.clone());
            } else if !ej.is_one() {
                torsion.push(yj.mod_floor(ej));
            }
        }
        Ok(ClassCoordinates { torsion, free })
    }

    /// Whether the cocycle represents the zero class.
    pub fn is_trivial_class(&self, f: &Cochain) -> Result<bool> {
        Ok(self.class_coordinates(f)?.is_zero())
    }
}

impl fmt::Display for CohomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// H^k(π_{genera}; Z_S).
pub fn cohomology_group(coeffs: &CoefficientSystem, k: usize) -> CohomologyPresentation {
    let genera = coeffs.genera();
    let n = basis_of(&genera, k).len();
    // Kernel of δ_k from the Smith form of its matrix: D V = U^{-1} diag,
    // so ker δ_k is spanned by the columns of V past the rank.
    let dk = coboundary_matrix(coeffs, k);
    let sk = smith_normal_form(&dk);
    let rank = sk.rank();
    let r = n - rank;
    // Image of δ_{k-1} in kernel coordinates.
    let x = if k == 0 {
        IntMatrix::zeros(r, 0)
    } else {
        let dprev = coboundary_matrix(coeffs, k - 1);
        sk.v_inv.mul(&dprev).row_slice(rank)
    };
    let sx = smith_normal_form(&x);
    let mut e = sx.diagonal.clone();
    e.resize(r, BigInt::zero());
    let kernel = sk.v.col_slice(rank);
    let gens = kernel.mul(&sx.u_inv);
    let mut torsion = Vec::new();
    let mut torsion_gens = Vec::new();
    let mut free_gens = Vec::new();
    for (j, ej) in e.iter().enumerate() {
        let g = Cochain::from_vector(coeffs, k, &gens.column(j));
        if ej.is_zero() {
            free_gens.push(g);
        } else if !ej.is_one() {
            torsion.push(ej.clone());
            torsion_gens.push(g);
        }
    }
    let free_rank = free_gens.len();
    torsion_gens.extend(free_gens);
    CohomologyPresentation {
        coeffs: coeffs.clone(),
        degree: k,
        torsion,
        free_rank,
        generators: torsion_gens,
        v_inv: sk.v_inv,
        kernel_offset: rank,
        p: sx.u,
        e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_coefficients_genus_two() {
        let c = CoefficientSystem::parse("-", &[2]).unwrap();
        let h: Vec<String> = (0..=2).map(|k| cohomology_group(&c, k).describe()).collect();
        assert_eq!(h, ["Z", "Z^4", "Z"]);
    }

    #[test]
    fn twisted_genus_two() {
        let c = CoefficientSystem::parse("a1", &[2]).unwrap();
        let h: Vec<String> = (0..=2).map(|k| cohomology_group(&c, k).describe()).collect();
        assert_eq!(h, ["0", "Z^2 + Z_2", "Z_2"]);
    }

    #[test]
    fn generators_have_their_coordinates() {
        let c = CoefficientSystem::parse("a1,b2|b1", &[2, 2]).unwrap();
        for k in 0..=4 {
            let h = cohomology_group(&c, k);
            for (i, g) in h.generators.iter().enumerate() {
                assert!(g.is_cocycle());
                let co = h.class_coordinates(g).unwrap();
                let flat: Vec<BigInt> = co.torsion.iter().chain(&co.free).cloned().collect();
                for (j, x) in flat.iter().enumerate() {
                    assert_eq!(x, &BigInt::from((i == j) as i32), "degree {k} generator {i}");
                }
            }
            // coboundaries are trivial
            if k > 0 {
                for b in basis_of(&c.genera(), k - 1) {
                    let f = Cochain::dual(&c, b).coboundary();
                    assert!(h.is_trivial_class(&f).unwrap());
                }
            }
        }
    }
}
