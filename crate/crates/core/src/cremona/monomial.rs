//! Monomial maps `(x, y) ↦ (x^a y^b, x^c y^d)`, handled through their
//! exponent matrices.

use serde::{Deserialize, Serialize};

use super::generator::{det2, inverse2, monomial_degree, Generator, Letter};
use crate::error::{Error, Result};
use crate::geometry::{ActionOracle, IsometryClass};

/// The monomial map of an integer matrix with determinant `±1`. The
/// composition `f ∘ g` corresponds to the matrix product `M_f · M_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMap {
    matrix: [[i64; 2]; 2],
}

impl MonomialMap {
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self> {
        Generator::Monomial { matrix }.validate()?;
        Ok(MonomialMap { matrix })
    }

    pub fn identity() -> Self {
        MonomialMap {
            matrix: [[1, 0], [0, 1]],
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn det(&self) -> i64 {
        det2(self.matrix)
    }

    pub fn letter(&self) -> Letter {
        Generator::Monomial {
            matrix: self.matrix,
        }
        .letter()
    }

    pub fn compose(&self, other: &MonomialMap) -> Result<MonomialMap> {
        let (a, b) = (self.matrix, other.matrix);
        let entry = |i: usize, j: usize| {
            a[i][0]
                .checked_mul(b[0][j])
                .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
                .ok_or_else(|| Error::resource("monomial matrix entries overflow i64"))
        };
        Ok(MonomialMap {
            matrix: [[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]],
        })
    }

    pub fn inverse(&self) -> MonomialMap {
        MonomialMap {
            matrix: inverse2(self.matrix),
        }
    }

    pub fn pow(&self, k: u32) -> Result<MonomialMap> {
        let mut out = MonomialMap::identity();
        for _ in 0..k {
            out = out.compose(self)?;
        }
        Ok(out)
    }

    /// Degree of the homogenized map.
    pub fn degree(&self) -> u64 {
        monomial_degree(self.matrix)
    }

    /// `deg(Mᵏ)` for `k = 1..=budget`.
    pub fn power_degrees(&self, budget: usize) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(budget);
        let mut power = *self;
        for k in 0..budget {
            if k > 0 {
                power = power
                    .compose(self)
                    .map_err(|e| e.with_sequence(out.clone()))?;
            }
            out.push(power.degree());
        }
        Ok(out)
    }

    /// Largest absolute eigenvalue of the matrix.
    pub fn spectral_radius(&self) -> f64 {
        let m = self.matrix;
        let trace = (m[0][0] + m[1][1]) as f64;
        let det = self.det() as f64;
        let disc = trace * trace / 4.0 - det;
        if disc < 0.0 {
            det.abs().sqrt()
        } else {
            trace.abs() / 2.0 + disc.sqrt()
        }
    }

    pub fn dynamical_degree(&self) -> f64 {
        self.spectral_radius()
    }

    /// Whether some power is the identity. Finite-order elements of
    /// `GL₂(ℤ)` have order 1, 2, 3, 4 or 6.
    pub fn has_finite_order(&self) -> bool {
        self.pow(12).map(|p| p == MonomialMap::identity()).unwrap_or(false)
    }

    pub fn classify(&self) -> IsometryClass {
        if self.spectral_radius() > 1.0 + 1e-12 {
            IsometryClass::Loxodromic
        } else if self.has_finite_order() {
            IsometryClass::Elliptic
        } else {
            IsometryClass::Parabolic
        }
    }
}

/// Exact spectral radius of the exponent matrix.
pub fn monomial_dynamical_degree(m: &MonomialMap) -> f64 {
    m.spectral_radius()
}

/// Monomial maps acting on the hyperboloid, with degrees and translation
/// lengths read off the exponent matrices.
#[derive(Debug, Clone, Copy, Default)]
pub struct MonomialGroup;

impl ActionOracle for MonomialGroup {
    type Element = MonomialMap;

    fn identity(&self) -> MonomialMap {
        MonomialMap::identity()
    }

    fn multiply(&self, g: &MonomialMap, h: &MonomialMap) -> Result<MonomialMap> {
        g.compose(h)
    }

    fn invert(&self, g: &MonomialMap) -> Result<MonomialMap> {
        Ok(g.inverse())
    }

    fn displacement(&self, g: &MonomialMap) -> Result<f64> {
        Ok((g.degree() as f64).acosh())
    }

    fn translation_length(&self, g: &MonomialMap, _budget: usize) -> Result<f64> {
        Ok(g.spectral_radius().ln())
    }

    fn classify(&self, g: &MonomialMap, _budget: usize) -> Result<IsometryClass> {
        Ok(g.classify())
    }

    fn log_degree(&self, g: &MonomialMap) -> Result<Option<f64>> {
        Ok(Some((g.degree() as f64).ln()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: [[i64; 2]; 2]) -> MonomialMap {
        MonomialMap::new(a).unwrap()
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(monomial_dynamical_degree(&m([[1, 1], [0, 1]])), 1.0);
        assert_eq!(monomial_dynamical_degree(&m([[0, 1], [1, 0]])), 1.0);
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((monomial_dynamical_degree(&m([[2, 1], [1, 1]])) - golden_sq).abs() < 1e-12);
    }

    #[test]
    fn classification() {
        assert_eq!(m([[1, 1], [0, 1]]).classify(), IsometryClass::Parabolic);
        assert_eq!(m([[0, 1], [1, 0]]).classify(), IsometryClass::Elliptic);
        assert_eq!(m([[0, -1], [1, 1]]).classify(), IsometryClass::Elliptic);
        assert_eq!(m([[2, 1], [1, 1]]).classify(), IsometryClass::Loxodromic);
    }

    #[test]
    fn unipotent_degrees_grow_linearly() {
        assert_eq!(m([[1, 1], [0, 1]]).power_degrees(5).unwrap(), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn overflow_is_a_resource_error() {
        let err = m([[2, 1], [1, 1]]).pow(100).unwrap_err();
        assert!(err.is_resource());
    }
}
