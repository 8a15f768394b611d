//! Points and tangent vectors of Cⁿ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point (equivalently a tangent vector) in Cⁿ, stored as `n` complex
/// coordinates. All coordinates are required to be finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CxPoint {
    pub coords: Vec<Complex64>,
}

impl CxPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        CxPoint { coords }
    }

    /// A point of C¹.
    pub fn scalar(z: Complex64) -> Self {
        CxPoint { coords: vec![z] }
    }

    /// A point of C².
    pub fn pair(z: Complex64, w: Complex64) -> Self {
        CxPoint { coords: vec![z, w] }
    }

    pub fn zero(dim: usize) -> Self {
        CxPoint {
            coords: vec![Complex64::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        !self.coords.is_empty()
            && self
                .coords
                .iter()
                .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// The single coordinate of a planar point.
    ///
    /// Panics if the point is not one-dimensional; planar-only callers
    /// check dimensions at their own boundary.
    pub fn as_scalar(&self) -> Complex64 {
        debug_assert_eq!(self.coords.len(), 1, "expected a planar point");
        self.coords[0]
    }

    /// Euclidean norm, treating Cⁿ as R²ⁿ.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &CxPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &CxPoint) -> CxPoint {
        CxPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CxPoint) -> CxPoint {
        CxPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> CxPoint {
        CxPoint {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Rescale to unit Euclidean norm. Returns `None` for the zero vector.
    pub fn normalize(&self) -> Option<CxPoint> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(self.scale(Complex64::new(1.0 / n, 0.0)))
        }
    }

    /// Bilinear pairing (Z, Y) = Σ zⱼ yⱼ (no conjugation).
    pub fn pair_bilinear(&self, other: &CxPoint) -> Complex64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Hermitian inner product Σ zⱼ ȳⱼ.
    pub fn pair_hermitian(&self, other: &CxPoint) -> Complex64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

impl From<Complex64> for CxPoint {
    fn from(z: Complex64) -> Self {
        CxPoint::scalar(z)
    }
}
