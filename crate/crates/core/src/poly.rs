//! Holomorphic polynomial vector fields on Cⁿ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::point::CxPoint;

/// One monomial term: coefficient times Π zⱼ^{powers[j]}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialTerm {
    pub powers: Vec<u32>,
    pub coeff: Complex64,
}

/// A polynomial vector field X: Cⁿ → Cⁿ with one polynomial per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorFieldPoly {
    pub dim: usize,
    pub components: Vec<Vec<MonomialTerm>>,
}

impl VectorFieldPoly {
    pub fn new(dim: usize, components: Vec<Vec<MonomialTerm>>) -> Self {
        debug_assert_eq!(components.len(), dim);
        VectorFieldPoly { dim, components }
    }

    /// Planar field from coefficients of 1, z, z², …
    pub fn planar(coeffs: &[Complex64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(k, c)| MonomialTerm {
                powers: vec![k as u32],
                coeff: *c,
            })
            .collect();
        VectorFieldPoly {
            dim: 1,
            components: vec![terms],
        }
    }

    /// The rotation field X(z) = iz on C.
    pub fn rotation() -> Self {
        VectorFieldPoly::planar(&[Complex64::ZERO, Complex64::I])
    }

    /// The constant field X ≡ c on C.
    pub fn constant(c: Complex64) -> Self {
        VectorFieldPoly::planar(&[c])
    }

    /// The complete disk field α + iβz − ᾱz² (β real); with α = 1, β = 0
    /// this is 1 − z².
    pub fn disk_field(alpha: Complex64, beta: f64) -> Self {
        VectorFieldPoly::planar(&[alpha, Complex64::new(0.0, beta), -alpha.conj()])
    }

    /// Diagonal extension of a planar field to C²: (z, w) ↦ (X(z), X(w)).
    pub fn diagonal2(planar: &VectorFieldPoly) -> Self {
        debug_assert_eq!(planar.dim, 1);
        let lift = |shift: usize| -> Vec<MonomialTerm> {
            planar.components[0]
                .iter()
                .map(|t| {
                    let mut powers = vec![0u32; 2];
                    powers[shift] = t.powers[0];
                    MonomialTerm {
                        powers,
                        coeff: t.coeff,
                    }
                })
                .collect()
        };
        VectorFieldPoly {
            dim: 2,
            components: vec![lift(0), lift(1)],
        }
    }

    pub fn eval(&self, z: &CxPoint) -> CxPoint {
        debug_assert_eq!(z.dim(), self.dim);
        let coords = self
            .components
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|t| {
                        let mut m = t.coeff;
                        for (j, &p) in t.powers.iter().enumerate() {
                            if p > 0 {
                                m *= z.coords[j].powu(p);
                            }
                        }
                        m
                    })
                    .sum()
            })
            .collect();
        CxPoint::new(coords)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        VectorFieldPoly {
            dim: self.dim,
            components: self
                .components
                .iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|t| MonomialTerm {
                            powers: t.powers.clone(),
                            coeff: t.coeff * factor,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Rotate to imaginary time: the field iX.
    pub fn times_i(&self) -> Self {
        self.scale(Complex64::I)
    }

    pub fn sub(&self, other: &VectorFieldPoly) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut components = self.components.clone();
        for (i, terms) in other.components.iter().enumerate() {
            for t in terms {
                components[i].push(MonomialTerm {
                    powers: t.powers.clone(),
                    coeff: -t.coeff,
                });
            }
        }
        VectorFieldPoly {
            dim: self.dim,
            components,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(|t| t.powers.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Sup of |X| over the closed ball B(center, radius), sampled on the
    /// boundary sphere. log|X| is plurisubharmonic, so the maximum over the
    /// closed ball sits on the boundary.
    pub fn sup_on_ball(&self, center: &CxPoint, radius: f64, resolution: usize) -> f64 {
        match self.dim {
            1 => {
                let n = resolution.max(64);
                let c = center.coords[0];
                (0..n)
                    .map(|k| {
                        let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                        let z = c + radius * Complex64::new(t.cos(), t.sin());
                        self.eval(&CxPoint::scalar(z)).norm()
                    })
                    .fold(0.0f64, f64::max)
            }
            2 => {
                let n_eta = (resolution / 8).max(16);
                let mut sup = 0.0f64;
                for a in 0..=n_eta {
                    let eta = std::f64::consts::FRAC_PI_2 * (a as f64) / (n_eta as f64);
                    let (ce, se) = (eta.cos(), eta.sin());
                    let n1 = ((resolution as f64 * ce) as usize).max(1);
                    let n2 = ((resolution as f64 * se) as usize).max(1);
                    for k1 in 0..n1 {
                        let t1 = 2.0 * std::f64::consts::PI * (k1 as f64) / (n1 as f64);
                        for k2 in 0..n2 {
                            let t2 = 2.0 * std::f64::consts::PI * (k2 as f64) / (n2 as f64);
                            let z = CxPoint::pair(
                                center.coords[0] + radius * ce * Complex64::new(t1.cos(), t1.sin()),
                                center.coords[1] + radius * se * Complex64::new(t2.cos(), t2.sin()),
                            );
                            sup = sup.max(self.eval(&z).norm());
                        }
                    }
                }
                sup
            }
            _ => unimplemented!("sup_on_ball supports dimensions 1 and 2"),
        }
    }
}
