//! Composable chains of elementary holomorphic maps of one variable.
//!
//! Chains are the exact route to invariant distances: a domain with a
//! registered chain onto the unit disk inherits the Poincaré metric by
//! pullback.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::DomainSpec;

#[derive(Debug, Error)]
pub enum ChainError {
    #[error("map has a pole at the requested point")]
    Pole,
    #[error("no closed-form chain is registered for this domain")]
    NoClosedForm,
}

/// One elementary holomorphic map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ChainStep {
    /// z ↦ (a z + b)/(c z + d), ad − bc ≠ 0.
    Mobius {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    },
    /// z ↦ exp(scale · z).
    Exp { scale: Complex64 },
    /// z ↦ log z with the branch cut opposite to `branch`: the argument is
    /// taken in (arg branch − π, arg branch + π].
    Log { branch: Complex64 },
    /// z ↦ z^exponent (principal branch).
    Power { exponent: f64 },
    /// z ↦ m z + q.
    Affine { m: Complex64, q: Complex64 },
}

impl ChainStep {
    pub fn apply(&self, z: Complex64) -> Result<Complex64, ChainError> {
        Ok(match self {
            ChainStep::Mobius { a, b, c, d } => {
                let den = c * z + d;
                if den.norm() == 0.0 {
                    return Err(ChainError::Pole);
                }
                (a * z + b) / den
            }
            ChainStep::Exp { scale } => (scale * z).exp(),
            ChainStep::Log { branch } => {
                if z.norm() == 0.0 {
                    return Err(ChainError::Pole);
                }
                let base = branch.arg();
                let mut theta = z.arg() - base;
                while theta <= -std::f64::consts::PI {
                    theta += 2.0 * std::f64::consts::PI;
                }
                while theta > std::f64::consts::PI {
                    theta -= 2.0 * std::f64::consts::PI;
                }
                Complex64::new(z.norm().ln(), theta + base)
            }
            ChainStep::Power { exponent } => {
                if z.norm() == 0.0 {
                    return Ok(Complex64::ZERO);
                }
                z.powf(*exponent)
            }
            ChainStep::Affine { m, q } => m * z + q,
        })
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64, ChainError> {
        Ok(match self {
            ChainStep::Mobius { a, b, c, d } => {
                let den = c * z + d;
                if den.norm() == 0.0 {
                    return Err(ChainError::Pole);
                }
                (a * d - b * c) / (den * den)
            }
            ChainStep::Exp { scale } => scale * (scale * z).exp(),
            ChainStep::Log { .. } => {
                if z.norm() == 0.0 {
                    return Err(ChainError::Pole);
                }
                z.inv()
            }
            ChainStep::Power { exponent } => exponent * z.powf(exponent - 1.0),
            ChainStep::Affine { m, .. } => *m,
        })
    }
}

/// Ordered composition of elementary maps, applied first step first.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConformalChain {
    pub steps: Vec<ChainStep>,
}

impl ConformalChain {
    pub fn identity() -> Self {
        ConformalChain { steps: Vec::new() }
    }

    pub fn push(mut self, step: ChainStep) -> Self {
        self.steps.push(step);
        self
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, ChainError> {
        let mut v = z;
        for s in &self.steps {
            v = s.apply(v)?;
        }
        Ok(v)
    }

    /// Chain-rule derivative along the orbit of `z`.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64, ChainError> {
        let mut v = z;
        let mut d = Complex64::ONE;
        for s in &self.steps {
            d *= s.derivative(v)?;
            v = s.apply(v)?;
        }
        Ok(d)
    }

    /// Cayley transform, upper half-plane onto the unit disk.
    pub fn cayley() -> ChainStep {
        ChainStep::Mobius {
            a: Complex64::ONE,
            b: -Complex64::I,
            c: Complex64::ONE,
            d: Complex64::I,
        }
    }

    /// The Möbius map w ↦ −i(w+1)/(w−1), unit disk onto the upper
    /// half-plane; it carries the tangent-circle set Q onto a strip.
    pub fn disk_to_half_plane() -> ChainStep {
        ChainStep::Mobius {
            a: -Complex64::I,
            b: -Complex64::I,
            c: Complex64::ONE,
            d: -Complex64::ONE,
        }
    }

    /// Sampling certificate for the chain invariants on `domain`: pairwise
    /// distinct images and nonvanishing derivative over interior samples.
    pub fn certify_injective(&self, domain: &DomainSpec, samples: usize) -> Result<(), String> {
        use crate::domain::{contains, dist_to_boundary};
        let mut pts = Vec::new();
        let mut k = 0u64;
        // Low-discrepancy sweep of the bounding box |Re|,|Im| ≤ 2.
        while pts.len() < samples && k < 50_000 {
            k += 1;
            let x = -2.0 + 4.0 * fract(k as f64 * 0.754877666246693);
            let y = -2.0 + 4.0 * fract(k as f64 * 0.569840290998053);
            let z = Complex64::new(x, y);
            let p = crate::point::CxPoint::scalar(z);
            if contains(domain, &p).unwrap_or(false)
                && dist_to_boundary(domain, &p).unwrap_or(0.0) > 1e-3
            {
                pts.push(z);
            }
        }
        let mut images = Vec::with_capacity(pts.len());
        for &z in &pts {
            let w = self.eval(z).map_err(|e| e.to_string())?;
            let d = self.derivative(z).map_err(|e| e.to_string())?;
            if d.norm() < 1e-14 {
                return Err(format!("derivative vanishes near {z}"));
            }
            images.push(w);
        }
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                if (images[i] - images[j]).norm() < 1e-12 {
                    return Err(format!("images collide: {} and {}", pts[i], pts[j]));
                }
            }
        }
        Ok(())
    }
}

fn fract(x: f64) -> f64 {
    x - x.floor()
}

/// The registered chain from `d` onto the unit disk, if `d` has one.
///
/// Registered: the disk itself, planar balls, the upper half-plane, the
/// standard strip, and disk-minus-disk sets with internally tangent circles
/// (the simply connected case). Non-tangent circle pairs are conformally
/// annuli and are rejected: no distance closed form is claimed for them.
pub fn chain_to_disk(d: &DomainSpec) -> Result<ConformalChain, ChainError> {
    match d {
        DomainSpec::UnitDisk => Ok(ConformalChain::identity()),
        DomainSpec::Ball { center, radius } if center.dim() == 1 => Ok(ConformalChain::identity()
            .push(ChainStep::Affine {
                m: Complex64::new(1.0 / radius, 0.0),
                q: -center.as_scalar() / radius,
            })),
        DomainSpec::UpperHalfPlane => Ok(ConformalChain::identity().push(ConformalChain::cayley())),
        DomainSpec::Strip => Ok(ConformalChain::identity()
            .push(ChainStep::Exp {
                scale: Complex64::new(std::f64::consts::PI, 0.0),
            })
            .push(ConformalChain::cayley())),
        DomainSpec::DiskMinusDisk { center, rho } => {
            // Simply connected only when the removed circle is internally
            // tangent to the unit circle.
            let tangent = (center.norm() + rho - 1.0).abs() < 1e-12;
            if !tangent {
                return Err(ChainError::NoClosedForm);
            }
            let mut chain = ConformalChain::identity();
            let modulus = center.norm();
            if modulus == 0.0 {
                return Err(ChainError::NoClosedForm);
            }
            // Rotate the removed-disk center onto the positive real axis.
            let rot = center.conj() / modulus;
            if (rot - Complex64::ONE).norm() > 0.0 {
                chain = chain.push(ChainStep::Affine {
                    m: rot,
                    q: Complex64::ZERO,
                });
            }
            // w ↦ −i(w+1)/(w−1) sends the rotated set onto the strip
            // 0 < Im ζ < modulus/rho; rescale to the standard strip, then
            // exponentiate onto the half-plane and finish with Cayley.
            chain = chain.push(ConformalChain::disk_to_half_plane());
            let height = modulus / rho;
            if (height - 1.0).abs() > 0.0 {
                chain = chain.push(ChainStep::Affine {
                    m: Complex64::new(1.0 / height, 0.0),
                    q: Complex64::ZERO,
                });
            }
            chain = chain
                .push(ChainStep::Exp {
                    scale: Complex64::new(std::f64::consts::PI, 0.0),
                })
                .push(ConformalChain::cayley());
            Ok(chain)
        }
        _ => Err(ChainError::NoClosedForm),
    }
}
