//! Explicit degenerating domain families and their automorphism flows.
//!
//! The family Q_j = {z ∈ Δ : |z − 1/2 + 2^{-j}| > 1/2} carries a circle
//! action obtained by conjugating a rotation through the Möbius map that
//! makes the two boundary circles concentric. The limit set Q (internally
//! tangent circles) instead carries the translation flow
//! g_t = φ^{-1}(φ(·) + t) with φ(w) = −i(w+1)/(w−1). Both extend diagonally
//! to the product domains D_j, D ⊂ C² with the diagonal removed, and the
//! orbit classifier tells the two situations apart.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::domain::{contains, dist_to_boundary, DomainError, DomainSpec};
use crate::flow::{FlowError, GroupAction};
use crate::point::CxPoint;
use crate::poly::VectorFieldPoly;

#[derive(Debug, Error)]
pub enum GalleryError {
    #[error("map has a pole at {at}")]
    Pole { at: Complex64 },
    #[error("circle pair is tangent; no rotation action exists")]
    Tangency,
    #[error("image hit the removed diagonal")]
    Diagonal,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// φ(w) = −i(w+1)/(w−1): unit disk onto the upper half-plane, Q onto the
/// strip 0 < Im ζ < 1.
pub fn phi(w: Complex64) -> Result<Complex64, GalleryError> {
    let den = w - Complex64::ONE;
    if den.norm() == 0.0 {
        return Err(GalleryError::Pole { at: w });
    }
    Ok(-Complex64::I * (w + Complex64::ONE) / den)
}

/// Inverse of [`phi`]: ζ ↦ (ζ − i)/(ζ + i).
pub fn phi_inv(zeta: Complex64) -> Result<Complex64, GalleryError> {
    let den = zeta + Complex64::I;
    if den.norm() == 0.0 {
        return Err(GalleryError::Pole { at: zeta });
    }
    Ok((zeta - Complex64::I) / den)
}

/// The translation flow g_t(w) = φ^{-1}(φ(w) + t)
/// = (2w + i(w−1)t) / (2 + i(w−1)t).
pub fn g_t(w: Complex64, t: f64) -> Result<Complex64, GalleryError> {
    let it = Complex64::new(0.0, t);
    let den = Complex64::new(2.0, 0.0) + it * (w - Complex64::ONE);
    if den.norm() < 1e-300 {
        return Err(GalleryError::Pole { at: w });
    }
    Ok((2.0 * w + it * (w - Complex64::ONE)) / den)
}

/// Generator of g_t at t = 0: X(w) = −(i/2)(w−1)².
pub fn limit_generator() -> VectorFieldPoly {
    let half_i = Complex64::new(0.0, 0.5);
    VectorFieldPoly::planar(&[-half_i, 2.0 * half_i, -half_i])
}

/// Diagonal action F_t(z, w) = (g_t(z), g_t(w)) on the product domain.
pub fn f_t(p: &CxPoint, t: f64) -> Result<CxPoint, GalleryError> {
    let z = g_t(p.coords[0], t)?;
    let w = g_t(p.coords[1], t)?;
    if z == w {
        return Err(GalleryError::Diagonal);
    }
    Ok(CxPoint::pair(z, w))
}

/// Index into the Example-1 family: a finite member or its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyIndex {
    J(u32),
    Limit,
}

/// One member of the degenerating family: the planar part Q_j (or Q) and
/// the product domain D_j (or D) in C².
#[derive(Clone, Debug)]
pub struct Example1Family {
    pub index: FamilyIndex,
}

impl Example1Family {
    pub fn member(j: u32) -> Self {
        Example1Family {
            index: FamilyIndex::J(j),
        }
    }

    pub fn limit() -> Self {
        Example1Family {
            index: FamilyIndex::Limit,
        }
    }

    pub fn q_part(&self) -> DomainSpec {
        match self.index {
            FamilyIndex::J(j) => DomainSpec::q_j(j),
            FamilyIndex::Limit => DomainSpec::q_limit(),
        }
    }

    pub fn product(&self) -> DomainSpec {
        DomainSpec::ProductMinusDiagonal {
            base: Box::new(self.q_part()),
        }
    }

    /// The one-parameter action on the planar part: the conjugated rotation
    /// for finite members, the translation flow for the limit.
    pub fn planar_action(&self) -> Result<GroupAction, GalleryError> {
        match self.index {
            FamilyIndex::J(j) => {
                let (u_minus, u_plus) = symmetric_points(j)?;
                let map = Arc::new(move |z: &CxPoint, t: f64| -> Result<CxPoint, FlowError> {
                    rotation_conjugated(z.as_scalar(), t, u_minus, u_plus)
                        .map(CxPoint::scalar)
                        .map_err(|e| FlowError::Map(e.to_string()))
                });
                Ok(GroupAction::closed_form(map, Some(s1_generator(j)?)))
            }
            FamilyIndex::Limit => {
                let map = Arc::new(|z: &CxPoint, t: f64| -> Result<CxPoint, FlowError> {
                    g_t(z.as_scalar(), t)
                        .map(CxPoint::scalar)
                        .map_err(|e| FlowError::Map(e.to_string()))
                });
                Ok(GroupAction::closed_form(map, Some(limit_generator())))
            }
        }
    }

    /// The diagonal action on the product domain in C².
    pub fn product_action(&self) -> Result<GroupAction, GalleryError> {
        match self.index {
            FamilyIndex::J(j) => {
                let (u_minus, u_plus) = symmetric_points(j)?;
                let map = Arc::new(move |p: &CxPoint, t: f64| -> Result<CxPoint, FlowError> {
                    let z = rotation_conjugated(p.coords[0], t, u_minus, u_plus)
                        .map_err(|e| FlowError::Map(e.to_string()))?;
                    let w = rotation_conjugated(p.coords[1], t, u_minus, u_plus)
                        .map_err(|e| FlowError::Map(e.to_string()))?;
                    Ok(CxPoint::pair(z, w))
                });
                let field = VectorFieldPoly::diagonal2(&s1_generator(j)?);
                Ok(GroupAction::closed_form(map, Some(field)))
            }
            FamilyIndex::Limit => {
                let map = Arc::new(|p: &CxPoint, t: f64| -> Result<CxPoint, FlowError> {
                    f_t(p, t).map_err(|e| FlowError::Map(e.to_string()))
                });
                let field = VectorFieldPoly::diagonal2(&limit_generator());
                Ok(GroupAction::closed_form(map, Some(field)))
            }
        }
    }
}

/// The two points of the real axis symmetric with respect to both boundary
/// circles of Q_j (|z| = 1 and |z − c_j| = 1/2). They solve u₊u₋ = 1 and
/// (u₊ − c)(u₋ − c) = ρ², i.e. u² − Su + 1 = 0 with S = (1 + c² − ρ²)/c.
fn symmetric_points(j: u32) -> Result<(f64, f64), GalleryError> {
    let c = 0.5 - 0.5f64.powi(j as i32);
    let rho = 0.5;
    if (c + rho - 1.0).abs() < 1e-14 {
        return Err(GalleryError::Tangency);
    }
    if c <= 0.0 {
        return Err(GalleryError::Tangency);
    }
    let s = (1.0 + c * c - rho * rho) / c;
    let disc = (s * s / 4.0 - 1.0).sqrt();
    Ok((s / 2.0 - disc, s / 2.0 + disc))
}

/// T(z) = (z − u₋)/(z − u₊) sends both circles to concentric circles
/// centered at the origin; the action conjugates a rotation through T.
fn rotation_conjugated(
    z: Complex64,
    t: f64,
    u_minus: f64,
    u_plus: f64,
) -> Result<Complex64, GalleryError> {
    if t == 0.0 {
        return Ok(z);
    }
    let den = z - u_plus;
    if den.norm() == 0.0 {
        return Err(GalleryError::Pole { at: z });
    }
    let image = (z - u_minus) / den;
    let rotated = image * Complex64::new(t.cos(), t.sin());
    let back_den = rotated - Complex64::ONE;
    if back_den.norm() == 0.0 {
        return Err(GalleryError::Pole { at: z });
    }
    Ok((u_plus * rotated - u_minus) / back_den)
}

/// Value of the circle action of D_j's planar part at (z, t).
pub fn annulus_rotation_apply(j: u32, z: Complex64, t: f64) -> Result<Complex64, GalleryError> {
    let (u_minus, u_plus) = symmetric_points(j)?;
    rotation_conjugated(z, t, u_minus, u_plus)
}

/// Generator of the circle action on Q_j:
/// X_j(z) = i T(z)/T′(z) = i (z − u₋)(z − u₊)/(u₋ − u₊), a quadratic
/// polynomial field. Its positive-normalization limit as j → ∞ is the
/// normalized limit generator −i(z−1)²/sup.
pub fn s1_generator(j: u32) -> Result<VectorFieldPoly, GalleryError> {
    let (u_minus, u_plus) = symmetric_points(j)?;
    let scale = Complex64::I / Complex64::new(u_minus - u_plus, 0.0);
    let s = u_minus + u_plus;
    Ok(VectorFieldPoly::planar(&[
        scale,
        -scale * Complex64::new(s, 0.0),
        scale,
    ]))
}

/// Classifier tolerances (eps_compact, eps_recurrence, eps_escape) adapted
/// to a family member. Every circle orbit in Q_j has to thread the gap of
/// width ~2^{-j} between the two boundary circles, so the interior-clearance
/// threshold must shrink with the member index; the limit member keeps the
/// coarse defaults since its translation orbits leave every compact set.
pub fn member_orbit_tolerances(index: FamilyIndex) -> (f64, f64, f64) {
    match index {
        FamilyIndex::J(j) => {
            let pinch = 0.5f64.powi(j as i32);
            ((pinch / 8.0).min(0.02), 0.05, pinch / 64.0)
        }
        FamilyIndex::Limit => (0.02, 0.05, 1e-3),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitClass {
    Compact,
    Noncompact,
    Undetermined,
}

/// Result of sampling one orbit {g(z₀, t) : |t| ≤ horizon}.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub classification: OrbitClass,
    pub min_boundary_dist: f64,
    pub recurrence_gap: f64,
    pub horizon: f64,
}

/// Classify an orbit as Compact (stays away from the boundary and returns
/// near its start), Noncompact (approaches the boundary within `eps_esc`),
/// or Undetermined.
pub fn orbit_classifier(
    d: &DomainSpec,
    action: &GroupAction,
    z0: &CxPoint,
    t_max: f64,
    eps_c: f64,
    eps_r: f64,
    eps_esc: f64,
) -> Result<OrbitReport, GalleryError> {
    if !contains(d, z0)? {
        return Err(GalleryError::Domain(DomainError::OutsideDomain));
    }
    let steps = 1000usize;
    let mut min_bd = f64::INFINITY;
    let mut recurrence = f64::INFINITY;
    let mut escaped = false;
    for k in 0..=(2 * steps) {
        let t = -t_max + (k as f64) * t_max / (steps as f64);
        match action.apply(z0, t, d) {
            Ok(p) => {
                min_bd = min_bd.min(dist_to_boundary(d, &p)?);
                if t.abs() >= 1.0 {
                    recurrence = recurrence.min(p.dist(z0));
                }
            }
            Err(FlowError::Escape { .. }) => {
                escaped = true;
                min_bd = 0.0;
                break;
            }
            Err(e) => return Err(GalleryError::Flow(e)),
        }
    }
    let classification = if escaped || min_bd < eps_esc {
        OrbitClass::Noncompact
    } else if min_bd >= eps_c && recurrence <= eps_r {
        OrbitClass::Compact
    } else {
        OrbitClass::Undetermined
    };
    Ok(OrbitReport {
        classification,
        min_boundary_dist: min_bd,
        recurrence_gap: if recurrence.is_finite() {
            recurrence
        } else {
            0.0
        },
        horizon: t_max,
    })
}
