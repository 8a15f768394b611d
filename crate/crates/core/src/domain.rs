//! Bounded domains of Cⁿ and their geometric queries: membership, boundary
//! distance, inscribed/circumscribed radii, boundary meshes and the Hausdorff
//! distance between boundaries.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::point::CxPoint;

/// Default tolerance used when classifying points of analytic boundaries.
pub const MESH_TOL_ANALYTIC: f64 = 1e-9;
/// Default tolerance for sampled (mesh-backed) boundaries.
pub const MESH_TOL_SAMPLED: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("dimension mismatch: domain has dimension {expected}, point has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point lies outside the domain")]
    OutsideDomain,
    #[error("operation requires a bounded domain")]
    UnboundedDomain,
    #[error("invalid domain specification: {0}")]
    InvalidSpec(String),
}

/// A membership oracle plus boundary mesh standing in for a domain without
/// closed-form boundary.
#[derive(Clone)]
pub struct SampledDomain {
    pub dim: usize,
    pub oracle: Arc<dyn Fn(&CxPoint) -> bool + Send + Sync>,
    pub mesh: Vec<BoundarySample>,
    pub mesh_tol: f64,
}

impl fmt::Debug for SampledDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledDomain")
            .field("dim", &self.dim)
            .field("mesh_len", &self.mesh.len())
            .field("mesh_tol", &self.mesh_tol)
            .finish()
    }
}

/// A boundary point together with the outward unit normal at that point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySample {
    pub point: CxPoint,
    pub normal: CxPoint,
}

/// Supported domain shapes. The analytic variants answer every query in
/// closed form; `Sampled` falls back to its mesh and oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum DomainSpec {
    /// Euclidean ball B(center, radius) in Cⁿ.
    Ball { center: CxPoint, radius: f64 },
    /// The unit disk of C.
    UnitDisk,
    /// Im z > 0 (unbounded).
    UpperHalfPlane,
    /// 0 < Im z < 1 (unbounded).
    Strip,
    /// r_in < |z| < r_out.
    Annulus { r_in: f64, r_out: f64 },
    /// (Re z / a)² + (Im z / b)² < 1.
    Ellipse { a: f64, b: f64 },
    /// Unit disk with the closed disk {|z - center| <= rho} removed.
    DiskMinusDisk { center: Complex64, rho: f64 },
    /// {(z, w) : z in base, |w| < 1, w != z} in C².
    ProductMinusDiagonal { base: Box<DomainSpec> },
    #[serde(skip)]
    Sampled(SampledDomain),
}

impl DomainSpec {
    /// The set Q_j of the degenerating family: unit disk minus the closed
    /// disk of radius 1/2 centered at 1/2 - 2^{-j}.
    pub fn q_j(j: u32) -> DomainSpec {
        DomainSpec::DiskMinusDisk {
            center: Complex64::new(0.5 - 0.5f64.powi(j as i32), 0.0),
            rho: 0.5,
        }
    }

    /// The limit set Q: unit disk minus the closed disk of radius 1/2
    /// centered at 1/2. The two circles are internally tangent at z = 1.
    pub fn q_limit() -> DomainSpec {
        DomainSpec::DiskMinusDisk {
            center: Complex64::new(0.5, 0.0),
            rho: 0.5,
        }
    }

    /// Complex dimension of the ambient space.
    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Ball { center, .. } => center.dim(),
            DomainSpec::ProductMinusDiagonal { .. } => 2,
            DomainSpec::Sampled(s) => s.dim,
            _ => 1,
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, DomainSpec::UpperHalfPlane | DomainSpec::Strip)
    }

    /// Check the structural invariants of the variant parameters.
    pub fn validate(&self) -> Result<(), DomainError> {
        match self {
            DomainSpec::Ball { center, radius } => {
                if !center.is_finite() || !radius.is_finite() || *radius <= 0.0 {
                    return Err(DomainError::InvalidSpec(
                        "ball needs a finite center and positive radius".into(),
                    ));
                }
            }
            DomainSpec::Annulus { r_in, r_out } => {
                if !(*r_in > 0.0 && r_in < r_out && r_out.is_finite()) {
                    return Err(DomainError::InvalidSpec(
                        "annulus needs 0 < r_in < r_out".into(),
                    ));
                }
            }
            DomainSpec::Ellipse { a, b } => {
                if !(*a > 0.0 && *b > 0.0) {
                    return Err(DomainError::InvalidSpec(
                        "ellipse needs positive semi-axes".into(),
                    ));
                }
            }
            DomainSpec::DiskMinusDisk { center, rho } => {
                if !(*rho > 0.0) {
                    return Err(DomainError::InvalidSpec(
                        "removed disk needs positive radius".into(),
                    ));
                }
                // The removed disk must meet the closed unit disk, and must
                // not swallow it entirely.
                if center.norm() > 1.0 + rho {
                    return Err(DomainError::InvalidSpec(
                        "removed disk does not intersect the unit disk".into(),
                    ));
                }
                if *rho >= 1.0 + center.norm() {
                    return Err(DomainError::InvalidSpec(
                        "removed disk covers the whole unit disk".into(),
                    ));
                }
            }
            DomainSpec::ProductMinusDiagonal { base } => {
                if base.dim() != 1 {
                    return Err(DomainError::InvalidSpec(
                        "product base must be planar".into(),
                    ));
                }
                base.validate()?;
            }
            DomainSpec::Sampled(s) => {
                if s.mesh.is_empty() {
                    return Err(DomainError::InvalidSpec(
                        "sampled domain needs a boundary mesh".into(),
                    ));
                }
                // Every mesh point must sit on the oracle's boundary: the
                // oracle flips within mesh_tol along the outward normal.
                for bs in &s.mesh {
                    let inward = bs
                        .point
                        .sub(&bs.normal.scale(Complex64::new(s.mesh_tol, 0.0)));
                    let outward = bs
                        .point
                        .add(&bs.normal.scale(Complex64::new(s.mesh_tol, 0.0)));
                    if !(s.oracle)(&inward) || (s.oracle)(&outward) {
                        return Err(DomainError::InvalidSpec(
                            "mesh point is not within mesh_tol of the oracle boundary".into(),
                        ));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn check_dim(&self, z: &CxPoint) -> Result<(), DomainError> {
        if z.dim() != self.dim() {
            return Err(DomainError::DimensionMismatch {
                expected: self.dim(),
                got: z.dim(),
            });
        }
        Ok(())
    }
}

/// Inscribed and circumscribed ball radii around `center`:
/// B(center, r) ⊂ D ⊂ B(center, R).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiiPair {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub center: CxPoint,
}

/// Membership test for the open set `d`.
pub fn contains(d: &DomainSpec, z: &CxPoint) -> Result<bool, DomainError> {
    d.check_dim(z)?;
    if !z.is_finite() {
        return Err(DomainError::InvalidSpec(
            "point has non-finite coordinates".into(),
        ));
    }
    Ok(match d {
        DomainSpec::Ball { center, radius } => z.dist(center) < *radius,
        DomainSpec::UnitDisk => z.as_scalar().norm() < 1.0,
        DomainSpec::UpperHalfPlane => z.as_scalar().im > 0.0,
        DomainSpec::Strip => {
            let im = z.as_scalar().im;
            im > 0.0 && im < 1.0
        }
        DomainSpec::Annulus { r_in, r_out } => {
            let m = z.as_scalar().norm();
            m > *r_in && m < *r_out
        }
        DomainSpec::Ellipse { a, b } => {
            let v = z.as_scalar();
            (v.re / a).powi(2) + (v.im / b).powi(2) < 1.0
        }
        DomainSpec::DiskMinusDisk { center, rho } => {
            let v = z.as_scalar();
            v.norm() < 1.0 && (v - center).norm() > *rho
        }
        DomainSpec::ProductMinusDiagonal { base } => {
            let zc = z.coords[0];
            let wc = z.coords[1];
            contains(base, &CxPoint::scalar(zc))? && wc.norm() < 1.0 && wc != zc
        }
        DomainSpec::Sampled(s) => (s.oracle)(z),
    })
}

/// Euclidean distance from an interior point to the boundary of `d`.
///
/// Exact for the analytic variants; mesh-based minimum for `Sampled`. For
/// `ProductMinusDiagonal` the diagonal sheet is accounted for by the exact
/// distance |z - w|/√2 to the full diagonal, a sharp lower bound for the
/// distance to the boundary portion of the diagonal.
pub fn dist_to_boundary(d: &DomainSpec, z: &CxPoint) -> Result<f64, DomainError> {
    if !contains(d, z)? {
        return Err(DomainError::OutsideDomain);
    }
    Ok(match d {
        DomainSpec::Ball { center, radius } => radius - z.dist(center),
        DomainSpec::UnitDisk => 1.0 - z.as_scalar().norm(),
        DomainSpec::UpperHalfPlane => z.as_scalar().im,
        DomainSpec::Strip => {
            let im = z.as_scalar().im;
            im.min(1.0 - im)
        }
        DomainSpec::Annulus { r_in, r_out } => {
            let m = z.as_scalar().norm();
            (m - r_in).min(r_out - m)
        }
        DomainSpec::Ellipse { a, b } => ellipse_boundary_dist(*a, *b, z.as_scalar()),
        DomainSpec::DiskMinusDisk { center, rho } => {
            let v = z.as_scalar();
            (1.0 - v.norm()).min((v - center).norm() - rho)
        }
        DomainSpec::ProductMinusDiagonal { base } => {
            let zc = z.coords[0];
            let wc = z.coords[1];
            let base_dist = dist_to_boundary(base, &CxPoint::scalar(zc))?;
            let fiber_dist = 1.0 - wc.norm();
            let diag_dist = (wc - zc).norm() / std::f64::consts::SQRT_2;
            base_dist.min(fiber_dist).min(diag_dist)
        }
        DomainSpec::Sampled(s) => s
            .mesh
            .iter()
            .map(|bs| bs.point.dist(z))
            .fold(f64::INFINITY, f64::min),
    })
}

/// Distance from an arbitrary point of the ambient space to the boundary of
/// `d`, where a closed form is available. Used to sharpen Hausdorff
/// computations; `None` means callers must fall back to boundary samples.
pub fn boundary_point_dist(d: &DomainSpec, p: &CxPoint) -> Option<f64> {
    match d {
        DomainSpec::Ball { center, radius } => Some((p.dist(center) - radius).abs()),
        DomainSpec::UnitDisk => Some((p.as_scalar().norm() - 1.0).abs()),
        DomainSpec::Annulus { r_in, r_out } => {
            let m = p.as_scalar().norm();
            Some((m - r_in).abs().min((m - r_out).abs()))
        }
        DomainSpec::Ellipse { a, b } => Some(ellipse_boundary_dist_signed(*a, *b, p.as_scalar())),
        DomainSpec::DiskMinusDisk { center, rho } => {
            let v = p.as_scalar();
            Some(
                (v.norm() - 1.0)
                    .abs()
                    .min(((v - center).norm() - rho).abs()),
            )
        }
        _ => None,
    }
}

/// Distance from an interior point to the ellipse boundary.
fn ellipse_boundary_dist(a: f64, b: f64, p: Complex64) -> f64 {
    ellipse_boundary_dist_signed(a, b, p)
}

/// Distance from any point to the ellipse {(a cos t, b sin t)}, by coarse
/// parametric sampling followed by golden-section refinement around the two
/// best brackets. The squared-distance function along the boundary has at
/// most four local minima, so refining around the best coarse samples is
/// reliable at this resolution.
fn ellipse_boundary_dist_signed(a: f64, b: f64, p: Complex64) -> f64 {
    let f = |t: f64| {
        let dx = a * t.cos() - p.re;
        let dy = b * t.sin() - p.im;
        dx * dx + dy * dy
    };
    let coarse = 256;
    let mut best = f64::INFINITY;
    let mut best_k = 0usize;
    for k in 0..coarse {
        let t = 2.0 * std::f64::consts::PI * (k as f64) / (coarse as f64);
        let v = f(t);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let step = 2.0 * std::f64::consts::PI / coarse as f64;
    let mut lo = (best_k as f64 - 1.0) * step;
    let mut hi = (best_k as f64 + 1.0) * step;
    // Golden-section search on the bracketing interval.
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..90 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    f(0.5 * (lo + hi)).sqrt().min(best.sqrt())
}

/// Inscribed/circumscribed radii of `d` around `center`.
pub fn inner_outer_radii(d: &DomainSpec, center: &CxPoint) -> Result<RadiiPair, DomainError> {
    if !d.is_bounded() {
        return Err(DomainError::UnboundedDomain);
    }
    let r = dist_to_boundary(d, center)?;
    let big_r = match d {
        DomainSpec::Ball { center: c, radius } => radius + center.dist(c),
        DomainSpec::UnitDisk => 1.0 + center.as_scalar().norm(),
        DomainSpec::Annulus { r_out, .. } => r_out + center.as_scalar().norm(),
        DomainSpec::Ellipse { a, b } => {
            // sup over the boundary of |z - center|: coarse sampling plus
            // golden refinement of the (smooth) squared distance maximum.
            let p = center.as_scalar();
            let f = |t: f64| {
                let dx = a * t.cos() - p.re;
                let dy = b * t.sin() - p.im;
                dx * dx + dy * dy
            };
            let coarse = 512;
            let mut best = 0.0f64;
            for k in 0..coarse {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (coarse as f64);
                best = best.max(f(t));
            }
            // The coarse max of a smooth periodic function at this density is
            // within O(step²) of the true sup; refine once around the best.
            let step = 2.0 * std::f64::consts::PI / coarse as f64;
            let mut refined = best;
            for k in 0..coarse {
                let t0 = 2.0 * std::f64::consts::PI * (k as f64) / (coarse as f64);
                if f(t0) >= best - 1e-9 {
                    let mut lo = t0 - step;
                    let mut hi = t0 + step;
                    for _ in 0..60 {
                        let m1 = lo + (hi - lo) / 3.0;
                        let m2 = hi - (hi - lo) / 3.0;
                        if f(m1) < f(m2) {
                            lo = m1;
                        } else {
                            hi = m2;
                        }
                    }
                    refined = refined.max(f(0.5 * (lo + hi)));
                }
            }
            refined.sqrt()
        }
        DomainSpec::DiskMinusDisk { center: c, rho } => {
            let p = center.as_scalar();
            (1.0 + p.norm()).max((p - c).norm() + rho)
        }
        DomainSpec::ProductMinusDiagonal { base } => {
            let zc = CxPoint::scalar(center.coords[0]);
            let base_radii = inner_outer_radii(base, &zc)?;
            let fiber_sup = 1.0 + center.coords[1].norm();
            (base_radii.big_r.powi(2) + fiber_sup.powi(2)).sqrt()
        }
        DomainSpec::Sampled(s) => {
            let sup = s
                .mesh
                .iter()
                .map(|bs| bs.point.dist(center))
                .fold(0.0f64, f64::max);
            sup * (1.0 + s.mesh_tol)
        }
        DomainSpec::UpperHalfPlane | DomainSpec::Strip => unreachable!(),
    };
    Ok(RadiiPair {
        r,
        big_r,
        center: center.clone(),
    })
}

fn circle_samples(
    center: Complex64,
    radius: f64,
    density: f64,
    outward: f64,
    out: &mut Vec<BoundarySample>,
) {
    let n = ((2.0 * std::f64::consts::PI * radius / density).ceil() as usize).max(8);
    for k in 0..n {
        let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        let dir = Complex64::new(t.cos(), t.sin());
        out.push(BoundarySample {
            point: CxPoint::scalar(center + radius * dir),
            normal: CxPoint::scalar(outward * dir),
        });
    }
}

/// Mesh of the unit sphere S³ ⊂ C² in Hopf coordinates
/// (cos η e^{iξ₁}, sin η e^{iξ₂}), with geodesic spacing ≤ `density`.
fn sphere3_directions(density: f64) -> Vec<(Complex64, Complex64)> {
    let mut dirs = Vec::new();
    let n_eta = ((std::f64::consts::FRAC_PI_2 / density).ceil() as usize).max(2);
    for a in 0..=n_eta {
        let eta = std::f64::consts::FRAC_PI_2 * (a as f64) / (n_eta as f64);
        let (c, s) = (eta.cos(), eta.sin());
        let n1 = ((2.0 * std::f64::consts::PI * c / density).ceil() as usize).max(1);
        let n2 = ((2.0 * std::f64::consts::PI * s / density).ceil() as usize).max(1);
        for k1 in 0..n1 {
            let t1 = 2.0 * std::f64::consts::PI * (k1 as f64) / (n1 as f64);
            for k2 in 0..n2 {
                let t2 = 2.0 * std::f64::consts::PI * (k2 as f64) / (n2 as f64);
                dirs.push((
                    c * Complex64::new(t1.cos(), t1.sin()),
                    s * Complex64::new(t2.cos(), t2.sin()),
                ));
            }
        }
    }
    dirs
}

/// Sample the boundary of a bounded domain with arc spacing at most
/// `density`; each sample carries the outward unit normal.
pub fn boundary_samples(d: &DomainSpec, density: f64) -> Result<Vec<BoundarySample>, DomainError> {
    if !d.is_bounded() {
        return Err(DomainError::UnboundedDomain);
    }
    if !(density > 0.0) {
        return Err(DomainError::InvalidSpec("density must be positive".into()));
    }
    let mut out = Vec::new();
    match d {
        DomainSpec::UnitDisk => circle_samples(Complex64::ZERO, 1.0, density, 1.0, &mut out),
        DomainSpec::Ball { center, radius } => match center.dim() {
            1 => circle_samples(center.as_scalar(), *radius, density, 1.0, &mut out),
            2 => {
                for (d1, d2) in sphere3_directions(density / radius) {
                    let dir = CxPoint::pair(d1, d2);
                    out.push(BoundarySample {
                        point: center.add(&dir.scale(Complex64::new(*radius, 0.0))),
                        normal: dir,
                    });
                }
            }
            n => {
                return Err(DomainError::InvalidSpec(format!(
                    "boundary sampling not implemented for balls in C^{n}"
                )))
            }
        },
        DomainSpec::Annulus { r_in, r_out } => {
            circle_samples(Complex64::ZERO, *r_out, density, 1.0, &mut out);
            circle_samples(Complex64::ZERO, *r_in, density, -1.0, &mut out);
        }
        DomainSpec::Ellipse { a, b } => {
            let speed_max = a.max(*b);
            let n = ((2.0 * std::f64::consts::PI * speed_max / density).ceil() as usize).max(8);
            for k in 0..n {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                let p = Complex64::new(a * t.cos(), b * t.sin());
                // Outward normal along the gradient of (x/a)² + (y/b)².
                let g = Complex64::new(p.re / (a * a), p.im / (b * b));
                out.push(BoundarySample {
                    point: CxPoint::scalar(p),
                    normal: CxPoint::scalar(g / g.norm()),
                });
            }
        }
        DomainSpec::DiskMinusDisk { center, rho } => {
            let mut outer = Vec::new();
            circle_samples(Complex64::ZERO, 1.0, density, 1.0, &mut outer);
            // Keep the outer-circle points not strictly inside the removed disk.
            out.extend(
                outer.into_iter().filter(|bs| {
                    (bs.point.as_scalar() - center).norm() >= *rho - MESH_TOL_ANALYTIC
                }),
            );
            let mut inner = Vec::new();
            // Inner-circle normals point into the removed disk (out of d).
            circle_samples(*center, *rho, density, -1.0, &mut inner);
            for bs in inner {
                let v = bs.point.as_scalar();
                if v.norm() <= 1.0 + MESH_TOL_ANALYTIC {
                    // At internal tangency the circles meet; keep the point once.
                    if (v.norm() - 1.0).abs() < MESH_TOL_ANALYTIC
                        && out
                            .iter()
                            .any(|o| (o.point.as_scalar() - v).norm() < MESH_TOL_ANALYTIC)
                    {
                        continue;
                    }
                    out.push(bs);
                }
            }
        }
        DomainSpec::ProductMinusDiagonal { base } => {
            // The two 3-real-dimensional sheets ∂base × Δ and base × ∂Δ,
            // each meshed as a circle of base boundary (resp. fiber boundary)
            // crossed with a polar grid of the opposite disk factor. Fiber
            // grid points too close to the diagonal are dropped so that
            // normal-offset membership probes stay meaningful.
            let base_bnd = boundary_samples(base, density)?;
            let disk_grid = disk_polar_grid(density);
            let fiber_interior: Vec<Complex64> = disk_grid
                .iter()
                .copied()
                .filter(|w| w.norm() < 1.0 - 10.0 * MESH_TOL_ANALYTIC)
                .collect();
            for bs in &base_bnd {
                let zb = bs.point.as_scalar();
                for &w in &fiber_interior {
                    if (w - zb).norm() < 10.0 * MESH_TOL_ANALYTIC {
                        continue;
                    }
                    out.push(BoundarySample {
                        point: CxPoint::pair(zb, w),
                        normal: CxPoint::pair(bs.normal.as_scalar(), Complex64::ZERO),
                    });
                }
            }
            // Interior grid of the base: reuse the polar grid filtered by
            // membership with a safety margin.
            let base_interior: Vec<Complex64> = disk_grid
                .iter()
                .copied()
                .filter(|z| {
                    contains(base, &CxPoint::scalar(*z)).unwrap_or(false)
                        && dist_to_boundary(base, &CxPoint::scalar(*z)).unwrap_or(0.0)
                            > 10.0 * MESH_TOL_ANALYTIC
                })
                .collect();
            let n = ((2.0 * std::f64::consts::PI / density).ceil() as usize).max(8);
            for k in 0..n {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                let wq = Complex64::new(t.cos(), t.sin());
                for &zb in &base_interior {
                    if (wq - zb).norm() < 10.0 * MESH_TOL_ANALYTIC {
                        continue;
                    }
                    out.push(BoundarySample {
                        point: CxPoint::pair(zb, wq),
                        normal: CxPoint::pair(Complex64::ZERO, wq),
                    });
                }
            }
        }
        DomainSpec::Sampled(s) => out.extend(s.mesh.iter().cloned()),
        DomainSpec::UpperHalfPlane | DomainSpec::Strip => unreachable!(),
    }
    Ok(out)
}

/// Polar grid of the closed unit disk with spacing about `density`.
fn disk_polar_grid(density: f64) -> Vec<Complex64> {
    let mut pts = vec![Complex64::ZERO];
    let n_r = ((1.0 / density).ceil() as usize).max(2);
    for a in 1..=n_r {
        let r = a as f64 / n_r as f64;
        let n_t = ((2.0 * std::f64::consts::PI * r / density).ceil() as usize).max(4);
        for k in 0..n_t {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (n_t as f64);
            pts.push(r * Complex64::new(t.cos(), t.sin()));
        }
    }
    pts
}

/// Hausdorff distance between the boundaries of two bounded domains,
/// max of the two directed sup-inf distances over boundary samples.
///
/// When the opposite domain has a closed-form boundary-distance function the
/// inf is evaluated exactly at each sample, leaving only the O(density²)
/// error of discretizing the sup side.
pub fn hausdorff_distance(
    d1: &DomainSpec,
    d2: &DomainSpec,
    density: f64,
) -> Result<f64, DomainError> {
    if !d1.is_bounded() || !d2.is_bounded() {
        return Err(DomainError::UnboundedDomain);
    }
    if d1.dim() != d2.dim() {
        return Err(DomainError::DimensionMismatch {
            expected: d1.dim(),
            got: d2.dim(),
        });
    }
    let s1 = boundary_samples(d1, density)?;
    let s2 = boundary_samples(d2, density)?;
    let h12 = directed_hausdorff(&s1, d2, &s2);
    let h21 = directed_hausdorff(&s2, d1, &s1);
    Ok(h12.max(h21))
}

fn directed_hausdorff(
    from: &[BoundarySample],
    to: &DomainSpec,
    to_samples: &[BoundarySample],
) -> f64 {
    let mut sup = 0.0f64;
    for bs in from {
        let inf = match boundary_point_dist(to, &bs.point) {
            Some(v) => v,
            None => to_samples
                .iter()
                .map(|t| t.point.dist(&bs.point))
                .fold(f64::INFINITY, f64::min),
        };
        sup = sup.max(inf);
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn contains_disk_center() {
        assert!(contains(&DomainSpec::UnitDisk, &CxPoint::scalar(Complex64::ZERO)).unwrap());
    }

    #[test]
    fn contains_disk_minus_disk_left_point() {
        // |−1/2 − 1/2| = 1 > 1/2 and |−1/2| < 1.
        let q = DomainSpec::q_limit();
        assert!(contains(&q, &CxPoint::scalar(c(-0.5, 0.0))).unwrap());
        // The point 1/4 lies inside the removed disk.
        assert!(!contains(&q, &CxPoint::scalar(c(0.25, 0.0))).unwrap());
    }

    #[test]
    fn contains_product_removes_diagonal() {
        let d = DomainSpec::ProductMinusDiagonal {
            base: Box::new(DomainSpec::q_limit()),
        };
        assert!(!contains(&d, &CxPoint::pair(c(-0.5, 0.0), c(-0.5, 0.0))).unwrap());
        assert!(contains(&d, &CxPoint::pair(c(-0.5, 0.0), c(0.0, 0.0))).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = contains(
            &DomainSpec::UnitDisk,
            &CxPoint::pair(c(0.0, 0.0), c(0.0, 0.0)),
        );
        assert!(matches!(err, Err(DomainError::DimensionMismatch { .. })));
    }

    #[test]
    fn boundary_dist_examples() {
        assert!(
            (dist_to_boundary(&DomainSpec::UnitDisk, &CxPoint::scalar(Complex64::ZERO)).unwrap()
                - 1.0)
                .abs()
                < 1e-15
        );
        let ball = DomainSpec::Ball {
            center: CxPoint::pair(Complex64::ZERO, Complex64::ZERO),
            radius: 2.0,
        };
        let p = CxPoint::pair(Complex64::ONE, Complex64::ZERO);
        assert!((dist_to_boundary(&ball, &p).unwrap() - 1.0).abs() < 1e-15);
        // Distance from −1/2 in Q: 1/2 to both circles.
        let q = DomainSpec::q_limit();
        assert!(
            (dist_to_boundary(&q, &CxPoint::scalar(c(-0.5, 0.0))).unwrap() - 0.5).abs() < 1e-15
        );
        let outside = dist_to_boundary(&DomainSpec::UnitDisk, &CxPoint::scalar(c(2.0, 0.0)));
        assert!(matches!(outside, Err(DomainError::OutsideDomain)));
    }

    #[test]
    fn ellipse_distance_matches_bruteforce() {
        // Independent oracle: dense parametric minimum.
        let (a, b) = (2.0, 1.0);
        for &p in &[c(0.3, 0.2), c(-1.0, 0.1), c(0.0, 0.0), c(1.5, 0.0)] {
            let brute = (0..200_000)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * (k as f64) / 200_000.0;
                    (c(a * t.cos(), b * t.sin()) - p).norm()
                })
                .fold(f64::INFINITY, f64::min);
            let fast = ellipse_boundary_dist_signed(a, b, p);
            assert!((brute - fast).abs() < 1e-7, "p={p}: {brute} vs {fast}");
        }
    }

    #[test]
    fn radii_examples() {
        let rp =
            inner_outer_radii(&DomainSpec::UnitDisk, &CxPoint::scalar(Complex64::ZERO)).unwrap();
        assert!((rp.r - 1.0).abs() < 1e-12 && (rp.big_r - 1.0).abs() < 1e-12);

        let rp = inner_outer_radii(
            &DomainSpec::Ellipse { a: 2.0, b: 1.0 },
            &CxPoint::scalar(Complex64::ZERO),
        )
        .unwrap();
        assert!((rp.r - 1.0).abs() < 1e-9, "r = {}", rp.r);
        assert!((rp.big_r - 2.0).abs() < 1e-9, "R = {}", rp.big_r);

        let rp = inner_outer_radii(&DomainSpec::q_limit(), &CxPoint::scalar(c(-0.5, 0.0))).unwrap();
        assert!((rp.r - 0.5).abs() < 1e-12);
        assert!((rp.big_r - 1.5).abs() < 1e-12);

        assert!(matches!(
            inner_outer_radii(&DomainSpec::Strip, &CxPoint::scalar(c(0.0, 0.5))),
            Err(DomainError::UnboundedDomain)
        ));
    }

    #[test]
    fn radii_sandwich_against_boundary_samples() {
        // Brute-force certificate: r ≤ |p − center| ≤ R for all samples.
        let cases = vec![
            (DomainSpec::UnitDisk, CxPoint::scalar(c(0.2, -0.1))),
            (
                DomainSpec::Ellipse { a: 2.0, b: 1.0 },
                CxPoint::scalar(c(0.4, 0.3)),
            ),
            (DomainSpec::q_limit(), CxPoint::scalar(c(-0.5, 0.0))),
            (DomainSpec::q_j(4), CxPoint::scalar(c(-0.5, 0.1))),
        ];
        for (d, center) in cases {
            let rp = inner_outer_radii(&d, &center).unwrap();
            for bs in boundary_samples(&d, 0.02).unwrap() {
                let dist = bs.point.dist(&center);
                assert!(dist >= rp.r - 1e-9, "{d:?}: {dist} < r {}", rp.r);
                assert!(dist <= rp.big_r + 1e-9, "{d:?}: {dist} > R {}", rp.big_r);
            }
        }
    }

    #[test]
    fn disk_boundary_samples_are_radial() {
        let samples =
            boundary_samples(&DomainSpec::UnitDisk, 2.0 * std::f64::consts::PI / 8.0).unwrap();
        assert_eq!(samples.len(), 8);
        for bs in &samples {
            assert!((bs.point.as_scalar() - bs.normal.as_scalar()).norm() < 1e-12);
        }
    }

    #[test]
    fn inner_circle_normals_point_into_removed_disk() {
        let q = DomainSpec::q_j(3);
        let center = c(0.5 - 0.125, 0.0);
        for bs in boundary_samples(&q, 0.05).unwrap() {
            let p = bs.point.as_scalar();
            if ((p - center).norm() - 0.5).abs() < 1e-9 {
                // Normal should point from p toward the removed center.
                let toward = (center - p) / (center - p).norm();
                assert!((bs.normal.as_scalar() - toward).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn ellipse_normals_follow_gradient() {
        for bs in boundary_samples(&DomainSpec::Ellipse { a: 2.0, b: 1.0 }, 0.1).unwrap() {
            let p = bs.point.as_scalar();
            let g = c(p.re / 4.0, p.im);
            let gn = g / g.norm();
            assert!((bs.normal.as_scalar() - gn).norm() < 1e-12);
        }
    }

    #[test]
    fn boundary_probe_flips_membership() {
        let eps = MESH_TOL_ANALYTIC;
        let battery = vec![
            DomainSpec::UnitDisk,
            DomainSpec::Annulus {
                r_in: 0.3,
                r_out: 1.0,
            },
            DomainSpec::Ellipse { a: 2.0, b: 1.0 },
            DomainSpec::q_j(3),
            DomainSpec::Ball {
                center: CxPoint::pair(Complex64::ZERO, Complex64::ZERO),
                radius: 1.0,
            },
        ];
        for d in battery {
            for bs in boundary_samples(&d, 0.2).unwrap() {
                let inner = bs.point.sub(&bs.normal.scale(c(eps, 0.0)));
                let outer = bs.point.add(&bs.normal.scale(c(eps, 0.0)));
                assert!(contains(&d, &inner).unwrap(), "{d:?} {:?}", bs.point);
                assert!(!contains(&d, &outer).unwrap(), "{d:?} {:?}", bs.point);
            }
        }
    }

    #[test]
    fn tangency_point_sampled_once() {
        let q = DomainSpec::q_limit();
        let samples = boundary_samples(&q, 0.01).unwrap();
        let near_tangency: Vec<_> = samples
            .iter()
            .filter(|bs| (bs.point.as_scalar() - c(1.0, 0.0)).norm() < 1e-9)
            .collect();
        assert!(near_tangency.len() <= 1);
    }

    #[test]
    fn hausdorff_identical_and_concentric() {
        let same = hausdorff_distance(&DomainSpec::UnitDisk, &DomainSpec::UnitDisk, 0.05).unwrap();
        assert!(same < 1e-12, "h = {same}");
        let b1 = DomainSpec::Ball {
            center: CxPoint::pair(Complex64::ZERO, Complex64::ZERO),
            radius: 1.0,
        };
        let b2 = DomainSpec::Ball {
            center: CxPoint::pair(Complex64::ZERO, Complex64::ZERO),
            radius: 1.5,
        };
        let h = hausdorff_distance(&b1, &b2, 0.2).unwrap();
        assert!((h - 0.5).abs() < 1e-9, "h = {h}");
    }

    #[test]
    fn hausdorff_qj_converges_at_dyadic_rate() {
        // Oracle: the two inner circles have equal radii and centers 2^{-j}
        // apart, so the boundary Hausdorff distance is exactly 2^{-j}.
        for j in [3u32, 5, 8] {
            let gap = 0.5f64.powi(j as i32);
            let h = hausdorff_distance(&DomainSpec::q_j(j), &DomainSpec::q_limit(), 0.01).unwrap();
            assert!(
                h >= gap / (1.0 + 0.01) && h <= gap * (1.0 + 0.01),
                "j={j}: {h} vs {gap}"
            );
        }
    }

    #[test]
    fn hausdorff_brute_force_cross_check() {
        // Pure sample-vs-sample oracle, no closed-form shortcut.
        let d1 = DomainSpec::q_j(4);
        let d2 = DomainSpec::q_limit();
        let density = 0.004;
        let s1 = boundary_samples(&d1, density).unwrap();
        let s2 = boundary_samples(&d2, density).unwrap();
        let dir = |a: &[BoundarySample], b: &[BoundarySample]| {
            a.iter()
                .map(|p| {
                    b.iter()
                        .map(|q| q.point.dist(&p.point))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0f64, f64::max)
        };
        let brute = dir(&s1, &s2).max(dir(&s2, &s1));
        let fast = hausdorff_distance(&d1, &d2, density).unwrap();
        assert!((brute - fast).abs() < 2.0 * density, "{brute} vs {fast}");
    }

    #[test]
    fn sampled_domain_validates_mesh() {
        let mesh = boundary_samples(&DomainSpec::Ellipse { a: 2.0, b: 1.0 }, 0.05).unwrap();
        let s = DomainSpec::Sampled(SampledDomain {
            dim: 1,
            oracle: Arc::new(|z: &CxPoint| {
                let v = z.as_scalar();
                (v.re / 2.0).powi(2) + v.im.powi(2) < 1.0
            }),
            mesh,
            mesh_tol: MESH_TOL_SAMPLED,
        });
        s.validate().unwrap();
        assert!(contains(&s, &CxPoint::scalar(c(0.5, 0.2))).unwrap());
    }

    #[test]
    fn domain_json_round_trip() {
        let d = DomainSpec::q_j(3);
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"variant\":\"DiskMinusDisk\""));
        let back: DomainSpec = serde_json::from_str(&text).unwrap();
        match back {
            DomainSpec::DiskMinusDisk { center, rho } => {
                assert_eq!(center, c(0.375, 0.0));
                assert_eq!(rho, 0.5);
            }
            _ => panic!("wrong variant"),
        }
    }
}
