//! Automorphism-dimension estimation for planar domains.
//!
//! A holomorphic polynomial field X is tangent to ∂D when Re(X(z)·ν̄(z)) = 0
//! at every boundary point; sampling that constraint gives a real linear
//! system whose numerical nullity is a lower-bound heuristic for the real
//! dimension of the identity component of Aut(D), exact on the shipped
//! battery (disk 3, ellipse 0, annulus 1) at degree 2. The polynomial
//! degree cap is carried in every report.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::domain::{
    boundary_samples, dist_to_boundary, hausdorff_distance, BoundarySample, DomainError, DomainSpec,
};
use crate::gallery::{limit_generator, s1_generator, GalleryError};
use crate::point::CxPoint;
use crate::poly::VectorFieldPoly;

#[derive(Debug, Error)]
pub enum DimError {
    #[error("underdetermined tangency system: {got} samples for {needed} required")]
    Underdetermined { needed: usize, got: usize },
    #[error("ambiguous nullity: spectral gap {gap:.3} < 10")]
    AmbiguousDim { spectrum: Vec<f64>, gap: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
}

/// The sampled boundary-tangency constraint system over the monomial basis
/// 1, z, …, z^degree with real and imaginary coefficient parts split.
pub struct TangencySystem {
    pub matrix: DMatrix<f64>,
    pub degree: u32,
    pub samples: Vec<BoundarySample>,
}

pub fn tangency_matrix(
    d: &DomainSpec,
    degree: u32,
    density: f64,
) -> Result<TangencySystem, DimError> {
    if d.dim() != 1 {
        return Err(DimError::Precondition("tangency systems are planar".into()));
    }
    let samples = boundary_samples(d, density)?;
    let needed = 4 * (degree as usize + 1);
    if samples.len() < needed {
        return Err(DimError::Underdetermined {
            needed,
            got: samples.len(),
        });
    }
    let cols = 2 * (degree as usize + 1);
    let mut matrix = DMatrix::zeros(samples.len(), cols);
    for (k, bs) in samples.iter().enumerate() {
        let z = bs.point.as_scalar();
        let nu_bar = bs.normal.as_scalar().conj();
        let mut zm = Complex64::ONE;
        for m in 0..=(degree as usize) {
            let q = zm * nu_bar;
            // Re((a + ib) q) = a Re q − b Im q.
            matrix[(k, 2 * m)] = q.re;
            matrix[(k, 2 * m + 1)] = -q.im;
            zm *= z;
        }
    }
    Ok(TangencySystem {
        matrix,
        degree,
        samples,
    })
}

/// Estimated real dimension of the tangent field algebra, with the spectrum
/// that produced it. The estimate is a degree-capped lower-bound heuristic
/// for dim Aut₀.
#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub estimated_dim: usize,
    /// Singular values in descending order.
    pub singular_values: Vec<f64>,
    /// Ratio across the chosen cut (last kept over first dropped); for a
    /// trivial nullspace, the smallest singular value over the threshold.
    pub gap_ratio: f64,
    pub tolerance: f64,
    pub degree: u32,
}

struct SvdOutcome {
    report: DimReport,
    null_fields: Vec<VectorFieldPoly>,
}

fn svd_nullity(system: &TangencySystem, tol: f64) -> Result<SvdOutcome, DimError> {
    let svd = system.matrix.clone().svd(false, true);
    let v_t = svd.v_t.expect("SVD with compute_v");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let cutoff = tol * sigma_max;
    let nullity = sigma.iter().filter(|&&s| s < cutoff).count();
    let cols = sigma.len();
    let gap_ratio = if sigma_max == 0.0 {
        f64::INFINITY
    } else if nullity == 0 {
        sigma[cols - 1] / cutoff
    } else if nullity == cols {
        f64::INFINITY
    } else {
        let kept = sigma[cols - nullity - 1];
        let dropped = sigma[cols - nullity].max(f64::MIN_POSITIVE);
        kept / dropped
    };
    let report = DimReport {
        estimated_dim: nullity,
        singular_values: sigma,
        gap_ratio,
        tolerance: tol,
        degree: system.degree,
    };
    if gap_ratio < 10.0 {
        return Err(DimError::AmbiguousDim {
            spectrum: report.singular_values,
            gap: gap_ratio,
        });
    }
    // Null vectors are the rows of Vᵀ for the smallest singular values.
    let mut null_fields = Vec::new();
    for rank in 0..nullity {
        let row = order[cols - 1 - rank];
        let mut coeffs = Vec::with_capacity(cols / 2);
        for m in 0..cols / 2 {
            coeffs.push(Complex64::new(v_t[(row, 2 * m)], v_t[(row, 2 * m + 1)]));
        }
        null_fields.push(VectorFieldPoly::planar(&coeffs));
    }
    Ok(SvdOutcome {
        report,
        null_fields,
    })
}

/// Default boundary sample density for dimension estimates.
pub const DIM_DENSITY: f64 = 0.05;

pub fn aut_dim_estimate(d: &DomainSpec, degree: u32, tol: f64) -> Result<DimReport, DimError> {
    aut_dim_estimate_at_density(d, degree, tol, DIM_DENSITY)
}

pub fn aut_dim_estimate_at_density(
    d: &DomainSpec,
    degree: u32,
    tol: f64,
    density: f64,
) -> Result<DimReport, DimError> {
    let system = tangency_matrix(d, degree, density)?;
    Ok(svd_nullity(&system, tol)?.report)
}

/// Dimension estimate together with a basis of the tangent nullspace.
pub fn tangent_field_basis(
    d: &DomainSpec,
    degree: u32,
    tol: f64,
    density: f64,
) -> Result<(DimReport, Vec<VectorFieldPoly>), DimError> {
    let system = tangency_matrix(d, degree, density)?;
    let out = svd_nullity(&system, tol)?;
    Ok((out.report, out.null_fields))
}

/// One row of a semicontinuity experiment.
#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityRow {
    pub parameter: f64,
    pub hausdorff_gap: f64,
    pub estimated_dim: usize,
    pub sigma_min: f64,
    pub gap_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityTable {
    pub rows: Vec<SemicontinuityRow>,
    pub limit_dim: usize,
    /// limsup of member dimensions never exceeds the limit dimension.
    pub semicontinuity_holds: bool,
}

/// Estimate dimensions along a family converging (in boundary Hausdorff
/// distance) to `limit`, and check upper semicontinuity at the limit point.
pub fn semicontinuity_experiment(
    family: &[(f64, DomainSpec)],
    limit: &DomainSpec,
    degree: u32,
    tol: f64,
    density: f64,
) -> Result<SemicontinuityTable, DimError> {
    let limit_report = aut_dim_estimate_at_density(limit, degree, tol, density)?;
    let mut rows = Vec::with_capacity(family.len());
    for (param, member) in family {
        let report = aut_dim_estimate_at_density(member, degree, tol, density)?;
        let gap = hausdorff_distance(member, limit, density)?;
        rows.push(SemicontinuityRow {
            parameter: *param,
            hausdorff_gap: gap,
            estimated_dim: report.estimated_dim,
            sigma_min: report.singular_values.last().copied().unwrap_or(0.0),
            gap_ratio: report.gap_ratio,
        });
    }
    let semicontinuity_holds = rows
        .iter()
        .all(|r| r.estimated_dim <= limit_report.estimated_dim);
    Ok(SemicontinuityTable {
        rows,
        limit_dim: limit_report.estimated_dim,
        semicontinuity_holds,
    })
}

/// Sup deviations of the normalized circle-action generators of the family
/// members from the normalized limit generator, over a compact sample set.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub js: Vec<u32>,
    pub sup_deviations: Vec<f64>,
    pub compact_set: String,
}

/// Normalize each member generator to sup-norm 1 on the ball
/// B(ball_center, ball_radius) and measure sup_K |X_j − X_limit| over the
/// sample cloud `k_samples`. The cloud must sit inside every member domain
/// with margin 3·`s_margin`.
pub fn field_convergence_experiment(
    j_list: &[u32],
    ball_center: Complex64,
    ball_radius: f64,
    k_samples: &[CxPoint],
    s_margin: f64,
) -> Result<ConvergenceReport, DimError> {
    if k_samples.is_empty() {
        return Err(DimError::Precondition("empty compact sample set".into()));
    }
    let center = CxPoint::scalar(ball_center);
    let normalize = |field: &VectorFieldPoly| -> Result<VectorFieldPoly, DimError> {
        let sup = field.sup_on_ball(&center, ball_radius, 2048);
        if sup == 0.0 {
            return Err(DimError::Precondition(
                "generator vanishes on the ball".into(),
            ));
        }
        Ok(field.scale(Complex64::new(1.0 / sup, 0.0)))
    };
    let check_margins = |d: &DomainSpec| -> Result<(), DimError> {
        if dist_to_boundary(d, &center)? < ball_radius {
            return Err(DimError::Precondition(
                "normalization ball leaves the domain".into(),
            ));
        }
        for k in k_samples {
            if dist_to_boundary(d, k)? < 3.0 * s_margin {
                return Err(DimError::Precondition(
                    "compact set violates the 3s margin".into(),
                ));
            }
        }
        Ok(())
    };

    check_margins(&DomainSpec::q_limit())?;
    let x_limit = normalize(&limit_generator())?;

    let mut sup_deviations = Vec::with_capacity(j_list.len());
    for &j in j_list {
        check_margins(&DomainSpec::q_j(j))?;
        let x_j = normalize(&s1_generator(j)?)?;
        let dev = k_samples
            .iter()
            .map(|k| x_j.eval(k).dist(&x_limit.eval(k)))
            .fold(0.0f64, f64::max);
        sup_deviations.push(dev);
    }
    Ok(ConvergenceReport {
        js: j_list.to_vec(),
        sup_deviations,
        compact_set: format!(
            "{} samples near {} (ball radius {})",
            k_samples.len(),
            ball_center,
            ball_radius
        ),
    })
}

/// Disk of sample points for compact-set experiments.
pub fn disk_cloud(center: Complex64, radius: f64, rings: usize) -> Vec<CxPoint> {
    let mut pts = vec![CxPoint::scalar(center)];
    for a in 1..=rings {
        let r = radius * (a as f64) / (rings as f64);
        let n = (8 * a).max(8);
        for k in 0..n {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            pts.push(CxPoint::scalar(
                center + r * Complex64::new(t.cos(), t.sin()),
            ));
        }
    }
    pts
}
