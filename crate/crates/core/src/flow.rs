//! One-parameter group actions: adaptive integration of holomorphic vector
//! fields, group-law residuals, and the complex-time extension obtained by
//! flowing iX in imaginary time.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::domain::{contains, DomainError, DomainSpec};
use crate::point::CxPoint;
use crate::poly::VectorFieldPoly;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("trajectory left the domain at t = {t_exit}")]
    Escape { t_exit: f64 },
    #[error("step size underflow at t = {t} (step {step})")]
    Stiffness { t: f64, step: f64 },
    #[error("closed-form map failed: {0}")]
    Map(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Hard cap on accepted+rejected integrator steps.
const MAX_STEPS: usize = 1_000_000;

/// Dormand–Prince 5(4) tableau.
const DP_C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn axpy(y: &mut [Complex64], a: f64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// One trajectory point of an integration run.
#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub z: CxPoint,
}

struct Integrator<'a> {
    field: &'a VectorFieldPoly,
    domain: &'a DomainSpec,
    tol: f64,
}

impl<'a> Integrator<'a> {
    /// Advance from (t0, z0) to t0+span with per-unit-step error control
    /// (local error ≤ tol·h), detecting domain escape after every accepted
    /// step. On escape, bisect short re-integrations to bracket the exit
    /// time within 1e-6.
    fn integrate(
        &self,
        z0: &CxPoint,
        t0: f64,
        span: f64,
        mut trace: Option<&mut Vec<TrajectoryPoint>>,
    ) -> Result<CxPoint, FlowError> {
        if span == 0.0 {
            return Ok(z0.clone());
        }
        let dir = span.signum();
        let t_end = t0 + span;
        let mut t = t0;
        let mut z = z0.clone();
        let mut h = (0.1 * span.abs()).min(0.1).max(1e-8);
        let mut steps = 0usize;
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(TrajectoryPoint { t, z: z.clone() });
        }
        while (t - t_end) * dir < 0.0 {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(FlowError::Stiffness { t, step: h });
            }
            if h < 1e-14 * (1.0 + t.abs()) {
                return Err(FlowError::Stiffness { t, step: h });
            }
            let remaining = (t_end - t).abs();
            let reaches_end = h >= remaining;
            let h_signed = dir * h.min(remaining);
            let (z_new, err) = self.dp_step(&z, h_signed);
            // Per-unit-step control with a rounding floor: the embedded
            // difference is meaningless below a few ulps of the state.
            let tol_step = (self.tol * h_signed.abs()).max(4.0 * f64::EPSILON * (1.0 + z.norm()));
            if err <= tol_step {
                if !contains(self.domain, &z_new)? {
                    let t_exit = self.bisect_exit(&z, t, h_signed)?;
                    return Err(FlowError::Escape { t_exit });
                }
                t = if reaches_end { t_end } else { t + h_signed };
                z = z_new;
                if let Some(tr) = trace.as_deref_mut() {
                    tr.push(TrajectoryPoint { t, z: z.clone() });
                }
            }
            // Standard 5th-order step update, clamped.
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * (tol_step / err).powf(0.2)).clamp(0.2, 5.0)
            };
            h = (h * factor).min(1.0);
        }
        Ok(z)
    }

    fn dp_step(&self, z: &CxPoint, h: f64) -> (CxPoint, f64) {
        let n = z.dim();
        let mut k: Vec<Vec<Complex64>> = Vec::with_capacity(7);
        k.push(self.field.eval(z).coords);
        for stage in 0..6 {
            let mut y = z.coords.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = DP_A[stage][j];
                if a != 0.0 {
                    axpy(&mut y, h * a, kj);
                }
            }
            let _ = DP_C; // stage abscissae unused: the field is autonomous
            k.push(self.field.eval(&CxPoint::new(y)).coords);
        }
        let mut z5 = z.coords.clone();
        let mut z4 = z.coords.clone();
        for (j, kj) in k.iter().enumerate() {
            if DP_B5[j] != 0.0 {
                axpy(&mut z5, h * DP_B5[j], kj);
            }
            if DP_B4[j] != 0.0 {
                axpy(&mut z4, h * DP_B4[j], kj);
            }
        }
        let err = (0..n)
            .map(|i| (z5[i] - z4[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        (CxPoint::new(z5), err)
    }

    /// Bracket the first exit time within the step [t, t+h] to 1e-6.
    fn bisect_exit(&self, z: &CxPoint, t: f64, h: f64) -> Result<f64, FlowError> {
        let mut lo = 0.0f64; // still inside at t + lo·h
        let mut hi = 1.0f64; // outside (or unreachable) at t + hi·h
        for _ in 0..60 {
            if (hi - lo) * h.abs() < 1e-6 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let inside = match self.integrate(z, t, mid * h, None) {
                Ok(zm) => contains(self.domain, &zm)?,
                Err(FlowError::Escape { .. }) => false,
                Err(e) => return Err(e),
            };
            if inside {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(t + hi * h)
    }
}

/// Solve ż = X(z), z(0) = z0 up to time `t` inside `d`.
pub fn flow(
    field: &VectorFieldPoly,
    z0: &CxPoint,
    t: f64,
    tol: f64,
    d: &DomainSpec,
) -> Result<CxPoint, FlowError> {
    if !contains(d, z0)? {
        return Err(FlowError::Domain(DomainError::OutsideDomain));
    }
    if t == 0.0 {
        return Ok(z0.clone());
    }
    Integrator {
        field,
        domain: d,
        tol,
    }
    .integrate(z0, 0.0, t, None)
}

/// As [`flow`] but recording the accepted trajectory points.
pub fn flow_trace(
    field: &VectorFieldPoly,
    z0: &CxPoint,
    t: f64,
    tol: f64,
    d: &DomainSpec,
) -> Result<(CxPoint, Vec<TrajectoryPoint>), FlowError> {
    if !contains(d, z0)? {
        return Err(FlowError::Domain(DomainError::OutsideDomain));
    }
    let mut trace = Vec::new();
    let end = Integrator {
        field,
        domain: d,
        tol,
    }
    .integrate(z0, 0.0, t, Some(&mut trace))?;
    Ok((end, trace))
}

type ClosedFormMap = Arc<dyn Fn(&CxPoint, f64) -> Result<CxPoint, FlowError> + Send + Sync>;

/// A one-parameter group action g(z, t): either a closed-form family of
/// maps or the flow of a polynomial field at a given integrator tolerance.
#[derive(Clone)]
pub enum GroupAction {
    ClosedForm {
        map: ClosedFormMap,
        /// Generator ∂g/∂t(·, 0) when known in closed form.
        field: Option<VectorFieldPoly>,
    },
    Flow {
        field: VectorFieldPoly,
        tol: f64,
    },
}

impl GroupAction {
    pub fn from_field(field: VectorFieldPoly, tol: f64) -> Self {
        GroupAction::Flow { field, tol }
    }

    pub fn closed_form(map: ClosedFormMap, field: Option<VectorFieldPoly>) -> Self {
        GroupAction::ClosedForm { map, field }
    }

    pub fn apply(&self, z: &CxPoint, t: f64, d: &DomainSpec) -> Result<CxPoint, FlowError> {
        match self {
            GroupAction::ClosedForm { map, .. } => {
                let image = map(z, t)?;
                if !contains(d, &image)? {
                    return Err(FlowError::Escape { t_exit: t });
                }
                Ok(image)
            }
            GroupAction::Flow { field, tol } => flow(field, z, t, *tol, d),
        }
    }

    pub fn generator(&self) -> Option<&VectorFieldPoly> {
        match self {
            GroupAction::ClosedForm { field, .. } => field.as_ref(),
            GroupAction::Flow { field, .. } => Some(field),
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            GroupAction::ClosedForm { .. } => 1e-12,
            GroupAction::Flow { tol, .. } => *tol,
        }
    }
}

/// |g(z, t+s) − g(g(z, t), s)|, the defect of the one-parameter group law.
pub fn group_property_residual(
    action: &GroupAction,
    z: &CxPoint,
    t: f64,
    s: f64,
    d: &DomainSpec,
) -> Result<f64, FlowError> {
    let direct = action.apply(z, t + s, d)?;
    let mid = action.apply(z, t, d)?;
    let two_leg = action.apply(&mid, s, d)?;
    Ok(direct.dist(&two_leg))
}

/// Complex Jacobian of g(·, t) at `z` by central differences along each
/// complex coordinate (holomorphy makes a real step sufficient).
fn action_jacobian(
    action: &GroupAction,
    z: &CxPoint,
    t: f64,
    d: &DomainSpec,
    h: f64,
) -> Result<Vec<Vec<Complex64>>, FlowError> {
    let n = z.dim();
    let mut jac = vec![vec![Complex64::ZERO; n]; n];
    for k in 0..n {
        let mut zp = z.clone();
        let mut zm = z.clone();
        zp.coords[k] += Complex64::new(h, 0.0);
        zm.coords[k] -= Complex64::new(h, 0.0);
        let gp = action.apply(&zp, t, d)?;
        let gm = action.apply(&zm, t, d)?;
        for i in 0..n {
            jac[i][k] = (gp.coords[i] - gm.coords[i]) / Complex64::new(2.0 * h, 0.0);
        }
    }
    Ok(jac)
}

/// Residual of the infinitesimal group identity
/// X(g(z,t)) = (∂g/∂z)(z,t) · X(z), with the Jacobian by central
/// differences of step 1e-5.
pub fn infinitesimal_residual(
    action: &GroupAction,
    z: &CxPoint,
    t: f64,
    d: &DomainSpec,
) -> Result<f64, FlowError> {
    let field = action
        .generator()
        .ok_or_else(|| FlowError::Map("action has no generator field attached".into()))?
        .clone();
    let g = action.apply(z, t, d)?;
    let lhs = field.eval(&g);
    let jac = action_jacobian(action, z, t, d, 1e-5)?;
    let xz = field.eval(z);
    let n = z.dim();
    let mut rhs = vec![Complex64::ZERO; n];
    for i in 0..n {
        for k in 0..n {
            rhs[i] += jac[i][k] * xz.coords[k];
        }
    }
    Ok(lhs.dist(&CxPoint::new(rhs)))
}

/// Complex time ζ = t + is along with its imaginary-time horizon τ.
#[derive(Clone, Copy, Debug)]
pub struct ComplexTimePoint {
    pub zeta: Complex64,
    pub tau: f64,
}

impl ComplexTimePoint {
    pub fn new(zeta: Complex64, tau: f64) -> Result<Self, FlowError> {
        if !(zeta.im.abs() < tau) {
            return Err(FlowError::Map(format!(
                "imaginary time {} exceeds the horizon {}",
                zeta.im, tau
            )));
        }
        Ok(ComplexTimePoint { zeta, tau })
    }
}

/// The complexified flow G(z, t+is): integrate the rotated field iX for
/// imaginary time s, then the original field X for real time t.
pub fn complexify(
    field: &VectorFieldPoly,
    z: &CxPoint,
    zeta: ComplexTimePoint,
    tol: f64,
    d: &DomainSpec,
) -> Result<CxPoint, FlowError> {
    let mid = flow(&field.times_i(), z, zeta.zeta.im, tol, d)?;
    flow(field, &mid, zeta.zeta.re, tol, d)
}

/// Cauchy–Riemann residual of the complexified flow in ζ:
/// |∂G/∂t − X(G)| + |∂G/∂s − iX(G)| via central differences of step 1e-4.
pub fn cr_residual(
    field: &VectorFieldPoly,
    z: &CxPoint,
    zeta: ComplexTimePoint,
    tol: f64,
    d: &DomainSpec,
) -> Result<f64, FlowError> {
    let h = 1e-4;
    let at = |dz: Complex64| -> Result<CxPoint, FlowError> {
        complexify(
            field,
            z,
            ComplexTimePoint {
                zeta: zeta.zeta + dz,
                tau: zeta.tau,
            },
            tol,
            d,
        )
    };
    let g = at(Complex64::ZERO)?;
    let gt = {
        let p = at(Complex64::new(h, 0.0))?;
        let m = at(Complex64::new(-h, 0.0))?;
        p.sub(&m).scale(Complex64::new(0.5 / h, 0.0))
    };
    let gs = {
        let p = at(Complex64::new(0.0, h))?;
        let m = at(Complex64::new(0.0, -h))?;
        p.sub(&m).scale(Complex64::new(0.5 / h, 0.0))
    };
    let x_g = field.eval(&g);
    let ix_g = x_g.scale(Complex64::I);
    Ok(gt.dist(&x_g) + gs.dist(&ix_g))
}
