//! Numerical verification of the quantitative inequalities behind the
//! normal-families argument: invariant-metric triangle bounds, extremal
//! gradient lower bounds, norm propagation between nested balls, compact-set
//! norm bounds via chains of overlapping balls, the dm²/dt identity, and
//! L² Gram normalization of vector fields.
//!
//! Every verifier returns a signed margin: positive means the inequality
//! holds with that much slack at the worst sampled configuration.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::chain::{ChainError, ConformalChain};
use crate::domain::{contains, dist_to_boundary, inner_outer_radii, DomainError, DomainSpec};
use crate::flow::{group_property_residual, FlowError, GroupAction};
use crate::gallery::{Example1Family, GalleryError};
use crate::metric::{extremal_search, model_caratheodory, ExtremalCandidate, MetricError};
use crate::point::CxPoint;
use crate::poly::VectorFieldPoly;
use crate::quad::{ball_volume, l2_inner_product};

#[derive(Debug, Error)]
pub enum EstimateError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no feasible delta at this sampling resolution: {0}")]
    Infeasible(String),
    #[error("sample cloud is disconnected at scale {scale}")]
    Disconnected { scale: f64 },
    #[error("rank deficiency at field index {index}")]
    Rank { index: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
}

/// Which inequality a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaId {
    /// Invariant-metric triangle bound |d(g(w,t),z) − d(w,z)| ≤ d(z, g(z,t)).
    Id,
    /// Extremal gradient bound Re(∇f_s(w), Y) > 1/(4R).
    De,
    /// Norm propagation ‖X‖_{B(0,r+δ)} ≤ (32R/a)‖X‖_{B(0,r)}.
    One,
    /// Compact-set bound ‖X‖_K ≤ c^{N−1}‖X‖_{B(0,r)}.
    Ne,
    /// dm²/dt(0) = −2p(1−p²)Re(∇f(w), X(w)).
    MDeriv,
    /// L²-orthonormalized bases: Gram matrix ≈ identity, sup-norm floor.
    Gram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaStatus {
    Passed,
    /// The margin came out negative but the witness is an optimizer lower
    /// bound, not a certified extremal; no counterexample is claimed.
    Inconclusive,
    Failed,
}

/// Aggregated outcome of one inequality over a sample battery.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub samples: usize,
    pub worst_margin: f64,
    pub status: LemmaStatus,
    /// Human-readable description of the worst sample.
    pub witness: Option<String>,
}

pub const MARGIN_TOL: f64 = 1e-9;

impl LemmaReport {
    fn from_margins(lemma_id: LemmaId, margins: &[(f64, String, bool)]) -> LemmaReport {
        let mut worst = f64::INFINITY;
        let mut witness = None;
        let mut certified_worst = true;
        for (m, desc, certified) in margins {
            if *m < worst {
                worst = *m;
                witness = Some(desc.clone());
                certified_worst = *certified;
            }
        }
        let status = if worst >= -MARGIN_TOL {
            LemmaStatus::Passed
        } else if !certified_worst {
            LemmaStatus::Inconclusive
        } else {
            LemmaStatus::Failed
        };
        LemmaReport {
            lemma_id,
            samples: margins.len(),
            worst_margin: worst,
            status,
            witness,
        }
    }
}

/// Margin of the invariant-metric triangle bound for one configuration,
/// RHS − LHS of |d(g(w,t),z) − d(w,z)| ≤ d(z, g(z,t)) with the exact model
/// metric as d.
pub fn check_invariant_triangle(
    d: &DomainSpec,
    action: &GroupAction,
    w: Complex64,
    z: Complex64,
    t: f64,
) -> Result<f64, EstimateError> {
    let gw = action.apply(&CxPoint::scalar(w), t, d)?.as_scalar();
    let gz = action.apply(&CxPoint::scalar(z), t, d)?.as_scalar();
    let lhs = (model_caratheodory(d, gw, z)? - model_caratheodory(d, w, z)?).abs();
    let rhs = model_caratheodory(d, z, gz)?;
    Ok(rhs - lhs)
}

/// Outcome of a margin check that may rest on an uncertified witness.
#[derive(Clone, Debug, Serialize)]
pub struct MarginOutcome {
    pub margin: f64,
    /// True when the witness is exact (closed form), false for optimizer
    /// lower bounds.
    pub certified: bool,
}

/// Extremal-gradient lower bound: runs the extremal search for the pair
/// (w, w + sY) and returns Re(∇f(w), Y) − 1/(4R). Requires |Y| = 1 and
/// 0 < s ≤ r²/(16R).
pub fn check_extremal_gradient_bound(
    d: &DomainSpec,
    w: &CxPoint,
    y: &CxPoint,
    s: f64,
    seed: u64,
) -> Result<MarginOutcome, EstimateError> {
    if (y.norm() - 1.0).abs() > 1e-12 {
        return Err(EstimateError::Precondition(
            "Y must be a unit vector".into(),
        ));
    }
    let radii = inner_outer_radii(d, w)?;
    let eps = radii.r * radii.r / (16.0 * radii.big_r);
    if !(s > 0.0 && s <= eps + 1e-15) {
        return Err(EstimateError::Precondition(format!(
            "s = {s} outside (0, {eps}]"
        )));
    }
    let z = w.add(&y.scale(Complex64::new(s, 0.0)));
    let bounds = extremal_search(d, w, &z, 3, 2000, seed)?;
    let witness = bounds
        .witness
        .ok_or_else(|| EstimateError::Infeasible("no extremal candidate found".into()))?;
    let grad = witness.gradient(w);
    let margin = grad.pair_bilinear(y).re - 1.0 / (4.0 * radii.big_r);
    Ok(MarginOutcome {
        margin,
        certified: false,
    })
}

/// Largest δ < a/2 (on a bisection grid) such that every point of
/// ∂B(0, r+δ) can be pushed into B(0, r) along a unit direction Y within
/// |s| < ε = a²/(128R), with Y within b = a/(32R) of any prescribed unit
/// direction V. Deterministic for the fixed grid resolution; the check is
/// rotation-invariant, so it reduces to the real 2-plane spanned by the
/// radial direction and the tangential part of V.
pub fn delta_for(a: f64, r: f64, big_r: f64) -> Result<f64, EstimateError> {
    if !(a > 0.0 && r > 0.0 && big_r > 2.0 * r) {
        return Err(EstimateError::Precondition(format!(
            "need a > 0 and R > 2r, got a={a} r={r} R={big_r}"
        )));
    }
    if r + a >= big_r {
        return Err(EstimateError::Precondition(format!(
            "B(0, r+a) must fit inside B(0, R): r+a = {} vs R = {big_r}",
            r + a
        )));
    }
    let eps = a * a / (128.0 * big_r);
    let b = a / (32.0 * big_r);
    let theta_grid = 129usize;
    let mu_grid = 65usize;

    let feasible = |delta: f64| -> bool {
        let rho = r + delta;
        // w = (rho, 0); V sweeps the half-circle by symmetry.
        'outer: for k in 0..theta_grid {
            let theta = std::f64::consts::PI * (k as f64) / (theta_grid as f64 - 1.0);
            let (vx, vy) = (theta.cos(), theta.sin());
            for m in 0..mu_grid {
                let mu = b * 0.999 * (m as f64) / (mu_grid as f64 - 1.0);
                // Tilt V toward the inward radial direction and renormalize.
                let (yx, yy) = (vx - mu, vy);
                let len = (yx * yx + yy * yy).sqrt();
                if len == 0.0 {
                    continue;
                }
                let (yx, yy) = (yx / len, yy / len);
                let dist = ((yx - vx).powi(2) + (yy - vy).powi(2)).sqrt();
                if dist >= b {
                    continue;
                }
                // |w + sY|² = rho² + 2 s rho yx + s², minimized at s* = −rho yx;
                // clamp to the allowed window |s| < ε.
                let s_free = -rho * yx;
                let s_max = eps * (1.0 - 1e-12);
                for s in [s_free.clamp(-s_max, s_max), -s_max, s_max] {
                    let val = rho * rho + 2.0 * s * rho * yx + s * s;
                    if val < r * r {
                        continue 'outer;
                    }
                }
            }
            return false;
        }
        true
    };

    if !feasible(f64::EPSILON * a) {
        return Err(EstimateError::Infeasible(format!(
            "no delta works even at zero offset (a={a}, r={r}, R={big_r})"
        )));
    }
    let mut lo = f64::EPSILON * a;
    let mut hi = 0.5 * a;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Norm-propagation margin (32R/a)·sup_{B(0,r)}|X| − sup_{B(0,r+δ)}|X|
/// with δ = delta_for(a, r, R). The field must generate a group action on
/// `d`, verified through the group-law residual on a small sample grid.
pub fn check_norm_propagation(
    d: &DomainSpec,
    field: &VectorFieldPoly,
    r: f64,
    a: f64,
    big_r: f64,
    action: &GroupAction,
) -> Result<f64, EstimateError> {
    let origin = CxPoint::zero(d.dim());
    if !contains(d, &origin)? || dist_to_boundary(d, &origin)? < r + a {
        return Err(EstimateError::Precondition(
            "B(0, r+a) is not contained in the domain".into(),
        ));
    }
    let radii = inner_outer_radii(d, &origin)?;
    if radii.big_r > big_r + 1e-12 {
        return Err(EstimateError::Precondition(format!(
            "domain is not contained in B(0, {big_r})"
        )));
    }
    // Group-action certificate on a coarse grid.
    let probe = CxPoint::new(
        (0..d.dim())
            .map(|i| Complex64::new(0.3 * r / (i as f64 + 1.0), 0.1 * r))
            .collect(),
    );
    for &(t, s) in &[(0.3, 0.4), (-0.5, 0.2)] {
        let res = group_property_residual(action, &probe, t, s, d)?;
        if res > 1e-6 {
            return Err(EstimateError::Precondition(format!(
                "field does not generate a group action (residual {res})"
            )));
        }
    }
    let delta = delta_for(a, r, big_r)?;
    let sup_inner = field.sup_on_ball(&origin, r, 1024);
    let sup_outer = field.sup_on_ball(&origin, r + delta, 1024);
    Ok((32.0 * big_r / a) * sup_inner - sup_outer)
}

/// Breadth-first chain cover of a sample cloud from the origin: N is the
/// largest number of points in a minimal chain 0 = z₁, …, z_N = z with
/// consecutive gaps below `delta`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainCover {
    pub n: usize,
    pub delta: f64,
    pub points: usize,
}

pub fn chain_cover(k_samples: &[CxPoint], delta: f64) -> Result<ChainCover, EstimateError> {
    if !(delta > 0.0) {
        return Err(EstimateError::Precondition("delta must be positive".into()));
    }
    let start = k_samples
        .iter()
        .position(|p| p.norm() < 1e-12)
        .ok_or_else(|| {
            EstimateError::Precondition("sample cloud must contain the origin".into())
        })?;

    // Bucket the points on a grid of cell size delta; neighbors live in the
    // 3^{2n} adjacent cells.
    let dim2 = 2 * k_samples[0].dim();
    let key = |p: &CxPoint| -> Vec<i64> {
        let mut k = Vec::with_capacity(dim2);
        for c in &p.coords {
            k.push((c.re / delta).floor() as i64);
            k.push((c.im / delta).floor() as i64);
        }
        k
    };
    let mut buckets: HashMap<Vec<i64>, Vec<u32>> = HashMap::new();
    for (i, p) in k_samples.iter().enumerate() {
        buckets.entry(key(p)).or_default().push(i as u32);
    }

    let mut depth = vec![0u32; k_samples.len()];
    depth[start] = 1;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start as u32);
    let mut max_depth = 1u32;
    let mut offsets: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim2 {
        let mut next = Vec::new();
        for o in &offsets {
            for d in [-1i64, 0, 1] {
                let mut v = o.clone();
                v.push(d);
                next.push(v);
            }
        }
        offsets = next;
    }
    while let Some(i) = queue.pop_front() {
        let p = &k_samples[i as usize];
        let base = key(p);
        for off in &offsets {
            let cell: Vec<i64> = base.iter().zip(off).map(|(a, b)| a + b).collect();
            if let Some(members) = buckets.get(&cell) {
                for &m in members {
                    if depth[m as usize] == 0 && k_samples[m as usize].dist(p) < delta {
                        depth[m as usize] = depth[i as usize] + 1;
                        max_depth = max_depth.max(depth[m as usize]);
                        queue.push_back(m);
                    }
                }
            }
        }
    }
    if depth.iter().any(|&d| d == 0) {
        return Err(EstimateError::Disconnected { scale: delta });
    }
    Ok(ChainCover {
        n: max_depth as usize,
        delta,
        points: k_samples.len(),
    })
}

/// Compact-set norm bound: c^{N−1}·sup_{B(0,r)}|X| − sup_K|X| with
/// c = 32·(2R)/s and N from the chain cover at scale delta_for(s, s, 2R).
/// The bound is evaluated in log space and saturates near f64::MAX rather
/// than overflowing: N is typically enormous.
pub fn check_compact_bound(
    d: &DomainSpec,
    field: &VectorFieldPoly,
    k_samples: &[CxPoint],
    s: f64,
    r: f64,
) -> Result<f64, EstimateError> {
    let origin = CxPoint::zero(d.dim());
    if dist_to_boundary(d, &origin)? < 2.0 * r {
        return Err(EstimateError::Precondition(
            "B(0, 2r) must fit inside the domain".into(),
        ));
    }
    if !(r > s && s > 0.0) {
        return Err(EstimateError::Precondition("need r > s > 0".into()));
    }
    for p in k_samples {
        if !contains(d, p)? || dist_to_boundary(d, p)? < 3.0 * s {
            return Err(EstimateError::Precondition(
                "3s-neighborhood of K is not contained in the domain".into(),
            ));
        }
    }
    let big_r = inner_outer_radii(d, &origin)?.big_r;
    let c = 32.0 * (2.0 * big_r) / s;
    let delta = delta_for(s, s, 2.0 * big_r)?;
    let cover = chain_cover(k_samples, delta)?;
    let sup_ball = field.sup_on_ball(&origin, r, 1024);
    let sup_k = k_samples
        .iter()
        .map(|p| field.eval(p).norm())
        .fold(0.0f64, f64::max);
    if sup_ball == 0.0 {
        return Ok(-sup_k);
    }
    let log_bound = (cover.n as f64 - 1.0) * c.ln() + sup_ball.ln();
    let bound = if log_bound > 700.0 {
        f64::MAX
    } else {
        log_bound.exp()
    };
    Ok(bound - sup_k)
}

/// A holomorphic map into the unit disk with an exact gradient: either a
/// normalized polynomial candidate or a conformal chain.
#[derive(Clone, Debug)]
pub enum DiskMap {
    Candidate(ExtremalCandidate),
    Chain(ConformalChain),
}

impl DiskMap {
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EstimateError> {
        match self {
            DiskMap::Candidate(c) => Ok(c.eval(&CxPoint::scalar(z))),
            DiskMap::Chain(ch) => Ok(ch.eval(z)?),
        }
    }

    pub fn gradient(&self, z: Complex64) -> Result<Complex64, EstimateError> {
        match self {
            DiskMap::Candidate(c) => Ok(c.gradient(&CxPoint::scalar(z)).as_scalar()),
            DiskMap::Chain(ch) => Ok(ch.derivative(z)?),
        }
    }
}

/// Residual of the identity dm²/dt(0) = −2p(1−p²)·Re(∇f(w), X(w)), where
/// m(t) is the pseudo-hyperbolic distance between f(g(w,t)) and p = f(z).
/// The left side is a central difference with step 1e-5.
pub fn check_m_derivative(
    f: &DiskMap,
    field: &VectorFieldPoly,
    w: Complex64,
    z: Complex64,
    d: &DomainSpec,
) -> Result<f64, EstimateError> {
    let fw = f.eval(w)?;
    if fw.norm() > 1e-9 {
        return Err(EstimateError::Precondition("f(w) must vanish".into()));
    }
    let p = f.eval(z)?;
    if p.im.abs() > 1e-9 || !(p.re > 0.0 && p.re < 1.0) {
        return Err(EstimateError::Precondition(format!(
            "p = f(z) must be real in (0,1), got {p}"
        )));
    }
    let p = p.re;
    let m_sq = |t: f64| -> Result<f64, EstimateError> {
        let g = flow_point(field, w, t, d)?;
        let zeta = f.eval(g)?;
        let num = zeta - Complex64::new(p, 0.0);
        let den = Complex64::ONE - p * zeta;
        Ok((num / den).norm_sqr())
    };
    let h = 1e-5;
    let fd = (m_sq(h)? - m_sq(-h)?) / (2.0 * h);
    let grad = f.gradient(w)?;
    let xw = field.eval(&CxPoint::scalar(w)).as_scalar();
    let exact = -2.0 * p * (1.0 - p * p) * (grad * xw).re;
    Ok((fd - exact).abs())
}

fn flow_point(
    field: &VectorFieldPoly,
    w: Complex64,
    t: f64,
    d: &DomainSpec,
) -> Result<Complex64, EstimateError> {
    Ok(crate::flow::flow(field, &CxPoint::scalar(w), t, 1e-12, d)?.as_scalar())
}

/// An L²(ball)-orthonormal family of vector fields.
#[derive(Clone, Debug)]
pub struct GramBasis {
    pub fields: Vec<VectorFieldPoly>,
    pub center: CxPoint,
    pub radius: f64,
    pub order: usize,
}

impl GramBasis {
    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, xi) in self.fields.iter().enumerate() {
            for (j, xj) in self.fields.iter().enumerate() {
                let g = l2_inner_product(xi, xj, &self.center, self.radius, self.order);
                let target = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Smallest sup-norm over the ball among the basis fields.
    pub fn min_sup_norm(&self) -> f64 {
        self.fields
            .iter()
            .map(|f| f.sup_on_ball(&self.center, self.radius, 1024))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Gram–Schmidt in the L²(ball) inner product, by Gauss quadrature of the
/// stated order. Rank deficiency reports the 1-based index of the first
/// dependent field.
pub fn gram_normalize(
    fields: &[VectorFieldPoly],
    center: &CxPoint,
    radius: f64,
    order: usize,
) -> Result<GramBasis, EstimateError> {
    let mut basis: Vec<VectorFieldPoly> = Vec::with_capacity(fields.len());
    for (idx, f) in fields.iter().enumerate() {
        let mut v = f.clone();
        let original = l2_inner_product(f, f, center, radius, order).re;
        // Two passes of modified Gram–Schmidt for numerical safety.
        for _ in 0..2 {
            for e in &basis {
                let coeff = l2_inner_product(&v, e, center, radius, order);
                v = v.sub(&e.scale(coeff));
            }
        }
        let norm_sq = l2_inner_product(&v, &v, center, radius, order).re;
        if !(norm_sq > 1e-12 * original.max(1e-300)) {
            return Err(EstimateError::Rank { index: idx + 1 });
        }
        basis.push(v.scale(Complex64::new(1.0 / norm_sq.sqrt(), 0.0)));
    }
    Ok(GramBasis {
        fields: basis,
        center: center.clone(),
        radius,
        order,
    })
}

/// Run the full inequality battery at the given seed and return one report
/// per lemma. The battery covers the disk, the two-dimensional ball, the
/// 2:1 ellipse and the tangent-circle set Q, with the rotation field, the
/// complete disk fields and the gallery flows.
pub fn run_lemma_battery(seed: u64) -> Result<Vec<LemmaReport>, EstimateError> {
    let mut reports = Vec::new();
    let c = Complex64::new;

    // Invariant triangle bound on model domains with exact metrics.
    {
        let mut margins = Vec::new();
        let disk = DomainSpec::UnitDisk;
        let rotation = GroupAction::closed_form(
            std::sync::Arc::new(|z: &CxPoint, t: f64| {
                Ok(CxPoint::scalar(
                    z.as_scalar() * Complex64::new(t.cos(), t.sin()),
                ))
            }),
            Some(VectorFieldPoly::rotation()),
        );
        for &(w, z) in &[(c(0.3, 0.0), c(0.0, 0.5)), (c(-0.2, 0.4), c(0.1, -0.3))] {
            for &t in &[0.0, 0.7, -1.3, 3.0] {
                let m = check_invariant_triangle(&disk, &rotation, w, z, t)?;
                margins.push((m, format!("disk rotation w={w} z={z} t={t}"), true));
            }
        }
        let q_family = Example1Family::limit();
        let q = q_family.q_part();
        let translation = q_family.planar_action()?;
        for &(w, z) in &[(c(-0.5, 0.0), c(-0.25, 0.0)), (c(-0.4, 0.3), c(-0.6, -0.2))] {
            for &t in &[0.0, 0.5, 1.0, -2.0] {
                let m = check_invariant_triangle(&q, &translation, w, z, t)?;
                margins.push((m, format!("Q translation w={w} z={z} t={t}"), true));
            }
        }
        reports.push(LemmaReport::from_margins(LemmaId::Id, &margins));
    }

    // Extremal gradient bound.
    {
        let mut margins = Vec::new();
        let cases: Vec<(DomainSpec, CxPoint, CxPoint)> = vec![
            (
                DomainSpec::UnitDisk,
                CxPoint::scalar(c(0.0, 0.0)),
                CxPoint::scalar(c(1.0, 0.0)),
            ),
            (
                DomainSpec::UnitDisk,
                CxPoint::scalar(c(0.0, 0.0)),
                CxPoint::scalar(c(0.0, 1.0)),
            ),
            (
                DomainSpec::Ball {
                    center: CxPoint::pair(c(0.0, 0.0), c(0.0, 0.0)),
                    radius: 1.0,
                },
                CxPoint::pair(c(0.0, 0.0), c(0.0, 0.0)),
                CxPoint::pair(c(1.0, 0.0), c(0.0, 0.0)),
            ),
            (
                DomainSpec::Ellipse { a: 2.0, b: 1.0 },
                CxPoint::scalar(c(0.0, 0.0)),
                CxPoint::scalar(c(1.0, 0.0)),
            ),
            (
                DomainSpec::q_limit(),
                CxPoint::scalar(c(-0.5, 0.0)),
                CxPoint::scalar(c(-1.0, 0.0)),
            ),
        ];
        for (i, (d, w, y)) in cases.iter().enumerate() {
            let radii = inner_outer_radii(d, w)?;
            let eps = radii.r * radii.r / (16.0 * radii.big_r);
            for (k, s) in [eps, 0.5 * eps].into_iter().enumerate() {
                let out =
                    check_extremal_gradient_bound(d, w, y, s, seed ^ (i as u64) << 4 ^ k as u64)?;
                margins.push((out.margin, format!("{d:?} s={s}"), out.certified));
            }
        }
        reports.push(LemmaReport::from_margins(LemmaId::De, &margins));
    }

    // Norm propagation on the disk and the 2-ball.
    {
        let mut margins = Vec::new();
        let disk = DomainSpec::UnitDisk;
        let planar_fields = vec![
            ("iz", VectorFieldPoly::rotation()),
            ("1-z^2", VectorFieldPoly::disk_field(Complex64::ONE, 0.0)),
            (
                "a-conj(a)z^2",
                VectorFieldPoly::disk_field(c(0.3, 0.2), 0.5),
            ),
        ];
        for (name, field) in &planar_fields {
            let action = GroupAction::from_field(field.clone(), 1e-10);
            let m = check_norm_propagation(&disk, field, 0.25, 0.25, 1.0, &action)?;
            margins.push((m, format!("disk field {name}"), true));
        }
        let ball2 = DomainSpec::Ball {
            center: CxPoint::pair(c(0.0, 0.0), c(0.0, 0.0)),
            radius: 1.0,
        };
        let diag_rotation = VectorFieldPoly::diagonal2(&VectorFieldPoly::rotation());
        let action = GroupAction::from_field(diag_rotation.clone(), 1e-10);
        let m = check_norm_propagation(&ball2, &diag_rotation, 0.25, 0.25, 1.0, &action)?;
        margins.push((m, "2-ball diagonal rotation".into(), true));
        reports.push(LemmaReport::from_margins(LemmaId::One, &margins));
    }

    // Compact-set bound. The admissible chain scale delta_for(s, s, 2R) is
    // tiny, so the segment K is kept short enough that a delta/2-connected
    // cloud stays near a million points.
    {
        let mut margins = Vec::new();
        let disk = DomainSpec::UnitDisk;
        let s = 0.1;
        let r = 0.25;
        let big_r = inner_outer_radii(&disk, &CxPoint::scalar(c(0.0, 0.0)))?.big_r;
        let delta = delta_for(s, s, 2.0 * big_r)?;
        let len = 0.02f64;
        let n_pts = (len / (0.45 * delta)).ceil() as usize + 1;
        let segment: Vec<CxPoint> = (0..n_pts)
            .map(|k| CxPoint::scalar(c(len * (k as f64) / (n_pts as f64 - 1.0), 0.0)))
            .collect();
        for (name, field) in [
            ("iz", VectorFieldPoly::rotation()),
            ("1-z^2", VectorFieldPoly::disk_field(Complex64::ONE, 0.0)),
        ] {
            let m = check_compact_bound(&disk, &field, &segment, s, r)?;
            margins.push((m, format!("disk field {name}, segment K"), true));
        }
        // Singleton K: N = 1 and the bound is sup_B |X| − |X(0)|.
        let m = check_compact_bound(
            &disk,
            &VectorFieldPoly::constant(Complex64::ONE),
            &[CxPoint::scalar(c(0.0, 0.0))],
            s,
            r,
        )?;
        margins.push((m, "constant field, K = {0}".into(), true));
        reports.push(LemmaReport::from_margins(LemmaId::Ne, &margins));
    }

    // dm²/dt identity.
    {
        let mut margins = Vec::new();
        let disk = DomainSpec::UnitDisk;
        let cases = vec![
            (c(0.3, 0.0), c(0.6, 0.0), VectorFieldPoly::rotation(), "iz"),
            (
                c(0.3, 0.0),
                c(0.6, 0.0),
                VectorFieldPoly::disk_field(Complex64::ONE, 0.0),
                "1-z^2",
            ),
            (
                c(-0.1, 0.2),
                c(0.4, 0.1),
                VectorFieldPoly::disk_field(c(0.2, -0.3), 0.4),
                "mixed",
            ),
        ];
        for (w, z, field, name) in cases {
            // Base-point Möbius automorphism vanishing at w, rotated so that
            // f(z) lands on the positive real axis.
            let raw = (z - w) / (Complex64::ONE - w.conj() * z);
            let phase = raw.conj() / raw.norm();
            let f = DiskMap::Chain(ConformalChain::identity().push(
                crate::chain::ChainStep::Mobius {
                    a: phase,
                    b: -phase * w,
                    c: -w.conj(),
                    d: Complex64::ONE,
                },
            ));
            let residual = check_m_derivative(&f, &field, w, z, &disk)?;
            margins.push((1e-6 - residual, format!("disk {name} w={w} z={z}"), true));
        }
        // Trivial field: both sides vanish.
        let f = DiskMap::Chain(
            ConformalChain::identity().push(crate::chain::ChainStep::Mobius {
                a: Complex64::ONE,
                b: -c(0.3, 0.0),
                c: -c(0.3, 0.0),
                d: Complex64::ONE,
            }),
        );
        let residual = check_m_derivative(
            &f,
            &VectorFieldPoly::constant(Complex64::ZERO),
            c(0.3, 0.0),
            c(0.6, 0.0),
            &disk,
        )?;
        margins.push((1e-6 - residual, "zero field".into(), true));
        reports.push(LemmaReport::from_margins(LemmaId::MDeriv, &margins));
    }

    // Gram normalization.
    {
        let mut margins = Vec::new();
        let center = CxPoint::scalar(c(0.0, 0.0));
        let families: Vec<(&str, Vec<VectorFieldPoly>)> = vec![
            ("constant", vec![VectorFieldPoly::constant(Complex64::ONE)]),
            (
                "1,z",
                vec![
                    VectorFieldPoly::constant(Complex64::ONE),
                    VectorFieldPoly::planar(&[Complex64::ZERO, Complex64::ONE]),
                ],
            ),
            (
                "1,z,z^2",
                vec![
                    VectorFieldPoly::constant(Complex64::ONE),
                    VectorFieldPoly::planar(&[Complex64::ZERO, Complex64::ONE]),
                    VectorFieldPoly::planar(&[c(0.3, 0.1), Complex64::ZERO, Complex64::ONE]),
                ],
            ),
        ];
        for (name, fields) in families {
            let basis = gram_normalize(&fields, &center, 1.0, 32)?;
            let dev = basis.gram_deviation();
            margins.push((
                1e-6 - dev,
                format!("family {name}: gram deviation {dev:.3e}"),
                true,
            ));
            let vol = ball_volume(1, 1.0);
            let sup_margin = basis.min_sup_norm() - (1.0 / vol - 1e-6);
            margins.push((sup_margin, format!("family {name}: sup-norm floor"), true));
        }
        reports.push(LemmaReport::from_margins(LemmaId::Gram, &margins));
    }

    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn triangle_margin_zero_at_t_zero() {
        let rotation = GroupAction::from_field(VectorFieldPoly::rotation(), 1e-10);
        let m = check_invariant_triangle(
            &DomainSpec::UnitDisk,
            &rotation,
            c(0.3, 0.0),
            c(0.0, 0.5),
            0.0,
        )
        .unwrap();
        assert!(m.abs() < 1e-10, "margin {m}");
    }

    #[test]
    fn triangle_margin_nonnegative_on_disk() {
        let rotation = GroupAction::from_field(VectorFieldPoly::rotation(), 1e-10);
        let m = check_invariant_triangle(
            &DomainSpec::UnitDisk,
            &rotation,
            c(0.3, 0.0),
            c(0.0, 0.5),
            0.7,
        )
        .unwrap();
        assert!(m >= -1e-9, "margin {m}");
    }

    #[test]
    fn gradient_bound_on_disk_near_three_quarters() {
        let out = check_extremal_gradient_bound(
            &DomainSpec::UnitDisk,
            &CxPoint::scalar(c(0.0, 0.0)),
            &CxPoint::scalar(c(1.0, 0.0)),
            0.05,
            7,
        )
        .unwrap();
        assert!(out.margin > 0.7, "margin {}", out.margin);
        assert!(out.margin < 0.76, "margin {}", out.margin);
    }

    #[test]
    fn gradient_bound_rejects_large_s() {
        let err = check_extremal_gradient_bound(
            &DomainSpec::UnitDisk,
            &CxPoint::scalar(c(0.0, 0.0)),
            &CxPoint::scalar(c(1.0, 0.0)),
            0.2,
            7,
        );
        assert!(matches!(err, Err(EstimateError::Precondition(_))));
    }

    #[test]
    fn delta_for_is_deterministic_and_bounded() {
        let d1 = delta_for(0.25, 0.25, 1.0).unwrap();
        let d2 = delta_for(0.25, 0.25, 1.0).unwrap();
        assert_eq!(d1, d2);
        assert!(d1 > 0.0 && d1 < 0.125, "delta {d1}");
    }

    #[test]
    fn delta_shrinks_when_r_grows() {
        let d1 = delta_for(0.25, 0.25, 1.0).unwrap();
        let d2 = delta_for(0.25, 0.25, 2.0).unwrap();
        assert!(d2 <= d1, "{d2} > {d1}");
    }

    #[test]
    fn norm_propagation_huge_margin_for_rotation() {
        let field = VectorFieldPoly::rotation();
        let action = GroupAction::from_field(field.clone(), 1e-10);
        let m = check_norm_propagation(&DomainSpec::UnitDisk, &field, 0.25, 0.25, 1.0, &action)
            .unwrap();
        assert!(m > 31.0, "margin {m}");
    }

    #[test]
    fn norm_propagation_scales_linearly() {
        let field = VectorFieldPoly::disk_field(Complex64::ONE, 0.0);
        let action = GroupAction::from_field(field.clone(), 1e-10);
        let m1 = check_norm_propagation(&DomainSpec::UnitDisk, &field, 0.25, 0.25, 1.0, &action)
            .unwrap();
        let field3 = field.scale(c(3.0, 0.0));
        let action3 = GroupAction::from_field(field3.clone(), 1e-10);
        let m3 = check_norm_propagation(&DomainSpec::UnitDisk, &field3, 0.25, 0.25, 1.0, &action3)
            .unwrap();
        assert!(
            (m3 - 3.0 * m1).abs() < 1e-6 * m1.abs().max(1.0),
            "{m3} vs 3×{m1}"
        );
    }

    #[test]
    fn chain_cover_segment_example() {
        // Segment [0,1] at step 0.05, delta 0.3: hops reach 0.25 each.
        let pts: Vec<CxPoint> = (0..=20)
            .map(|k| CxPoint::scalar(c(k as f64 * 0.05, 0.0)))
            .collect();
        let cover = chain_cover(&pts, 0.3).unwrap();
        assert_eq!(cover.n, 5);
    }

    #[test]
    fn chain_cover_trivial_cases() {
        let single = vec![CxPoint::scalar(c(0.0, 0.0))];
        assert_eq!(chain_cover(&single, 0.5).unwrap().n, 1);
        let pair = vec![CxPoint::scalar(c(0.0, 0.0)), CxPoint::scalar(c(0.4, 0.2))];
        assert_eq!(chain_cover(&pair, 10.0).unwrap().n, 2);
    }

    #[test]
    fn chain_cover_detects_disconnection() {
        let pts = vec![CxPoint::scalar(c(0.0, 0.0)), CxPoint::scalar(c(5.0, 0.0))];
        assert!(matches!(
            chain_cover(&pts, 0.5),
            Err(EstimateError::Disconnected { .. })
        ));
    }

    #[test]
    fn chain_cover_length_non_increasing_in_delta() {
        let pts: Vec<CxPoint> = (0..=40)
            .map(|k| CxPoint::scalar(c(k as f64 * 0.025, 0.0)))
            .collect();
        let mut last = usize::MAX;
        for delta in [0.06, 0.12, 0.3, 0.6, 2.0] {
            let n = chain_cover(&pts, delta).unwrap().n;
            assert!(n <= last, "delta={delta}: N={n} > {last}");
            last = n;
        }
    }

    #[test]
    fn compact_bound_singleton_and_constant() {
        let disk = DomainSpec::UnitDisk;
        let k0 = vec![CxPoint::scalar(c(0.0, 0.0))];
        let m = check_compact_bound(
            &disk,
            &VectorFieldPoly::constant(Complex64::ONE),
            &k0,
            0.1,
            0.25,
        )
        .unwrap();
        assert!(m.abs() < 1e-12, "margin {m}");
        let m2 = check_compact_bound(&disk, &VectorFieldPoly::rotation(), &k0, 0.1, 0.25).unwrap();
        assert!(m2 >= 0.0);
    }

    #[test]
    fn m_derivative_identity_disk_rotation() {
        let w = c(0.3, 0.0);
        let z = c(0.6, 0.0);
        let raw = (z - w) / (Complex64::ONE - w.conj() * z);
        let phase = raw.conj() / raw.norm();
        let f = DiskMap::Chain(
            ConformalChain::identity().push(crate::chain::ChainStep::Mobius {
                a: phase,
                b: -phase * w,
                c: -w.conj(),
                d: Complex64::ONE,
            }),
        );
        let r = check_m_derivative(
            &f,
            &VectorFieldPoly::rotation(),
            w,
            z,
            &DomainSpec::UnitDisk,
        )
        .unwrap();
        assert!(r <= 1e-6, "residual {r}");
    }

    #[test]
    fn gram_normalize_examples() {
        let center = CxPoint::scalar(c(0.0, 0.0));
        // Constant field scales by 1/√π.
        let basis = gram_normalize(
            &[VectorFieldPoly::constant(Complex64::ONE)],
            &center,
            1.0,
            32,
        )
        .unwrap();
        let val = basis.fields[0]
            .eval(&CxPoint::scalar(c(0.2, 0.1)))
            .as_scalar();
        assert!(
            (val.re - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-10,
            "{val}"
        );

        // {1, z} are already orthogonal: the second stays a multiple of z.
        let basis = gram_normalize(
            &[
                VectorFieldPoly::constant(Complex64::ONE),
                VectorFieldPoly::planar(&[Complex64::ZERO, Complex64::ONE]),
            ],
            &center,
            1.0,
            32,
        )
        .unwrap();
        assert!(basis.gram_deviation() <= 1e-10);
        let at_zero = basis.fields[1]
            .eval(&CxPoint::scalar(c(0.0, 0.0)))
            .as_scalar();
        assert!(
            at_zero.norm() < 1e-9,
            "z-multiple should vanish at 0: {at_zero}"
        );

        // Duplicate fields are rank deficient at index 2.
        let err = gram_normalize(
            &[
                VectorFieldPoly::constant(Complex64::ONE),
                VectorFieldPoly::constant(Complex64::ONE),
            ],
            &center,
            1.0,
            32,
        );
        assert!(matches!(err, Err(EstimateError::Rank { index: 2 })));
    }

    #[test]
    fn delta_for_rejects_bad_geometry() {
        assert!(matches!(
            delta_for(0.25, 0.25, 0.4),
            Err(EstimateError::Precondition(_))
        ));
        assert!(matches!(
            delta_for(1.0, 0.25, 1.0),
            Err(EstimateError::Precondition(_))
        ));
    }
}
