//! Poincaré and Carathéodory distances and infinitesimal lengths.
//!
//! Model domains with a registered conformal chain get exact values by
//! pullback of the Poincaré metric; everything else is bracketed between an
//! optimization lower bound (over normalized polynomial candidates) and ball
//! sandwich upper bounds.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{chain_to_disk, ChainError};
use crate::domain::{boundary_samples, contains, inner_outer_radii, DomainError, DomainSpec};
use crate::optimize::NelderMead;
use crate::point::CxPoint;
use crate::poly::MonomialTerm;

/// Safety factor applied to the sampled boundary sup when normalizing a
/// candidate; keeps |f| < 1 strictly while costing only 0.1% of the bound.
pub const NORMALIZER_SAFETY: f64 = 1.001;

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("point lies outside the domain")]
    OutsideDomain,
    #[error("no closed-form chain registered for this domain")]
    NoClosedForm,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Poincaré distance on the unit disk, ρ(a, b) = ½ ln((1+m)/(1−m)) with
/// m = |(a−b)/(1−āb)|.
pub fn poincare_distance(a: Complex64, b: Complex64) -> Result<f64, MetricError> {
    if a.norm() >= 1.0 || b.norm() >= 1.0 {
        return Err(MetricError::OutsideDomain);
    }
    let m = ((a - b) / (Complex64::ONE - a.conj() * b)).norm();
    Ok(m.atanh())
}

/// Density of the Poincaré metric at `w`, normalized so the density at the
/// origin is 1.
pub fn poincare_density(w: Complex64) -> f64 {
    1.0 / (1.0 - w.norm_sqr())
}

/// Exact Carathéodory distance on a model domain via its conformal chain.
/// For simply connected planar domains this equals the pullback of the
/// Poincaré distance.
pub fn model_caratheodory(d: &DomainSpec, z: Complex64, w: Complex64) -> Result<f64, MetricError> {
    for p in [z, w] {
        if !contains(d, &CxPoint::scalar(p))? {
            return Err(MetricError::OutsideDomain);
        }
    }
    let chain = chain_to_disk(d)?;
    poincare_distance(chain.eval(z)?, chain.eval(w)?)
}

/// Exact Carathéodory length of the tangent vector `y` at `w` on a model
/// domain: |σ′(w)| · |y| · (Poincaré density at σ(w)).
pub fn caratheodory_length_model(
    d: &DomainSpec,
    w: Complex64,
    y: Complex64,
) -> Result<f64, MetricError> {
    if !contains(d, &CxPoint::scalar(w))? {
        return Err(MetricError::OutsideDomain);
    }
    let chain = chain_to_disk(d)?;
    let image = chain.eval(w)?;
    let deriv = chain.derivative(w)?;
    Ok(deriv.norm() * y.norm() * poincare_density(image))
}

/// Closed-form Carathéodory length of the Euclidean ball B(center, radius)
/// in Cⁿ, normalized to agree with [`poincare_density`] on the disk.
pub fn ball_caratheodory_length(
    center: &CxPoint,
    radius: f64,
    w: &CxPoint,
    y: &CxPoint,
) -> Result<f64, MetricError> {
    let u = w.sub(center).scale(Complex64::new(1.0 / radius, 0.0));
    let v = y.scale(Complex64::new(1.0 / radius, 0.0));
    let u2 = u.norm().powi(2);
    if u2 >= 1.0 {
        return Err(MetricError::OutsideDomain);
    }
    let pairing = v.pair_hermitian(&u).norm_sqr();
    let num = v.norm().powi(2) * (1.0 - u2) + pairing;
    Ok((num / (1.0 - u2).powi(2)).sqrt())
}

/// A normalized polynomial candidate f = h/M for the Carathéodory extremal
/// problem: h is a polynomial in (ζ − basePoint) vanishing at the base
/// point, M dominates sup |h| over the domain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtremalCandidate {
    pub base_point: CxPoint,
    /// Terms of h in powers of (ζ − basePoint); every multi-index is
    /// nonzero, so h(basePoint) = 0 by construction.
    pub terms: Vec<MonomialTerm>,
    pub normalizer: f64,
}

impl ExtremalCandidate {
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.powers.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn h_eval(&self, z: &CxPoint) -> Complex64 {
        let shifted: Vec<Complex64> = z
            .coords
            .iter()
            .zip(&self.base_point.coords)
            .map(|(a, b)| a - b)
            .collect();
        self.terms
            .iter()
            .map(|t| {
                let mut m = t.coeff;
                for (j, &p) in t.powers.iter().enumerate() {
                    if p > 0 {
                        m *= shifted[j].powu(p);
                    }
                }
                m
            })
            .sum()
    }

    /// f(z) = h(z)/M.
    pub fn eval(&self, z: &CxPoint) -> Complex64 {
        self.h_eval(z) / self.normalizer
    }

    /// Exact gradient ∇f(z) by the power rule.
    pub fn gradient(&self, z: &CxPoint) -> CxPoint {
        let n = self.base_point.dim();
        let shifted: Vec<Complex64> = z
            .coords
            .iter()
            .zip(&self.base_point.coords)
            .map(|(a, b)| a - b)
            .collect();
        let mut grad = vec![Complex64::ZERO; n];
        for t in &self.terms {
            for i in 0..n {
                let p = t.powers[i];
                if p == 0 {
                    continue;
                }
                let mut m = t.coeff * (p as f64);
                for (j, &q) in t.powers.iter().enumerate() {
                    let q_eff = if j == i { q - 1 } else { q };
                    if q_eff > 0 {
                        m *= shifted[j].powu(q_eff);
                    }
                }
                grad[i] += m;
            }
        }
        CxPoint::new(grad).scale(Complex64::new(1.0 / self.normalizer, 0.0))
    }
}

/// Exact gradient of the candidate map at `w`.
pub fn extremal_gradient(c: &ExtremalCandidate, w: &CxPoint) -> CxPoint {
    c.gradient(w)
}

/// Two-sided bracket of a Carathéodory quantity.
#[derive(Clone, Debug)]
pub struct MetricBounds {
    pub lower: f64,
    /// Upper bound; +∞ when no inscribed-ball or chain bound applies.
    pub upper: f64,
    pub witness: Option<ExtremalCandidate>,
    /// Set when the search exhausted its budget without a feasible candidate.
    pub warning: bool,
}

/// Sandwich bounds |Y|/R ≤ C_D(w, Y) ≤ |Y|/r from the inscribed and
/// circumscribed radii around `w`.
pub fn sandwich_bounds(
    d: &DomainSpec,
    w: &CxPoint,
    y: &CxPoint,
) -> Result<MetricBounds, MetricError> {
    if y.norm() == 0.0 {
        return Err(MetricError::DegenerateInput("zero tangent vector".into()));
    }
    if !contains(d, w)? {
        return Err(MetricError::OutsideDomain);
    }
    let radii = inner_outer_radii(d, w)?;
    Ok(MetricBounds {
        lower: y.norm() / radii.big_r,
        upper: y.norm() / radii.r,
        witness: None,
        warning: false,
    })
}

/// Multi-indices 1 ≤ |α| ≤ degree over `dim` variables, in a fixed order.
fn candidate_exponents(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(dim: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == dim {
            if prefix.iter().sum::<u32>() >= 1 {
                out.push(prefix.clone());
            }
            return;
        }
        let used: u32 = prefix.iter().sum();
        for p in 0..=(degree - used) {
            prefix.push(p);
            rec(dim, degree, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree, &mut Vec::new(), &mut out);
    out
}

/// Domination strategy for sup |h| over the domain, given the terms of h in
/// powers of (ζ − w).
enum SupStrategy {
    /// Evaluate |h| over pre-computed boundary points, then inflate.
    Boundary(Vec<CxPoint>, f64),
    /// Coefficient bound Σ |c_α| ρ^{|α|} with ρ ≥ sup |ζ − w|; always an
    /// upper bound for the true sup, tight for monomials.
    CoeffBound(f64),
}

impl SupStrategy {
    fn for_domain(d: &DomainSpec, w: &CxPoint) -> Result<SupStrategy, MetricError> {
        match d {
            DomainSpec::Ball { center, radius } if center.dim() >= 2 => {
                Ok(SupStrategy::CoeffBound(radius + w.dist(center)))
            }
            DomainSpec::ProductMinusDiagonal { .. } => {
                let radii = inner_outer_radii(d, w)?;
                Ok(SupStrategy::CoeffBound(radii.big_r))
            }
            DomainSpec::Sampled(s) => {
                let pts = s.mesh.iter().map(|bs| bs.point.clone()).collect();
                Ok(SupStrategy::Boundary(pts, 1.0 + 100.0 * s.mesh_tol))
            }
            _ => {
                // Planar analytic boundary: a dense trace keeps the sampled
                // sup within ~1e-4 of the true sup for the degrees in scope,
                // well inside the safety factor.
                let radii = inner_outer_radii(d, w)?;
                let density = (2.0 * std::f64::consts::PI * radii.big_r / 1024.0).max(1e-4);
                let pts = boundary_samples(d, density)?
                    .into_iter()
                    .map(|bs| bs.point)
                    .collect();
                Ok(SupStrategy::Boundary(pts, NORMALIZER_SAFETY))
            }
        }
    }

    /// M = inflation · (sup estimate of |h|).
    fn normalizer(&self, base: &CxPoint, terms: &[(Vec<u32>, Complex64)]) -> f64 {
        match self {
            SupStrategy::Boundary(pts, inflation) => {
                let mut sup = 0.0f64;
                for p in pts {
                    let shifted: Vec<Complex64> = p
                        .coords
                        .iter()
                        .zip(&base.coords)
                        .map(|(a, b)| a - b)
                        .collect();
                    let mut v = Complex64::ZERO;
                    for (powers, coeff) in terms {
                        let mut m = *coeff;
                        for (j, &q) in powers.iter().enumerate() {
                            if q > 0 {
                                m *= shifted[j].powu(q);
                            }
                        }
                        v += m;
                    }
                    sup = sup.max(v.norm());
                }
                sup * inflation
            }
            SupStrategy::CoeffBound(rho) => {
                NORMALIZER_SAFETY
                    * terms
                        .iter()
                        .map(|(powers, coeff)| {
                            coeff.norm() * rho.powi(powers.iter().sum::<u32>() as i32)
                        })
                        .sum::<f64>()
            }
        }
    }
}

fn coeffs_from_params(exponents: &[Vec<u32>], x: &[f64]) -> Vec<(Vec<u32>, Complex64)> {
    exponents
        .iter()
        .enumerate()
        .map(|(k, e)| (e.clone(), Complex64::new(x[2 * k], x[2 * k + 1])))
        .collect()
}

struct SearchSetup {
    exponents: Vec<Vec<u32>>,
    strategy: SupStrategy,
    restarts: usize,
    budget: usize,
}

impl SearchSetup {
    fn new(d: &DomainSpec, w: &CxPoint, degree: u32, budget: usize) -> Result<Self, MetricError> {
        if !d.is_bounded() {
            return Err(MetricError::Domain(DomainError::UnboundedDomain));
        }
        if degree < 1 {
            return Err(MetricError::DegenerateInput(
                "degree must be at least 1".into(),
            ));
        }
        if !contains(d, w)? {
            return Err(MetricError::OutsideDomain);
        }
        Ok(SearchSetup {
            exponents: candidate_exponents(w.dim(), degree),
            strategy: SupStrategy::for_domain(d, w)?,
            restarts: 8,
            budget: budget.max(50),
        })
    }

    /// Run restarts of Nelder–Mead on `score` (to be maximized), returning
    /// the best parameter vector. `structured_seed` fills restart 0.
    fn run<F: Fn(&[(Vec<u32>, Complex64)], f64) -> f64>(
        &self,
        seed: u64,
        structured_seed: Vec<f64>,
        base: &CxPoint,
        score: F,
    ) -> (Vec<(Vec<u32>, Complex64)>, f64, bool) {
        let nparams = 2 * self.exponents.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nm = NelderMead {
            max_evals: self.budget,
            ..Default::default()
        };
        let objective = |x: &[f64]| -> f64 {
            let terms = coeffs_from_params(&self.exponents, x);
            let m = self.strategy.normalizer(base, &terms);
            if m < 1e-14 {
                return 1e6; // h ≡ 0 is excluded
            }
            -score(&terms, m)
        };
        let mut best_x: Option<Vec<f64>> = None;
        let mut best_f = f64::INFINITY;
        for restart in 0..self.restarts {
            let x0: Vec<f64> = if restart == 0 {
                structured_seed.clone()
            } else {
                (0..nparams).map(|_| rng.random_range(-1.0..1.0)).collect()
            };
            let r = nm.minimize(objective, &x0, 0.3);
            if r.f < best_f {
                best_f = r.f;
                best_x = Some(r.x);
            }
        }
        let x = best_x.unwrap_or(vec![0.0; nparams]);
        let terms = coeffs_from_params(&self.exponents, &x);
        let m = self.strategy.normalizer(base, &terms);
        if m < 1e-14 || !best_f.is_finite() || best_f >= 1e6 {
            (terms, 0.0, true)
        } else {
            (terms, m, false)
        }
    }
}

/// Linear structured seed pointing from `w` toward `target`, giving the
/// exact extremal on round balls.
fn linear_seed(exponents: &[Vec<u32>], w: &CxPoint, target: &CxPoint) -> Vec<f64> {
    let dir = target.sub(w);
    let n = dir.norm();
    let mut x = vec![0.0; 2 * exponents.len()];
    if n == 0.0 {
        return x;
    }
    for (k, e) in exponents.iter().enumerate() {
        if e.iter().sum::<u32>() == 1 {
            let i = e.iter().position(|&p| p == 1).unwrap();
            let c = dir.coords[i].conj() / n;
            x[2 * k] = c.re;
            x[2 * k + 1] = c.im;
        }
    }
    x
}

/// Maximize ρ(0, |f(z)|) over candidates f = h/M with h a polynomial of
/// total degree ≤ `degree` vanishing at `w`. Deterministic per `seed`.
///
/// Returns the best lower bound found; the upper bound is the chain value
/// when the domain has one, otherwise the inscribed-ball distance when `z`
/// lies inside B(w, r), otherwise +∞.
pub fn extremal_search(
    d: &DomainSpec,
    w: &CxPoint,
    z: &CxPoint,
    degree: u32,
    budget: usize,
    seed: u64,
) -> Result<MetricBounds, MetricError> {
    if w == z {
        return Err(MetricError::DegenerateInput(
            "base and target points coincide".into(),
        ));
    }
    if !contains(d, z)? {
        return Err(MetricError::OutsideDomain);
    }
    let setup = SearchSetup::new(d, w, degree, budget)?;
    let z_owned = z.clone();
    let base = w.clone();
    let (terms, m, warning) =
        setup.run(seed, linear_seed(&setup.exponents, w, z), w, |terms, m| {
            // |h(z)| / M, capped by the Schwarz bound.
            let shifted: Vec<Complex64> = z_owned
                .coords
                .iter()
                .zip(&base.coords)
                .map(|(a, b)| a - b)
                .collect();
            let mut v = Complex64::ZERO;
            for (powers, coeff) in terms {
                let mut t = *coeff;
                for (j, &q) in powers.iter().enumerate() {
                    if q > 0 {
                        t *= shifted[j].powu(q);
                    }
                }
                v += t;
            }
            v.norm() / m
        });

    let (lower, witness) = if warning {
        (0.0, None)
    } else {
        let mut cand = ExtremalCandidate {
            base_point: w.clone(),
            terms: terms
                .iter()
                .map(|(powers, coeff)| MonomialTerm {
                    powers: powers.clone(),
                    coeff: *coeff,
                })
                .collect(),
            normalizer: m,
        };
        // Rotation gauge: make f(z) real and positive.
        let v = cand.eval(z);
        if v.norm() > 0.0 {
            let phase = v.conj() / v.norm();
            for t in &mut cand.terms {
                t.coeff *= phase;
            }
        }
        let value = cand.eval(z).re.clamp(0.0, 1.0 - 1e-15);
        (value.atanh(), Some(cand))
    };

    let upper = upper_bound_for_pair(d, w, z)?;
    Ok(MetricBounds {
        lower,
        upper,
        witness,
        warning,
    })
}

fn upper_bound_for_pair(d: &DomainSpec, w: &CxPoint, z: &CxPoint) -> Result<f64, MetricError> {
    if d.dim() == 1 {
        if let Ok(v) = model_caratheodory(d, z.as_scalar(), w.as_scalar()) {
            return Ok(v);
        }
    }
    let radii = inner_outer_radii(d, w)?;
    let dist = w.dist(z);
    if dist < radii.r {
        Ok((dist / radii.r).atanh())
    } else {
        Ok(f64::INFINITY)
    }
}

/// Infinitesimal variant of [`extremal_search`]: maximize Re(∇f(w), Y) over
/// the same candidate family. The result is a certified lower bound for the
/// Carathéodory length C_D(w, Y); the upper bound is |Y|/r.
pub fn extremal_length_search(
    d: &DomainSpec,
    w: &CxPoint,
    y: &CxPoint,
    degree: u32,
    budget: usize,
    seed: u64,
) -> Result<MetricBounds, MetricError> {
    if y.norm() == 0.0 {
        return Err(MetricError::DegenerateInput("zero tangent vector".into()));
    }
    let setup = SearchSetup::new(d, w, degree, budget)?;
    let y_owned = y.clone();
    let (terms, m, warning) = setup.run(
        seed,
        linear_seed(&setup.exponents, w, &w.add(y)),
        w,
        |terms, m| {
            // ∇h(w) picks out the linear coefficients.
            let mut pairing = Complex64::ZERO;
            for (powers, coeff) in terms {
                if powers.iter().sum::<u32>() == 1 {
                    let i = powers.iter().position(|&p| p == 1).unwrap();
                    pairing += coeff * y_owned.coords[i];
                }
            }
            pairing.norm() / m
        },
    );
    let (lower, witness) = if warning {
        (0.0, None)
    } else {
        let mut cand = ExtremalCandidate {
            base_point: w.clone(),
            terms: terms
                .iter()
                .map(|(powers, coeff)| MonomialTerm {
                    powers: powers.clone(),
                    coeff: *coeff,
                })
                .collect(),
            normalizer: m,
        };
        let v = cand.gradient(w).pair_bilinear(y);
        if v.norm() > 0.0 {
            let phase = v.conj() / v.norm();
            for t in &mut cand.terms {
                t.coeff *= phase;
            }
        }
        let value = cand.gradient(w).pair_bilinear(y).re.max(0.0);
        (value, Some(cand))
    };
    let radii = inner_outer_radii(d, w)?;
    Ok(MetricBounds {
        lower,
        upper: y.norm() / radii.r,
        witness,
        warning,
    })
}

/// Best available Carathéodory length estimate, with a flag telling whether
/// the value is exact (closed form) or an optimization lower bound.
pub fn caratheodory_length_estimate(
    d: &DomainSpec,
    w: &CxPoint,
    y: &CxPoint,
    seed: u64,
) -> Result<(f64, bool), MetricError> {
    if let DomainSpec::Ball { center, radius } = d {
        return Ok((ball_caratheodory_length(center, *radius, w, y)?, true));
    }
    if d.dim() == 1 {
        if let Ok(v) = caratheodory_length_model(d, w.as_scalar(), y.as_scalar()) {
            return Ok((v, true));
        }
    }
    let bounds = extremal_length_search(d, w, y, 4, 4000, seed)?;
    Ok((bounds.lower, false))
}
