//! Numerical toolkit for invariant metrics on bounded domains of Cⁿ.
//!
//! The crate computes Poincaré/Carathéodory distances and lengths (exactly
//! on model domains via conformal chains, by optimization and sandwich
//! bounds elsewhere), integrates one-parameter automorphism flows from
//! holomorphic polynomial vector fields, verifies a battery of quantitative
//! inequalities about such flows, and estimates the dimension of the
//! automorphism group of planar domains from boundary-tangency constraints.
//! A gallery of explicit degenerating domain families exercises the whole
//! stack end to end: as the family parameter grows the domains converge in
//! boundary Hausdorff distance while the automorphism group changes type
//! from a circle action to a non-compact translation flow.

pub mod chain;
pub mod dim;
pub mod domain;
pub mod estimates;
pub mod flow;
pub mod gallery;
pub mod metric;
mod optimize;
pub mod point;
pub mod poly;
pub mod quad;

pub use chain::{chain_to_disk, ChainError, ChainStep, ConformalChain};
pub use domain::{
    boundary_samples, contains, dist_to_boundary, hausdorff_distance, inner_outer_radii,
    BoundarySample, DomainError, DomainSpec, RadiiPair, SampledDomain,
};
pub use metric::{
    ball_caratheodory_length, caratheodory_length_estimate, caratheodory_length_model,
    extremal_gradient, extremal_length_search, extremal_search, model_caratheodory,
    poincare_distance, sandwich_bounds, ExtremalCandidate, MetricBounds, MetricError,
};
pub use point::CxPoint;
pub use poly::{MonomialTerm, VectorFieldPoly};
