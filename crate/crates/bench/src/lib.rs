//! Shared fixtures for the benchmark suite.

use autdim_core::domain::DomainSpec;
use autdim_core::point::CxPoint;
use num_complex::Complex64;

pub fn q_domain() -> DomainSpec {
    DomainSpec::q_limit()
}

pub fn q_points() -> (Complex64, Complex64) {
    (Complex64::new(-0.5, 0.0), Complex64::new(-0.25, 0.3))
}

pub fn disk_pair() -> (CxPoint, CxPoint) {
    (
        CxPoint::scalar(Complex64::ZERO),
        CxPoint::scalar(Complex64::new(0.5, 0.0)),
    )
}
