//! Gauss–Legendre quadrature and L² inner products over balls of Cⁿ.

use num_complex::Complex64;

use crate::point::CxPoint;
use crate::poly::VectorFieldPoly;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Volume of the ball of radius `rho` in Cⁿ (real dimension 2n).
pub fn ball_volume(dim: usize, rho: f64) -> f64 {
    match dim {
        1 => std::f64::consts::PI * rho * rho,
        2 => std::f64::consts::PI.powi(2) * rho.powi(4) / 2.0,
        _ => unimplemented!("ball volume implemented for n = 1, 2"),
    }
}

/// L²(ball) inner product ∫ (X, Ȳ) dV over B(center, rho) ⊂ Cⁿ by
/// tensor-product Gauss–Legendre quadrature of the given order: radial and
/// latitude factors on mapped intervals, angular factors on [0, 2π].
pub fn l2_inner_product(
    x: &VectorFieldPoly,
    y: &VectorFieldPoly,
    center: &CxPoint,
    rho: f64,
    order: usize,
) -> Complex64 {
    let (nodes, weights) = gauss_legendre(order.max(4));
    let pairing = |p: &CxPoint| -> Complex64 {
        let xv = x.eval(p);
        let yv = y.eval(p);
        xv.coords
            .iter()
            .zip(&yv.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    };
    match center.dim() {
        1 => {
            // Polar: ∫₀^ρ ∫₀^{2π} f(c + r e^{iθ}) r dθ dr.
            let c = center.coords[0];
            let mut acc = Complex64::ZERO;
            for (ri, rw) in nodes.iter().zip(&weights) {
                let r = 0.5 * rho * (ri + 1.0);
                let jr = 0.5 * rho * rw * r;
                for (ti, tw) in nodes.iter().zip(&weights) {
                    let theta = std::f64::consts::PI * (ti + 1.0);
                    let jt = std::f64::consts::PI * tw;
                    let p = CxPoint::scalar(c + r * Complex64::new(theta.cos(), theta.sin()));
                    acc += pairing(&p) * (jr * jt);
                }
            }
            acc
        }
        2 => {
            // Hopf coordinates on shells of radius r:
            // z = c + r (cos η e^{iξ₁}, sin η e^{iξ₂}),
            // dV = r³ cos η sin η dr dη dξ₁ dξ₂.
            let mut acc = Complex64::ZERO;
            for (ri, rw) in nodes.iter().zip(&weights) {
                let r = 0.5 * rho * (ri + 1.0);
                let jr = 0.5 * rho * rw * r.powi(3);
                for (ei, ew) in nodes.iter().zip(&weights) {
                    let eta = std::f64::consts::FRAC_PI_4 * (ei + 1.0);
                    let je = std::f64::consts::FRAC_PI_4 * ew * eta.cos() * eta.sin();
                    for (t1, w1) in nodes.iter().zip(&weights) {
                        let xi1 = std::f64::consts::PI * (t1 + 1.0);
                        for (t2, w2) in nodes.iter().zip(&weights) {
                            let xi2 = std::f64::consts::PI * (t2 + 1.0);
                            let jw = std::f64::consts::PI.powi(2) * w1 * w2;
                            let p = CxPoint::pair(
                                center.coords[0]
                                    + r * eta.cos() * Complex64::new(xi1.cos(), xi1.sin()),
                                center.coords[1]
                                    + r * eta.sin() * Complex64::new(xi2.cos(), xi2.sin()),
                            );
                            acc += pairing(&p) * (jr * je * jw);
                        }
                    }
                }
            }
            acc
        }
        _ => unimplemented!("quadrature implemented for n = 1, 2"),
    }
}
