//! Nelder–Mead simplex minimizer used by the extremal-function search.
//!
//! Deterministic: the caller supplies every starting point, and the
//! reflection/expansion/contraction schedule is fixed.

pub struct NelderMead {
    pub max_evals: usize,
    pub f_tol: f64,
    pub x_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_evals: 2000,
            f_tol: 1e-12,
            x_tol: 1e-12,
        }
    }
}

pub struct MinResult {
    pub x: Vec<f64>,
    pub f: f64,
}

impl NelderMead {
    /// Minimize `f` starting from `x0`, initial simplex edge `scale`.
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64], scale: f64) -> MinResult {
        let n = x0.len();
        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            f(x)
        };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += scale;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();

        while evals < self.max_evals {
            // Order best → worst.
            let mut idx: Vec<usize> = (0..=n).collect();
            idx.sort_by(|&a, &b| {
                values[a]
                    .partial_cmp(&values[b])
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let ordered: Vec<Vec<f64>> = idx.iter().map(|&i| simplex[i].clone()).collect();
            let ordered_vals: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
            simplex = ordered;
            values = ordered_vals;

            let spread = values[n] - values[0];
            let size = (0..n)
                .map(|j| (simplex[n][j] - simplex[0][j]).abs())
                .fold(0.0f64, f64::max);
            if spread.abs() < self.f_tol && size < self.x_tol {
                break;
            }

            // Centroid of all but the worst.
            let mut centroid = vec![0.0; n];
            for v in simplex.iter().take(n) {
                for j in 0..n {
                    centroid[j] += v[j] / n as f64;
                }
            }

            let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
                a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
            };

            let reflected = lerp(&centroid, &simplex[n], -alpha);
            let f_r = eval(&reflected, &mut evals);

            if f_r < values[0] {
                let expanded = lerp(&centroid, &simplex[n], -gamma);
                let f_e = eval(&expanded, &mut evals);
                if f_e < f_r {
                    simplex[n] = expanded;
                    values[n] = f_e;
                } else {
                    simplex[n] = reflected;
                    values[n] = f_r;
                }
            } else if f_r < values[n - 1] {
                simplex[n] = reflected;
                values[n] = f_r;
            } else {
                let contracted = if f_r < values[n] {
                    lerp(&centroid, &reflected, rho)
                } else {
                    lerp(&centroid, &simplex[n], rho)
                };
                let f_c = eval(&contracted, &mut evals);
                if f_c < values[n].min(f_r) {
                    simplex[n] = contracted;
                    values[n] = f_c;
                } else {
                    // Shrink toward the best vertex.
                    for i in 1..=n {
                        let shrunk = lerp(&simplex[0], &simplex[i], sigma);
                        simplex[i] = shrunk;
                        values[i] = eval(&simplex[i], &mut evals);
                    }
                }
            }
        }

        let mut best = 0;
        for i in 1..=n {
            if values[i] < values[best] {
                best = i;
            }
        }
        MinResult {
            x: simplex[best].clone(),
            f: values[best],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic_bowl() {
        let nm = NelderMead::default();
        let r = nm.minimize(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2),
            &[0.0, 0.0],
            0.5,
        );
        assert!((r.x[0] - 1.0).abs() < 1e-5, "{:?}", r.x);
        assert!((r.x[1] + 2.0).abs() < 1e-5, "{:?}", r.x);
    }

    #[test]
    fn minimizes_rosenbrock_reasonably() {
        let nm = NelderMead {
            max_evals: 8000,
            ..Default::default()
        };
        let r = nm.minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            0.5,
        );
        assert!(r.f < 1e-6, "f = {}", r.f);
    }

    #[test]
    fn deterministic_for_identical_inputs() {
        let nm = NelderMead::default();
        let run = || {
            let r = nm.minimize(
                |x| x[0].sin() + (x[1] * 1.7).cos() + x[0] * x[0] * 0.1,
                &[0.3, 0.4],
                0.25,
            );
            (r.x.clone(), r.f)
        };
        assert_eq!(run(), run());
    }
}
