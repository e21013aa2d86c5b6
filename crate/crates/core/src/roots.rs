//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

use crate::{Error, Result};

/// Iteration budget for [`aberth`].
pub const MAX_ITERATIONS: usize = 500;

/// Relative correction size at which the iteration stops.
pub const CORRECTION_TOL: f64 = 1e-13;

/// Largest accepted backward error `|p(r)| / Σ|c_k||r|^k`.
pub const RESIDUAL_TOL: f64 = 1e-11;

/// `p(z)` and `p'(z)` by Horner, coefficients ascending.
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Backward error of `z` as a root of the polynomial with ascending `coeffs`.
pub fn backward_error(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, z);
    let r = z.norm();
    let scale = coeffs
        .iter()
        .rev()
        .fold(0.0, |acc: f64, c| acc * r + c.abs());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All roots of the real polynomial with ascending `coeffs` (leading
/// coefficient nonzero).
///
/// Starts from points on a circle of radius slightly larger than one with an
/// irrational angular offset, so no starting point is real or symmetric.
pub fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    assert!(lead != 0.0, "leading coefficient must be nonzero");
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();

    let radius = 1.1;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut last = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        last = worst;
        if worst <= CORRECTION_TOL {
            break;
        }
    }

    // Newton polish on the original coefficients.
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let candidate = *r - step;
            if backward_error(&monic, candidate) <= backward_error(&monic, *r) {
                *r = candidate;
            } else {
                break;
            }
        }
    }

    if z.iter().any(|r| backward_error(&monic, *r) > RESIDUAL_TOL) {
        return Err(Error::ConvergenceFailure {
            iterations: MAX_ITERATIONS,
            correction: last,
        });
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.into_iter().map(|c| c.re).collect()
    }

    #[test]
    fn quadratic_roots() {
        // z^2 - 4z + 1
        let r = sorted_re(aberth(&[1.0, -4.0, 1.0]).unwrap());
        let s3 = 3f64.sqrt();
        assert!((r[0] - (2.0 - s3)).abs() < 1e-14);
        assert!((r[1] - (2.0 + s3)).abs() < 1e-14);
    }

    #[test]
    fn roots_of_unity() {
        let mut c = vec![0.0; 9];
        c[0] = -1.0;
        c[8] = 1.0;
        let r = aberth(&c).unwrap();
        assert_eq!(r.len(), 8);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!((z.powu(8) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn degree_zero_has_no_roots() {
        assert!(aberth(&[3.0]).unwrap().is_empty());
    }

    #[test]
    fn product_recovers_polynomial() {
        let expected = [-6.0, 11.0, -6.0, 1.0];
        let r = sorted_re(aberth(&expected).unwrap());
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
