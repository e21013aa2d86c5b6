//! Orthonormal two-channel filter pairs and periodic decimated transforms.

use std::f64::consts::SQRT_2;

use crate::scaling::{RefinementMask, ORTHONORMALITY_TOL};
use crate::{Error, Result};

/// Lowpass `h_k = p_k / √2` and highpass `g_k = (-1)^k h_{K-k}`,
/// `K = k_min + k_max`, both indexed from `offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthFilterPair {
    pub h: Vec<f64>,
    pub g: Vec<f64>,
    pub offset: i64,
}

impl OrthFilterPair {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// `max_m |Σ_k h_k g_{k+2m}|` over all even shifts (both signs).
    pub fn cross_residual(&self) -> f64 {
        let len = self.h.len() as i64;
        (-(len / 2)..=(len / 2))
            .map(|m| {
                (0..len)
                    .filter_map(|k| {
                        let j = k + 2 * m;
                        (0..len)
                            .contains(&j)
                            .then(|| self.h[k as usize] * self.g[j as usize])
                    })
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn make_filter_pair(mask: &RefinementMask) -> Result<OrthFilterPair> {
    let residual = mask.orthonormality_residual();
    if residual > ORTHONORMALITY_TOL {
        return Err(Error::NotOrthonormal {
            residual,
            tolerance: ORTHONORMALITY_TOL,
        });
    }
    let h: Vec<f64> = mask.p.iter().map(|p| p / SQRT_2).collect();
    // With both sequences indexed from k_min, h_{K-k} is h reversed.
    let g = h
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &v)| {
            let k = mask.k_min + i as i64;
            if k.rem_euclid(2) == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    Ok(OrthFilterPair {
        h,
        g,
        offset: mask.k_min,
    })
}

/// Multi-level decomposition: `details[0]` is the finest level.
#[derive(Clone, Debug, PartialEq)]
pub struct Pyramid {
    pub approx: Vec<f64>,
    pub details: Vec<Vec<f64>>,
}

impl Pyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn coefficient_count(&self) -> usize {
        self.approx.len() + self.details.iter().map(Vec::len).sum::<usize>()
    }

    pub fn energy(&self) -> f64 {
        self.approx
            .iter()
            .chain(self.details.iter().flatten())
            .map(|x| x * x)
            .sum()
    }
}

fn analysis_step(x: &[f64], pair: &OrthFilterPair) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let half = n / 2;
    let mut a = vec![0.0; half];
    let mut d = vec![0.0; half];
    for i in 0..half {
        let (mut sa, mut sd) = (0.0, 0.0);
        for (k, (h, g)) in pair.h.iter().zip(&pair.g).enumerate() {
            let v = x[(2 * i + k) % n];
            sa += h * v;
            sd += g * v;
        }
        a[i] = sa;
        d[i] = sd;
    }
    (a, d)
}

fn synthesis_step(a: &[f64], d: &[f64], pair: &OrthFilterPair) -> Vec<f64> {
    let n = 2 * a.len();
    let mut x = vec![0.0; n];
    for i in 0..a.len() {
        for (k, (h, g)) in pair.h.iter().zip(&pair.g).enumerate() {
            x[(2 * i + k) % n] += h * a[i] + g * d[i];
        }
    }
    x
}

/// Periodic decimated analysis transform over `levels` levels.
pub fn dwt_periodic(signal: &[f64], pair: &OrthFilterPair, levels: usize) -> Result<Pyramid> {
    let len = signal.len();
    let usable = levels >= 1
        && levels < usize::BITS as usize
        && len >= pair.len()
        && len > 0
        && len.is_multiple_of(1usize << levels);
    if !usable {
        return Err(Error::LengthError {
            length: len,
            levels,
            filter_len: pair.len(),
        });
    }
    let mut approx = signal.to_vec();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (a, d) = analysis_step(&approx, pair);
        details.push(d);
        approx = a;
    }
    Ok(Pyramid { approx, details })
}

pub fn idwt_periodic(pyramid: &Pyramid, pair: &OrthFilterPair) -> Result<Vec<f64>> {
    if pyramid.details.is_empty() {
        return Err(Error::ShapeError("pyramid has no detail levels".into()));
    }
    let mut approx = pyramid.approx.clone();
    for (level, d) in pyramid.details.iter().enumerate().rev() {
        if d.len() != approx.len() || d.is_empty() {
            return Err(Error::ShapeError(format!(
                "level {level}: detail length {} does not match approximation length {}",
                d.len(),
                approx.len()
            )));
        }
        approx = synthesis_step(&approx, d, pair);
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn haar_pair() -> OrthFilterPair {
        make_filter_pair(&RefinementMask::from_coeffs(1, 1, vec![1.0, 1.0])).unwrap()
    }

    #[test]
    fn haar_pair_shape() {
        let p = haar_pair();
        let r = 1.0 / SQRT_2;
        assert!((p.h[0] - r).abs() < 1e-15 && (p.h[1] - r).abs() < 1e-15);
        // k_min = 1 is odd, so the flip starts with a negative tap.
        assert!((p.g[0] + r).abs() < 1e-15 && (p.g[1] - r).abs() < 1e-15);
        assert!(p.cross_residual() < 1e-15);
    }

    #[test]
    fn constant_signal() {
        let p = haar_pair();
        let pyr = dwt_periodic(&[3.0; 8], &p, 1).unwrap();
        for (a, d) in pyr.approx.iter().zip(&pyr.details[0]) {
            assert!((a - 3.0 * SQRT_2).abs() < 1e-12);
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn haar_impulse() {
        let p = haar_pair();
        let pyr = dwt_periodic(&[1.0, 0.0, 0.0, 0.0], &p, 1).unwrap();
        let r = 1.0 / SQRT_2;
        assert_eq!(pyr.approx.len(), 2);
        assert!((pyr.approx[0] - r).abs() < 1e-15 && pyr.approx[1].abs() < 1e-15);
        assert!((pyr.details[0][0] + r).abs() < 1e-15 && pyr.details[0][1].abs() < 1e-15);
    }

    #[test]
    fn haar_small_round_trip() {
        let p = haar_pair();
        let x = [1.0, 2.0, 3.0, 4.0];
        let back = idwt_periodic(&dwt_periodic(&x, &p, 1).unwrap(), &p).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_pyramid() {
        let p = haar_pair();
        let pyr = Pyramid {
            approx: vec![0.0; 2],
            details: vec![vec![0.0; 4], vec![0.0; 2]],
        };
        assert_eq!(idwt_periodic(&pyr, &p).unwrap(), vec![0.0; 8]);
    }

    #[test]
    fn length_and_shape_errors() {
        let p = haar_pair();
        assert!(matches!(
            dwt_periodic(&[0.0; 6], &p, 2),
            Err(Error::LengthError { .. })
        ));
        assert!(matches!(
            dwt_periodic(&[0.0; 1], &p, 0),
            Err(Error::LengthError { .. })
        ));
        let bad = Pyramid {
            approx: vec![0.0; 3],
            details: vec![vec![0.0; 2]],
        };
        assert!(matches!(idwt_periodic(&bad, &p), Err(Error::ShapeError(_))));
    }

    #[test]
    fn corrupted_mask_rejected() {
        let m = RefinementMask::from_coeffs(1, 1, vec![1.0, 1.0 + 1e-3]);
        assert!(matches!(
            make_filter_pair(&m),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
