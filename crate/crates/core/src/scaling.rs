//! Refinement coefficients of `φ_n` and the cascade iteration on a dyadic grid.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::Dd;
use crate::factor::FactorSolution;
use crate::symbol::bspline_mask;
use crate::{Error, Result};

/// Tolerance for the discrete orthonormality precondition.
pub const ORTHONORMALITY_TOL: f64 = 1e-9;

/// Default dyadic level of the cascade grid.
pub const DEFAULT_LEVEL: u32 = 10;

/// Default number of cascade iterations.
pub const DEFAULT_ITERS: usize = 25;

/// Coefficients `p_k` of `φ(x) = Σ p_k φ(2x - k)` for `k = k_min..=k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinementMask {
    pub n: usize,
    pub k_min: i64,
    pub k_max: i64,
    pub p: Vec<f64>,
}

impl RefinementMask {
    pub fn from_coeffs(n: usize, k_min: i64, p: Vec<f64>) -> Self {
        let k_max = k_min + p.len() as i64 - 1;
        Self { n, k_min, k_max, p }
    }

    /// `p_k`, zero outside the index range.
    pub fn get(&self, k: i64) -> f64 {
        if k < self.k_min || k > self.k_max {
            0.0
        } else {
            self.p[(k - self.k_min) as usize]
        }
    }

    pub fn sum(&self) -> f64 {
        self.p.iter().sum()
    }

    /// `Σ_k p_k p_{k+2m}` for `m = 0, 1, …` while the shifted sequences overlap.
    pub fn autocorrelation_even(&self) -> Vec<f64> {
        let len = self.p.len();
        (0..len.div_ceil(2))
            .map(|m| {
                self.p
                    .iter()
                    .zip(&self.p[(2 * m).min(len)..])
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `max_m |Σ_k p_k p_{k+2m} - 2δ_{m0}|`.
    pub fn orthonormality_residual(&self) -> f64 {
        self.autocorrelation_even()
            .iter()
            .enumerate()
            .map(|(m, v)| if m == 0 { (v - 2.0).abs() } else { v.abs() })
            .fold(0.0, f64::max)
    }

    /// Largest off-diagonal `|Σ_k p_k p_{k+2m}|`, `m ≠ 0`.
    pub fn max_offdiag(&self) -> f64 {
        self.autocorrelation_even()
            .iter()
            .skip(1)
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    /// Max over `points` equispaced `ξ ∈ [-2π, 2π]` of `| |P(z)|² + |P(-z)|² - 1 |`.
    pub fn qmf_residual(&self, points: usize) -> f64 {
        let points = points.max(2);
        (0..points)
            .map(|j| {
                let xi = -2.0 * PI + 4.0 * PI * j as f64 / (points - 1) as f64;
                let z = Complex64::from_polar(1.0, -xi / 2.0);
                let v = self.symbol_at(z).norm_sqr() + self.symbol_at(-z).norm_sqr();
                (v - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Min over `points` equispaced `ξ ∈ [-π, π]` of `|P(e^{-iξ/2})|`.
    pub fn min_abs_symbol(&self, points: usize) -> f64 {
        let points = points.max(2);
        (0..points)
            .map(|j| {
                let xi = -PI + 2.0 * PI * j as f64 / (points - 1) as f64;
                mask_symbol_eval(self, xi).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `P(z) = ½ Σ p_k z^k`.
    pub fn symbol_at(&self, z: Complex64) -> Complex64 {
        let horner = self
            .p
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        horner * z.powi(self.k_min as i32) * 0.5
    }
}

/// `p_k = 2 [z^k] (P_n(z) S_n(z))`, `k = 1..=2n`.
pub fn refinement_mask(s: &FactorSolution) -> Result<RefinementMask> {
    let bspline: Vec<Dd> = bspline_mask(s.n)?
        .coeffs
        .iter()
        .map(Dd::from_rational)
        .collect();
    let a = s.a_extended();
    let mut p = vec![Dd::ZERO; bspline.len() + a.len() - 1];
    for (i, &b) in bspline.iter().enumerate() {
        for (j, &aj) in a.iter().enumerate() {
            p[i + j] = p[i + j] + b * aj;
        }
    }
    // S_n starts at z^1.
    let p = p.into_iter().map(|v| 2.0 * v.to_f64()).collect();
    Ok(RefinementMask::from_coeffs(s.n, 1, p))
}

/// `P(e^{-iξ/2}) = ½ Σ p_k e^{-ikξ/2}`.
pub fn mask_symbol_eval(mask: &RefinementMask, xi: f64) -> Complex64 {
    mask.symbol_at(Complex64::from_polar(1.0, -xi / 2.0))
}

/// Samples of a cascade iterate on the grid `k_min + j 2^{-level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingTable {
    pub n: usize,
    pub level: u32,
    pub k_min: i64,
    pub k_max: i64,
    pub samples: Vec<f64>,
    /// Sup-norm difference between the last two iterates.
    pub last_diff: f64,
    /// Sup-norm differences of every step, first step first.
    pub diffs: Vec<f64>,
}

impl ScalingTable {
    pub fn step(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn per_unit(&self) -> usize {
        1usize << self.level
    }

    pub fn x(&self, j: usize) -> f64 {
        self.k_min as f64 + j as f64 * self.step()
    }

    /// `(x, φ(x))` pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .enumerate()
            .map(|(j, &v)| (self.x(j), v))
    }

    /// Sample at integer grid offset `j`, zero outside the table.
    fn at(&self, j: i64) -> f64 {
        if j < 0 {
            0.0
        } else {
            self.samples.get(j as usize).copied().unwrap_or(0.0)
        }
    }

    /// Integral over the line of the zero-extended samples. The trapezoid
    /// rule over all of ℝ reduces to `h Σ φ(x_j)`.
    pub fn integral(&self) -> f64 {
        self.samples.iter().sum::<f64>() * self.step()
    }

    /// `max |Σ_k φ(x + k) - 1|` over one unit of grid points.
    pub fn partition_of_unity_residual(&self) -> f64 {
        let unit = self.per_unit() as i64;
        (0..unit)
            .map(|r| {
                let s: f64 = (0..=(self.k_max - self.k_min))
                    .map(|k| self.at(r + k * unit))
                    .sum();
                (s - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `true` when the step differences grew over each of the final three steps.
    pub fn nonconvergent(&self) -> bool {
        let d = &self.diffs;
        d.len() >= 4 && d[d.len() - 4..].windows(2).all(|w| w[1] > w[0])
    }
}

/// Cascade iteration `φ^{(m+1)}(x) = Σ p_k φ^{(m)}(2x - k)` started from the
/// box on `[k_min, k_min + 1)`.
///
/// The iterate lives on the level-`level` grid over `[k_min, k_max]`; for a
/// grid point `x_j = k_min + j h`, `2x_j - k` is the grid point with index
/// `2j + (k_min - k) 2^level`, so no interpolation is needed.
pub fn cascade(mask: &RefinementMask, level: u32, iters: usize) -> Result<ScalingTable> {
    if level == 0 || level > 24 {
        return Err(Error::InvalidParameter(format!(
            "level must be in 1..=24, got {level}"
        )));
    }
    if iters == 0 {
        return Err(Error::InvalidParameter("iters must be at least 1".into()));
    }
    let residual = mask.orthonormality_residual();
    if residual > ORTHONORMALITY_TOL {
        return Err(Error::NotOrthonormal {
            residual,
            tolerance: ORTHONORMALITY_TOL,
        });
    }

    let unit = 1i64 << level;
    let span = mask.k_max - mask.k_min;
    let len = (span * unit + 1) as usize;
    let mut cur = vec![0.0; len];
    cur[..unit as usize].fill(1.0);
    let mut next = vec![0.0; len];
    let mut diffs = Vec::with_capacity(iters);

    for _ in 0..iters {
        for (j, out) in next.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (i, &pk) in mask.p.iter().enumerate() {
                // index of 2x_j - k with k = k_min + i
                let src = 2 * j as i64 - i as i64 * unit;
                if src >= 0 && (src as usize) < len {
                    acc += pk * cur[src as usize];
                }
            }
            *out = acc;
        }
        let diff = cur
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        diffs.push(diff);
        std::mem::swap(&mut cur, &mut next);
    }

    Ok(ScalingTable {
        n: mask.n,
        level,
        k_min: mask.k_min,
        k_max: mask.k_max,
        samples: cur,
        last_diff: *diffs.last().unwrap(),
        diffs,
    })
}

/// `∫ φ(x) φ(x - k) dx` for `k = 0..=max_shift`, by the same zero-extended
/// trapezoid sum as [`ScalingTable::integral`].
pub fn shifted_inner_products(table: &ScalingTable, max_shift: usize) -> Vec<f64> {
    let unit = table.per_unit();
    let h = table.step();
    (0..=max_shift)
        .map(|k| {
            let off = k * unit;
            if off >= table.samples.len() {
                return 0.0;
            }
            table.samples[off..]
                .iter()
                .zip(&table.samples)
                .map(|(a, b)| a * b)
                .sum::<f64>()
                * h
        })
        .collect()
}
