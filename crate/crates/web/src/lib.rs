//! WebAssembly bindings behind `www/index.html`.
//!
//! Three views are exposed: the cascade approximation of `φ_n`, the mask
//! response `|P(z)|²` next to its QMF complement, and the roots of the
//! symbol with the selected branch highlighted.

use std::f64::consts::PI;

use splinewave::{
    cascade, laurent_symbol, lorentz_q, mask_symbol_eval, refinement_mask, spectral_factor,
    symbol_roots, Branch,
};
use wasm_bindgen::prelude::*;

/// A sampled curve (or point cloud) handed to JavaScript.
#[wasm_bindgen]
#[derive(Clone, Debug, Default)]
pub struct Curve {
    xs: Vec<f64>,
    ys: Vec<f64>,
    extra: Vec<f64>,
    info: String,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ys(&self) -> Vec<f64> {
        self.ys.clone()
    }

    /// Second series: QMF complement for spectra, selection flags for roots.
    #[wasm_bindgen(getter)]
    pub fn extra(&self) -> Vec<f64> {
        self.extra.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn info(&self) -> String {
        self.info.clone()
    }
}

impl Curve {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }
}

fn err(e: splinewave::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn branch(s: &str) -> Result<Branch, splinewave::Error> {
    s.parse()
}

/// `Q_n` rendered as text.
#[wasm_bindgen]
pub fn q_polynomial(n: usize) -> Result<String, JsError> {
    Ok(lorentz_q(n).map_err(err)?.poly.to_string())
}

pub fn scaling_curve(
    n: usize,
    branch_name: &str,
    level: u32,
    iters: usize,
) -> Result<Curve, splinewave::Error> {
    let q = lorentz_q(n)?;
    let sol = spectral_factor(&laurent_symbol(&q), &branch(branch_name)?)?;
    let mask = refinement_mask(&sol)?;
    let table = cascade(&mask, level, iters)?;
    let (xs, ys) = table.points().unzip();
    let p: Vec<String> = mask.p.iter().map(|v| format!("{v:.4}")).collect();
    Ok(Curve {
        xs,
        ys,
        extra: mask.p.clone(),
        info: format!(
            "p = [{}]; integral {:.6}; last step {:.2e}",
            p.join(", "),
            table.integral(),
            table.last_diff
        ),
    })
}

/// `φ_n` sampled on the `2^-level` grid after `iters` cascade steps.
#[wasm_bindgen]
pub fn scaling_function(
    n: usize,
    branch_name: &str,
    level: u32,
    iters: usize,
) -> Result<Curve, JsError> {
    scaling_curve(n, branch_name, level, iters).map_err(err)
}

pub fn response_curve(
    n: usize,
    branch_name: &str,
    points: usize,
) -> Result<Curve, splinewave::Error> {
    let q = lorentz_q(n)?;
    let sol = spectral_factor(&laurent_symbol(&q), &branch(branch_name)?)?;
    let mask = refinement_mask(&sol)?;
    let points = points.max(2);
    let mut curve = Curve {
        info: format!("QMF residual {:.2e}", mask.qmf_residual(2001)),
        ..Curve::default()
    };
    for j in 0..points {
        let xi = 2.0 * PI * j as f64 / (points - 1) as f64;
        curve.xs.push(xi);
        curve.ys.push(mask_symbol_eval(&mask, xi).norm_sqr());
        curve
            .extra
            .push(mask_symbol_eval(&mask, xi + 2.0 * PI).norm_sqr());
    }
    Ok(curve)
}

/// `|P(e^{-iξ/2})|²` and `|P(-e^{-iξ/2})|²` for `ξ ∈ [0, 2π]`.
#[wasm_bindgen]
pub fn mask_response(n: usize, branch_name: &str, points: usize) -> Result<Curve, JsError> {
    response_curve(n, branch_name, points).map_err(err)
}

pub fn root_cloud(n: usize, branch_name: &str) -> Result<Curve, splinewave::Error> {
    let q = lorentz_q(n)?;
    let symbol = laurent_symbol(&q);
    let roots = symbol_roots(&symbol)?;
    let choice = branch(branch_name)?.resolve(n, roots.groups.len())?;
    let mut curve = Curve {
        info: format!(
            "{} roots in {} groups, {} branches",
            roots.roots.len(),
            roots.groups.len(),
            roots.branch_count()
        ),
        ..Curve::default()
    };
    for (g, &outer) in roots.groups.iter().zip(&choice) {
        for (members, selected) in [(&g.outer, outer), (&g.inner, !outer)] {
            for r in members {
                curve.xs.push(r.re);
                curve.ys.push(r.im);
                curve.extra.push(if selected { 1.0 } else { 0.0 });
            }
        }
    }
    Ok(curve)
}

/// Roots of `z^{n-1} L(z)`; `extra[i]` is 1 for roots used by the branch.
#[wasm_bindgen]
pub fn roots(n: usize, branch_name: &str) -> Result<Curve, JsError> {
    root_cloud(n, branch_name).map_err(err)
}
