//! Aggregated verification of one constructed scaling function.

use std::f64::consts::FRAC_PI_4;

use crate::factor::{FactorSolution, LaurentSymbol};
use crate::filterbank::make_filter_pair;
use crate::scaling::RefinementMask;
use crate::symbol::{bezout_residual, QPolynomial};
use crate::RELIABLE_ORDER;

pub const BEZOUT_TOL: f64 = 1e-10;
pub const QMF_TOL: f64 = 1e-10;
pub const SUM_A_TOL: f64 = 1e-10;
pub const SUM_A_SQ_TOL: f64 = 1e-9;
pub const NONVANISHING_SLACK: f64 = 1e-9;
pub const ORTHONORMALITY_TOL: f64 = crate::scaling::ORTHONORMALITY_TOL;

/// One named check: the measured value, the limit it is compared against and
/// the outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    /// How `value` is compared with `limit`: `"<="`, `"<"` or `">="`.
    pub relation: &'static str,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            value,
            limit,
            relation: "<=",
            pass: value <= limit,
        }
    }

    fn below(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            value,
            limit,
            relation: "<",
            pass: value < limit,
        }
    }

    fn at_least(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            value,
            limit,
            relation: ">=",
            pass: value >= limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub branch: String,
    pub a: Vec<f64>,
    pub p: Vec<f64>,
    pub sum_a: f64,
    pub sum_a_sq: f64,
    pub checks: Vec<Check>,
    /// `make_filter_pair` accepted the mask.
    pub filter_pair_accepted: bool,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every check on `(Q_n, L, S_n, mask)`.
///
/// `mask` is taken separately from `solution` so a modified mask can be
/// certified (or rejected) against an otherwise valid construction.
pub fn verify(
    q: &QPolynomial,
    symbol: &LaurentSymbol,
    solution: &FactorSolution,
    mask: &RefinementMask,
    branch: &str,
) -> VerificationReport {
    let n = q.n;
    let bezout = bezout_residual(q, 1001).unwrap_or(f64::INFINITY);
    let sum_a = solution.sum_a();
    let sum_a_sq = solution.sum_a_sq();
    let l2_lhs = n as f64 * sum_a_sq;
    let l2_rhs = (2.0f64).powi(2 * n as i32 - 1);
    let min_abs = mask.min_abs_symbol(2001);

    let checks = vec![
        Check::at_most("bezout_residual", bezout, BEZOUT_TOL),
        Check::at_most("qmf_residual", mask.qmf_residual(2001), QMF_TOL),
        Check::at_most("sum_a", (sum_a - 1.0).abs(), SUM_A_TOL),
        Check::at_most("sum_a_sq", (sum_a_sq - symbol.c0()).abs(), SUM_A_SQ_TOL),
        Check::below("l2_bound_lhs", l2_lhs, l2_rhs),
        Check::at_least("l2_bound_rhs", l2_rhs, l2_lhs),
        Check::at_least(
            "min_abs_P_on_pipi",
            min_abs,
            FRAC_PI_4.cos().powi(n as i32) - NONVANISHING_SLACK,
        ),
        Check::at_most(
            "orthonormality_max_offdiag",
            mask.orthonormality_residual(),
            ORTHONORMALITY_TOL,
        ),
    ];
    let filter_pair_accepted = make_filter_pair(mask).is_ok();
    let mut warnings = Vec::new();
    if n > RELIABLE_ORDER {
        warnings.push(format!(
            "order {n} exceeds {RELIABLE_ORDER}; double-precision factorization is not validated here"
        ));
    }
    let pass = filter_pair_accepted && checks.iter().all(|c| c.pass);
    VerificationReport {
        n,
        branch: branch.to_string(),
        a: solution.a.clone(),
        p: mask.p.clone(),
        sum_a,
        sum_a_sq,
        checks,
        filter_pair_accepted,
        warnings,
        pass,
    }
}
