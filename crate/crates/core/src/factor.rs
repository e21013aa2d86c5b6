//! Spectral factorization of `Q_n(cos(ξ/2))` into `|S_n(e^{-iξ/2})|²` with
//! `S_n(z) = a_1 z + … + a_n z^n` and `Σ a_i = 1`.
//!
//! The symbol is written as a Laurent polynomial in `z`; the roots of
//! `z^{n-1} L(z)` come in reciprocal pairs `(r, 1/r)`. Each real pair, and each
//! conjugate quadruple `{r, r̄, 1/r, 1/r̄}`, forms one group. A branch picks the
//! outer or the inner half of every group, which keeps the coefficients real.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dd::{polish_root, CDd, Dd};
use crate::poly::{eval_cosine_series, poly_to_cosine, ratio, CosineSeries};
use crate::roots::aberth;
use crate::symbol::QPolynomial;
use crate::{Error, Result};

/// Relative tolerance for matching `r` with its reciprocal partner.
pub const PAIRING_TOL: f64 = 1e-6;

/// Relative tolerance on imaginary-part symmetry for conjugate grouping.
pub const CONJUGATE_TOL: f64 = 1e-9;

/// Roots closer than this (in `|log|r||`) to the unit circle are rejected.
pub const UNIT_CIRCLE_GAP: f64 = 1e-8;

/// `L(z) = c_0 + Σ_{k≥1} (c_k/2)(z^k + z^{-k})`, so that
/// `L(e^{-iξ/2}) = Σ c_k cos(kξ/2) = Q_n(cos(ξ/2))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSymbol {
    pub n: usize,
    /// Exact cosine coefficients `c_0..c_{n-1}`.
    pub series: CosineSeries,
    /// The same coefficients in floating point.
    pub coeffs: Vec<f64>,
}

impl LaurentSymbol {
    pub fn c0(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    /// `L(e^{-iξ/2})`.
    pub fn eval_angle(&self, xi: f64) -> f64 {
        eval_cosine_series(&self.coeffs, xi)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zi = z.inv();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                if k == 0 {
                    Complex64::new(c, 0.0)
                } else {
                    (z.powi(k as i32) + zi.powi(k as i32)) * (c / 2.0)
                }
            })
            .sum()
    }

    /// Ascending coefficients of `z^{n-1} L(z)` (degree `2(n-1)`).
    pub fn polynomial(&self) -> Vec<f64> {
        let m = self.n - 1;
        let mut out = vec![0.0; 2 * m + 1];
        out[m] = self.c0();
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            out[m + k] = c / 2.0;
            out[m - k] = c / 2.0;
        }
        out
    }

    /// [`Self::polynomial`] from the exact coefficients, in double-double.
    pub fn polynomial_extended(&self) -> Vec<Dd> {
        let m = self.n - 1;
        let half = ratio(1, 2);
        let mut out = vec![Dd::ZERO; 2 * m + 1];
        for (k, c) in self.series.coeffs().iter().enumerate() {
            if k == 0 {
                out[m] = Dd::from_rational(c);
            } else {
                let v = Dd::from_rational(&(c * &half));
                out[m + k] = v;
                out[m - k] = v;
            }
        }
        out
    }
}

pub fn laurent_symbol(q: &QPolynomial) -> LaurentSymbol {
    let series = poly_to_cosine(&q.poly);
    let mut coeffs = series.to_f64();
    coeffs.resize(q.n, 0.0);
    LaurentSymbol {
        n: q.n,
        series,
        coeffs,
    }
}

/// One reciprocal group: a real pair or a conjugate quadruple.
#[derive(Clone, Debug, PartialEq)]
pub struct RootGroup {
    /// Members with modulus above one (one real root or a conjugate pair).
    pub outer: Vec<Complex64>,
    /// Reciprocals of `outer`, in the same order.
    pub inner: Vec<Complex64>,
    outer_ext: Vec<CDd>,
}

impl RootGroup {
    fn from_outer(outer_ext: Vec<CDd>) -> Self {
        Self {
            outer: outer_ext.iter().map(|r| r.to_c64()).collect(),
            inner: outer_ext.iter().map(|r| r.inv().to_c64()).collect(),
            outer_ext,
        }
    }

    pub fn is_real(&self) -> bool {
        self.outer.len() == 1
    }

    fn select(&self, outer: bool) -> Vec<CDd> {
        if outer {
            self.outer_ext.clone()
        } else {
            self.outer_ext.iter().map(|r| r.inv()).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// All `2(n-1)` roots of `z^{n-1} L(z)` after symmetrization.
    pub roots: Vec<Complex64>,
    /// Groups ordered by outer modulus, then by argument.
    pub groups: Vec<RootGroup>,
}

impl RootSet {
    pub fn branch_count(&self) -> u64 {
        1u64 << self.groups.len()
    }

    /// Monic polynomial (ascending) with all roots, for reconstruction checks.
    pub fn monic_polynomial(&self) -> Vec<f64> {
        poly_from_roots(&self.roots)
            .into_iter()
            .map(|c| c.re)
            .collect()
    }
}

fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (k, &c) in out.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        out = next;
    }
    out
}

fn poly_from_roots_ext(roots: &[CDd]) -> Vec<CDd> {
    let mut out = vec![CDd::ONE];
    for &r in roots {
        let mut next = vec![CDd::ZERO; out.len() + 1];
        for (k, &c) in out.iter().enumerate() {
            next[k + 1] = next[k + 1] + c;
            next[k] = next[k] - c * r;
        }
        out = next;
    }
    out
}

fn pairing_failure(r: Complex64) -> Error {
    Error::PairingFailure {
        root: format!("{:.6}{:+.6}i", r.re, r.im),
    }
}

/// Roots of `z^{n-1} L(z)`, grouped for branch selection.
///
/// Aberth iteration in `f64` locates the roots; each is then polished by
/// Newton steps in double-double against the exact coefficients before the
/// reciprocal and conjugate matching.
pub fn symbol_roots(symbol: &LaurentSymbol) -> Result<RootSet> {
    if symbol.n <= 1 {
        return Ok(RootSet {
            roots: Vec::new(),
            groups: Vec::new(),
        });
    }
    let m = symbol.n - 1;
    let exact = symbol.polynomial_extended();
    let polished: Vec<CDd> = aberth(&symbol.polynomial())?
        .into_iter()
        .map(|r| polish_root(&exact, r))
        .collect();

    let (outer, mut inner): (Vec<CDd>, Vec<CDd>) =
        polished.into_iter().partition(|r| r.norm_sqr().hi > 1.0);
    if let Some(r) = outer
        .iter()
        .chain(&inner)
        .find(|r| r.norm_sqr().hi.ln().abs() / 2.0 <= UNIT_CIRCLE_GAP)
    {
        return Err(pairing_failure(r.to_c64()));
    }
    if outer.len() != m {
        let r = outer.first().or(inner.first()).copied().unwrap_or_default();
        return Err(pairing_failure(r.to_c64()));
    }

    // Reciprocal pairing; the inner partner is dropped in favour of 1/r.
    for r in &outer {
        let target = r.inv().to_c64();
        let (idx, dist) = inner
            .iter()
            .enumerate()
            .map(|(i, s)| (i, (s.to_c64() - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| pairing_failure(r.to_c64()))?;
        if dist > PAIRING_TOL * target.norm() {
            return Err(pairing_failure(r.to_c64()));
        }
        inner.swap_remove(idx);
    }

    // Conjugate grouping among the outer roots.
    let mut groups = Vec::new();
    let mut pending = outer;
    while let Some(r) = pending.pop() {
        let rc = r.to_c64();
        if rc.im.abs() <= CONJUGATE_TOL * rc.norm() {
            groups.push(RootGroup::from_outer(vec![CDd::new(r.re, Dd::ZERO)]));
            continue;
        }
        let conj = rc.conj();
        let (idx, dist) = pending
            .iter()
            .enumerate()
            .map(|(i, s)| (i, (s.to_c64() - conj).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| pairing_failure(rc))?;
        if dist > CONJUGATE_TOL * rc.norm() {
            return Err(pairing_failure(rc));
        }
        let s = pending.swap_remove(idx);
        let half = Dd::new(0.5);
        let upper = CDd::new((r.re + s.re) * half, (r.im.abs() + s.im.abs()) * half);
        groups.push(RootGroup::from_outer(vec![upper, upper.conj()]));
    }
    groups.sort_by(|a, b| {
        let (ra, rb) = (a.outer[0], b.outer[0]);
        ra.norm()
            .total_cmp(&rb.norm())
            .then(ra.arg().abs().total_cmp(&rb.arg().abs()))
    });
    let roots = groups
        .iter()
        .flat_map(|g| g.outer.iter().chain(&g.inner).copied())
        .collect();
    Ok(RootSet { roots, groups })
}

/// Which half of each reciprocal group goes into `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Branch {
    /// Default selection: inner roots for `n = 3`, outer roots otherwise.
    #[default]
    Paper,
    /// Every root of modulus above one.
    Outer,
    /// Every root of modulus below one (minimum phase in `z`).
    Inner,
    /// Position in the lexicographic order of group choice bits; group 0 is
    /// the most significant bit and a set bit selects the outer half.
    Index(u64),
}

impl Branch {
    /// Choice bits, one per group (`true` = outer half).
    pub fn resolve(&self, n: usize, groups: usize) -> Result<Vec<bool>> {
        match self {
            Branch::Paper if n == 3 => Ok(vec![false; groups]),
            Branch::Paper | Branch::Outer => Ok(vec![true; groups]),
            Branch::Inner => Ok(vec![false; groups]),
            Branch::Index(k) => {
                let count = 1u64 << groups;
                if *k >= count {
                    return Err(Error::BranchInvalid(format!(
                        "index {k} out of range: order {n} has {count} branches"
                    )));
                }
                Ok((0..groups)
                    .map(|g| (k >> (groups - 1 - g)) & 1 == 1)
                    .collect())
            }
        }
    }
}

pub fn bits_to_index(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Paper => f.write_str("paper"),
            Branch::Outer => f.write_str("outer"),
            Branch::Inner => f.write_str("inner"),
            Branch::Index(k) => write!(f, "index:{k}"),
        }
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Branch::Paper),
            "outer" => Ok(Branch::Outer),
            "inner" => Ok(Branch::Inner),
            _ => s
                .strip_prefix("index:")
                .and_then(|k| k.parse().ok())
                .map(Branch::Index)
                .ok_or_else(|| {
                    Error::BranchInvalid(format!(
                        "expected paper, outer, inner or index:<k>, got {s:?}"
                    ))
                }),
        }
    }
}

/// Coefficients of `S_n` for one branch.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSolution {
    pub n: usize,
    /// `a_1..a_n`.
    pub a: Vec<f64>,
    /// Choice bits per reciprocal group (`true` = outer half).
    pub choice: Vec<bool>,
    /// `+1` or `-1`: the value of `Σ a_i`.
    pub sign: i8,
    pub roots_selected: Vec<Complex64>,
    a_ext: Vec<Dd>,
}

impl FactorSolution {
    pub fn index(&self) -> u64 {
        bits_to_index(&self.choice)
    }

    /// Choice bits rendered as `0`/`1`, group 0 first.
    pub fn choice_string(&self) -> String {
        self.choice
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// `a_1..a_n` in double-double, as assembled from the polished roots.
    pub fn a_extended(&self) -> &[Dd] {
        &self.a_ext
    }

    /// `Σ a_i`, accumulated in double-double.
    pub fn sum_a(&self) -> f64 {
        self.a_ext.iter().fold(Dd::ZERO, |acc, &x| acc + x).to_f64()
    }

    /// `Σ a_i²`, accumulated in double-double.
    pub fn sum_a_sq(&self) -> f64 {
        self.a_ext
            .iter()
            .fold(Dd::ZERO, |acc, &x| acc + x * x)
            .to_f64()
    }

    /// `S_n(z) = Σ a_k z^k`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.a
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
            * z
    }

    /// Max over `grid` points `ξ ∈ [0, 2π]` of `| |S(e^{-iξ/2})|² - L(e^{-iξ/2}) |`.
    pub fn spectrum_residual(&self, symbol: &LaurentSymbol, grid: usize) -> f64 {
        let grid = grid.max(2);
        (0..grid)
            .map(|j| {
                let xi = 2.0 * std::f64::consts::PI * j as f64 / (grid - 1) as f64;
                let z = Complex64::from_polar(1.0, -xi / 2.0);
                (self.eval(z).norm_sqr() - symbol.eval_angle(xi)).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn negated(&self) -> Self {
        Self {
            a: self.a.iter().map(|x| -x).collect(),
            a_ext: self.a_ext.iter().map(|&x| -x).collect(),
            sign: -self.sign,
            ..self.clone()
        }
    }
}

/// Builds `S_n(z) = z · Π (z - r) / Π (1 - r)` from an explicit selection.
///
/// The selection must hold `n - 1` roots and be closed under conjugation.
pub fn factor_from_selection(n: usize, selected: &[Complex64]) -> Result<FactorSolution> {
    let ext: Vec<CDd> = selected.iter().map(|&r| CDd::from_c64(r)).collect();
    factor_from_selection_ext(n, &ext)
}

fn factor_from_selection_ext(n: usize, selected: &[CDd]) -> Result<FactorSolution> {
    if selected.len() + 1 != n {
        return Err(Error::BranchInvalid(format!(
            "order {n} needs {} roots, got {}",
            n - 1,
            selected.len()
        )));
    }
    let approx: Vec<Complex64> = selected.iter().map(|r| r.to_c64()).collect();
    for r in &approx {
        if r.im.abs() > CONJUGATE_TOL * r.norm()
            && !approx
                .iter()
                .any(|s| (s - r.conj()).norm() <= CONJUGATE_TOL * r.norm())
        {
            return Err(Error::BranchInvalid(format!(
                "selection is not closed under conjugation (root {r})"
            )));
        }
    }
    let coeffs = poly_from_roots_ext(selected);
    let at_one = coeffs.iter().fold(CDd::ZERO, |acc, &c| acc + c);
    let scale = at_one.inv();
    let a_ext: Vec<Dd> = coeffs.iter().map(|&c| (c * scale).re).collect();
    Ok(FactorSolution {
        n,
        a: a_ext.iter().map(|x| x.to_f64()).collect(),
        choice: Vec::new(),
        sign: 1,
        roots_selected: approx,
        a_ext,
    })
}

fn factor_with_roots(
    symbol: &LaurentSymbol,
    roots: &RootSet,
    choice: Vec<bool>,
) -> Result<FactorSolution> {
    let selected: Vec<CDd> = roots
        .groups
        .iter()
        .zip(&choice)
        .flat_map(|(g, &outer)| g.select(outer))
        .collect();
    let mut sol = factor_from_selection_ext(symbol.n, &selected)?;
    sol.choice = choice;
    Ok(sol)
}

pub fn spectral_factor(symbol: &LaurentSymbol, branch: &Branch) -> Result<FactorSolution> {
    let roots = symbol_roots(symbol)?;
    let choice = branch.resolve(symbol.n, roots.groups.len())?;
    factor_with_roots(symbol, &roots, choice)
}

/// Every conjugation-closed branch with `Σ a_i = 1`, in index order (`2^g` entries).
pub fn enumerate_solutions(symbol: &LaurentSymbol) -> Result<Vec<FactorSolution>> {
    let roots = symbol_roots(symbol)?;
    let g = roots.groups.len();
    (0..roots.branch_count())
        .map(|k| factor_with_roots(symbol, &roots, Branch::Index(k).resolve(symbol.n, g)?))
        .collect()
}

/// All real solutions of the coefficient system `|S_n|² = Q_n`: the
/// [`enumerate_solutions`] family followed by its negation (`Σ a_i = -1`).
pub fn enumerate_system_solutions(symbol: &LaurentSymbol) -> Result<Vec<FactorSolution>> {
    let plus = enumerate_solutions(symbol)?;
    let minus: Vec<_> = plus.iter().map(FactorSolution::negated).collect();
    Ok(plus.into_iter().chain(minus).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;
    use crate::symbol::lorentz_q;

    fn symbol(n: usize) -> LaurentSymbol {
        laurent_symbol(&lorentz_q(n).unwrap())
    }

    #[test]
    fn symbol_coefficients() {
        assert_eq!(symbol(1).series.coeffs(), &[ratio(1, 1)]);
        assert_eq!(
            symbol(3).series.coeffs(),
            &[ratio(19, 4), ratio(-9, 2), ratio(3, 4)]
        );
        assert_eq!(
            symbol(4).series.coeffs(),
            &[ratio(13, 1), ratio(-131, 8), ratio(5, 1), ratio(-5, 8)]
        );
    }

    #[test]
    fn symbol_matches_q_on_circle() {
        for n in 1..=8 {
            let q = lorentz_q(n).unwrap();
            let l = laurent_symbol(&q);
            for j in 0..50 {
                let xi = 0.13 * j as f64;
                let z = Complex64::from_polar(1.0, -xi / 2.0);
                let want = q.eval((xi / 2.0).cos());
                assert!((l.eval_angle(xi) - want).abs() < 1e-9 * want);
                assert!((l.eval(z).re - want).abs() < 1e-9 * want);
                assert!(l.eval(z).im.abs() < 1e-9 * want);
            }
        }
    }

    #[test]
    fn n2_roots() {
        let r = symbol_roots(&symbol(2)).unwrap();
        let s3 = 3f64.sqrt();
        assert_eq!(r.groups.len(), 1);
        assert!(r.groups[0].is_real());
        assert!((r.groups[0].outer[0].re - (2.0 + s3)).abs() < 1e-12);
        assert!((r.groups[0].inner[0].re - (2.0 - s3)).abs() < 1e-12);
    }

    #[test]
    fn n1_is_haar() {
        let l = symbol(1);
        assert!(symbol_roots(&l).unwrap().roots.is_empty());
        let all = enumerate_solutions(&l).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].a, vec![1.0]);
    }

    #[test]
    fn n3_roots_multiply_to_one() {
        let r = symbol_roots(&symbol(3)).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert_eq!(r.groups.len(), 1);
        let prod: Complex64 = r.roots.iter().product();
        assert!((prod - 1.0).norm() < 1e-12);
    }

    #[test]
    fn branch_parsing() {
        assert_eq!("paper".parse::<Branch>().unwrap(), Branch::Paper);
        assert_eq!("index:5".parse::<Branch>().unwrap(), Branch::Index(5));
        assert!("index:x".parse::<Branch>().is_err());
        assert!("sideways".parse::<Branch>().is_err());
        assert_eq!(Branch::Index(3).to_string(), "index:3");
    }

    #[test]
    fn branch_index_bits() {
        assert_eq!(Branch::Index(2).resolve(4, 2).unwrap(), vec![true, false]);
        assert_eq!(Branch::Outer.resolve(4, 2).unwrap(), vec![true, true]);
        assert!(matches!(
            Branch::Index(4).resolve(4, 2),
            Err(Error::BranchInvalid(_))
        ));
        assert_eq!(bits_to_index(&[true, false, true]), 5);
    }

    #[test]
    fn non_conjugate_selection_rejected() {
        let r = symbol_roots(&symbol(3)).unwrap();
        let g = &r.groups[0];
        let bad = [g.outer[0], g.inner[1]];
        assert!(matches!(
            factor_from_selection(3, &bad),
            Err(Error::BranchInvalid(_))
        ));
    }

    #[test]
    fn n2_both_branches_are_reversals() {
        let all = enumerate_solutions(&symbol(2)).unwrap();
        assert_eq!(all.len(), 2);
        let (a, b) = (&all[0].a, &all[1].a);
        assert!((a[0] - b[1]).abs() < 1e-12 && (a[1] - b[0]).abs() < 1e-12);
        for s in &all {
            // the n=2 system: a1² + a2² = 2, 2 a1 a2 = -1, a1 + a2 = 1
            assert!((s.sum_a_sq() - 2.0).abs() < 1e-12);
            assert!((2.0 * s.a[0] * s.a[1] + 1.0).abs() < 1e-12);
        }
    }
}
