//! B-spline masks and the polynomial `Q_n` solving
//! `((1+x)/2)^n Q(x) + ((1-x)/2)^n Q(-x) = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dd::Dd;
use crate::poly::{ratio, Rational, RationalPoly};
use crate::{Error, Result, MAX_ORDER};

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidOrder { n, max: MAX_ORDER });
    }
    Ok(())
}

/// Row `m` of Pascal's triangle.
pub fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// Mask of the order-`n` cardinal B-spline, `P_n(z) = ((1+z)/2)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsplineMask {
    pub n: usize,
    /// Coefficients of `z^0..=z^n`.
    pub coeffs: Vec<Rational>,
}

impl BsplineMask {
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(crate::poly::rational_to_f64)
            .collect()
    }
}

pub fn bspline_mask(n: usize) -> Result<BsplineMask> {
    check_order(n)?;
    let den = BigInt::one() << n;
    let coeffs = binomial_row(n)
        .into_iter()
        .map(|c| Rational::new(c, den.clone()))
        .collect();
    Ok(BsplineMask { n, coeffs })
}

/// `Q_n`, the degree `n-1` polynomial with `Q_n(cos(ξ/2)) = |S_n(e^{-iξ/2})|²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    pub n: usize,
    pub poly: RationalPoly,
}

impl QPolynomial {
    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(x)
    }
}

fn half_plus() -> RationalPoly {
    RationalPoly::new(vec![ratio(1, 2), ratio(1, 2)])
}

fn half_minus() -> RationalPoly {
    RationalPoly::new(vec![ratio(1, 2), ratio(-1, 2)])
}

/// Lorentz form: `Q_n(x) = Σ_{i<n} C(2n-1, i) ((1+x)/2)^{n-1-i} ((1-x)/2)^i`.
pub fn lorentz_q(n: usize) -> Result<QPolynomial> {
    check_order(n)?;
    let binom = binomial_row(2 * n - 1);
    let plus = half_plus();
    let minus = half_minus();
    let plus_pows: Vec<RationalPoly> = (0..n).map(|k| plus.pow(k as u32)).collect();
    let minus_pows: Vec<RationalPoly> = (0..n).map(|k| minus.pow(k as u32)).collect();
    let poly = (0..n).fold(RationalPoly::zero(), |acc, i| {
        let term = &plus_pows[n - 1 - i] * &minus_pows[i];
        &acc + &term.scale(&Rational::from_integer(binom[i].clone()))
    });
    Ok(QPolynomial { n, poly })
}

/// Extended Euclid over the rationals with monic remainders.
///
/// Returns `(g, s, t)` with `a·s + b·t = g` and `g` monic (or zero when both
/// inputs vanish).
pub fn extended_gcd(
    a: &RationalPoly,
    b: &RationalPoly,
) -> (RationalPoly, RationalPoly, RationalPoly) {
    let norm = |p: &RationalPoly| p.leading().map(|l| l.recip()).unwrap_or_else(Rational::one);

    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (RationalPoly::one(), RationalPoly::zero());
    let (mut t0, mut t1) = (RationalPoly::zero(), RationalPoly::one());

    let k0 = norm(&r0);
    r0 = r0.scale(&k0);
    s0 = s0.scale(&k0);
    let k1 = norm(&r1);
    r1 = r1.scale(&k1);
    t1 = t1.scale(&k1);

    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        let k = norm(&r);
        r0 = std::mem::replace(&mut r1, r.scale(&k));
        s0 = std::mem::replace(&mut s1, s.scale(&k));
        t0 = std::mem::replace(&mut t1, t.scale(&k));
    }
    (r0, s0, t0)
}

/// Solves `a·s + b·t = 1` for `a = ((1+x)/2)^n`, `b = ((1-x)/2)^n` by the
/// extended Euclidean algorithm. `s` is the unique solution of degree below
/// `n`, so it must coincide with [`lorentz_q`]; `t` is returned alongside.
pub fn eea_q(n: usize) -> Result<(QPolynomial, RationalPoly)> {
    check_order(n)?;
    let a = half_plus().pow(n as u32);
    let b = half_minus().pow(n as u32);
    let (g, s, t) = extended_gcd(&a, &b);
    assert!(
        g == RationalPoly::one(),
        "extended Euclid on coprime powers returned non-unit gcd {g}"
    );
    debug_assert!(s.degree().is_none_or(|d| d < n) && t.degree().is_none_or(|d| d < n));
    Ok((QPolynomial { n, poly: s }, t))
}

/// Max over `grid_size` equispaced `x ∈ [-1, 1]` of
/// `|((1+x)/2)^n Q(x) + ((1-x)/2)^n Q(-x) - 1|`, evaluated in double-double.
pub fn bezout_residual(q: &QPolynomial, grid_size: usize) -> Result<f64> {
    if grid_size < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid_size must be at least 2, got {grid_size}"
        )));
    }
    let coeffs: Vec<Dd> = q.poly.coeffs().iter().map(Dd::from_rational).collect();
    let horner = |x: Dd| {
        coeffs
            .iter()
            .rev()
            .fold(Dd::new(0.0), |acc, &c| acc * x + c)
    };
    let pow = |b: Dd| (0..q.n).fold(Dd::new(1.0), |acc, _| acc * b);
    let one = Dd::new(1.0);
    let half = Dd::new(0.5);
    let res = (0..grid_size)
        .map(|j| {
            let x = Dd::new(-1.0 + 2.0 * j as f64 / (grid_size - 1) as f64);
            let lhs = pow((one + x) * half) * horner(x) + pow((one - x) * half) * horner(-x);
            (lhs - one).to_f64().abs()
        })
        .fold(0.0, f64::max);
    Ok(res)
}

/// Exact form of the Bezout identity, returned as the residual polynomial
/// (zero when the identity holds).
pub fn bezout_exact(q: &QPolynomial) -> RationalPoly {
    let a = half_plus().pow(q.n as u32);
    let b = half_minus().pow(q.n as u32);
    let lhs = &(&a * &q.poly) + &(&b * &q.poly.reflect());
    &lhs - &RationalPoly::one()
}

/// `true` when every coefficient of `p` is zero.
pub fn is_identically_zero(p: &RationalPoly) -> bool {
    p.coeffs().iter().all(Zero::is_zero)
}
