//! Exact polynomials over the rationals and the conversion between the
//! monomial basis in `x = cos(ξ/2)` and cosine series in `ξ/2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a rational to the nearest `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    // BigRational::to_f64 handles huge numerators/denominators without
    // overflowing through the intermediate integers.
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Univariate polynomial with exact rational coefficients in ascending powers.
///
/// Trailing zeros are stripped, so the zero polynomial has no coefficients
/// and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Coefficients given as `(numerator, denominator)` pairs.
    pub fn from_fractions(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    /// Horner evaluation in exact arithmetic.
    pub fn eval_exact(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders as `4 - 9/2 x + 3/2 x^2`.
impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 if show_coeff => f.write_str(" x")?,
                1 => f.write_str("x")?,
                _ if show_coeff => write!(f, " x^{k}")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Chebyshev polynomials of the first kind `T_0..=T_max` via
/// `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn chebyshev_t(max: usize) -> Vec<RationalPoly> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(RationalPoly::one());
    if max == 0 {
        return out;
    }
    out.push(RationalPoly::x());
    let two_x = RationalPoly::from_i64(&[0, 2]);
    for k in 1..max {
        let next = &(&two_x * &out[k]) - &out[k - 1];
        out.push(next);
    }
    out
}

/// Exact cosine series `Σ c_k cos(kξ/2)`.
///
/// Under `x = cos(ξ/2)` each `cos(kξ/2)` is `T_k(x)`, so a series of length
/// `m+1` corresponds to a polynomial of degree at most `m`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CosineSeries {
    coeffs: Vec<Rational>,
}

impl CosineSeries {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_fractions(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Evaluates `Σ c_k cos(kξ/2)`.
    pub fn eval(&self, xi: f64) -> f64 {
        eval_cosine_series(&self.to_f64(), xi)
    }
}

/// `Σ c_k T_k(x)`.
pub fn cosine_to_poly(s: &CosineSeries) -> RationalPoly {
    if s.coeffs.is_empty() {
        return RationalPoly::zero();
    }
    let cheb = chebyshev_t(s.coeffs.len() - 1);
    s.coeffs
        .iter()
        .zip(&cheb)
        .fold(RationalPoly::zero(), |acc, (c, t)| &acc + &t.scale(c))
}

/// Inverse of [`cosine_to_poly`]: peels off the top Chebyshev term,
/// whose leading coefficient is `2^{k-1}`, one degree at a time.
pub fn poly_to_cosine(p: &RationalPoly) -> CosineSeries {
    let Some(deg) = p.degree() else {
        return CosineSeries::default();
    };
    let cheb = chebyshev_t(deg);
    let mut rest = p.clone();
    let mut out = vec![Rational::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k) / cheb[k].leading().unwrap();
        if !c.is_zero() {
            rest = &rest - &cheb[k].scale(&c);
        }
        out[k] = c;
    }
    debug_assert!(rest.is_zero());
    CosineSeries::new(out)
}

/// Cosine coefficients of `|Σ_i a_i z^i|²` at `z = e^{-iξ/2}`:
/// `[Σ a_i², 2Σ a_i a_{i+1}, …, 2 a_1 a_n]`.
pub fn autocorrelation_series(a: &[f64]) -> Vec<f64> {
    (0..a.len())
        .map(|k| {
            let s: f64 = a.iter().zip(&a[k..]).map(|(x, y)| x * y).sum();
            if k == 0 {
                s
            } else {
                2.0 * s
            }
        })
        .collect()
}

/// `Σ c_k cos(kξ/2)` for real coefficients.
pub fn eval_cosine_series(c: &[f64], xi: f64) -> f64 {
    c.iter()
        .enumerate()
        .map(|(k, ck)| ck * (k as f64 * xi / 2.0).cos())
        .sum()
}
