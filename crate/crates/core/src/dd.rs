//! Double-double arithmetic (about 32 significant digits), used to polish
//! roots and assemble factor coefficients beyond `f64` precision.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use crate::poly::Rational;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let hi = crate::poly::rational_to_f64(r);
        let Some(hi_exact) = Rational::from_float(hi) else {
            return Dd::new(hi);
        };
        let lo = (r - hi_exact).to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // one Newton step from the f64 root
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let corr = ((self.hi - p) - e + self.lo) / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, corr);
        Dd { hi, lo }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number over [`Dd`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: CDd = CDd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn new(re: Dd, im: Dd) -> Self {
        CDd { re, im }
    }

    pub fn from_c64(z: num_complex::Complex64) -> Self {
        CDd::new(Dd::new(z.re), Dd::new(z.im))
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(self) -> Self {
        CDd::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn inv(self) -> Self {
        let d = self.norm_sqr();
        CDd::new(self.re / d, -self.im / d)
    }

    pub fn scale(self, s: Dd) -> Self {
        CDd::new(self.re * s, self.im * s)
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, b: CDd) -> CDd {
        CDd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, b: CDd) -> CDd {
        CDd::new(self.re - b.re, self.im - b.im)
    }
}

impl Neg for CDd {
    type Output = CDd;
    fn neg(self) -> CDd {
        CDd::new(-self.re, -self.im)
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, b: CDd) -> CDd {
        CDd::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for CDd {
    type Output = CDd;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, b: CDd) -> CDd {
        self * b.inv()
    }
}

/// `p(z)` and `p'(z)` for ascending coefficients.
pub fn eval_with_derivative(coeffs: &[Dd], z: CDd) -> (CDd, CDd) {
    let mut p = CDd::ZERO;
    let mut dp = CDd::ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + CDd::new(c, Dd::ZERO);
    }
    (p, dp)
}

/// Newton iteration in double-double from an `f64` estimate of a simple root.
pub fn polish_root(coeffs: &[Dd], start: num_complex::Complex64) -> CDd {
    let mut z = CDd::from_c64(start);
    for _ in 0..20 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm_sqr().hi == 0.0 {
            break;
        }
        let step = p / dp;
        z = z - step;
        let rel = (step.norm_sqr().hi / z.norm_sqr().hi.max(1e-300)).sqrt();
        if !rel.is_finite() || rel < 1e-31 {
            break;
        }
    }
    z
}
