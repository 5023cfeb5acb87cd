//! Double-double arithmetic (about 32 significant digits).
//!
//! The moment route of the bilinear functionals sums long alternating
//! series whose exact value is zero; in plain `f64` the cancellation leaves
//! residues of 1e-7 relative to the norms at degree 8. Carrying the
//! polynomial coefficients and moment ratios in double-double removes that
//! floor.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Unit roundoff of the double-double format, `2^-104`.
pub const DD_EPS: f64 = 4.930_380_657_631_324e-32;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
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

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdReal {
    pub hi: f64,
    pub lo: f64,
}

impl DdReal {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
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
}

impl Add for DdReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DdReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DdReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DdReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DdReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Two Newton-style correction steps on the f64 quotient.
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * DdReal::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * DdReal::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + DdReal::from_f64(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdComplex {
    pub re: DdReal,
    pub im: DdReal,
}

impl DdComplex {
    pub const ZERO: Self = Self {
        re: DdReal::ZERO,
        im: DdReal::ZERO,
    };
    pub const ONE: Self = Self {
        re: DdReal::ONE,
        im: DdReal::ZERO,
    };

    pub fn from_c64(z: Complex64) -> Self {
        Self {
            re: DdReal::from_f64(z.re),
            im: DdReal::from_f64(z.im),
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_c64(Complex64::new(x, 0.0))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `|re| + |im|` rounded to f64; cheap magnitude proxy.
    pub fn l1_norm(self) -> f64 {
        self.re.to_f64().abs() + self.im.to_f64().abs()
    }

    pub fn is_zero(self) -> bool {
        self.re.hi == 0.0 && self.im.hi == 0.0
    }
}

impl Add for DdComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for DdComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for DdComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Div for DdComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let den = rhs.re * rhs.re + rhs.im * rhs.im;
        let num = self
            * Self {
                re: rhs.re,
                im: -rhs.im,
            };
        Self {
            re: num.re / den,
            im: num.im / den,
        }
    }
}
