//! Dense complex polynomials and the first-order operators whose products
//! generate the Laguerre and Jacobi polynomials.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::dd::DdComplex;

/// Scalar field for polynomial coefficients.
pub trait Coeff:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    fn is_zero(self) -> bool;

    fn from_f64(x: f64) -> Self {
        Self::from_c64(Complex64::new(x, 0.0))
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Coeff for DdComplex {
    fn zero() -> Self {
        DdComplex::ZERO
    }
    fn one() -> Self {
        DdComplex::ONE
    }
    fn from_c64(z: Complex64) -> Self {
        DdComplex::from_c64(z)
    }
    fn to_c64(self) -> Complex64 {
        DdComplex::to_c64(self)
    }
    fn is_zero(self) -> bool {
        DdComplex::is_zero(self)
    }
}

/// Dense polynomial, `coeffs[k]` multiplies `x^k`. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Coeff = Complex64> {
    coeffs: Vec<T>,
}

/// Polynomial with double-double coefficients.
pub type DdPolynomial = Polynomial<DdComplex>;

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(k: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<T> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: T) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// `x p(x)`
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::from_f64(k as f64))
                .collect(),
        )
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }

    /// `p(1 - x)`, by Horner's scheme on the composed argument.
    pub fn reflect(&self) -> Self {
        let one_minus_x = Self::new(vec![T::one(), -T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, &c| {
            &(&acc * &one_minus_x) + &Self::constant(c)
        })
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn to_c64(&self) -> Polynomial<Complex64> {
        self.map(|c| c.to_c64())
    }

    /// Divides by the leading coefficient. `None` for the zero polynomial.
    pub fn monic(&self) -> Option<Self>
    where
        T: std::ops::Div<Output = T>,
    {
        let lead = self.leading()?;
        Some(Self::new(self.coeffs.iter().map(|&c| c / lead).collect()))
    }
}

impl Polynomial<Complex64> {
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `sum |c_k| r^k`, the weighted l1 norm on the disk of radius `r`.
    pub fn l1_norm(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn to_dd(&self) -> DdPolynomial {
        self.map(DdComplex::from_c64)
    }
}

fn combine<T: Coeff>(a: &[T], b: &[T], f: impl Fn(T, T) -> T) -> Vec<T> {
    (0..a.len().max(b.len()))
        .map(|k| {
            let x = a.get(k).copied().unwrap_or_else(T::zero);
            let y = b.get(k).copied().unwrap_or_else(T::zero);
            f(x, y)
        })
        .collect()
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        Polynomial::new(combine(&self.coeffs, &rhs.coeffs, |x, y| x + y))
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        Polynomial::new(combine(&self.coeffs, &rhs.coeffs, |x, y| x - y))
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

/// Which polynomial ring operation [`poly_arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<T: Coeff>(a: &Polynomial<T>, b: &Polynomial<T>, op: ArithOp) -> Polynomial<T> {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

/// Parameters of the first-order operators `A_k`.
///
/// * Laguerre: `A_k = k + alpha - x + x d/dx`
/// * Jacobi on `[0, 1]`: `A_k = k + alpha - (2k + alpha + beta) x + (x - x^2) d/dx`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorFamily {
    Laguerre { alpha: Complex64 },
    Jacobi { alpha: Complex64, beta: Complex64 },
}

/// `A_k p`, by exact coefficient manipulation. Never fails: a Jacobi
/// product may lose degree when `alpha + beta` is a negative integer, and
/// the caller decides whether that is acceptable.
///
/// # Panics
///
/// If `k == 0`.
pub fn apply_operator<T: Coeff>(p: &Polynomial<T>, k: usize, family: &OperatorFamily) -> Polynomial<T> {
    assert!(k >= 1, "operator index starts at 1");
    let kf = T::from_f64(k as f64);
    let dp = p.derivative();
    match *family {
        OperatorFamily::Laguerre { alpha } => {
            let shift = kf + T::from_c64(alpha);
            let a = p.scale(shift);
            let b = p.mul_x();
            let c = dp.mul_x();
            &(&a - &b) + &c
        }
        OperatorFamily::Jacobi { alpha, beta } => {
            let alpha_t = T::from_c64(alpha);
            let beta_t = T::from_c64(beta);
            let shift = kf + alpha_t;
            let slope = kf + kf + alpha_t + beta_t;
            let a = p.scale(shift);
            let b = p.mul_x().scale(slope);
            let xdp = dp.mul_x();
            let x2dp = xdp.mul_x();
            &(&(&a - &b) + &xdp) - &x2dp
        }
    }
}

/// `A_1 A_2 ... A_n 1`.
pub fn operator_product<T: Coeff>(n: usize, family: &OperatorFamily) -> Polynomial<T> {
    (1..=n)
        .rev()
        .fold(Polynomial::one(), |p, k| apply_operator(&p, k, family))
}
