//! Finite-part Cauchy transforms
//! `C[p](z) = (1 / 2 pi i) FP int w(t) p(t) / (t - z) dt` for the Laguerre
//! and Jacobi weights, and the first-order ODE residuals they satisfy.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hadamard::{finite_part_halfline, finite_part_unit, FpOptions, Kernel};
use crate::ortho::{FamilyKind, OrthoFamily};
use crate::poly::Polynomial;
use crate::special::{gamma, recip_gamma};

/// Minimum distance of an evaluation point from the cut.
pub const DELTA_CUT: f64 = 1e-6;

/// Tolerance used when a transform feeds a finite-difference derivative.
pub const ODE_EVAL_TOL: f64 = 1e-13;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyTransform {
    /// Weight: half-line `t^alpha e^{-t}` or unit interval `t^alpha (1-t)^beta`.
    pub weight: OrthoFamily,
    pub p: Polynomial,
}

impl CauchyTransform {
    pub fn new(weight: OrthoFamily, p: Polynomial) -> Self {
        Self { weight, p }
    }

    /// Distance from `z` to the support of the weight.
    pub fn cut_distance(&self, z: Complex64) -> f64 {
        cut_distance(self.weight.kind(), z)
    }
}

pub fn cut_distance(kind: FamilyKind, z: Complex64) -> f64 {
    match kind {
        FamilyKind::Laguerre => {
            if z.re >= 0.0 {
                z.im.abs()
            } else {
                z.norm()
            }
        }
        FamilyKind::Jacobi => {
            if z.re < 0.0 {
                z.norm()
            } else if z.re > 1.0 {
                (z - 1.0).norm()
            } else {
                z.im.abs()
            }
        }
    }
}

/// Value and error estimate of `C[p](z)`.
pub fn cauchy_eval(ct: &CauchyTransform, z: Complex64, opts: &FpOptions) -> Result<(Complex64, f64)> {
    let distance = ct.cut_distance(z);
    if distance < DELTA_CUT {
        return Err(Error::CutProximity {
            z,
            distance,
            min: DELTA_CUT,
        });
    }
    if ct.p.is_zero() {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let w = &ct.weight;
    let fp = match w.kind() {
        FamilyKind::Laguerre => finite_part_halfline(&ct.p, w.alpha_param(), Kernel::Cauchy(z), opts)?,
        FamilyKind::Jacobi => {
            let b = w.beta_param().expect("jacobi weight carries beta");
            finite_part_unit(&ct.p, w.alpha_param(), b, Kernel::Cauchy(z), opts)?
        }
    };
    Ok((fp.value / TWO_PI_I, fp.err_estimate / (2.0 * PI)))
}

/// Central difference with one Richardson step, `h = 1e-5 max(1, |z|)`.
fn derivative<F>(f: F, z: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let h = 1e-5 * z.norm().max(1.0);
    let d = |h: f64| -> Result<Complex64> { Ok((f(z + h)? - f(z - h)?) / (2.0 * h)) };
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `a = Gamma(beta + 1) / 2 pi i`, the constant in
/// `phi' = (beta / z - 1) phi - a / z` for `phi = C_beta[1]` on the half-line.
pub fn ode_constant_halfline(beta: Complex64) -> Result<Complex64> {
    Ok(gamma(beta + 1.0)? / TWO_PI_I)
}

/// Constants `(a0, a1)` in
/// `phi' = (alpha / z + beta / (z - 1)) phi - a0 / z + a1 / (z - 1)` for
/// `phi = C_{alpha,beta}[1]`. Both equal
/// `Gamma(alpha + 1) Gamma(beta + 1) / (Gamma(alpha + beta + 1) 2 pi i)`;
/// this form stays finite at `alpha = 0` or `beta = 0`.
pub fn ode_constants_unit(alpha: Complex64, beta: Complex64) -> Result<(Complex64, Complex64)> {
    let a = gamma(alpha + 1.0)? * gamma(beta + 1.0)? * recip_gamma(alpha + beta + 1.0) / TWO_PI_I;
    Ok((a, a))
}

/// Max over `samples` of `|phi' - (beta / z - 1) phi + a / z|` with
/// `phi = C[1]` for the half-line weight with exponent `beta`.
pub fn ode_residual_halfline_with_constant(
    beta: Complex64,
    samples: &[Complex64],
    a: Complex64,
    opts: &FpOptions,
) -> Result<f64> {
    let ct = CauchyTransform::new(OrthoFamily::laguerre(beta)?, Polynomial::one());
    let phi = |z: Complex64| cauchy_eval(&ct, z, opts).map(|v| v.0);
    let mut worst: f64 = 0.0;
    for &z in samples {
        let d = derivative(phi, z)?;
        let r = d - (beta / z - 1.0) * phi(z)? + a / z;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

pub fn ode_residual_halfline(beta: Complex64, samples: &[Complex64], opts: &FpOptions) -> Result<f64> {
    ode_residual_halfline_with_constant(beta, samples, ode_constant_halfline(beta)?, opts)
}

/// Max over `samples` of
/// `|phi' - (alpha / z + beta / (z - 1)) phi + a0 / z - a1 / (z - 1)|`.
pub fn ode_residual_unit_with_constants(
    alpha: Complex64,
    beta: Complex64,
    samples: &[Complex64],
    (a0, a1): (Complex64, Complex64),
    opts: &FpOptions,
) -> Result<f64> {
    let ct = CauchyTransform::new(OrthoFamily::jacobi(alpha, beta)?, Polynomial::one());
    let phi = |z: Complex64| cauchy_eval(&ct, z, opts).map(|v| v.0);
    let mut worst: f64 = 0.0;
    for &z in samples {
        let d = derivative(phi, z)?;
        let coeff = alpha / z + beta / (z - 1.0);
        let r = d - coeff * phi(z)? + a0 / z - a1 / (z - 1.0);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

pub fn ode_residual_unit(
    alpha: Complex64,
    beta: Complex64,
    samples: &[Complex64],
    opts: &FpOptions,
) -> Result<f64> {
    ode_residual_unit_with_constants(alpha, beta, samples, ode_constants_unit(alpha, beta)?, opts)
}

/// Eight points well off the cut of the given weight.
pub fn default_ode_samples(kind: FamilyKind) -> Vec<Complex64> {
    let pts: &[(f64, f64)] = match kind {
        FamilyKind::Laguerre => &[
            (-1.0, 0.0),
            (-3.0, 0.5),
            (2.0, 2.0),
            (2.0, -2.0),
            (0.5, 1.0),
            (-0.5, -1.5),
            (5.0, 3.0),
            (0.0, 4.0),
        ],
        FamilyKind::Jacobi => &[
            (-1.0, 0.0),
            (2.0, 0.0),
            (0.5, 2.0),
            (0.5, -0.5),
            (-0.5, 1.0),
            (1.5, -1.0),
            (0.2, 0.7),
            (3.0, 3.0),
        ],
    };
    pts.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_polynomial_transform_vanishes() {
        let ct = CauchyTransform::new(OrthoFamily::laguerre(c(0.5, 0.0)).unwrap(), Polynomial::zero());
        assert_eq!(cauchy_eval(&ct, c(-1.0, 0.0), &FpOptions::default()).unwrap().0, c(0.0, 0.0));
    }

    #[test]
    fn points_on_the_cut_rejected() {
        let ct = CauchyTransform::new(OrthoFamily::jacobi(c(0.5, 0.0), c(0.5, 0.0)).unwrap(), Polynomial::one());
        let r = cauchy_eval(&ct, c(0.5, 1e-7), &FpOptions::default());
        assert!(matches!(r, Err(Error::CutProximity { .. })));
        assert!(cauchy_eval(&ct, c(1.5, 1e-7), &FpOptions::default()).is_ok());
    }

    #[test]
    fn unit_transform_outside_disk_matches_moment_series() {
        // For |z| > 1, 1 / (t - z) = -sum_k t^k / z^{k+1}.
        let alpha = c(0.5, 0.0);
        let ct = CauchyTransform::new(OrthoFamily::jacobi(alpha, alpha).unwrap(), Polynomial::one());
        let z = c(2.0, 0.0);
        let (v, _) = cauchy_eval(&ct, z, &FpOptions::with_tol(1e-13)).unwrap();
        let mut sum = c(0.0, 0.0);
        for k in 0..80 {
            let b = crate::special::beta(alpha + (k + 1) as f64, alpha + 1.0).unwrap();
            sum -= b / z.powi(k + 1);
        }
        assert!((v - sum / TWO_PI_I).norm() < 1e-12, "{v} vs {}", sum / TWO_PI_I);
    }

    #[test]
    fn ode_residuals_small() {
        let opts = FpOptions::with_tol(ODE_EVAL_TOL);
        let r = ode_residual_halfline(c(0.5, 0.0), &[c(-1.0, 0.0)], &opts).unwrap();
        assert!(r < 1e-6, "{r}");
        let r = ode_residual_halfline(c(-1.5, 0.0), &[c(2.0, 2.0)], &opts).unwrap();
        assert!(r < 1e-6, "{r}");
        let r = ode_residual_unit(c(0.5, 0.0), c(0.5, 0.0), &[c(-1.0, 0.0)], &opts).unwrap();
        assert!(r < 1e-6, "{r}");
        let r = ode_residual_unit(c(-1.5, 0.0), c(0.3, 0.0), &[c(0.5, 2.0)], &opts).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn wrong_constant_detected() {
        let opts = FpOptions::with_tol(ODE_EVAL_TOL);
        let beta = c(0.5, 0.0);
        let z = c(-1.0, 0.0);
        let a = ode_constant_halfline(beta).unwrap();
        let r = ode_residual_halfline_with_constant(beta, &[z], 2.0 * a, &opts).unwrap();
        assert!(r > (a / z).norm() / 2.0);
    }
}
