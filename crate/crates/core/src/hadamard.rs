//! Hadamard finite parts of endpoint-singular integrals.
//!
//! Near a singular endpoint the integrand is `t^{a-1} g(t)` with `g`
//! analytic; the finite part over `[0, xi]` is `xi^a (J_a g)(xi)` where
//! `J_a` divides the n-th Taylor coefficient by `n + a`. Away from the
//! endpoints the integrand is regular and goes to adaptive quadrature.
//! The half-line uses one split point, `[0, 1]` uses two with the upper
//! endpoint handled after the substitution `t = 1 - s`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quad::{quad_majorized, ExpTail, QuadOptions};
use crate::series::{expand_weight_factor, PowerSeries, WeightFactor, MAX_TERMS};
use crate::special::{check_pole, ComplexParam, ExclusionSet};

/// Series are evaluated only inside this fraction of their radius.
pub const RHO_SAFE: f64 = 0.75;

/// Default absolute tolerance for finite-part evaluations.
pub const DEFAULT_TOL: f64 = 1e-10;

const ROUNDING_FACTOR: f64 = 16.0 * f64::EPSILON;

/// Value of a finite-part integral with its error estimate and the split
/// points that were used.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePart {
    pub value: Complex64,
    pub err_estimate: f64,
    pub splits: Vec<f64>,
}

/// Optional extra factor multiplying the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    None,
    /// `1 / (t - z)`
    Cauchy(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FpOptions {
    /// Absolute error target.
    pub tol: f64,
    /// Split point for the half-line; `None` picks the default.
    pub split: Option<f64>,
    /// Split points for `[0, 1]`; `None` picks the defaults.
    pub unit_splits: Option<(f64, f64)>,
}

impl Default for FpOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            split: None,
            unit_splits: None,
        }
    }
}

impl FpOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Principal power `x^a = exp(a Log x)`.
pub fn principal_pow(x: Complex64, a: Complex64) -> Complex64 {
    if x == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    (a * x.ln()).exp()
}

/// The operator `J_alpha` on a series centered at 0.
pub fn j_alpha(f: &PowerSeries, alpha: &ComplexParam) -> Result<PowerSeries> {
    f.j_alpha(alpha.value())
}

/// `FP int_0^x t^{alpha-1} f(t) dt = x^alpha (J_alpha f)(x)`.
pub fn finite_part_0x(f: &PowerSeries, alpha: &ComplexParam, x: Complex64) -> Result<FinitePart> {
    let a = alpha.value();
    check_pole(a, ExclusionSet::NonPosInts)?;
    let limit = if f.radius().is_finite() {
        (RHO_SAFE * f.radius()).min(f.r_eval())
    } else {
        f.r_eval()
    };
    if x.norm() > limit {
        return Err(Error::Radius {
            distance: x.norm(),
            limit,
        });
    }
    if x.norm() == 0.0 {
        if a.re > 0.0 {
            return Ok(FinitePart {
                value: Complex64::new(0.0, 0.0),
                err_estimate: 0.0,
                splits: Vec::new(),
            });
        }
        return Err(Error::InvalidArgument(format!(
            "finite part to x = 0 diverges for Re alpha = {} <= 0",
            a.re
        )));
    }
    let j = f.j_alpha(a)?;
    let (v, tail) = j.eval(x)?;
    let scale = principal_pow(x, a);
    let rounding = ROUNDING_FACTOR * abs_j_sum(f, a, x.norm());
    Ok(FinitePart {
        value: scale * v,
        err_estimate: scale.norm() * (tail + rounding),
        splits: Vec::new(),
    })
}

fn abs_j_sum(f: &PowerSeries, a: Complex64, r: f64) -> f64 {
    f.coeffs()
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (n, c)| acc * r + c.norm() / (n as f64 + a).norm())
}

/// Finite part over `[0, r]` of `t^{a-1} p(t) prod(factors)`, with all
/// factors expanded about 0. Returns value and error estimate.
fn series_piece(
    p: &Polynomial,
    factors: &[WeightFactor],
    a: Complex64,
    r: f64,
    target: f64,
) -> Result<(Complex64, f64)> {
    let delta = check_pole(a, ExclusionSet::NonPosInts)?;
    for f in factors {
        if let WeightFactor::CauchyKernel(z) = f {
            if r > RHO_SAFE * z.norm() {
                return Err(Error::Radius {
                    distance: r,
                    limit: RHO_SAFE * z.norm(),
                });
            }
        }
    }
    let scale = principal_pow(Complex64::new(r, 0.0), a);
    let degree = p.degree().unwrap_or(0);
    let mut n = 16;
    loop {
        let keep = n + degree + 1;
        let mut g = PowerSeries::from_polynomial(p, r);
        let mut g_abs = g.abs();
        for &f in factors {
            let s = expand_weight_factor(f, Complex64::new(0.0, 0.0), n, r)?;
            g_abs = g_abs.mul(&s.abs(), keep)?;
            g = g.mul(&s, keep)?;
        }
        let j = g.j_alpha(a)?;
        let (v, _) = j.eval(Complex64::new(r, 0.0))?;
        let tail_err = scale.norm() * g.tail_bound() / delta;
        let rounding = scale.norm() * ROUNDING_FACTOR * abs_j_sum(&g_abs, a, r);
        if tail_err <= target.max(rounding) {
            return Ok((scale * v, tail_err + rounding));
        }
        if n >= MAX_TERMS {
            return Err(Error::Truncation {
                tol: target,
                bound: tail_err,
                max_terms: MAX_TERMS,
            });
        }
        n *= 2;
    }
}

fn cut_check_halfline(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::CutProximity {
            z,
            distance: 0.0,
            min: 0.0,
        });
    }
    Ok(())
}

fn cut_check_unit(z: Complex64) -> Result<()> {
    if z.im == 0.0 && (0.0..=1.0).contains(&z.re) {
        return Err(Error::CutProximity {
            z,
            distance: 0.0,
            min: 0.0,
        });
    }
    Ok(())
}

/// Breakpoints for `[a, b]`: geometric grading toward a small left end and
/// the real part of a nearby kernel pole.
fn breakpoints(a: f64, b: f64, kernel: Kernel, grade_left: bool, grade_right: bool) -> Vec<f64> {
    let mut pts = vec![a, b];
    if grade_left {
        let mut t = 4.0 * a;
        while t < 0.25_f64.min(b) {
            pts.push(t);
            t *= 4.0;
        }
    }
    if grade_right {
        let mut d = 4.0 * (1.0 - b);
        while d < 0.25_f64.min(1.0 - a) {
            pts.push(1.0 - d);
            d *= 4.0;
        }
    }
    if let Kernel::Cauchy(z) = kernel {
        if z.re > a && z.re < b {
            pts.push(z.re);
            // Grade toward the near-pole so bisection starts at its scale.
            let w = z.im.abs().max(1e-12);
            let mut d = 4.0 * w;
            while d < (z.re - a).min(b - z.re) {
                pts.push(z.re - d);
                pts.push(z.re + d);
                d *= 8.0;
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * x.abs().max(1.0));
    pts
}

fn kernel_value(kernel: Kernel, t: f64) -> Complex64 {
    match kernel {
        Kernel::None => Complex64::new(1.0, 0.0),
        Kernel::Cauchy(z) => 1.0 / (t - z),
    }
}

/// `FP int_0^inf t^alpha p(t) e^{-t} [1/(t - z)] dt`.
pub fn finite_part_halfline(
    p: &Polynomial,
    alpha: &ComplexParam,
    kernel: Kernel,
    opts: &FpOptions,
) -> Result<FinitePart> {
    let a = alpha.value();
    check_pole(a, ExclusionSet::NegInts)?;
    let xi = match (opts.split, kernel) {
        (Some(xi), _) => xi,
        (None, Kernel::None) => 1.0,
        (None, Kernel::Cauchy(z)) => (0.5 * z.norm()).min(1.0),
    };
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::InvalidArgument(format!("split point {xi} must be positive")));
    }
    let mut factors = vec![WeightFactor::ExpNeg];
    if let Kernel::Cauchy(z) = kernel {
        cut_check_halfline(z)?;
        factors.push(WeightFactor::CauchyKernel(z));
    }
    if p.is_zero() {
        return Ok(FinitePart {
            value: Complex64::new(0.0, 0.0),
            err_estimate: 0.0,
            splits: vec![xi],
        });
    }

    let (v0, e0) = series_piece(p, &factors, a + 1.0, xi, opts.tol / 4.0)?;

    let p_abs: Vec<f64> = p.coeffs().iter().map(|c| c.norm()).collect();
    let integrand = |t: f64| {
        let w = (a * t.ln() - t).exp();
        let k = kernel_value(kernel, t);
        let v = w * p.eval(Complex64::new(t, 0.0)) * k;
        let m = w.norm() * p_abs.iter().rev().fold(0.0, |acc, c| acc * t + c) * k.norm();
        (v, m)
    };
    let min_cutoff = match kernel {
        Kernel::None => 0.0,
        Kernel::Cauchy(z) => z.re + 1.0,
    };
    let tail = ExpTail {
        coeffs: p_abs.clone(),
        shift: a.re,
        min_cutoff,
    };
    let qopts = QuadOptions::with_abs_tol(opts.tol / 2.0);
    let cut = tail.cutoff(xi + 1.0, opts.tol / 10.0).ok_or(Error::Quadrature {
        a: xi,
        b: f64::INFINITY,
        err: f64::INFINITY,
        target: opts.tol / 10.0,
        subdivisions: 0,
    })?;
    let pts = breakpoints(xi, cut, kernel, xi < 0.0625, false);
    let q = quad_majorized(integrand, &pts, &qopts)?;
    let tail_err = tail.bound(cut);

    Ok(FinitePart {
        value: v0 + q.value,
        err_estimate: e0 + q.err + tail_err,
        splits: vec![xi],
    })
}

/// `FP int_0^1 t^alpha (1-t)^beta p(t) [1/(t - z)] dt`.
pub fn finite_part_unit(
    p: &Polynomial,
    alpha: &ComplexParam,
    beta: &ComplexParam,
    kernel: Kernel,
    opts: &FpOptions,
) -> Result<FinitePart> {
    let a = alpha.value();
    let b = beta.value();
    check_pole(a, ExclusionSet::NegInts)?;
    check_pole(b, ExclusionSet::NegInts)?;
    let (xi0, xi1) = match (opts.unit_splits, kernel) {
        (Some(s), _) => s,
        (None, Kernel::None) => (0.25, 0.75),
        (None, Kernel::Cauchy(z)) => (
            (0.5 * z.norm()).min(0.25),
            (1.0 - 0.5 * (1.0 - z).norm()).max(0.75),
        ),
    };
    if !(0.0 < xi0 && xi0 < xi1 && xi1 < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "unit-interval splits must satisfy 0 < xi0 < xi1 < 1, got ({xi0}, {xi1})"
        )));
    }
    let mut left = vec![WeightFactor::OneMinusTPow(b)];
    let mut right = vec![WeightFactor::OneMinusTPow(a)];
    let mut right_sign = Complex64::new(1.0, 0.0);
    if let Kernel::Cauchy(z) = kernel {
        cut_check_unit(z)?;
        left.push(WeightFactor::CauchyKernel(z));
        // 1/(t - z) with t = 1 - s is -1/(s - (1 - z)).
        right.push(WeightFactor::CauchyKernel(1.0 - z));
        right_sign = -right_sign;
    }
    if p.is_zero() {
        return Ok(FinitePart {
            value: Complex64::new(0.0, 0.0),
            err_estimate: 0.0,
            splits: vec![xi0, xi1],
        });
    }

    let (v0, e0) = series_piece(p, &left, a + 1.0, xi0, opts.tol / 6.0)?;
    let (v2, e2) = series_piece(&p.reflect(), &right, b + 1.0, 1.0 - xi1, opts.tol / 6.0)?;

    let p_abs: Vec<f64> = p.coeffs().iter().map(|c| c.norm()).collect();
    let integrand = |t: f64| {
        let w = (a * t.ln() + b * (1.0 - t).ln()).exp();
        let k = kernel_value(kernel, t);
        let v = w * p.eval(Complex64::new(t, 0.0)) * k;
        let m = w.norm() * p_abs.iter().rev().fold(0.0, |acc, c| acc * t + c) * k.norm();
        (v, m)
    };
    let pts = breakpoints(xi0, xi1, kernel, xi0 < 0.0625, 1.0 - xi1 < 0.0625);
    let q = quad_majorized(integrand, &pts, &QuadOptions::with_abs_tol(opts.tol / 3.0))?;

    Ok(FinitePart {
        value: v0 + q.value + right_sign * v2,
        err_estimate: e0 + q.err + e2,
        splits: vec![xi0, xi1],
    })
}

/// Residual of `FP int_0^x d/dt[t^alpha f(t)] dt = x^alpha f(x)`.
pub fn fp_fundamental_theorem_check(f: &PowerSeries, alpha: &ComplexParam, x: Complex64) -> Result<f64> {
    let a = alpha.value();
    let derivative = f.euler_op(a, x.norm())?;
    let lhs = finite_part_0x(&derivative, alpha, x)?;
    let (fx, _) = f.eval(x)?;
    let rhs = principal_pow(x, a) * fx;
    Ok((lhs.value - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn param(re: f64, im: f64) -> ComplexParam {
        ComplexParam::new(c(re, im), ExclusionSet::NonPosInts).unwrap()
    }

    #[test]
    fn constant_finite_part_is_reciprocal() {
        let one = PowerSeries::from_polynomial(&Polynomial::from_real(&[1.0]), 1.0);
        for (re, im) in [(0.5, 0.0), (-0.5, 0.0), (-2.3, 0.7)] {
            let alpha = param(re, im);
            let fp = finite_part_0x(&one, &alpha, c(1.0, 0.0)).unwrap();
            assert!((fp.value - 1.0 / c(re, im)).norm() < 1e-15);
        }
        let fp = finite_part_0x(&one, &param(-0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!((fp.value - c(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn shifting_a_factor_of_t() {
        // FP int_0^x t^{alpha-1} (t g) = FP int_0^x t^alpha g
        let g = Polynomial::from_real(&[1.0]);
        let tg = g.mul_x();
        let alpha = param(-0.5, 0.0);
        let x = c(0.7, 0.0);
        let lhs = finite_part_0x(&PowerSeries::from_polynomial(&tg, 1.0), &alpha, x).unwrap();
        let rhs = finite_part_0x(&PowerSeries::from_polynomial(&g, 1.0), &param(0.5, 0.0), x).unwrap();
        assert!((lhs.value - rhs.value).norm() < 1e-15);
    }

    #[test]
    fn zero_at_origin() {
        let one = PowerSeries::from_polynomial(&Polynomial::from_real(&[1.0]), 1.0);
        assert_eq!(finite_part_0x(&one, &param(0.5, 0.0), c(0.0, 0.0)).unwrap().value, c(0.0, 0.0));
        assert!(finite_part_0x(&one, &param(-0.5, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn radius_enforced() {
        let one = PowerSeries::from_polynomial(&Polynomial::from_real(&[1.0]), 1.0);
        assert!(matches!(
            finite_part_0x(&one, &param(0.5, 0.0), c(1.5, 0.0)),
            Err(Error::Radius { .. })
        ));
    }

    #[test]
    fn kernel_on_cut_rejected() {
        let alpha = ComplexParam::exponent(c(0.5, 0.0)).unwrap();
        let p = Polynomial::from_real(&[1.0]);
        let r = finite_part_halfline(&p, &alpha, Kernel::Cauchy(c(2.0, 0.0)), &FpOptions::default());
        assert!(matches!(r, Err(Error::CutProximity { .. })));
    }

    #[test]
    fn bad_unit_splits_rejected() {
        let alpha = ComplexParam::exponent(c(0.5, 0.0)).unwrap();
        let p = Polynomial::from_real(&[1.0]);
        let opts = FpOptions {
            unit_splits: Some((0.6, 0.4)),
            ..FpOptions::default()
        };
        assert!(finite_part_unit(&p, &alpha, &alpha, Kernel::None, &opts).is_err());
    }

    #[test]
    fn fundamental_theorem_constant() {
        let one = PowerSeries::from_polynomial(&Polynomial::from_real(&[1.0]), 1.0);
        let r = fp_fundamental_theorem_check(&one, &param(-1.7, 0.3), c(0.5, 0.0)).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn halfline_gamma_values() {
        let p = Polynomial::from_real(&[1.0]);
        let opts = FpOptions::default();
        let a = ComplexParam::exponent(c(0.5, 0.0)).unwrap();
        let fp = finite_part_halfline(&p, &a, Kernel::None, &opts).unwrap();
        assert!((fp.value - c(0.886_226_925_452_758, 0.0)).norm() < 1e-10);
        let a = ComplexParam::exponent(c(-1.5, 0.0)).unwrap();
        let fp = finite_part_halfline(&p, &a, Kernel::None, &opts).unwrap();
        let expected = -2.0 * std::f64::consts::PI.sqrt();
        assert!((fp.value - c(expected, 0.0)).norm() < 1e-10, "{:?}", fp.value);
    }

    #[test]
    fn halfline_split_independent() {
        let p = Polynomial::from_real(&[1.0, -2.0, 0.5]);
        let a = ComplexParam::exponent(c(-1.3, 0.4)).unwrap();
        let mut vals = Vec::new();
        for xi in [0.5, 1.0, 2.0] {
            let opts = FpOptions {
                split: Some(xi),
                ..FpOptions::default()
            };
            vals.push(finite_part_halfline(&p, &a, Kernel::None, &opts).unwrap().value);
        }
        assert!((vals[0] - vals[1]).norm() < 1e-10);
        assert!((vals[2] - vals[1]).norm() < 1e-10);
    }

    #[test]
    fn unit_beta_values() {
        let p = Polynomial::from_real(&[1.0]);
        let opts = FpOptions::default();
        let half = ComplexParam::exponent(c(0.5, 0.0)).unwrap();
        let fp = finite_part_unit(&p, &half, &half, Kernel::None, &opts).unwrap();
        assert!((fp.value - c(std::f64::consts::PI / 8.0, 0.0)).norm() < 1e-10);
        let zero = ComplexParam::exponent(c(0.0, 0.0)).unwrap();
        let fp = finite_part_unit(&p, &zero, &zero, Kernel::None, &opts).unwrap();
        assert!((fp.value - c(1.0, 0.0)).norm() < 1e-12);
        let a = ComplexParam::exponent(c(-1.5, 0.0)).unwrap();
        let b = ComplexParam::exponent(c(-2.5, 0.0)).unwrap();
        let fp = finite_part_unit(&p, &a, &b, Kernel::None, &opts).unwrap();
        assert!(fp.value.norm() < 1e-10, "{:?}", fp.value);
    }
}
