//! The 2x2 Riemann-Hilbert solutions built from monic orthogonal
//! polynomials and their Cauchy transforms,
//!
//! ```text
//! Y(z) = [ pi_n(z)            C[pi_n](z)         ]
//!        [ c_n pi_{n-1}(z)    c_n C[pi_{n-1}](z) ]
//! ```
//!
//! and numerical probes of the jump, decay and endpoint conditions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cauchy::{cauchy_eval, cut_distance, CauchyTransform, DELTA_CUT};
use crate::dd::DdComplex;
use crate::error::{Error, Result};
use crate::hadamard::{principal_pow, FpOptions};
use crate::ortho::{bilinear_dd, polynomial, polynomial_dd, FamilyKind, Method, Normalization, OrthoFamily};
use crate::poly::Polynomial;
use crate::special::{beta, gamma};

pub type Matrix2 = [[Complex64; 2]; 2];

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Default tolerance of the Cauchy evaluations inside `Y`.
pub const RH_EVAL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct RhSolution {
    pub family: OrthoFamily,
    pub n: usize,
    pub pi_n: Polynomial,
    pub pi_nm1: Polynomial,
    pub c_n: Complex64,
    pub opts: FpOptions,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `c_n` making the second row normalized:
/// Laguerre `-2 pi i / ((n-1)! Gamma(alpha + n))`, Jacobi
/// `(-1)^n 2 pi i C_{n-1} / ((n-1)! B(alpha + n, beta + n))`.
pub fn normalizing_constant(family: &OrthoFamily, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidArgument("RH solution needs n >= 1".into()));
    }
    let a = family.alpha();
    let nf = n as f64;
    match family.kind() {
        FamilyKind::Laguerre => Ok(-TWO_PI_I / (factorial(n - 1) * gamma(a + nf)?)),
        FamilyKind::Jacobi => {
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let lead = family.leading_coefficient(n - 1);
            Ok(sign * TWO_PI_I * lead / (factorial(n - 1) * beta(a + nf, family.beta() + nf)?))
        }
    }
}

pub fn assemble_rh(family: &OrthoFamily, n: usize) -> Result<RhSolution> {
    let c_n = normalizing_constant(family, n)?;
    Ok(RhSolution {
        family: *family,
        n,
        pi_n: polynomial(family, n, Normalization::Monic)?,
        pi_nm1: polynomial(family, n - 1, Normalization::Monic)?,
        c_n,
        opts: FpOptions::with_tol(RH_EVAL_TOL),
    })
}

impl RhSolution {
    /// Copy with `c_n` multiplied by `factor`; used as a sensitivity control.
    pub fn with_scaled_cn(&self, factor: Complex64) -> Self {
        Self {
            c_n: self.c_n * factor,
            ..self.clone()
        }
    }

    pub fn with_options(&self, opts: FpOptions) -> Self {
        Self {
            opts,
            ..self.clone()
        }
    }

    /// `Y(z)` and entrywise error estimates.
    pub fn eval(&self, z: Complex64) -> Result<(Matrix2, [[f64; 2]; 2])> {
        let top = CauchyTransform::new(self.family, self.pi_n.clone());
        let bottom = CauchyTransform::new(self.family, self.pi_nm1.clone());
        let (c_top, e_top) = cauchy_eval(&top, z, &self.opts)?;
        let (c_bot, e_bot) = cauchy_eval(&bottom, z, &self.opts)?;
        let y = [
            [self.pi_n.eval(z), c_top],
            [self.c_n * self.pi_nm1.eval(z), self.c_n * c_bot],
        ];
        let err = [[0.0, e_top], [0.0, self.c_n.norm() * e_bot]];
        Ok((y, err))
    }

    /// `x^alpha e^{-x}` or `x^alpha (1-x)^beta` at a point of the cut.
    pub fn weight(&self, x: f64) -> Complex64 {
        let xa = principal_pow(Complex64::new(x, 0.0), self.family.alpha());
        match self.family.kind() {
            FamilyKind::Laguerre => xa * (-x).exp(),
            FamilyKind::Jacobi => xa * principal_pow(Complex64::new(1.0 - x, 0.0), self.family.beta()),
        }
    }
}

/// Neville extrapolation of `values[i]` sampled at `nodes[i]` to 0.
fn extrapolate_to_zero(nodes: &[f64], values: &[Complex64]) -> Complex64 {
    let mut p = values.to_vec();
    let m = nodes.len();
    for level in 1..m {
        for i in 0..m - level {
            let (xi, xj) = (nodes[i], nodes[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

pub const DEFAULT_EPS_LADDER: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Residual of `Y+(x) = Y-(x) [[1, w(x)], [0, 1]]` with the boundary values
/// obtained by extrapolating `Y(x +- i eps)` to `eps = 0`. Reported as the
/// largest entry of `Y+ - Y- J` divided by `max(1, max |Y- J|)`.
pub fn jump_residual(sol: &RhSolution, x: f64, eps_ladder: &[f64]) -> Result<f64> {
    let (lo, hi) = match sol.family.kind() {
        FamilyKind::Laguerre => (0.0, f64::INFINITY),
        FamilyKind::Jacobi => (0.0, 1.0),
    };
    if !(x - lo >= 0.05 && hi - x >= 0.05) {
        return Err(Error::InvalidArgument(format!(
            "jump point {x} must lie at least 0.05 inside the cut"
        )));
    }
    if eps_ladder.len() < 2 {
        return Err(Error::InvalidArgument("eps ladder needs at least two values".into()));
    }
    if let Some(&e) = eps_ladder.iter().find(|&&e| e < DELTA_CUT) {
        return Err(Error::CutProximity {
            z: Complex64::new(x, e),
            distance: e,
            min: DELTA_CUT,
        });
    }
    let mut plus = Vec::with_capacity(eps_ladder.len());
    let mut minus = Vec::with_capacity(eps_ladder.len());
    for &e in eps_ladder {
        plus.push(sol.eval(Complex64::new(x, e))?.0);
        minus.push(sol.eval(Complex64::new(x, -e))?.0);
    }
    let limit = |side: &[Matrix2], i: usize, j: usize| {
        let vals: Vec<Complex64> = side.iter().map(|m| m[i][j]).collect();
        extrapolate_to_zero(eps_ladder, &vals)
    };
    let mut yp = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut ym = yp;
    for i in 0..2 {
        for j in 0..2 {
            yp[i][j] = limit(&plus, i, j);
            ym[i][j] = limit(&minus, i, j);
        }
    }
    let w = sol.weight(x);
    let target = [
        [ym[0][0], ym[0][0] * w + ym[0][1]],
        [ym[1][0], ym[1][0] * w + ym[1][1]],
    ];
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((yp[i][j] - target[i][j]).norm());
            scale = scale.max(target[i][j].norm());
        }
    }
    Ok(worst / scale)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    /// Largest observed ratio divided by the allowed factor 1.5; the test
    /// passes when this is at most 1.
    pub worst_normalized_ratio: f64,
    pub passed: bool,
    /// `(radius, angle, entry, ratio)` of the worst case.
    pub worst_case: (f64, f64, &'static str, f64),
}

pub const ASYMPTOTIC_FACTOR: f64 = 1.5;
pub const DEFAULT_RADII: [f64; 3] = [25.0, 50.0, 100.0];

/// Eight angles in `[0.2, 2 pi - 0.2]`.
pub fn asymptotic_angles() -> Vec<f64> {
    (0..8)
        .map(|j| 0.2 + j as f64 * (2.0 * PI - 0.4) / 7.0)
        .collect()
}

/// Ratio test of the `O(1/z)` behavior at infinity. For consecutive radii
/// `R1 < R2` and each angle:
///
/// * `|Y11 z^-n - 1|` and `|Y22 z^n - 1|` must shrink like `1/|z|`:
///   `d(R2) (R2 / R1) / d(R1) <= 1.5`;
/// * `|Y12 z^(n+1)|` and `|Y21 z^(1-n)|` must stay bounded:
///   `b(R2) / b(R1) <= 1.5`.
pub fn asymptotic_residual(sol: &RhSolution, radii: &[f64]) -> Result<AsymptoticReport> {
    if radii.len() < 2 || radii.iter().any(|&r| r < 10.0) {
        return Err(Error::InvalidArgument(
            "asymptotic test needs at least two radii, each >= 10".into(),
        ));
    }
    let n = sol.n as i32;
    let angles = asymptotic_angles();
    // measures[r][a] = [d11, d22, b12, b21]
    let mut measures = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut row = Vec::with_capacity(angles.len());
        for &t in &angles {
            let z = Complex64::from_polar(r, t);
            let (y, _) = sol.eval(z)?;
            row.push([
                (y[0][0] * z.powi(-n) - 1.0).norm(),
                (y[1][1] * z.powi(n) - 1.0).norm(),
                (y[0][1] * z.powi(n + 1)).norm(),
                (y[1][0] * z.powi(1 - n)).norm(),
            ]);
        }
        measures.push(row);
    }
    const NAMES: [&str; 4] = ["Y11", "Y22", "Y12", "Y21"];
    let mut worst = (0.0, 0.0, NAMES[0], 0.0);
    for k in 1..radii.len() {
        let growth = radii[k] / radii[k - 1];
        for (a, &t) in angles.iter().enumerate() {
            for e in 0..4 {
                let prev = measures[k - 1][a][e];
                let cur = measures[k][a][e];
                if prev <= f64::MIN_POSITIVE {
                    continue;
                }
                let ratio = if e < 2 { cur * growth / prev } else { cur / prev };
                if ratio > worst.3 {
                    worst = (radii[k], t, NAMES[e], ratio);
                }
            }
        }
    }
    let normalized = worst.3 / ASYMPTOTIC_FACTOR;
    Ok(AsymptoticReport {
        worst_normalized_ratio: normalized,
        passed: normalized <= 1.0,
        worst_case: worst,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    One,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EndpointBehavior {
    /// Fitted power of the singular part.
    Slope(f64),
    /// Values stay within a factor 10 of their median.
    Bounded,
    /// Values vary by more than a factor 10 although the exponent is
    /// nonnegative.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndpointReport {
    pub endpoint: Endpoint,
    /// Real part of the exponent at the endpoint.
    pub expected: f64,
    pub behavior: EndpointBehavior,
    pub usable_points: usize,
    pub passed: bool,
}

pub const SLOPE_TOL: f64 = 0.05;

/// Geometric ladder from `1e-2` down to `1e-4`, nine points.
pub fn default_t_ladder() -> Vec<f64> {
    (0..9).map(|j| 10f64.powf(-2.0 - 0.25 * j as f64)).collect()
}

/// Least-squares slope of `ys` against `xs`.
fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Probes `Y12` along the ray leaving the endpoint at angle `pi/2`. With a
/// negative exponent the successive differences of `Y12` over a geometric
/// ladder remove the bounded part and scale like `t^exponent`; their
/// log-log slope is compared with the exponent. With a nonnegative exponent
/// the values must stay within a factor 10 of their median.
pub fn endpoint_exponent_probe(sol: &RhSolution, endpoint: Endpoint, t_ladder: &[f64]) -> Result<EndpointReport> {
    let (origin, expected) = match (sol.family.kind(), endpoint) {
        (_, Endpoint::Zero) => (0.0, sol.family.alpha().re),
        (FamilyKind::Jacobi, Endpoint::One) => (1.0, sol.family.beta().re),
        (FamilyKind::Laguerre, Endpoint::One) => {
            return Err(Error::InvalidArgument(
                "the half-line weight has no endpoint at 1".into(),
            ))
        }
    };
    if t_ladder.windows(2).any(|w| w[1] >= w[0]) || t_ladder.iter().any(|&t| t < 1e-4 - 1e-18) {
        return Err(Error::InvalidArgument(
            "t ladder must decrease and stay >= 1e-4".into(),
        ));
    }
    let ct = CauchyTransform::new(sol.family, sol.pi_n.clone());
    let mut values = Vec::with_capacity(t_ladder.len());
    for &t in t_ladder {
        let z = Complex64::new(origin, t);
        debug_assert!(cut_distance(sol.family.kind(), z) >= DELTA_CUT);
        values.push(cauchy_eval(&ct, z, &sol.opts)?.0);
    }

    if expected < 0.0 {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for j in 0..values.len().saturating_sub(1) {
            let d = (values[j] - values[j + 1]).norm();
            if d.is_finite() && d > 0.0 {
                xs.push(t_ladder[j].ln());
                ys.push(d.ln());
            }
        }
        if xs.len() < 3 {
            return Err(Error::Fit { usable: xs.len() });
        }
        let slope = fit_slope(&xs, &ys);
        Ok(EndpointReport {
            endpoint,
            expected,
            behavior: EndpointBehavior::Slope(slope),
            usable_points: xs.len(),
            passed: (slope - expected).abs() <= SLOPE_TOL,
        })
    } else {
        let mut mags: Vec<f64> = values.iter().map(|v| v.norm()).filter(|m| m.is_finite()).collect();
        if mags.len() < 3 {
            return Err(Error::Fit { usable: mags.len() });
        }
        let usable = mags.len();
        mags.sort_by(f64::total_cmp);
        let median = mags[usable / 2];
        let bounded = mags.iter().all(|&m| m <= 10.0 * median && m >= median / 10.0);
        Ok(EndpointReport {
            endpoint,
            expected,
            behavior: if bounded {
                EndpointBehavior::Bounded
            } else {
                EndpointBehavior::Unbounded
            },
            usable_points: usable,
            passed: bounded,
        })
    }
}

/// `|(-1 / 2 pi i) B(t^{n-1}, c_n pi_{n-1}) - 1|` by the moment route.
pub fn second_row_normalization_check(sol: &RhSolution) -> Result<f64> {
    let n = sol.n;
    let monomial = Polynomial::monomial(n - 1, DdComplex::ONE);
    let pi = polynomial_dd(&sol.family, n - 1, Normalization::Monic)?;
    let b = bilinear_dd(&sol.family, &monomial, &pi, Method::Moments, &FpOptions::default())?;
    Ok((-(sol.c_n * b.value) / TWO_PI_I - 1.0).norm())
}

/// `max_{k<n} |B(pi_n, t^k)| / |B(pi_n, t^n)|` by the moment route: the
/// vanishing moments behind the `z^{-n-1}` decay of `C[pi_n]`.
pub fn moment_vanishing_residual(sol: &RhSolution) -> Result<f64> {
    let n = sol.n;
    let pi = polynomial_dd(&sol.family, n, Normalization::Monic)?;
    let opts = FpOptions::default();
    let moment = |k: usize| {
        bilinear_dd(&sol.family, &pi, &Polynomial::monomial(k, DdComplex::ONE), Method::Moments, &opts)
    };
    let scale = moment(n)?.value.norm();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        worst = worst.max(moment(k)?.value.norm() / scale);
    }
    Ok(worst)
}
