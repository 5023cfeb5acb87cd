//! Truncated Taylor series with a certified bound on the discarded tail.
//!
//! `tail_bound` bounds the weighted l1 norm `sum_{n>N} |f_n| r^n` of the
//! discarded coefficients, where `r = r_eval` is the radius of the disk the
//! series is certified on. That norm dominates the sup norm of the tail on
//! the disk, is submultiplicative under products, and shrinks by at least
//! `1 / dist(alpha, -N)` under `J_alpha`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::special::{check_pole, ExclusionSet};

/// Largest truncation order tried by the adaptive expansions.
pub const MAX_TERMS: usize = 512;

const START_TERMS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    center: Complex64,
    coeffs: Vec<Complex64>,
    radius: f64,
    r_eval: f64,
    tail_bound: f64,
}

/// Elementary factors with closed-form Taylor coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFactor {
    /// `e^{-t}`
    ExpNeg,
    /// `(1 - t)^beta`, principal branch (real positive for real `t < 1`).
    OneMinusTPow(Complex64),
    /// `1 / (t - z)`
    CauchyKernel(Complex64),
}

impl PowerSeries {
    /// Assembles a series from raw parts; `tail_bound` must be a valid
    /// bound for the discarded coefficients on `|x - center| <= r_eval`.
    pub fn from_parts(
        center: Complex64,
        coeffs: Vec<Complex64>,
        radius: f64,
        r_eval: f64,
        tail_bound: f64,
    ) -> Result<Self> {
        if !(r_eval >= 0.0 && (r_eval < radius || radius.is_infinite())) {
            return Err(Error::Radius {
                distance: r_eval,
                limit: radius,
            });
        }
        Ok(Self {
            center,
            coeffs,
            radius,
            r_eval,
            tail_bound,
        })
    }

    /// Exact series of a polynomial about 0.
    pub fn from_polynomial(p: &Polynomial, r_eval: f64) -> Self {
        Self {
            center: Complex64::new(0.0, 0.0),
            coeffs: p.coeffs().to_vec(),
            radius: f64::INFINITY,
            r_eval,
            tail_bound: 0.0,
        }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Radius of analyticity of the expanded function.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Radius of the disk on which `tail_bound` is certified.
    pub fn r_eval(&self) -> f64 {
        self.r_eval
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `sum |c_n| r_eval^n` over the retained coefficients.
    pub fn l1_norm(&self) -> f64 {
        let r = self.r_eval;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Series with coefficients `|c_n|`; a majorant for rounding estimates.
    pub fn abs(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex64::new(c.norm(), 0.0))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
            tail_bound: self.tail_bound * c.norm(),
            ..self.clone()
        }
    }

    /// Product truncated after `keep` coefficients; the dropped mass is
    /// added to the tail bound.
    pub fn mul(&self, other: &Self, keep: usize) -> Result<Self> {
        if self.center != other.center || self.r_eval != other.r_eval {
            return Err(Error::InvalidArgument(
                "series product needs a common center and evaluation radius".into(),
            ));
        }
        let r = self.r_eval;
        let (na, nb) = (self.l1_norm(), other.l1_norm());
        let mut tail = self.tail_bound * (nb + other.tail_bound) + na * other.tail_bound;

        let mut full = vec![Complex64::new(0.0, 0.0); (self.coeffs.len() + other.coeffs.len()).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                full[i + j] += a * b;
            }
        }
        if full.len() > keep {
            let dropped: f64 = full[keep..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.norm() * r.powi((keep + k) as i32))
                .sum();
            tail += dropped;
            full.truncate(keep);
        }
        Ok(Self {
            center: self.center,
            coeffs: full,
            radius: self.radius.min(other.radius),
            r_eval: r,
            tail_bound: tail,
        })
    }

    /// Horner evaluation. Returns the value and the tail bound as an
    /// additive error estimate.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let distance = (z - self.center).norm();
        if distance > self.r_eval {
            return Err(Error::Radius {
                distance,
                limit: self.r_eval,
            });
        }
        let u = z - self.center;
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c);
        Ok((value, self.tail_bound))
    }

    /// The operator `J_alpha`: `f_n -> f_n / (n + alpha)`. Only defined for
    /// series centered at 0.
    pub fn j_alpha(&self, alpha: Complex64) -> Result<Self> {
        if self.center != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidArgument(
                "J_alpha acts on series centered at 0".into(),
            ));
        }
        let delta = check_pole(alpha, ExclusionSet::NonPosInts)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c / (n as f64 + alpha))
                .collect(),
            tail_bound: self.tail_bound / delta,
            ..self.clone()
        })
    }

    /// `f_n -> (n + alpha) f_n`, i.e. `x^{1-alpha} d/dx [x^alpha f]`.
    ///
    /// The coefficient weights grow, so the result is certified on a
    /// smaller disk `r_new < r_eval`.
    pub fn euler_op(&self, alpha: Complex64, r_new: f64) -> Result<Self> {
        if !(r_new >= 0.0 && (r_new < self.r_eval || self.tail_bound == 0.0)) {
            return Err(Error::Radius {
                distance: r_new,
                limit: self.r_eval,
            });
        }
        let tail_bound = if self.tail_bound == 0.0 {
            0.0
        } else {
            // sup_{n > N} (n + |alpha|) (r_new / r_eval)^n
            let ratio = r_new / self.r_eval;
            let a = alpha.norm();
            let first = self.coeffs.len() as f64;
            // maximum of (n + a) q^n over real n is at n = -1/ln q - a
            let peak = (-1.0 / ratio.ln() - a).max(first);
            let factor = (peak + a) * ratio.powf(peak);
            let factor_first = (first + a) * ratio.powf(first);
            self.tail_bound * factor.max(factor_first)
        };
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c * (n as f64 + alpha))
                .collect(),
            r_eval: r_new,
            tail_bound,
            ..self.clone()
        })
    }
}

/// Tail `sum_{k > n} t_k` of a positive sequence given its first neglected
/// term and a bound `ratio(k)` on `t_{k+1} / t_k` valid for all `k >= n + 1`
/// and nonincreasing in `k`.
fn geometric_tail(first: f64, n: usize, ratio: impl Fn(usize) -> f64) -> f64 {
    if first == 0.0 {
        return 0.0;
    }
    // Walk forward until the ratio bound drops below 1/2 (or stays below 1
    // for a while), then close with a geometric sum.
    let mut total = 0.0;
    let mut term = first;
    let mut k = n + 1;
    while k < n + 1 + 4 * MAX_TERMS {
        let q = ratio(k);
        if q < 0.5 || (q < 1.0 && k > n + 64) {
            return total + term / (1.0 - q);
        }
        total += term;
        term *= q;
        k += 1;
        if !term.is_finite() {
            break;
        }
    }
    f64::INFINITY
}

/// Taylor coefficients of a [`WeightFactor`] about `center`, up to degree
/// `n`, with the tail certified on `|x - center| <= r_eval`.
pub fn expand_weight_factor(
    kind: WeightFactor,
    center: Complex64,
    n: usize,
    r_eval: f64,
) -> Result<PowerSeries> {
    let r = r_eval;
    match kind {
        WeightFactor::ExpNeg => {
            let scale = (-center).exp();
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut c = scale;
            for k in 0..=n {
                coeffs.push(c);
                c = -c / (k + 1) as f64;
            }
            let first = c.norm() * r.powi(n as i32 + 1);
            let tail = geometric_tail(first, n, |k| r / (k + 1) as f64);
            PowerSeries::from_parts(center, coeffs, f64::INFINITY, r, tail)
        }
        WeightFactor::OneMinusTPow(beta) => {
            if center.norm() + r >= 1.0 {
                return Err(Error::Radius {
                    distance: center.norm() + r,
                    limit: 1.0,
                });
            }
            let a = 1.0 - center;
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut c = (beta * a.ln()).exp();
            for k in 0..=n {
                coeffs.push(c);
                c = c * (k as f64 - beta) / ((k + 1) as f64 * a);
            }
            let first = c.norm() * r.powi(n as i32 + 1);
            let b = beta.norm();
            let an = a.norm();
            let tail = geometric_tail(first, n, |k| {
                let kf = k as f64;
                ((kf + b) / (kf + 1.0)).max(1.0) * r / an
            });
            PowerSeries::from_parts(center, coeffs, an, r, tail)
        }
        WeightFactor::CauchyKernel(z) => {
            let d = z - center;
            let dn = d.norm();
            if r >= dn {
                return Err(Error::Radius {
                    distance: r,
                    limit: dn,
                });
            }
            let inv = 1.0 / d;
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut c = -inv;
            for _ in 0..=n {
                coeffs.push(c);
                c *= inv;
            }
            let q = r / dn;
            let first = c.norm() * r.powi(n as i32 + 1);
            let tail = first / (1.0 - q);
            PowerSeries::from_parts(center, coeffs, dn, r, tail)
        }
    }
}

/// Doubles the truncation order until `tail_bound < tol`.
pub fn expand_weight_factor_adaptive(
    kind: WeightFactor,
    center: Complex64,
    r_eval: f64,
    tol: f64,
) -> Result<PowerSeries> {
    let mut n = START_TERMS;
    loop {
        let s = expand_weight_factor(kind, center, n, r_eval)?;
        if s.tail_bound < tol {
            return Ok(s);
        }
        if n >= MAX_TERMS {
            return Err(Error::Truncation {
                tol,
                bound: s.tail_bound,
                max_terms: MAX_TERMS,
            });
        }
        n = (2 * n).min(MAX_TERMS);
    }
}
