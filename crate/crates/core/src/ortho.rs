//! Laguerre and Jacobi polynomials with general complex parameters, the
//! finite-part bilinear forms they are orthogonal for, Gram matrices and
//! closed-form norms.
//!
//! Polynomials are generated in double-double from the operator product
//! `A_1 ... A_n 1`. The moment route expands `f g` in monomials and sums
//! `Gamma(alpha + k + 1)` (half-line) or `B(alpha + k + 1, beta + 1)`
//! (unit interval) terms; the moments are written as one f64 Gamma or
//! Beta value times ratios carried in double-double, since the sums cancel
//! to zero off the diagonal.

use num_complex::Complex64;

use crate::dd::{DdComplex, DD_EPS};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hadamard::{finite_part_halfline, finite_part_unit, FinitePart, FpOptions, Kernel};
use crate::poly::{operator_product, DdPolynomial, OperatorFamily, Polynomial};
use crate::special::{
    beta, gamma, pole_distance, ComplexParam, ExclusionSet, GAMMA_REL_ERR, POLE_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Laguerre,
    Jacobi,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Jacobi => "jacobi",
        }
    }
}

/// A validated parameter set.
///
/// Laguerre: weight `x^alpha e^{-x}` on `[0, inf)`, `alpha` not in
/// `{-1, -2, ...}`. Jacobi: weight `x^alpha (1-x)^beta` on `[0, 1]`, with
/// `alpha`, `beta` not in `{-1, -2, ...}` and `alpha + beta` not in
/// `{-2, -3, ...}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoFamily {
    kind: FamilyKind,
    alpha: ComplexParam,
    beta: Option<ComplexParam>,
}

impl OrthoFamily {
    pub fn laguerre(alpha: Complex64) -> Result<Self> {
        Ok(Self {
            kind: FamilyKind::Laguerre,
            alpha: ComplexParam::exponent(alpha)?,
            beta: None,
        })
    }

    pub fn jacobi(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let a = ComplexParam::exponent(alpha)?;
        let b = ComplexParam::exponent(beta)?;
        // distance of alpha + beta to {-2, -3, ...}
        let sum = alpha + beta;
        let d = pole_distance(sum + 1.0, ExclusionSet::NegInts);
        if d < POLE_TOL {
            return Err(Error::Pole {
                value: sum,
                distance: d,
                set: "{-2, -3, ...}",
            });
        }
        Ok(Self {
            kind: FamilyKind::Jacobi,
            alpha: a,
            beta: Some(b),
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha.value()
    }

    /// Zero for Laguerre.
    pub fn beta(&self) -> Complex64 {
        self.beta.map_or(Complex64::new(0.0, 0.0), |b| b.value())
    }

    pub fn alpha_param(&self) -> &ComplexParam {
        &self.alpha
    }

    pub fn beta_param(&self) -> Option<&ComplexParam> {
        self.beta.as_ref()
    }

    pub fn operator_family(&self) -> OperatorFamily {
        match self.kind {
            FamilyKind::Laguerre => OperatorFamily::Laguerre {
                alpha: self.alpha(),
            },
            FamilyKind::Jacobi => OperatorFamily::Jacobi {
                alpha: self.alpha(),
                beta: self.beta(),
            },
        }
    }

    /// Leading coefficient of the operator-product polynomial of index `n`:
    /// `(-1)^n` for Laguerre, `C_n = (-1)^n prod_{k=1}^n (k + n + alpha + beta)`
    /// for Jacobi.
    pub fn leading_coefficient(&self, n: usize) -> Complex64 {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        match self.kind {
            FamilyKind::Laguerre => Complex64::new(sign, 0.0),
            FamilyKind::Jacobi => {
                let s = self.alpha() + self.beta();
                (1..=n).fold(Complex64::new(sign, 0.0), |acc, k| {
                    acc * (s + (k + n) as f64)
                })
            }
        }
    }

    /// Fails when the index-`n` polynomial loses degree, i.e. when
    /// `alpha + beta` is within the pole tolerance of `{-n-1, ..., -2n}`.
    pub fn check_degree(&self, n: usize) -> Result<()> {
        if self.kind == FamilyKind::Jacobi && n > 0 {
            let s = self.alpha() + self.beta();
            for k in 1..=n {
                if (s + (k + n) as f64).norm() < POLE_TOL {
                    return Err(Error::DegenerateDegree { n });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `A_1 ... A_n 1`
    Rodrigues,
    /// Leading coefficient 1.
    Monic,
}

/// Polynomial of index `n` in double-double coefficients.
pub fn polynomial_dd(family: &OrthoFamily, n: usize, norm: Normalization) -> Result<DdPolynomial> {
    let p: DdPolynomial = operator_product(n, &family.operator_family());
    match norm {
        Normalization::Rodrigues => Ok(p),
        Normalization::Monic => {
            family.check_degree(n)?;
            if p.degree() != Some(n) {
                return Err(Error::DegenerateDegree { n });
            }
            p.monic().ok_or(Error::DegenerateDegree { n })
        }
    }
}

pub fn polynomial(family: &OrthoFamily, n: usize, norm: Normalization) -> Result<Polynomial> {
    Ok(polynomial_dd(family, n, norm)?.to_c64())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Exact monomial moments in Gamma/Beta terms.
    #[default]
    Moments,
    /// Finite-part evaluation with series pieces and adaptive quadrature.
    Quadrature,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Moments => "moments",
            Method::Quadrature => "quadrature",
        }
    }
}

/// Base moment and the double-double ratios `m_k / m_0` for `k <= degree`.
fn moment_ratios(family: &OrthoFamily, degree: usize) -> Result<(Complex64, Vec<DdComplex>)> {
    let a = family.alpha();
    let one = DdComplex::ONE;
    let alpha = DdComplex::from_c64(a);
    let mut ratios = Vec::with_capacity(degree + 1);
    let mut r = one;
    ratios.push(r);
    match family.kind {
        FamilyKind::Laguerre => {
            let m0 = gamma(a + 1.0)?;
            for k in 0..degree {
                r = r * (alpha + DdComplex::from_f64((k + 1) as f64));
                ratios.push(r);
            }
            Ok((m0, ratios))
        }
        FamilyKind::Jacobi => {
            let b = family.beta();
            let m0 = beta(a + 1.0, b + 1.0)?;
            let sum = alpha + DdComplex::from_c64(b);
            for k in 0..degree {
                let num = alpha + DdComplex::from_f64((k + 1) as f64);
                let den = sum + DdComplex::from_f64((k + 2) as f64);
                r = r * num / den;
                ratios.push(r);
            }
            Ok((m0, ratios))
        }
    }
}

/// Moment-route value of the bilinear form on `h = f g`, with an error
/// estimate covering the Gamma accuracy and double-double rounding.
fn moments_functional(family: &OrthoFamily, h: &DdPolynomial) -> Result<FinitePart> {
    let Some(degree) = h.degree() else {
        return Ok(FinitePart {
            value: Complex64::new(0.0, 0.0),
            err_estimate: 0.0,
            splits: Vec::new(),
        });
    };
    let (m0, ratios) = moment_ratios(family, degree)?;
    let mut sum = DdComplex::ZERO;
    let mut abs_sum = 0.0;
    for (c, r) in h.coeffs().iter().zip(&ratios) {
        let t = *c * *r;
        abs_sum += t.to_c64().norm();
        sum = sum + t;
    }
    let value = m0 * sum.to_c64();
    let err = value.norm() * (GAMMA_REL_ERR + f64::EPSILON)
        + m0.norm() * abs_sum * 64.0 * (degree + 1) as f64 * DD_EPS;
    Ok(FinitePart {
        value,
        err_estimate: err,
        splits: Vec::new(),
    })
}

fn quadrature_functional(family: &OrthoFamily, h: &Polynomial, opts: &FpOptions) -> Result<FinitePart> {
    match family.kind {
        FamilyKind::Laguerre => finite_part_halfline(h, &family.alpha, Kernel::None, opts),
        FamilyKind::Jacobi => {
            let b = family.beta.expect("jacobi family carries beta");
            finite_part_unit(h, &family.alpha, &b, Kernel::None, opts)
        }
    }
}

/// The bilinear form `B(f, g) = FP int x^alpha [(1-x)^beta | e^{-x}] f g dx`
/// on double-double inputs.
pub fn bilinear_dd(
    family: &OrthoFamily,
    f: &DdPolynomial,
    g: &DdPolynomial,
    method: Method,
    opts: &FpOptions,
) -> Result<FinitePart> {
    let h = f * g;
    match method {
        Method::Moments => moments_functional(family, &h),
        Method::Quadrature => quadrature_functional(family, &h.to_c64(), opts),
    }
}

pub fn bilinear(
    family: &OrthoFamily,
    f: &Polynomial,
    g: &Polynomial,
    method: Method,
    opts: &FpOptions,
) -> Result<FinitePart> {
    bilinear_dd(family, &f.to_dd(), &g.to_dd(), method, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `1, x, x^2, ...`
    Monomial,
    /// Operator-product polynomials `A_1 ... A_n 1`.
    Orthogonal,
    /// Monic orthogonal polynomials.
    MonicOrthogonal,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Orthogonal => "orthogonal",
            Basis::MonicOrthogonal => "monic",
        }
    }
}

pub fn basis_polynomial(family: &OrthoFamily, n: usize, basis: Basis) -> Result<DdPolynomial> {
    match basis {
        Basis::Monomial => Ok(Polynomial::monomial(n, DdComplex::ONE)),
        Basis::Orthogonal => {
            family.check_degree(n)?;
            polynomial_dd(family, n, Normalization::Rodrigues)
        }
        Basis::MonicOrthogonal => polynomial_dd(family, n, Normalization::Monic),
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GramOptions {
    pub method: Method,
    pub fp: FpOptions,
    pub exec: Execution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub family: OrthoFamily,
    pub basis: Basis,
    pub method: Method,
    pub entries: Vec<Vec<Complex64>>,
    pub err: Vec<Vec<f64>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.size()).map(|i| self.entries[i][i]).collect()
    }

    /// Largest `|G[n][k]| / max(|G[n][n]|, |G[k][k]|)` over `n != k`.
    pub fn max_off_diagonal_ratio(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 0..self.size() {
            for k in 0..self.size() {
                if n != k {
                    let scale = self.entries[n][n].norm().max(self.entries[k][k].norm());
                    worst = worst.max(self.entries[n][k].norm() / scale);
                }
            }
        }
        worst
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 0..self.size() {
            for k in 0..self.size() {
                if n != k {
                    worst = worst.max(self.entries[n][k].norm());
                }
            }
        }
        worst
    }
}

/// Gram matrix `G[i][j] = B(b_i, b_j)` for `i, j <= n_max`. The upper
/// triangle is computed and mirrored.
pub fn gram(family: &OrthoFamily, n_max: usize, basis: Basis, opts: &GramOptions) -> Result<GramMatrix> {
    let polys = (0..=n_max)
        .map(|n| basis_polynomial(family, n, basis))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|i| (i..=n_max).map(move |j| (i, j)))
        .collect();
    let results = opts.exec.map(&pairs, |&(i, j)| {
        bilinear_dd(family, &polys[i], &polys[j], opts.method, &opts.fp)
    });
    let size = n_max + 1;
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    let mut err = vec![vec![0.0; size]; size];
    for (&(i, j), r) in pairs.iter().zip(results) {
        let fp = r?;
        entries[i][j] = fp.value;
        entries[j][i] = fp.value;
        err[i][j] = fp.err_estimate;
        err[j][i] = fp.err_estimate;
    }
    Ok(GramMatrix {
        family: *family,
        basis,
        method: opts.method,
        entries,
        err,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `B(p_n, p_n)` for the operator-product polynomial `p_n`.
///
/// Laguerre: `n! Gamma(alpha + n + 1)`. Jacobi:
/// `(-1)^n n! C_n Gamma(alpha + n + 1) Gamma(beta + n + 1) / Gamma(alpha + beta + 2n + 2)`,
/// i.e. `(-1)^n n! C_n B(alpha + n + 1, beta + n + 1)`.
pub fn norm_formula(family: &OrthoFamily, n: usize) -> Result<Complex64> {
    let a = family.alpha();
    let nf = n as f64;
    match family.kind {
        FamilyKind::Laguerre => Ok(factorial(n) * gamma(a + nf + 1.0)?),
        FamilyKind::Jacobi => {
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let b = beta(a + nf + 1.0, family.beta() + nf + 1.0)?;
            Ok(sign * factorial(n) * family.leading_coefficient(n) * b)
        }
    }
}

/// The Laguerre norm written as `n! Gamma(alpha + 2)`, a form that is
/// sometimes printed for it. It agrees with [`norm_formula`] only at
/// `n = 1`; kept for reporting the discrepancy.
pub fn laguerre_norm_printed_form(alpha: Complex64, n: usize) -> Result<Complex64> {
    Ok(factorial(n) * gamma(alpha + 2.0)?)
}

/// The Jacobi norm written with `Gamma(alpha + beta + n + 2)` in the
/// denominator. It agrees with [`norm_formula`] only at `n = 0`; the two
/// differ by the factor `Gamma(alpha + beta + 2n + 2) / Gamma(alpha + beta + n + 2)`.
pub fn jacobi_norm_printed_form(alpha: Complex64, beta: Complex64, n: usize) -> Result<Complex64> {
    let fam = OrthoFamily::jacobi(alpha, beta)?;
    let nf = n as f64;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let g = gamma(alpha + nf + 1.0)? * gamma(beta + nf + 1.0)? / gamma(alpha + beta + nf + 2.0)?;
    Ok(sign * factorial(n) * fam.leading_coefficient(n) * g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MultipleCheck {
    IsMultiple(Complex64),
    No,
}

/// Relative tolerance used by [`multiple_of_check`].
pub const MULTIPLE_TOL: f64 = 1e-9;

/// Decides whether `p` is a scalar multiple of the monic orthogonal
/// polynomial of its degree: `B(p, x^k)` must vanish for `k < deg p`, and
/// then the coefficient vectors must be proportional.
pub fn multiple_of_check(family: &OrthoFamily, p: &Polynomial) -> Result<MultipleCheck> {
    let Some(d) = p.degree() else {
        return Err(Error::InvalidArgument(
            "multiple check needs a nonzero polynomial".into(),
        ));
    };
    let p_dd = p.to_dd();
    let (m0, ratios) = moment_ratios(family, 2 * d)?;
    for k in 0..d {
        let x_k = Polynomial::monomial(k, DdComplex::ONE);
        let v = moments_functional(family, &(&p_dd * &x_k))?;
        // scale: sum_j |p_j| |m_{j+k}|
        let scale: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm() * (m0 * ratios[j + k].to_c64()).norm())
            .sum();
        if v.value.norm() > MULTIPLE_TOL * scale + v.err_estimate {
            return Ok(MultipleCheck::No);
        }
    }
    let pi = polynomial(family, d, Normalization::Monic)?;
    let s = p.coeff(d);
    let max_p = p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    for j in 0..=d {
        if (p.coeff(j) - s * pi.coeff(j)).norm() > MULTIPLE_TOL * max_p {
            return Ok(MultipleCheck::No);
        }
    }
    Ok(MultipleCheck::IsMultiple(s))
}
