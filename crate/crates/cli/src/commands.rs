use finpart::cauchy::{cauchy_eval, default_ode_samples, ode_residual_halfline, ode_residual_unit, CauchyTransform};
use finpart::exec::Execution;
use finpart::hadamard::{finite_part_halfline, finite_part_unit, FpOptions, Kernel};
use finpart::ortho::{
    gram, jacobi_norm_printed_form, laguerre_norm_printed_form, norm_formula, Basis, FamilyKind, GramMatrix,
    GramOptions, Method, OrthoFamily,
};
use finpart::poly::Polynomial;
use finpart::rh::{
    assemble_rh, asymptotic_residual, default_t_ladder, endpoint_exponent_probe, jump_residual,
    moment_vanishing_residual, second_row_normalization_check, Endpoint, EndpointBehavior, DEFAULT_EPS_LADDER,
    DEFAULT_RADII, RH_EVAL_TOL,
};
use finpart::special::GAMMA_REL_ERR;
use num_complex::Complex64;
use serde::Serialize;

use crate::report::{Cx, Estimate, Failure, Tabular};

pub const JUMP_THRESHOLD: f64 = 1e-5;
pub const ODE_THRESHOLD: f64 = 1e-6;
pub const NORMALIZATION_THRESHOLD: f64 = 1e-9;
pub const MOMENT_THRESHOLD: f64 = 1e-9;

/// Shortest round-trip form, with an exponent for very small or large values.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn failed(operation: impl Into<String>) -> impl FnOnce(finpart::Error) -> Failure {
    let operation = operation.into();
    move |e| Failure {
        operation,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Moments,
    Quadrature,
    Both,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Moments => vec![Method::Moments],
            MethodArg::Quadrature => vec![Method::Quadrature],
            MethodArg::Both => vec![Method::Moments, Method::Quadrature],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BasisArg {
    Orthogonal,
    Monic,
    Monomial,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Orthogonal => Basis::Orthogonal,
            BasisArg::Monic => Basis::MonicOrthogonal,
            BasisArg::Monomial => Basis::Monomial,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GramBlock {
    pub method: &'static str,
    pub entries: Vec<Vec<Cx>>,
    pub err: Vec<Vec<f64>>,
    pub max_off_diagonal: f64,
    pub max_off_diagonal_ratio: f64,
}

impl From<&GramMatrix> for GramBlock {
    fn from(g: &GramMatrix) -> Self {
        Self {
            method: g.method.name(),
            entries: g.entries.iter().map(|row| row.iter().map(|&z| z.into()).collect()).collect(),
            err: g.err.clone(),
            max_off_diagonal: g.max_off_diagonal(),
            max_off_diagonal_ratio: g.max_off_diagonal_ratio(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GramResult {
    pub n_max: usize,
    pub basis: &'static str,
    pub matrices: Vec<GramBlock>,
    /// Largest entrywise difference between the two methods, when both ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method_difference: Option<f64>,
}

impl Tabular for GramResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["method", "i", "j", "re", "im", "err"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for m in &self.matrices {
            for (i, (row, errs)) in m.entries.iter().zip(&m.err).enumerate() {
                for (j, (z, e)) in row.iter().zip(errs).enumerate() {
                    rows.push(vec![
                        m.method.to_string(),
                        i.to_string(),
                        j.to_string(),
                        num(z.re),
                        num(z.im),
                        num(*e),
                    ]);
                }
            }
        }
        rows
    }
}

pub fn run_gram(
    family: &OrthoFamily,
    n_max: usize,
    basis: BasisArg,
    method: MethodArg,
    fp: FpOptions,
    exec: Execution,
) -> Result<GramResult, Failure> {
    let basis = Basis::from(basis);
    let mut mats = Vec::new();
    for m in method.methods() {
        let opts = GramOptions { method: m, fp, exec };
        mats.push(gram(family, n_max, basis, &opts).map_err(failed(format!("gram[{}]", m.name())))?);
    }
    let method_difference = (mats.len() == 2).then(|| {
        let (a, b) = (&mats[0], &mats[1]);
        a.entries
            .iter()
            .flatten()
            .zip(b.entries.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    });
    Ok(GramResult {
        n_max,
        basis: basis.name(),
        matrices: mats.iter().map(GramBlock::from).collect(),
        method_difference,
    })
}

#[derive(Debug, Serialize)]
pub struct NormRow {
    pub n: usize,
    /// Diagonal Gram entry computed by the chosen method.
    pub computed: Estimate,
    /// Closed form confirmed by the moment route.
    pub formula: Estimate,
    /// The closed form as commonly printed, kept for comparison.
    pub printed: Estimate,
    pub rel_dev_formula: f64,
    pub rel_dev_printed: f64,
}

#[derive(Debug, Serialize)]
pub struct NormsResult {
    pub method: &'static str,
    pub rows: Vec<NormRow>,
}

impl Tabular for NormsResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "quantity", "re", "im", "err", "rel_dev"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for r in &self.rows {
            for (name, e, dev) in [
                ("computed", &r.computed, None),
                ("formula", &r.formula, Some(r.rel_dev_formula)),
                ("printed", &r.printed, Some(r.rel_dev_printed)),
            ] {
                rows.push(vec![
                    r.n.to_string(),
                    name.to_string(),
                    num(e.value.re),
                    num(e.value.im),
                    num(e.err),
                    dev.map(num).unwrap_or_default(),
                ]);
            }
        }
        rows
    }
}

fn closed_form(v: Complex64) -> Estimate {
    // a handful of Gamma evaluations, each to GAMMA_REL_ERR
    Estimate::new(v, 4.0 * GAMMA_REL_ERR * v.norm())
}

pub fn run_norms(
    family: &OrthoFamily,
    n_max: usize,
    method: Method,
    fp: FpOptions,
    exec: Execution,
) -> Result<NormsResult, Failure> {
    let opts = GramOptions { method, fp, exec };
    let g = gram(family, n_max, Basis::Orthogonal, &opts).map_err(failed(format!("gram[{}]", method.name())))?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let computed = g.entries[n][n];
        let formula = norm_formula(family, n).map_err(failed(format!("norm_formula(n={n})")))?;
        let printed = match family.kind() {
            FamilyKind::Laguerre => laguerre_norm_printed_form(family.alpha(), n),
            FamilyKind::Jacobi => jacobi_norm_printed_form(family.alpha(), family.beta(), n),
        }
        .map_err(failed(format!("printed_norm(n={n})")))?;
        rows.push(NormRow {
            n,
            computed: Estimate::new(computed, g.err[n][n]),
            formula: closed_form(formula),
            printed: closed_form(printed),
            rel_dev_formula: (computed - formula).norm() / formula.norm(),
            rel_dev_printed: (computed - printed).norm() / printed.norm(),
        });
    }
    Ok(NormsResult {
        method: method.name(),
        rows,
    })
}

#[derive(Debug, Serialize)]
pub struct Residual {
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Residual {
    fn new(residual: f64, threshold: f64) -> Self {
        Self {
            residual,
            threshold,
            passed: residual < threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct JumpRow {
    pub x: f64,
    #[serde(flatten)]
    pub check: Residual,
}

#[derive(Debug, Serialize)]
pub struct AsymptoticOut {
    pub worst_normalized_ratio: f64,
    pub worst_radius: f64,
    pub worst_angle: f64,
    pub worst_entry: &'static str,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct EndpointOut {
    pub endpoint: u8,
    pub expected_exponent: f64,
    pub behavior: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    pub usable_points: usize,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct RhResult {
    pub n: usize,
    pub c_n: Cx,
    pub jump: Vec<JumpRow>,
    pub ode: Residual,
    pub asymptotic: AsymptoticOut,
    pub endpoints: Vec<EndpointOut>,
    pub normalization: Residual,
    pub moment_vanishing: Residual,
    pub all_passed: bool,
}

impl Tabular for RhResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["check", "location", "value", "threshold", "passed"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let row = |check: &str, loc: String, value: f64, threshold: f64, passed: bool| {
            vec![check.to_string(), loc, num(value), num(threshold), passed.to_string()]
        };
        let mut rows: Vec<Vec<String>> = self
            .jump
            .iter()
            .map(|j| row("jump", num(j.x), j.check.residual, j.check.threshold, j.check.passed))
            .collect();
        rows.push(row("ode", String::new(), self.ode.residual, self.ode.threshold, self.ode.passed));
        let a = &self.asymptotic;
        rows.push(row(
            "asymptotic",
            format!("r={} theta={} {}", a.worst_radius, a.worst_angle, a.worst_entry),
            a.worst_normalized_ratio,
            1.0,
            a.passed,
        ));
        for e in &self.endpoints {
            rows.push(vec![
                "endpoint".into(),
                e.endpoint.to_string(),
                e.slope.map(num).unwrap_or_else(|| e.behavior.to_string()),
                num(e.expected_exponent),
                e.passed.to_string(),
            ]);
        }
        let n = &self.normalization;
        rows.push(row("normalization", String::new(), n.residual, n.threshold, n.passed));
        let m = &self.moment_vanishing;
        rows.push(row("moment_vanishing", String::new(), m.residual, m.threshold, m.passed));
        rows
    }
}

pub fn jump_points(kind: FamilyKind) -> Vec<f64> {
    match kind {
        FamilyKind::Laguerre => vec![0.3, 0.7, 1.5, 3.0],
        FamilyKind::Jacobi => vec![0.3, 0.7],
    }
}

pub fn run_rh(family: &OrthoFamily, n: usize, fp: FpOptions, exec: Execution) -> Result<RhResult, Failure> {
    let sol = assemble_rh(family, n).map_err(failed("assemble_rh"))?;
    // the jump extrapolation needs accurate boundary values
    let sol = sol.with_options(FpOptions {
        tol: fp.tol.min(RH_EVAL_TOL),
        ..fp
    });

    let xs = jump_points(family.kind());
    let jumps = exec.map(&xs, |&x| jump_residual(&sol, x, &DEFAULT_EPS_LADDER).map(|r| (x, r)));
    let mut jump = Vec::new();
    for (x, r) in xs.iter().zip(jumps) {
        let (x, r) = r.map_err(failed(format!("jump_residual(x={x})")))?;
        jump.push(JumpRow {
            x,
            check: Residual::new(r, JUMP_THRESHOLD),
        });
    }

    let samples = default_ode_samples(family.kind());
    let ode = match family.kind() {
        FamilyKind::Laguerre => ode_residual_halfline(family.alpha(), &samples, &fp),
        FamilyKind::Jacobi => ode_residual_unit(family.alpha(), family.beta(), &samples, &fp),
    }
    .map_err(failed("ode_residual"))?;

    let asym = asymptotic_residual(&sol, &DEFAULT_RADII).map_err(failed("asymptotic_residual"))?;
    let (worst_radius, worst_angle, worst_entry, _) = asym.worst_case;

    let ladder = default_t_ladder();
    let mut endpoints = Vec::new();
    let ends: &[Endpoint] = match family.kind() {
        FamilyKind::Laguerre => &[Endpoint::Zero],
        FamilyKind::Jacobi => &[Endpoint::Zero, Endpoint::One],
    };
    for &end in ends {
        let label = if end == Endpoint::Zero { 0 } else { 1 };
        let r = endpoint_exponent_probe(&sol, end, &ladder).map_err(failed(format!("endpoint_probe({label})")))?;
        let (behavior, slope) = match r.behavior {
            EndpointBehavior::Slope(s) => ("slope", Some(s)),
            EndpointBehavior::Bounded => ("bounded", None),
            EndpointBehavior::Unbounded => ("unbounded", None),
        };
        endpoints.push(EndpointOut {
            endpoint: label,
            expected_exponent: r.expected,
            behavior,
            slope,
            usable_points: r.usable_points,
            passed: r.passed,
        });
    }

    let normalization = second_row_normalization_check(&sol).map_err(failed("second_row_normalization_check"))?;
    let moments = moment_vanishing_residual(&sol).map_err(failed("moment_vanishing_residual"))?;

    let mut out = RhResult {
        n,
        c_n: sol.c_n.into(),
        jump,
        ode: Residual::new(ode, ODE_THRESHOLD),
        asymptotic: AsymptoticOut {
            worst_normalized_ratio: asym.worst_normalized_ratio,
            worst_radius,
            worst_angle,
            worst_entry,
            passed: asym.passed,
        },
        endpoints,
        normalization: Residual::new(normalization, NORMALIZATION_THRESHOLD),
        moment_vanishing: Residual::new(moments, MOMENT_THRESHOLD),
        all_passed: false,
    };
    out.all_passed = out.jump.iter().all(|j| j.check.passed)
        && out.ode.passed
        && out.asymptotic.passed
        && out.endpoints.iter().all(|e| e.passed)
        && out.normalization.passed
        && out.moment_vanishing.passed;
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct FinitePartResult {
    pub poly: Vec<Cx>,
    #[serde(flatten)]
    pub estimate: Estimate,
    pub splits: Vec<f64>,
}

impl Tabular for FinitePartResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["re", "im", "err"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let e = &self.estimate;
        vec![vec![num(e.value.re), num(e.value.im), num(e.err)]]
    }
}

pub fn run_finite_part(family: &OrthoFamily, p: &Polynomial, fp: FpOptions) -> Result<FinitePartResult, Failure> {
    let r = match family.beta_param() {
        None => finite_part_halfline(p, family.alpha_param(), Kernel::None, &fp).map_err(failed("finite_part_halfline")),
        Some(b) => {
            finite_part_unit(p, family.alpha_param(), b, Kernel::None, &fp).map_err(failed("finite_part_unit"))
        }
    }?;
    Ok(FinitePartResult {
        poly: p.coeffs().iter().map(|&z| z.into()).collect(),
        estimate: Estimate::new(r.value, r.err_estimate),
        splits: r.splits,
    })
}

#[derive(Debug, Serialize)]
pub struct CauchyRow {
    pub z: Cx,
    #[serde(flatten)]
    pub estimate: Estimate,
}

#[derive(Debug, Serialize)]
pub struct CauchyResult {
    pub poly: Vec<Cx>,
    pub values: Vec<CauchyRow>,
}

impl Tabular for CauchyResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["z_re", "z_im", "re", "im", "err"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.values
            .iter()
            .map(|r| {
                let e = &r.estimate;
                vec![
                    num(r.z.re),
                    num(r.z.im),
                    num(e.value.re),
                    num(e.value.im),
                    num(e.err),
                ]
            })
            .collect()
    }
}

pub fn run_cauchy(
    family: &OrthoFamily,
    p: &Polynomial,
    zs: &[Complex64],
    fp: FpOptions,
    exec: Execution,
) -> Result<CauchyResult, Failure> {
    let ct = CauchyTransform::new(*family, p.clone());
    let evals = exec.map(zs, |&z| cauchy_eval(&ct, z, &fp));
    let mut values = Vec::new();
    for (&z, r) in zs.iter().zip(evals) {
        let (v, err) = r.map_err(failed(format!("cauchy_eval(z={z})")))?;
        values.push(CauchyRow {
            z: z.into(),
            estimate: Estimate::new(v, err),
        });
    }
    Ok(CauchyResult {
        poly: p.coeffs().iter().map(|&z| z.into()).collect(),
        values,
    })
}
