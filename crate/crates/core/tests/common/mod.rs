//! Reference values and helpers shared by the integration tests. The
//! tabulated constants were evaluated with 30-digit arithmetic outside this
//! crate; the quadrature here is deliberately separate from the library's.

#![allow(dead_code, clippy::excessive_precision, clippy::approx_constant)]

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// `(alpha, Gamma(alpha + 1))`
pub fn gamma_shifted_table() -> Vec<(Complex64, Complex64)> {
    vec![
        (c(0.5, 0.0), c(0.886_226_925_452_758_013_65, 0.0)),
        (c(-0.5, 0.0), c(1.772_453_850_905_516_027_3, 0.0)),
        (c(-1.5, 0.0), c(-3.544_907_701_811_032_054_6, 0.0)),
        (c(-2.5, 0.0), c(2.363_271_801_207_354_703_1, 0.0)),
        (c(-1.3, 0.7), c(-0.848_359_627_395_340_869_82, -0.530_241_369_478_997_245_63)),
        (c(2.0, 3.0), c(-0.440_113_407_637_001_711_13, -0.063_637_243_126_317_021_83)),
    ]
}

pub fn gamma_shifted(alpha: Complex64) -> Complex64 {
    gamma_shifted_table()
        .into_iter()
        .find(|(a, _)| *a == alpha)
        .map(|(_, g)| g)
        .expect("alpha not tabulated")
}

/// `(alpha, beta, Gamma(alpha + 1) Gamma(beta + 1) / Gamma(alpha + beta + 2))`
/// over the grid `{0.5, -0.5, -1.5, -2.3 + 0.4i}^2` minus the pairs with
/// `alpha + beta` in `{-2, -3, ...}`.
pub fn beta_grid_table() -> Vec<(Complex64, Complex64, Complex64)> {
    let z = c(-2.3, 0.4);
    vec![
        (c(0.5, 0.0), c(0.5, 0.0), c(0.392_699_081_698_724_154_81, 0.0)),
        (c(0.5, 0.0), c(-0.5, 0.0), c(1.570_796_326_794_896_619_2, 0.0)),
        (c(0.5, 0.0), c(-1.5, 0.0), c(-3.141_592_653_589_793_238_5, 0.0)),
        (c(0.5, 0.0), z, c(-0.311_283_138_698_540_002_64, 0.672_751_008_273_240_858_32)),
        (c(-0.5, 0.0), c(0.5, 0.0), c(1.570_796_326_794_896_619_2, 0.0)),
        (c(-0.5, 0.0), c(-0.5, 0.0), c(3.141_592_653_589_793_238_5, 0.0)),
        (c(-0.5, 0.0), z, c(-0.040_147_784_700_928_822_898, -1.325_428_124_196_017_150_2)),
        (c(-1.5, 0.0), c(0.5, 0.0), c(-3.141_592_653_589_793_238_5, 0.0)),
        (c(-1.5, 0.0), z, c(-1.204_874_524_280_157_527_2, -4.739_423_019_344_918_209_9)),
        (z, c(0.5, 0.0), c(-0.311_283_138_698_540_002_64, 0.672_751_008_273_240_858_32)),
        (z, c(-0.5, 0.0), c(-0.040_147_784_700_928_822_898, -1.325_428_124_196_017_150_2)),
        (z, c(-1.5, 0.0), c(-1.204_874_524_280_157_527_2, -4.739_423_019_344_918_209_9)),
        (z, z, c(-8.876_205_427_005_861_252_3, -13.407_173_719_370_219_689)),
    ]
}

/// Jacobi parameter pairs with `B(alpha + 1, beta + 1)`.
pub fn jacobi_grid() -> Vec<(Complex64, Complex64, Complex64)> {
    vec![
        (c(0.5, 0.0), c(0.5, 0.0), c(0.392_699_081_698_724_154_81, 0.0)),
        (c(-1.5, 0.0), c(0.3, 0.0), c(-2.732_665_852_777_303_213_1, 0.0)),
        (c(0.3, 0.0), c(-1.5, 0.0), c(-2.732_665_852_777_303_213_1, 0.0)),
        (c(-1.3, 0.7), c(0.4, 0.0), c(-0.921_182_153_233_844_630_92, -0.886_149_469_902_245_989_03)),
        (c(-2.5, 0.0), c(0.7, 0.0), c(0.467_748_507_583_593_264_12, 0.0)),
    ]
}

pub fn laguerre_grid() -> Vec<Complex64> {
    vec![c(0.5, 0.0), c(-1.5, 0.0), c(-2.5, 0.0), c(-1.3, 0.7)]
}

/// `B(alpha, beta + 1)` and `B(alpha + 1, beta)` for the unit-interval ODE
/// checks.
pub fn ode_unit_table() -> Vec<(Complex64, Complex64, Complex64, Complex64)> {
    vec![
        (
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(1.570_796_326_794_896_619_2, 0.0),
            c(1.570_796_326_794_896_619_2, 0.0),
        ),
        (
            c(-1.5, 0.0),
            c(0.3, 0.0),
            c(-0.364_355_447_036_973_696_94, 0.0),
            c(1.821_777_235_184_868_977_3, 0.0),
        ),
    ]
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `n! Gamma(alpha + n + 1)` from the tabulated `Gamma(alpha + 1)` by the
/// recurrence `Gamma(z + 1) = z Gamma(z)`.
pub fn laguerre_norm_oracle(alpha: Complex64, n: usize) -> Complex64 {
    let g = (1..=n).fold(gamma_shifted(alpha), |acc, k| acc * (alpha + k as f64));
    factorial(n) * g
}

fn jacobi_c_n(alpha: Complex64, beta: Complex64, n: usize) -> Complex64 {
    let s = alpha + beta;
    (1..=n).fold(c(1.0, 0.0), |acc, k| -acc * (s + (k + n) as f64))
}

/// `(-1)^n n! C_n Gamma(alpha+n+1) Gamma(beta+n+1) / Gamma(alpha+beta+n+2)`,
/// the expression as printed, built from `B(alpha + 1, beta + 1)` by
/// recurrences.
pub fn jacobi_norm_printed_oracle(alpha: Complex64, beta: Complex64, b0: Complex64, n: usize) -> Complex64 {
    let s = alpha + beta;
    let ratio = (1..=n).fold(b0, |acc, k| {
        let k = k as f64;
        acc * (alpha + k) * (beta + k) / (s + k + 1.0)
    });
    let c_n = jacobi_c_n(alpha, beta, n);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * factorial(n) * c_n * ratio
}

/// Adaptive Simpson rule for a smooth complex integrand.
pub fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    #[allow(clippy::too_many_arguments)]
    fn step<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        // the floor keeps roundoff-limited panels from splitting forever
        let floor = 64.0 * f64::EPSILON * (left.norm() + right.norm());
        if depth == 0 || delta.norm() <= 15.0 * tol.max(floor) {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    // Start from equal panels so that symmetric integrands cannot fake
    // convergence on the first comparisons.
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == PANELS { b } else { lo + h };
            let fa = f(lo);
            let fb = f(hi);
            let fm = f(0.5 * (lo + hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            step(f, lo, hi, fa, fm, fb, whole, tol / PANELS as f64, 30)
        })
        .sum()
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &k| acc * x + k)
}

/// `(-1)^n n! C_n B(alpha + n + 1, beta + n + 1)`: n-fold integration by
/// parts of `B(P_n, C_n x^n)` against the Rodrigues form. Built from
/// `B(alpha + 1, beta + 1)` with `B(r+1, s+1) = B(r, s) r s / ((r+s)(r+s+1))`.
pub fn jacobi_norm_by_parts_oracle(alpha: Complex64, beta: Complex64, b0: Complex64, n: usize) -> Complex64 {
    let b = (1..=n).fold(b0, |acc, k| {
        let (r, s) = (alpha + k as f64, beta + k as f64);
        acc * r * s / ((r + s) * (r + s + 1.0))
    });
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * factorial(n) * jacobi_c_n(alpha, beta, n) * b
}
