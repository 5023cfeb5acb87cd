use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{value} lies within {distance:e} of a pole in {set}")]
    Pole {
        value: Complex64,
        distance: f64,
        set: &'static str,
    },

    #[error("point at distance {distance} from the expansion center exceeds the admissible radius {limit}")]
    Radius { distance: f64, limit: f64 },

    #[error("power series did not reach tail bound {tol:e} within {max_terms} terms (last bound {bound:e})")]
    Truncation {
        tol: f64,
        bound: f64,
        max_terms: usize,
    },

    #[error("adaptive quadrature on [{a}, {b}] stalled at error {err:e} (target {target:e}) after {subdivisions} subdivisions")]
    Quadrature {
        a: f64,
        b: f64,
        err: f64,
        target: f64,
        subdivisions: usize,
    },

    #[error("polynomial of index {n} has degree below {n}: leading coefficient vanishes")]
    DegenerateDegree { n: usize },

    #[error("point {z} is within {distance:e} of the cut (minimum {min:e})")]
    CutProximity {
        z: Complex64,
        distance: f64,
        min: f64,
    },

    #[error("exponent fit needs at least 3 usable points, got {usable}")]
    Fit { usable: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
