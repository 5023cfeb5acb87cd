use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {token:?} as {what}")]
pub struct ParseError {
    pub token: String,
    pub what: &'static str,
}

fn parse_float(token: &str) -> Result<f64, ParseError> {
    let fail = || ParseError {
        token: token.to_string(),
        what: "a finite number",
    };
    // f64::from_str also accepts "inf" and "nan"; those are rejected here
    let v: f64 = token.parse().map_err(|_| fail())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(fail())
    }
}

/// Parses `a`, `a+bi`, `a-bi` or `bi`, where `a` and `b` are decimal
/// floats with optional exponents.
pub fn parse_complex(s: &str) -> Result<Complex64, ParseError> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return parse_float(s).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    // last sign that is neither leading nor part of an exponent
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_float(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = parse_float(im).map_err(|_| ParseError {
        token: s.to_string(),
        what: "a complex number",
    })?;
    Ok(Complex64::new(re, im))
}

/// Comma-separated coefficients in ascending order, e.g. `"1, 0, -0.5+2i"`.
pub fn parse_coeffs(s: &str) -> Result<Vec<Complex64>, ParseError> {
    s.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-1.3+0.7i").unwrap(), Complex64::new(-1.3, 0.7));
        assert_eq!(parse_complex("1e-2-3i").unwrap(), Complex64::new(0.01, -3.0));
    }

    #[test]
    fn signs_and_exponents() {
        assert_eq!(parse_complex("+2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-2.5e+1+1E-1i").unwrap(), Complex64::new(-25.0, 0.1));
        assert_eq!(parse_complex("-0.7i").unwrap(), Complex64::new(0.0, -0.7));
        assert_eq!(parse_complex(" 3 ").unwrap(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn rejects_non_finite_and_garbage() {
        for bad in ["nan", "inf", "-inf", "1+nani", "1+infi", "", "i", "1+i", "1+2", "1+2j", "abc", "1e400"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
        let err = parse_complex("1.2.3").unwrap_err();
        assert_eq!(err.token, "1.2.3");
    }

    #[test]
    fn coefficient_lists() {
        let c = parse_coeffs("1, -0.5+2i,0").unwrap();
        assert_eq!(c, vec![Complex64::new(1.0, 0.0), Complex64::new(-0.5, 2.0), Complex64::new(0.0, 0.0)]);
        assert!(parse_coeffs("1,,2").is_err());
    }
}
