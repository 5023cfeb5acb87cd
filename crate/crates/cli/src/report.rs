use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// A computed complex value with its error estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Estimate {
    pub value: Cx,
    pub err: f64,
}

impl Estimate {
    pub fn new(value: Complex64, err: f64) -> Self {
        Self {
            value: value.into(),
            err,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyEcho {
    pub kind: &'static str,
    pub alpha: Cx,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Cx>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub operation: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    pub status: &'static str,
    pub family: FamilyEcho,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

/// Flat table view of a result for CSV output.
pub trait Tabular {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn render<T: Serialize + Tabular>(report: &Report<T>, format: Format) -> anyhow::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match (&report.result, &report.failure) {
                (Some(result), _) => {
                    w.write_record(result.header())?;
                    for row in result.rows() {
                        w.write_record(row)?;
                    }
                }
                (None, Some(f)) => {
                    w.write_record(["status", "operation", "message"])?;
                    w.write_record([report.status, &f.operation, &f.message])?;
                }
                (None, None) => {}
            }
            Ok(w.into_inner()?)
        }
    }
}

/// Writes to a temporary file beside `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct One(f64);

    impl Tabular for One {
        fn header(&self) -> Vec<&'static str> {
            vec!["name", "value"]
        }
        fn rows(&self) -> Vec<Vec<String>> {
            vec![vec!["a,b".into(), self.0.to_string()]]
        }
    }

    fn report() -> Report<One> {
        Report {
            schema: SCHEMA,
            command: "test",
            status: "ok",
            family: FamilyEcho {
                kind: "laguerre",
                alpha: Complex64::new(0.5, -1.0).into(),
                beta: None,
            },
            tol: 1e-10,
            result: Some(One(0.25)),
            failure: None,
        }
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_slice(&render(&report(), Format::Json).unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["family"]["alpha"]["im"], -1.0);
        assert!(v.get("beta").is_none() && v["family"].get("beta").is_none());
        assert!(v.get("failure").is_none());
    }

    #[test]
    fn csv_quotes_fields() {
        let text = String::from_utf8(render(&report(), Format::Csv).unwrap()).unwrap();
        assert_eq!(text, "name,value\n\"a,b\",0.25\n");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
