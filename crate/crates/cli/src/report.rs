use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Skipped => "skipped",
        })
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub modulus: u64,
    pub check: String,
    pub status: Status,
    pub residual: f64,
    pub details: String,
}

impl VerificationRecord {
    /// Pass iff `residual < tolerance`; non-finite residuals fail.
    pub fn judged(
        modulus: u64,
        check: &str,
        residual: f64,
        tolerance: f64,
        details: impl Into<String>,
    ) -> Self {
        let status = if residual.is_finite() && residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            modulus,
            check: check.to_string(),
            status,
            residual: if residual.is_finite() {
                residual
            } else {
                f64::MAX
            },
            details: details.into(),
        }
    }

    pub fn fail(modulus: u64, check: &str, details: impl Into<String>) -> Self {
        Self {
            modulus,
            check: check.to_string(),
            status: Status::Fail,
            residual: f64::MAX,
            details: details.into(),
        }
    }

    pub fn skipped(modulus: u64, check: &str, reason: impl Into<String>) -> Self {
        Self {
            modulus,
            check: check.to_string(),
            status: Status::Skipped,
            residual: 0.0,
            details: reason.into(),
        }
    }
}

/// Tolerances in force for a run; written at the top of every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// closed-vs-series agreement
    pub series: f64,
    /// relative singularity threshold for regulator determinants
    pub det: f64,
    pub ratio: f64,
    pub gauss: f64,
    pub twisted: f64,
    pub euler_factor: f64,
    pub orthogonality: f64,
    pub dedekind: f64,
    pub descent: f64,
    pub discriminant: f64,
    /// working precision in decimal digits
    pub precision_digits: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            series: 1e-6,
            det: 1e-8,
            ratio: 1e-6,
            gauss: 1e-9,
            twisted: 1e-10,
            euler_factor: 1e-10,
            orthogonality: 1e-10,
            dedekind: 1e-8,
            descent: 1e-9,
            discriminant: 1e-8,
            precision_digits: 15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct Header<'a> {
    header: &'a str,
    tolerances: &'a Tolerances,
}

/// Header goes to `out` in text mode and to `err` otherwise, so that the
/// record stream stays machine readable.
pub fn write_header(
    format: Format,
    tolerances: &Tolerances,
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Text => {
            let t = tolerances;
            writeln!(
                out,
                "# tolerances: series={:e} det={:e} ratio={:e} gauss={:e} twisted={:e} euler-factor={:e} orthogonality={:e} dedekind={:e} descent={:e} discriminant={:e} precision={} digits",
                t.series, t.det, t.ratio, t.gauss, t.twisted, t.euler_factor,
                t.orthogonality, t.dedekind, t.descent, t.discriminant, t.precision_digits
            )
        }
        Format::Json | Format::Csv => {
            let header = Header {
                header: "verification",
                tolerances,
            };
            writeln!(
                err,
                "{}",
                serde_json::to_string(&header).map_err(io::Error::other)?
            )
        }
    }
}

pub fn write_records(
    format: Format,
    records: &[VerificationRecord],
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Text => {
            writeln!(
                out,
                "{:>7}  {:<22}  {:<7}  {:>10}  details",
                "modulus", "check", "status", "residual"
            )?;
            for r in records {
                writeln!(
                    out,
                    "{:>7}  {:<22}  {:<7}  {:>10.3e}  {}",
                    r.modulus, r.check, r.status, r.residual, r.details
                )?;
            }
            Ok(())
        }
        Format::Json => {
            for r in records {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(r).map_err(io::Error::other)?
                )?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for r in records {
                writer.serialize(r).map_err(io::Error::other)?;
            }
            writer.flush()
        }
    }
}

/// Sorts by modulus, then check name.
pub fn sort_records(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| (a.modulus, &a.check).cmp(&(b.modulus, &b.check)));
}

pub fn all_pass(records: &[VerificationRecord]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}
