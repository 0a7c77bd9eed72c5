//! Library side of the `cyclo` command: table builders and verification checks.

pub mod checks;
pub mod report;

use std::io::{self, Write};

use cyclotomic::{
    character_group, factorize, verify_index_relation_with, CharacterValue, Error, LKind, LValue,
    RegulatorOptions, SeriesOptions,
};
use serde::Serialize;

use crate::report::Format;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterRow {
    pub label: String,
    pub parity: String,
    pub conductor: u64,
    /// `χ(2)` as `0` or an angle `a/b` meaning `e^{2πi a/b}`.
    pub chi_two: String,
}

/// One row per character mod `m`, in the order of [`character_group`].
pub fn character_rows(m: u64) -> Result<Vec<CharacterRow>, Error> {
    character_group(m)?
        .into_iter()
        .map(|chi| {
            let chi_two = match chi.evaluate(2) {
                CharacterValue::Zero => "0".to_string(),
                CharacterValue::Angle(a) => a.to_string(),
            };
            Ok(CharacterRow {
                label: chi.label(),
                parity: chi.parity()?.to_string(),
                conductor: chi.conductor(),
                chi_two,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LMethod {
    Closed,
    Series,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LValueRow {
    pub label: String,
    pub conductor: u64,
    pub parity: String,
    pub method: String,
    pub l_re: Option<f64>,
    pub l_im: Option<f64>,
    pub l_e_re: Option<f64>,
    pub l_e_im: Option<f64>,
    /// Largest `|closed - series|` over `L` and `L_E`, with `--method both`.
    pub disagreement: Option<f64>,
    pub error: Option<String>,
}

impl LValueRow {
    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }
}

fn evaluate_pair(
    chi: &cyclotomic::DirichletCharacter,
    series: Option<&SeriesOptions>,
) -> Result<(LValue, LValue), Error> {
    let one = |kind| match series {
        Some(options) => LValue::series(chi, kind, options),
        None => LValue::closed(chi, kind),
    };
    Ok((one(LKind::Dirichlet)?, one(LKind::Euler)?))
}

/// `L(1, χ)` and `L_E(1, χ)` for every primitive non-principal `χ` of conductor dividing `m`.
pub fn lvalue_rows(
    m: u64,
    method: LMethod,
    options: &SeriesOptions,
) -> Result<Vec<LValueRow>, Error> {
    cyclotomic::units::require_admissible(m)?;
    let chars = checks::primitive_characters(m)?;
    Ok(chars
        .iter()
        .map(|chi| {
            let mut row = LValueRow {
                label: chi.label(),
                conductor: chi.modulus(),
                parity: chi.parity().map(|p| p.to_string()).unwrap_or_default(),
                method: match method {
                    LMethod::Closed => "closed-form",
                    LMethod::Series => "series",
                    LMethod::Both => "both",
                }
                .to_string(),
                l_re: None,
                l_im: None,
                l_e_re: None,
                l_e_im: None,
                disagreement: None,
                error: None,
            };
            let computed = match method {
                LMethod::Closed => evaluate_pair(chi, None).map(|v| (v, None)),
                LMethod::Series => evaluate_pair(chi, Some(options)).map(|v| (v, None)),
                LMethod::Both => evaluate_pair(chi, None).and_then(|closed| {
                    let series = evaluate_pair(chi, Some(options))?;
                    let gap = (closed.0.value - series.0.value)
                        .norm()
                        .max((closed.1.value - series.1.value).norm());
                    Ok((closed, Some(gap)))
                }),
            };
            match computed {
                Ok(((l, le), gap)) => {
                    row.l_re = Some(l.value.re);
                    row.l_im = Some(l.value.im);
                    row.l_e_re = Some(le.value.re);
                    row.l_e_im = Some(le.value.im);
                    row.disagreement = gap;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegulatorRow {
    pub modulus: u64,
    pub r_cyc: f64,
    pub r_tilde_cyc: f64,
    pub eta: f64,
    pub ratio: Option<f64>,
    pub branch: String,
    pub minus_one_and_two_generate: Option<bool>,
    pub r_tilde_singular: bool,
}

pub fn regulator_row(m: u64, options: &RegulatorOptions) -> Result<RegulatorRow, Error> {
    let report = verify_index_relation_with(m, options)?;
    Ok(RegulatorRow {
        modulus: m,
        r_cyc: report.r_cyc,
        r_tilde_cyc: report.r_tilde_cyc,
        eta: report.eta.re,
        ratio: report.ratio,
        branch: report.branch.to_string(),
        minus_one_and_two_generate: report.generates,
        r_tilde_singular: report.r_tilde_singular,
    })
}

/// Whether `m` can carry a regulator row (a prime power at least 3).
pub fn regulator_applicable(m: u64) -> bool {
    m >= 3 && factorize(m).ok().and_then(|f| f.as_prime_power()).is_some()
}

/// Writes serialisable rows as an aligned table, JSON lines or CSV.
pub fn write_rows<T: Serialize>(
    format: Format,
    rows: &[T],
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            for row in rows {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(row).map_err(io::Error::other)?
                )?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for row in rows {
                writer.serialize(row).map_err(io::Error::other)?;
            }
            writer.flush()
        }
        Format::Text => {
            let mut buf = Vec::new();
            write_rows(Format::Csv, rows, &mut buf)?;
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(&buf[..]);
            let table: Vec<Vec<String>> = reader
                .records()
                .map(|r| r.map(|r| r.iter().map(str::to_string).collect()))
                .collect::<Result<_, _>>()
                .map_err(io::Error::other)?;
            let columns = table.first().map_or(0, Vec::len);
            let widths: Vec<usize> = (0..columns)
                .map(|c| {
                    table
                        .iter()
                        .map(|r| r[c].chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            for row in &table {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                writeln!(out, "{}", cells.join("  ").trim_end())?;
            }
            Ok(())
        }
    }
}
