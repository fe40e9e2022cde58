//! Report types and their JSON / CSV encodings.
//!
//! Both encodings are deterministic: JSON keys are sorted, every real is
//! written with 17 significant digits, and rows follow (grid index, check id).

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::config::{OutputFormat, SweepConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 10] =
    ["check_id", "s", "cutoff", "psi1", "psi2", "beta1", "beta2", "residual", "pass", "note"];

/// One check at one grid point. `residual` is absent when the check hit a
/// domain error; the error text is in `note`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub check_id: String,
    pub s: f64,
    pub cutoff: usize,
    pub psi1: f64,
    pub psi2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub residual: Option<f64>,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormRatioRecord {
    pub s: f64,
    pub control: u8,
    pub target: u8,
    pub psi: f64,
    pub beta: f64,
    pub measured: f64,
    pub product_prediction: f64,
    pub sqrt_product_prediction: f64,
    /// `product`, `sqrt_product`, or absent when neither or both match.
    pub matching_law: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    /// Failures of checks expected to pass at that grid point.
    pub unexpected_fail: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: BTreeMap<String, CheckTally>,
    pub total_pass: usize,
    pub total_fail: usize,
    pub unexpected_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: SweepConfig,
    pub entries: Vec<Entry>,
    pub norm_ratios: Vec<NormRatioRecord>,
    pub summary: Summary,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv header {found:?} does not match {expected:?}")]
    CsvHeader { found: Vec<String>, expected: Vec<String> },
    #[error("csv field `{column}`: cannot parse `{value}`")]
    CsvField { column: &'static str, value: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reals with 17 significant digits in scientific notation.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON with every f64 written through [`format_real`].
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_real(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Any serializable value as deterministic JSON: sorted keys, fixed digits,
/// trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, ReportError> {
    // a Value round trip sorts object keys
    let value = serde_json::to_value(value)?;
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

pub fn serialize(report: &SweepReport, format: OutputFormat) -> Result<Vec<u8>, ReportError> {
    match format {
        OutputFormat::Json => to_json_bytes(report),
        OutputFormat::Csv => entries_to_csv(&report.entries),
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<SweepReport, ReportError> {
    Ok(serde_json::from_slice(bytes)?)
}

pub fn entries_to_csv(entries: &[Entry]) -> Result<Vec<u8>, ReportError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_COLUMNS)?;
    for e in entries {
        writer.write_record([
            e.check_id.clone(),
            format_real(e.s),
            e.cutoff.to_string(),
            format_real(e.psi1),
            format_real(e.psi2),
            format_real(e.beta1),
            format_real(e.beta2),
            e.residual.map(format_real).unwrap_or_default(),
            e.pass.to_string(),
            e.note.clone(),
        ])?;
    }
    writer.into_inner().map_err(|e| ReportError::Io(e.into_error()))
}

fn field<T: std::str::FromStr>(column: &'static str, value: &str) -> Result<T, ReportError> {
    value.parse().map_err(|_| ReportError::CsvField { column, value: value.to_string() })
}

pub fn parse_csv(bytes: &[u8]) -> Result<Vec<Entry>, ReportError> {
    let mut reader = csv::Reader::from_reader(bytes);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        return Err(ReportError::CsvHeader {
            found: header,
            expected: CSV_COLUMNS.iter().map(|c| c.to_string()).collect(),
        });
    }
    let mut entries = Vec::new();
    for record in reader.records() {
        let r = record?;
        entries.push(Entry {
            check_id: r[0].to_string(),
            s: field("s", &r[1])?,
            cutoff: field("cutoff", &r[2])?,
            psi1: field("psi1", &r[3])?,
            psi2: field("psi2", &r[4])?,
            beta1: field("beta1", &r[5])?,
            beta2: field("beta2", &r[6])?,
            residual: if r[7].is_empty() { None } else { Some(field("residual", &r[7])?) },
            pass: field("pass", &r[8])?,
            note: r[9].to_string(),
        });
    }
    Ok(entries)
}
