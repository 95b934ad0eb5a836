//! Output rendering shared by the CLI: series tables, count tables, and
//! sample listings in the supported formats.

use num_rational::BigRational;
use permclass_core::perm::Permutation;
use permclass_core::series::PowerSeries;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Bfile,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<OutputFormat> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Some(OutputFormat::Text),
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            "bfile" => Some(OutputFormat::Bfile),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("b-file output requires integer values; coefficient of z^{0} is not")]
    NonInteger(usize),
    #[error("format not supported for this output")]
    Unsupported,
}

fn rational_string(c: &BigRational) -> String {
    // decimal integers as-is, otherwise "numerator/denominator"
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// The series as a bare JSON array of decimal coefficient strings
/// (`"numerator/denominator"` when non-integer).
pub fn series_json_strings(series: &PowerSeries) -> serde_json::Value {
    serde_json::Value::Array(
        series
            .coeffs()
            .iter()
            .map(|c| serde_json::Value::String(rational_string(c)))
            .collect(),
    )
}

/// Renders indexed values. `text` and `bfile` print `n value` lines (bfile
/// insists on integers), `csv` adds the `n,value` header, `json` produces an
/// array of `{n, value}` objects with the value as a decimal string, since
/// the integers here outgrow 64-bit well before n = 40.
pub fn render_series(series: &PowerSeries, format: OutputFormat) -> Result<String, FormatError> {
    let rows: Vec<(usize, String)> = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| (n, rational_string(c)))
        .collect();
    if format == OutputFormat::Bfile {
        if let Some((n, _)) = series
            .coeffs()
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_integer())
        {
            return Err(FormatError::NonInteger(n));
        }
    }
    Ok(render_rows(&rows, format))
}

/// Same table shapes for plain integer counts.
pub fn render_counts(counts: &[u64], format: OutputFormat) -> String {
    let rows: Vec<(usize, String)> = counts
        .iter()
        .enumerate()
        .map(|(n, c)| (n, c.to_string()))
        .collect();
    render_rows(&rows, format)
}

fn render_rows(rows: &[(usize, String)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text | OutputFormat::Bfile => {
            rows.iter().map(|(n, v)| format!("{n} {v}\n")).collect()
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,value\n");
            for (n, v) in rows {
                out.push_str(&format!("{n},{v}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, v)| serde_json::json!({ "n": n, "value": v }))
                .collect();
            let mut s = serde_json::to_string_pretty(&arr).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// One permutation per line in one-line notation, or a JSON array of arrays.
pub fn render_samples(perms: &[Permutation], format: OutputFormat) -> Result<String, FormatError> {
    match format {
        OutputFormat::Text => Ok(perms.iter().map(|p| format!("{p}\n")).collect()),
        OutputFormat::Json => {
            let arr: Vec<Vec<u32>> = perms.iter().map(|p| p.values().to_vec()).collect();
            let mut s = serde_json::to_string(&arr).expect("serializable");
            s.push('\n');
            Ok(s)
        }
        _ => Err(FormatError::Unsupported),
    }
}
