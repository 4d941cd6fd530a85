//! Machine-readable report rows and their CSV / JSON renderings.
//!
//! Values are always decimal strings at full output precision, never binary
//! floats, so golden files are exact across platforms. Complex values are
//! split into `_re` / `_im` columns.

use crate::context::{bits_to_digits_roundtrip, NumericContext};
use crate::error::{Error, Result};
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!("unknown output format '{other}'"))),
        }
    }
}

/// One named decimal value inside a report row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

/// One result row of a command run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub command: String,
    pub case: String,
    pub digits: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<String>,
    pub values: Vec<NamedValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    pub pass: bool,
}

impl ReportRow {
    pub fn new(command: &str, case: &str, digits: u32) -> Self {
        Self {
            command: command.to_string(),
            case: case.to_string(),
            digits,
            n: None,
            s: None,
            values: Vec::new(),
            residual: None,
            pass: true,
        }
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_s(mut self, s: &str) -> Self {
        self.s = Some(s.to_string());
        self
    }

    pub fn push_value(&mut self, name: &str, value: String) {
        self.values.push(NamedValue {
            name: name.to_string(),
            value,
        });
    }

    pub fn push_float(&mut self, name: &str, x: &Float, ctx: &NumericContext) {
        self.push_value(name, fmt_float(x, ctx));
    }

    pub fn push_complex(&mut self, name: &str, z: &Complex, ctx: &NumericContext) {
        self.push_value(&format!("{name}_re"), fmt_float(z.real(), ctx));
        self.push_value(&format!("{name}_im"), fmt_float(z.imag(), ctx));
    }

    pub fn set_residual(&mut self, x: &Float, ctx: &NumericContext) {
        self.residual = Some(fmt_float(x, ctx));
    }
}

/// Render a float as a decimal string that parses back to the same value.
pub fn fmt_float(x: &Float, ctx: &NumericContext) -> String {
    let digits = bits_to_digits_roundtrip(ctx.output_prec());
    x.to_string_radix(10, Some(digits))
}

/// Parse a decimal string produced by [`fmt_float`].
pub fn parse_float(text: &str, ctx: &NumericContext) -> Result<Float> {
    let parsed = Float::parse(text)
        .map_err(|e| Error::Config(format!("bad decimal string '{text}': {e}")))?;
    Ok(Float::with_val(ctx.output_prec(), parsed))
}

/// Render rows as a single JSON document.
pub fn render_json(rows: &[ReportRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("report rows serialize");
    out.push('\n');
    out
}

/// Parse rows back from the JSON emitted by [`render_json`].
pub fn parse_json(text: &str) -> Result<Vec<ReportRow>> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("bad report JSON: {e}")))
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Render rows as CSV: a header and one line per row. Value columns are the
/// union of names in first-appearance order; missing cells stay empty.
pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut names: Vec<String> = Vec::new();
    for row in rows {
        for v in &row.values {
            if !names.contains(&v.name) {
                names.push(v.name.clone());
            }
        }
    }
    let mut out = String::new();
    out.push_str("command,case,digits,n,s");
    for n in &names {
        out.push(',');
        out.push_str(&csv_quote(n));
    }
    out.push_str(",residual,pass\n");
    for row in rows {
        out.push_str(&csv_quote(&row.command));
        out.push(',');
        out.push_str(&csv_quote(&row.case));
        out.push(',');
        out.push_str(&row.digits.to_string());
        out.push(',');
        if let Some(n) = row.n {
            out.push_str(&n.to_string());
        }
        out.push(',');
        if let Some(s) = &row.s {
            out.push_str(&csv_quote(s));
        }
        for name in &names {
            out.push(',');
            if let Some(v) = row.values.iter().find(|v| &v.name == name) {
                out.push_str(&csv_quote(&v.value));
            }
        }
        out.push(',');
        if let Some(r) = &row.residual {
            out.push_str(&csv_quote(r));
        }
        out.push(',');
        out.push_str(if row.pass { "pass" } else { "fail" });
        out.push('\n');
    }
    out
}

/// Write rows in the requested format to `path`, or to stdout when absent.
pub fn emit_report(rows: &[ReportRow], format: OutputFormat, path: Option<&Path>) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Config("refusing to emit an empty report".into()));
    }
    let text = match format {
        OutputFormat::Json => render_json(rows),
        OutputFormat::Csv => render_csv(rows),
    };
    match path {
        Some(p) => {
            let mut file = std::fs::File::create(p)?;
            file.write_all(text.as_bytes())?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
