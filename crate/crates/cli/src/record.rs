//! The machine-readable result of one command, and its three renderings.
//!
//! Table and CSV print every decimal with the same formatter, so the two
//! agree digit for digit at the record's `precision`.

use std::collections::BTreeMap;
use std::io::{self, Write};

use monty_core::{Rational, SimStats};
use serde::{Deserialize, Serialize};

use crate::args::Format;

/// Decimal places used for every printed decimal.
pub const DEFAULT_PRECISION: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub model_name: String,
    pub parameters: BTreeMap<String, String>,
    /// Lowest-terms `"a/b"` (or `"a"`).
    pub exact_value: Option<Rational>,
    pub simulated: Option<SimStats>,
    pub agreement: Option<bool>,
    /// Decimal places used by the table and CSV renderings.
    pub precision: usize,
}

impl OutputRecord {
    pub fn new(command: &str, model_name: &str) -> Self {
        OutputRecord {
            command: command.into(),
            model_name: model_name.into(),
            parameters: BTreeMap::new(),
            exact_value: None,
            simulated: None,
            agreement: None,
            precision: DEFAULT_PRECISION,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn exact_decimal(&self) -> Option<String> {
        self.exact_value.map(|v| v.to_decimal_string(self.precision))
    }

    fn decimal(&self, x: f64) -> String {
        format!("{:.*}", self.precision, x)
    }
}

/// One CSV row for non-sweep commands.
#[derive(Serialize)]
struct CsvRow {
    command: String,
    model_name: String,
    parameters: String,
    exact: String,
    decimal: String,
    trials_requested: String,
    trials_counted: String,
    wins: String,
    estimate: String,
    ci_low: String,
    ci_high: String,
    interval: String,
    agreement: String,
}

impl From<&OutputRecord> for CsvRow {
    fn from(r: &OutputRecord) -> Self {
        let sim = r.simulated.as_ref();
        let sim_field = |f: fn(&SimStats) -> String| sim.map(f).unwrap_or_default();
        CsvRow {
            command: r.command.clone(),
            model_name: r.model_name.clone(),
            parameters: r
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";"),
            exact: r.exact_value.map(|v| v.to_string()).unwrap_or_default(),
            decimal: r.exact_decimal().unwrap_or_default(),
            trials_requested: sim_field(|s| s.trials_requested.to_string()),
            trials_counted: sim_field(|s| s.trials_counted.to_string()),
            wins: sim_field(|s| s.wins.to_string()),
            estimate: sim.map(|s| r.decimal(s.estimate)).unwrap_or_default(),
            ci_low: sim.map(|s| r.decimal(s.ci_low)).unwrap_or_default(),
            ci_high: sim.map(|s| r.decimal(s.ci_high)).unwrap_or_default(),
            interval: sim_field(|_| "wilson-95".into()),
            agreement: r.agreement.map(|a| a.to_string()).unwrap_or_default(),
        }
    }
}

#[derive(Serialize)]
struct SweepRow {
    p: String,
    quantity: String,
    exact: String,
    decimal: String,
}

fn csv_error(err: csv::Error) -> io::Error {
    io::Error::other(err)
}

/// Renders a single record.
pub fn write_record(out: &mut dyn Write, record: &OutputRecord, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, record)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.serialize(CsvRow::from(record)).map_err(csv_error)?;
            w.flush()
        }
        Format::Table => write_table(out, record),
    }
}

fn write_table(out: &mut dyn Write, r: &OutputRecord) -> io::Result<()> {
    let mut rows: Vec<(String, String)> = vec![
        ("command".into(), r.command.clone()),
        ("model".into(), r.model_name.clone()),
    ];
    rows.extend(r.parameters.iter().map(|(k, v)| (k.clone(), v.clone())));
    if let (Some(exact), Some(decimal)) = (r.exact_value, r.exact_decimal()) {
        rows.push(("exact".into(), exact.to_string()));
        rows.push(("decimal".into(), decimal));
    }
    if let Some(s) = &r.simulated {
        rows.push(("trials requested".into(), s.trials_requested.to_string()));
        rows.push(("trials counted".into(), s.trials_counted.to_string()));
        rows.push(("wins".into(), s.wins.to_string()));
        rows.push(("estimate".into(), r.decimal(s.estimate)));
        rows.push((
            "95% interval".into(),
            format!("[{}, {}] (wilson-95)", r.decimal(s.ci_low), r.decimal(s.ci_high)),
        ));
    }
    if let Some(a) = r.agreement {
        rows.push(("agreement".into(), a.to_string()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

/// Renders sweep records: a JSON array, the `p,quantity,exact,decimal` CSV,
/// or an aligned table with the same columns.
pub fn write_sweep(out: &mut dyn Write, records: &[OutputRecord], format: Format) -> io::Result<()> {
    let rows: Vec<SweepRow> = records
        .iter()
        .map(|r| SweepRow {
            p: r.parameters.get("p").cloned().unwrap_or_default(),
            quantity: r.parameters.get("quantity").cloned().unwrap_or_default(),
            exact: r.exact_value.map(|v| v.to_string()).unwrap_or_default(),
            decimal: r.exact_decimal().unwrap_or_default(),
        })
        .collect();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if rows.is_empty() {
                w.write_record(["p", "quantity", "exact", "decimal"]).map_err(csv_error)?;
            }
            for row in &rows {
                w.serialize(row).map_err(csv_error)?;
            }
            w.flush()
        }
        Format::Table => {
            let header = ["p", "quantity", "exact", "decimal"];
            let cells: Vec<[&str; 4]> = rows
                .iter()
                .map(|r| [r.p.as_str(), r.quantity.as_str(), r.exact.as_str(), r.decimal.as_str()])
                .collect();
            let mut widths = header.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            for row in std::iter::once(&header).chain(&cells) {
                let line: Vec<String> = row
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
            Ok(())
        }
    }
}
