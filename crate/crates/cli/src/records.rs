//! Output records and their CSV/JSON encodings.
//!
//! Every float goes through [`sig12`] once, and both encodings print the
//! resulting `serde_json::Number`, so a value reads the same in either format.

use std::io::{self, Write};

use frog_bounds::bounds::BoundsRow;
use frog_bounds::sim::{SimConfig, SurvivalEstimate};
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rounds to 12 significant digits (ties to even) and returns the shortest
/// decimal that reads back as the rounded value. `None` for non-finite input.
pub fn sig12(x: f64) -> Option<Number> {
    if !x.is_finite() {
        return None;
    }
    let rounded: f64 = format!("{x:.11e}").parse().ok()?;
    Number::from_f64(rounded)
}

/// An ordered list of named fields sharing one `kind`.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Vec<(String, Value)>,
}

impl Record {
    fn new(kind: &'static str) -> Self {
        Record {
            kind,
            fields: Vec::new(),
        }
    }

    fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    fn push_f64(&mut self, key: impl Into<String>, x: f64) {
        self.push(key, sig12(x).map_or(Value::Null, Value::Number));
    }

    pub fn bounds_row(row: &BoundsRow) -> Self {
        let mut r = Record::new("bounds-row");
        r.push("d", row.d.get());
        r.push_f64("ub_original", row.ub_original.get());
        r.push_f64("ub_fmrt", row.ub_fmrt.get());
        r.push_f64("pbar", row.pbar.get());
        r.push_f64("vbar", row.vbar.get());
        r.push_f64("residual_Q", row.residual_q);
        r.push_f64("residual_R", row.residual_r);
        for (n, p) in &row.pbar_n_samples {
            r.push_f64(format!("pbar_n_{n}"), p.get());
        }
        r
    }

    pub fn estimate(config: &SimConfig, e: &SurvivalEstimate) -> Self {
        let mut r = Record::new("estimate");
        r.push("d", config.d.get());
        r.push_f64("p", config.p.get());
        r.push("horizon", config.horizon);
        r.push("awake_cap", config.awake_cap);
        r.push("seed", config.seed);
        r.push("trials", e.trials);
        r.push("successes", e.successes);
        r.push_f64("point", e.point);
        r.push_f64("ci95_halfwidth", e.ci95_halfwidth);
        r
    }

    pub fn verification(item: &crate::verify::CheckResult) -> Self {
        let mut r = Record::new("verification-item");
        r.push("check", item.name.clone());
        r.push("passed", item.passed);
        r.push_f64("deviation", item.deviation);
        r.push_f64("tolerance", item.tolerance);
        r
    }

    pub fn has_null(&self) -> bool {
        self.fields.iter().any(|(_, v)| v.is_null())
    }

    fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("kind".into(), self.kind.into());
        obj.insert("schema_version".into(), SCHEMA_VERSION.into());
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj).to_string()
    }

    fn csv_header(&self) -> String {
        self.fields
            .iter()
            .map(|(k, _)| k.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn csv_row(&self) -> String {
        self.fields
            .iter()
            .map(|(_, v)| match v {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Writes `records` as CSV (one header, taken from the first record) or as
/// JSON lines. All records passed together must share one field layout.
pub fn write_records<W: Write>(out: &mut W, records: &[Record], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            if let Some(first) = records.first() {
                writeln!(out, "{}", first.csv_header())?;
            }
            for r in records {
                writeln!(out, "{}", r.csv_row())?;
            }
        }
    }
    Ok(())
}
