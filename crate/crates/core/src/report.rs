//! Report rendering and persistence.
//!
//! Every report is written together with the configuration that produced it.
//! JSON output is `{"config": ..., "report": ...}`; CSV output starts with
//! `# key=value` comment lines for the configuration, then a header row.
//! Nothing time- or thread-dependent is written, so equal configurations give
//! byte-identical files.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::characters::MaxGenusSummary;
use crate::exact::ExhaustiveReport;
use crate::stats::{CensusExperiment, SystoleRow};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::invalid(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }
}

/// Anything that can be written as JSON and flattened into a CSV table.
pub trait Report: Serialize {
    fn table(&self) -> Table;
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    config: &'a C,
    report: &'a R,
}

pub fn render<C: Serialize, R: Report>(config: &C, report: &R, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Envelope { config, report })?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut out = String::new();
            if let serde_json::Value::Object(map) = serde_json::to_value(config)? {
                for (k, v) in map {
                    let v = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    out.push_str(&format!("# {k}={v}\n"));
                }
            }
            let table = report.table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Consistency(e.to_string()))?;
            out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Consistency(e.to_string()))?);
            Ok(out)
        }
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_report<C: Serialize, R: Report>(
    config: &C,
    report: &R,
    path: Option<&Path>,
    format: Format,
) -> Result<()> {
    let text = render(config, report, format)?;
    match path {
        Some(p) => fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

impl Report for CensusExperiment {
    fn table(&self) -> Table {
        Table::new(&["class", "z", "count", "frequency"], self.csv_rows())
    }
}

impl Report for ExhaustiveReport {
    fn table(&self) -> Table {
        if self.classes.is_empty() {
            let mut rows: Vec<Vec<String>> = self
                .genus_histogram
                .iter()
                .map(|(g, c)| vec![g.to_string(), c.to_string()])
                .collect();
            if self.disconnected > 0 {
                rows.push(vec!["disconnected".into(), self.disconnected.to_string()]);
            }
            return Table::new(&["genus", "count"], rows);
        }
        let mut header = vec!["genus".to_string()];
        header.extend(self.classes.iter().map(|c| format!("Z_{c}")));
        header.push("count".into());
        let rows = self
            .joint_counts
            .iter()
            .map(|j| {
                let mut row = vec![j
                    .genus
                    .map_or_else(|| "disconnected".to_string(), |g| g.to_string())];
                row.extend(j.z.iter().map(|z| z.to_string()));
                row.push(j.count.to_string());
                row
            })
            .collect();
        Table { header, rows }
    }
}

impl Report for MaxGenusSummary {
    fn table(&self) -> Table {
        Table::new(
            &["N", "M", "s_value", "exact", "asymptotic", "probability"],
            vec![vec![
                self.n.to_string(),
                self.m.to_string(),
                self.s_value.clone(),
                self.exact.clone(),
                self.asymptotic.clone(),
                self.probability_approx.to_string(),
            ]],
        )
    }
}

impl Report for Vec<SystoleRow> {
    fn table(&self) -> Table {
        Table::new(
            &["trace", "length", "probability", "classes", "lambda_sum"],
            self.iter()
                .map(|r| {
                    vec![
                        r.trace.to_string(),
                        r.length.to_string(),
                        r.probability.to_string(),
                        r.classes.to_string(),
                        r.lambda_sum.clone(),
                    ]
                })
                .collect(),
        )
    }
}
