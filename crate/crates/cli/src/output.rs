//! Output records and their three renderings.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub check: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn passed(&mut self, name: impl Into<String>, cases: usize) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Match,
            cases,
            detail: String::new(),
        });
    }

    pub fn skipped(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            cases: 0,
            detail: why.into(),
        });
    }

    /// Records a failed check. Only the first counterexample is kept.
    pub fn failed(&mut self, name: impl Into<String>, cases: usize, example: Counterexample) {
        let name = name.into();
        let detail = format!(
            "{}: expected {}, got {}",
            example.params, example.expected, example.actual
        );
        self.checks.push(Check {
            name,
            status: Status::Mismatch,
            cases,
            detail,
        });
        if self.counterexample.is_none() {
            self.counterexample = Some(example);
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Mismatch)
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Scalar(String),
    /// Values indexed `start, start + 1, ...` by `index`.
    Sequence { index: &'static str, start: usize, values: Vec<String> },
    /// Lower-triangular rows; row `n` has `n + 1` entries.
    Matrix(Vec<Vec<String>>),
    Polynomial { coefficients: Vec<String>, text: String },
    Report(Report),
}

#[derive(Clone, Debug)]
pub struct Record {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Payload,
    pub method: String,
}

impl Record {
    pub fn new(command: &str, method: &str, result: Payload) -> Self {
        Record {
            command: command.to_string(),
            params: Map::new(),
            result,
            method: method.to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": Value::Object(self.params.clone()),
            "result": payload_json(&self.result),
            "method": self.method,
        })
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json()),
            Format::Csv => self.write_csv(out),
            Format::Plain => self.write_plain(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        match &self.result {
            Payload::Scalar(v) => {
                w.write_record(["value"])?;
                w.write_record([v])?;
            }
            Payload::Sequence { index, start, values } => {
                w.write_record([*index, "value"])?;
                for (i, v) in values.iter().enumerate() {
                    w.write_record([(start + i).to_string(), v.clone()])?;
                }
            }
            Payload::Matrix(rows) => {
                let size = rows.len();
                let mut header = vec!["n".to_string()];
                header.extend((0..size).map(|k| format!("k{k}")));
                w.write_record(&header)?;
                for (n, row) in padded(rows).into_iter().enumerate() {
                    let mut rec = vec![n.to_string()];
                    rec.extend(row);
                    w.write_record(&rec)?;
                }
            }
            Payload::Polynomial { coefficients, .. } => {
                w.write_record(["degree", "coefficient"])?;
                for (d, c) in coefficients.iter().enumerate() {
                    w.write_record([d.to_string(), c.clone()])?;
                }
            }
            Payload::Report(report) => {
                w.write_record(["check", "status", "cases", "detail"])?;
                for c in &report.checks {
                    w.write_record([c.name.as_str(), c.status.as_str(), &c.cases.to_string(), &c.detail])?;
                }
            }
        }
        w.flush()
    }

    fn write_plain(&self, out: &mut dyn Write) -> io::Result<()> {
        match &self.result {
            Payload::Scalar(v) => writeln!(out, "{v}"),
            Payload::Sequence { values, .. } => writeln!(out, "{}", values.join(" ")),
            Payload::Matrix(rows) => {
                let full = padded(rows);
                let width = full.iter().flatten().map(String::len).max().unwrap_or(1);
                for row in full {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
                Ok(())
            }
            Payload::Polynomial { text, .. } => writeln!(out, "{text}"),
            Payload::Report(report) => {
                for c in &report.checks {
                    match c.status {
                        Status::Match => writeln!(out, "{}: match ({} cases)", c.name, c.cases)?,
                        Status::Skipped => writeln!(out, "{}: skipped ({})", c.name, c.detail)?,
                        Status::Mismatch => writeln!(out, "{}: MISMATCH ({} cases)", c.name, c.cases)?,
                    }
                }
                match &report.counterexample {
                    None => writeln!(out, "all checks match"),
                    Some(ce) => writeln!(
                        out,
                        "first counterexample: {} at {}: expected {}, got {}",
                        ce.check, ce.params, ce.expected, ce.actual
                    ),
                }
            }
        }
    }
}

fn padded(rows: &[Vec<String>]) -> Vec<Vec<String>> {
    let size = rows.len();
    rows.iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(size, "0".to_string());
            r
        })
        .collect()
}

fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::Scalar(v) => json!(v),
        Payload::Sequence { values, .. } => json!(values),
        Payload::Matrix(rows) => json!(rows),
        Payload::Polynomial { coefficients, text } => json!({ "coefficients": coefficients, "text": text }),
        Payload::Report(r) => {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "status": c.status.as_str(), "cases": c.cases, "detail": c.detail }))
                .collect();
            let ce = match &r.counterexample {
                None => Value::Null,
                Some(ce) => json!({
                    "check": ce.check,
                    "params": ce.params,
                    "expected": ce.expected,
                    "actual": ce.actual,
                }),
            };
            json!({
                "status": if r.ok() { "match" } else { "mismatch" },
                "checks": checks,
                "counterexample": ce,
            })
        }
    }
}
