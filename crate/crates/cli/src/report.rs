use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// The operation ran and answered in the negative.
    Fail,
    /// The operation could not run.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub millis: u64,
    pub groebner_steps: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub session: String,
    pub records: Vec<Record>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Report {
    pub fn new(session: impl Into<String>, records: Vec<Record>) -> Self {
        Report { version: REPORT_VERSION, session: session.into(), records }
    }

    pub fn has_errors(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Pretty JSON with every `millis` field removed, for golden files.
    pub fn to_golden(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Some(records) = v.get_mut("records").and_then(Value::as_array_mut) {
            for r in records {
                if let Some(obj) = r.as_object_mut() {
                    obj.remove("millis");
                }
            }
        }
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    /// One aligned row per record: command, status, steps, time and a
    /// compact payload.
    pub fn to_text(&self) -> String {
        let header = ["command", "status", "steps", "ms"];
        let rows: Vec<[String; 4]> = self
            .records
            .iter()
            .map(|r| {
                [r.command.clone(), r.status.as_str().to_string(), r.groebner_steps.to_string(), r.millis.to_string()]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let pad = |out: &mut String, cells: [&str; 4], last: &str| {
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                let fill = w - cell.chars().count();
                // numbers align right
                if i >= 2 {
                    let _ = write!(out, "{}{cell}  ", " ".repeat(fill));
                } else {
                    let _ = write!(out, "{cell}{}  ", " ".repeat(fill));
                }
            }
            out.push_str(last);
            out.push('\n');
        };
        pad(&mut out, header, "payload");
        for (row, r) in rows.iter().zip(&self.records) {
            let cells = [row[0].as_str(), row[1].as_str(), row[2].as_str(), row[3].as_str()];
            pad(&mut out, cells, &r.payload.to_string());
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = self.to_json_pretty();
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }
}
