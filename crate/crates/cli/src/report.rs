use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One CSV row: `command, k, check_name, value, threshold, pass`.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub command: &'static str,
    pub k: u32,
    pub check_name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

pub struct Report {
    pub command: &'static str,
    pub k: u32,
    pub json: Value,
    pub text: Vec<String>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: &'static str, k: u32) -> Self {
        Self { command, k, json: Value::Null, text: Vec::new(), rows: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, value: f64, threshold: f64, pass: bool) {
        self.rows.push(Row { command: self.command, k: self.k, check_name: name.into(), value, threshold, pass });
    }

    /// Boolean check recorded as `value = 1` against `threshold = 1`.
    pub fn flag(&mut self, name: impl Into<String>, pass: bool) {
        self.check(name, if pass { 1.0 } else { 0.0 }, 1.0, pass);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Text => {
                let mut out = self.text.join("\n");
                for r in self.rows.iter().filter(|r| !r.pass) {
                    out.push_str(&format!("\nFAILED {}: {} (threshold {})", r.check_name, r.value, r.threshold));
                }
                out
            }
            Format::Json => serde_json::to_string_pretty(&self.json)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in &self.rows {
                    w.serialize(r)?;
                }
                String::from_utf8(w.into_inner()?)?.trim_end().to_string()
            }
        })
    }
}
