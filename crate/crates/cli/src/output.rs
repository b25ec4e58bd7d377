//! One result in every format a command supports.

use std::io::Write;

use serde_json::Value;

use crate::args::{Format, OutputArgs};
use crate::error::{CliError, CliResult};

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Rendered {
    pub json: Value,
    pub text: Option<String>,
    pub csv: Option<Table>,
    /// Used when `--format` is absent.
    pub default: Format,
    /// Emitted output that still fails verification (exit 1).
    pub failure: Option<String>,
}

impl Rendered {
    pub fn json(json: Value) -> Self {
        Rendered { json, text: None, csv: None, default: Format::Json, failure: None }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn with_csv(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(Table { header: header.iter().map(|s| s.to_string()).collect(), rows });
        self
    }

    pub fn fail_if(mut self, failed: bool, what: impl Into<String>) -> Self {
        if failed {
            self.failure = Some(what.into());
        }
        self
    }

    pub fn default_format(mut self, f: Format) -> Self {
        self.default = f;
        self
    }

    pub fn render(&self, format: Option<Format>) -> CliResult<String> {
        match format.unwrap_or(self.default) {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Text => match &self.text {
                Some(t) => Ok(t.clone()),
                None => Err(CliError::Usage("this command has no text output; use --format json".into())),
            },
            Format::Csv => {
                let t = self.csv.as_ref().ok_or_else(|| CliError::Usage("this command has no csv output; use --format json".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.header)?;
                for r in &t.rows {
                    w.write_record(r)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }

    pub fn emit(&self, out: &OutputArgs) -> CliResult<()> {
        let s = self.render(out.format)?;
        match &out.output {
            Some(p) => std::fs::write(p, s)?,
            None => std::io::stdout().lock().write_all(s.as_bytes())?,
        }
        Ok(())
    }
}

pub fn c_json(z: num_complex::Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}
