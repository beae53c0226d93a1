//! Record emission: versioned CSV (one header comment line, then a column
//! row) or JSON lines. All records round-trip under the documented schema.

use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    JsonLines,
}

/// Schema version written into the CSV header comment.
pub const CSV_SCHEMA_VERSION: &str = "v1";

pub struct Emitter {
    out: Box<dyn Write>,
    format: Format,
    header_written: bool,
    schema: &'static str,
}

impl Emitter {
    pub fn new(
        output: Option<&PathBuf>,
        format: Format,
        schema: &'static str,
    ) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match output {
            Some(path) => Box::new(std::fs::File::create(path).map_err(|e| {
                CliError::usage(format!("cannot create {}: {e}", path.display()))
            })?),
            None => Box::new(std::io::stdout()),
        };
        Ok(Self {
            out,
            format,
            header_written: false,
            schema,
        })
    }

    /// Emit one record. Fields are flattened in declaration order for CSV.
    pub fn record<T: Serialize>(&mut self, record: &T) -> Result<(), CliError> {
        let json = serde_json::to_value(record)
            .map_err(|e| CliError::usage(format!("serialization: {e}")))?;
        match self.format {
            Format::JsonLines => {
                writeln!(self.out, "{json}").map_err(CliError::io)?;
            }
            Format::Csv => {
                let obj = json
                    .as_object()
                    .expect("records serialize to JSON objects");
                if !self.header_written {
                    writeln!(
                        self.out,
                        "# cvdc-csv {} {}",
                        CSV_SCHEMA_VERSION, self.schema
                    )
                    .map_err(CliError::io)?;
                    let cols: Vec<&str> = obj.keys().map(String::as_str).collect();
                    writeln!(self.out, "{}", cols.join(",")).map_err(CliError::io)?;
                    self.header_written = true;
                }
                let row: Vec<String> = obj.values().map(csv_field).collect();
                writeln!(self.out, "{}", row.join(",")).map_err(CliError::io)?;
            }
        }
        Ok(())
    }
}

fn csv_field(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
