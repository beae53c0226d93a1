//! Config-file loading: a TOML document with `[experiment]` and `[trace]`
//! sections mirroring the core config types, plus `key=value` overrides
//! from the command line. Unknown keys are rejected.

use cvdc_core::{ExperimentConfig, TraceConfig};
use serde::Deserialize;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub experiment: ExperimentConfig,
    pub trace: TraceConfig,
}

/// Load the optional config file, apply `--set section.key=value`
/// overrides, and deserialize with strict key checking.
pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<FileConfig, CliError> {
    let mut value: toml::Value = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", p.display())))?;
            text.parse()
                .map_err(|e| CliError::usage(format!("config {}: {e}", p.display())))?
        }
        None => toml::Value::Table(Default::default()),
    };

    for entry in overrides {
        let (key, raw) = entry
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("override `{entry}` is not key=value")))?;
        set_path(&mut value, key.trim(), raw.trim())?;
    }

    value
        .try_into()
        .map_err(|e| CliError::usage(format!("invalid configuration: {e}")))
}

fn set_path(root: &mut toml::Value, key: &str, raw: &str) -> Result<(), CliError> {
    let parsed: toml::Value = match raw.parse::<f64>() {
        Ok(f) if raw.parse::<i64>().is_err() => toml::Value::Float(f),
        _ => match raw.parse::<i64>() {
            Ok(i) => toml::Value::Integer(i),
            Err(_) => match raw.parse::<bool>() {
                Ok(b) => toml::Value::Boolean(b),
                Err(_) => toml::Value::String(raw.to_string()),
            },
        },
    };
    let mut node = root;
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::usage(format!("bad override key `{key}`")));
    }
    for part in &parts[..parts.len() - 1] {
        let table = node
            .as_table_mut()
            .ok_or_else(|| CliError::usage(format!("bad override key `{key}`")))?;
        node = table
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(Default::default()));
    }
    let table = node
        .as_table_mut()
        .ok_or_else(|| CliError::usage(format!("bad override key `{key}`")))?;
    table.insert(parts[parts.len() - 1].to_string(), parsed);
    Ok(())
}
