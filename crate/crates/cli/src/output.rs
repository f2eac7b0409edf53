//! Report rendering and persistence.

use std::path::{Path, PathBuf};

use amalgam_core::verify::report;
use serde::{Serialize, Serializer};

use crate::args::Format;
use crate::CliError;

pub const OUT_DIR_VAR: &str = "AMALGAM_OUT_DIR";

/// A report number: 17 significant digits, `inf`/`-inf`/`nan` as strings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        report::num::serialize(&self.0, ser)
    }
}

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&report::format_number(self.0))
    }
}

pub fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// A rendered report in both formats; `failed` marks a mathematical failure.
pub struct Outcome {
    pub json: String,
    pub csv: String,
    pub failed: bool,
}

impl Outcome {
    pub fn new<T: Serialize>(value: &T, csv: String) -> Result<Self, CliError> {
        let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
        Ok(Outcome { json, csv, failed: false })
    }
}

/// CSV text from a header and string rows.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub struct Sink {
    pub format: Format,
    pub path: Option<PathBuf>,
}

impl Sink {
    pub fn resolve(out: Option<PathBuf>, format: Option<Format>, command: &str) -> Sink {
        let from_ext = |p: &Path| match p.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        };
        let format = format.or_else(|| out.as_deref().map(from_ext)).unwrap_or(Format::Json);
        let ext = match format {
            Format::Json => "json",
            Format::Csv => "csv",
        };
        let path = out.or_else(|| {
            std::env::var_os(OUT_DIR_VAR).filter(|d| !d.is_empty()).map(|d| PathBuf::from(d).join(format!("{command}.{ext}")))
        });
        Sink { format, path }
    }

    pub fn emit(&self, outcome: &Outcome) -> Result<(), CliError> {
        let mut text = match self.format {
            Format::Json => outcome.json.clone(),
            Format::Csv => outcome.csv.clone(),
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.path {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
                }
                std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e))?;
                eprintln!("wrote {}", path.display());
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_follows_extension_unless_given() {
        let s = Sink::resolve(Some("a/b.csv".into()), None, "norm");
        assert_eq!(s.format, Format::Csv);
        let s = Sink::resolve(Some("a/b.csv".into()), Some(Format::Json), "norm");
        assert_eq!(s.format, Format::Json);
        let s = Sink::resolve(Some("report".into()), None, "norm");
        assert_eq!(s.format, Format::Json);
    }

    #[test]
    fn numbers_and_tables() {
        assert_eq!(serde_json::to_string(&Num(0.5)).unwrap(), "5.0000000000000000e-1");
        assert_eq!(serde_json::to_string(&Num(f64::INFINITY)).unwrap(), "\"inf\"");
        let t = table(&["a", "b"], &[vec!["1".into(), "x,y".into()]]).unwrap();
        assert_eq!(t, "a,b\n1,\"x,y\"\n");
    }
}
