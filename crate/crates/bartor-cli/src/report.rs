//! Report assembly and output. Every command produces one JSON document
//! (sorted keys, so serialization is canonical), plus plain and CSV
//! renderings of the same content. `--out` writes via a temporary file and
//! a rename, so readers never observe a half-written report.

use std::fs;
use std::io;
use std::path::Path;

use clap::ValueEnum;

use bartor::series::PoincareSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

pub struct Report {
    pub document: serde_json::Value,
    pub plain: String,
    pub csv: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document)
                    .expect("documents are plain data");
                s.push('\n');
                s
            }
            Format::Plain => self.plain.clone(),
            Format::Csv => self.csv.clone(),
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let content = self.render(format);
        match out {
            None => {
                print!("{content}");
                Ok(())
            }
            Some(path) => write_atomic(path, &content),
        }
    }
}

fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("report");
    let tmp = dir.join(format!(".{}.{}.tmp", name, std::process::id()));
    fs::write(&tmp, content)?;
    match fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e)
        }
    }
}

pub fn series_value(series: &PoincareSeries) -> serde_json::Value {
    serde_json::to_value(series).expect("series serialize")
}

pub fn dims_line(series: &PoincareSeries) -> String {
    series
        .dims
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV field, quoted when it contains a delimiter, quote, or space.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', ' ', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
