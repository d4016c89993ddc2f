use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::commands::{DiffractionSpot, ExtinctionRow, PairingRow, SymmetryTypeRecord};
use crate::error::{CliError, CliResult};
use crate::selfcheck::CheckLine;

/// Rows that render as a table or CSV with fixed columns.
pub trait Tabular: Serialize {
    fn headers(rows: &[Self]) -> Vec<String>
    where
        Self: Sized;
    fn cells(&self) -> Vec<String>;
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn list<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

impl Tabular for SymmetryTypeRecord {
    fn headers(rows: &[Self]) -> Vec<String> {
        let mut h: Vec<String> = ["lattice", "group", "order", "rank", "factors", "expressibility", "fingerprints"]
            .map(String::from)
            .to_vec();
        if rows.iter().any(|r| r.dihedral_2d.is_some()) {
            h.push("dihedral_2d".into());
        }
        h
    }

    fn cells(&self) -> Vec<String> {
        let flags: Vec<String> = self
            .expressibility
            .iter()
            .map(|e| serde_json::to_value(e).unwrap().as_str().unwrap().to_string())
            .collect();
        let mut c = vec![
            self.lattice.clone(),
            self.group.clone(),
            self.order.to_string(),
            self.rank.to_string(),
            format!("[{}]", list(&self.factors, " ")),
            format!("[{}]", flags.join(" ")),
            format!("[{}]", self.fingerprints.join(" | ")),
        ];
        if let Some(f) = &self.dihedral_2d {
            c.push(format!("[{}]", list(f, " ")));
        }
        c
    }
}

impl Tabular for PairingRow {
    fn headers(_: &[Self]) -> Vec<String> {
        ["cycle", "class", "value"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<String> {
        vec![self.cycle.to_string(), self.class.to_string(), self.value.to_string()]
    }
}

impl Tabular for ExtinctionRow {
    fn headers(rows: &[Self]) -> Vec<String> {
        let mut h = indexed("k", rows.first().map_or(0, |r| r.k.len()));
        h.extend(["extinct", "witness"].map(String::from));
        h
    }

    fn cells(&self) -> Vec<String> {
        let mut c: Vec<String> = self.k.iter().map(ToString::to_string).collect();
        c.push(self.extinct.to_string());
        c.push(self.witness.clone().unwrap_or_default());
        c
    }
}

impl Tabular for DiffractionSpot {
    fn headers(rows: &[Self]) -> Vec<String> {
        let first = rows.first();
        let mut h = indexed("k", first.map_or(0, |r| r.k.len()));
        h.extend(indexed("x", first.map_or(0, |r| r.position.len())));
        h.extend(["intensity", "phase", "extinct", "witness"].map(String::from));
        h
    }

    fn cells(&self) -> Vec<String> {
        let mut c: Vec<String> = self.k.iter().map(ToString::to_string).collect();
        c.extend(self.position.iter().map(|x| format!("{:.6}", x + 0.0)));
        c.push(format!("{:.6}", self.intensity));
        c.push(self.phase.as_ref().map(ToString::to_string).unwrap_or_default());
        c.push(self.extinct.to_string());
        c.push(self.witness.clone().unwrap_or_default());
        c
    }
}

impl Tabular for CheckLine {
    fn headers(_: &[Self]) -> Vec<String> {
        ["status", "check", "subject", "detail"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<String> {
        vec![
            if self.passed { "PASS" } else { "FAIL" }.to_string(),
            self.check.clone(),
            self.subject.clone(),
            self.detail.clone(),
        ]
    }
}

/// Cells padded to the header width.
fn padded_cells<T: Tabular>(rows: &[T], width: usize) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            let mut c = r.cells();
            c.resize(width.max(c.len()), String::new());
            c
        })
        .collect()
}

pub fn render<T: Tabular>(rows: &[T], format: Format) -> CliResult<String> {
    let headers = T::headers(rows);
    let cells = padded_cells(rows, headers.len());
    match format {
        Format::Json => {
            // serde_json::Value keeps object keys sorted.
            let v = serde_json::to_value(rows).map_err(|e| CliError::Internal(e.to_string()))?;
            let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&headers).map_err(|e| CliError::Internal(e.to_string()))?;
            for row in &cells {
                w.write_record(row).map_err(|e| CliError::Internal(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
        }
        Format::Table => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |row: &[String]| {
                let padded: Vec<String> =
                    row.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                format!("{}\n", padded.join("  ").trim_end())
            };
            let mut s = line(&headers);
            for row in &cells {
                s.push_str(&line(row));
            }
            Ok(s)
        }
    }
}

/// Writes to `path` via a temporary file in the same directory, or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string())),
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp =
                tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
            tmp.write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string()))?;
            tmp.persist(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok(())
        }
    }
}
