use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::json;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Structured,
    Svg,
}

/// A small table rendered as aligned text or CSV.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = r.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::new();
        for r in std::iter::once(&self.header).chain(&self.rows) {
            writeln!(out, "{}", r.join(",")).unwrap();
        }
        out
    }
}

/// The output subdirectory of one command run. Files are recorded so the
/// manifest can list them.
pub struct RunDir {
    dir: PathBuf,
    command: &'static str,
    files: Vec<String>,
}

impl RunDir {
    pub fn create(root: &Path, command: &'static str) -> Result<Self, Failure> {
        let dir = root.join(command);
        std::fs::create_dir_all(&dir).map_err(|e| Failure::io(&dir, e))?;
        Ok(RunDir { dir, command, files: Vec::new() })
    }

    pub fn write(&mut self, name: &str, contents: impl AsRef<[u8]>) -> Result<(), Failure> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| Failure::io(&path, e))?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn table(&mut self, stem: &str, table: &Table, formats: &[Format]) -> Result<(), Failure> {
        if formats.contains(&Format::Text) {
            self.write(&format!("{stem}.txt"), table.text())?;
        }
        if formats.contains(&Format::Csv) {
            self.write(&format!("{stem}.csv"), table.csv())?;
        }
        Ok(())
    }

    pub fn json(&mut self, name: &str, value: &serde_json::Value) -> Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        self.write(name, s)
    }

    /// Writes `manifest.json`; call last.
    pub fn finish(mut self, config: serde_json::Value, inputs: Vec<serde_json::Value>) -> Result<(), Failure> {
        let files = std::mem::take(&mut self.files);
        let manifest = json!({
            "tool": "morsetree",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": config,
            "inputs": inputs,
            "files": files,
        });
        self.json("manifest.json", &manifest)
    }
}
