//! The output document every subcommand produces.
//!
//! A [`Document`] is a command echo plus a list of titled sections; each
//! section is a rectangular table (column names and rows of cells) with
//! optional free-text notes.  The same document renders three ways:
//!
//! * `table` — aligned columns for people;
//! * `json` — one JSON object per run;
//! * `csv` — one table per section, sections separated by a blank line.
//!
//! Rendering is a pure function of the document, and documents are built
//! deterministically from parsed arguments, so one command line yields
//! byte-identical output on every run.  Numbers are written in shortest
//! round-trip form in all three formats: parsing a rendered number
//! recovers the exact `f64` the library computed.

use std::fmt::Write as _;

use serde::Serialize;

/// One table cell.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Text(String),
    Number(f64),
    Count(u64),
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Count(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Count(v as u64)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // `f64`'s Display is shortest round-trip, like the JSON encoder.
            Cell::Text(s) => s.clone(),
            Cell::Number(v) => format!("{v}"),
            Cell::Count(n) => format!("{n}"),
        }
    }

    fn right_aligned(&self) -> bool {
        !matches!(self, Cell::Text(_))
    }
}

/// A titled table plus notes.
#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub title: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Vec<Cell>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), columns: Vec::new(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn columns<S: Into<String>>(mut self, columns: impl IntoIterator<Item = S>) -> Self {
        self.columns = columns.into_iter().map(Into::into).collect();
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert!(
            self.columns.is_empty() || row.len() == self.columns.len(),
            "row width must match the column count"
        );
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

/// The full result of one CLI run.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    /// Canonical echo of the command that produced the document.
    pub command: String,
    pub sections: Vec<Section>,
}

impl Document {
    pub fn new(command: impl Into<String>) -> Self {
        Document { command: command.into(), sections: Vec::new() }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for section in &self.sections {
            out.push('\n');
            let _ = writeln!(out, "# {}", section.title);
            if !section.columns.is_empty() {
                let mut widths: Vec<usize> = section.columns.iter().map(String::len).collect();
                let rendered: Vec<Vec<String>> =
                    section.rows.iter().map(|row| row.iter().map(Cell::render).collect()).collect();
                for row in &rendered {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.len());
                    }
                }
                for (i, name) in section.columns.iter().enumerate() {
                    if i > 0 {
                        out.push_str("  ");
                    }
                    let _ = write!(out, "{name:<width$}", width = widths[i]);
                }
                out.push('\n');
                for (row, cells) in section.rows.iter().zip(&rendered) {
                    for (i, cell) in cells.iter().enumerate() {
                        if i > 0 {
                            out.push_str("  ");
                        }
                        if row[i].right_aligned() {
                            let _ = write!(out, "{cell:>width$}", width = widths[i]);
                        } else {
                            let _ = write!(out, "{cell:<width$}", width = widths[i]);
                        }
                    }
                    // Trim the padding of the final column.
                    while out.ends_with(' ') {
                        out.pop();
                    }
                    out.push('\n');
                }
            }
            for note in &section.notes {
                let _ = writeln!(out, "- {note}");
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents are JSON-serialisable");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command,{}", csv_field(&self.command));
        for section in &self.sections {
            out.push('\n');
            let _ = writeln!(out, "{}", csv_field(&section.title));
            if !section.columns.is_empty() {
                let header: Vec<String> = section.columns.iter().map(|c| csv_field(c)).collect();
                let _ = writeln!(out, "{}", header.join(","));
                for row in &section.rows {
                    let fields: Vec<String> = row.iter().map(|c| csv_field(&c.render())).collect();
                    let _ = writeln!(out, "{}", fields.join(","));
                }
            }
            for note in &section.notes {
                let _ = writeln!(out, "note,{}", csv_field(note));
            }
        }
        out
    }
}

/// Output format selector shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned, human-oriented tables.
    Table,
    /// One JSON object per run.
    Json,
    /// One comma-separated table per section, blank-line separated.
    Csv,
}

impl Format {
    pub fn name(&self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Quote a CSV field if it contains a comma, quote, newline or leading or
/// trailing blank; quotes are doubled.
fn csv_field(raw: &str) -> String {
    let must_quote =
        raw.contains([',', '"', '\n', '\r']) || raw.starts_with(' ') || raw.ends_with(' ');
    if must_quote {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}
