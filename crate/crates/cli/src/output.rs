//! Deterministic report files: JSON summary, CSV tables and two-column plot
//! data, each written through a temporary file and renamed into place.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::CliError;

/// Seventeen significant digits in scientific notation.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Pretty printer that writes every float with [`fmt_f64`].
struct SciFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for SciFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(fmt_f64(v).as_bytes())
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// JSON text with sorted keys and fixed float formatting. Non-finite floats
/// become `null`.
pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(
        &mut buf,
        SciFormatter(PrettyFormatter::with_indent(b"  ")),
    );
    serde::Serialize::serialize(value, &mut ser).expect("serialising a Value cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file: &str, header: &[&'static str]) -> Self {
        Self {
            file: file.to_string(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

/// Whitespace-separated `x y` pairs with `#` comment lines on top.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub file: String,
    pub comments: Vec<String>,
    pub points: Vec<(f64, f64)>,
}

impl PlotData {
    pub fn new(file: &str, columns: &str, points: Vec<(f64, f64)>) -> Self {
        Self {
            file: file.to_string(),
            comments: vec![format!("columns: {columns}")],
            points,
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            s.push_str("# ");
            s.push_str(c);
            s.push('\n');
        }
        for &(x, y) in &self.points {
            s.push_str(&format!("{} {}\n", fmt_f64(x), fmt_f64(y)));
        }
        s
    }
}

pub const HISTOGRAM_BINS: usize = 32;

/// Histogram with [`HISTOGRAM_BINS`] equal bins spanning the observed range
/// of the finite values. Points are `(bin centre, count)`; the bin edges go
/// into the header. A degenerate range is widened to unit length.
pub fn histogram(file: &str, label: &str, values: &[f64]) -> PlotData {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let (lo, mut hi) = finite
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if finite.is_empty() {
        return PlotData {
            file: file.to_string(),
            comments: vec![
                format!("histogram of {label}: no finite values"),
                "columns: bin_centre count".into(),
            ],
            points: vec![],
        };
    }
    if hi <= lo {
        hi = lo + 1.0;
    }
    let width = (hi - lo) / HISTOGRAM_BINS as f64;
    let edges: Vec<f64> = (0..=HISTOGRAM_BINS)
        .map(|k| lo + width * k as f64)
        .collect();
    let mut counts = [0usize; HISTOGRAM_BINS];
    for v in finite {
        let k = (((v - lo) / width) as usize).min(HISTOGRAM_BINS - 1);
        counts[k] += 1;
    }
    let edge_text: Vec<String> = edges.iter().map(|&e| fmt_f64(e)).collect();
    PlotData {
        file: file.to_string(),
        comments: vec![
            format!("histogram of {label}, {HISTOGRAM_BINS} equal bins"),
            format!("edges: {}", edge_text.join(" ")),
            "columns: bin_centre count".into(),
        ],
        points: (0..HISTOGRAM_BINS)
            .map(|k| (0.5 * (edges[k] + edges[k + 1]), counts[k] as f64))
            .collect(),
    }
}

/// Everything one command produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub report: Value,
    pub tables: Vec<Table>,
    pub plots: Vec<PlotData>,
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| CliError::io(&path, e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(&path, e))?;
    tmp.persist(&path)
        .map_err(|e| CliError::io(&path, e.error))?;
    Ok(path)
}

/// Writes `report.json`, the tables and the plot files into `dir`.
pub fn emit_report(artifacts: &Artifacts, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    // render everything first so that a formatting problem leaves no files
    let mut files = vec![("report.json".to_string(), to_json(&artifacts.report))];
    files.extend(
        artifacts
            .tables
            .iter()
            .map(|t| (t.file.clone(), t.render())),
    );
    files.extend(artifacts.plots.iter().map(|p| (p.file.clone(), p.render())));
    files
        .iter()
        .map(|(name, text)| write_atomic(dir, name, text))
        .collect()
}
