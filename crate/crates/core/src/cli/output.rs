//! CSV and gnuplot script emission.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::bounds::RECORD_FIELDS;
use crate::error::{Error, Result};
use crate::sweep::{ModelKind, SweepResult};

/// Columns after `theta` and the record fields.
pub const PARAMETER_COLUMNS: [&str; 9] = ["model", "pair", "lambda", "gamma", "alpha", "hbar", "mass", "omega", "dim"];

pub const MISSING: &str = "NA";

pub fn header() -> Vec<&'static str> {
    let mut cols = vec!["theta"];
    cols.extend(RECORD_FIELDS);
    cols.extend(PARAMETER_COLUMNS);
    cols
}

/// 17 significant digits; non-finite values count as absent.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        MISSING.to_string()
    }
}

fn format_option(v: Option<f64>) -> String {
    v.map_or_else(|| MISSING.to_string(), format_number)
}

/// CSV text for one sweep.
pub fn render_csv(result: &SweepResult) -> Result<Vec<u8>> {
    let cfg = &result.config;
    let (lambda, gamma, alpha) = match cfg.model {
        ModelKind::Linear => (Some(cfg.linear.lambda), Some(cfg.linear.gamma), None),
        ModelKind::Nonlinear => (None, None, Some(cfg.nonlinear.alpha)),
        ModelKind::Commutative => (None, None, None),
    };
    let fixed = [
        cfg.model.name().to_string(),
        cfg.pair.name().to_string(),
        format_option(lambda),
        format_option(gamma),
        format_option(alpha),
        format_number(cfg.consts.hbar),
        format_number(cfg.consts.mass),
        format_number(cfg.consts.omega),
        cfg.dim.to_string(),
    ];
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header()).map_err(csv_error)?;
    for (theta, rec) in &result.points {
        let mut row = vec![format_number(*theta)];
        row.extend(rec.values().into_iter().map(format_option));
        row.extend(fixed.iter().cloned());
        w.write_record(&row).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Writes `bytes` to a sibling temporary file and renames it over `path`,
/// so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let written = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = written {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

pub fn write_csv(path: &Path, result: &SweepResult) -> Result<()> {
    write_atomic(path, &render_csv(result)?)
}

/// Which columns a plot shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    /// product, its lower bounds and the reverse product.
    Product,
    /// sum, its lower bounds and the reverse sum.
    Sum,
    /// product and Robertson curves, for comparing parameter sets.
    Comparison,
}

impl PlotKind {
    fn columns(&self) -> &'static [(&'static str, &'static str)] {
        match self {
            PlotKind::Product => &[
                ("product", "Var(A)Var(B)"),
                ("tighter_product", "tighter lower bound"),
                ("schrodinger", "Schrodinger-Robertson"),
                ("reverse_product", "reverse (upper) bound"),
            ],
            PlotKind::Sum => &[
                ("sum", "Var(A)+Var(B)"),
                ("sum_lower", "sum lower bound"),
                ("pmur_L1", "L1"),
                ("pmur_L2", "L2"),
                ("reverse_sum", "reverse (upper) bound"),
            ],
            PlotKind::Comparison => &[("product", "Var(A)Var(B)"), ("robertson", "Robertson")],
        }
    }
}

/// One gnuplot panel: CSV paths (relative to the script) and their labels.
pub struct PlotPanel<'a> {
    pub title: String,
    pub kind: PlotKind,
    pub files: Vec<(&'a str, String)>,
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// A gnuplot script drawing `panels` side by side into `image`.
pub fn gnuplot_script(image: &str, panels: &[PlotPanel<'_>]) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile missing 'NA'\n");
    s.push_str(&format!("set terminal pngcairo size {},480\n", 640 * panels.len().max(1)));
    s.push_str(&format!("set output {}\n", quote(image)));
    s.push_str("set xlabel 'theta'\n");
    s.push_str("set key outside bottom center horizontal\n");
    if panels.len() > 1 {
        s.push_str(&format!("set multiplot layout 1,{}\n", panels.len()));
    }
    for panel in panels {
        s.push_str(&format!("set title {}\n", quote(&panel.title)));
        let mut series = Vec::new();
        for (file, label) in &panel.files {
            for (col, name) in panel.kind.columns() {
                let title = if label.is_empty() { name.to_string() } else { format!("{name} {label}") };
                series.push(format!(
                    "{} using 'theta':'{col}' with lines title {}",
                    quote(file),
                    quote(&title)
                ));
            }
        }
        s.push_str("plot ");
        s.push_str(&series.join(", \\\n     "));
        s.push('\n');
    }
    if panels.len() > 1 {
        s.push_str("unset multiplot\n");
    }
    s
}

/// `target` as seen from the directory holding `script`, when that is a
/// plain descent; otherwise `target` unchanged.
pub fn relative_to_script(script: &Path, target: &Path) -> PathBuf {
    let dir = script.parent().unwrap_or(Path::new(""));
    target.strip_prefix(dir).map(Path::to_path_buf).unwrap_or_else(|_| target.to_path_buf())
}
