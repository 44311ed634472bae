//! CSV artifacts. Reals are written in scientific notation with 17
//! significant digits, which round-trips every `f64`; missing values are
//! written as `NaN`. Files go to a temporary sibling and are renamed into
//! place.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use qlem_core::lab::{CurveFit, FitKind, SurvivalPoint, SweepResult};
use qlem_core::learning::IterationRecord;

pub const CURVE_HEADER: &str = "n,P,Q";
pub const SWEEP_HEADER: &str =
    "N,trials,halt_fraction,fidelity_mean,fidelity_std,n_c,n_c_r2,product_score_median";
pub const FIT_HEADER: &str = "kind,param1,param2,r_squared,points_used";
pub const TRACE_HEADER: &str = "iter,input,outcome,success,N0,N1,NT,halted";

pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "NaN".to_string()
    }
}

fn opt_real(x: Option<f64>) -> String {
    real(x.unwrap_or(f64::NAN))
}

pub fn curve_csv(curve: &[SurvivalPoint]) -> String {
    let mut out = format!("{CURVE_HEADER}\n");
    for p in curve {
        writeln!(out, "{},{},{}", p.n, real(p.learning), real(p.survival)).unwrap();
    }
    out
}

pub fn sweep_csv(sweep: &SweepResult) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for row in &sweep.rows {
        let reliable = row.is_reliable();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.memory_size,
            row.trials,
            real(row.halt_fraction),
            opt_real(row.fidelity.map(|f| f.mean)),
            opt_real(row.fidelity.map(|f| f.std_dev)),
            opt_real(row.n_c().filter(|_| reliable)),
            opt_real(row.survival_fit.filter(|_| reliable).map(|f| f.r_squared)),
            opt_real(row.product_score_median),
        )
        .unwrap();
    }
    out
}

pub fn fit_csv(fits: &[CurveFit]) -> String {
    let mut out = format!("{FIT_HEADER}\n");
    for f in fits {
        writeln!(
            out,
            "{},{},{},{},{}",
            f.kind.name(),
            real(f.param1),
            real(f.param2),
            real(f.r_squared),
            f.points_used
        )
        .unwrap();
    }
    out
}

pub fn trace_row(rec: &IterationRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        rec.iteration,
        rec.input.index(),
        rec.outcome,
        u8::from(rec.success),
        rec.counts.failures,
        rec.counts.successes,
        rec.counts.window,
        u8::from(rec.halted)
    )
}

/// Writes `contents` to `path` atomically: either the whole file appears or
/// nothing does.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    Curve(Vec<SurvivalPoint>),
    /// `(N, halt_fraction, n_c)` per sweep row.
    Sweep(Vec<(usize, f64, f64)>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(pub String);

fn field<T: std::str::FromStr>(fields: &[&str], i: usize, line: usize) -> Result<T, ParseError> {
    let raw = fields
        .get(i)
        .ok_or_else(|| ParseError(format!("line {line}: missing column {}", i + 1)))?;
    raw.trim()
        .parse()
        .map_err(|_| ParseError(format!("line {line}: cannot parse {raw:?}")))
}

/// Reads a curve or sweep CSV, recognized by its header.
pub fn parse_table(text: &str) -> Result<Table, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().map(str::trim).unwrap_or("");
    let rows = lines
        .enumerate()
        .map(|(i, l)| (i + 2, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match header {
        CURVE_HEADER => rows
            .map(|(line, l)| {
                let f: Vec<&str> = l.split(',').collect();
                Ok(SurvivalPoint {
                    n: field(&f, 0, line)?,
                    learning: field(&f, 1, line)?,
                    survival: field(&f, 2, line)?,
                })
            })
            .collect::<Result<_, _>>()
            .map(Table::Curve),
        SWEEP_HEADER => rows
            .map(|(line, l)| {
                let f: Vec<&str> = l.split(',').collect();
                Ok((field(&f, 0, line)?, field(&f, 2, line)?, field(&f, 5, line)?))
            })
            .collect::<Result<_, _>>()
            .map(Table::Sweep),
        other => Err(ParseError(format!("unrecognized CSV header {other:?}"))),
    }
}

pub fn parse_fit_csv(text: &str) -> Result<Vec<CurveFit>, ParseError> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(FIT_HEADER) {
        return Err(ParseError("not a fit CSV".into()));
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.trim().split(',').collect();
            let kind = FitKind::parse(f[0])
                .ok_or_else(|| ParseError(format!("line {}: unknown fit kind", i + 2)))?;
            Ok(CurveFit {
                kind,
                param1: field(&f, 1, i + 2)?,
                param2: field(&f, 2, i + 2)?,
                r_squared: field(&f, 3, i + 2)?,
                points_used: field(&f, 4, i + 2)?,
            })
        })
        .collect()
}
