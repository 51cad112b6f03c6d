//! CSV and JSON output. Every real number is written as a full-precision
//! decimal string so that reports round-trip at the working precision.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Serialize, Serializer};

use crate::context::PrecisionContext;
use crate::error::Result;
use crate::li::{CheckStatus, LiParams, LiValue, PositivityReport, Route, ScanOutcome, VerificationReport};
use crate::scalar::Real;
use crate::zeros::{CountCheck, ZeroOrdinate, ZeroTable};

/// Serializes a real as its full-precision decimal string.
pub fn real<T: Real, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_full_string())
}

/// Six significant digits, for error estimates.
pub fn short_real<T: Real, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_sci_string(6))
}

pub fn opt_real<T: Real, S: Serializer>(x: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_full_string()),
        None => s.serialize_none(),
    }
}

/// Parameters of a run, echoed at the top of every report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub bits: u32,
    pub target_tol: String,
    #[serde(flatten)]
    pub entries: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new<T: Real>(ctx: &PrecisionContext<T>) -> Self {
        RunConfig { bits: ctx.bits(), target_tol: ctx.target_tol().to_sci_string(6), entries: BTreeMap::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.entries.insert(key.into(), value.to_string());
        self
    }

    fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("bits = {}", self.bits), format!("target_tol = {}", self.target_tol)];
        lines.extend(self.entries.iter().map(|(k, v)| format!("{k} = {v}")));
        lines
    }
}

/// One CSV line.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct LiRow<T> {
    pub n: usize,
    #[serde(serialize_with = "real")]
    pub b: T,
    #[serde(serialize_with = "real")]
    pub sigma: T,
    #[serde(serialize_with = "real")]
    pub lambda: T,
    pub route: Route,
    #[serde(serialize_with = "real")]
    pub error_bound: T,
}

impl<T: Real> LiRow<T> {
    pub fn new(params: &LiParams<T>, value: &LiValue<T>) -> Self {
        LiRow {
            n: value.n,
            b: params.b().clone(),
            sigma: params.sigma().clone(),
            lambda: value.value.clone(),
            route: value.route,
            error_bound: value.error_bound.clone(),
        }
    }
}

pub fn rows<T: Real>(params: &LiParams<T>, values: &[LiValue<T>]) -> Vec<LiRow<T>> {
    values.iter().map(|v| LiRow::new(params, v)).collect()
}

/// `# key = value` header lines followed by `n,b,sigma,lambda,route,error_bound`.
pub fn write_csv<T: Real, W: Write>(mut out: W, config: &RunConfig, rows: &[LiRow<T>]) -> Result<()> {
    for line in config.header_lines() {
        writeln!(out, "# {line}")?;
    }
    write_rows(out, rows)
}

fn write_rows<T: Real, W: Write>(out: W, rows: &[LiRow<T>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(["n", "b", "sigma", "lambda", "route", "error_bound"])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string<T: Real>(config: &RunConfig, rows: &[LiRow<T>]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, config, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

fn opt_full<T: Real>(x: &Option<T>) -> String {
    x.as_ref().map(Real::to_full_string).unwrap_or_default()
}

/// Per-n verification table:
/// `n,genfunc,genfunc_delta,zero_sum,tail,tail_reliable,difference,allowed,identity,identity_difference,status`.
/// Unavailable quantities are empty fields.
pub fn verification_csv<T: Real>(config: &RunConfig, report: &VerificationReport<T>) -> Result<String> {
    let mut buf = Vec::new();
    for line in config.header_lines() {
        writeln!(buf, "# {line}")?;
    }
    writeln!(buf, "# constant_term = {}", report.constant_term.to_full_string())?;
    writeln!(buf, "# zero_count = {}", report.zero_count)?;
    if let Some(h) = &report.gamma_max {
        writeln!(buf, "# gamma_max = {}", h.to_fixed_string(h.decimal_digits()))?;
    }
    for note in &report.notes {
        writeln!(buf, "# note: {note}")?;
    }
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record([
        "n",
        "genfunc",
        "genfunc_delta",
        "zero_sum",
        "tail",
        "tail_reliable",
        "difference",
        "allowed",
        "identity",
        "identity_difference",
        "status",
    ])?;
    for row in &report.rows {
        let status = match row.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Unavailable => "unavailable",
        };
        w.write_record([
            row.n.to_string(),
            row.genfunc.to_full_string(),
            row.genfunc_delta.to_sci_string(6),
            opt_full(&row.zero_sum),
            row.tail.as_ref().map(|t| t.to_sci_string(6)).unwrap_or_default(),
            row.tail_reliable.to_string(),
            row.difference.as_ref().map(|t| t.to_sci_string(6)).unwrap_or_default(),
            row.allowed.as_ref().map(|t| t.to_sci_string(6)).unwrap_or_default(),
            opt_full(&row.identity),
            row.identity_difference.as_ref().map(|t| t.to_sci_string(6)).unwrap_or_default(),
            status.to_string(),
        ])?;
    }
    w.flush()?;
    drop(w);
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// Summary comments (minimum, negatives, skipped and failed points)
/// followed by the standard coefficient CSV for every computed point.
pub fn scan_csv<T: Real>(config: &RunConfig, report: &PositivityReport<T>) -> Result<String> {
    let mut config = config.clone();
    if let Some(m) = &report.minimum {
        config = config.with(
            "minimum",
            format!("{} at n = {}, b = {}, sigma = {}", m.value.to_sci_string(12), m.n, short(&m.b), short(&m.sigma)),
        );
    }
    config = config.with("negatives", report.negatives.len());
    let mut rows_out = Vec::new();
    let mut extra = Vec::new();
    for p in &report.points {
        let at = format!("b = {}, sigma = {}", short(&p.b), short(&p.sigma));
        for note in &p.notes {
            extra.push(format!("note ({at}): {note}"));
        }
        match &p.outcome {
            ScanOutcome::Computed { values, .. } => {
                let params = LiParams::new(p.b.clone(), p.sigma.clone());
                rows_out.extend(rows(&params, values));
            }
            ScanOutcome::Skipped { reason } => extra.push(format!("skipped ({at}): {reason}")),
            ScanOutcome::Failed { error } => extra.push(format!("failed ({at}): {error}")),
        }
    }
    for v in &report.negatives {
        extra.push(format!(
            "negative: n = {}, b = {}, sigma = {}, lambda = {}",
            v.n,
            short(&v.b),
            short(&v.sigma),
            v.value.to_sci_string(12)
        ));
    }
    let mut buf = Vec::new();
    for line in config.header_lines().into_iter().chain(extra) {
        writeln!(buf, "# {line}")?;
    }
    write_rows(&mut buf, &rows_out)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

fn short<T: Real>(x: &T) -> String {
    let s = x.to_fixed_string(12);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// JSON view of a zero table.
#[derive(Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct ZeroTableView<'a, T> {
    pub source: &'a str,
    pub count: usize,
    #[serde(serialize_with = "real")]
    pub max_height: T,
    pub count_check: Option<CountCheck>,
    pub zeros: &'a [ZeroOrdinate<T>],
}

impl<'a, T: Real> ZeroTableView<'a, T> {
    pub fn new(table: &'a ZeroTable<T>) -> Self {
        ZeroTableView {
            source: table.source(),
            count: table.len(),
            max_height: table.max_height().clone(),
            count_check: table.count_check().copied(),
            zeros: table.zeros(),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    config: &'a RunConfig,
    report: &'a R,
}

/// Pretty JSON `{ "config": .., "report": .. }`.
pub fn json_string<R: Serialize>(config: &RunConfig, report: &R) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Envelope { config, report })?)
}
