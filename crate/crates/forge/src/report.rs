//! Report rendering: human tables, a stable JSON schema, and CSV for sweep
//! rows. Element lists in JSON are ascending 1-based integers, never bit
//! strings, so output can be read against ordinary set notation.

use std::fmt::Write as _;

use frankl_forge_core::closure::{ClosureResult, Ratio, SweepRow};
use frankl_forge_core::verify::VerificationReport;
use frankl_forge_core::{ElementSet, PairedSystem};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("csv output is only defined for sweep reports")]
    CsvUnsupported,
}

/// Six-decimal rendering of an exact ratio, used everywhere a decimal is
/// shown.
pub fn ratio_decimal(ratio: Ratio) -> String {
    format!("{:.6}", ratio.as_f64())
}

fn elements_json(set: &ElementSet) -> Value {
    Value::Array(set.elements().map(|e| json!(e)).collect())
}

fn histogram_json(result: &ClosureResult) -> Value {
    let mut map = serde_json::Map::new();
    for (size, count) in &result.histogram {
        map.insert(size.to_string(), json!(count));
    }
    Value::Object(map)
}

/// The constructed system as JSON: universe size, minimum member size, and
/// the family/filter pairs as element arrays.
pub fn system_json(system: &PairedSystem) -> Value {
    let pairs: Vec<Value> = system
        .pairs()
        .iter()
        .map(|(small, large)| {
            json!({
                "family": elements_json(small),
                "filter": elements_json(large),
            })
        })
        .collect();
    json!({
        "x": system.smalls().min_member_size(),
        "n": system.universe_size(),
        "pairs": pairs,
    })
}

/// Context for a verification report: the system's universe size and its
/// minimum member size (the reported `x`).
pub struct VerifyDoc<'a> {
    pub n: usize,
    pub x: usize,
    pub pair_count: usize,
    pub report: &'a VerificationReport,
}

pub fn render_verification(
    doc: &VerifyDoc<'_>,
    format: OutputFormat,
) -> Result<String, ReportError> {
    match format {
        OutputFormat::Human => Ok(verification_human(doc)),
        OutputFormat::Json => Ok(pretty(verification_json(doc))),
        OutputFormat::Csv => Err(ReportError::CsvUnsupported),
    }
}

fn verification_json(doc: &VerifyDoc<'_>) -> Value {
    let report = doc.report;
    let lints: Vec<Value> = report
        .lint_results
        .iter()
        .map(|lint| {
            json!({
                "id": lint.kind.id(),
                "name": lint.kind.label(),
                "pass": lint.pass,
                "witness": lint.witness,
            })
        })
        .collect();
    let witnesses: Vec<Value> = report
        .violation_witnesses
        .iter()
        .map(|witness| {
            let indices: Vec<usize> = [witness.first_index, witness.second_index]
                .into_iter()
                .flatten()
                .collect();
            json!({
                "check": witness.check.name(),
                "indices": indices,
                "description": witness.description,
            })
        })
        .collect();
    json!({
        "x": doc.x,
        "n": doc.n,
        "pairs": doc.pair_count,
        "counterexample": report.is_counterexample(),
        "checks": {
            "subset": report.subset_ok,
            "non_interference": report.non_interference_ok,
            "filter": report.filter_ok,
            "abundance": {
                "holds": report.abundance.holds,
                "best_element": report.abundance.best_element,
                "best_count": report.abundance.best_count,
                "threshold_count": report.abundance.threshold_count,
            },
            "lints": lints,
        },
        "witnesses": witnesses,
    })
}

fn verification_human(doc: &VerifyDoc<'_>) -> String {
    let report = doc.report;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "system: n = {}, pairs = {}, min set size x = {}",
        doc.n, doc.pair_count, doc.x
    );
    let flag = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "subset condition        {}", flag(report.subset_ok));
    let _ = writeln!(
        out,
        "non-interference        {}",
        flag(report.non_interference_ok)
    );
    let _ = writeln!(out, "filter property         {}", flag(report.filter_ok));
    let a = &report.abundance;
    let _ = writeln!(
        out,
        "abundance               {}: best element {} in {} sets, threshold {}",
        if a.holds { "HOLDS" } else { "FAILS" },
        a.best_element,
        a.best_count,
        a.threshold_count
    );
    let _ = writeln!(out, "lints:");
    for lint in &report.lint_results {
        let _ = write!(out, "  {} {:4} {}", lint.kind.id(), flag(lint.pass), lint.kind.label());
        if let Some(witness) = &lint.witness {
            let _ = write!(out, " -- {witness}");
        }
        out.push('\n');
    }
    if !report.violation_witnesses.is_empty() {
        let _ = writeln!(out, "witnesses:");
        for witness in &report.violation_witnesses {
            let _ = writeln!(
                out,
                "  - {}: {}",
                witness.check.name(),
                witness.description
            );
        }
    }
    let verdict = if report.is_counterexample() {
        "counterexample confirmed: conditions hold and abundance fails"
    } else if report.reimer_ok() {
        "not a counterexample: abundance holds"
    } else {
        "not a counterexample: conditions violated"
    };
    let _ = writeln!(out, "verdict: {verdict}");
    out
}

/// Context for a closure report.
pub struct ClosureDoc<'a> {
    pub n: usize,
    pub x: usize,
    pub result: &'a ClosureResult,
    pub show_histogram: bool,
    pub list_members: bool,
}

impl ClosureDoc<'_> {
    fn ratio(&self) -> Ratio {
        Ratio::new(
            self.result.generator_count as u64,
            self.result.size() as u64,
        )
    }
}

pub fn render_closure(doc: &ClosureDoc<'_>, format: OutputFormat) -> Result<String, ReportError> {
    match format {
        OutputFormat::Human => Ok(closure_human(doc)),
        OutputFormat::Json => Ok(pretty(closure_json(doc))),
        OutputFormat::Csv => Err(ReportError::CsvUnsupported),
    }
}

fn closure_json(doc: &ClosureDoc<'_>) -> Value {
    let ratio = doc.ratio();
    let mut value = json!({
        "x": doc.x,
        "n": doc.n,
        "generator_count": doc.result.generator_count,
        "closure_size": doc.result.size(),
        "ratio": ratio.to_string(),
        "ratio_decimal": ratio_decimal(ratio),
        "histogram": histogram_json(doc.result),
    });
    if doc.list_members {
        value["members"] = Value::Array(
            doc.result
                .closure
                .iter()
                .map(elements_json)
                .collect(),
        );
    }
    value
}

fn closure_human(doc: &ClosureDoc<'_>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, generators = {} (min set size x = {})",
        doc.n, doc.result.generator_count, doc.x
    );
    let _ = writeln!(out, "closure size = {}", doc.result.size());
    let ratio = doc.ratio();
    let _ = writeln!(
        out,
        "ratio |S|/|cl(S)| = {} = {}",
        ratio,
        ratio_decimal(ratio)
    );
    if doc.show_histogram {
        let _ = writeln!(out, "histogram:");
        let _ = writeln!(out, "  size  count");
        for (size, count) in &doc.result.histogram {
            let _ = writeln!(out, "  {size:>4}  {count:>5}");
        }
    }
    if doc.list_members {
        let _ = writeln!(out, "members:");
        for member in doc.result.closure.iter() {
            let _ = writeln!(out, "{member}");
        }
    }
    out
}

pub fn render_sweep(rows: &[SweepRow], format: OutputFormat) -> Result<String, ReportError> {
    match format {
        OutputFormat::Human => Ok(sweep_human(rows)),
        OutputFormat::Json => Ok(pretty(sweep_json(rows))),
        OutputFormat::Csv => Ok(sweep_csv(rows)),
    }
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("x,n,family_size,closure_size,formula_value,matches,ratio\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.x,
            row.n,
            row.family_size,
            row.closure_size,
            row.formula_value,
            row.matches,
            ratio_decimal(row.ratio)
        );
    }
    out
}

fn sweep_json(rows: &[SweepRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "x": row.x,
                "n": row.n,
                "family_size": row.family_size,
                "closure_size": row.closure_size,
                "formula_value": row.formula_value,
                "matches": row.matches,
                "ratio": row.ratio.to_string(),
                "ratio_decimal": ratio_decimal(row.ratio),
            })
        })
        .collect();
    json!({ "rows": rows })
}

fn sweep_human(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "   x     n    |S|  |cl(S)|  formula  match  ratio\n",
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{:>4}  {:>4}  {:>5}  {:>7}  {:>7}  {:>5}  {}",
            row.x,
            row.n,
            row.family_size,
            row.closure_size,
            row.formula_value,
            if row.matches { "yes" } else { "NO" },
            ratio_decimal(row.ratio)
        );
    }
    out
}

/// One disagreement between the fast disjointness test and the enumeration
/// oracle (none are expected, ever).
pub struct OracleDoc {
    pub x: usize,
    pub n: usize,
    pub pairs_checked: usize,
    pub budget: u64,
    pub disagreements: Vec<(usize, usize, bool, bool)>,
}

pub fn render_oracle(doc: &OracleDoc, format: OutputFormat) -> Result<String, ReportError> {
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "n = {}, x = {}: {} interval pairs checked (budget {})",
                doc.n, doc.x, doc.pairs_checked, doc.budget
            );
            for (p, q, fast, slow) in &doc.disagreements {
                let _ = writeln!(
                    out,
                    "DISAGREEMENT at pair ({p}, {q}): fast says {fast}, enumeration says {slow}"
                );
            }
            let _ = writeln!(
                out,
                "verdict: {}",
                if doc.disagreements.is_empty() {
                    "fast test and enumeration agree on every pair"
                } else {
                    "fast test and enumeration DISAGREE"
                }
            );
            Ok(out)
        }
        OutputFormat::Json => {
            let disagreements: Vec<Value> = doc
                .disagreements
                .iter()
                .map(|(p, q, fast, slow)| {
                    json!({"first": p, "second": q, "fast": fast, "enumeration": slow})
                })
                .collect();
            Ok(pretty(json!({
                "x": doc.x,
                "n": doc.n,
                "pairs_checked": doc.pairs_checked,
                "budget": doc.budget,
                "agree": doc.disagreements.is_empty(),
                "disagreements": disagreements,
            })))
        }
        OutputFormat::Csv => Err(ReportError::CsvUnsupported),
    }
}

fn pretty(value: Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("reports serialize");
    out.push('\n');
    out
}
