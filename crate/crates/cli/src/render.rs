use std::fmt::Write as _;

use serde_json::{json, Value};

use adapted_basis::basis::{fixed_point_pairs, BasisElement, LabeledMatrix};
use adapted_basis::invariants::ConjugacyInput;
use adapted_basis::rewriter::SimplifiedPresentation;
use adapted_basis::symplectic::{Arrangement, SymplecticChange};
use adapted_basis::verify::{SweepReport, VerificationReport};
use adapted_basis::{IntMatrix, PrimeOrderData};

use crate::{CliError, Format};

/// Something the tool prints.
#[derive(Debug, Clone)]
pub enum Document {
    Presentation { class: ConjugacyInput, pres: SimplifiedPresentation },
    /// `data` is normalized; its permutation maps curves back to the fixed
    /// points as originally numbered.
    Basis { class: ConjugacyInput, data: PrimeOrderData, basis: Vec<BasisElement> },
    Matrix { class: ConjugacyInput, matrix: LabeledMatrix },
    Symplectic { class: ConjugacyInput, labels: Vec<BasisElement>, change: SymplecticChange, action: IntMatrix },
    Verify { class: ConjugacyInput, report: VerificationReport },
    Sweep(SweepReport),
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(format!("csv: {e}"))
}

fn write_csv(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

fn matrix_csv(labels: &[String], m: &IntMatrix) -> Vec<Vec<String>> {
    let mut rows = vec![std::iter::once(String::new()).chain(labels.iter().cloned()).collect()];
    for (i, label) in labels.iter().enumerate() {
        rows.push(
            std::iter::once(label.clone())
                .chain(m.row(i).iter().map(i64::to_string))
                .collect(),
        );
    }
    rows
}

fn matrix_text(labels: &[String], m: &IntMatrix) -> String {
    let lw = labels.iter().map(String::len).max().unwrap_or(0);
    let cw = m.max_abs().to_string().len() + 1;
    let mut out = String::new();
    for (i, label) in labels.iter().enumerate() {
        let _ = write!(out, "{label:<lw$} |");
        for x in m.row(i) {
            let _ = write!(out, " {x:>cw$}");
        }
        out.push('\n');
    }
    out
}

fn index_labels(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Original fixed point carrying the exceptional curve `e`, if any.
fn origin_of(e: &BasisElement, data: &PrimeOrderData) -> Option<usize> {
    let BasisElement::Exceptional { s, v, .. } = *e else {
        return None;
    };
    let i = fixed_point_pairs(data).iter().position(|&pair| pair == (s, v))?;
    Some(data.permutation[i] + 1)
}

fn class_text(class: &ConjugacyInput) -> String {
    let mut s = format!("p = {}, g0 = {}", class.p, class.g0);
    if let Some(n) = &class.n {
        let _ = write!(s, ", n = {n:?}");
    }
    if let Some(m) = &class.m {
        let _ = write!(s, ", m = {m:?}");
    }
    if let Some(t) = class.t {
        let _ = write!(s, ", t = {t}");
    }
    s
}

impl Document {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.to_text()),
            Format::Csv => write_csv(&self.to_csv()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Presentation { class, pres } => {
                let relator: Vec<Value> = pres
                    .relator()
                    .letters()
                    .iter()
                    .map(|l| json!([l.symbol.to_string(), l.sign()]))
                    .collect();
                json!({ "class": class, "generators": pres.generators(), "relator": relator })
            }
            Document::Basis { class, data, basis } => {
                let origins: Vec<Option<usize>> = basis.iter().map(|e| origin_of(e, data)).collect();
                json!({ "class": class, "labels": basis, "fixed_point": origins })
            }
            Document::Matrix { class, matrix } => {
                json!({ "class": class, "labels": matrix.labels, "rows": matrix.matrix.to_rows() })
            }
            Document::Symplectic { class, labels, change, action } => json!({
                "class": class,
                "labels": labels,
                "arrangement": match change.arrangement {
                    Arrangement::Paired => "paired",
                    Arrangement::Split => "split",
                },
                "P": change.change.to_rows(),
                "J": change.target.to_rows(),
                "T": action.to_rows(),
            }),
            Document::Verify { class, report } => json!({ "class": class, "report": report }),
            Document::Sweep(report) => json!(report),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Document::Presentation { class, pres } => {
                let _ = writeln!(out, "# {}", class_text(class));
                for g in pres.generators() {
                    let _ = writeln!(out, "{g}");
                }
                let _ = writeln!(out, "relator: {}", pres.relator());
            }
            Document::Basis { class, data, basis } => {
                let _ = writeln!(out, "# {}", class_text(class));
                for e in basis {
                    match origin_of(e, data) {
                        Some(i) => {
                            let _ = writeln!(out, "{e}  (fixed point {i})");
                        }
                        None => {
                            let _ = writeln!(out, "{e}");
                        }
                    }
                }
            }
            Document::Matrix { class, matrix } => {
                let _ = writeln!(out, "# {}", class_text(class));
                out.push_str(&matrix.to_string());
            }
            Document::Symplectic { class, labels, change, action } => {
                let _ = writeln!(out, "# {}", class_text(class));
                let old: Vec<String> = labels.iter().map(ToString::to_string).collect();
                let new = index_labels(labels.len(), "f");
                out.push_str("P (columns: new basis in old coordinates)\n");
                out.push_str(&matrix_text(&old, &change.change));
                out.push_str("J\n");
                out.push_str(&matrix_text(&new, &change.target));
                out.push_str("T (row i: image of f_i)\n");
                out.push_str(&matrix_text(&new, action));
            }
            Document::Verify { class, report } => {
                let _ = writeln!(out, "# {}", class_text(class));
                for c in &report.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{status} {}", c.name);
                }
            }
            Document::Sweep(report) => {
                let _ = writeln!(out, "classes: {}, passed: {}, failed: {}", report.cases.len(), report.passed, report.failed);
                for c in report.cases.iter().filter(|c| !c.passed()) {
                    let names: Vec<&str> = c.failures().map(|f| f.name).collect();
                    let _ = writeln!(out, "FAIL p={} n={:?} g0={}: {}", c.p, c.n, c.g0, names.join(", "));
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> Vec<Vec<String>> {
        match self {
            Document::Presentation { pres, .. } => {
                let mut rows = vec![vec!["symbol".to_string(), "sign".to_string()]];
                rows.extend(
                    pres.relator()
                        .letters()
                        .iter()
                        .map(|l| vec![l.symbol.to_string(), l.sign().to_string()]),
                );
                rows
            }
            Document::Basis { data, basis, .. } => {
                let mut rows = vec![vec!["index".into(), "label".into(), "fixed_point".into()]];
                for (i, e) in basis.iter().enumerate() {
                    let origin = origin_of(e, data).map(|o| o.to_string()).unwrap_or_default();
                    rows.push(vec![i.to_string(), e.to_string(), origin]);
                }
                rows
            }
            Document::Matrix { matrix, .. } => matrix_csv(&matrix.label_strings(), &matrix.matrix),
            Document::Symplectic { labels, change, action, .. } => {
                let old: Vec<String> = labels.iter().map(ToString::to_string).collect();
                let new = index_labels(labels.len(), "f");
                let mut rows = vec![vec!["matrix".into(), "P".into()]];
                rows.extend(matrix_csv(&old, &change.change));
                rows.push(vec!["matrix".into(), "J".into()]);
                rows.extend(matrix_csv(&new, &change.target));
                rows.push(vec!["matrix".into(), "T".into()]);
                rows.extend(matrix_csv(&new, action));
                rows
            }
            Document::Verify { report, .. } => {
                let mut rows = vec![vec!["check".to_string(), "passed".to_string()]];
                rows.extend(report.checks.iter().map(|c| vec![c.name.to_string(), c.passed.to_string()]));
                rows
            }
            Document::Sweep(report) => {
                let mut rows = vec![vec!["p".into(), "n".into(), "g0".into(), "g".into(), "passed".into()]];
                for c in &report.cases {
                    let n: Vec<String> = c.n.iter().map(u32::to_string).collect();
                    rows.push(vec![
                        c.p.to_string(),
                        n.join(" "),
                        c.g0.to_string(),
                        c.g.to_string(),
                        c.passed().to_string(),
                    ]);
                }
                rows
            }
        }
    }
}
