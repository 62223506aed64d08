//! Report model: the machine-readable JSON document and the text summary.
//!
//! Reports must be byte-identical across repeated runs with the same
//! corpus, seed and budgets, regardless of worker count, so all maps are
//! ordered and every list is emitted in corpus order.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use skewpbw_core::finring::FiniteRing;
use skewpbw_core::ringprops::{AuditReport, Verdict, Witness};
use skewpbw_core::skewpbw::{Extension, ProbeOutcome};

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictJson {
    pub fn plain(value: bool) -> Self {
        VerdictJson { value: json!(value), witness: None, manifest: None, note: None }
    }

    pub fn not_applicable(reason: &str) -> Self {
        VerdictJson {
            value: json!("n/a"),
            witness: None,
            manifest: None,
            note: Some(reason.to_string()),
        }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct ItemJson {
    pub name: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdicts: BTreeMap<String, VerdictJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Engine-level or theorem-level breaches; any entry fails the run.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

impl ItemJson {
    pub fn new(name: String, kind: &'static str) -> Self {
        ItemJson {
            name,
            kind,
            error: None,
            verdicts: BTreeMap::new(),
            notes: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn errored(name: String, kind: &'static str, error: String) -> Self {
        let mut item = Self::new(name, kind);
        item.error = Some(error);
        item
    }
}

#[derive(Debug, Serialize)]
pub struct TheoremJson {
    pub id: String,
    pub statement: String,
    pub tested: usize,
    pub vacuous: bool,
    pub violations: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AuditJson {
    pub theorems: Vec<TheoremJson>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub items: Vec<ItemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditJson>,
    pub status: String,
}

impl RunReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn verdict_to_json(ring: &FiniteRing, v: &Verdict) -> VerdictJson {
    match v {
        Verdict::Holds => VerdictJson::plain(true),
        Verdict::Fails(w) => VerdictJson {
            value: json!(false),
            witness: Some(witness_to_json(ring, w)),
            manifest: None,
            note: None,
        },
        Verdict::NotApplicable => VerdictJson::not_applicable("no map family attached"),
    }
}

pub fn witness_to_json(ring: &FiniteRing, w: &Witness) -> Value {
    json!({
        "text": w.describe(ring),
        "detail": format!("{w:?}"),
    })
}

/// Polynomials serialize as (exponent vector, coefficient index) pairs in
/// monomial order, with the display string alongside.
fn poly_to_json(ext: &Extension, p: &skewpbw_core::skewpbw::Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!([m.exps(), c]))
        .collect();
    json!({ "text": ext.format_poly(p), "terms": terms })
}

pub fn probe_to_json(ext: &Extension, outcome: &ProbeOutcome) -> VerdictJson {
    match outcome {
        ProbeOutcome::Counterexample(w) => {
            let parts: BTreeMap<String, Value> = w
                .parts
                .iter()
                .map(|(n, p)| (n.to_string(), poly_to_json(ext, p)))
                .collect();
            VerdictJson {
                value: json!(false),
                witness: Some(json!({
                    "text": w.detail,
                    "parts": parts,
                    "map": w.map_label,
                })),
                manifest: None,
                note: None,
            }
        }
        ProbeOutcome::NoneFound(m) => VerdictJson {
            value: json!("inconclusive"),
            witness: None,
            manifest: Some(json!({
                "degree": m.degree,
                "support": m.support,
                "mode": m.mode,
                "candidates": m.candidates,
                "products": m.products,
                "skipped_overflow": m.skipped_overflow,
                "notes": m.notes,
            })),
            note: Some("no counterexample in the covered space; the extension is infinite".to_string()),
        },
    }
}

pub fn audit_to_json(audit: &AuditReport) -> AuditJson {
    AuditJson {
        theorems: audit
            .theorems
            .iter()
            .map(|t| TheoremJson {
                id: t.id.to_string(),
                statement: t.statement.to_string(),
                tested: t.tested.len(),
                vacuous: t.vacuous,
                violations: t
                    .violations
                    .iter()
                    .map(|v| json!({ "fixture": v.fixture, "detail": v.detail }))
                    .collect(),
                skipped: t
                    .skipped
                    .iter()
                    .map(|(name, reason)| json!({ "fixture": name, "reason": reason }))
                    .collect(),
                notes: t.notes.clone(),
            })
            .collect(),
    }
}

/// Human-readable rendering of the report for standard output.
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    for item in &report.items {
        out.push_str(&format!("[{}] {}\n", item.kind, item.name));
        if let Some(err) = &item.error {
            out.push_str(&format!("  error: {err}\n"));
            continue;
        }
        for (name, v) in &item.verdicts {
            let value = match &v.value {
                Value::Bool(b) => b.to_string(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let mut line = format!("  {name}: {value}");
            if let Some(w) = &v.witness {
                if let Some(text) = w.get("text").and_then(|t| t.as_str()) {
                    line.push_str(&format!("  [{text}]"));
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        for note in &item.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        for v in &item.violations {
            out.push_str(&format!("  VIOLATION: {v}\n"));
        }
    }
    if let Some(audit) = &report.audit {
        out.push_str("[audit]\n");
        for t in &audit.theorems {
            let state = if !t.violations.is_empty() {
                "VIOLATED"
            } else if t.vacuous {
                "vacuous"
            } else {
                "pass"
            };
            out.push_str(&format!(
                "  {}: {} (tested {})  {}\n",
                t.id, state, t.tested, t.statement
            ));
            for v in &t.violations {
                out.push_str(&format!("    violation: {v}\n"));
            }
        }
    }
    out.push_str(&format!("status: {}\n", report.status));
    out
}
