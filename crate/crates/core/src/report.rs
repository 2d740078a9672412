//! Structured command reports with matching text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::search::{Method, SearchResult};
use crate::span::round4;

/// A span value carried at full precision alongside its 4-decimal display form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Value {
    pub value: f64,
    pub rounded: f64,
}

impl Value {
    pub fn new(value: f64) -> Self {
        Self {
            value,
            rounded: round4(value),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.4}", self.rounded)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Item {
    Partition {
        label: String,
        blocks: Vec<Vec<String>>,
    },
    SetSpan {
        label: String,
        span: Value,
        lower: Vec<String>,
        boundary: Vec<String>,
    },
    Scalar {
        label: String,
        value: Value,
    },
    Count {
        label: String,
        count: usize,
    },
    Objects {
        label: String,
        objects: Vec<String>,
    },
    Reduct {
        attributes: Vec<String>,
        span: Value,
    },
    Check {
        label: String,
        passed: bool,
    },
    Rank {
        rank: usize,
        column: String,
        span: Value,
    },
    Labeling {
        assignments: Vec<(String, String)>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub method: Method,
    pub seed: u64,
    pub evaluations: u64,
    pub optimal: bool,
}

impl From<&SearchResult> for Provenance {
    fn from(r: &SearchResult) -> Self {
        Self {
            method: r.method,
            seed: r.seed,
            evaluations: r.evaluations,
            optimal: r.optimal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<Provenance>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            items: Vec::new(),
            search: None,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn scalar(&mut self, label: impl Into<String>, value: f64) {
        self.push(Item::Scalar {
            label: label.into(),
            value: Value::new(value),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Looks up a scalar by label.
    pub fn scalar_value(&self, label: &str) -> Option<Value> {
        self.items.iter().find_map(|item| match item {
            Item::Scalar { label: l, value } if l == label => Some(*value),
            _ => None,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports always serialize");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        for input in &self.inputs {
            let _ = writeln!(out, "input {} sha256:{}", input.path, input.sha256);
        }
        for item in &self.items {
            let _ = writeln!(out, "{}", render_item(item));
        }
        if let Some(p) = &self.search {
            let _ = writeln!(
                out,
                "search method={} seed={} evaluations={} optimal={}",
                p.method, p.seed, p.evaluations, p.optimal
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

fn braces(objects: &[String]) -> String {
    format!("{{{}}}", objects.join(", "))
}

fn render_item(item: &Item) -> String {
    match item {
        Item::Partition { label, blocks } => {
            let blocks: Vec<String> = blocks.iter().map(|b| braces(b)).collect();
            format!("{label} = {{{}}}", blocks.join(", "))
        }
        Item::SetSpan {
            label,
            span,
            lower,
            boundary,
        } => format!(
            "span[{label}] = {span}  lower={} boundary={}",
            braces(lower),
            braces(boundary)
        ),
        Item::Scalar { label, value } => format!("{label} = {value}"),
        Item::Count { label, count } => format!("{label} = {count}"),
        Item::Objects { label, objects } => format!("{label} = {}", braces(objects)),
        Item::Reduct { attributes, span } => {
            format!("reduct {} span = {span}", braces(attributes))
        }
        Item::Check { label, passed } => {
            format!("check {label}: {}", if *passed { "pass" } else { "FAIL" })
        }
        Item::Rank { rank, column, span } => format!("#{rank} {column} = {span}"),
        Item::Labeling { assignments } => {
            let parts: Vec<String> = assignments
                .iter()
                .map(|(o, c)| format!("{o}:{c}"))
                .collect();
            format!("labeling {}", parts.join(" "))
        }
    }
}
