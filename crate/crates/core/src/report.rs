//! Machine-readable report records rendered as JSON, CSV or plain text.
//!
//! Every quantity is an [`ExactValue`]: a decimal plus, when the value
//! comes from integer cuts and volumes or exact arithmetic, the reduced
//! fraction. Vertex ids in partitions are 1-based and sorted. Maps are
//! ordered by key so identical inputs render byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::ToPrimitive;
use serde::Serialize;

use crate::graph::Graph;
use crate::ipm::{EigenEstimate, StopReason};
use crate::nodal::CutRatio;
use crate::scalar::{as_exact_integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactValue {
    pub num: Option<i64>,
    pub den: Option<i64>,
    pub decimal: f64,
}

impl ExactValue {
    pub fn approximate(x: f64) -> Self {
        Self { num: None, den: None, decimal: x }
    }

    pub fn ratio(r: &CutRatio) -> Self {
        let (num, den) = r.exact().unzip();
        Self { num, den, decimal: r.value() }
    }

    pub fn rational(r: &Rational) -> Self {
        Self {
            num: r.numer().to_i64(),
            den: r.denom().to_i64(),
            decimal: r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Integral reals get `num/1`; anything else is decimal only.
    pub fn integer_or_decimal(x: f64) -> Self {
        match as_exact_integer(x) {
            Some(i) => Self { num: Some(i), den: Some(1), decimal: x },
            None => Self::approximate(x),
        }
    }

    fn fraction(&self) -> Option<String> {
        match (self.num, self.den) {
            (Some(n), Some(1)) => Some(n.to_string()),
            (Some(n), Some(d)) => Some(format!("{n}/{d}")),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    /// Total degree `d = Σ d_i`.
    pub d: ExactValue,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        Self {
            n: g.n(),
            m: g.edges().len(),
            d: ExactValue::integer_or_decimal(g.total_degree()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceSummary {
    pub init_index: usize,
    pub outer_iters: usize,
    pub inner_iters: usize,
    pub final_mu: f64,
    pub stop: StopReason,
    pub monotone: bool,
}

impl TraceSummary {
    pub fn of(est: &EigenEstimate, slack: f64) -> Self {
        Self {
            init_index: est.init_index,
            outer_iters: est.trace.records.len().saturating_sub(1),
            inner_iters: est.trace.total_inner_iters(),
            final_mu: est.value,
            stop: est.trace.stop,
            monotone: est.trace.is_monotone(slack),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Results {
    pub values: BTreeMap<String, ExactValue>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub partitions: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<ExactValue>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub traces: BTreeMap<String, TraceSummary>,
    /// Quantities named in the theory that are not computed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unevaluated: Vec<String>,
}

impl Results {
    pub fn value(&mut self, name: &str, v: ExactValue) -> &mut Self {
        self.values.insert(name.into(), v);
        self
    }

    /// Store 0-based parts as sorted 1-based lists.
    pub fn partition(&mut self, name: &str, parts: &[Vec<usize>]) -> &mut Self {
        let mut p: Vec<Vec<usize>> = parts
            .iter()
            .map(|s| {
                let mut s: Vec<usize> = s.iter().map(|v| v + 1).collect();
                s.sort_unstable();
                s
            })
            .collect();
        p.sort();
        self.partitions.insert(name.into(), p);
        self
    }

    pub fn flag(&mut self, name: &str, b: bool) -> &mut Self {
        self.flags.insert(name.into(), b);
        self
    }

    pub fn vector(&mut self, name: &str, v: Vec<ExactValue>) -> &mut Self {
        self.vectors.insert(name.into(), v);
        self
    }

    pub fn trace(&mut self, name: &str, t: TraceSummary) -> &mut Self {
        self.traces.insert(name.into(), t);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub graph: GraphInfo,
    pub mode: String,
    pub results: Results,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    section: &'a str,
    name: &'a str,
    num: Option<i64>,
    den: Option<i64>,
    decimal: Option<f64>,
    value: String,
}

fn join_parts(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|p| {
            let ids: Vec<String> = p.iter().map(usize::to_string).collect();
            format!("{{{}}}", ids.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn show(v: &ExactValue) -> String {
    match v.fraction() {
        Some(f) if v.den == Some(1) => f,
        Some(f) => format!("{f} ({})", v.decimal),
        None => v.decimal.to_string(),
    }
}

impl Report {
    pub fn new(g: &Graph, mode: &str, results: Results) -> Self {
        Self {
            graph: GraphInfo::of(g),
            mode: mode.into(),
            results,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let text_row = |section, name, value| CsvRow {
            section,
            name,
            num: None,
            den: None,
            decimal: None,
            value,
        };
        let r = &self.results;
        let mut rows = vec![
            text_row("graph", "n", self.graph.n.to_string()),
            text_row("graph", "m", self.graph.m.to_string()),
            CsvRow {
                section: "graph",
                name: "d",
                num: self.graph.d.num,
                den: self.graph.d.den,
                decimal: Some(self.graph.d.decimal),
                value: String::new(),
            },
            text_row("mode", "mode", self.mode.clone()),
        ];
        for (k, v) in &r.values {
            rows.push(CsvRow {
                section: "value",
                name: k,
                num: v.num,
                den: v.den,
                decimal: Some(v.decimal),
                value: String::new(),
            });
        }
        for (k, p) in &r.partitions {
            rows.push(text_row("partition", k, join_parts(p)));
        }
        for (k, b) in &r.flags {
            rows.push(text_row("flag", k, b.to_string()));
        }
        for (k, v) in &r.vectors {
            let entries: Vec<String> = v.iter().map(|x| x.decimal.to_string()).collect();
            rows.push(text_row("vector", k, entries.join(" ")));
        }
        for (k, t) in &r.traces {
            rows.push(text_row("trace", k, trace_line(t)));
        }
        for k in &r.unevaluated {
            rows.push(text_row("unevaluated", k, String::new()));
        }
        for row in rows {
            w.serialize(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let g = &self.graph;
        let _ = writeln!(s, "graph n={} m={} d={}", g.n, g.m, show(&g.d));
        let _ = writeln!(s, "mode {}", self.mode);
        let r = &self.results;
        for (k, v) in &r.values {
            let _ = writeln!(s, "value {k} = {}", show(v));
        }
        for (k, p) in &r.partitions {
            let _ = writeln!(s, "partition {k} = {}", join_parts(p));
        }
        for (k, b) in &r.flags {
            let _ = writeln!(s, "flag {k} = {b}");
        }
        for (k, v) in &r.vectors {
            let entries: Vec<String> = v.iter().map(show).collect();
            let _ = writeln!(s, "vector {k} = [{}]", entries.join(", "));
        }
        for (k, t) in &r.traces {
            let _ = writeln!(s, "trace {k}: {}", trace_line(t));
        }
        if !r.unevaluated.is_empty() {
            let _ = writeln!(s, "unevaluated {}", r.unevaluated.join(", "));
        }
        s
    }
}

fn trace_line(t: &TraceSummary) -> String {
    let stop = serde_json::to_value(t.stop).expect("enum serializes");
    format!(
        "init={} outer={} inner={} mu={} stop={} monotone={}",
        t.init_index,
        t.outer_iters,
        t.inner_iters,
        t.final_mu,
        stop.as_str().unwrap_or_default(),
        t.monotone
    )
}
