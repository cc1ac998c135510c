//! Text, JSON and CSV output. Every number is printed as an exact decimal.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};
use stacksort::oracle::{ClassicCounts, PropertyReport, ShapeCensus};
use stacksort::{column_blocks, BigUint, Permutation, StackSortingTableau};

use crate::Format;

// Output goes to stdout; a closed pipe is not worth reporting.
macro_rules! out {
    ($w:expr, $($arg:tt)*) => {
        let _ = writeln!($w, $($arg)*);
    };
}

fn json_line(w: &mut impl Write, v: &impl Serialize) {
    out!(
        w,
        "{}",
        serde_json::to_string_pretty(v).expect("serializable")
    );
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

struct Step {
    entries: Vec<u32>,
    columns: Option<Vec<u32>>,
    blocks: Option<Vec<Vec<u32>>>,
    annotated: String,
}

fn steps(p: &Permutation) -> Vec<Step> {
    let primed = p.is_primed();
    p.iterates()
        .into_iter()
        .enumerate()
        .map(|(k, it)| {
            let entries = it.entries().to_vec();
            let cb = if primed && !it.is_sorted() {
                column_blocks(p, k + 1).ok()
            } else {
                None
            };
            let annotated = match &cb {
                Some(cb) => {
                    let mut parts = Vec::new();
                    for (col, block) in cb.columns.iter().zip(&cb.blocks) {
                        if !block.is_empty() {
                            parts.push(format!("({})", join(block)));
                        }
                        parts.push(col.to_string());
                    }
                    let zero = entries.iter().position(|&v| v == 0).expect("primed");
                    parts.push(join(&entries[zero..]));
                    parts.join(" ")
                }
                None => join(&entries),
            };
            Step {
                entries,
                columns: cb.as_ref().map(|cb| cb.columns.clone()),
                blocks: cb.map(|cb| cb.blocks),
                annotated,
            }
        })
        .collect()
}

pub fn trace(w: &mut impl Write, fmt: Format, p: &Permutation) {
    let steps = steps(p);
    match fmt {
        Format::Text => {
            for s in &steps {
                out!(w, "{}", s.annotated);
            }
        }
        Format::Json => {
            let iterates: Vec<Value> = steps
                .iter()
                .map(|s| json!({"entries": s.entries, "columns": s.columns, "blocks": s.blocks}))
                .collect();
            json_line(
                w,
                &json!({"primed": p.is_primed(), "depth": p.sort_depth(), "iterates": iterates}),
            );
        }
        Format::Csv => {
            out!(w, "step,iterate,annotated");
            for (k, s) in steps.iter().enumerate() {
                out!(w, "{},{},{}", k, join(&s.entries), s.annotated);
            }
        }
    }
}

pub fn tableau(w: &mut impl Write, fmt: Format, t: &StackSortingTableau) {
    match fmt {
        Format::Text => {
            out!(w, "shape {}", t.shape());
            out!(w, "{t}");
        }
        Format::Json => json_line(w, t),
        Format::Csv => {
            out!(w, "value,col,row");
            for (k, c) in t.cells().iter().enumerate() {
                out!(w, "{},{},{}", k + 1, c.col, c.row);
            }
        }
    }
}

pub struct CountRows {
    pub t: usize,
    pub rows: Vec<(usize, BigUint)>,
}

/// `bare` prints a lone count without the `n` column in text mode.
pub fn counts(w: &mut impl Write, fmt: Format, c: &CountRows, bare: bool) {
    match fmt {
        Format::Text if bare => {
            for (_, count) in &c.rows {
                out!(w, "{count}");
            }
        }
        Format::Text => {
            for (n, count) in &c.rows {
                out!(w, "{n:>3}  {count}");
            }
        }
        Format::Json => {
            let rows: Vec<Value> = c
                .rows
                .iter()
                .map(|(n, count)| json!({"n": n, "count": count.to_string()}))
                .collect();
            json_line(w, &json!({"t": c.t, "rows": rows}));
        }
        Format::Csv => {
            out!(w, "n,count");
            for (n, count) in &c.rows {
                out!(w, "{n},{count}");
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleRow {
    pub n: usize,
    pub t: usize,
    pub brute: u64,
    #[serde(serialize_with = "decimal_opt")]
    pub dp: Option<BigUint>,
}

impl OracleRow {
    fn passed(&self) -> bool {
        self.dp
            .as_ref()
            .is_none_or(|d| *d == BigUint::from(self.brute))
    }
}

fn decimal_opt<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Everything one `oracle` or `verify` run produced.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<PropertyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub census: Vec<ShapeCensus>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classic: Vec<ClassicCounts>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.oracle.as_ref().is_none_or(OracleRow::passed)
            && self.properties.iter().all(PropertyReport::passed)
            && self.census.iter().all(ShapeCensus::consistent)
            && self.classic.iter().all(ClassicCounts::consistent)
    }

    /// `(kind, name, n, checked, failed, detail)` for every line of the report.
    fn lines(&self) -> Vec<(&'static str, String, usize, u64, u64, String)> {
        let mut lines = Vec::new();
        if let Some(o) = &self.oracle {
            let detail = match &o.dp {
                Some(dp) => format!("brute={} dp={}", o.brute, dp),
                None => format!("brute={}", o.brute),
            };
            lines.push((
                "oracle",
                format!("t={}", o.t),
                o.n,
                1,
                u64::from(!o.passed()),
                detail,
            ));
        }
        for p in &self.properties {
            lines.push((
                "property",
                p.property.clone(),
                p.n,
                p.checked,
                p.failed,
                String::new(),
            ));
        }
        for c in &self.census {
            lines.push((
                "census",
                c.shape.to_string(),
                c.shape.size(),
                c.count,
                u64::from(!c.consistent()),
                format!(
                    "extensions={} hook_product={} tableaux_seen={}",
                    c.extensions, c.hook_product, c.tableaux_seen
                ),
            ));
        }
        for c in &self.classic {
            lines.push((
                "classic",
                "catalan-zeilberger".to_string(),
                c.n,
                2,
                u64::from(!c.consistent()),
                format!(
                    "w1={} catalan={} w2={} zeilberger={}",
                    c.w1, c.catalan, c.w2, c.zeilberger
                ),
            ));
        }
        lines
    }
}

pub fn report(w: &mut impl Write, fmt: Format, r: &Report) {
    match fmt {
        Format::Text => {
            let lines = r.lines();
            for (kind, name, n, checked, failed, detail) in &lines {
                let status = if *failed == 0 { "PASS" } else { "FAIL" };
                out!(w, "{status} {kind} {name} n={n} checked={checked} {detail}");
            }
            for p in r.properties.iter().filter(|p| !p.passed()) {
                for f in &p.failures {
                    out!(w, "  counterexample {}: {}", p.property, f);
                }
            }
            let failed = lines.iter().filter(|l| l.4 > 0).count();
            out!(w, "{} checks, {} failed", lines.len(), failed);
        }
        Format::Json => json_line(w, r),
        Format::Csv => {
            out!(w, "kind,name,n,checked,failed,detail");
            for (kind, name, n, checked, failed, detail) in r.lines() {
                out!(
                    w,
                    "{kind},{},{n},{checked},{failed},{}",
                    csv_field(&name),
                    csv_field(&detail)
                );
            }
        }
    }
}

pub struct MotzkinRow {
    pub n: usize,
    pub motzkin: BigUint,
    pub count: BigUint,
}

impl MotzkinRow {
    pub fn matches(&self) -> bool {
        self.motzkin == self.count
    }
}

pub fn motzkin(w: &mut impl Write, fmt: Format, rows: &[MotzkinRow]) {
    match fmt {
        Format::Text => {
            for r in rows {
                let status = if r.matches() { "match" } else { "MISMATCH" };
                out!(w, "{:>3}  {}  {}  {status}", r.n, r.count, r.motzkin);
            }
            let matching = rows.iter().filter(|r| r.matches()).count();
            out!(w, "{matching} of {} rows match", rows.len());
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "count": r.count.to_string(),
                        "motzkin": r.motzkin.to_string(),
                        "match": r.matches(),
                    })
                })
                .collect();
            json_line(w, &json!({"t": 2, "rows": rows}));
        }
        Format::Csv => {
            out!(w, "n,count,motzkin,match");
            for r in rows {
                out!(w, "{},{},{},{}", r.n, r.count, r.motzkin, r.matches());
            }
        }
    }
}
