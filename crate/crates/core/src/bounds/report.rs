use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{BoundCheck, Context, Demonstration};

pub const REPORT_SCHEMA: u32 = 1;

/// A checker that did not run on a graph, with the reason.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skip {
    pub graph: String,
    pub checker: String,
    pub reason: String,
}

/// Per-name totals taken before condensing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub name: String,
    pub evaluated: usize,
    pub failed: usize,
    pub worst_margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    /// Asserted checks, condensed to the worst case per (graph, name, x).
    pub checks: Vec<BoundCheck>,
    /// Evaluated but never asserted.
    pub diagnostics: Vec<BoundCheck>,
    pub summary: Vec<SummaryRow>,
    pub skipped: Vec<Skip>,
    pub demonstrations: Vec<Demonstration>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            schema: REPORT_SCHEMA,
            checks: Vec::new(),
            diagnostics: Vec::new(),
            summary: Vec::new(),
            skipped: Vec::new(),
            demonstrations: Vec::new(),
        }
    }
}

impl Report {
    pub fn push_checks(&mut self, checks: Vec<BoundCheck>) {
        for c in &checks {
            match self.summary.iter_mut().find(|r| r.name == c.name) {
                Some(row) => {
                    row.evaluated += 1;
                    row.failed += usize::from(!c.holds);
                    row.worst_margin = worse_margin(row.worst_margin, c.margin);
                }
                None => self.summary.push(SummaryRow {
                    name: c.name.clone(),
                    evaluated: 1,
                    failed: usize::from(!c.holds),
                    worst_margin: c.margin,
                }),
            }
        }
        self.checks.extend(condense(checks));
    }

    pub fn push_diagnostics(&mut self, checks: Vec<BoundCheck>) {
        self.diagnostics.extend(condense(checks));
    }

    pub fn skip(&mut self, graph: &str, checker: &str, reason: impl Into<String>) {
        self.skipped.push(Skip { graph: graph.into(), checker: checker.into(), reason: reason.into() });
    }

    /// Merge another report, as produced for a different graph.
    pub fn merge(&mut self, other: Report) {
        let Report { checks, diagnostics, summary, skipped, demonstrations, .. } = other;
        for row in summary {
            match self.summary.iter_mut().find(|r| r.name == row.name) {
                Some(mine) => {
                    mine.evaluated += row.evaluated;
                    mine.failed += row.failed;
                    mine.worst_margin = worse_margin(mine.worst_margin, row.worst_margin);
                }
                None => self.summary.push(row),
            }
        }
        self.checks.extend(checks);
        self.diagnostics.extend(diagnostics);
        self.skipped.extend(skipped);
        self.demonstrations.extend(demonstrations);
    }

    /// Deterministic order: graph, then name, then context.
    pub fn finish(mut self) -> Self {
        self.checks = condense(self.checks);
        self.diagnostics = condense(self.diagnostics);
        self.summary.sort_by(|a, b| a.name.cmp(&b.name));
        self.skipped.sort_by(|a, b| (&a.graph, &a.checker).cmp(&(&b.graph, &b.checker)));
        self.demonstrations.sort_by(|a, b| (&a.graph, &a.name).cmp(&(&b.graph, &b.name)));
        self
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn worse_margin(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

/// True when `a` is a worse witness than `b`: failures first, then smaller margin.
fn is_worse(a: &BoundCheck, b: &BoundCheck) -> bool {
    if a.holds != b.holds {
        return !a.holds;
    }
    match (a.margin.is_nan(), b.margin.is_nan()) {
        (true, false) => true,
        (false, true) => false,
        _ => a.margin < b.margin,
    }
}

fn cmp_opt_f64(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        _ => a.is_some().cmp(&b.is_some()),
    }
}

fn cmp_context(a: &Context, b: &Context) -> Ordering {
    a.graph
        .cmp(&b.graph)
        .then(a.x.cmp(&b.x))
        .then(a.y.cmp(&b.y))
        .then(a.t.cmp(&b.t))
        .then(cmp_opt_f64(a.delta, b.delta))
        .then(a.k.cmp(&b.k))
        .then(cmp_opt_f64(a.alpha, b.alpha))
        .then(cmp_opt_f64(a.c, b.c))
        .then(a.r.cmp(&b.r))
}

fn cmp_check(a: &BoundCheck, b: &BoundCheck) -> Ordering {
    a.context
        .graph
        .cmp(&b.context.graph)
        .then(a.name.cmp(&b.name))
        .then_with(|| cmp_context(&a.context, &b.context))
}

/// Keep the worst check per (graph, name, x), sorted deterministically.
pub fn condense(checks: Vec<BoundCheck>) -> Vec<BoundCheck> {
    let mut worst: BTreeMap<(Option<String>, String, Option<usize>), BoundCheck> = BTreeMap::new();
    for c in checks {
        let key = (c.context.graph.clone(), c.name.clone(), c.context.x);
        match worst.get(&key) {
            Some(old) if !is_worse(&c, old) => {}
            _ => {
                worst.insert(key, c);
            }
        }
    }
    let mut out: Vec<BoundCheck> = worst.into_values().collect();
    out.sort_by(cmp_check);
    out
}

/// `name,evaluated,failed,worst_margin` with one row per check name.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from("name,evaluated,failed,worst_margin\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{:.16e}", r.name, r.evaluated, r.failed, r.worst_margin);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Relation;

    fn chk(name: &str, graph: &str, x: usize, lhs: f64) -> BoundCheck {
        BoundCheck::new(name, "a <= 1", lhs, 1.0, Relation::Le, Context::default().x(x)).with_graph(graph)
    }

    #[test]
    fn condense_keeps_worst_per_vertex() {
        let out = condense(vec![chk("a", "g", 0, 0.2), chk("a", "g", 0, 0.9), chk("a", "g", 1, 0.5), chk("a", "g", 0, 0.1)]);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].lhs, 0.9);
        assert_eq!(out[1].context.x, Some(1));
    }

    #[test]
    fn failures_win_over_margins() {
        let mut big = BoundCheck::new("a", "a <= b", 1.0 + 1e-6, 1.0, Relation::Le, Context::default());
        big.margin = -1e-6;
        let small = BoundCheck::new("a", "a <= b", 1e6, 1e6 + 1.0, Relation::Le, Context::default());
        assert!(!big.holds && small.holds);
        let out = condense(vec![big.clone(), small]);
        assert_eq!(out, vec![big]);
    }

    #[test]
    fn summary_counts_before_condensing() {
        let mut r = Report::default();
        r.push_checks(vec![chk("b", "g", 0, 0.5), chk("b", "g", 0, 2.0), chk("a", "g", 0, 0.1)]);
        let r = r.finish();
        assert_eq!(r.checks.len(), 2);
        assert!(!r.all_hold());
        let csv = summary_csv(&r.summary);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "name,evaluated,failed,worst_margin");
        assert!(lines[1].starts_with("a,1,0,"));
        assert!(lines[2].starts_with("b,2,1,"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
    }
}
