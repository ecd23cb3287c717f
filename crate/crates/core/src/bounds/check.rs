use std::fmt;

use serde::{Deserialize, Serialize};

/// Relative slack used when deciding whether an inequality holds.
pub const CHECK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    /// Strict, evaluated as `<=` with the same slack since rounding cannot witness strictness.
    #[serde(rename = "<")]
    Lt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
        })
    }
}

/// Where a check was evaluated. Unset fields are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Context {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
}

impl Context {
    pub fn x(mut self, x: usize) -> Self {
        self.x = Some(x);
        self
    }
    pub fn y(mut self, y: usize) -> Self {
        self.y = Some(y);
        self
    }
    pub fn t(mut self, t: u64) -> Self {
        self.t = Some(t);
        self
    }
    pub fn delta(mut self, d: f64) -> Self {
        self.delta = Some(d);
        self
    }
    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
    pub fn alpha(mut self, a: f64) -> Self {
        self.alpha = Some(a);
        self
    }
    pub fn c(mut self, c: f64) -> Self {
        self.c = Some(c);
        self
    }
    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }
    pub fn graph(mut self, g: impl Into<String>) -> Self {
        self.graph = Some(g.into());
        self
    }
}

/// One evaluated inequality `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    /// The displayed inequality being tested.
    pub paper_anchor: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub holds: bool,
    /// Positive when the inequality holds with room to spare.
    pub margin: f64,
    pub context: Context,
}

impl BoundCheck {
    pub fn new(name: &str, anchor: &str, lhs: f64, rhs: f64, relation: Relation, context: Context) -> Self {
        let margin = match relation {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Ge => lhs - rhs,
        };
        let slack = CHECK_TOL * rhs.abs().max(1.0);
        let holds = margin >= -slack;
        BoundCheck {
            name: name.to_string(),
            paper_anchor: anchor.to_string(),
            lhs,
            rhs,
            relation,
            holds,
            margin,
            context,
        }
    }

    pub fn with_graph(mut self, graph: &str) -> Self {
        self.context.graph = Some(graph.to_string());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_and_slack() {
        let c = BoundCheck::new("a", "a <= b", 1.0, 2.0, Relation::Le, Context::default());
        assert!(c.holds && c.margin == 1.0);
        let c = BoundCheck::new("a", "a >= b", 1.0, 2.0, Relation::Ge, Context::default());
        assert!(!c.holds && c.margin == -1.0);
        let c = BoundCheck::new("a", "a < b", 1.0 + 1e-10, 1.0, Relation::Lt, Context::default());
        assert!(c.holds);
        let c = BoundCheck::new("a", "a <= b", 1.0 + 1e-8, 1.0, Relation::Le, Context::default());
        assert!(!c.holds);
        let c = BoundCheck::new("a", "a <= b", f64::NAN, 1.0, Relation::Le, Context::default());
        assert!(!c.holds);
    }

    #[test]
    fn json_shape() {
        let c = BoundCheck::new("m", "x <= y", 0.5, 1.0, Relation::Le, Context::default().x(2).t(4));
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 8);
        assert_eq!(v["relation"], "<=");
        assert_eq!(v["context"], serde_json::json!({"x": 2, "t": 4}));
    }
}
