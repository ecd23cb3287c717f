//! Edge-list CSV (`u,v,w`) and JSON (`{"n": .., "edges": [[u, v, w], ..]}`) graph files.
//!
//! Weights are written with the shortest representation that parses back to
//! the same value, so load/save cycles are byte-stable.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("u,v,w\n");
        for &(u, v, w) in self.edges() {
            out.push_str(&format!("{u},{v},{w}\n"));
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| Error::Parse(e.to_string()))?;
        if headers.iter().collect::<Vec<_>>() != ["u", "v", "w"] {
            return Err(Error::Parse(format!("expected header 'u,v,w', got '{}'", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut edges = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let field = |i: usize| record.get(i).unwrap_or("");
            let at = line + 2;
            let u = field(0).parse::<usize>().map_err(|e| Error::Parse(format!("line {at}: u: {e}")))?;
            let v = field(1).parse::<usize>().map_err(|e| Error::Parse(format!("line {at}: v: {e}")))?;
            let w = field(2)
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("line {at}: bad weight '{}'", field(2))))?;
            edges.push((u, v, w));
        }
        Self::from_edges(&edges)
    }

    pub fn to_json_string(&self) -> String {
        let doc = JsonGraph {
            n: self.n(),
            edges: self.edges().iter().map(|&(u, v, w)| (u, v, w.f64())).collect(),
        };
        serde_json::to_string(&doc).expect("graph serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let edges: Vec<_> = doc.edges.into_iter().map(|(u, v, w)| (u, v, T::of(w))).collect();
        Self::new(doc.n, &edges)
    }

    /// Load a `.json` or edge-list CSV file (any other extension).
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        if is_json(path) {
            Self::from_json_str(&text)
        } else {
            Self::from_csv_str(&text)
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = if is_json(path) { self.to_json_string() } else { self.to_csv_string() };
        fs::write(path, text)?;
        Ok(())
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}
