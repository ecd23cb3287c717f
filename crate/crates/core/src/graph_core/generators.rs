use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::Graph;

const MAX_PAIRING_ATTEMPTS: usize = 10_000;

/// A named graph family with its parameters.
///
/// The string form is `kind:key=value,...`, for example `cycle:n=5`,
/// `circulant:n=9,offsets=1-2` or `torus:dims=15x15`.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    Hypercube { k: usize },
    Circulant { n: usize, offsets: Vec<usize> },
    RandomRegular { n: usize, d: usize },
    GridTorus { dims: Vec<usize> },
    /// Complete graph K_m with a path of k extra vertices hanging off vertex 0.
    Lollipop { m: usize, k: usize },
    Petersen,
    /// Random spanning tree plus independent extra edges with probability p.
    RandomConnected { n: usize, p: f64 },
}

/// Build a graph from a spec. Only the random families use `seed`.
pub fn generate(spec: &GraphSpec, seed: u64) -> Result<Graph> {
    let bad = |msg: &str| Err(Error::InfeasibleParams(format!("{spec}: {msg}")));
    match spec {
        GraphSpec::Cycle { n } => {
            if *n < 3 {
                return bad("cycle needs n >= 3");
            }
            let pairs: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            Graph::unweighted(*n, &pairs)
        }
        GraphSpec::Path { n } => {
            if *n < 2 {
                return bad("path needs n >= 2");
            }
            let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Graph::unweighted(*n, &pairs)
        }
        GraphSpec::Complete { n } => {
            if *n < 2 {
                return bad("complete graph needs n >= 2");
            }
            let mut pairs = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    pairs.push((u, v));
                }
            }
            Graph::unweighted(*n, &pairs)
        }
        GraphSpec::Hypercube { k } => {
            if *k < 1 || *k > 20 {
                return bad("hypercube needs 1 <= k <= 20");
            }
            let n = 1usize << k;
            let mut pairs = Vec::new();
            for u in 0..n {
                for b in 0..*k {
                    let v = u ^ (1 << b);
                    if u < v {
                        pairs.push((u, v));
                    }
                }
            }
            Graph::unweighted(n, &pairs)
        }
        GraphSpec::Circulant { n, offsets } => {
            if *n < 3 || offsets.is_empty() {
                return bad("circulant needs n >= 3 and at least one offset");
            }
            let mut set = HashSet::new();
            for &s in offsets {
                if s == 0 || s >= *n {
                    return bad("offsets must lie in 1..n");
                }
                for i in 0..*n {
                    let j = (i + s) % n;
                    set.insert((i.min(j), i.max(j)));
                }
            }
            let mut pairs: Vec<_> = set.into_iter().collect();
            pairs.sort_unstable();
            Graph::unweighted(*n, &pairs)
        }
        GraphSpec::RandomRegular { n, d } => random_regular(*n, *d, seed),
        GraphSpec::GridTorus { dims } => {
            if dims.is_empty() || dims.iter().any(|&m| m < 3) {
                return bad("every torus side must be at least 3");
            }
            let n: usize = dims.iter().product();
            let mut pairs = Vec::new();
            for u in 0..n {
                let mut stride = 1;
                for &m in dims {
                    let coord = (u / stride) % m;
                    let v = u - coord * stride + ((coord + 1) % m) * stride;
                    pairs.push((u.min(v), u.max(v)));
                    stride *= m;
                }
            }
            Graph::unweighted(n, &pairs)
        }
        GraphSpec::Lollipop { m, k } => {
            if *m < 3 {
                return bad("lollipop head needs m >= 3");
            }
            let mut pairs = Vec::new();
            for u in 0..*m {
                for v in u + 1..*m {
                    pairs.push((u, v));
                }
            }
            let mut prev = 0;
            for i in 0..*k {
                pairs.push((prev, m + i));
                prev = m + i;
            }
            Graph::unweighted(m + k, &pairs)
        }
        GraphSpec::Petersen => {
            let mut pairs = Vec::new();
            for i in 0..5 {
                pairs.push((i, (i + 1) % 5));
                pairs.push((i, i + 5));
                pairs.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::unweighted(10, &pairs)
        }
        GraphSpec::RandomConnected { n, p } => {
            if *n < 2 || !(0.0..=1.0).contains(p) {
                return bad("random connected graph needs n >= 2 and p in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..*n).collect();
            order.shuffle(&mut rng);
            let mut set = HashSet::new();
            for i in 1..*n {
                let j = rng.random_range(0..i);
                let (a, b) = (order[i], order[j]);
                set.insert((a.min(b), a.max(b)));
            }
            for u in 0..*n {
                for v in u + 1..*n {
                    if rng.random_bool(*p) {
                        set.insert((u, v));
                    }
                }
            }
            let mut pairs: Vec<_> = set.into_iter().collect();
            pairs.sort_unstable();
            Graph::unweighted(*n, &pairs)
        }
    }
}

/// Pairing model with rejection of loops, multi-edges and disconnected results.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(Error::InfeasibleParams(format!(
            "random_regular(n={n}, d={d}) needs 0 < d < n and n*d even"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut set = HashSet::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !set.insert((a.min(b), a.max(b))) {
                continue 'attempt;
            }
        }
        let mut pairs: Vec<_> = set.into_iter().collect();
        pairs.sort_unstable();
        match Graph::unweighted(n, &pairs) {
            Ok(g) => return Ok(g),
            Err(Error::DisconnectedGraph { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InfeasibleParams(format!(
        "random_regular(n={n}, d={d}): no simple connected pairing found"
    )))
}

/// Unweighted line graph: one vertex per edge, adjacent when edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (edges[i], edges[j]);
            if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                pairs.push((i, j));
            }
        }
    }
    WeightedGraph::unweighted(edges.len(), &pairs)
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize], sep: &str| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep);
        match self {
            GraphSpec::Cycle { n } => write!(f, "cycle:n={n}"),
            GraphSpec::Path { n } => write!(f, "path:n={n}"),
            GraphSpec::Complete { n } => write!(f, "complete:n={n}"),
            GraphSpec::Hypercube { k } => write!(f, "hypercube:k={k}"),
            GraphSpec::Circulant { n, offsets } => write!(f, "circulant:n={n},offsets={}", join(offsets, "-")),
            GraphSpec::RandomRegular { n, d } => write!(f, "random_regular:n={n},d={d}"),
            GraphSpec::GridTorus { dims } => write!(f, "torus:dims={}", join(dims, "x")),
            GraphSpec::Lollipop { m, k } => write!(f, "lollipop:m={m},k={k}"),
            GraphSpec::Petersen => write!(f, "petersen"),
            GraphSpec::RandomConnected { n, p } => write!(f, "random_connected:n={n},p={p}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::BadSpec(format!("{s}: {msg}"));
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Vec::new();
        for item in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got '{item}'")))?;
            params.push((k.trim().to_string(), v.trim().to_string()));
        }
        let get = |key: &str| -> Result<&str> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| bad(format!("missing parameter '{key}'")))
        };
        let int = |key: &str| -> Result<usize> {
            get(key)?
                .parse::<usize>()
                .map_err(|e| bad(format!("parameter '{key}': {e}")))
        };
        let list = |key: &str, sep: char| -> Result<Vec<usize>> {
            get(key)?
                .split(sep)
                .map(|t| t.trim().parse::<usize>().map_err(|e| bad(format!("parameter '{key}': {e}"))))
                .collect()
        };
        let known: &[&str] = match kind.trim() {
            "cycle" | "path" | "complete" => &["n"],
            "hypercube" => &["k"],
            "circulant" => &["n", "offsets"],
            "random_regular" => &["n", "d"],
            "torus" | "grid_torus" => &["dims"],
            "lollipop" => &["m", "k"],
            "petersen" => &[],
            "random_connected" => &["n", "p"],
            other => return Err(bad(format!("unknown generator '{other}'"))),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            return Err(bad(format!("unknown parameter '{k}'")));
        }
        let spec = match kind.trim() {
            "cycle" => GraphSpec::Cycle { n: int("n")? },
            "path" => GraphSpec::Path { n: int("n")? },
            "complete" => GraphSpec::Complete { n: int("n")? },
            "hypercube" => GraphSpec::Hypercube { k: int("k")? },
            "circulant" => GraphSpec::Circulant { n: int("n")?, offsets: list("offsets", '-')? },
            "random_regular" => GraphSpec::RandomRegular { n: int("n")?, d: int("d")? },
            "torus" | "grid_torus" => GraphSpec::GridTorus { dims: list("dims", 'x')? },
            "lollipop" => GraphSpec::Lollipop { m: int("m")?, k: int("k")? },
            "petersen" => GraphSpec::Petersen,
            "random_connected" => GraphSpec::RandomConnected {
                n: int("n")?,
                p: get("p")?.parse().map_err(|e| bad(format!("parameter 'p': {e}")))?,
            },
            _ => unreachable!(),
        };
        // Reject parameters the generator would refuse, so a bad string fails at parse time.
        match generate(&spec, 0) {
            Err(Error::InfeasibleParams(msg)) if !matches!(spec, GraphSpec::RandomRegular { .. }) => {
                Err(Error::BadSpec(msg))
            }
            _ => Ok(spec),
        }
    }
}
