use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::OperatorKind;
use crate::{Decomposition, Graph};

/// Coefficients of every F_x along the eigenvectors h_j with λ_j ≤ δ.
///
/// The h_j are orthonormal in ⟨·,·⟩_w, so ‖F_x ± F_y‖_w is the Euclidean norm
/// of the coefficient rows c_x ± c_y.
pub struct EmbeddingTable {
    rows: Vec<Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dec: &Decomposition, delta: f64) -> Self {
        let idx = dec.indices_at_most(delta);
        let rows = (0..dec.n()).map(|x| idx.iter().map(|&j| dec.coefficient(x, j)).collect()).collect();
        EmbeddingTable { rows }
    }

    pub fn norm(&self, x: usize) -> f64 {
        self.rows[x].iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// ‖F_x + sign·F_y‖_w.
    pub fn combo_norm(&self, x: usize, y: usize, sign: f64) -> f64 {
        self.rows[x]
            .iter()
            .zip(&self.rows[y])
            .map(|(a, b)| (a + sign * b) * (a + sign * b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Connected bipartite subgraph grown around a center; `parity[i]` is the
/// side of `vertices[i]`, which fixes the distance parity from the center.
#[derive(Clone, Debug, Serialize)]
pub struct Tree {
    pub vertices: Vec<usize>,
    pub parity: Vec<u8>,
    /// All edges of G joining opposite sides.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectionResult {
    pub delta: f64,
    /// μ^Q(δ), the average measure.
    pub average_measure: f64,
    /// ⌊(n/2) μ^Q(δ)⌋ + 1.
    pub m: usize,
    pub centers: Vec<usize>,
    pub regions: Vec<Vec<usize>>,
    /// μ^Q_{R(x_i)}(δ) = Σ_{y ∈ R(x_i)} μ^Q_y(δ).
    pub region_masses: Vec<f64>,
    pub center_masses: Vec<f64>,
    pub stars: Vec<Vec<usize>>,
    pub trees: Vec<Tree>,
    pub tree_energies: Vec<f64>,
}

/// R(x) = {y : ‖F_x − F_y‖ ≤ ‖F_x‖/4 or ‖F_x + F_y‖ ≤ ‖F_x‖/4}.
fn region(table: &EmbeddingTable, x: usize) -> Vec<usize> {
    let r = table.norm(x) / 4.0;
    (0..table.rows.len())
        .filter(|&y| table.combo_norm(x, y, -1.0) <= r || table.combo_norm(x, y, 1.0) <= r)
        .collect()
}

/// Ñ(x) = {y ∈ N(x) : ‖F_y + F_x‖ ≤ ‖F_x‖/9}.
fn star(g: &Graph, table: &EmbeddingTable, x: usize) -> Vec<usize> {
    let r = table.norm(x) / 9.0;
    g.neighbors(x)
        .iter()
        .map(|&(y, _)| y)
        .filter(|&y| table.combo_norm(x, y, 1.0) <= r)
        .collect()
}

/// Breadth-first growth from x in vertex-id order: a neighbor y of a tree
/// vertex u joins on the opposite side when ‖F_x − (−1)^side F_y‖ ≤ ‖F_x‖/9.
/// At most one side can satisfy the condition, so the grown vertex set is the
/// same whatever order is used.
fn grow_tree(g: &Graph, table: &EmbeddingTable, x: usize) -> Tree {
    let n = g.n();
    let r = table.norm(x) / 9.0;
    let mut side = vec![u8::MAX; n];
    side[x] = 0;
    let mut order = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &(y, _) in g.neighbors(u) {
            if side[y] != u8::MAX {
                continue;
            }
            let p = 1 - side[u];
            let sign = if p == 0 { -1.0 } else { 1.0 };
            if table.combo_norm(x, y, sign) <= r {
                side[y] = p;
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    let mut vertices = order;
    vertices.sort_unstable();
    let parity = vertices.iter().map(|&v| side[v]).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, b, _)| side[a] != u8::MAX && side[b] != u8::MAX && side[a] != side[b])
        .map(|&(a, b, _)| (a, b))
        .collect();
    Tree { vertices, parity, edges }
}

fn energy_of(g: &Graph, table: &EmbeddingTable, set: &[usize]) -> f64 {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges()
        .iter()
        .filter(|&&(a, b, _)| inside[a] || inside[b])
        .map(|&(a, b, _)| table.combo_norm(a, b, 1.0).powi(2))
        .sum()
}

/// Ẽ(S) = Σ over edges with an endpoint in S of ‖F_x + F_y‖_w².
pub fn tree_energy(g: &Graph, dec_q: &Decomposition, delta: f64, set: &[usize]) -> f64 {
    energy_of(g, &EmbeddingTable::new(dec_q, delta), set)
}

/// Greedy extraction of m high-measure centers with their regions, stars and trees.
pub fn set_selection(g: &Graph, dec_q: &Decomposition, delta: f64) -> Result<SelectionResult> {
    if dec_q.kind != OperatorKind::SignlessQ {
        return Err(Error::WrongOperatorKind(format!("set selection needs Q, got {}", dec_q.kind)));
    }
    if dec_q.count_at_most(delta) == 0 {
        return Err(Error::EmptySelection);
    }
    let n = g.n();
    let table = EmbeddingTable::new(dec_q, delta);
    let measures: Vec<f64> = (0..n).map(|x| dec_q.vertex_measure(x).cdf(delta)).collect();
    let average_measure = measures.iter().sum::<f64>() / n as f64;
    let m = (n as f64 / 2.0 * average_measure + 1e-9).floor() as usize + 1;

    let mut remaining = vec![true; n];
    let mut result = SelectionResult {
        delta,
        average_measure,
        m,
        centers: Vec::new(),
        regions: Vec::new(),
        region_masses: Vec::new(),
        center_masses: Vec::new(),
        stars: Vec::new(),
        trees: Vec::new(),
        tree_energies: Vec::new(),
    };
    for _ in 0..m {
        // Highest measure, smallest id on ties.
        let Some(x) = (0..n)
            .filter(|&v| remaining[v])
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if measures[b] >= measures[v] => Some(b),
                _ => Some(v),
            })
        else {
            break;
        };
        let reg = region(&table, x);
        for &y in &reg {
            remaining[y] = false;
        }
        let tree = grow_tree(g, &table, x);
        result.tree_energies.push(energy_of(g, &table, &tree.vertices));
        result.region_masses.push(reg.iter().map(|&y| measures[y]).sum());
        result.center_masses.push(measures[x]);
        result.stars.push(star(g, &table, x));
        result.centers.push(x);
        result.regions.push(reg);
        result.trees.push(tree);
    }
    Ok(result)
}

impl SelectionResult {
    /// Every one of the m iterations found a center.
    pub fn completed(&self) -> bool {
        self.centers.len() == self.m
    }

    pub fn trees_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.trees.iter().flat_map(|t| &t.vertices).all(|&v| seen.insert(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};
    use crate::operators::build_operator;
    use crate::spectral::decompose;

    #[test]
    fn triangle_selection() {
        let k3 = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let q = decompose(&build_operator(&k3, OperatorKind::SignlessQ)).unwrap();
        let sel = set_selection(&k3, &q, 0.5).unwrap();
        assert!((sel.average_measure - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(sel.m, 2);
        assert!(sel.completed());
        assert!(sel.trees_disjoint());
        assert!(sel.region_masses.iter().all(|&m| m <= 4.0 / 3.0 + 1e-9));
        assert!(matches!(set_selection(&k3, &q, 0.1), Err(Error::EmptySelection)));
    }

    #[test]
    fn tree_energy_edge_cases() {
        let g = generate(&GraphSpec::Petersen, 0).unwrap();
        let q = decompose(&build_operator(&g, OperatorKind::SignlessQ)).unwrap();
        let delta = 1.4;
        assert_eq!(tree_energy(&g, &q, delta, &[]), 0.0);
        let all: Vec<usize> = (0..10).collect();
        let table = EmbeddingTable::new(&q, delta);
        let total: f64 = g.edges().iter().map(|&(a, b, _)| table.combo_norm(a, b, 1.0).powi(2)).sum();
        assert!((tree_energy(&g, &q, delta, &all) - total).abs() < 1e-12);
        let e1 = tree_energy(&g, &q, delta, &[0, 1, 2]);
        let e2 = tree_energy(&g, &q, delta, &[5, 7]);
        assert!(e1 + e2 <= 2.0 * total + 1e-12);
    }
}
