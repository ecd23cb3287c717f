//! Simple connected weighted graphs and their combinatorial utilities.

mod generators;
mod io;
mod resistance;

pub use generators::{generate, line_graph, GraphSpec};
pub use resistance::{effective_resistance, resistance_diameter, resistance_matrix};

use std::collections::{HashSet, VecDeque};

use nalgebra::DMatrix;

use crate::bounds::{BoundCheck, Context, Relation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite, simple, connected graph with positive edge weights.
///
/// Vertices are `0..n`. Edges are stored once with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph<T: Scalar> {
    n: usize,
    edges: Vec<(usize, usize, T)>,
    adjacency: Vec<Vec<(usize, T)>>,
    vertex_weight: Vec<T>,
    total_volume: T,
    weights_at_least_one: bool,
}

impl<T: Scalar> WeightedGraph<T> {
    /// Validate an edge list on `n` vertices. Endpoints may come in either order.
    pub fn new(n: usize, edge_list: &[(usize, usize, T)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashSet::with_capacity(edge_list.len());
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, w) in edge_list {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !w.f64().is_finite() || w <= T::zero() {
                return Err(Error::NonpositiveWeight(u, v));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            edges.push((u, v, w));
        }
        edges.sort_by_key(|e| (e.0, e.1));

        let mut adjacency = vec![Vec::new(); n];
        let mut vertex_weight = vec![T::zero(); n];
        for &(u, v, w) in &edges {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
            vertex_weight[u] += w;
            vertex_weight[v] += w;
        }
        for nb in &mut adjacency {
            nb.sort_by_key(|e| e.0);
        }
        let total_volume = vertex_weight.iter().fold(T::zero(), |acc, &w| acc + w);
        let weights_at_least_one = edges.iter().all(|e| e.2 >= T::one());

        let g = WeightedGraph {
            n,
            edges,
            adjacency,
            vertex_weight,
            total_volume,
            weights_at_least_one,
        };
        let components = g.component_count();
        if components != 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        Ok(g)
    }

    /// Build from an edge list, taking `n` as one more than the largest endpoint.
    pub fn from_edges(edge_list: &[(usize, usize, T)]) -> Result<Self> {
        let n = edge_list.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0);
        Self::new(n, edge_list)
    }

    /// Unit weights on every edge.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges: Vec<_> = pairs.iter().map(|&(u, v)| (u, v, T::one())).collect();
        Self::new(n, &edges)
    }

    fn component_count(&self) -> usize {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        count
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, T)] {
        &self.edges
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, T)] {
        &self.adjacency[x]
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<T> {
        self.adjacency[u]
            .binary_search_by_key(&v, |e| e.0)
            .ok()
            .map(|i| self.adjacency[u][i].1)
    }

    /// w(x), the sum of weights of edges at x.
    pub fn weight(&self, x: usize) -> T {
        self.vertex_weight[x]
    }

    pub fn weights(&self) -> &[T] {
        &self.vertex_weight
    }

    /// vol(V) = Σ_x w(x).
    pub fn volume(&self) -> T {
        self.total_volume
    }

    /// Stationary probability π(x) = w(x)/vol(V).
    pub fn pi(&self, x: usize) -> T {
        self.vertex_weight[x] / self.total_volume
    }

    pub fn stationary(&self) -> Vec<T> {
        (0..self.n).map(|x| self.pi(x)).collect()
    }

    /// Number of neighbors of x.
    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|x| self.degree(x)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|x| self.degree(x)).max().unwrap_or(0)
    }

    pub fn avg_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.n as f64
    }

    pub fn max_vertex_weight(&self) -> T {
        self.vertex_weight
            .iter()
            .copied()
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn min_vertex_weight(&self) -> T {
        self.vertex_weight
            .iter()
            .copied()
            .fold(self.vertex_weight[0], |a, b| if b < a { b } else { a })
    }

    /// All edges carry weight exactly one.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.2 == T::one())
    }

    /// Every edge weight is at least one, as several bounds require.
    pub fn weights_at_least_one(&self) -> bool {
        self.weights_at_least_one
    }

    /// Every vertex has the same weight w(x).
    pub fn is_regular(&self) -> bool {
        let w0 = self.vertex_weight[0];
        self.vertex_weight.iter().all(|&w| w == w0)
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: x, n: self.n })
        }
    }

    /// Dense weighted adjacency matrix.
    pub fn adjacency_matrix(&self) -> DMatrix<T> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v, w) in &self.edges {
            a[(u, v)] = w;
            a[(v, u)] = w;
        }
        a
    }

    /// Convert weights to another scalar type.
    pub fn cast<U: Scalar>(&self) -> WeightedGraph<U> {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v, w)| (u, v, U::of(w.f64()))).collect();
        WeightedGraph::new(self.n, &edges).expect("casting preserves validity")
    }

    /// Two-coloring, or an odd closed walk when none exists.
    pub fn bipartiteness(&self) -> Bipartition {
        let n = self.n;
        let mut depth = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if depth[y] % 2 == depth[x] % 2 {
                    return Bipartition::OddCycle {
                        witness: close_through_tree(x, y, &depth, &parent),
                    };
                }
            }
        }
        Bipartition::Bipartite {
            side: depth.iter().map(|d| (d % 2) as u8).collect(),
        }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartiteness().is_bipartite()
    }

    /// Hop distances from x on the unweighted skeleton.
    pub fn distances(&self, x: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, x: usize) -> usize {
        self.distances(x).into_iter().max().unwrap_or(0)
    }

    /// Unweighted diameter Δ(G).
    pub fn diameter(&self) -> usize {
        (0..self.n).map(|x| self.eccentricity(x)).max().unwrap_or(0)
    }

    /// N^#(x, r): number of vertices within distance r.
    pub fn ball_count(&self, x: usize, r: usize) -> usize {
        self.distances(x).into_iter().filter(|&d| d <= r).count()
    }

    /// vol(x, r): total weight of the ball of radius r.
    pub fn ball_volume(&self, x: usize, r: usize) -> T {
        self.distances(x)
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d <= r)
            .fold(T::zero(), |acc, (y, _)| acc + self.vertex_weight[y])
    }

    /// Ball sizes N^#(x, r) for r = 0..=eccentricity(x).
    pub fn ball_profile(&self, x: usize) -> Vec<usize> {
        let dist = self.distances(x);
        let ecc = dist.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0usize; ecc + 1];
        for d in dist {
            counts[d] += 1;
        }
        for r in 1..counts.len() {
            counts[r] += counts[r - 1];
        }
        counts
    }
}

/// Outcome of a two-coloring attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite { side: Vec<u8> },
    /// Closed walk `w[0] w[1] ... w[k-1] w[0]` of odd length k.
    OddCycle { witness: Vec<usize> },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

fn close_through_tree(x: usize, y: usize, depth: &[usize], parent: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Δ(G) ≤ 3n/(d_min + 1) − 1.
pub fn diameter_regular_bound<T: Scalar>(g: &WeightedGraph<T>) -> BoundCheck {
    let lhs = g.diameter() as f64;
    let rhs = 3.0 * g.n() as f64 / (g.min_degree() as f64 + 1.0) - 1.0;
    BoundCheck::new(
        "diameter_min_degree",
        "diam(G) <= 3n/(d_min+1) - 1",
        lhs,
        rhs,
        Relation::Le,
        Context::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Graph;

    fn triangle() -> Graph {
        Graph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_weights() {
        let g = triangle();
        assert_eq!(g.weights(), &[2.0, 2.0, 2.0]);
        assert_eq!(g.volume(), 6.0);
    }

    #[test]
    fn path_weights() {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.weights(), &[1.0, 2.0, 1.0]);
        assert_eq!(g.volume(), 4.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Graph::new(3, &[(0, 1, 1.0)]),
            Err(Error::DisconnectedGraph { components: 2 })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 1, 1.0), (1, 0, 2.0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(Graph::new(2, &[(1, 1, 1.0), (0, 1, 1.0)]), Err(Error::SelfLoop(1))));
        assert!(matches!(Graph::new(2, &[(0, 1, 0.0)]), Err(Error::NonpositiveWeight(0, 1))));
        assert!(matches!(Graph::new(2, &[(0, 1, f64::NAN)]), Err(Error::NonpositiveWeight(0, 1))));
        assert!(matches!(
            Graph::new(2, &[(0, 5, 1.0)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn c4_alternates() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        match g.bipartiteness() {
            Bipartition::Bipartite { side } => assert_eq!(side, vec![0, 1, 0, 1]),
            other => panic!("{other:?}"),
        }
    }

    fn assert_odd_closed_walk(g: &Graph, w: &[usize]) {
        assert_eq!(w.len() % 2, 1);
        for i in 0..w.len() {
            let (a, b) = (w[i], w[(i + 1) % w.len()]);
            assert!(g.edge_weight(a, b).is_some(), "{a}-{b} not an edge");
        }
    }

    #[test]
    fn odd_cycle_witnesses() {
        let c5 = Graph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        match c5.bipartiteness() {
            Bipartition::OddCycle { witness } => {
                assert_eq!(witness.len(), 5);
                assert_odd_closed_walk(&c5, &witness);
            }
            other => panic!("{other:?}"),
        }
        let p = generate(&GraphSpec::Petersen, 0).unwrap();
        match p.bipartiteness() {
            Bipartition::OddCycle { witness } => {
                assert_eq!(witness.len(), 5);
                assert_odd_closed_walk(&p, &witness);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diameters_and_balls() {
        let c5 = generate(&GraphSpec::Cycle { n: 5 }, 0).unwrap();
        assert_eq!(c5.diameter(), 2);
        assert_eq!(c5.ball_count(0, 1), 3);
        assert_eq!(c5.ball_volume(0, 1), 6.0);
        assert_eq!(c5.ball_volume(3, 2), c5.volume());
        let k4 = generate(&GraphSpec::Complete { n: 4 }, 0).unwrap();
        assert_eq!(k4.diameter(), 1);
        let q3 = generate(&GraphSpec::Hypercube { k: 3 }, 0).unwrap();
        assert_eq!(q3.diameter(), 3);
        let circ = generate(&GraphSpec::Circulant { n: 9, offsets: vec![1, 2] }, 0).unwrap();
        assert_eq!(circ.ball_count(4, 1), 5);
        assert_eq!(circ.ball_profile(0), vec![1, 5, 9]);
    }

    #[test]
    fn diameter_lemma_examples() {
        let c5 = generate(&GraphSpec::Cycle { n: 5 }, 0).unwrap();
        let k4 = generate(&GraphSpec::Complete { n: 4 }, 0).unwrap();
        let p3 = generate(&GraphSpec::Path { n: 3 }, 0).unwrap();
        for (g, lhs, rhs) in [(c5, 2.0, 4.0), (k4, 1.0, 2.0), (p3, 2.0, 3.5)] {
            let c = diameter_regular_bound(&g);
            assert!(c.holds);
            assert_eq!(c.lhs, lhs);
            assert!((c.rhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn f32_graph() {
        let g: WeightedGraph<f32> = triangle().cast();
        assert_eq!(g.volume(), 6.0f32);
        assert!(!g.is_bipartite());
    }
}
