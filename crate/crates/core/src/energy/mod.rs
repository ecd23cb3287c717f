//! Energy efficiency 𝒦(G) = min Σ w(v,u)|f(v)+f(u)|² / max|f|² over
//! sign-changing f, and the set-selection procedure built on spectral embeddings.

mod selection;

pub use selection::{set_selection, tree_energy, EmbeddingTable, SelectionResult, Tree};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{BoundCheck, Context, Relation};
use crate::error::{Error, Result};
use crate::graph_core::Bipartition;
use crate::operators::{build_operator, q_form, OperatorKind};
use crate::spectral::decompose;
use crate::Graph;

/// Lower limit of f(u) for the forced negative coordinate.
pub const NEGATIVITY_EPS: f64 = 1e-6;

/// 1/(Δ(G) + 1), a certified lower bound on 𝒦(G) for non-bipartite graphs.
pub fn kudos_lower(g: &Graph) -> Result<f64> {
    if g.is_bipartite() {
        return Err(Error::BipartiteGraph);
    }
    Ok(1.0 / (g.diameter() as f64 + 1.0))
}

/// Objective of the energy-efficiency program, or `None` when f does not change sign.
pub fn kudos_objective(g: &Graph, f: &[f64]) -> Option<f64> {
    let lo = f.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo < 0.0 && hi > 0.0) {
        return None;
    }
    let sup = lo.abs().max(hi.abs());
    Some(q_form(g, f) / (sup * sup))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KudosMethod {
    PairwiseQp,
    MultistartDescent,
}

#[derive(Clone, Debug)]
pub struct KudosBudget {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Run the exhaustive pairwise scheme when n is at most this.
    pub pairwise_max_n: usize,
}

impl Default for KudosBudget {
    fn default() -> Self {
        KudosBudget {
            restarts: 32,
            seed: 0,
            max_iterations: 20_000,
            pairwise_max_n: 12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KudosEstimate {
    /// 1/(Δ+1) for non-bipartite graphs, 0 for bipartite ones.
    pub lower_bound: f64,
    /// Best objective found; an upper bound on 𝒦(G).
    pub upper_bound: f64,
    pub witness: Vec<f64>,
    pub method: KudosMethod,
    pub multistart_value: f64,
    pub pairwise_value: Option<f64>,
}

/// Coordinate descent for min Σ w|f(a)+f(b)|² on [−1,1]^V with f(v) = 1 and
/// f(u) ≤ −ε. The program is convex, and exact coordinate minimization with
/// clipping converges to its minimum.
fn pairwise_qp(g: &Graph, v: usize, u: usize, max_sweeps: usize) -> Vec<f64> {
    let n = g.n();
    let mut f = vec![-0.5; n];
    f[v] = 1.0;
    for _ in 0..max_sweeps {
        let mut change = 0.0f64;
        for a in 0..n {
            if a == v {
                continue;
            }
            let s: f64 = g.neighbors(a).iter().map(|&(b, w)| w * f[b]).sum();
            let hi = if a == u { -NEGATIVITY_EPS } else { 1.0 };
            let target = (-s / g.weight(a)).clamp(-1.0, hi);
            change = change.max((target - f[a]).abs());
            f[a] = target;
        }
        if change < 1e-15 {
            break;
        }
    }
    f
}

fn energy_gradient(g: &Graph, f: &[f64]) -> Vec<f64> {
    let mut grad = vec![0.0; f.len()];
    for &(a, b, w) in g.edges() {
        let s = 2.0 * w * (f[a] + f[b]);
        grad[a] += s;
        grad[b] += s;
    }
    grad
}

/// Projected gradient with Armijo backtracking on the box, keeping f(v) = 1
/// and, when `forced` is set, f(u) ≤ −ε.
fn projected_descent(g: &Graph, mut f: Vec<f64>, v: usize, forced: Option<usize>, max_iterations: usize) -> Vec<f64> {
    let project = |h: &mut [f64]| {
        for (a, val) in h.iter_mut().enumerate() {
            let hi = if Some(a) == forced { -NEGATIVITY_EPS } else { 1.0 };
            *val = val.clamp(-1.0, hi);
        }
        h[v] = 1.0;
    };
    project(&mut f);
    let mut energy = q_form(g, &f);
    let mut step = 1.0 / (4.0 * g.max_vertex_weight());
    for _ in 0..max_iterations {
        let grad = energy_gradient(g, &f);
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial: Vec<f64> = f.iter().zip(&grad).map(|(x, d)| x - step * d).collect();
            project(&mut trial);
            let moved: f64 = trial.iter().zip(&f).map(|(a, b)| (a - b) * (a - b)).sum();
            let e = q_form(g, &trial);
            if e <= energy - 1e-4 * moved / step {
                accepted = Some((trial, e, moved));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((trial, e, moved)) => {
                f = trial;
                energy = e;
                step *= 2.0;
                if moved < 1e-30 {
                    break;
                }
            }
            None => break,
        }
    }
    f
}

/// Scale so the largest |f| is a coordinate equal to +1; returns that coordinate.
fn normalize_max(f: &mut [f64]) -> usize {
    let v = (0..f.len())
        .max_by(|&a, &b| f[a].abs().partial_cmp(&f[b].abs()).unwrap().then(b.cmp(&a)))
        .unwrap();
    let s = f[v];
    if s != 0.0 {
        f.iter_mut().for_each(|x| *x /= s);
    }
    v
}

fn multistart_run(g: &Graph, start: &[f64], max_iterations: usize) -> Option<(f64, Vec<f64>)> {
    let mut f = start.to_vec();
    let v = normalize_max(&mut f);
    let mut sol = projected_descent(g, f.clone(), v, None, max_iterations);
    if kudos_objective(g, &sol).is_none() {
        let u = (0..f.len())
            .filter(|&a| a != v)
            .min_by(|&a, &b| f[a].partial_cmp(&f[b]).unwrap().then(a.cmp(&b)))?;
        sol = projected_descent(g, f, v, Some(u), max_iterations);
    }
    kudos_objective(g, &sol).map(|val| (val, sol))
}

fn start_vectors(g: &Graph, budget: &KudosBudget) -> Result<Vec<Vec<f64>>> {
    let n = g.n();
    let dec = decompose(&build_operator(g, OperatorKind::SignlessQ))?;
    let low = budget.restarts.min(n).min(4);
    let mut starts: Vec<Vec<f64>> = (0..low).map(|j| (0..n).map(|x| dec.h(x, j)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    while starts.len() < budget.restarts {
        starts.push((0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect());
    }
    Ok(starts)
}

/// Upper estimate of 𝒦(G): multistart projected descent and, for small n, the
/// exhaustive pairwise box programs. The reported value is achieved by `witness`.
pub fn kudos_upper(g: &Graph, budget: &KudosBudget) -> Result<KudosEstimate> {
    let starts = start_vectors(g, budget)?;
    let runs: Vec<Option<(f64, Vec<f64>)>> = starts
        .par_iter()
        .map(|s| multistart_run(g, s, budget.max_iterations))
        .collect();
    let best_multi = runs
        .into_iter()
        .flatten()
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .ok_or_else(|| Error::InvalidArgument("no feasible start found".into()))?;

    let pairwise = if g.n() <= budget.pairwise_max_n {
        let n = g.n();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..n).filter(move |&u| u != v).map(move |u| (v, u))).collect();
        pairs
            .par_iter()
            .filter_map(|&(v, u)| {
                let f = pairwise_qp(g, v, u, 200_000);
                kudos_objective(g, &f).map(|val| (val, f))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
    } else {
        None
    };

    let lower_bound = if g.is_bipartite() { 0.0 } else { 1.0 / (g.diameter() as f64 + 1.0) };
    let multistart_value = best_multi.0;
    let pairwise_value = pairwise.as_ref().map(|p| p.0);
    let (upper_bound, witness, method) = match pairwise {
        Some((val, f)) if val < best_multi.0 => (val, f, KudosMethod::PairwiseQp),
        _ => (best_multi.0, best_multi.1, KudosMethod::MultistartDescent),
    };
    Ok(KudosEstimate {
        lower_bound,
        upper_bound,
        witness,
        method,
        multistart_value,
        pairwise_value,
    })
}

/// ±1 on the two sides of a bipartite graph: a sign-changing function of zero energy.
pub fn alternating_witness(g: &Graph) -> Result<Vec<f64>> {
    match g.bipartiteness() {
        Bipartition::Bipartite { side } => Ok(side.iter().map(|&s| if s == 0 { 1.0 } else { -1.0 }).collect()),
        Bipartition::OddCycle { .. } => Err(Error::PreconditionViolated("graph is not bipartite".into())),
    }
}

/// Σ_E w|f(v)+f(u)|² ≥ (f(z_0) − (−1)^{|P|} f(z_|P|))² / |P| along an edge-simple path.
pub fn path_energy_bound(g: &Graph, f: &[f64], path: &[usize]) -> Result<BoundCheck> {
    if !g.weights_at_least_one() {
        return Err(Error::PreconditionViolated("edge weights must be at least 1".into()));
    }
    if f.len() != g.n() {
        return Err(Error::InvalidArgument("function length must equal vertex count".into()));
    }
    if path.len() < 2 {
        return Err(Error::NotAPath("a path needs at least one edge".into()));
    }
    let mut used = std::collections::HashSet::new();
    for pair in path.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        if g.edge_weight(a, b).is_none() {
            return Err(Error::NotAPath(format!("{a}-{b} is not an edge")));
        }
        if !used.insert((a.min(b), a.max(b))) {
            return Err(Error::NotAPath(format!("edge {a}-{b} repeated")));
        }
    }
    let len = path.len() - 1;
    let sign = if len % 2 == 0 { 1.0 } else { -1.0 };
    let d = f[path[0]] - sign * f[path[len]];
    Ok(BoundCheck::new(
        "path_energy",
        "sum_E w|f(v)+f(u)|^2 >= (f(z0) - (-1)^|P| f(z_|P|))^2 / |P|",
        q_form(g, f),
        d * d / len as f64,
        Relation::Ge,
        Context::default().k(len),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};

    fn g(spec: GraphSpec) -> Graph {
        generate(&spec, 0).unwrap()
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(kudos_lower(&g(GraphSpec::Complete { n: 3 })).unwrap(), 0.5);
        assert!((kudos_lower(&g(GraphSpec::Cycle { n: 5 })).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((kudos_lower(&g(GraphSpec::Petersen)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(kudos_lower(&g(GraphSpec::Cycle { n: 6 })), Err(Error::BipartiteGraph)));
    }

    #[test]
    fn triangle_value() {
        let k3 = g(GraphSpec::Complete { n: 3 });
        let est = kudos_upper(&k3, &KudosBudget::default()).unwrap();
        assert!((est.upper_bound - 4.0 / 3.0).abs() < 1e-8, "{est:?}");
        assert!((est.pairwise_value.unwrap() - est.multistart_value).abs() < 1e-6);
        assert!((kudos_objective(&k3, &est.witness).unwrap() - est.upper_bound).abs() < 1e-8);
    }

    #[test]
    fn objective_requires_sign_change() {
        let k3 = g(GraphSpec::Complete { n: 3 });
        assert_eq!(kudos_objective(&k3, &[1.0, 0.0, 0.0]), None);
        assert_eq!(kudos_objective(&k3, &[1.0, -1.0, 0.0]), Some(2.0));
    }

    #[test]
    fn bipartite_alternating_energy_vanishes() {
        let c6 = g(GraphSpec::Cycle { n: 6 });
        let f = alternating_witness(&c6).unwrap();
        assert_eq!(kudos_objective(&c6, &f), Some(0.0));
    }

    #[test]
    fn path_energy_cases() {
        let e = Graph::unweighted(2, &[(0, 1)]).unwrap();
        let c = path_energy_bound(&e, &[1.0, 1.0], &[0, 1]).unwrap();
        assert!(c.holds && c.lhs == 4.0 && c.rhs == 4.0);
        let c5 = g(GraphSpec::Cycle { n: 5 });
        let c = path_energy_bound(&c5, &[0.0; 5], &[0, 1, 2]).unwrap();
        assert!(c.holds && c.lhs == 0.0);
        assert!(matches!(path_energy_bound(&c5, &[0.0; 5], &[0, 2]), Err(Error::NotAPath(_))));
        assert!(matches!(path_energy_bound(&c5, &[0.0; 5], &[0, 1, 0]), Err(Error::NotAPath(_))));
    }
}
