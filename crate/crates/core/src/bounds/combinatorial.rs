use super::{require, BoundCheck, Context, Grids, Relation};
use crate::error::Result;
use crate::graph_core::line_graph;
use crate::operators::{build_operator, OperatorKind};
use crate::spectral::decompose;
use crate::{Decomposition, Graph};

/// Θ-measure bound μ_x^Θ(δ) ≤ (Δ+1)δ below λ_max^Θ, the eigenvalue chains
/// λ_k^Θ ≥ k/((Δ+1)n) and w_max + λ_k^A ≥ k/((Δ+1)n), and for unweighted
/// graphs the line-graph spectrum {ρ_i − 2} ∪ {−2, ..., −2}.
pub fn check_combinatorial(g: &Graph, dec_theta: &Decomposition, dec_a: &Decomposition, grids: &Grids) -> Result<Vec<BoundCheck>> {
    require(dec_theta.kind == OperatorKind::CombinatorialTheta, "expected a decomposition of Theta")?;
    require(dec_a.kind == OperatorKind::Adjacency, "expected a decomposition of A")?;
    require(g.weights_at_least_one(), "edge weights must be at least 1")?;
    require(!g.is_bipartite(), "graph must be non-bipartite")?;
    let n = g.n();
    let nf = n as f64;
    let diam = g.diameter() as f64;
    let top = dec_theta.lambda_max();
    let mut out = Vec::new();

    let deltas: Vec<f64> = grids
        .deltas(dec_theta, top)
        .into_iter()
        .filter(|&d| d < top - dec_theta.merge_tol())
        .collect();
    for x in 0..n {
        let mu = dec_theta.vertex_measure(x);
        for &d in &deltas {
            out.push(BoundCheck::new(
                "combinatorial_measure",
                "mu_x^Theta(delta) <= (diam+1) delta, delta < lambda_max^Theta",
                mu.cdf(d),
                (diam + 1.0) * d,
                Relation::Le,
                Context::default().x(x).delta(d),
            ));
        }
    }

    let w_max = g.max_vertex_weight();
    for k in 1..=n {
        let rhs = k as f64 / ((diam + 1.0) * nf);
        out.push(BoundCheck::new(
            "combinatorial_eigenvalue",
            "lambda_k^Theta >= k/((diam+1) n)",
            dec_theta.eigenvalues[k - 1],
            rhs,
            Relation::Ge,
            Context::default().k(k),
        ));
        out.push(BoundCheck::new(
            "adjacency_eigenvalue",
            "w_max + lambda_k^A >= k/((diam+1) n)",
            w_max + dec_a.eigenvalues[k - 1],
            rhs,
            Relation::Ge,
            Context::default().k(k),
        ));
    }

    if g.is_unweighted() {
        out.push(line_graph_check(g, dec_theta)?);
    }
    Ok(out)
}

/// Largest deviation between the sorted line-graph adjacency spectrum and
/// {ρ_i − 2 : ρ_i > 0} padded with −2 up to |E| values.
fn line_graph_check(g: &Graph, dec_theta: &Decomposition) -> Result<BoundCheck> {
    let lg = line_graph(g)?;
    let actual = decompose(&build_operator(&lg, OperatorKind::Adjacency))?.eigenvalues;
    let tol = dec_theta.merge_tol();
    let mut predicted: Vec<f64> = dec_theta.eigenvalues.iter().filter(|&&r| r > tol).map(|r| r - 2.0).collect();
    predicted.resize(g.edge_count(), -2.0);
    predicted.sort_by(f64::total_cmp);
    let dev = actual.iter().zip(&predicted).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(BoundCheck::new(
        "line_graph_spectrum",
        "spec(A_line) = {rho_i - 2} u {-2 x (|E| - r)}",
        dev,
        1e-8,
        Relation::Le,
        Context::default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};

    fn decs(g: &Graph) -> (Decomposition, Decomposition) {
        let d = |k| decompose(&build_operator(g, k)).unwrap();
        (d(OperatorKind::CombinatorialTheta), d(OperatorKind::Adjacency))
    }

    #[test]
    fn triangle_values() {
        let g = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let (th, a) = decs(&g);
        for (v, e) in th.eigenvalues.iter().zip([1.0, 1.0, 4.0]) {
            assert!((v - e).abs() < 1e-12);
        }
        let cs = check_combinatorial(&g, &th, &a, &Grids::default()).unwrap();
        let c = cs.iter().find(|c| c.name == "adjacency_eigenvalue" && c.context.k == Some(1)).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-12 && (c.rhs - 1.0 / 6.0).abs() < 1e-15);
        let c = cs.iter().find(|c| c.name == "line_graph_spectrum").unwrap();
        assert!(c.lhs < 1e-10);
        assert!(cs.iter().all(|c| c.holds));
    }

    #[test]
    fn line_graph_pads_with_minus_two() {
        // K4 has 6 edges and 4 positive Θ eigenvalues, so two entries are −2.
        let g = generate(&GraphSpec::Complete { n: 4 }, 0).unwrap();
        let (th, a) = decs(&g);
        let cs = check_combinatorial(&g, &th, &a, &Grids::default()).unwrap();
        assert!(cs.iter().all(|c| c.holds), "{:?}", cs.iter().find(|c| !c.holds));
    }

    #[test]
    fn measure_vanishes_below_the_spectrum() {
        let g = generate(&GraphSpec::Petersen, 0).unwrap();
        let (th, a) = decs(&g);
        let low = th.lambda_min() / 2.0;
        let grids = Grids { delta: Some(vec![low]), t: None };
        let cs = check_combinatorial(&g, &th, &a, &grids).unwrap();
        assert!(cs.iter().filter(|c| c.name == "combinatorial_measure").all(|c| c.lhs == 0.0));
    }
}
