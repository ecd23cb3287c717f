use serde::Serialize;

use super::growth::{certify_growth, growth_constants};
use super::{require, return_prob, Grids};
use crate::error::Result;
use crate::operators::{build_operator, OperatorKind};
use crate::spectral::decompose;
use crate::{Decomposition, Graph};

/// A trend table with no pass/fail semantics.
#[derive(Clone, Debug, Serialize)]
pub struct Demonstration {
    pub name: String,
    pub graph: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub note: String,
}

/// Vertices {0, ..., n−1} of ℤ with i ~ j when 0 < |i − j| ≤ 2.
fn path_square(n: usize) -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (1..=2).filter(move |&s| i + s < n).map(move |s| (i, i + s)))
        .collect();
    Graph::unweighted(n, &pairs)
}

/// γ_+ = 1 − λ_{n−1}^P against γ_− = 1 + λ_1^P on growing truncations of the
/// square of the integer path.
pub fn gap_demonstration(sizes: &[usize]) -> Result<Demonstration> {
    let mut rows = Vec::new();
    for &n in sizes {
        let g = path_square(n)?;
        let ev = decompose(&build_operator(&g, OperatorKind::TransitionP))?.eigenvalues;
        let gamma_plus = 1.0 - ev[n - 2];
        let gamma_minus = 1.0 + ev[0];
        rows.push(vec![n as f64, gamma_plus, gamma_minus, gamma_minus - gamma_plus]);
    }
    Ok(Demonstration {
        name: "gap_trend".into(),
        graph: "path_square".into(),
        columns: ["n", "gamma_plus", "gamma_minus", "gamma_minus_minus_gamma_plus"].map(String::from).to_vec(),
        rows,
        note: "finite truncations of an infinite graph; the ordering gamma_plus <= gamma_minus is a statement about the limit"
            .into(),
    })
}

/// Measure and return tables at vertex `x` against the growth-rate forms
/// C w(x) δ^{D/(D+1)} and C′ w(x) t^{−D/(D+1)} (doubled for even t), after
/// certifying vol(y, r) ≥ c(r+1)^D on the whole finite range.
#[allow(clippy::too_many_arguments)]
pub fn growth_demonstration(
    g: &Graph,
    label: &str,
    dec_q: &Decomposition,
    dec_l: &Decomposition,
    x: usize,
    c: f64,
    dim: f64,
    grids: &Grids,
) -> Result<Vec<Demonstration>> {
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")?;
    require(dec_l.kind == OperatorKind::LaplacianL, "expected a decomposition of L")?;
    g.check_vertex(x)?;
    certify_growth(g, c, dim)?;
    let (big_c, big_c_prime) = growth_constants(c, dim);
    let w = g.weight(x);
    let expo = dim / (dim + 1.0);
    let note = format!(
        "finite graph, growth certified only up to radius {}; the stated bounds assume an infinite graph",
        g.eccentricity(x)
    );

    let reduced = dec_l.reduced_measure(x)?;
    let signless = dec_q.vertex_measure(x);
    let measure_rows = grids
        .deltas(dec_q, 2.0)
        .into_iter()
        .filter(|&d| d > 0.0 && d < 2.0)
        .map(|d| vec![d, reduced.cdf(d), signless.cdf(d), big_c * w * d.powf(expo)])
        .collect();

    let diam = g.diameter() as u64;
    let return_rows = grids
        .times()
        .into_iter()
        .filter(|&t| t <= diam * diam)
        .map(|t| {
            let factor = if t % 2 == 0 { 2.0 } else { 1.0 };
            vec![t as f64, return_prob(dec_l, x, t), factor * big_c_prime * w * (t as f64).powf(-expo)]
        })
        .collect();

    Ok(vec![
        Demonstration {
            name: "growth_measure".into(),
            graph: label.into(),
            columns: ["delta", "mu_star", "mu_q", "growth_bound"].map(String::from).to_vec(),
            rows: measure_rows,
            note: note.clone(),
        },
        Demonstration {
            name: "growth_return".into(),
            graph: label.into(),
            columns: ["t", "p_t", "growth_bound"].map(String::from).to_vec(),
            rows: return_rows,
            note,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};

    #[test]
    fn gap_trend_shape() {
        let d = gap_demonstration(&[10, 20, 40]).unwrap();
        assert_eq!(d.rows.len(), 3);
        // γ_+ shrinks as the truncation grows.
        assert!(d.rows[2][1] < d.rows[0][1]);
        assert!(d.rows.iter().all(|r| r[1] > 0.0 && r[2] > 0.0));
    }

    #[test]
    fn torus_growth_tables() {
        let g = generate(&GraphSpec::GridTorus { dims: vec![15, 15] }, 0).unwrap();
        let q = decompose(&build_operator(&g, OperatorKind::SignlessQ)).unwrap();
        let l = decompose(&build_operator(&g, OperatorKind::LaplacianL)).unwrap();
        let grids = Grids { delta: Some(vec![0.01, 0.1]), t: Some(vec![2, 3, 1000]) };
        let ds = growth_demonstration(&g, "torus", &q, &l, 0, 1.0, 2.0, &grids).unwrap();
        assert_eq!(ds[0].rows.len(), 2);
        // diam = 14, so t ≤ 196.
        assert_eq!(ds[1].rows.len(), 2);
        assert!(growth_demonstration(&g, "torus", &q, &l, 0, 10.0, 2.0, &grids).is_err());
    }
}
