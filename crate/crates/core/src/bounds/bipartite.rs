use super::transitive::{certify_transitive, transitive_growth_constant, transitive_return_constant};
use super::{require, return_prob, BoundCheck, Context, Grids, Relation};
use crate::error::Result;
use crate::operators::OperatorKind;
use crate::{Decomposition, Graph};

fn kinds(dec_p: &Decomposition, dec_l: &Decomposition, dec_q: &Decomposition) -> Result<()> {
    require(dec_p.kind == OperatorKind::TransitionP, "expected a decomposition of P")?;
    require(dec_l.kind == OperatorKind::LaplacianL, "expected a decomposition of L")?;
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")
}

/// Spectrum symmetry of P, equality of the L and Q vertex measures, the even-t
/// return bound 0 ≤ p_t(x,x) − 2π(x) ≤ 18/√t on regular graphs, and, given a
/// growth exponent D on a transitive graph, p_t(x,x) − 2π(x) ≤ 2C̃t^{−D/2}.
///
/// Odd t is not checked: p_t(x,x) = 0 there.
pub fn check_bipartite(
    g: &Graph,
    dec_p: &Decomposition,
    dec_l: &Decomposition,
    dec_q: &Decomposition,
    grids: &Grids,
    dim: Option<f64>,
) -> Result<Vec<BoundCheck>> {
    kinds(dec_p, dec_l, dec_q)?;
    require(g.is_bipartite(), "graph must be bipartite")?;
    let n = g.n();
    let ev = &dec_p.eigenvalues;
    let asym = (0..n).map(|i| (ev[i] + ev[n - 1 - i]).abs()).fold(0.0, f64::max);
    let mut out = vec![BoundCheck::new(
        "spectrum_symmetry",
        "spec(P) = -spec(P)",
        asym,
        0.0,
        Relation::Le,
        Context::default(),
    )];

    let deltas = grids.deltas(dec_l, 2.0);
    for x in 0..n {
        let ml = dec_l.vertex_measure(x);
        let mq = dec_q.vertex_measure(x);
        let worst = deltas.iter().map(|&d| (ml.cdf(d) - mq.cdf(d)).abs()).fold(0.0, f64::max);
        out.push(BoundCheck::new(
            "measure_symmetry",
            "mu_x(delta) = mu_x^Q(delta), delta in [0,2]",
            worst,
            0.0,
            Relation::Le,
            Context::default().x(x),
        ));
    }

    let even: Vec<u64> = grids.times().into_iter().filter(|t| t % 2 == 0).collect();
    if g.is_unweighted() && g.is_regular() {
        for x in 0..n {
            let two_pi = 2.0 * g.pi(x);
            for &t in &even {
                let gap = return_prob(dec_p, x, t) - two_pi;
                let ctx = Context::default().x(x).t(t);
                out.push(BoundCheck::new(
                    "bipartite_return_even_lower",
                    "p_t(x,x) - 2 pi(x) >= 0, t even",
                    gap,
                    0.0,
                    Relation::Ge,
                    ctx.clone(),
                ));
                out.push(BoundCheck::new(
                    "bipartite_return_even",
                    "p_t(x,x) - 2 pi(x) <= 18/sqrt(t), t even",
                    gap,
                    18.0 / (t as f64).sqrt(),
                    Relation::Le,
                    ctx,
                ));
            }
        }
    }

    if let Some(dim) = dim {
        require(g.is_unweighted(), "return bounds need an unweighted graph")?;
        let ct = bipartite_transitive_constant(g, dim)?;
        for x in 0..n {
            let pi = g.pi(x);
            for &t in &even {
                let p = return_prob(dec_p, x, t);
                let ctx = Context::default().x(x).t(t);
                out.push(BoundCheck::new(
                    "bipartite_transitive_return_lower",
                    "p_t(x,x) - pi(x) >= 0, t even",
                    p - pi,
                    0.0,
                    Relation::Ge,
                    ctx.clone(),
                ));
                out.push(BoundCheck::new(
                    "bipartite_transitive_return",
                    "p_t(x,x) - 2 pi(x) <= 2 C~ t^(-D/2), t even",
                    p - 2.0 * pi,
                    2.0 * ct * (t as f64).powf(-dim / 2.0),
                    Relation::Le,
                    ctx,
                ));
            }
        }
    }
    Ok(out)
}

fn bipartite_transitive_constant(g: &Graph, dim: f64) -> Result<f64> {
    let profile = certify_transitive(g)?;
    let c = transitive_growth_constant(&profile, dim);
    Ok(transitive_return_constant(c, dim, profile.degree))
}

/// The transitive bipartite bound with π(x) in place of 2π(x). On a finite
/// graph p_t(x,x) → 2π(x) along even t, so this form fails once 2C̃t^{−D/2}
/// drops below π(x); it is reported and never asserted.
pub fn bipartite_transitive_diagnostics(
    g: &Graph,
    dec_p: &Decomposition,
    grids: &Grids,
    dim: f64,
) -> Result<Vec<BoundCheck>> {
    require(dec_p.kind == OperatorKind::TransitionP, "expected a decomposition of P")?;
    require(g.is_bipartite() && g.is_unweighted(), "graph must be bipartite and unweighted")?;
    let ct = bipartite_transitive_constant(g, dim)?;
    let mut out = Vec::new();
    for x in 0..g.n() {
        for t in grids.times().into_iter().filter(|t| t % 2 == 0) {
            out.push(BoundCheck::new(
                "bipartite_transitive_return_stationary",
                "p_t(x,x) - pi(x) <= 2 C~ t^(-D/2), t even",
                return_prob(dec_p, x, t) - g.pi(x),
                2.0 * ct * (t as f64).powf(-dim / 2.0),
                Relation::Le,
                Context::default().x(x).t(t),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};
    use crate::operators::build_operator;
    use crate::spectral::decompose;

    fn decs(g: &Graph) -> (Decomposition, Decomposition, Decomposition) {
        let d = |k| decompose(&build_operator(g, k)).unwrap();
        (d(OperatorKind::TransitionP), d(OperatorKind::LaplacianL), d(OperatorKind::SignlessQ))
    }

    #[test]
    fn c4_even_return_gap_is_zero() {
        let g = generate(&GraphSpec::Cycle { n: 4 }, 0).unwrap();
        let (p, l, q) = decs(&g);
        let grids = Grids { delta: None, t: Some(vec![2, 3]) };
        let cs = check_bipartite(&g, &p, &l, &q, &grids, None).unwrap();
        let c = cs.iter().find(|c| c.name == "bipartite_return_even" && c.context.x == Some(0)).unwrap();
        assert!(c.lhs.abs() < 1e-12 && (c.rhs - 18.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(!cs.iter().any(|c| c.context.t == Some(3)));
        assert!(cs.iter().all(|c| c.holds));
    }

    #[test]
    fn cube_spectrum_is_symmetric() {
        let g = generate(&GraphSpec::Hypercube { k: 3 }, 0).unwrap();
        let (p, l, q) = decs(&g);
        let mut expected = vec![-1.0, 1.0];
        expected.extend([-1.0 / 3.0; 3]);
        expected.extend([1.0 / 3.0; 3]);
        expected.sort_by(f64::total_cmp);
        for (a, b) in p.eigenvalues.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
        let cs = check_bipartite(&g, &p, &l, &q, &Grids::default(), Some(1.0)).unwrap();
        assert!(cs.iter().all(|c| c.holds), "{:?}", cs.iter().find(|c| !c.holds));
    }

    #[test]
    fn stationary_form_fails_on_long_horizons() {
        let g = generate(&GraphSpec::Cycle { n: 6 }, 0).unwrap();
        let (p, _, _) = decs(&g);
        let grids = Grids { delta: None, t: Some(vec![16384]) };
        let cs = bipartite_transitive_diagnostics(&g, &p, &grids, 1.0).unwrap();
        // p_t → 1/3 while 2C̃/128 ≈ 0.034.
        assert!(cs.iter().all(|c| !c.holds));
    }

    #[test]
    fn rejects_odd_cycle() {
        let g = generate(&GraphSpec::Cycle { n: 5 }, 0).unwrap();
        let (p, l, q) = decs(&g);
        assert!(check_bipartite(&g, &p, &l, &q, &Grids::default(), None).is_err());
    }
}
