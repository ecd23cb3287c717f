use super::{require, return_prob, BoundCheck, Context, Grids, Relation};
use crate::error::Result;
use crate::operators::OperatorKind;
use crate::{Decomposition, Graph};

fn regular_class(g: &Graph) -> Result<()> {
    require(g.is_unweighted(), "graph must be unweighted")?;
    require(g.is_regular(), "graph must be regular")?;
    require(!g.is_bipartite(), "graph must be non-bipartite")
}

fn kind(dec: &Decomposition, want: OperatorKind) -> Result<()> {
    require(dec.kind == want, &format!("expected a decomposition of {want}, got {}", dec.kind))
}

/// μ_x^Q(δ) ≤ 10√δ at every vertex and grid point.
pub fn check_regular_measure(g: &Graph, dec_q: &Decomposition, grids: &Grids) -> Result<Vec<BoundCheck>> {
    regular_class(g)?;
    kind(dec_q, OperatorKind::SignlessQ)?;
    let deltas = grids.deltas(dec_q, 2.0);
    let mut out = Vec::new();
    for x in 0..g.n() {
        let mu = dec_q.vertex_measure(x);
        for &d in &deltas {
            out.push(BoundCheck::new(
                "regular_measure",
                "mu_x^Q(delta) <= 10 sqrt(delta)",
                mu.cdf(d),
                10.0 * d.sqrt(),
                Relation::Le,
                Context::default().x(x).delta(d),
            ));
        }
    }
    Ok(out)
}

/// The sharper √(96δ) that the argument actually produces; reported, not asserted.
pub fn regular_measure_diagnostics(g: &Graph, dec_q: &Decomposition, grids: &Grids) -> Result<Vec<BoundCheck>> {
    regular_class(g)?;
    kind(dec_q, OperatorKind::SignlessQ)?;
    let deltas = grids.deltas(dec_q, 2.0);
    let mut out = Vec::new();
    for x in 0..g.n() {
        let mu = dec_q.vertex_measure(x);
        for &d in &deltas {
            out.push(BoundCheck::new(
                "regular_measure_sqrt96",
                "mu_x^Q(delta) <= sqrt(96 delta)",
                mu.cdf(d),
                (96.0 * d).sqrt(),
                Relation::Le,
                Context::default().x(x).delta(d),
            ));
        }
    }
    Ok(out)
}

/// 0 ≤ p_t(x,x) − π(x) ≤ 18/√t for even t and |p_t(x,x) − π(x)| ≤ 9/√t for odd t.
pub fn check_regular_return(g: &Graph, dec: &Decomposition, grids: &Grids) -> Result<Vec<BoundCheck>> {
    regular_class(g)?;
    require(dec.kind != OperatorKind::CombinatorialTheta && dec.kind != OperatorKind::Adjacency, "need P, L or Q")?;
    let mut out = Vec::new();
    for x in 0..g.n() {
        let pi = g.pi(x);
        for t in grids.times() {
            let gap = return_prob(dec, x, t) - pi;
            let ctx = Context::default().x(x).t(t);
            let st = (t as f64).sqrt();
            if t % 2 == 0 {
                out.push(BoundCheck::new(
                    "regular_return_even_lower",
                    "p_t(x,x) - pi(x) >= 0, t even",
                    gap,
                    0.0,
                    Relation::Ge,
                    ctx.clone(),
                ));
                out.push(BoundCheck::new(
                    "regular_return_even",
                    "p_t(x,x) - pi(x) <= 18/sqrt(t), t even",
                    gap,
                    18.0 / st,
                    Relation::Le,
                    ctx,
                ));
            } else {
                out.push(BoundCheck::new(
                    "regular_return_odd",
                    "|p_t(x,x) - pi(x)| <= 9/sqrt(t), t odd",
                    gap.abs(),
                    9.0 / st,
                    Relation::Le,
                    ctx,
                ));
            }
        }
    }
    Ok(out)
}

/// Lower bounds on every eigenvalue λ_k^P (ascending, k = 1..n):
/// −1 + k/((Δ+1)vol) when edge weights are at least 1, −1 + k³/(4000n³) when
/// unweighted and −1 + k²/(100n²) when also regular.
pub fn check_eigenvalue_lower(g: &Graph, dec_p: &Decomposition) -> Result<Vec<BoundCheck>> {
    kind(dec_p, OperatorKind::TransitionP)?;
    require(!g.is_bipartite(), "graph must be non-bipartite")?;
    require(g.weights_at_least_one(), "edge weights must be at least 1")?;
    let n = g.n() as f64;
    let diam = g.diameter() as f64;
    let vol = g.volume();
    let unweighted = g.is_unweighted();
    let regular = unweighted && g.is_regular();
    let mut out = Vec::new();
    for (i, &lambda) in dec_p.eigenvalues.iter().enumerate() {
        let k = i + 1;
        let kf = k as f64;
        let ctx = Context::default().k(k);
        out.push(BoundCheck::new(
            "eigenvalue_diameter_volume",
            "lambda_k^P >= -1 + k/((diam+1) vol(V))",
            lambda,
            -1.0 + kf / ((diam + 1.0) * vol),
            Relation::Ge,
            ctx.clone(),
        ));
        if unweighted {
            out.push(BoundCheck::new(
                "eigenvalue_cubic",
                "lambda_k^P >= -1 + k^3/(4000 n^3)",
                lambda,
                -1.0 + kf.powi(3) / (4000.0 * n.powi(3)),
                Relation::Ge,
                ctx.clone(),
            ));
        }
        if regular {
            out.push(BoundCheck::new(
                "eigenvalue_quadratic",
                "lambda_k^P >= -1 + k^2/(100 n^2)",
                lambda,
                -1.0 + kf * kf / (100.0 * n * n),
                Relation::Ge,
                ctx,
            ));
        }
    }
    Ok(out)
}
